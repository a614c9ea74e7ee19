#!/usr/bin/env python3
"""Independent reference computations for the frozen fixture values in the C++ tests.

Everything here is brute force over explicit row lists, using exact Fractions
where possible. Run it directly; it prints the values the unit tests assert.
"""
from fractions import Fraction
from itertools import combinations, product
from math import log2

CLASSES = ["Accept", "Reject", "Missed", "Outgoing"]

# 8-row call fixture: (Activity, Relation) -> behavior
FIXTURE = (
    [({"Activity": "Meeting", "Relation": "Boss"}, "Accept")] * 2
    + [({"Activity": "Meeting", "Relation": "Friend"}, "Reject")] * 4
    + [({"Activity": "Lunch", "Relation": "Friend"}, "Accept")]
    + [({"Activity": "Lunch", "Relation": "Boss"}, "Accept")]
)
DOMAINS = {"Activity": ["Meeting", "Lunch"], "Relation": ["Boss", "Friend"]}


def matches(row, ante):
    return all(row[0][a] == v for a, v in ante)


def stats(rows, ante, cls):
    cov = [r for r in rows if matches(r, ante)]
    sup = sum(1 for r in cov if r[1] == cls)
    return sup, (Fraction(sup, len(cov)) if cov else None)


def entropy_counts(counts):
    n = sum(counts)
    return -sum((c / n) * log2(c / n) for c in counts if c) if n else 0.0


def entropy(rows):
    return entropy_counts([sum(1 for r in rows if r[1] == c) for c in CLASSES])


def gain(rows, attr, domain):
    h = entropy(rows)
    for v in domain:
        sub = [r for r in rows if r[0][attr] == v]
        h -= len(sub) / len(rows) * entropy(sub)
    return h


def dominant(rows):
    counts = {c: sum(1 for r in rows if r[1] == c) for c in CLASSES}
    best = max(counts.values())
    cls = sorted(c for c in counts if counts[c] == best)[0]
    return cls, best, Fraction(best, len(rows))


def agt(rows, domains, t):
    """Literal recursive trace; returns flat list of nodes in creation order."""
    nodes = []

    def make(rows, path, parent):
        cls, sup, conf = dominant(rows)
        red = parent is not None and parent["cls"] == cls and parent["conf"] >= t and conf >= t
        node = {"id": len(nodes) + 1, "path": path, "cls": cls, "sup": sup, "conf": conf, "red": red}
        nodes.append(node)
        return node

    def rec(node, rows, contexts):
        if len({r[1] for r in rows}) == 1 or not contexts:
            return
        ranked = sorted(contexts, key=lambda a: (-round(gain(rows, a, domains[a]), 12), a))
        split = ranked[0]
        for v in domains[split]:
            sub = [r for r in rows if r[0][split] == v]
            if sub:
                child = make(sub, node["path"] + [(split, v)], node)
                rec(child, sub, [c for c in contexts if c != split])

    root = make(rows, [], None)
    rec(root, rows, sorted(domains))
    return nodes


def agt_rules(nodes, t):
    return [(n["path"], n["cls"], n["sup"], n["conf"]) for n in nodes[1:] if n["conf"] >= t and not n["red"]]


def all_itemsets(domains):
    attrs = sorted(domains)
    for k in range(1, len(attrs) + 1):
        for sub in combinations(attrs, k):
            for vals in product(*(domains[a] for a in sub)):
                yield tuple(zip(sub, vals))


def cars(rows, domains, t, min_sup=1):
    out = []
    for ante in all_itemsets(domains):
        for c in CLASSES:
            sup, conf = stats(rows, ante, c)
            if conf is not None and sup >= min_sup and conf >= t:
                out.append((ante, c, sup, conf))
    return out


def filter_redundant(rules):
    keep = []
    for a2, c2, *_rest in rules:
        if not any(set(a1) < set(a2) and c1 == c2 for a1, c1, *_ in rules):
            keep.append((a2, c2, *_rest))
    return keep


def sample_rules_dataset():
    rows = []

    def add(act, rel, time, cls, n):
        rows.extend([({"Activity": act, "Relation": rel, "Time": time}, cls)] * n)

    add("Meeting", "Friend", "Monday[t1]", "Reject", 20)
    add("Meeting", "Friend", "Wednesday[t3]", "Reject", 25)
    add("Meeting", "Friend", "Wednesday[t3]", "Accept", 5)
    add("Meeting", "Colleague", "Friday[t2]", "Reject", 49)
    add("Meeting", "Colleague", "Friday[t2]", "Accept", 1)
    add("Meeting", "Colleague", "Wednesday[t3]", "Reject", 39)
    add("Meeting", "Colleague", "Wednesday[t3]", "Accept", 11)
    add("Meeting", "Boss", "Wednesday[t3]", "Accept", 10)
    for rel in ["Friend", "Colleague", "Boss"]:
        for time in ["Monday[t1]", "Friday[t2]", "Wednesday[t3]"]:
            for cls in ["Accept", "Reject", "Missed"]:
                add("Lunch", rel, time, cls, 10)
    domains = {
        "Activity": ["Meeting", "Lunch"],
        "Relation": ["Friend", "Colleague", "Boss"],
        "Time": ["Monday[t1]", "Friday[t2]", "Wednesday[t3]"],
    }
    return rows, domains


def fmt(rule):
    ante, c, sup, conf = rule
    return f"{{{', '.join(f'{a}={v}' for a, v in ante)}}} => {c}  {sup}/{conf.denominator * sup // conf.numerator if conf else '?'} ({float(conf):.4f})"


def main():
    print("subset Activity=Lunch:", [i for i, r in enumerate(FIXTURE) if r[0]["Activity"] == "Lunch"])
    print("stats {Relation=Friend} => Reject:", stats(FIXTURE, [("Relation", "Friend")], "Reject"))
    print("stats {} => Accept:", stats(FIXTURE, [], "Accept"))
    print("entropy(fixture) =", repr(entropy(FIXTURE)))
    print("entropy(2A,6R,2M) = %.15f" % entropy_counts([2, 6, 2]))
    print("IG(Relation) = %.15f" % gain(FIXTURE, "Relation", DOMAINS["Relation"]))
    print("IG(Activity) = %.15f" % gain(FIXTURE, "Activity", DOMAINS["Activity"]))

    for t in (Fraction(3, 4), Fraction(1)):
        nodes = agt(FIXTURE, DOMAINS, t)
        print(f"AGT t={t}:")
        for n in nodes:
            print("   ", n)
        print("  rules:", [fmt(r) for r in agt_rules(nodes, t)])

    for ms in (1, 5):
        fi = [(a, sum(1 for r in FIXTURE if matches(r, a))) for a in all_itemsets(DOMAINS)]
        print(f"frequent min_support={ms}:", [x for x in fi if x[1] >= ms])
    for t in (Fraction(3, 4), Fraction(1)):
        rs = cars(FIXTURE, DOMAINS, t)
        print(f"CARs t={t}: {len(rs)}")
        for r in rs:
            print("   ", fmt(r))
        print(f"  AGT count: {len(agt_rules(agt(FIXTURE, DOMAINS, t), t))}")

    rows, domains = sample_rules_dataset()
    print("sample dataset size:", len(rows))
    for ante, c in [
        ((("Activity", "Meeting"),), "Reject"),
        ((("Activity", "Meeting"), ("Relation", "Friend")), "Reject"),
        ((("Activity", "Meeting"), ("Relation", "Colleague")), "Reject"),
        ((("Activity", "Meeting"), ("Relation", "Friend"), ("Time", "Monday[t1]")), "Reject"),
        ((("Activity", "Meeting"), ("Relation", "Colleague"), ("Time", "Friday[t2]")), "Reject"),
        ((("Activity", "Meeting"), ("Relation", "Boss")), "Accept"),
    ]:
        sup, conf = stats(rows, ante, c)
        print("   sample", ante, c, sup, conf, f"{float(conf):.4f}")
    rs = cars(rows, domains, Fraction(4, 5))
    print("sample CARs at 80%:", len(rs))
    for r in filter_redundant(rs):
        print("   kept", fmt(r))


if __name__ == "__main__":
    main()
