#include <doctest.h>

#include <random>
#include <sstream>

#include "ctxmine/agt.hpp"
#include "ctxmine/apriori.hpp"
#include "ctxmine/error.hpp"
#include "ctxmine/fixtures.hpp"
#include "support.hpp"

using namespace ctxmine;

namespace {

MiningConfig at(Ratio t) {
  MiningConfig cfg;
  cfg.threshold = t;
  return cfg;
}

Antecedent ante(std::vector<Condition> c) { return make_antecedent(std::move(c)); }

// Two emitted rules whose antecedents differ by one condition lie on one tree
// edge, since within a tree a condition set fixes its root path.
int edge_violations(const std::vector<Rule>& rules) {
  int bad = 0;
  for (const auto& p : rules) {
    for (const auto& c : rules) {
      if (p.consequent == c.consequent && c.antecedent.size() == p.antecedent.size() + 1 &&
          is_subset(p.antecedent, c.antecedent))
        ++bad;
    }
  }
  return bad;
}

}  // namespace

TEST_SUITE("agt") {
  TEST_CASE("fixture tree at 75%") {
    const auto ds = fixtures::call_fixture();
    const auto tree = build_tree(ds, at(Ratio{3, 4}));
    CHECK(tree.node_id == 1);
    CHECK_FALSE(tree.branch);
    CHECK(tree.split_attribute == "Relation");
    CHECK(tree.dominant_behavior == "Accept");  // 4/4 tie goes to the smaller label
    CHECK(tree.confidence == Ratio{4, 8});
    CHECK(node_count(tree) == 5);
    REQUIRE(tree.children.size() == 2);

    const auto& boss = tree.children[0];
    CHECK(boss.node_id == 2);
    CHECK(boss.branch->value == "Boss");
    CHECK(boss.dominant_behavior == "Accept");
    CHECK(boss.confidence == Ratio{3, 3});
    CHECK(boss.children.empty());  // pure

    const auto& fr = tree.children[1];
    CHECK(fr.node_id == 3);
    CHECK(fr.dominant_behavior == "Reject");
    CHECK(fr.confidence == Ratio{4, 5});
    CHECK(fr.split_attribute == "Activity");
    REQUIRE(fr.children.size() == 2);
    CHECK(fr.children[0].node_id == 4);
    CHECK(fr.children[0].branch->value == "Meeting");
    CHECK(fr.children[0].confidence == Ratio{4, 4});
    CHECK(fr.children[0].redundant);
    CHECK(fr.children[1].node_id == 5);
    CHECK(fr.children[1].dominant_behavior == "Accept");
    CHECK_FALSE(fr.children[1].redundant);

    const std::vector<Rule> want{{ante({{"Relation", "Boss"}}), "Accept", 3, 3},
                                 {ante({{"Relation", "Friend"}}), "Reject", 4, 5},
                                 {ante({{"Activity", "Lunch"}, {"Relation", "Friend"}}), "Accept", 1, 1}};
    CHECK(extract_rules(tree, at(Ratio{3, 4})) == want);
  }

  TEST_CASE("fixture tree at 100%") {
    const std::vector<Rule> want{{ante({{"Relation", "Boss"}}), "Accept", 3, 3},
                                 {ante({{"Activity", "Meeting"}, {"Relation", "Friend"}}), "Reject", 4, 4},
                                 {ante({{"Activity", "Lunch"}, {"Relation", "Friend"}}), "Accept", 1, 1}};
    CHECK(mine_agt(fixtures::call_fixture(), at(Ratio{1, 1})) == want);
  }

  TEST_CASE("extraction filters") {
    const auto ds = fixtures::call_fixture();
    auto cfg = at(Ratio{3, 4});
    cfg.class_filter = std::vector<std::string>{"Reject"};
    const auto rejects = mine_agt(ds, cfg);
    REQUIRE(rejects.size() == 1);
    CHECK(rejects[0].consequent == "Reject");

    cfg = at(Ratio{3, 4});
    cfg.min_support = 2;
    const auto supported = mine_agt(ds, cfg);
    CHECK(supported.size() == 2);
  }

  TEST_CASE("example tree extraction") {
    const auto rules = extract_rules(fixtures::example_tree(), at(Ratio{4, 5}));
    REQUIRE(rules.size() == 5);
    CHECK(rules[0].antecedent == ante({{"Situation", "Lecture"}}));
    CHECK(rules[0].confidence() == Ratio{1, 1});
    CHECK(rules[1].antecedent == ante({{"Situation", "Meeting"}}));
    CHECK(rules[1].consequent == "Reject");
    CHECK(rules[1].confidence() == Ratio{85, 100});
    CHECK(rules[2].antecedent == ante({{"Situation", "Lunch"}, {"Relationship", "Friend"}}));
    CHECK(rules[2].confidence() == Ratio{92, 100});
    CHECK(rules[3].antecedent == ante({{"Situation", "Lunch"}, {"Relationship", "Unknown"}}));
    CHECK(rules[3].confidence() == Ratio{95, 100});
    CHECK(rules[4].antecedent == ante({{"Situation", "Meeting"}, {"Relationship", "Boss"}}));
    CHECK(rules[4].consequent == "Accept");
    CHECK(rules[4].confidence() == Ratio{1, 1});
  }

  TEST_CASE("errors") {
    const auto ds = fixtures::call_fixture();
    CHECK_THROWS_AS(build_tree(Dataset(ds.schema_ptr()), at(Ratio{1, 2})), EmptyInputError);
    CHECK_THROWS_AS(build_tree(ds, at(Ratio{0, 1})), ConfigError);
    CHECK_THROWS_AS(build_tree(ds, at(Ratio{6, 5})), ConfigError);
    auto cfg = at(Ratio{1, 2});
    cfg.min_support = 0;
    CHECK_THROWS_AS(build_tree(ds, cfg), ConfigError);
    const auto bare = std::make_shared<const ContextSchema>(std::vector<Attribute>{}, std::vector<std::string>{"p"});
    CHECK_THROWS_AS(build_tree(Dataset(bare, {{{}, 0}}), at(Ratio{1, 2})), ConfigError);
  }

  TEST_CASE("dot rendering") {
    std::ostringstream out;
    const auto cfg = at(Ratio{3, 4});
    write_dot(out, build_tree(fixtures::call_fixture(), cfg), cfg);
    const auto dot = out.str();
    CHECK(dot.rfind("digraph agt {", 0) == 0);
    CHECK(dot.find("n1 -> n2;") != std::string::npos);
    CHECK(dot.find("n3 -> n4;") != std::string::npos);
    CHECK(dot.find("4 | Activity=Meeting | Reject 100.0%\\nREDUNDANT") != std::string::npos);
    CHECK(dot.find("dashed") != std::string::npos);
  }

  TEST_CASE("global ranking reuses the root order") {
    auto cfg = at(Ratio{3, 4});
    cfg.ranking = RankingMode::global;
    const auto tree = build_tree(fixtures::call_fixture(), cfg);
    CHECK(tree.split_attribute == "Relation");
    CHECK(tree.children[1].split_attribute == "Activity");
  }

  TEST_CASE("property: subset of Apriori, no redundant edge, strict is narrower") {
    std::mt19937_64 rng(23);
    const std::vector<Ratio> thresholds{{1, 1}, {4, 5}, {2, 3}, {1, 2}};
    for (int iter = 0; iter < 300; ++iter) {
      const auto ds = testsupport::random_dataset(rng);
      for (const auto& t : thresholds) {
        for (auto mode : {RankingMode::per_node, RankingMode::global}) {
          auto cfg = at(t);
          cfg.ranking = mode;
          const auto agt = mine_agt(ds, cfg);
          const auto apriori = testsupport::sorted(mine_apriori(ds, t));
          for (const auto& r : agt) CHECK(std::binary_search(apriori.begin(), apriori.end(), r, rule_less));
          CHECK(edge_violations(agt) == 0);

          cfg.strict_redundancy = true;
          const auto strict = mine_agt(ds, cfg);
          for (const auto& r : strict) CHECK(std::find(agt.begin(), agt.end(), r) != agt.end());
        }
      }
    }
  }
}
