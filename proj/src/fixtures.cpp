#include "ctxmine/fixtures.hpp"

#include <memory>

#include "ctxmine/ingest.hpp"

namespace ctxmine::fixtures {

namespace {

void add(std::vector<Record>& rows, std::map<std::string, std::string> values, const std::string& cls, int times) {
  for (int i = 0; i < times; ++i) rows.push_back({values, cls});
}

AgtNode node(int id, std::optional<Condition> branch, const std::string& cls, std::uint64_t hits, std::uint64_t size,
             bool redundant = false) {
  AgtNode n;
  n.node_id = id;
  n.branch = std::move(branch);
  n.dominant_behavior = cls;
  n.support = hits;
  n.confidence = Ratio{hits, size};
  n.redundant = redundant;
  return n;
}

}  // namespace

Dataset call_fixture() {
  auto schema = std::make_shared<const ContextSchema>(
      std::vector<Attribute>{{"Activity", {"Meeting", "Lunch"}}, {"Relation", {"Boss", "Friend"}}},
      call_behavior_classes());
  std::vector<Record> rows;
  add(rows, {{"Activity", "Meeting"}, {"Relation", "Boss"}}, "Accept", 2);
  add(rows, {{"Activity", "Meeting"}, {"Relation", "Friend"}}, "Reject", 4);
  add(rows, {{"Activity", "Lunch"}, {"Relation", "Friend"}}, "Accept", 1);
  add(rows, {{"Activity", "Lunch"}, {"Relation", "Boss"}}, "Accept", 1);
  return Dataset::from_records(std::move(schema), rows);
}

std::vector<Rule> sample_rules() {
  const auto rule = [](std::vector<Condition> a, std::string c, std::uint64_t s, std::uint64_t n) {
    return Rule{make_antecedent(std::move(a)), std::move(c), s, n};
  };
  return {
      rule({{"Activity", "Meeting"}}, "Reject", 83, 100),
      rule({{"Activity", "Meeting"}, {"Relation", "Friend"}}, "Reject", 9, 10),
      rule({{"Activity", "Meeting"}, {"Relation", "Colleague"}}, "Reject", 22, 25),
      rule({{"Activity", "Meeting"}, {"Relation", "Friend"}, {"Time", "Monday[t1]"}}, "Reject", 5, 5),
      rule({{"Activity", "Meeting"}, {"Relation", "Colleague"}, {"Time", "Friday[t2]"}}, "Reject", 49, 50),
      rule({{"Activity", "Meeting"}, {"Relation", "Boss"}}, "Accept", 4, 4),
  };
}

Dataset sample_rules_dataset() {
  const std::vector<std::string> relations{"Friend", "Colleague", "Boss"};
  const std::vector<std::string> times{"Monday[t1]", "Friday[t2]", "Wednesday[t3]"};
  auto schema = std::make_shared<const ContextSchema>(
      std::vector<Attribute>{{"Activity", {"Meeting", "Lunch"}}, {"Relation", relations}, {"Time", times}},
      call_behavior_classes());

  std::vector<Record> rows;
  const auto put = [&](const char* act, const char* rel, const char* time, const char* cls, int n) {
    add(rows, {{"Activity", act}, {"Relation", rel}, {"Time", time}}, cls, n);
  };
  put("Meeting", "Friend", "Monday[t1]", "Reject", 20);
  put("Meeting", "Friend", "Wednesday[t3]", "Reject", 25);
  put("Meeting", "Friend", "Wednesday[t3]", "Accept", 5);
  put("Meeting", "Colleague", "Friday[t2]", "Reject", 49);
  put("Meeting", "Colleague", "Friday[t2]", "Accept", 1);
  put("Meeting", "Colleague", "Wednesday[t3]", "Reject", 39);
  put("Meeting", "Colleague", "Wednesday[t3]", "Accept", 11);
  put("Meeting", "Boss", "Wednesday[t3]", "Accept", 10);
  // Lunch calls spread evenly so that no rule without Meeting reaches 80%.
  for (const auto& rel : relations) {
    for (const auto& time : times) {
      for (const char* cls : {"Accept", "Reject", "Missed"}) put("Lunch", rel.c_str(), time.c_str(), cls, 10);
    }
  }
  return Dataset::from_records(std::move(schema), rows);
}

AgtNode example_tree() {
  const auto s = [](const char* v) { return Condition{"Situation", v}; };
  const auto r = [](const char* v) { return Condition{"Relationship", v}; };

  AgtNode root = node(1, std::nullopt, "Reject", 31, 80);
  root.split_attribute = "Situation";

  AgtNode meeting = node(3, s("Meeting"), "Reject", 17, 20);
  meeting.split_attribute = "Relationship";
  meeting.children.push_back(node(7, r("Boss"), "Accept", 3, 3));
  meeting.children.push_back(node(8, r("Friend"), "Reject", 9, 9, true));
  meeting.children.push_back(node(9, r("Colleague"), "Reject", 8, 8, true));

  AgtNode lunch = node(6, s("Lunch"), "Accept", 27, 50);
  lunch.split_attribute = "Relationship";
  lunch.children.push_back(node(4, r("Friend"), "Accept", 23, 25));
  lunch.children.push_back(node(5, r("Unknown"), "Missed", 19, 20));
  lunch.children.push_back(node(10, r("Boss"), "Accept", 3, 5));

  root.children.push_back(std::move(meeting));
  root.children.push_back(node(2, s("Lecture"), "Reject", 10, 10));
  root.children.push_back(std::move(lunch));
  return root;
}

}  // namespace ctxmine::fixtures
