#include <doctest.h>

#include <random>

#include "ctxmine/error.hpp"
#include "ctxmine/fixtures.hpp"
#include "support.hpp"

using namespace ctxmine;

namespace {

std::shared_ptr<const ContextSchema> small_schema() {
  return std::make_shared<const ContextSchema>(
      std::vector<Attribute>{{"Activity", {"Meeting", "Lunch"}}, {"Relation", {"Boss", "Friend"}}},
      std::vector<std::string>{"Accept", "Reject"});
}

}  // namespace

TEST_SUITE("datamodel") {
  TEST_CASE("schema validation") {
    using A = std::vector<Attribute>;
    using C = std::vector<std::string>;
    CHECK_THROWS_AS(ContextSchema(A{{"X", {"a"}}}, C{}), SchemaError);
    CHECK_THROWS_AS(ContextSchema(A{{"X", {"a"}}}, C{"p", "p"}), SchemaError);
    CHECK_THROWS_AS(ContextSchema(A{{"X", {"a"}}, {"X", {"b"}}}, C{"p"}), SchemaError);
    CHECK_THROWS_AS(ContextSchema(A{{"X", {}}}, C{"p"}), SchemaError);
    CHECK_THROWS_AS(ContextSchema(A{{"X", {"a", "a"}}}, C{"p"}), SchemaError);
    CHECK_THROWS_AS(ContextSchema(A{{"", {"a"}}}, C{"p"}), SchemaError);
    CHECK_NOTHROW(ContextSchema(A{}, C{"p"}));
  }

  TEST_CASE("lookups") {
    const auto s = small_schema();
    CHECK(s->attribute_index("Relation") == 1);
    CHECK(s->value_index(1, "Friend") == 1);
    CHECK(s->class_index("Reject") == 1);
    CHECK_FALSE(s->find_attribute("Location"));
    CHECK_THROWS_AS((void)s->value_index(0, "Dinner"), SchemaError);
    CHECK_THROWS_AS((void)s->class_index("Missed"), SchemaError);
  }

  TEST_CASE("records are validated") {
    const auto s = small_schema();
    CHECK_THROWS_AS(Dataset::from_records(s, {{{{"Activity", "Meeting"}}, "Accept"}}), SchemaError);
    CHECK_THROWS_AS(
        Dataset::from_records(s, {{{{"Activity", "Meeting"}, {"Relation", "Boss"}, {"X", "y"}}, "Accept"}}),
        SchemaError);
    CHECK_THROWS_AS(Dataset::from_records(s, {{{{"Activity", "Dinner"}, {"Relation", "Boss"}}, "Accept"}}),
                    SchemaError);
    CHECK_THROWS_AS(Dataset::from_records(s, {{{{"Activity", "Lunch"}, {"Relation", "Boss"}}, "Missed"}}),
                    SchemaError);
    const auto ds = Dataset::from_records(s, {{{{"Activity", "Lunch"}, {"Relation", "Boss"}}, "Reject"}});
    CHECK(ds.value(0, 0) == "Lunch");
    CHECK(ds.behavior(0) == "Reject");
    CHECK(ds.record(0).values.at("Relation") == "Boss");
  }

  TEST_CASE("encoded instances are validated") {
    CHECK_THROWS_AS(Dataset(small_schema(), {{{0}, 0}}), SchemaError);
    CHECK_THROWS_AS(Dataset(small_schema(), {{{0, 2}, 0}}), SchemaError);
    CHECK_THROWS_AS(Dataset(small_schema(), {{{0, 1}, 2}}), SchemaError);
    CHECK(Dataset(small_schema()).empty());
  }

  TEST_CASE("antecedents are canonical") {
    const auto a = make_antecedent({{"Relation", "Friend"}, {"Activity", "Lunch"}});
    CHECK(a.front().attribute == "Activity");
    CHECK(to_string(a) == "Activity=Lunch, Relation=Friend");
    CHECK(to_string(Antecedent{}) == "{}");
    CHECK_THROWS_AS(make_antecedent({{"Activity", "Lunch"}, {"Activity", "Meeting"}}), SchemaError);
    CHECK(is_subset(make_antecedent({{"Relation", "Friend"}}), a));
    CHECK(is_subset(a, a));
    CHECK_FALSE(is_subset(make_antecedent({{"Relation", "Boss"}}), a));
  }

  TEST_CASE("fixture subset and rule statistics") {
    const auto ds = fixtures::call_fixture();
    REQUIRE(ds.size() == 8);
    const auto lunch = subset(ds, "Activity", "Lunch");
    REQUIRE(lunch.size() == 2);
    CHECK(lunch.instances()[0] == ds.instances()[6]);
    CHECK(lunch.instances()[1] == ds.instances()[7]);

    const auto friend_reject = rule_stats(ds, make_antecedent({{"Relation", "Friend"}}), "Reject");
    CHECK(friend_reject.support == 4);
    CHECK(friend_reject.coverage == 5);
    CHECK(*friend_reject.confidence() == Ratio{4, 5});

    const auto all_accept = rule_stats(ds, {}, "Accept");
    CHECK(all_accept.support == 4);
    CHECK(*all_accept.confidence() == Ratio{1, 2});

    const auto none = rule_stats(lunch, make_antecedent({{"Activity", "Meeting"}}), "Accept");
    CHECK_FALSE(none.covered());
    CHECK_FALSE(none.confidence().has_value());

    CHECK(class_counts(ds) == std::vector<std::uint64_t>{4, 4, 0, 0});
    CHECK_THROWS_AS(subset(ds, "Location", "Home"), SchemaError);
  }

  TEST_CASE("property: subset is idempotent and partitions the dataset") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
      const auto ds = testsupport::random_dataset(rng);
      for (const auto& attr : ds.schema().attributes()) {
        std::size_t total = 0;
        for (const auto& v : attr.domain) {
          const auto part = subset(ds, attr.name, v);
          total += part.size();
          const auto again = subset(part, attr.name, v);
          CHECK(again.instances() == part.instances());
          CHECK(&part.schema() == &ds.schema());
        }
        CHECK(total == ds.size());
      }
    }
  }

  TEST_CASE("fingerprint ignores column and domain order") {
    const auto s1 = std::make_shared<const ContextSchema>(
        std::vector<Attribute>{{"A", {"x", "y"}}, {"B", {"p", "q"}}}, std::vector<std::string>{"c0", "c1"});
    const auto s2 = std::make_shared<const ContextSchema>(
        std::vector<Attribute>{{"B", {"q", "p"}}, {"A", {"y", "x"}}}, std::vector<std::string>{"c0", "c1"});
    const std::vector<Record> recs{{{{"A", "x"}, {"B", "q"}}, "c1"}, {{{"A", "y"}, {"B", "p"}}, "c0"}};
    const auto d1 = Dataset::from_records(s1, recs);
    const auto d2 = Dataset::from_records(s2, recs);
    CHECK(fingerprint(d1) == fingerprint(d2));
    const auto d3 = Dataset::from_records(s1, {recs[1], recs[0]});
    CHECK(fingerprint(d1) != fingerprint(d3));
  }
}
