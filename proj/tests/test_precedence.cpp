#include <doctest.h>

#include <algorithm>
#include <random>

#include "ctxmine/error.hpp"
#include "ctxmine/fixtures.hpp"
#include "ctxmine/precedence.hpp"
#include "support.hpp"

using namespace ctxmine;

TEST_SUITE("precedence") {
  TEST_CASE("entropy reference values") {
    const std::vector<std::uint64_t> even{5, 5};
    CHECK(entropy(even) == 1.0);
    const std::vector<std::uint64_t> three{2, 6, 2};
    CHECK(entropy(three) == doctest::Approx(1.370950594454669).epsilon(1e-12));
    const std::vector<std::uint64_t> pure{0, 7, 0};
    CHECK(entropy(pure) == 0.0);
    const std::vector<std::uint64_t> none{0, 0};
    CHECK(entropy(none) == 0.0);
  }

  TEST_CASE("fixture information gain") {
    const auto ds = fixtures::call_fixture();
    CHECK(entropy(ds) == 1.0);
    CHECK(std::abs(information_gain(ds, "Relation") - 0.548794940695399) < 1e-9);
    CHECK(std::abs(information_gain(ds, "Activity") - 0.311278124459133) < 1e-9);
    CHECK_THROWS_AS(information_gain(ds, "Location"), SchemaError);

    const auto ranking = rank_contexts(ds, {"Activity", "Relation"});
    REQUIRE(ranking.entries.size() == 2);
    CHECK(ranking.entries[0].attribute == "Relation");
    CHECK(ranking.entries[1].attribute == "Activity");
    CHECK(ranking.instance_count == 8);
    CHECK(ranking.schema_hash == ds.schema().hash());
  }

  TEST_CASE("gain ties break by attribute name") {
    // B and A carry identical information, Z none
    const auto schema = std::make_shared<const ContextSchema>(
        std::vector<Attribute>{{"B", {"x", "y"}}, {"Z", {"k"}}, {"A", {"x", "y"}}}, std::vector<std::string>{"p", "q"});
    const auto ds = Dataset(schema, {{{0, 0, 0}, 0}, {{1, 0, 1}, 1}, {{0, 0, 0}, 0}, {{1, 0, 1}, 1}});
    const auto ranking = rank_contexts(ds, {"Z", "B", "A", "B"});
    REQUIRE(ranking.entries.size() == 3);
    CHECK(ranking.entries[0].attribute == "A");
    CHECK(ranking.entries[1].attribute == "B");
    CHECK(ranking.entries[2].attribute == "Z");
    CHECK(ranking.entries[2].gain == 0.0);
  }

  TEST_CASE("empty input") {
    const auto ds = Dataset(fixtures::call_fixture().schema_ptr());
    CHECK(entropy(ds) == 0.0);
    CHECK(information_gain(ds, "Activity") == 0.0);
    CHECK(rank_contexts(ds, {}).empty());
  }

  TEST_CASE("property: gain bounded by entropy, entropy permutation invariant") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 500; ++iter) {
      const auto ds = testsupport::random_dataset(rng, {4, 4, 4, 30, 1});
      const double h = entropy(ds);
      for (const auto& attr : ds.schema().attributes()) {
        const double g = information_gain(ds, attr.name);
        CHECK(g >= 0.0);
        CHECK(g <= h);
      }
      auto counts = class_counts(ds);
      const double before = entropy(counts);
      std::shuffle(counts.begin(), counts.end(), rng);
      CHECK(entropy(counts) == doctest::Approx(before).epsilon(1e-12));
    }
  }
}
