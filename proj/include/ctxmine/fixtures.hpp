#pragma once

#include <vector>

#include "ctxmine/agt.hpp"
#include "ctxmine/datamodel.hpp"

namespace ctxmine::fixtures {

/// Eight calls over Activity {Meeting, Lunch} x Relation {Boss, Friend}:
/// Meeting,Boss -> Accept x2; Meeting,Friend -> Reject x4;
/// Lunch,Friend -> Accept; Lunch,Boss -> Accept.
Dataset call_fixture();

/// The six sample rules of the redundancy example (R1..R6), with coverage
/// counts chosen to give 83%, 90%, 88%, 100%, 98% and 100% confidence.
std::vector<Rule> sample_rules();

/// 430 calls over Activity x Relation x Time whose Apriori output at 80%
/// contains the six sample rules and reduces to Meeting => Reject and
/// Meeting, Boss => Accept after redundancy filtering.
Dataset sample_rules_dataset();

/// Hand-built three-level tree over situation and relationship with the
/// redundant nodes already marked for an 80% threshold. Its rule nodes are
/// ids 2 (Lecture), 3 (Meeting), 4 (Lunch, Friend), 5 (Lunch, Unknown) and
/// 7 (Meeting, Boss).
AgtNode example_tree();

}  // namespace ctxmine::fixtures
