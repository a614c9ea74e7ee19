#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ctxmine/datamodel.hpp"

namespace ctxmine {

/// "Activity=Meeting, Relation=Boss => Accept  (support 10, confidence 10/10 = 100.00%)"
std::string format_rule(const Rule& rule);

void write_rules_text(std::ostream& out, const std::vector<Rule>& rules);

/// One JSON object per line with fields antecedent (array of
/// {attribute, value}), consequent, support, confidence_num, confidence_den.
void write_rules_jsonl(std::ostream& out, const std::vector<Rule>& rules);

std::vector<Rule> read_rules_jsonl(std::istream& in);

}  // namespace ctxmine
