#include "ctxmine/rule_io.hpp"

#include <json.hpp>

#include "ctxmine/csv.hpp"
#include "ctxmine/error.hpp"

namespace ctxmine {

using ordered_json = nlohmann::ordered_json;

std::string format_rule(const Rule& rule) {
  const auto conf = rule.confidence();
  return to_string(rule.antecedent) + " => " + rule.consequent + "  (support " + std::to_string(rule.support) +
         ", confidence " + std::to_string(conf.num) + "/" + std::to_string(conf.den) + " = " + format_percent(conf) +
         ")";
}

void write_rules_text(std::ostream& out, const std::vector<Rule>& rules) {
  for (const auto& r : rules) out << format_rule(r) << '\n';
}

void write_rules_jsonl(std::ostream& out, const std::vector<Rule>& rules) {
  for (const auto& r : rules) {
    ordered_json j;
    j["antecedent"] = ordered_json::array();
    for (const auto& c : r.antecedent) j["antecedent"].push_back({{"attribute", c.attribute}, {"value", c.value}});
    j["consequent"] = r.consequent;
    j["support"] = r.support;
    j["confidence_num"] = r.support;
    j["confidence_den"] = r.coverage;
    out << j.dump() << '\n';
  }
}

std::vector<Rule> read_rules_jsonl(std::istream& in) {
  std::vector<Rule> rules;
  std::string line;
  while (csv::read_line(in, line)) {
    if (csv::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      std::vector<Condition> conds;
      for (const auto& c : j.at("antecedent")) conds.push_back({c.at("attribute"), c.at("value")});
      Rule r{make_antecedent(std::move(conds)), j.at("consequent"), j.at("support"), j.at("confidence_den")};
      if (j.at("confidence_num").get<std::uint64_t>() != r.support) throw ConfigError("confidence_num != support");
      rules.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed rule line: ") + e.what());
    }
  }
  return rules;
}

}  // namespace ctxmine
