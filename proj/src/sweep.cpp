#include "ctxmine/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include <json.hpp>

#include "ctxmine/apriori.hpp"
#include "ctxmine/error.hpp"

namespace ctxmine {

std::vector<Ratio> default_thresholds() {
  std::vector<Ratio> out;
  for (std::uint64_t pct = 100; pct >= 60; pct -= 5) out.push_back(Ratio{pct, 100}.reduced());
  return out;
}

void SweepConfig::validate() const {
  if (min_support < 1) throw ConfigError("min_support must be at least 1");
  for (const auto& t : thresholds) {
    if (t.num == 0 || t > Ratio{1, 1}) throw ConfigError("threshold " + format_decimal(t) + " is outside (0, 1]");
  }
  if (thresholds.size() < 2) return;
  const bool rising = thresholds[0] < thresholds[1];
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    const auto order = thresholds[i - 1] <=> thresholds[i];
    if (order == 0) throw ConfigError("duplicate threshold " + format_decimal(thresholds[i]));
    if ((order < 0) != rising) throw ConfigError("thresholds must be strictly increasing or strictly decreasing");
  }
}

namespace {

bool keep_class(const std::optional<std::vector<std::string>>& filter, const std::string& cls) {
  return !filter || std::find(filter->begin(), filter->end(), cls) != filter->end();
}

SweepRow run_row(const Dataset& ds, const SweepConfig& cfg, const Ratio& t,
                 const std::vector<FrequentItemset>* frequent, const std::string& frequent_error) {
  SweepRow row{t, std::nullopt, std::nullopt, std::nullopt, {}};
  std::vector<std::string> errors;

  if (frequent) {
    try {
      auto rules = generate_cars(ds, *frequent, t, cfg.min_support);
      std::erase_if(rules, [&](const Rule& r) { return !keep_class(cfg.class_filter, r.consequent); });
      const auto kept = filter_redundant(rules).size();
      row.apriori_rules = rules.size();
      row.apriori_redundancy_ratio =
          rules.empty() ? 0.0 : static_cast<double>(rules.size() - kept) / static_cast<double>(rules.size());
    } catch (const Error& e) {
      errors.push_back(std::string("apriori: ") + e.what());
    }
  } else {
    errors.push_back("apriori: " + frequent_error);
  }

  try {
    MiningConfig mc;
    mc.threshold = t;
    mc.min_support = cfg.min_support;
    mc.class_filter = cfg.class_filter;
    mc.strict_redundancy = cfg.strict_redundancy;
    mc.ranking = cfg.ranking;
    row.agt_rules = mine_agt(ds, mc).size();
  } catch (const Error& e) {
    errors.push_back(std::string("agt: ") + e.what());
  }

  for (const auto& e : errors) row.error += (row.error.empty() ? "" : "; ") + e;
  return row;
}

std::string ranking_name(RankingMode m) { return m == RankingMode::global ? "global" : "per-node"; }

}  // namespace

SweepReport sweep(const Dataset& ds, const SweepConfig& cfg, std::string dataset_id) {
  cfg.validate();
  SweepReport report{std::move(dataset_id), cfg, {}};

  std::optional<std::vector<FrequentItemset>> frequent;
  std::string frequent_error;
  try {
    frequent = mine_frequent(ds, cfg.min_support);
  } catch (const Error& e) {
    frequent_error = e.what();
  }
  const auto* freq = frequent ? &*frequent : nullptr;

  if (cfg.jobs <= 1) {
    for (const auto& t : cfg.thresholds) report.rows.push_back(run_row(ds, cfg, t, freq, frequent_error));
    return report;
  }

  std::vector<std::future<SweepRow>> pending;
  for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
    if (pending.size() >= cfg.jobs) {
      report.rows.push_back(pending.front().get());
      pending.erase(pending.begin());
    }
    pending.push_back(std::async(std::launch::async, [&, i] { return run_row(ds, cfg, cfg.thresholds[i], freq, frequent_error); }));
  }
  for (auto& f : pending) report.rows.push_back(f.get());
  return report;
}

void SweepReport::write_csv(std::ostream& out) const {
  out << "threshold,apriori_rules,agt_rules,apriori_redundancy_ratio\n";
  for (const auto& row : rows) {
    out << format_decimal(row.threshold) << ',';
    if (row.apriori_rules) out << *row.apriori_rules;
    out << ',';
    if (row.agt_rules) out << *row.agt_rules;
    out << ',';
    if (row.apriori_redundancy_ratio) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", *row.apriori_redundancy_ratio);
      out << buf;
    }
    out << '\n';
  }
}

void SweepReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["dataset"] = dataset_id;
  auto& c = j["config"];
  c["min_support"] = config.min_support;
  c["strict_redundancy"] = config.strict_redundancy;
  c["ranking"] = ranking_name(config.ranking);
  c["class_filter"] = config.class_filter ? nlohmann::ordered_json(*config.class_filter) : nlohmann::ordered_json();
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    const auto t = row.threshold.reduced();
    r["threshold"] = format_decimal(t);
    r["threshold_num"] = t.num;
    r["threshold_den"] = t.den;
    r["apriori_rules"] = row.apriori_rules ? nlohmann::ordered_json(*row.apriori_rules) : nlohmann::ordered_json();
    r["agt_rules"] = row.agt_rules ? nlohmann::ordered_json(*row.agt_rules) : nlohmann::ordered_json();
    r["apriori_redundancy_ratio"] =
        row.apriori_redundancy_ratio ? nlohmann::ordered_json(*row.apriori_redundancy_ratio) : nlohmann::ordered_json();
    if (!row.error.empty()) r["error"] = row.error;
    j["rows"].push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

}  // namespace ctxmine
