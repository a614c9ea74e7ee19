#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ctxmine/agt.hpp"
#include "ctxmine/datamodel.hpp"
#include "ctxmine/ratio.hpp"

namespace ctxmine {

/// 100%, 95%, ..., 60%.
std::vector<Ratio> default_thresholds();

struct SweepConfig {
  std::vector<Ratio> thresholds = default_thresholds();
  std::uint64_t min_support = 1;
  bool strict_redundancy = false;
  RankingMode ranking = RankingMode::per_node;
  std::optional<std::vector<std::string>> class_filter;
  unsigned jobs = 1;  // rows computed concurrently

  /// Thresholds in (0, 1], strictly increasing or strictly decreasing.
  void validate() const;
};

/// One threshold. A miner that failed leaves its cells empty and records why.
struct SweepRow {
  Ratio threshold;
  std::optional<std::size_t> apriori_rules;
  std::optional<std::size_t> agt_rules;
  std::optional<double> apriori_redundancy_ratio;  // fraction removed by filter_redundant
  std::string error;
};

struct SweepReport {
  std::string dataset_id;
  SweepConfig config;
  std::vector<SweepRow> rows;

  /// Header: threshold,apriori_rules,agt_rules,apriori_redundancy_ratio
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// Runs both miners on `ds` at every threshold, in the configured order.
SweepReport sweep(const Dataset& ds, const SweepConfig& cfg, std::string dataset_id = {});

}  // namespace ctxmine
