#include "ctxmine/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ctxmine/agt.hpp"
#include "ctxmine/apriori.hpp"
#include "ctxmine/error.hpp"
#include "ctxmine/fixtures.hpp"
#include "ctxmine/ingest.hpp"
#include "ctxmine/precedence.hpp"
#include "ctxmine/rule_io.hpp"
#include "ctxmine/sweep.hpp"
#include "ctxmine/synth.hpp"

namespace ctxmine {

namespace {

namespace fs = std::filesystem;

fs::path output_path(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = fs::path(dir) / p;
  }
  return p;
}

// Writes through `fn` to `path`, or to `fallback` when path is empty or "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  const auto p = output_path(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + p.string());
  fn(file);
}

Dataset load_dataset(const std::string& path, std::istream& in) {
  if (path == "-") return read_dataset(in);
  return read_dataset(fs::path(path));
}

std::optional<std::vector<std::string>> class_filter(const std::vector<std::string>& classes, const Dataset& ds) {
  if (classes.empty()) return std::nullopt;
  for (const auto& c : classes) {
    if (!ds.schema().find_class(c)) throw ConfigError("unknown behavior class '" + c + "' in --classes");
  }
  return classes;
}

struct MineOptions {
  std::string dataset;
  std::string min_conf = "80";
  std::uint64_t min_support = 1;
  std::vector<std::string> classes;
  std::string format = "text";
  std::string output;
};

void add_mine_options(CLI::App* cmd, MineOptions& o) {
  cmd->add_option("dataset", o.dataset, "Dataset file written by `ingest` or `gen --format dataset` (- for stdin)")
      ->required();
  cmd->add_option("--min-conf", o.min_conf, "Confidence threshold: 80, 80%, 0.8 or 4/5")->capture_default_str();
  cmd->add_option("--min-support", o.min_support, "Minimum rule support (instances)")->capture_default_str();
  cmd->add_option("--classes", o.classes, "Only emit rules for these behavior classes")->delimiter(',');
  cmd->add_option("--format", o.format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}))->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Rule output file (default stdout)");
}

void write_rules(const MineOptions& o, const std::vector<Rule>& rules, std::ostream& out) {
  emit(o.output, out, [&](std::ostream& s) {
    if (o.format == "jsonl") {
      write_rules_jsonl(s, rules);
    } else {
      write_rules_text(s, rules);
    }
  });
}

int selftest(std::ostream& out) {
  int failed = 0;
  const auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failed;
  };
  const auto ante = [](std::vector<Condition> c) { return make_antecedent(std::move(c)); };

  {
    const auto rules = fixtures::sample_rules();
    const auto kept = filter_redundant(rules);
    check("sample rules reduce to R1 and R6", kept.size() == 2 && kept[0] == rules[0] && kept[1] == rules[5]);
  }
  {
    const auto kept = filter_redundant(mine_apriori(fixtures::sample_rules_dataset(), Ratio{4, 5}));
    const std::vector<Rule> want{{ante({{"Activity", "Meeting"}}), "Reject", 133, 160},
                                 {ante({{"Activity", "Meeting"}, {"Relation", "Boss"}}), "Accept", 10, 10}};
    check("sample dataset mined end to end", kept == want);
  }
  {
    MiningConfig cfg;
    cfg.threshold = Ratio{4, 5};
    const auto rules = extract_rules(fixtures::example_tree(), cfg);
    const std::vector<Ratio> conf{{10, 10}, {17, 20}, {23, 25}, {19, 20}, {3, 3}};
    bool ok = rules.size() == conf.size();
    for (std::size_t i = 0; ok && i < rules.size(); ++i) ok = rules[i].confidence() == conf[i];
    check("example tree yields five rules", ok);
  }
  {
    const auto ds = fixtures::call_fixture();
    check("fixture IG(Relation)", std::abs(information_gain(ds, "Relation") - 0.548794940695399) < 1e-9);
    check("fixture IG(Activity)", std::abs(information_gain(ds, "Activity") - 0.311278124459133) < 1e-9);
    MiningConfig cfg;
    cfg.threshold = Ratio{3, 4};
    const auto agt = mine_agt(ds, cfg);
    const std::vector<Rule> want{{ante({{"Relation", "Boss"}}), "Accept", 3, 3},
                                 {ante({{"Relation", "Friend"}}), "Reject", 4, 5},
                                 {ante({{"Activity", "Lunch"}, {"Relation", "Friend"}}), "Accept", 1, 1}};
    check("fixture AGT at 75%", agt == want);
    check("fixture Apriori at 75%", mine_apriori(ds, Ratio{3, 4}).size() == 7);
    check("fixture Apriori at 100%", mine_apriori(ds, Ratio{1, 1}).size() == 6);
  }
  out << (failed == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failed == 0 ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine non-redundant behavioral association rules from context-annotated call logs"};
  app.require_subcommand(1);
  app.name(args.empty() ? "ctxmine" : fs::path(args[0]).filename().string());

  // ingest
  std::string log_path;
  std::string config_path;
  std::string ingest_out;
  std::string summary_path;
  std::string summary_format = "text";
  bool strict = false;
  auto* ingest = app.add_subcommand("ingest", "Call log -> canonical dataset file plus ingest summary");
  ingest->add_option("log", log_path, "Delimited call log with a header row (- for stdin)")->required();
  ingest->add_option("-c,--config", config_path, "Column mapping / segmentation config (key = value)");
  ingest->add_option("-o,--output", ingest_out, "Dataset output file (default stdout)");
  ingest->add_flag("--strict", strict, "Abort on the first bad row");
  ingest->add_option("--summary", summary_path, "Write the summary here instead of stderr");
  ingest->add_option("--summary-format", summary_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // rank
  std::string rank_dataset;
  std::vector<std::string> rank_attrs;
  auto* rank = app.add_subcommand("rank", "Print context precedence by information gain");
  rank->add_option("dataset", rank_dataset, "Dataset file (- for stdin)")->required();
  rank->add_option("--attributes", rank_attrs, "Candidate attributes (default: all)")->delimiter(',');

  // mine-agt
  MineOptions agt_opts;
  bool strict_redundancy = false;
  bool global_ranking = false;
  std::string dot_path;
  auto* mine_agt_cmd = app.add_subcommand("mine-agt", "Build the association generation tree and extract rules");
  add_mine_options(mine_agt_cmd, agt_opts);
  mine_agt_cmd->add_flag("--strict-redundancy", strict_redundancy,
                         "Also suppress children matching the nearest qualifying ancestor");
  mine_agt_cmd->add_flag("--global-ranking", global_ranking, "Rank contexts once on the whole dataset");
  mine_agt_cmd->add_option("--dot", dot_path, "Write the tree in Graphviz DOT format");

  // mine-apriori
  MineOptions apriori_opts;
  bool filter = false;
  auto* mine_apriori_cmd = app.add_subcommand("mine-apriori", "Apriori class association rules (baseline)");
  add_mine_options(mine_apriori_cmd, apriori_opts);
  mine_apriori_cmd->add_flag("--filter-redundant", filter, "Drop rules that specialise a rule with the same class");

  // sweep
  std::string sweep_dataset;
  std::vector<std::string> thresholds;
  std::uint64_t sweep_support = 1;
  std::vector<std::string> sweep_classes;
  bool sweep_strict = false;
  bool sweep_global = false;
  unsigned jobs = 1;
  std::string sweep_out;
  std::string sweep_json;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rule counts of both miners across confidence thresholds");
  sweep_cmd->add_option("dataset", sweep_dataset, "Dataset file (- for stdin)")->required();
  sweep_cmd->add_option("--thresholds", thresholds, "Thresholds (default 100,95,...,60)")->delimiter(',');
  sweep_cmd->add_option("--min-support", sweep_support, "Minimum rule support")->capture_default_str();
  sweep_cmd->add_option("--classes", sweep_classes, "Only count rules for these classes")->delimiter(',');
  sweep_cmd->add_flag("--strict-redundancy", sweep_strict, "Strict redundancy for the tree miner");
  sweep_cmd->add_flag("--global-ranking", sweep_global, "Global context ranking for the tree miner");
  sweep_cmd->add_option("--jobs", jobs, "Thresholds evaluated concurrently")->capture_default_str();
  sweep_cmd->add_option("-o,--output", sweep_out, "CSV report (default stdout)");
  sweep_cmd->add_option("--json", sweep_json, "JSON twin of the report");

  // gen
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::string gen_format = "log";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset with planted rules");
  gen->add_option("spec", spec_path, "Generator spec (JSON)")->required();
  gen->add_option("--seed", seed, "Override the spec seed");
  gen->add_option("-n,--instances", count, "Override the spec instance count");
  gen->add_option("--format", gen_format, "log (call log for `ingest`) or dataset")
      ->check(CLI::IsMember({"log", "dataset"}));
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  auto* self = app.add_subcommand("selftest", "Run the built-in reference checks");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("ctxmine");

  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-' && !app.get_subcommand_no_throw(args[1])) {
    err << "unknown subcommand '" << args[1] << "'\n\n" << app.help();
    return 1;
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << e.what() << "\n\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 1;
  }

  try {
    if (ingest->parsed()) {
      const IngestConfig cfg = config_path.empty() ? IngestConfig{} : load_ingest_config(config_path);
      IngestConfig effective = cfg;
      effective.strict = cfg.strict || strict;
      const auto result = log_path == "-" ? load_log(in, effective) : load_log(fs::path(log_path), effective);
      emit(ingest_out, out, [&](std::ostream& s) { write_dataset(s, result.dataset); });
      emit(summary_path, err, [&](std::ostream& s) {
        if (summary_format == "json") {
          s << result.summary.to_json() << '\n';
        } else {
          result.summary.print(s);
        }
      });
      return 0;
    }

    if (rank->parsed()) {
      const auto ds = load_dataset(rank_dataset, in);
      std::vector<std::string> candidates = rank_attrs;
      if (candidates.empty()) {
        for (const auto& a : ds.schema().attributes()) candidates.push_back(a.name);
      }
      const auto ranking = rank_contexts(ds, candidates);
      out << "rank\tattribute\tinformation_gain\n";
      for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        char gain[32];
        std::snprintf(gain, sizeof gain, "%.6f", ranking.entries[i].gain);
        out << i + 1 << '\t' << ranking.entries[i].attribute << '\t' << gain << '\n';
      }
      out << "# entropy " << entropy(ds) << ", instances " << ranking.instance_count << '\n';
      return 0;
    }

    if (mine_agt_cmd->parsed()) {
      const auto ds = load_dataset(agt_opts.dataset, in);
      MiningConfig cfg;
      cfg.threshold = parse_ratio(agt_opts.min_conf);
      cfg.min_support = agt_opts.min_support;
      cfg.class_filter = class_filter(agt_opts.classes, ds);
      cfg.strict_redundancy = strict_redundancy;
      cfg.ranking = global_ranking ? RankingMode::global : RankingMode::per_node;
      const auto tree = build_tree(ds, cfg);
      write_rules(agt_opts, extract_rules(tree, cfg), out);
      if (!dot_path.empty()) emit(dot_path, out, [&](std::ostream& s) { write_dot(s, tree, cfg); });
      return 0;
    }

    if (mine_apriori_cmd->parsed()) {
      const auto ds = load_dataset(apriori_opts.dataset, in);
      const auto t = parse_ratio(apriori_opts.min_conf);
      const auto classes = class_filter(apriori_opts.classes, ds);
      auto rules = mine_apriori(ds, t, apriori_opts.min_support);
      if (classes) {
        std::erase_if(rules, [&](const Rule& r) {
          return std::find(classes->begin(), classes->end(), r.consequent) == classes->end();
        });
      }
      if (filter) rules = filter_redundant(rules);
      write_rules(apriori_opts, rules, out);
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const auto ds = load_dataset(sweep_dataset, in);
      SweepConfig cfg;
      if (!thresholds.empty()) {
        cfg.thresholds.clear();
        for (const auto& t : thresholds) cfg.thresholds.push_back(parse_ratio(t));
      }
      cfg.min_support = sweep_support;
      cfg.class_filter = class_filter(sweep_classes, ds);
      cfg.strict_redundancy = sweep_strict;
      cfg.ranking = sweep_global ? RankingMode::global : RankingMode::per_node;
      cfg.jobs = jobs;
      std::ostringstream id;
      id << (sweep_dataset == "-" ? std::string("stdin") : fs::path(sweep_dataset).filename().string()) << '#'
         << std::hex << fingerprint(ds);
      const auto report = sweep(ds, cfg, id.str());
      emit(sweep_out, out, [&](std::ostream& s) { report.write_csv(s); });
      if (!sweep_json.empty()) emit(sweep_json, out, [&](std::ostream& s) { report.write_json(s); });
      for (const auto& row : report.rows) {
        if (!row.error.empty()) err << "threshold " << format_decimal(row.threshold) << ": " << row.error << '\n';
      }
      return 0;
    }

    if (gen->parsed()) {
      std::ifstream spec_file(spec_path);
      if (!spec_file) throw ConfigError("cannot open generator spec " + spec_path);
      std::stringstream text;
      text << spec_file.rdbuf();
      auto spec = parse_synth_spec(text.str());
      if (seed) spec.seed = *seed;
      if (count) spec.instances = *count;
      const auto ds = generate(spec.schema, spec.rules, spec.instances, spec.seed);
      emit(gen_out, out, [&](std::ostream& s) {
        if (gen_format == "dataset") {
          write_dataset(s, ds);
        } else {
          write_call_log(s, ds, spec.time_attribute, spec.seed);
        }
      });
      return 0;
    }

    if (self->parsed()) return selftest(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace ctxmine
