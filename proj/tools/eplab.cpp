#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "eplab/cli/commands.hpp"

namespace {

using namespace eplab;
using namespace eplab::cli;

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string dir;
};

int run_computing(const std::string& name, const Args& a) {
  const ConfigFile file = ConfigFile::load(a.config);
  ExperimentConfig cfg = ExperimentConfig::from(file);
  if (a.seed) cfg.seed = *a.seed;
  if (a.out) cfg.output_dir = *a.out;
  const Provenance prov{name, file.hash(), cfg.seed};
  const Outcome o = run_subcommand(name, cfg);
  write_outcome(cfg.output_dir, prov, o);
  std::cout << summary_text(prov, o);
  return o.pass() ? kPass : kViolation;
}

int run_report(const Args& a) {
  const auto rows = aggregate_reports(a.dir);
  const std::string text = format_aggregate(rows);
  std::ofstream(std::filesystem::path(a.dir) / "report_table.txt") << text;
  std::cout << text;
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const AggregateRow& r) { return r.pass; });
  return ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Poisson dispersive decay laboratory"};
  app.require_subcommand(1);
  Args args;
  std::string chosen;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    if (name == "report") {
      sub->add_option("--dir", args.dir, "directory holding *_summary.txt files")->required();
    } else {
      sub->add_option("--config", args.config, "experiment config file")->required();
      sub->add_option("--seed", args.seed, "override the config seed");
      sub->add_option("--out", args.out, "override output.dir");
    }
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kError;
  }
  try {
    return chosen == "report" ? run_report(args) : run_computing(chosen, args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
