#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eplab/cli/commands.hpp"

using namespace eplab;
using namespace eplab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eplab_cli_" + name);
  fs::remove_all(p);
  return p;
}

const char* kZero =
    "[grid]\ndims = 16\nbox_length = 32\n[data]\ndelta = 0\n"
    "[solver]\ndt = 0.1\nt_end = 1\n[record]\nevery = 0.5\n";

}  // namespace

TEST(ConfigFile, SectionsCommentsAndListKeys) {
  const auto c = ConfigFile::parse_string(
      "# header\n[grid]\ndims = 32   # trailing\n\n[record]\nnorms[] = alpha_hn, beta_hn\nsigma = 5/2\n"
      "[output]\ndir = \"a b\"\n");
  EXPECT_EQ(c.get_int("grid.dims", 0), 32);
  EXPECT_EQ(c.get_list("record.norms", {}), (std::vector<std::string>{"alpha_hn", "beta_hn"}));
  EXPECT_DOUBLE_EQ(c.get_double("record.sigma", 0.0), 2.5);
  EXPECT_EQ(c.get_string("output.dir", ""), "a b");
  EXPECT_TRUE(c.unused_keys().empty());
}

TEST(ConfigFile, Errors) {
  EXPECT_THROW(ConfigFile::parse_string("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse_string("[grid\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse_string("novalue\n"), ConfigError);
  const auto c = ConfigFile::parse_string("n = 3.5\nb = maybe\n");
  EXPECT_THROW(c.get_int("n", 0), ConfigError);
  EXPECT_THROW(c.get_bool("b", false), ConfigError);
}

TEST(ConfigFile, HashIgnoresOrderAndComments) {
  const auto a = ConfigFile::parse_string("[grid]\ndims = 16\nbox_length = 32\n");
  const auto b = ConfigFile::parse_string("# x\ngrid.box_length = 32\ngrid.dims = 16\n");
  const auto c = ConfigFile::parse_string("grid.dims = 16\ngrid.box_length = 33\n");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(a.hash().size(), 16u);
}

TEST(ExperimentConfig, ReadsKeysAndRejectsUnknown) {
  const auto cfg = ExperimentConfig::from(ConfigFile::parse_string(
      "seed = 9\n[grid]\ndims = 24\nbox_length = 40\n[data]\ndelta = 0.002\nneutral = true\n[solver]\nscheme = rk4\n"
      "[holder]\ntriads = 4:4:2, 1:1:1\nexponents = 10:5/2:2\n"));
  EXPECT_EQ(cfg.run.n, 24u);
  EXPECT_DOUBLE_EQ(cfg.run.box_length, 40.0);
  EXPECT_TRUE(cfg.run.data.neutral);
  EXPECT_EQ(cfg.seed, 9u);
  ASSERT_EQ(cfg.triads.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.triads[0].q, 2.5);
  try {
    ExperimentConfig::from(ConfigFile::parse_string("grid.dimz = 16\n"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("grid.dimz"), std::string::npos);
  }
}

TEST(ExperimentConfig, ValidationDiagnostics) {
  auto cfg = ExperimentConfig::from(ConfigFile::parse_string("data.delta = 0.2\n"));
  EXPECT_THROW(cfg.validate_for("phasebound"), ConfigError);
  cfg = ExperimentConfig::from(ConfigFile::parse_string("grid.dims = 15\n"));
  EXPECT_THROW(cfg.validate_for("simulate"), ConfigError);
  EXPECT_NO_THROW(cfg.validate_for("phasebound"));
  cfg = ExperimentConfig::from(ConfigFile::parse_string("controlds.eps = 0.5\n"));
  EXPECT_THROW(run_subcommand("controlds", cfg), Error);
  EXPECT_THROW(run_subcommand("nosuch", cfg), ConfigError);
}

TEST(Commands, SimulateZeroDataWritesDeterministicFiles) {
  const auto file = ConfigFile::parse_string(kZero);
  const auto cfg = ExperimentConfig::from(file);
  const Provenance prov{"simulate", file.hash(), cfg.seed};
  const Outcome o = run_subcommand("simulate", cfg);
  EXPECT_TRUE(o.pass());
  const fs::path d1 = scratch("a"), d2 = scratch("b");
  write_outcome(d1, prov, o);
  write_outcome(d2, prov, run_subcommand("simulate", cfg));
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(d1)) {
    EXPECT_EQ(slurp(e.path()), slurp(d2 / e.path().filename())) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 3u);
  const std::string csv = slurp(d1 / "simulate_series.csv");
  EXPECT_EQ(csv.rfind(prov.line() + "\n", 0), 0u);
  const auto rows = aggregate_reports(d1);
  ASSERT_FALSE(rows.empty());
  EXPECT_TRUE(rows.front().pass);
  EXPECT_NE(format_aggregate(rows).find("failed 0"), std::string::npos);
}

TEST(Commands, ScanSubcommandsRecordProvenance) {
  const auto file = ConfigFile::parse_string("phase.log2_step = 1\nphase.angles = 9\n");
  const auto cfg = ExperimentConfig::from(file);
  const Outcome o = run_subcommand("phasebound", cfg);
  EXPECT_EQ(o.reports.size(), 4u);
  EXPECT_TRUE(o.pass());
  std::ostringstream os;
  write_reports_csv(os, {"phasebound", file.hash(), 1}, o.reports);
  std::istringstream is(os.str());
  std::string first, second;
  std::getline(is, first);
  std::getline(is, second);
  EXPECT_EQ(first, "# subcommand=phasebound config_hash=" + file.hash() + " seed=1");
  EXPECT_EQ(second, "quantity,samples,min,max,argmin,argmax,rule,threshold,pass");
}
