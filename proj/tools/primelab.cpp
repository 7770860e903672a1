#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "primelab/cli/config.hpp"
#include "primelab/cli/suites.hpp"
#include "primelab/errors.hpp"
#include "primelab/parallel.hpp"

namespace {

namespace fs = std::filesystem;
using namespace primelab;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kSizeLimit = 3, kOther = 4 };

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_csvs(const ExperimentReport& r, const fs::path& dir, const std::string& stem) {
  if (!r.columns.empty()) write_file(dir / (stem + ".csv"), r.to_csv());
  for (const auto& part : r.parts) write_csvs(part, dir, stem + "." + part.suite);
}

int run(const std::string& suite, const std::string& config_path, const std::string& out_dir,
        std::optional<std::int64_t> seed, std::optional<std::int64_t> threads, bool json, bool csv, bool timing) {
  auto config = config_path.empty() ? cli::Config() : cli::Config::load(config_path);
  if (seed) config.set("run.seed", std::to_string(*seed));
  if (threads) config.set("run.threads", std::to_string(*threads));
  const auto n = config.integer("run.threads");
  if (n < 1) throw ConfigError("run.threads must be positive");
  set_default_threads(static_cast<std::size_t>(n));

  const auto start = std::chrono::steady_clock::now();
  auto report = cli::run_suite(suite, config);
  report.config_hash = config.hash();
  if (timing || config.boolean("output.timing"))
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!json && !csv) json = csv = true;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  if (csv) write_csvs(report, dir, suite);
  if (json) write_file(dir / (suite + ".json"), report.to_json());

  for (const auto& [name, pass] : report.all_verdicts()) std::printf("%s %s\n", pass ? "PASS" : "FAIL", name.c_str());
  for (const auto& note : report.notes) std::printf("note: %s\n", note.c_str());
  std::printf("%s: %s (config %s)\n", suite.c_str(), report.pass() ? "pass" : "FAIL", report.config_hash.c_str());
  return report.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on polynomial ergodic averages along primes"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::optional<std::int64_t> seed, threads;
  bool json = false, csv = false, timing = false;
  std::string chosen;

  for (const auto& name : cli::suite_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " suite");
    sub->add_option("--config", config_path, "config file (section.key = value)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "overrides run.seed");
    sub->add_option("--threads", threads, "overrides run.threads");
    sub->add_flag("--json", json, "write the JSON report");
    sub->add_flag("--csv", csv, "write CSV tables");
    sub->add_flag("--timing", timing, "record wall time in the report");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* keys = app.add_subcommand("keys", "list configuration keys and defaults");
  keys->callback([&chosen] { chosen = "keys"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  if (chosen == "keys") {
    for (const auto& k : cli::key_registry())
      std::printf("%-32s = %-24s # %s\n", k.name.c_str(), k.default_value.c_str(), k.help.c_str());
    return kPass;
  }

  try {
    return run(chosen, config_path, out_dir, seed, threads, json, csv, timing);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const SizeLimitError& e) {
    std::fprintf(stderr, "size limit: %s\n", e.what());
    return kSizeLimit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOther;
  }
}
