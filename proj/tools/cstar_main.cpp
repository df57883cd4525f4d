// Command-line front end: run one scenario file, the whole bundled
// suite, or list what is available.  Exit codes: 0 verdict as expected,
// 1 verdict mismatch, 2 configuration problem, 3 numerical failure
// inside a checker.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cstar/scenario.hpp"

namespace {

using namespace cstar;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  // Write to a sibling temp file first so readers never see a partial
  // report.
  const std::filesystem::path target(out_path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + out_path);
    f << text;
  }
  std::filesystem::rename(tmp, target);
}

std::string render(const RunReport& rep, const std::string& format,
                   bool timing) {
  if (format == "json") return to_string(to_json(rep, timing));
  if (format == "markdown") return to_markdown(rep);
  throw ConfigError("unknown format '" + format + "' (json|markdown)");
}

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tol = 0.0;
  bool tol_given = false;
  std::string format = "json";
  std::string out;
  bool timing = false;

  RunOptions run_options() const {
    RunOptions opt;
    if (seed_given) opt.seed_override = seed;
    if (tol_given) opt.tol_override = tol;
    opt.include_timing = timing;
    return opt;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "override the scenario's run seed")
      ->each([&c](const std::string&) { c.seed_given = true; });
  cmd->add_option("--tol-override", c.tol,
                  "override the default residual tolerance")
      ->each([&c](const std::string&) { c.tol_given = true; });
  cmd->add_option("--format", c.format, "output format: json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));
  cmd->add_option("--out", c.out, "write the report here instead of stdout");
  cmd->add_flag("--timing", c.timing,
                "include wall-clock seconds (breaks byte-identical replay)");
}

int run_one(const std::string& file, const CommonOpts& c) {
  Scenario scenario;
  try {
    scenario = load_scenario(file);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    const RunReport rep = run_scenario(scenario, c.run_options());
    write_output(render(rep, c.format, c.timing), c.out);
    return exit_code(rep);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Checker-level numerical failure: embed it in the report stream.
    Json j{{"scenario", to_json(scenario)},
           {"error", e.what()},
           {"category", "numerical"}};
    write_output(to_string(j), c.out);
    return 3;
  }
}

int run_suite(const std::string& dir, const CommonOpts& c) {
  std::vector<std::filesystem::path> files;
  try {
    files = list_scenarios(dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (files.empty()) {
    std::cerr << "error: no scenario files in " << dir << "\n";
    return 2;
  }

  int worst = 0;
  Json merged = Json::array();
  std::string markdown;
  for (const auto& file : files) {
    try {
      const Scenario scenario = load_scenario(file);
      const RunReport rep = run_scenario(scenario, c.run_options());
      if (c.format == "json")
        merged.push_back(to_json(rep, c.timing));
      else
        markdown += to_markdown(rep) + "\n---\n\n";
      worst = std::max(worst, exit_code(rep));
    } catch (const ConfigError& e) {
      merged.push_back(Json{{"file", file.filename().string()},
                            {"error", e.what()},
                            {"category", "config"}});
      markdown += "# " + file.filename().string() + "\n\nconfig error: " +
                  e.what() + "\n\n---\n\n";
      worst = std::max(worst, 2);
    } catch (const std::invalid_argument& e) {
      merged.push_back(Json{{"file", file.filename().string()},
                            {"error", e.what()},
                            {"category", "config"}});
      markdown += "# " + file.filename().string() + "\n\nconfig error: " +
                  e.what() + "\n\n---\n\n";
      worst = std::max(worst, 2);
    } catch (const std::exception& e) {
      merged.push_back(Json{{"file", file.filename().string()},
                            {"error", e.what()},
                            {"category", "numerical"}});
      markdown += "# " + file.filename().string() + "\n\nnumerical error: " +
                  e.what() + "\n\n---\n\n";
      worst = std::max(worst, 3);
    }
  }
  try {
    write_output(c.format == "json" ? to_string(merged) : markdown, c.out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return worst;
}

int run_list(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  try {
    files = list_scenarios(dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& file : files) {
    try {
      const Scenario s = load_scenario(file);
      std::cout << file.filename().string() << "  [" << s.checker << "]  "
                << s.claim << "\n";
    } catch (const ConfigError& e) {
      std::cout << file.filename().string() << "  (invalid: " << e.what()
                << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-algebra scenario workbench"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_file;
  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario file");
  run_cmd->add_option("file", run_file, "scenario JSON file")->required();
  add_common(run_cmd, run_opts);

  CommonOpts suite_opts;
  std::string suite_dir = "scenarios";
  CLI::App* suite_cmd =
      app.add_subcommand("suite", "run every bundled scenario");
  suite_cmd->add_option("--dir", suite_dir, "scenario directory");
  add_common(suite_cmd, suite_opts);

  std::string list_dir = "scenarios";
  CLI::App* list_cmd = app.add_subcommand("list", "list bundled scenarios");
  list_cmd->add_option("--dir", list_dir, "scenario directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run_cmd->parsed()) return run_one(run_file, run_opts);
  if (suite_cmd->parsed()) return run_suite(suite_dir, suite_opts);
  return run_list(list_dir);
}
