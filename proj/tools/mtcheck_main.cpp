#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mtcheck/report.hpp"

namespace {

struct CommonArgs {
  std::string base;
  std::string fork;
  std::string fork_point;
  double threshold = 0.3;
  double clone_threshold = mtcheck::kDefaultCloneThreshold;
  std::string mt_db;
  std::string ext_map;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--base", args.base, "Base (upstream) repository path")->required();
  cmd->add_option("--fork", args.fork, "Fork repository path")->required();
  cmd->add_option("--fork-point", args.fork_point,
                  "Fork-point revision (default: merge-base of the two heads)");
  cmd->add_option("--threshold", args.threshold,
                  "Minimum cosine similarity for a notice entry to match")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--clone-threshold", args.clone_threshold,
                  "Minimum similarity for clone-stage file mapping")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--mt-db", args.mt_db,
                  "Modification-term database TSV replacing the builtin");
  cmd->add_option("--ext-map", args.ext_map,
                  "Path classification TSV replacing the builtin");
  cmd->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "markdown"}))
      ->capture_default_str();
}

mtcheck::RunOptions options_of(const CommonArgs& args) {
  mtcheck::RunOptions options;
  if (!args.fork_point.empty()) options.fork_point = args.fork_point;
  options.threshold = args.threshold;
  options.clone_threshold = args.clone_threshold;
  if (!args.mt_db.empty()) options.mt_db = args.mt_db;
  if (!args.ext_map.empty()) options.ext_map = args.ext_map;
  return options;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mtcheck: checks a fork against the modification terms of its base\n"
      "project's license and can write the missing change-log notices."};
  app.require_subcommand(1);

  CommonArgs detect_args, fix_args, sweep_args;

  CLI::App* detect = app.add_subcommand(
      "detect", "Classify every fork commit against its notice obligations");
  add_common(detect, detect_args);

  CLI::App* fix = app.add_subcommand(
      "fix", "Detect violations and generate notice fixes as patches");
  add_common(fix, fix_args);
  bool write = false;
  fix->add_flag("--write", write,
                "Write the fixed notice files into the fork working tree");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Score a labeled commit corpus at thresholds 0.1 through 0.9");
  add_common(sweep, sweep_args);
  std::string labels_path;
  sweep->add_option("--labels", labels_path,
                    "Label file: one '<commit-id> <type>' per line")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help exits clean; anything else is a usage error
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (detect->parsed()) {
      mtcheck::Report report =
          mtcheck::run_detect(detect_args.base, detect_args.fork, options_of(detect_args));
      std::cout << (detect_args.format == "markdown" ? mtcheck::to_markdown(report)
                                                     : mtcheck::to_json(report));
      return mtcheck::has_violations(report) ? 1 : 0;
    }
    if (fix->parsed()) {
      mtcheck::FixReport result =
          mtcheck::run_fix(fix_args.base, fix_args.fork, options_of(fix_args), write);
      std::cout << (fix_args.format == "markdown" ? mtcheck::to_markdown(result)
                                                  : mtcheck::to_json(result));
      return mtcheck::has_violations(result.report) ? 1 : 0;
    }
    auto labels = mtcheck::parse_labels(read_file(labels_path));
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
    auto rows = mtcheck::run_sweep(sweep_args.base, sweep_args.fork,
                                   options_of(sweep_args), labels, grid);
    std::cout << (sweep_args.format == "markdown" ? mtcheck::to_markdown(rows)
                                                  : mtcheck::to_json(rows));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "mtcheck: error: " << e.what() << "\n";
    return 2;
  }
}
