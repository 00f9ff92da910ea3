#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "mtcheck/subprocess.hpp"
#include "support/git_fixture.hpp"

using mtcheck::proc::run;

namespace {
constexpr const char* kBin = MTCHECK_BIN;
}

TEST_CASE("cli separates help, usage errors, and processing errors") {
  auto help = run({kBin, "--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("detect") != std::string::npos);
  CHECK(help.out.find("fix") != std::string::npos);
  CHECK(help.out.find("sweep") != std::string::npos);

  CHECK(run({kBin}).exit_code == 2);                    // subcommand required
  CHECK(run({kBin, "frobnicate"}).exit_code == 2);      // unknown subcommand
  CHECK(run({kBin, "detect", "--fork", "x"}).exit_code == 2); // --base missing
  CHECK(run({kBin, "detect", "--base", "a", "--fork", "b", "--format", "xml"})
            .exit_code == 2);
  CHECK(run({kBin, "detect", "--base", "a", "--fork", "b", "--threshold", "7"})
            .exit_code == 2);

  auto missing = run({kBin, "detect", "--base", "/nonexistent/base", "--fork",
                      "/nonexistent/fork"});
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("mtcheck: error:") != std::string::npos);
}

TEST_CASE("cli detect, fix, and sweep run the full pipeline") {
  fixture::TempDir tmp;
  fixture::GitRepo base{tmp.path() / "base"};
  base.init();
  base.write("COPYING",
             "GNU General Public License as published by the Free Software\n"
             "Foundation; either version 2 of the License.\n");
  base.write("src/core.c", "int tick(void) { return 0; }\n");
  base.commit_all("base import", "2021-01-01T12:00:00+0000");

  fixture::GitRepo fork{tmp.path() / "fork"};
  fork.clone_from(base.dir);
  fork.write("src/core.c", "int tick(void) { return 1; }\n");
  std::string id = fork.commit_all("rework scheduler queue", "2021-05-06T12:00:00+0000");

  const std::string base_path = base.dir.string();
  const std::string fork_path = fork.dir.string();

  auto detect = run({kBin, "detect", "--base", base_path, "--fork", fork_path});
  CHECK(detect.exit_code == 1); // violation found
  auto detect_json = nlohmann::json::parse(detect.out);
  CHECK(detect_json["verdict"] == "FullyViolated");
  CHECK(detect_json["records"][0]["commit_id"] == id);
  CHECK(detect_json["records"][0]["type"] == "VN");

  auto md = run({kBin, "detect", "--base", base_path, "--fork", fork_path,
                 "--format", "markdown"});
  CHECK(md.exit_code == 1);
  CHECK(md.out.find("FullyViolated") != std::string::npos);
  CHECK(md.out.find("rework scheduler queue") != std::string::npos);

  auto dry = run({kBin, "fix", "--base", base_path, "--fork", fork_path});
  CHECK(dry.exit_code == 1);
  auto dry_json = nlohmann::json::parse(dry.out);
  REQUIRE(dry_json["patches"].size() == 1);
  CHECK(dry_json["patches"][0]["path"] == "CHANGELOG.md");
  CHECK(dry_json["patches"][0]["created"] == true);
  CHECK_FALSE(std::filesystem::exists(fork.dir / "CHANGELOG.md"));

  auto wet = run({kBin, "fix", "--base", base_path, "--fork", fork_path, "--write"});
  CHECK(wet.exit_code == 1);
  REQUIRE(std::filesystem::exists(fork.dir / "CHANGELOG.md"));

  auto settled = run({kBin, "detect", "--base", base_path, "--fork", fork_path});
  CHECK(settled.exit_code == 0); // no violations left
  auto settled_json = nlohmann::json::parse(settled.out);
  CHECK(settled_json["verdict"] == "FullyObligated");

  // a sky-high threshold turns the matched entry back into a violation
  auto strict = run({kBin, "detect", "--base", base_path, "--fork", fork_path,
                     "--threshold", "0.99"});
  CHECK(strict.exit_code == 1);
  CHECK(nlohmann::json::parse(strict.out)["records"][0]["type"] == "VN");

  std::filesystem::path labels_path = tmp.path() / "labels.txt";
  {
    std::ofstream labels(labels_path);
    labels << id << " OB\n";
  }
  auto sweep = run({kBin, "sweep", "--base", base_path, "--fork", fork_path,
                    "--labels", labels_path.string()});
  CHECK(sweep.exit_code == 0);
  auto rows = nlohmann::json::parse(sweep.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["th"] == doctest::Approx(0.1));
  CHECK(rows[0]["macro_recall"] == doctest::Approx(1.0));
  CHECK(rows[8]["th"] == doctest::Approx(0.9));
  CHECK(rows[8]["macro_recall"] < 1.0); // the 0.866 match drops out at 0.9

  auto bad_labels = run({kBin, "sweep", "--base", base_path, "--fork", fork_path,
                         "--labels", (tmp.path() / "missing.txt").string()});
  CHECK(bad_labels.exit_code == 2);
}
