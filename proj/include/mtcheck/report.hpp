#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtcheck/violation_engine.hpp"

// Pipeline orchestration and reporting: runs detection over a base/fork pair,
// classifies the repository verdict, renders JSON and markdown reports, and
// hosts the metrics and threshold-sweep harness.
namespace mtcheck {

enum class RepoVerdict {
  ObligationFree,    // no obligating commits at all
  FullyObligated,    // every obligating commit is OB
  PartiallyViolated, // obligated and violating commits mixed
  FullyViolated,     // every obligating commit violates
};

std::string_view to_string(RepoVerdict v);
std::optional<DetectionType> detection_type_from_string(std::string_view s);

struct RunOptions {
  std::optional<std::string> fork_point;        // revision override
  double threshold = 0.3;                       // cosine match cutoff
  double clone_threshold = kDefaultCloneThreshold;
  std::optional<std::filesystem::path> mt_db;   // TSV replacing the builtin
  std::optional<std::filesystem::path> ext_map; // TSV replacing the builtin
};

struct Report {
  RepoVerdict verdict = RepoVerdict::ObligationFree;
  std::vector<DetectionRecord> records; // one per filtered fork commit, newest first
  std::map<DetectionType, std::size_t> counts; // all five types, zeros included
  std::map<ScopeElement, std::size_t> scope_commit_counts; // obligating commits per element
  double threshold = 0.3;
  double clone_threshold = kDefaultCloneThreshold;
  std::string fork_point; // resolved full id
  std::string mt_db_version;
  std::optional<std::string> project_license;
};

bool has_violations(const Report& report);

struct PatchedNotice {
  std::string path; // fork-relative
  bool existed = false;
  std::string old_text;
  std::string new_text;
  std::string diff; // unified diff, "" when content is unchanged
};

struct FixReport {
  Report report;
  std::vector<PatchedNotice> patches; // sorted by path
};

// Full detection pipeline: file mapping, commit filtering, notice extraction,
// classification. Throws git::GitError or std::runtime_error on bad inputs.
Report run_detect(const std::filesystem::path& base_path,
                  const std::filesystem::path& fork_path,
                  const RunOptions& options);

// Detection plus fix generation. Each violating record contributes one fix
// action; actions group per notice file and materialize as patches. With
// write=true the new contents are written into the fork working tree.
FixReport run_fix(const std::filesystem::path& base_path,
                  const std::filesystem::path& fork_path,
                  const RunOptions& options, bool write);

RepoVerdict classify_repo(const std::vector<DetectionRecord>& records);

struct MetricsRow {
  double th = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  std::map<DetectionType, double> precision; // per scored class
  std::map<DetectionType, double> recall;
};

// Macro precision/recall over {VN, VD, OF, OB}, plus VA when either side
// mentions it. A class absent from both sides scores 1.0 (nothing to get
// wrong); a class one side mentions and the other misses scores 0 on the
// undefined ratio. Throws std::invalid_argument when the id sets differ.
MetricsRow compute_macro_metrics(const std::map<std::string, DetectionType>& predicted,
                                 const std::map<std::string, DetectionType>& labeled);

// Re-classifies the obligating commits at each threshold (one shared index)
// and scores against the labels. obligation_free_ids predict OF throughout.
std::vector<MetricsRow> threshold_sweep(
    const std::vector<ObligatingCommit>& obligating,
    const std::vector<std::string>& obligation_free_ids,
    const std::vector<ChangeLogEntry>& entries,
    const std::map<std::string, DetectionType>& labels,
    const std::vector<double>& th_values);

// Pipeline-backed sweep: runs the detection preliminaries once on the pair
// and scores the label corpus at every threshold.
std::vector<MetricsRow> run_sweep(const std::filesystem::path& base_path,
                                  const std::filesystem::path& fork_path,
                                  const RunOptions& options,
                                  const std::map<std::string, DetectionType>& labels,
                                  const std::vector<double>& th_values);

// Label corpus: one "<commit-id> <type>" pair per line; blank lines and
// '#' comments skipped. Throws std::invalid_argument on malformed lines.
std::map<std::string, DetectionType> parse_labels(std::string_view text);

std::string to_json(const Report& report);
std::string to_markdown(const Report& report);
std::string to_json(const FixReport& fix);
std::string to_markdown(const FixReport& fix);
std::string to_json(const std::vector<MetricsRow>& rows);
std::string to_markdown(const std::vector<MetricsRow>& rows);

// Concatenated unified diffs of a fix run, "" when nothing changed.
std::string patches_text(const FixReport& fix);

} // namespace mtcheck
