#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtcheck/commit_analyzer.hpp"
#include "mtcheck/notice_extractor.hpp"

// Matches obligating commits against changelog entries with TF-IDF cosine
// similarity and classifies the outcome: a commit is covered (OB), lacks any
// entry (VN), or has one with a wrong date (VD) or author (VA). Fix actions
// repair each violation in the notice file.
namespace mtcheck {

enum class DetectionType {
  ObligationFree, // OF: commit touched no obligating file
  Obligated,      // OB: obligation met
  MissingNotice,  // VN: no entry reaches the threshold
  WrongDate,      // VD: required date absent from the matched entry's span
  WrongAuthor,    // VA: required author does not match
};

std::string_view to_string(DetectionType t); // "OF".."VA"
std::string_view describe(DetectionType t);  // human wording

struct EngineConfig {
  double threshold = 0.3; // minimum cosine for an entry to count
};

// Fixed-vocabulary TF-IDF index over the notice entries: smoothed inverse
// document frequencies, raw term counts, L2-normalized vectors. Message
// tokens outside the vocabulary are dropped.
struct TfIdfIndex {
  std::map<std::string, std::size_t> vocab;
  std::vector<double> idf;
  std::vector<std::vector<std::pair<std::size_t, double>>> entry_vectors;
  std::size_t doc_count = 0;
};

TfIdfIndex build_index(const std::vector<ChangeLogEntry>& entries);

std::vector<std::pair<std::size_t, double>> vectorize(const TfIdfIndex& index,
                                                      const std::string& text);

double similarity(const TfIdfIndex& index, const std::string& message,
                  std::size_t entry);

struct DetectionRecord {
  git::Commit commit;
  DetectionType type = DetectionType::ObligationFree;
  double score = 0.0;                        // best cosine (0 with no entries)
  std::optional<ChangeLogEntry> matched;     // present for OB/VD/VA
  std::set<ContentElement> required_content; // empty for OF
  std::set<LocationMode> required_locations;
  std::vector<std::string> touched;
};

// Classifies one obligating commit against the entry set. Ties on the score
// resolve to the earliest entry.
DetectionRecord classify_commit(const ObligatingCommit& commit,
                                const std::vector<ChangeLogEntry>& entries,
                                const TfIdfIndex& index, const EngineConfig& config);

enum class FixKind { CreateEntry, SetDates, SetAuthor };

struct FixAction {
  FixKind kind = FixKind::CreateEntry;
  std::string notice_path;
  // CreateEntry: the entry text and its date heading.
  std::string message;
  std::optional<git::Author> author;
  Date date;                    // CreateEntry heading / SetDates replacement
  std::size_t block_index = 0;  // SetDates: block within the current file
  std::size_t line_no = 0;      // SetAuthor: entry line within the file
};

// Violations map to one action each; OF/OB need none. VN entries land in
// primary_notice_path (the first notice file, or the default changelog name).
std::optional<FixAction> generate_fix(const DetectionRecord& record,
                                      const std::string& primary_notice_path);

inline constexpr const char* kDefaultNoticeName = "CHANGELOG.md";

// Applies all actions for one notice file (absent when the file does not
// exist yet) and returns the new content. Edits anchor to original line
// numbers; on a conflicting line the last action wins.
std::string apply_fixes(const std::optional<NoticeFile>& file,
                        const std::vector<FixAction>& actions);

} // namespace mtcheck
