#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mtcheck/git_history.hpp"
#include "mtcheck/license_detector.hpp"
#include "mtcheck/mt_model.hpp"

// Maps fork files back to the base files they reuse (same path, rename chain,
// or near-clone) and selects the obligating ones: base-created files whose
// license carries a modification term covering the file's scope element.
namespace mtcheck {

enum class MappingStage { SamePath, Rename, Clone };

std::string_view to_string(MappingStage s);

struct FileMapping {
  std::string base_path;
  std::string fork_path;
  MappingStage stage = MappingStage::SamePath;
  double similarity = 1.0;  // clone score; 1.0 for the other stages
  std::string base_rev;     // revision whose snapshot holds base_path
};

struct ObligatingFile {
  std::string base_path;
  std::string fork_path;
  ModificationTerm term;
};

// Jaccard similarity over 5-token shingles of normalized content (lowercased,
// whitespace collapsed). Files shorter than one shingle compare as single
// units; two empty files score 1.0.
double clone_similarity(std::string_view a, std::string_view b);

inline constexpr double kDefaultCloneThreshold = 0.8;

struct MappingConfig {
  double clone_threshold = kDefaultCloneThreshold;
};

// Pure mapping cores, exercised directly by tests. Each fork path lands in at
// most one mapping across the stages. fork_created holds paths added by the
// fork's own commits (not by base commits later merged in); those paths never
// map by name, only as clones.
std::vector<FileMapping> map_same_path(
    const std::vector<std::string>& fork_files,
    const std::vector<std::string>& b1_files, const std::string& b1_rev,
    const std::vector<std::string>& b2_files, const std::string& b2_rev,
    const std::set<std::string>& fork_created);

// fork_changes must be ordered newest commit first (each element one commit's
// changes); rename chains are followed back to the fork point.
std::vector<FileMapping> map_renames(
    const std::vector<std::string>& unmapped_fork_files,
    const std::vector<std::vector<git::FileChange>>& fork_changes,
    const std::vector<std::string>& b1_files, const std::string& b1_rev,
    const std::vector<std::string>& b2_files, const std::string& b2_rev,
    const std::set<std::string>& fork_created);

struct CloneCandidate {
  std::string path;
  std::string rev;
  const std::string* content = nullptr;
};

std::vector<FileMapping> map_clones(
    const std::vector<std::pair<std::string, const std::string*>>& unmapped_fork_files,
    const std::vector<CloneCandidate>& base_candidates,
    const ExtensionMap& extmap, const MappingConfig& config);

// Full three-stage mapping over on-disk repositories, sorted by fork path.
std::vector<FileMapping> map_repositories(const git::RepoRef& base,
                                          const git::RepoRef& fork,
                                          const std::string& b1,
                                          const std::string& b2,
                                          const std::string& f,
                                          const ExtensionMap& extmap,
                                          const MappingConfig& config);

// Filters mappings down to obligating files. content_of fetches the base
// snapshot content for (rev, path); project_license is the base project's
// license if any.
std::vector<ObligatingFile> select_obligating_files(
    const std::vector<FileMapping>& mappings,
    const std::function<std::optional<std::string>(const std::string&,
                                                   const std::string&)>& content_of,
    const std::optional<std::string>& project_license,
    const LicenseTemplates& templates, const MtDatabase& db,
    const ExtensionMap& extmap);

// Base project license at b1, falling back to b2.
std::optional<std::string> project_license_of(const git::RepoRef& base,
                                              const std::string& b1,
                                              const std::string& b2,
                                              const LicenseTemplates& templates);

} // namespace mtcheck
