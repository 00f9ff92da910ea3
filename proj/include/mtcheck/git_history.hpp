#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtcheck/date.hpp"

// Read-only access to git history, shelling out to the git executable. No
// operation mutates repository state; commands run with global/system config
// suppressed so results do not depend on the host environment.
namespace mtcheck::git {

class GitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RepoRole { Base, Fork };

struct RepoRef {
  std::filesystem::path path;
  RepoRole role = RepoRole::Base;
};

struct Author {
  std::string name;
  std::string email;
  bool operator==(const Author&) const = default;
  std::string display() const { return name + " <" + email + ">"; }
};

struct Commit {
  std::string id;       // full hex object id
  std::vector<std::string> parents;
  Author author;
  Date date;            // committer date, truncated to a UTC calendar day
  std::string message;  // full message text
  std::string first_line() const;
  bool is_merge() const { return parents.size() > 1; }
};

enum class ChangeKind { Added, Deleted, Modified, Renamed };

struct FileChange {
  ChangeKind kind = ChangeKind::Modified;
  std::string path;                     // new path for renames
  std::optional<std::string> old_path;  // set for renames only
};

struct CommitHistory {
  std::vector<Commit> commits; // newest first
  RepoRole role = RepoRole::Base;
};

// Rename detection threshold used for all diffs (percent similarity).
inline constexpr int kRenameThresholdPercent = 60;

// Common ancestor of the two heads, or the override when given. Works across
// two distinct on-disk repositories. Throws GitError when no common ancestor
// exists.
std::string resolve_fork_point(const RepoRef& base, const RepoRef& fork,
                               const std::optional<std::string>& override_rev);

// Full object id for a revision expression.
std::string resolve_revision(const RepoRef& repo, const std::string& rev);

// Commits reachable from `to` and not from `from`, newest first.
CommitHistory commits_between(const RepoRef& repo, const std::string& from,
                              const std::string& to);

// Changes a commit made against its first parent (all files Added for a root
// commit). Renames are detected at kRenameThresholdPercent.
std::vector<FileChange> changed_files(const RepoRef& repo, const Commit& commit);
std::vector<FileChange> changed_files(const RepoRef& repo, const std::string& id);

// Blob bytes at revision:path; empty optional when absent.
std::optional<std::string> file_content(const RepoRef& repo,
                                        const std::string& rev,
                                        const std::string& path);

// True iff an Added change for path (or its rename ancestor) exists in the
// history reachable from upto.
bool created_by(const RepoRef& repo, const std::string& upto,
                const std::string& path);

// Batched equivalents used by the pipeline; results match the per-call
// operations above.
std::vector<std::string> list_files(const RepoRef& repo, const std::string& rev);
std::map<std::string, std::vector<FileChange>> changed_files_between(
    const RepoRef& repo, const std::string& from, const std::string& to);
std::vector<std::optional<std::string>> contents_batch(
    const RepoRef& repo, const std::string& rev,
    const std::vector<std::string>& paths);
std::set<std::string> added_paths(const RepoRef& repo, const std::string& upto);

// Recursive working-tree listing (relative paths, `.git` skipped), for the
// notice-file scan.
std::vector<std::string> working_tree_files(const RepoRef& repo);
std::optional<std::string> working_tree_content(const RepoRef& repo,
                                                const std::string& path);

} // namespace mtcheck::git
