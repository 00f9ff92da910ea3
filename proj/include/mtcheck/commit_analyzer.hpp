#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mtcheck/git_history.hpp"
#include "mtcheck/mt_model.hpp"
#include "mtcheck/repo_mapper.hpp"

// Narrows the fork's commit history down to the commits that modified an
// obligating file: base commits that were merged in and reverted pairs drop
// out first, then a rename-aware walk matches changes against the mapped
// files.
namespace mtcheck {

struct ObligatingCommit {
  git::Commit commit;
  std::vector<ModificationTerm> terms; // deduped by license, first hit first
  RequiredNotice required;             // union over terms
  std::vector<std::string> touched;    // fork paths as named at that commit
};

// Fork authors, newest commit first, deduplicated by name and email. Drawn
// from the unfiltered history so reverted or merged work still names people.
std::vector<git::Author> collect_authors(const std::vector<git::Commit>& fork_commits);

// Removes fork commits that are base commits (identical ids), as happens with
// an explicit fork point older than a merged-in base range.
std::vector<git::Commit> filter_picked(const std::vector<git::Commit>& fork_commits,
                                       const std::vector<git::Commit>& base_commits);

// Subject a git-generated revert carries, e.g. Revert "add parser" yields
// add parser. Empty when the line is not a revert subject.
std::optional<std::string> reverted_subject(const std::string& first_line);

// Cancels revert pairs: each revert consumes the nearest older unconsumed
// commit whose subject it quotes. Unmatched reverts stay. A revert of a
// revert therefore restores the original commit.
std::vector<git::Commit> filter_reverted(const std::vector<git::Commit>& commits);

// Commits that touched an obligating file, newest first. changes_of yields a
// commit's changes against its first parent. When a commit renamed an
// obligating file, older commits are matched against the earlier name.
std::vector<ObligatingCommit> select_obligating(
    const std::vector<git::Commit>& commits,
    const std::function<std::vector<git::FileChange>(const git::Commit&)>& changes_of,
    const std::vector<ObligatingFile>& files);

} // namespace mtcheck
