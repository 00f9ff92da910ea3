#include "mtcheck/commit_analyzer.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "mtcheck/text.hpp"

namespace mtcheck {

std::vector<git::Author> collect_authors(const std::vector<git::Commit>& fork_commits) {
  std::vector<git::Author> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& c : fork_commits)
    if (seen.insert({c.author.name, c.author.email}).second)
      out.push_back(c.author);
  return out;
}

std::vector<git::Commit> filter_picked(const std::vector<git::Commit>& fork_commits,
                                       const std::vector<git::Commit>& base_commits) {
  std::unordered_set<std::string> base_ids;
  for (const auto& c : base_commits) base_ids.insert(c.id);
  std::vector<git::Commit> out;
  for (const auto& c : fork_commits)
    if (!base_ids.count(c.id)) out.push_back(c);
  return out;
}

std::optional<std::string> reverted_subject(const std::string& first_line) {
  if (!text::starts_with(first_line, "Revert \"")) return std::nullopt;
  std::size_t open = first_line.find('"');
  std::size_t close = first_line.rfind('"');
  if (close <= open + 1) return std::nullopt;
  return first_line.substr(open + 1, close - open - 1);
}

std::vector<git::Commit> filter_reverted(const std::vector<git::Commit>& commits) {
  std::vector<bool> consumed(commits.size(), false);
  for (std::size_t i = 0; i < commits.size(); ++i) {
    if (consumed[i]) continue;
    auto subject = reverted_subject(commits[i].first_line());
    if (!subject) continue;
    for (std::size_t j = i + 1; j < commits.size(); ++j) {
      if (consumed[j]) continue;
      if (commits[j].first_line() == *subject) {
        consumed[i] = true;
        consumed[j] = true;
        break;
      }
    }
  }
  std::vector<git::Commit> out;
  for (std::size_t i = 0; i < commits.size(); ++i)
    if (!consumed[i]) out.push_back(commits[i]);
  return out;
}

std::vector<ObligatingCommit> select_obligating(
    const std::vector<git::Commit>& commits,
    const std::function<std::vector<git::FileChange>(const git::Commit&)>& changes_of,
    const std::vector<ObligatingFile>& files) {
  struct WorkingFile {
    std::string fork_path; // name valid at and before the current walk point
    const ModificationTerm* term;
  };
  std::vector<WorkingFile> working;
  working.reserve(files.size());
  for (const auto& f : files) working.push_back({f.fork_path, &f.term});

  std::vector<ObligatingCommit> out;
  for (const auto& c : commits) {
    std::vector<git::FileChange> changes = changes_of(c);
    std::vector<ModificationTerm> terms;
    std::vector<std::string> touched;
    std::vector<WorkingFile> renamed_out;
    for (const auto& ch : changes) {
      for (const auto& wf : working) {
        if (wf.fork_path != ch.path) continue;
        if (std::none_of(terms.begin(), terms.end(),
                         [&](const ModificationTerm& t) {
                           return t.license == wf.term->license;
                         }))
          terms.push_back(*wf.term);
        if (std::find(touched.begin(), touched.end(), ch.path) == touched.end())
          touched.push_back(ch.path);
        if (ch.kind == git::ChangeKind::Renamed)
          renamed_out.push_back({*ch.old_path, wf.term});
      }
    }
    // Older commits knew the file by its pre-rename name.
    for (auto& wf : renamed_out) working.push_back(std::move(wf));
    if (terms.empty()) continue;
    ObligatingCommit oc;
    oc.commit = c;
    oc.required = union_required(terms);
    oc.terms = std::move(terms);
    oc.touched = std::move(touched);
    out.push_back(std::move(oc));
  }
  return out;
}

} // namespace mtcheck
