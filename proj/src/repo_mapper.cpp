#include "mtcheck/repo_mapper.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "mtcheck/text.hpp"

namespace mtcheck {

namespace {

constexpr std::size_t kShingleWidth = 5;

// Set of 5-word shingles; shorter content collapses to one whole-sequence
// shingle. Words are joined with a separator no token can contain.
std::set<std::string> shingles(std::string_view content) {
  std::vector<std::string> toks = text::words(content);
  std::set<std::string> out;
  if (toks.empty()) return out;
  std::size_t n = std::min(toks.size(), kShingleWidth);
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string join;
    for (std::size_t j = i; j < i + n; ++j) {
      join += toks[j];
      join += '\x1f';
    }
    out.insert(std::move(join));
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace

std::string_view to_string(MappingStage s) {
  switch (s) {
    case MappingStage::SamePath: return "same-path";
    case MappingStage::Rename: return "rename";
    case MappingStage::Clone: return "clone";
  }
  return "same-path";
}

double clone_similarity(std::string_view a, std::string_view b) {
  return jaccard(shingles(a), shingles(b));
}

std::vector<FileMapping> map_same_path(
    const std::vector<std::string>& fork_files,
    const std::vector<std::string>& b1_files, const std::string& b1_rev,
    const std::vector<std::string>& b2_files, const std::string& b2_rev,
    const std::set<std::string>& fork_created) {
  std::set<std::string> b1(b1_files.begin(), b1_files.end());
  std::set<std::string> b2(b2_files.begin(), b2_files.end());
  std::vector<FileMapping> out;
  for (const auto& path : fork_files) {
    if (fork_created.count(path)) continue;
    FileMapping m;
    m.base_path = path;
    m.fork_path = path;
    m.stage = MappingStage::SamePath;
    if (b1.count(path))
      m.base_rev = b1_rev;
    else if (b2.count(path))
      m.base_rev = b2_rev;
    else
      continue;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<FileMapping> map_renames(
    const std::vector<std::string>& unmapped_fork_files,
    const std::vector<std::vector<git::FileChange>>& fork_changes,
    const std::vector<std::string>& b1_files, const std::string& b1_rev,
    const std::vector<std::string>& b2_files, const std::string& b2_rev,
    const std::set<std::string>& fork_created) {
  std::set<std::string> b1(b1_files.begin(), b1_files.end());
  std::set<std::string> b2(b2_files.begin(), b2_files.end());
  std::vector<FileMapping> out;
  for (const auto& path : unmapped_fork_files) {
    std::string name = path;
    for (const auto& commit_changes : fork_changes) {
      for (const auto& ch : commit_changes) {
        if (ch.kind == git::ChangeKind::Renamed && ch.path == name) {
          name = *ch.old_path;
          break;
        }
      }
    }
    if (name == path) continue;
    if (fork_created.count(name)) continue;
    FileMapping m;
    m.base_path = name;
    m.fork_path = path;
    m.stage = MappingStage::Rename;
    if (b1.count(name))
      m.base_rev = b1_rev;
    else if (b2.count(name))
      m.base_rev = b2_rev;
    else
      continue;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<FileMapping> map_clones(
    const std::vector<std::pair<std::string, const std::string*>>& unmapped_fork_files,
    const std::vector<CloneCandidate>& base_candidates,
    const ExtensionMap& extmap, const MappingConfig& config) {
  struct Prepared {
    const CloneCandidate* cand;
    ScopeElement element;
    std::set<std::string> grams;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(base_candidates.size());
  for (const auto& cand : base_candidates) {
    if (cand.content == nullptr || text::looks_binary(*cand.content)) continue;
    prepared.push_back({&cand, extmap.classify(cand.path), shingles(*cand.content)});
  }

  std::vector<FileMapping> out;
  for (const auto& [path, content] : unmapped_fork_files) {
    if (content == nullptr || text::looks_binary(*content)) continue;
    ScopeElement element = extmap.classify(path);
    std::set<std::string> grams = shingles(*content);
    const CloneCandidate* best = nullptr;
    double best_score = -1.0;
    for (const auto& p : prepared) {
      if (p.element != element) continue;
      double score = jaccard(grams, p.grams);
      bool better = score > best_score ||
                    (score == best_score && best != nullptr &&
                     p.cand->path < best->path);
      if (better) {
        best = p.cand;
        best_score = score;
      }
    }
    if (best == nullptr || best_score < config.clone_threshold) continue;
    FileMapping m;
    m.base_path = best->path;
    m.fork_path = path;
    m.stage = MappingStage::Clone;
    m.similarity = best_score;
    m.base_rev = best->rev;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<FileMapping> map_repositories(const git::RepoRef& base,
                                          const git::RepoRef& fork,
                                          const std::string& b1,
                                          const std::string& b2,
                                          const std::string& f,
                                          const ExtensionMap& extmap,
                                          const MappingConfig& config) {
  std::vector<std::string> b1_files = git::list_files(base, b1);
  std::vector<std::string> b2_files = git::list_files(base, b2);
  std::vector<std::string> f_files = git::list_files(fork, f);

  git::CommitHistory hf = git::commits_between(fork, b1, f);
  std::map<std::string, std::vector<git::FileChange>> by_commit =
      git::changed_files_between(fork, b1, f);
  std::set<std::string> base_ids;
  if (b1 != b2)
    for (const auto& c : git::commits_between(base, b1, b2).commits)
      base_ids.insert(c.id);

  // Paths added by the fork's own non-merge commits. Base commits merged into
  // the fork and merge commits themselves (whose first-parent diff shows the
  // merged-in files as additions) contribute inherited files, not creations.
  std::set<std::string> fork_created;
  std::vector<std::vector<git::FileChange>> ordered_changes;
  ordered_changes.reserve(hf.commits.size());
  for (const auto& c : hf.commits) {
    auto it = by_commit.find(c.id);
    if (it == by_commit.end()) {
      ordered_changes.emplace_back();
      continue;
    }
    if (!base_ids.count(c.id) && !c.is_merge())
      for (const auto& ch : it->second)
        if (ch.kind == git::ChangeKind::Added) fork_created.insert(ch.path);
    ordered_changes.push_back(it->second);
  }

  std::vector<FileMapping> all =
      map_same_path(f_files, b1_files, b1, b2_files, b2, fork_created);
  std::unordered_set<std::string> mapped;
  for (const auto& m : all) mapped.insert(m.fork_path);

  std::vector<std::string> unmapped;
  for (const auto& p : f_files)
    if (!mapped.count(p)) unmapped.push_back(p);
  for (auto& m : map_renames(unmapped, ordered_changes, b1_files, b1, b2_files,
                             b2, fork_created)) {
    mapped.insert(m.fork_path);
    all.push_back(std::move(m));
  }

  std::vector<std::string> remaining;
  for (const auto& p : f_files)
    if (!mapped.count(p)) remaining.push_back(p);

  std::vector<std::optional<std::string>> fork_blobs =
      git::contents_batch(fork, f, remaining);
  std::vector<std::pair<std::string, const std::string*>> fork_inputs;
  for (std::size_t i = 0; i < remaining.size(); ++i)
    if (fork_blobs[i])
      fork_inputs.emplace_back(remaining[i], &*fork_blobs[i]);

  std::set<std::string> b1_set(b1_files.begin(), b1_files.end());
  std::vector<std::string> b2_only;
  for (const auto& p : b2_files)
    if (!b1_set.count(p)) b2_only.push_back(p);
  std::vector<std::optional<std::string>> b1_blobs =
      git::contents_batch(base, b1, b1_files);
  std::vector<std::optional<std::string>> b2_blobs =
      git::contents_batch(base, b2, b2_only);
  std::vector<CloneCandidate> candidates;
  for (std::size_t i = 0; i < b1_files.size(); ++i)
    if (b1_blobs[i]) candidates.push_back({b1_files[i], b1, &*b1_blobs[i]});
  for (std::size_t i = 0; i < b2_only.size(); ++i)
    if (b2_blobs[i]) candidates.push_back({b2_only[i], b2, &*b2_blobs[i]});

  for (auto& m : map_clones(fork_inputs, candidates, extmap, config))
    all.push_back(std::move(m));

  std::sort(all.begin(), all.end(),
            [](const FileMapping& a, const FileMapping& b) {
              return a.fork_path < b.fork_path;
            });
  return all;
}

std::vector<ObligatingFile> select_obligating_files(
    const std::vector<FileMapping>& mappings,
    const std::function<std::optional<std::string>(const std::string&,
                                                   const std::string&)>& content_of,
    const std::optional<std::string>& project_license,
    const LicenseTemplates& templates, const MtDatabase& db,
    const ExtensionMap& extmap) {
  std::vector<ObligatingFile> out;
  for (const auto& m : mappings) {
    std::optional<std::string> content = content_of(m.base_rev, m.base_path);
    if (!content) continue;
    FileLicense fl = detect_file_license(*content, project_license, templates);
    if (!fl.license) continue;
    std::optional<ModificationTerm> term = db.lookup(*fl.license);
    if (!term) continue;
    if (!in_scope(*term, extmap, m.base_path)) continue;
    out.push_back({m.base_path, m.fork_path, std::move(*term)});
  }
  return out;
}

std::optional<std::string> project_license_of(const git::RepoRef& base,
                                              const std::string& b1,
                                              const std::string& b2,
                                              const LicenseTemplates& templates) {
  auto try_rev = [&](const std::string& rev) -> std::optional<std::string> {
    std::vector<std::string> names;
    for (const auto& p : git::list_files(base, rev))
      if (p.find('/') == std::string::npos && is_license_filename(p))
        names.push_back(p);
    if (names.empty()) return std::nullopt;
    std::vector<std::optional<std::string>> blobs =
        git::contents_batch(base, rev, names);
    std::vector<std::pair<std::string, std::string>> files;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (blobs[i]) files.emplace_back(names[i], std::move(*blobs[i]));
    return detect_project_license(files, templates);
  };
  if (auto lic = try_rev(b1)) return lic;
  if (b2 != b1)
    if (auto lic = try_rev(b2)) return lic;
  return std::nullopt;
}

} // namespace mtcheck
