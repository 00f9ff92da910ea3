#include "mtcheck/git_history.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "mtcheck/subprocess.hpp"
#include "mtcheck/text.hpp"

namespace mtcheck::git {

namespace {

std::string rename_flag() {
  return "--find-renames=" + std::to_string(kRenameThresholdPercent) + "%";
}

proc::CommandResult run_git(const RepoRef& repo, std::vector<std::string> args,
                            const std::string& stdin_data = {},
                            std::vector<std::pair<std::string, std::string>> env = {}) {
  std::vector<std::string> argv{"git", "-C", repo.path.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  env.emplace_back("GIT_CONFIG_NOSYSTEM", "1");
  env.emplace_back("GIT_CONFIG_GLOBAL", "/dev/null");
  env.emplace_back("GIT_TERMINAL_PROMPT", "0");
  return proc::run(argv, stdin_data, env);
}

std::string run_git_ok(const RepoRef& repo, std::vector<std::string> args,
                       const char* what) {
  auto r = run_git(repo, std::move(args));
  if (r.exit_code != 0)
    throw GitError(std::string(what) + " failed in " + repo.path.string() +
                   ": " + text::collapse_ws(r.err));
  return std::move(r.out);
}

// Splits "Name <email> ts tz" from a raw commit header line.
void parse_ident(std::string_view line, Author& author, std::int64_t& ts) {
  auto lt = line.rfind('<');
  auto gt = line.rfind('>');
  if (lt == std::string_view::npos || gt == std::string_view::npos || gt < lt)
    throw GitError("malformed ident line: " + std::string(line));
  author.name = std::string(text::collapse_ws(line.substr(0, lt)));
  author.email = std::string(line.substr(lt + 1, gt - lt - 1));
  std::string_view tail = line.substr(gt + 1);
  while (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
  auto sp = tail.find(' ');
  std::string_view ts_str = sp == std::string_view::npos ? tail : tail.substr(0, sp);
  ts = 0;
  std::from_chars(ts_str.data(), ts_str.data() + ts_str.size(), ts);
}

// Parses one raw commit object (cat-file --batch payload).
Commit parse_commit_object(const std::string& id, std::string_view raw) {
  Commit c;
  c.id = id;
  std::size_t pos = 0;
  bool in_headers = true;
  while (in_headers && pos < raw.size()) {
    std::size_t nl = raw.find('\n', pos);
    if (nl == std::string_view::npos) nl = raw.size();
    std::string_view line = raw.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) {
      in_headers = false;
    } else if (text::starts_with(line, "parent ")) {
      c.parents.emplace_back(line.substr(7));
    } else if (text::starts_with(line, "author ")) {
      std::int64_t ts = 0;
      parse_ident(line.substr(7), c.author, ts);
    } else if (text::starts_with(line, "committer ")) {
      Author committer;
      std::int64_t ts = 0;
      parse_ident(line.substr(10), committer, ts);
      c.date = date_from_unix(ts);
    }
    // Multi-line headers (gpgsig) continue with a leading space and are
    // skipped by the prefix checks above.
  }
  if (pos <= raw.size()) c.message = std::string(raw.substr(pos));
  return c;
}

std::vector<std::string> rev_list(const RepoRef& repo,
                                  const std::vector<std::string>& range_args) {
  std::vector<std::string> args{"rev-list"};
  args.insert(args.end(), range_args.begin(), range_args.end());
  auto out = run_git_ok(repo, args, "rev-list");
  std::vector<std::string> ids;
  for (auto& line : text::split_lines(out))
    if (!line.empty()) ids.push_back(line);
  return ids;
}

// Reads commit metadata for the given ids in one cat-file pass.
std::vector<Commit> read_commits(const RepoRef& repo,
                                 const std::vector<std::string>& ids) {
  if (ids.empty()) return {};
  std::string input;
  for (const auto& id : ids) {
    input += id;
    input += '\n';
  }
  auto r = run_git(repo, {"cat-file", "--batch"}, input);
  if (r.exit_code != 0)
    throw GitError("cat-file --batch failed: " + text::collapse_ws(r.err));

  std::vector<Commit> commits;
  commits.reserve(ids.size());
  std::size_t pos = 0;
  const std::string& out = r.out;
  while (pos < out.size()) {
    std::size_t nl = out.find('\n', pos);
    if (nl == std::string::npos) break;
    std::string header = out.substr(pos, nl - pos);
    pos = nl + 1;
    auto sp1 = header.find(' ');
    auto sp2 = header.find(' ', sp1 + 1);
    if (sp1 == std::string::npos) throw GitError("cat-file: bad header " + header);
    std::string id = header.substr(0, sp1);
    std::string kind = sp2 == std::string::npos ? header.substr(sp1 + 1)
                                               : header.substr(sp1 + 1, sp2 - sp1 - 1);
    if (kind == "missing")
      throw GitError("cat-file: missing object " + id);
    std::size_t size = 0;
    std::from_chars(header.data() + sp2 + 1, header.data() + header.size(), size);
    if (pos + size > out.size()) throw GitError("cat-file: truncated payload");
    if (kind != "commit")
      throw GitError("cat-file: expected commit, got " + kind + " for " + id);
    commits.push_back(parse_commit_object(id, std::string_view(out).substr(pos, size)));
    pos += size + 1; // payload then separator newline
  }
  if (commits.size() != ids.size())
    throw GitError("cat-file: short read");
  return commits;
}

ChangeKind kind_from_status(char status) {
  switch (status) {
    case 'A': return ChangeKind::Added;
    case 'D': return ChangeKind::Deleted;
    case 'R': return ChangeKind::Renamed;
    case 'C': return ChangeKind::Added; // copies appear as new files
    default: return ChangeKind::Modified; // M, T and friends
  }
}

// Parses NUL-separated name-status records ("M\0path\0", "R090\0old\0new\0")
// from `data`, advancing `pos` until `end`.
std::vector<FileChange> parse_name_status(const std::string& data,
                                          std::size_t pos, std::size_t end) {
  std::vector<FileChange> changes;
  while (pos < end) {
    std::size_t nul = data.find('\0', pos);
    if (nul == std::string::npos || nul > end) break;
    std::string status = data.substr(pos, nul - pos);
    pos = nul + 1;
    // Skip stray newlines between records.
    while (!status.empty() && (status.front() == '\n' || status.front() == '\r'))
      status.erase(status.begin());
    if (status.empty()) continue;

    std::size_t nul2 = data.find('\0', pos);
    if (nul2 == std::string::npos || nul2 > end) break;
    std::string path1 = data.substr(pos, nul2 - pos);
    pos = nul2 + 1;

    char code = status[0];
    if (code == 'R' || code == 'C') {
      std::size_t nul3 = data.find('\0', pos);
      if (nul3 == std::string::npos || nul3 > end) break;
      std::string path2 = data.substr(pos, nul3 - pos);
      pos = nul3 + 1;
      if (code == 'R')
        changes.push_back({ChangeKind::Renamed, path2, path1});
      else
        changes.push_back({ChangeKind::Added, path2, std::nullopt});
    } else {
      changes.push_back({kind_from_status(code), path1, std::nullopt});
    }
  }
  return changes;
}

std::filesystem::path objects_dir(const RepoRef& repo) {
  auto out = run_git_ok(repo, {"rev-parse", "--absolute-git-dir"}, "rev-parse");
  auto lines = text::split_lines(out);
  if (lines.empty()) throw GitError("rev-parse --absolute-git-dir: no output");
  return std::filesystem::path(lines[0]) / "objects";
}

} // namespace

std::string Commit::first_line() const {
  auto nl = message.find('\n');
  std::string line = nl == std::string::npos ? message : message.substr(0, nl);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string resolve_revision(const RepoRef& repo, const std::string& rev) {
  auto out = run_git_ok(repo, {"rev-parse", "--verify", rev + "^{commit}"},
                        "rev-parse");
  auto lines = text::split_lines(out);
  if (lines.empty()) throw GitError("rev-parse: no output for " + rev);
  return lines[0];
}

std::string resolve_fork_point(const RepoRef& base, const RepoRef& fork,
                               const std::optional<std::string>& override_rev) {
  if (override_rev) return resolve_revision(base, *override_rev);

  std::string base_head = resolve_revision(base, "HEAD");
  std::string fork_head = resolve_revision(fork, "HEAD");

  // merge-base runs in the fork with the base object store attached as an
  // alternate, so commits that exist only in the base repository resolve.
  auto r = run_git(fork, {"merge-base", fork_head, base_head}, {},
                   {{"GIT_ALTERNATE_OBJECT_DIRECTORIES",
                     objects_dir(base).string()}});
  if (r.exit_code != 0)
    throw GitError("no common ancestor between base and fork: " +
                   text::collapse_ws(r.err));
  auto lines = text::split_lines(r.out);
  if (lines.empty()) throw GitError("merge-base: no output");
  return lines[0];
}

CommitHistory commits_between(const RepoRef& repo, const std::string& from,
                              const std::string& to) {
  CommitHistory history;
  history.role = repo.role;
  auto ids = rev_list(repo, {to, "^" + from});
  history.commits = read_commits(repo, ids);
  return history;
}

std::vector<FileChange> changed_files(const RepoRef& repo, const std::string& id) {
  // First parent when there is one; --root covers initial commits. For merge
  // commits the explicit parent pair yields the first-parent diff.
  auto parent = run_git(repo, {"rev-parse", "--verify", "--quiet", id + "^1"});
  std::vector<std::string> args{"diff-tree", "-r", "--name-status", "-z",
                                rename_flag(), "--no-commit-id"};
  if (parent.exit_code == 0) {
    auto lines = text::split_lines(parent.out);
    args.push_back(lines.at(0));
    args.push_back(id);
  } else {
    args.push_back("--root");
    args.push_back(id);
  }
  auto out = run_git_ok(repo, args, "diff-tree");
  return parse_name_status(out, 0, out.size());
}

std::vector<FileChange> changed_files(const RepoRef& repo, const Commit& commit) {
  return changed_files(repo, commit.id);
}

std::optional<std::string> file_content(const RepoRef& repo,
                                        const std::string& rev,
                                        const std::string& path) {
  auto r = run_git(repo, {"show", rev + ":" + path});
  if (r.exit_code != 0) return std::nullopt;
  return std::move(r.out);
}

bool created_by(const RepoRef& repo, const std::string& upto,
                const std::string& path) {
  // --follow tracks the add through renames; any hit means the path (or its
  // ancestor) originated in this history.
  auto r = run_git(repo, {"log", "--follow", rename_flag(), "--diff-filter=A",
                          "--format=%H", "-n1", upto, "--", path});
  if (r.exit_code != 0) return false;
  for (const auto& line : text::split_lines(r.out))
    if (!line.empty()) return true;
  return false;
}

std::vector<std::string> list_files(const RepoRef& repo, const std::string& rev) {
  auto out = run_git_ok(repo, {"ls-tree", "-r", "--name-only", "-z", rev},
                        "ls-tree");
  std::vector<std::string> files;
  std::size_t pos = 0;
  while (pos < out.size()) {
    std::size_t nul = out.find('\0', pos);
    if (nul == std::string::npos) break;
    if (nul > pos) files.push_back(out.substr(pos, nul - pos));
    pos = nul + 1;
  }
  return files;
}

std::map<std::string, std::vector<FileChange>> changed_files_between(
    const RepoRef& repo, const std::string& from, const std::string& to) {
  // One pass for all commits in range. The \x01<sha>\0 header keeps parsing
  // unambiguous: %H expands to plain hex and the format string contains no
  // user-controlled bytes.
  auto out = run_git_ok(
      repo,
      {"log", "--format=%x01%H", "--name-status", "-z", rename_flag(),
       "--diff-merges=first-parent", to, "^" + from},
      "log --name-status");

  std::map<std::string, std::vector<FileChange>> result;
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (out[pos] != '\x01') {
      ++pos;
      continue;
    }
    std::size_t id_end = out.find('\0', pos + 1);
    if (id_end == std::string::npos) break;
    std::string id = out.substr(pos + 1, id_end - pos - 1);
    while (!id.empty() && (id.back() == '\n' || id.back() == '\r')) id.pop_back();
    std::size_t body_start = id_end + 1;
    std::size_t next = out.find('\x01', body_start);
    if (next == std::string::npos) next = out.size();
    result[id] = parse_name_status(out, body_start, next);
    pos = next;
  }
  return result;
}

std::vector<std::optional<std::string>> contents_batch(
    const RepoRef& repo, const std::string& rev,
    const std::vector<std::string>& paths) {
  std::vector<std::optional<std::string>> results(paths.size());
  if (paths.empty()) return results;

  std::string input;
  for (const auto& p : paths) {
    input += rev + ":" + p;
    input += '\n';
  }
  auto r = run_git(repo, {"cat-file", "--batch"}, input);
  if (r.exit_code != 0)
    throw GitError("cat-file --batch failed: " + text::collapse_ws(r.err));

  const std::string& out = r.out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::size_t nl = out.find('\n', pos);
    if (nl == std::string::npos) throw GitError("cat-file: truncated output");
    std::string header = out.substr(pos, nl - pos);
    pos = nl + 1;
    if (header.size() >= 7 && header.substr(header.size() - 7) == "missing")
      continue;
    auto sp2 = header.rfind(' ');
    std::size_t size = 0;
    std::from_chars(header.data() + sp2 + 1, header.data() + header.size(), size);
    if (pos + size > out.size()) throw GitError("cat-file: truncated payload");
    results[i] = out.substr(pos, size);
    pos += size + 1;
  }
  return results;
}

std::set<std::string> added_paths(const RepoRef& repo, const std::string& upto) {
  // Rename-created names count as added here (a plain rename shows as D+A
  // without rename detection), which matches created_by semantics for files
  // that exist in the queried snapshot.
  auto out = run_git_ok(repo,
                        {"log", "--format=", "--name-status", "-z",
                         "--diff-merges=first-parent", upto},
                        "log --diff-filter");
  std::set<std::string> added;
  for (const auto& change : parse_name_status(out, 0, out.size())) {
    if (change.kind == ChangeKind::Added || change.kind == ChangeKind::Renamed)
      added.insert(change.path);
  }
  return added;
}

std::vector<std::string> working_tree_files(const RepoRef& repo) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  fs::path root = repo.path;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw GitError("cannot walk " + root.string() + ": " + ec.message());
  for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
    if (ec) break;
    if (it->is_directory() && it->path().filename() == ".git") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file())
      files.push_back(fs::relative(it->path(), root).generic_string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::optional<std::string> working_tree_content(const RepoRef& repo,
                                                const std::string& path) {
  std::ifstream in(repo.path / path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

} // namespace mtcheck::git
