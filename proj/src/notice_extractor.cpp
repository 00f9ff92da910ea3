#include "mtcheck/notice_extractor.hpp"

#include <algorithm>

#include "mtcheck/builtin_data.hpp"
#include "mtcheck/text.hpp"

namespace mtcheck {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

const std::vector<std::string>& notice_basenames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& line : text::split_lines(data::notice_patterns())) {
      auto t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      out.push_back(text::to_lower(t));
    }
    return out;
  }();
  return names;
}

constexpr const char* kNoticeExtensions[] = {"", ".md", ".txt", ".rst", ".adoc"};

// A setext-style underline: two or more of the same '=' or '-' and nothing
// else on the line.
bool is_underline(std::string_view line) {
  auto t = trim(line);
  if (t.size() < 2) return false;
  char c = t.front();
  if (c != '=' && c != '-') return false;
  return std::all_of(t.begin(), t.end(), [c](char x) { return x == c; });
}

std::optional<git::Author> match_author(const std::string& line,
                                        const std::vector<git::Author>& authors) {
  for (const auto& a : authors) {
    if (!a.name.empty() && text::contains_word(line, a.name)) return a;
    std::string local = a.email.substr(0, a.email.find('@'));
    if (!local.empty() && text::contains_word(line, local)) return a;
  }
  return std::nullopt;
}

} // namespace

bool is_notice_filename(std::string_view path) {
  auto slash = path.rfind('/');
  std::string base = text::to_lower(
      slash == std::string_view::npos ? path : path.substr(slash + 1));
  for (const auto& name : notice_basenames())
    for (const char* ext : kNoticeExtensions)
      if (base == name + ext) return true;
  return false;
}

std::vector<std::string> locate_notice_files(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths)
    if (is_notice_filename(p)) out.push_back(p);
  return out;
}

ParsedNotice parse_blocks(const std::vector<std::string>& lines) {
  ParsedNotice out;

  std::vector<std::optional<DateSpan>> date_of(lines.size());
  bool any_date = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    date_of[i] = find_date(lines[i]);
    if (date_of[i]) any_date = true;
  }

  std::vector<std::size_t> subtitles;
  std::vector<bool> consumed(lines.size(), false);
  if (any_date) {
    out.mode = NoticeMode::Dated;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (date_of[i]) subtitles.push_back(i);
  } else {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto t = trim(lines[i]);
      if (t.empty() || is_underline(lines[i])) continue;
      if (t.front() == '#') {
        subtitles.push_back(i);
      } else if (i + 1 < lines.size() && is_underline(lines[i + 1])) {
        subtitles.push_back(i);
        consumed[i + 1] = true;
      }
    }
    out.mode = subtitles.empty() ? NoticeMode::Single : NoticeMode::Heading;
  }

  auto push_lines = [&](ChangeLogBlock& block, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (consumed[i] || trim(lines[i]).empty()) continue;
      block.lines.emplace_back(i, lines[i]);
    }
  };

  if (subtitles.empty()) {
    ChangeLogBlock block;
    push_lines(block, 0, lines.size());
    out.blocks.push_back(std::move(block));
    return out;
  }

  for (std::size_t k = 0; k < subtitles.size(); ++k) {
    std::size_t start = subtitles[k];
    std::size_t end = k + 1 < subtitles.size() ? subtitles[k + 1] : lines.size();
    ChangeLogBlock block;
    block.subtitle = lines[start];
    block.subtitle_line = start;
    if (out.mode == NoticeMode::Dated) {
      block.subtitle_date = date_of[start];
      block.d_e = date_of[start]->date;
    }
    push_lines(block, start + 1, end);
    out.blocks.push_back(std::move(block));
  }

  // A block spans from the previous (older, below) release up to its own
  // date; an inverted bound carries no information and is dropped.
  for (std::size_t k = 0; k + 1 < out.blocks.size(); ++k) {
    const auto& next = out.blocks[k + 1];
    auto& cur = out.blocks[k];
    if (!next.d_e) continue;
    if (cur.d_e && *next.d_e > *cur.d_e) continue;
    cur.d_s = next.d_e;
  }
  return out;
}

std::vector<ChangeLogEntry> extract_entries(const NoticeFile& file,
                                            const std::vector<git::Author>& authors) {
  auto lines = text::split_lines(file.text);
  ParsedNotice parsed = parse_blocks(lines);
  std::vector<ChangeLogEntry> out;
  for (std::size_t bi = 0; bi < parsed.blocks.size(); ++bi) {
    const auto& block = parsed.blocks[bi];
    for (const auto& [idx, raw] : block.lines) {
      ChangeLogEntry e;
      e.msg = raw;
      e.d_s = block.d_s;
      e.d_e = block.d_e;
      e.author = match_author(raw, authors);
      e.source_path = file.path;
      e.line_no = idx;
      e.block_index = bi;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<NoticeFile> collect_notice_files(const git::RepoRef& fork) {
  std::vector<NoticeFile> out;
  for (const auto& path : git::working_tree_files(fork)) {
    if (!is_notice_filename(path)) continue;
    auto content = git::working_tree_content(fork, path);
    if (!content) continue;
    out.push_back({path, std::move(*content)});
  }
  return out;
}

} // namespace mtcheck
