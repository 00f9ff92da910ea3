#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtcheck/date.hpp"
#include "mtcheck/git_history.hpp"

// Finds modification-notice files (changelogs and friends) and parses them
// into dated blocks of entries. A block covers the span from the previous
// release below it up to its own subtitle date.
namespace mtcheck {

struct NoticeFile {
  std::string path; // fork-relative
  std::string text;
};

enum class NoticeMode {
  Dated,   // subtitles are the lines carrying a date expression
  Heading, // no dates anywhere; markdown/underline headings split blocks
  Single,  // no subtitles at all; the whole file is one block
};

inline constexpr std::size_t kNoLine = static_cast<std::size_t>(-1);

struct ChangeLogBlock {
  std::string subtitle;                  // raw subtitle line, "" for Single
  std::size_t subtitle_line = kNoLine;   // 0-based index into the file
  std::optional<DateSpan> subtitle_date; // span within the subtitle line
  std::optional<Date> d_e;               // own subtitle date (upper bound)
  std::optional<Date> d_s;               // next older block's date (lower bound)
  std::vector<std::pair<std::size_t, std::string>> lines; // entry lines
};

struct ParsedNotice {
  NoticeMode mode = NoticeMode::Single;
  std::vector<ChangeLogBlock> blocks;
};

struct ChangeLogEntry {
  std::string msg;
  std::optional<Date> d_s;
  std::optional<Date> d_e;
  std::optional<git::Author> author;
  std::string source_path;
  std::size_t line_no = 0; // 0-based index into the source file
  std::size_t block_index = 0;
};

// True for CHANGELOG/CHANGES/NEWS/... basenames, optionally with a markup
// extension, anywhere in the tree. Case-insensitive.
bool is_notice_filename(std::string_view path);
std::vector<std::string> locate_notice_files(const std::vector<std::string>& paths);

// Splits file lines into blocks. Preamble above the first subtitle is
// dropped; an inverted lower bound (newer than the block's own date) is
// discarded.
ParsedNotice parse_blocks(const std::vector<std::string>& lines);

// Flattens the blocks into entries. The author is the first of `authors`
// whose name or email local-part appears as a case-sensitive whole word.
std::vector<ChangeLogEntry> extract_entries(const NoticeFile& file,
                                            const std::vector<git::Author>& authors);

// Notice files in the fork working tree (so freshly written fixes count).
std::vector<NoticeFile> collect_notice_files(const git::RepoRef& fork);

} // namespace mtcheck
