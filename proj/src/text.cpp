#include "mtcheck/text.hpp"

#include <cctype>

namespace mtcheck::text {

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }
bool is_space(unsigned char c) { return std::isspace(c) != 0; }

} // namespace

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? s.substr(start)
                                : s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  // A trailing newline does not produce a final empty line.
  if (!lines.empty() && lines.back().empty() && !s.empty() && s.back() == '\n')
    lines.pop_back();
  return lines;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : s) {
    if (is_alnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (is_space(c)) {
      if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      cur.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool contains_word(std::string_view s, std::string_view needle) {
  if (needle.empty()) return false;
  std::size_t pos = 0;
  while ((pos = s.find(needle, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || !is_alnum(static_cast<unsigned char>(s[pos - 1]));
    std::size_t end = pos + needle.size();
    bool right_ok = end == s.size() || !is_alnum(static_cast<unsigned char>(s[end]));
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

bool looks_binary(std::string_view content) {
  std::size_t window = content.size() < 8000 ? content.size() : 8000;
  return content.substr(0, window).find('\0') != std::string_view::npos;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

} // namespace mtcheck::text
