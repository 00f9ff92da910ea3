#include "mtcheck/license_detector.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtcheck/builtin_data.hpp"
#include "mtcheck/text.hpp"

namespace mtcheck {

namespace {

constexpr std::size_t kHeaderLineLimit = 100;

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Line-comment markers, longest first so "//" beats no marker and ";;" beats
// ";". A marker only counts at the start of a trimmed line.
constexpr std::string_view kLineMarkers[] = {"//", "#", ";;", ";", "--"};

std::optional<std::string_view> strip_line_marker(std::string_view line,
                                                  std::string_view marker) {
  line = trim_view(line);
  if (!text::starts_with(line, marker)) return std::nullopt;
  return trim_view(line.substr(marker.size()));
}

// Strips a decorative "*" continuation inside block comments.
std::string_view strip_block_decoration(std::string_view line) {
  line = trim_view(line);
  if (text::starts_with(line, "*")) line = trim_view(line.substr(1));
  return line;
}

std::vector<std::string> tsv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

} // namespace

std::string_view to_string(DetectionMethod m) {
  switch (m) {
    case DetectionMethod::SpdxTag: return "SpdxTag";
    case DetectionMethod::HeaderTemplate: return "HeaderTemplate";
    case DetectionMethod::ProjectFallback: return "ProjectFallback";
    case DetectionMethod::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string extract_header_text(std::string_view content) {
  if (text::looks_binary(content)) return "";

  auto lines = text::split_lines(content);
  if (lines.size() > kHeaderLineLimit) lines.resize(kHeaderLineLimit);

  std::size_t i = 0;
  // Skip leading blank lines and a shebang.
  while (i < lines.size() && trim_view(lines[i]).empty()) ++i;
  if (i < lines.size() && text::starts_with(trim_view(lines[i]), "#!")) ++i;
  if (i >= lines.size()) return "";

  std::string_view first = trim_view(lines[i]);
  std::string collected;
  auto append = [&collected](std::string_view piece) {
    if (piece.empty()) return;
    if (!collected.empty()) collected.push_back(' ');
    collected.append(piece);
  };

  // Block comments: /* ... */ and <!-- ... -->.
  struct BlockStyle {
    std::string_view open, close;
  };
  for (BlockStyle style : {BlockStyle{"/*", "*/"}, BlockStyle{"<!--", "-->"}}) {
    if (!text::starts_with(first, style.open)) continue;
    std::string_view rest = first.substr(style.open.size());
    bool closed = false;
    for (std::size_t j = i; j < lines.size() && !closed; ++j) {
      std::string_view piece = j == i ? rest : std::string_view(lines[j]);
      if (auto end = piece.find(style.close); end != std::string_view::npos) {
        piece = piece.substr(0, end);
        closed = true;
      }
      append(strip_block_decoration(piece));
    }
    return text::collapse_ws(text::to_lower(collected));
  }

  // Line comments: consume the contiguous run with the same marker.
  for (std::string_view marker : kLineMarkers) {
    if (!text::starts_with(first, marker)) continue;
    for (std::size_t j = i; j < lines.size(); ++j) {
      auto stripped = strip_line_marker(lines[j], marker);
      if (!stripped) break;
      append(*stripped);
    }
    return text::collapse_ws(text::to_lower(collected));
  }

  return "";
}

std::string normalize_license_body(std::string_view content) {
  if (text::looks_binary(content)) return "";
  return text::collapse_ws(text::to_lower(content));
}

LicenseTemplates LicenseTemplates::load(std::string_view templates_tsv,
                                        std::string_view aliases_tsv) {
  LicenseTemplates t;
  for (const auto& line : text::split_lines(templates_tsv)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 2)
      throw std::runtime_error("license templates: bad record: " + line);
    t.sentences_.emplace_back(fields[0], text::collapse_ws(text::to_lower(fields[1])));
    if (std::find(t.ids_.begin(), t.ids_.end(), fields[0]) == t.ids_.end())
      t.ids_.push_back(fields[0]);
  }
  for (const auto& line : text::split_lines(aliases_tsv)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 2)
      throw std::runtime_error("license aliases: bad record: " + line);
    t.aliases_.emplace_back(text::collapse_ws(text::to_lower(fields[0])), fields[1]);
  }
  return t;
}

LicenseTemplates LicenseTemplates::builtin() {
  return load(data::license_templates(), data::license_aliases());
}

std::optional<std::string> LicenseTemplates::normalize_id(std::string_view raw) const {
  std::string key = text::collapse_ws(text::to_lower(raw));
  if (key.empty()) return std::nullopt;
  for (const auto& id : ids_)
    if (text::to_lower(id) == key) return id;
  for (const auto& [alias, id] : aliases_)
    if (alias == key) return id;
  return std::nullopt;
}

std::optional<std::string> LicenseTemplates::match_text(
    const std::string& normalized) const {
  if (normalized.empty()) return std::nullopt;
  for (const auto& [id, sentence] : sentences_)
    if (normalized.find(sentence) != std::string::npos) return id;
  return std::nullopt;
}

bool LicenseTemplates::known(std::string_view id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

namespace {

// Pulls the license expression after "spdx-license-identifier:" out of a
// normalized header and resolves the first recognized id in it.
std::optional<std::string> spdx_license(const std::string& header,
                                        const LicenseTemplates& templates) {
  static constexpr std::string_view kTag = "spdx-license-identifier:";
  auto pos = header.find(kTag);
  if (pos == std::string::npos) return std::nullopt;
  std::string rest = header.substr(pos + kTag.size());
  // The expression runs to the end of the collapsed header; ids are separated
  // by spaces, parentheses and operators.
  std::string token;
  std::vector<std::string> tokens;
  for (char c : rest) {
    if (c == ' ' || c == '(' || c == ')') {
      if (!token.empty()) tokens.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) tokens.push_back(std::move(token));
  for (const auto& tok : tokens) {
    if (tok == "or" || tok == "and" || tok == "with") continue;
    if (auto id = templates.normalize_id(tok)) return id;
  }
  return std::nullopt;
}

} // namespace

FileLicense detect_file_license(std::string_view content,
                                const std::optional<std::string>& project_license,
                                const LicenseTemplates& templates) {
  std::string header = extract_header_text(content);

  if (auto id = spdx_license(header, templates))
    return {id, DetectionMethod::SpdxTag};

  if (auto id = templates.match_text(header))
    return {id, DetectionMethod::HeaderTemplate};

  if (project_license)
    return {project_license, DetectionMethod::ProjectFallback};

  return {std::nullopt, DetectionMethod::Unknown};
}

bool is_license_filename(std::string_view basename) {
  std::string b = text::to_lower(basename);
  for (std::string_view stem : {"license", "licence", "copying"}) {
    if (b == stem) return true;
    for (std::string_view ext : {".md", ".txt"})
      if (b == std::string(stem) + std::string(ext)) return true;
  }
  return false;
}

std::optional<std::string> detect_project_license(
    const std::vector<std::pair<std::string, std::string>>& root_files,
    const LicenseTemplates& templates) {
  for (const auto& [name, content] : root_files) {
    if (!is_license_filename(name)) continue;
    if (auto id = templates.match_text(normalize_license_body(content)))
      return id;
  }
  return std::nullopt;
}

} // namespace mtcheck
