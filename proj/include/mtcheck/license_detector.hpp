#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// License identification for individual files and whole projects: SPDX tags
// first, then per-license key-sentence templates, then the project license as
// a fallback. Detection never invents an id absent from the template/alias
// tables.
namespace mtcheck {

enum class DetectionMethod {
  SpdxTag,
  HeaderTemplate,
  ProjectFallback,
  Unknown,
};

std::string_view to_string(DetectionMethod m);

struct FileLicense {
  std::optional<std::string> license;
  DetectionMethod method = DetectionMethod::Unknown;
};

// Template and alias tables loaded from the shipped TSV files. Template order
// is match priority.
class LicenseTemplates {
 public:
  static LicenseTemplates load(std::string_view templates_tsv,
                               std::string_view aliases_tsv);
  static LicenseTemplates builtin();

  // Canonicalizes an id or known alias (case-insensitive); empty optional for
  // anything unknown.
  std::optional<std::string> normalize_id(std::string_view raw) const;

  // First license whose key sentence occurs in the normalized text.
  std::optional<std::string> match_text(const std::string& normalized) const;

  bool known(std::string_view id) const;

 private:
  std::vector<std::pair<std::string, std::string>> sentences_; // license, sentence
  std::vector<std::pair<std::string, std::string>> aliases_;   // alias, license
  std::vector<std::string> ids_;                               // priority order
};

// First contiguous comment region within the leading 100 lines, with comment
// markers stripped, lowercased, whitespace collapsed. Binary content yields "".
std::string extract_header_text(std::string_view content);

// Full-text normalization used for project license bodies.
std::string normalize_license_body(std::string_view content);

FileLicense detect_file_license(std::string_view content,
                                const std::optional<std::string>& project_license,
                                const LicenseTemplates& templates);

// Scans root-level license file candidates (basename, content) and returns the
// first body match in priority order.
std::optional<std::string> detect_project_license(
    const std::vector<std::pair<std::string, std::string>>& root_files,
    const LicenseTemplates& templates);

// True for basenames like LICENSE, COPYING, LICENCE with optional .md/.txt.
bool is_license_filename(std::string_view basename);

} // namespace mtcheck
