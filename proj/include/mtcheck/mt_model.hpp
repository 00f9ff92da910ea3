#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

// Obligation model for open-source license modification terms: what kinds of
// files a license covers (scope), what a modification notice must say
// (content), and where the notice may live (location).
namespace mtcheck {

enum class ScopeElement {
  SourceCode,                       // S_c1
  Documentation,                    // S_c2
  ConfigurationFiles,               // S_c3
  InterfaceDefinitionFiles,         // S_c4
  Scripts,                          // S_c5
  SourceCodeDifferentialComparison, // S_c6
  DesignMaterials,                  // S_c7
  Others,                           // S_c8
};

enum class ContentElement {
  Date,                 // C_c1
  Author,               // C_c2
  BriefStatement,       // C_c3
  InformativeStatement, // C_c4
};

enum class LocationMode {
  DocumentOnly, // L_g1
  PerFileOnly,  // L_g2
  Both,         // L_g3
  Either,       // L_g4
};

std::string_view to_string(ScopeElement e);  // "S_c1".."S_c8"
std::string_view to_string(ContentElement e); // "C_c1".."C_c4"
std::string_view to_string(LocationMode m);

std::optional<ScopeElement> scope_element_from_string(std::string_view);
std::optional<ContentElement> content_element_from_string(std::string_view);

struct ScopeGroup {
  std::string name; // "S_g1".."S_g8"
  std::set<ScopeElement> elements;
};

struct ContentGroup {
  std::string name; // "C_g1".."C_g6"
  std::set<ContentElement> elements;
};

struct LocationGroup {
  std::string name; // "L_g1".."L_g4"
  LocationMode mode;
};

// The fixed group tables. Lookup by name returns nullptr when unknown.
const std::vector<ScopeGroup>& scope_groups();
const std::vector<ContentGroup>& content_groups();
const std::vector<LocationGroup>& location_groups();
const ScopeGroup* find_scope_group(std::string_view name);
const ContentGroup* find_content_group(std::string_view name);
const LocationGroup* find_location_group(std::string_view name);

struct Obligation {
  ScopeGroup scope;
  ContentGroup content;
  LocationGroup location;
};

struct ModificationTerm {
  std::string license;
  Obligation obligation;
};

// Aggregate requirement of several terms (set union of content elements and
// location modes). Throws std::invalid_argument on empty input.
struct RequiredNotice {
  std::set<ContentElement> content;
  std::set<LocationMode> locations;
};
RequiredNotice union_required(const std::vector<ModificationTerm>& terms);

// Loaded from the TSV database (see data/mt_database.tsv). Validation rejects
// unknown group names, duplicate licenses, scope groups without SourceCode and
// content groups without a statement element.
class MtDatabase {
 public:
  static MtDatabase load(std::string_view tsv_text);
  static MtDatabase builtin();

  std::optional<ModificationTerm> lookup(std::string_view license) const;
  bool provisional(std::string_view license) const;
  const std::vector<ModificationTerm>& terms() const { return terms_; }
  const std::string& version() const { return version_; }

 private:
  std::vector<ModificationTerm> terms_;
  std::set<std::string> provisional_;
  std::string version_ = "unversioned";
};

// Path -> scope element classification table (extensions and exact basenames,
// both case-insensitive). Unmapped paths are Others.
class ExtensionMap {
 public:
  static ExtensionMap load(std::string_view tsv_text);
  static ExtensionMap builtin();

  ScopeElement classify(std::string_view path) const;
  std::size_t size() const { return by_extension_.size() + by_basename_.size(); }

 private:
  std::vector<std::pair<std::string, ScopeElement>> by_extension_;
  std::vector<std::pair<std::string, ScopeElement>> by_basename_;
};

bool in_scope(const ModificationTerm& term, ScopeElement element);
bool in_scope(const ModificationTerm& term, const ExtensionMap& map,
              std::string_view path);

} // namespace mtcheck
