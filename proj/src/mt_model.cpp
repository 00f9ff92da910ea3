#include "mtcheck/mt_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtcheck/builtin_data.hpp"
#include "mtcheck/text.hpp"

namespace mtcheck {

namespace {

std::set<ScopeElement> sc(std::initializer_list<ScopeElement> es) { return es; }

using SE = ScopeElement;
using CE = ContentElement;

std::vector<ScopeGroup> make_scope_groups() {
  return {
      {"S_g1", sc({SE::SourceCode, SE::Documentation})},
      {"S_g2", sc({SE::SourceCode, SE::DesignMaterials})},
      {"S_g3", sc({SE::SourceCode, SE::Documentation, SE::ConfigurationFiles})},
      {"S_g4", sc({SE::SourceCode, SE::InterfaceDefinitionFiles, SE::Scripts})},
      {"S_g5", sc({SE::SourceCode, SE::InterfaceDefinitionFiles, SE::Scripts,
                   SE::SourceCodeDifferentialComparison})},
      {"S_g6", sc({SE::SourceCode, SE::Documentation, SE::InterfaceDefinitionFiles,
                   SE::Scripts})},
      {"S_g7", sc({SE::SourceCode, SE::Documentation, SE::InterfaceDefinitionFiles,
                   SE::Scripts, SE::SourceCodeDifferentialComparison})},
      {"S_g8", sc({SE::SourceCode, SE::Documentation, SE::ConfigurationFiles,
                   SE::InterfaceDefinitionFiles, SE::Scripts,
                   SE::SourceCodeDifferentialComparison, SE::DesignMaterials,
                   SE::Others})},
  };
}

std::vector<ContentGroup> make_content_groups() {
  return {
      {"C_g1", {CE::Date, CE::BriefStatement}},
      {"C_g2", {CE::Author, CE::BriefStatement}},
      {"C_g3", {CE::BriefStatement}},
      {"C_g4", {CE::InformativeStatement}},
      {"C_g5", {CE::Date, CE::InformativeStatement}},
      {"C_g6", {CE::Date, CE::Author, CE::InformativeStatement}},
  };
}

std::vector<LocationGroup> make_location_groups() {
  return {
      {"L_g1", LocationMode::DocumentOnly},
      {"L_g2", LocationMode::PerFileOnly},
      {"L_g3", LocationMode::Both},
      {"L_g4", LocationMode::Either},
  };
}

// Splits a data line on tabs; trims nothing (keys never carry spaces at the
// edges in the shipped files).
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

bool data_line(const std::string& line) {
  return !line.empty() && line[0] != '#';
}

std::string version_of(const std::string& line) {
  // "# version: N" anywhere in the comment header.
  auto pos = line.find("version:");
  if (line.empty() || line[0] != '#' || pos == std::string::npos) return {};
  return text::collapse_ws(line.substr(pos + 8));
}

} // namespace

std::string_view to_string(ScopeElement e) {
  static constexpr std::string_view names[] = {"S_c1", "S_c2", "S_c3", "S_c4",
                                               "S_c5", "S_c6", "S_c7", "S_c8"};
  return names[static_cast<int>(e)];
}

std::string_view to_string(ContentElement e) {
  static constexpr std::string_view names[] = {"C_c1", "C_c2", "C_c3", "C_c4"};
  return names[static_cast<int>(e)];
}

std::string_view to_string(LocationMode m) {
  static constexpr std::string_view names[] = {"DocumentOnly", "PerFileOnly",
                                               "Both", "Either"};
  return names[static_cast<int>(m)];
}

std::optional<ScopeElement> scope_element_from_string(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (s == to_string(static_cast<ScopeElement>(i)))
      return static_cast<ScopeElement>(i);
  return std::nullopt;
}

std::optional<ContentElement> content_element_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (s == to_string(static_cast<ContentElement>(i)))
      return static_cast<ContentElement>(i);
  return std::nullopt;
}

const std::vector<ScopeGroup>& scope_groups() {
  static const std::vector<ScopeGroup> groups = make_scope_groups();
  return groups;
}

const std::vector<ContentGroup>& content_groups() {
  static const std::vector<ContentGroup> groups = make_content_groups();
  return groups;
}

const std::vector<LocationGroup>& location_groups() {
  static const std::vector<LocationGroup> groups = make_location_groups();
  return groups;
}

const ScopeGroup* find_scope_group(std::string_view name) {
  for (const auto& g : scope_groups())
    if (g.name == name) return &g;
  return nullptr;
}

const ContentGroup* find_content_group(std::string_view name) {
  for (const auto& g : content_groups())
    if (g.name == name) return &g;
  return nullptr;
}

const LocationGroup* find_location_group(std::string_view name) {
  for (const auto& g : location_groups())
    if (g.name == name) return &g;
  return nullptr;
}

RequiredNotice union_required(const std::vector<ModificationTerm>& terms) {
  if (terms.empty())
    throw std::invalid_argument("union_required: no terms given");
  RequiredNotice req;
  for (const auto& t : terms) {
    req.content.insert(t.obligation.content.elements.begin(),
                       t.obligation.content.elements.end());
    req.locations.insert(t.obligation.location.mode);
  }
  return req;
}

MtDatabase MtDatabase::load(std::string_view tsv_text) {
  MtDatabase db;
  for (const auto& line : text::split_lines(tsv_text)) {
    if (auto v = version_of(line); !v.empty()) db.version_ = v;
    if (!data_line(line)) continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 4 && fields.size() != 5)
      throw std::runtime_error("mt database: bad record: " + line);

    const ScopeGroup* sg = find_scope_group(fields[1]);
    const ContentGroup* cg = find_content_group(fields[2]);
    const LocationGroup* lg = find_location_group(fields[3]);
    if (!sg) throw std::runtime_error("mt database: unknown scope group in: " + line);
    if (!cg) throw std::runtime_error("mt database: unknown content group in: " + line);
    if (!lg) throw std::runtime_error("mt database: unknown location group in: " + line);
    if (fields.size() == 5 && fields[4] != "provisional")
      throw std::runtime_error("mt database: unknown flag in: " + line);

    for (const auto& t : db.terms_)
      if (t.license == fields[0])
        throw std::runtime_error("mt database: duplicate license " + fields[0]);

    // Model invariants the data file must honor.
    if (!sg->elements.count(ScopeElement::SourceCode))
      throw std::runtime_error("mt database: scope group without source code");
    if (!cg->elements.count(ContentElement::BriefStatement) &&
        !cg->elements.count(ContentElement::InformativeStatement))
      throw std::runtime_error("mt database: content group without a statement");

    db.terms_.push_back(ModificationTerm{fields[0], Obligation{*sg, *cg, *lg}});
    if (fields.size() == 5) db.provisional_.insert(fields[0]);
  }
  return db;
}

MtDatabase MtDatabase::builtin() { return load(data::mt_database()); }

std::optional<ModificationTerm> MtDatabase::lookup(std::string_view license) const {
  for (const auto& t : terms_)
    if (t.license == license) return t;
  return std::nullopt;
}

bool MtDatabase::provisional(std::string_view license) const {
  return provisional_.count(std::string(license)) != 0;
}

ExtensionMap ExtensionMap::load(std::string_view tsv_text) {
  ExtensionMap map;
  for (const auto& line : text::split_lines(tsv_text)) {
    if (!data_line(line)) continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 2)
      throw std::runtime_error("extension map: bad record: " + line);
    auto element = scope_element_from_string(fields[1]);
    if (!element)
      throw std::runtime_error("extension map: unknown element in: " + line);
    std::string key = text::to_lower(fields[0]);
    if (key.empty()) throw std::runtime_error("extension map: empty key");
    // A leading dot marks an extension key (".c"); every other key is an
    // exact basename.
    if (key[0] == '.' && key.size() > 1)
      map.by_extension_.emplace_back(key.substr(1), *element);
    else
      map.by_basename_.emplace_back(key, *element);
  }
  return map;
}

ExtensionMap ExtensionMap::builtin() { return load(data::extension_map()); }

ScopeElement ExtensionMap::classify(std::string_view path) const {
  std::size_t slash = path.find_last_of('/');
  std::string base = text::to_lower(
      slash == std::string_view::npos ? path : path.substr(slash + 1));

  for (const auto& [name, element] : by_basename_)
    if (name == base) return element;

  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot + 1 < base.size()) {
    std::string_view ext = std::string_view(base).substr(dot + 1);
    for (const auto& [name, element] : by_extension_)
      if (name == ext) return element;
  }
  return ScopeElement::Others;
}

bool in_scope(const ModificationTerm& term, ScopeElement element) {
  return term.obligation.scope.elements.count(element) != 0;
}

bool in_scope(const ModificationTerm& term, const ExtensionMap& map,
              std::string_view path) {
  return in_scope(term, map.classify(path));
}

} // namespace mtcheck
