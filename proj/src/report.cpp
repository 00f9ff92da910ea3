#include "mtcheck/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "mtcheck/commit_analyzer.hpp"
#include "mtcheck/notice_extractor.hpp"
#include "mtcheck/repo_mapper.hpp"
#include "mtcheck/text.hpp"
#include "mtcheck/text_diff.hpp"

namespace mtcheck {

namespace {

constexpr DetectionType kAllTypes[] = {
    DetectionType::ObligationFree, DetectionType::Obligated,
    DetectionType::MissingNotice, DetectionType::WrongDate,
    DetectionType::WrongAuthor};

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

// Everything the detect/fix/sweep flows share for one base/fork pair.
struct Pipeline {
  MtDatabase db;
  ExtensionMap extmap;
  LicenseTemplates templates;
  std::string b1, b2, f;
  std::optional<std::string> project_license;
  std::vector<ObligatingFile> files;
  std::vector<git::Author> authors;
  std::vector<git::Commit> filtered; // newest first
  std::vector<ObligatingCommit> obligating;
  std::vector<NoticeFile> notices;
  std::vector<ChangeLogEntry> entries;
};

Pipeline run_pipeline(const std::filesystem::path& base_path,
                      const std::filesystem::path& fork_path,
                      const RunOptions& options) {
  git::RepoRef base{base_path, git::RepoRole::Base};
  git::RepoRef fork{fork_path, git::RepoRole::Fork};

  Pipeline p;
  p.db = options.mt_db ? MtDatabase::load(read_text_file(*options.mt_db))
                       : MtDatabase::builtin();
  p.extmap = options.ext_map ? ExtensionMap::load(read_text_file(*options.ext_map))
                             : ExtensionMap::builtin();
  p.templates = LicenseTemplates::builtin();

  p.b1 = git::resolve_fork_point(base, fork, options.fork_point);
  p.b2 = git::resolve_revision(base, "HEAD");
  p.f = git::resolve_revision(fork, "HEAD");

  MappingConfig mapping{options.clone_threshold};
  auto mappings = map_repositories(base, fork, p.b1, p.b2, p.f, p.extmap, mapping);
  p.project_license = project_license_of(base, p.b1, p.b2, p.templates);
  auto content_of = [&base](const std::string& rev, const std::string& path) {
    return git::file_content(base, rev, path);
  };
  p.files = select_obligating_files(mappings, content_of, p.project_license,
                                    p.templates, p.db, p.extmap);

  auto hf = git::commits_between(fork, p.b1, p.f).commits;
  auto hb = git::commits_between(base, p.b1, p.b2).commits;
  p.authors = collect_authors(hf);
  p.filtered = filter_reverted(filter_picked(hf, hb));

  auto changes = git::changed_files_between(fork, p.b1, p.f);
  auto changes_of = [&changes](const git::Commit& c) {
    auto it = changes.find(c.id);
    return it != changes.end() ? it->second : std::vector<git::FileChange>{};
  };
  p.obligating = select_obligating(p.filtered, changes_of, p.files);

  p.notices = collect_notice_files(fork);
  for (const auto& nf : p.notices) {
    auto entries = extract_entries(nf, p.authors);
    p.entries.insert(p.entries.end(), entries.begin(), entries.end());
  }
  return p;
}

Report build_report(const Pipeline& p, const RunOptions& options) {
  Report r;
  r.threshold = options.threshold;
  r.clone_threshold = options.clone_threshold;
  r.fork_point = p.b1;
  r.mt_db_version = p.db.version();
  r.project_license = p.project_license;

  TfIdfIndex index = build_index(p.entries);
  EngineConfig cfg{options.threshold};
  std::map<std::string, const ObligatingCommit*> by_id;
  for (const auto& oc : p.obligating) by_id[oc.commit.id] = &oc;

  for (const auto& c : p.filtered) {
    auto it = by_id.find(c.id);
    if (it == by_id.end()) {
      DetectionRecord rec;
      rec.commit = c;
      rec.type = DetectionType::ObligationFree;
      r.records.push_back(std::move(rec));
      continue;
    }
    r.records.push_back(classify_commit(*it->second, p.entries, index, cfg));
    std::set<ScopeElement> elements;
    for (const auto& path : it->second->touched)
      elements.insert(p.extmap.classify(path));
    for (ScopeElement e : elements) r.scope_commit_counts[e]++;
  }

  for (DetectionType t : kAllTypes) r.counts[t] = 0;
  for (const auto& rec : r.records) r.counts[rec.type]++;
  r.verdict = classify_repo(r.records);
  return r;
}

nlohmann::ordered_json matched_entry_json(const std::optional<ChangeLogEntry>& e) {
  if (!e) return nullptr;
  nlohmann::ordered_json j;
  j["path"] = e->source_path;
  j["line"] = e->line_no + 1;
  j["msg"] = e->msg;
  return j;
}

nlohmann::ordered_json report_json(const Report& report) {
  nlohmann::ordered_json j;
  j["verdict"] = std::string(to_string(report.verdict));

  auto counts = nlohmann::ordered_json::object();
  for (DetectionType t : kAllTypes) {
    auto it = report.counts.find(t);
    counts[std::string(to_string(t))] = it == report.counts.end() ? 0 : it->second;
  }
  j["counts"] = counts;

  auto scope = nlohmann::ordered_json::object();
  for (const auto& [element, n] : report.scope_commit_counts)
    scope[std::string(to_string(element))] = n;
  j["scope_commit_counts"] = scope;

  nlohmann::ordered_json config;
  config["threshold"] = report.threshold;
  config["clone_threshold"] = report.clone_threshold;
  config["fork_point"] = report.fork_point;
  config["mt_db_version"] = report.mt_db_version;
  j["config"] = config;

  if (report.project_license)
    j["project_license"] = *report.project_license;
  else
    j["project_license"] = nullptr;

  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    nlohmann::ordered_json r;
    r["commit_id"] = rec.commit.id;
    r["author"] = rec.commit.author.display();
    r["date"] = rec.commit.date.str();
    r["message_first_line"] = rec.commit.first_line();
    r["type"] = std::string(to_string(rec.type));
    r["matched_entry"] = matched_entry_json(rec.matched);
    r["score"] = round6(rec.score);
    auto required = nlohmann::ordered_json::array();
    for (ContentElement c : rec.required_content)
      required.push_back(std::string(to_string(c)));
    r["required_content"] = required;
    records.push_back(std::move(r));
  }
  j["records"] = records;
  return j;
}

} // namespace

std::string_view to_string(RepoVerdict v) {
  switch (v) {
    case RepoVerdict::ObligationFree: return "ObligationFree";
    case RepoVerdict::FullyObligated: return "FullyObligated";
    case RepoVerdict::PartiallyViolated: return "PartiallyViolated";
    case RepoVerdict::FullyViolated: return "FullyViolated";
  }
  return "ObligationFree";
}

std::optional<DetectionType> detection_type_from_string(std::string_view s) {
  for (DetectionType t : kAllTypes)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

bool has_violations(const Report& report) {
  return std::any_of(report.records.begin(), report.records.end(),
                     [](const DetectionRecord& r) {
                       return r.type == DetectionType::MissingNotice ||
                              r.type == DetectionType::WrongDate ||
                              r.type == DetectionType::WrongAuthor;
                     });
}

RepoVerdict classify_repo(const std::vector<DetectionRecord>& records) {
  std::size_t obligating = 0, violating = 0;
  for (const auto& r : records) {
    if (r.type == DetectionType::ObligationFree) continue;
    ++obligating;
    if (r.type != DetectionType::Obligated) ++violating;
  }
  if (obligating == 0) return RepoVerdict::ObligationFree;
  if (violating == 0) return RepoVerdict::FullyObligated;
  if (violating == obligating) return RepoVerdict::FullyViolated;
  return RepoVerdict::PartiallyViolated;
}

Report run_detect(const std::filesystem::path& base_path,
                  const std::filesystem::path& fork_path,
                  const RunOptions& options) {
  Pipeline p = run_pipeline(base_path, fork_path, options);
  return build_report(p, options);
}

FixReport run_fix(const std::filesystem::path& base_path,
                  const std::filesystem::path& fork_path,
                  const RunOptions& options, bool write) {
  Pipeline p = run_pipeline(base_path, fork_path, options);
  FixReport out;
  out.report = build_report(p, options);

  const std::string primary =
      p.notices.empty() ? kDefaultNoticeName : p.notices.front().path;
  std::map<std::string, std::vector<FixAction>> per_file;
  for (const auto& rec : out.report.records)
    if (auto fix = generate_fix(rec, primary))
      per_file[fix->notice_path].push_back(std::move(*fix));

  for (auto& [path, actions] : per_file) {
    PatchedNotice pn;
    pn.path = path;
    std::optional<NoticeFile> existing;
    for (const auto& nf : p.notices)
      if (nf.path == path) {
        existing = nf;
        break;
      }
    pn.existed = existing.has_value();
    pn.old_text = existing ? existing->text : "";
    pn.new_text = apply_fixes(existing, actions);
    pn.diff = unified_diff(pn.old_text, pn.new_text,
                           pn.existed ? "a/" + path : "/dev/null", "b/" + path);
    if (write) {
      std::filesystem::path target = fork_path / path;
      std::filesystem::create_directories(target.parent_path());
      std::ofstream file(target, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot write " + target.string());
      file << pn.new_text;
      if (!file) throw std::runtime_error("write failed for " + target.string());
    }
    out.patches.push_back(std::move(pn));
  }
  return out;
}

MetricsRow compute_macro_metrics(const std::map<std::string, DetectionType>& predicted,
                                 const std::map<std::string, DetectionType>& labeled) {
  if (predicted.size() != labeled.size())
    throw std::invalid_argument("prediction and label commit sets differ in size");
  for (const auto& [id, type] : predicted) {
    (void)type;
    if (!labeled.count(id))
      throw std::invalid_argument("commit " + id + " has no label");
  }

  std::map<DetectionType, std::size_t> tp, predicted_n, labeled_n;
  for (const auto& [id, p] : predicted) {
    DetectionType t = labeled.at(id);
    predicted_n[p]++;
    labeled_n[t]++;
    if (p == t) tp[p]++;
  }

  std::vector<DetectionType> classes = {
      DetectionType::MissingNotice, DetectionType::WrongDate,
      DetectionType::ObligationFree, DetectionType::Obligated};
  if (predicted_n.count(DetectionType::WrongAuthor) ||
      labeled_n.count(DetectionType::WrongAuthor))
    classes.push_back(DetectionType::WrongAuthor);

  MetricsRow row;
  double p_sum = 0.0, r_sum = 0.0;
  for (DetectionType c : classes) {
    std::size_t hits = tp.count(c) ? tp.at(c) : 0;
    std::size_t np = predicted_n.count(c) ? predicted_n.at(c) : 0;
    std::size_t nl = labeled_n.count(c) ? labeled_n.at(c) : 0;
    double precision, recall;
    if (np == 0 && nl == 0) {
      precision = recall = 1.0; // class never came up; nothing got it wrong
    } else {
      precision = np ? static_cast<double>(hits) / static_cast<double>(np) : 0.0;
      recall = nl ? static_cast<double>(hits) / static_cast<double>(nl) : 0.0;
    }
    row.precision[c] = precision;
    row.recall[c] = recall;
    p_sum += precision;
    r_sum += recall;
  }
  row.macro_precision = p_sum / static_cast<double>(classes.size());
  row.macro_recall = r_sum / static_cast<double>(classes.size());
  return row;
}

std::vector<MetricsRow> threshold_sweep(
    const std::vector<ObligatingCommit>& obligating,
    const std::vector<std::string>& obligation_free_ids,
    const std::vector<ChangeLogEntry>& entries,
    const std::map<std::string, DetectionType>& labels,
    const std::vector<double>& th_values) {
  TfIdfIndex index = build_index(entries);

  // Scores and post-match outcomes do not depend on the threshold, so one
  // classification pass at zero serves every row.
  struct Scored {
    std::string id;
    double score;
    DetectionType matched_type;
  };
  std::vector<Scored> scored;
  scored.reserve(obligating.size());
  EngineConfig zero{0.0};
  for (const auto& oc : obligating) {
    DetectionRecord rec = classify_commit(oc, entries, index, zero);
    scored.push_back({oc.commit.id, rec.score, rec.type});
  }

  std::vector<MetricsRow> rows;
  rows.reserve(th_values.size());
  for (double th : th_values) {
    std::map<std::string, DetectionType> predicted;
    for (const auto& s : scored)
      predicted[s.id] =
          s.score < th ? DetectionType::MissingNotice : s.matched_type;
    for (const auto& id : obligation_free_ids)
      predicted[id] = DetectionType::ObligationFree;
    MetricsRow row = compute_macro_metrics(predicted, labels);
    row.th = th;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricsRow> run_sweep(const std::filesystem::path& base_path,
                                  const std::filesystem::path& fork_path,
                                  const RunOptions& options,
                                  const std::map<std::string, DetectionType>& labels,
                                  const std::vector<double>& th_values) {
  Pipeline p = run_pipeline(base_path, fork_path, options);
  std::set<std::string> obligating_ids;
  for (const auto& oc : p.obligating) obligating_ids.insert(oc.commit.id);
  std::vector<std::string> free_ids;
  for (const auto& c : p.filtered)
    if (!obligating_ids.count(c.id)) free_ids.push_back(c.id);
  return threshold_sweep(p.obligating, free_ids, p.entries, labels, th_values);
}

std::map<std::string, DetectionType> parse_labels(std::string_view text) {
  std::map<std::string, DetectionType> out;
  std::size_t line_no = 0;
  for (const auto& raw : text::split_lines(std::string(text))) {
    ++line_no;
    std::string_view line = trimmed(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream parts{std::string(line)};
    std::string id, code, extra;
    if (!(parts >> id >> code) || (parts >> extra))
      throw std::invalid_argument("labels line " + std::to_string(line_no) +
                                  ": expected '<commit-id> <type>'");
    auto type = detection_type_from_string(code);
    if (!type)
      throw std::invalid_argument("labels line " + std::to_string(line_no) +
                                  ": unknown type " + code);
    if (!out.emplace(id, *type).second)
      throw std::invalid_argument("labels line " + std::to_string(line_no) +
                                  ": duplicate commit " + id);
  }
  return out;
}

std::string to_json(const Report& report) { return report_json(report).dump(2) + "\n"; }

std::string to_json(const FixReport& fix) {
  nlohmann::ordered_json j = report_json(fix.report);
  auto patches = nlohmann::ordered_json::array();
  for (const auto& patch : fix.patches) {
    nlohmann::ordered_json p;
    p["path"] = patch.path;
    p["created"] = !patch.existed;
    p["diff"] = patch.diff;
    patches.push_back(std::move(p));
  }
  j["patches"] = patches;
  return j.dump(2) + "\n";
}

std::string to_markdown(const FixReport& fix) {
  std::string out = to_markdown(fix.report);
  out += "\n## Patches\n\n";
  if (fix.patches.empty()) return out + "No changes required.\n";
  for (const auto& patch : fix.patches) {
    out += "### " + patch.path + (patch.existed ? "" : " (new file)") + "\n\n";
    out += "```diff\n" + patch.diff + "```\n\n";
  }
  return out;
}

std::string to_markdown(const Report& report) {
  std::string out = "# Modification-term compliance report\n\n";
  out += "- Verdict: **" + std::string(to_string(report.verdict)) + "**\n";
  out += "- Fork point: `" + report.fork_point + "`\n";
  out += "- Match threshold: " + fmtg(report.threshold) + " (clone threshold " +
         fmtg(report.clone_threshold) + ")\n";
  out += "- Term database: version " + report.mt_db_version + "\n";
  out += "- Base project license: " +
         (report.project_license ? *report.project_license : "none detected") +
         "\n\n";

  out += "## Outcome counts\n\n| Type | Commits |\n| --- | ---: |\n";
  for (DetectionType t : kAllTypes) {
    auto it = report.counts.find(t);
    std::size_t n = it == report.counts.end() ? 0 : it->second;
    out += "| " + std::string(to_string(t)) + " | " + std::to_string(n) + " |\n";
  }

  if (!report.scope_commit_counts.empty()) {
    out += "\n## Obligating commits per scope element\n\n";
    out += "| Element | Commits |\n| --- | ---: |\n";
    for (const auto& [element, n] : report.scope_commit_counts)
      out += "| " + std::string(to_string(element)) + " | " + std::to_string(n) +
             " |\n";
  }

  out += "\n## Commits\n\n";
  out += "| Commit | Date | Author | Type | Score | Message |\n";
  out += "| --- | --- | --- | --- | ---: | --- |\n";
  for (const auto& rec : report.records) {
    out += "| `" + rec.commit.id.substr(0, 12) + "` | " + rec.commit.date.str() +
           " | " + md_cell(rec.commit.author.name) + " | " +
           std::string(to_string(rec.type)) + " | " + fmt6(rec.score) + " | " +
           md_cell(rec.commit.first_line()) + " |\n";
  }
  return out;
}

std::string to_json(const std::vector<MetricsRow>& rows) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["th"] = row.th;
    r["macro_precision"] = round6(row.macro_precision);
    r["macro_recall"] = round6(row.macro_recall);
    auto precision = nlohmann::ordered_json::object();
    auto recall = nlohmann::ordered_json::object();
    for (const auto& [type, value] : row.precision)
      precision[std::string(to_string(type))] = round6(value);
    for (const auto& [type, value] : row.recall)
      recall[std::string(to_string(type))] = round6(value);
    r["precision"] = precision;
    r["recall"] = recall;
    j.push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string to_markdown(const std::vector<MetricsRow>& rows) {
  std::string out = "# Threshold sweep\n\n";
  if (rows.empty()) return out + "(no rows)\n";

  out += "| th | macro-P | macro-R |";
  for (const auto& [type, value] : rows.front().precision) {
    (void)value;
    std::string code{to_string(type)};
    out += " P(" + code + ") | R(" + code + ") |";
  }
  out += "\n| --- | --- | --- |";
  for (std::size_t i = 0; i < rows.front().precision.size(); ++i) out += " --- | --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "| " + fmtg(row.th) + " | " + fmt6(row.macro_precision) + " | " +
           fmt6(row.macro_recall) + " |";
    for (const auto& [type, value] : row.precision) {
      out += " " + fmt6(value) + " | " + fmt6(row.recall.at(type)) + " |";
    }
    out += "\n";
  }
  return out;
}

std::string patches_text(const FixReport& fix) {
  std::string out;
  for (const auto& patch : fix.patches) out += patch.diff;
  return out;
}

} // namespace mtcheck
