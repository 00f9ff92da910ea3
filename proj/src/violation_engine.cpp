#include "mtcheck/violation_engine.hpp"

#include <algorithm>
#include <cmath>

#include "mtcheck/text.hpp"

namespace mtcheck {

namespace {

double dot_sparse(const std::vector<std::pair<std::size_t, double>>& a,
                  const std::vector<std::pair<std::size_t, double>>& b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

void normalize(std::vector<std::pair<std::size_t, double>>& v) {
  double norm = 0.0;
  for (const auto& [dim, w] : v) norm += w * w;
  norm = std::sqrt(norm);
  if (norm <= 0.0) return;
  for (auto& [dim, w] : v) w /= norm;
}

} // namespace

std::string_view to_string(DetectionType t) {
  switch (t) {
    case DetectionType::ObligationFree: return "OF";
    case DetectionType::Obligated: return "OB";
    case DetectionType::MissingNotice: return "VN";
    case DetectionType::WrongDate: return "VD";
    case DetectionType::WrongAuthor: return "VA";
  }
  return "OF";
}

std::string_view describe(DetectionType t) {
  switch (t) {
    case DetectionType::ObligationFree: return "obligation-free";
    case DetectionType::Obligated: return "obligated, notice present";
    case DetectionType::MissingNotice: return "violation: notice missing";
    case DetectionType::WrongDate: return "violation: notice date wrong";
    case DetectionType::WrongAuthor: return "violation: notice author wrong";
  }
  return "obligation-free";
}

TfIdfIndex build_index(const std::vector<ChangeLogEntry>& entries) {
  TfIdfIndex index;
  index.doc_count = entries.size();

  std::vector<std::vector<std::string>> docs;
  docs.reserve(entries.size());
  for (const auto& e : entries) docs.push_back(text::tokenize(e.msg));

  for (const auto& toks : docs)
    for (const auto& t : toks)
      index.vocab.emplace(t, index.vocab.size());

  std::vector<std::size_t> df(index.vocab.size(), 0);
  for (const auto& toks : docs) {
    std::set<std::size_t> seen;
    for (const auto& t : toks) seen.insert(index.vocab.at(t));
    for (std::size_t dim : seen) df[dim]++;
  }

  index.idf.resize(index.vocab.size());
  for (std::size_t dim = 0; dim < df.size(); ++dim)
    index.idf[dim] = std::log((1.0 + static_cast<double>(index.doc_count)) /
                              (1.0 + static_cast<double>(df[dim]))) +
                     1.0;

  index.entry_vectors.reserve(docs.size());
  for (const auto& toks : docs) {
    std::map<std::size_t, double> tf;
    for (const auto& t : toks) tf[index.vocab.at(t)] += 1.0;
    std::vector<std::pair<std::size_t, double>> vec(tf.begin(), tf.end());
    for (auto& [dim, w] : vec) w *= index.idf[dim];
    normalize(vec);
    index.entry_vectors.push_back(std::move(vec));
  }
  return index;
}

std::vector<std::pair<std::size_t, double>> vectorize(const TfIdfIndex& index,
                                                      const std::string& text) {
  std::map<std::size_t, double> tf;
  for (const auto& t : text::tokenize(text)) {
    auto it = index.vocab.find(t);
    if (it == index.vocab.end()) continue; // fixed vocabulary
    tf[it->second] += 1.0;
  }
  std::vector<std::pair<std::size_t, double>> vec(tf.begin(), tf.end());
  for (auto& [dim, w] : vec) w *= index.idf[dim];
  normalize(vec);
  return vec;
}

double similarity(const TfIdfIndex& index, const std::string& message,
                  std::size_t entry) {
  return dot_sparse(vectorize(index, message), index.entry_vectors.at(entry));
}

DetectionRecord classify_commit(const ObligatingCommit& commit,
                                const std::vector<ChangeLogEntry>& entries,
                                const TfIdfIndex& index, const EngineConfig& config) {
  DetectionRecord r;
  r.commit = commit.commit;
  r.required_content = commit.required.content;
  r.required_locations = commit.required.locations;
  r.touched = commit.touched;

  std::size_t best = 0;
  if (!entries.empty()) {
    auto v = vectorize(index, commit.commit.message);
    double best_score = -1.0;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      double s = dot_sparse(v, index.entry_vectors.at(j));
      if (s > best_score) { // strict: ties keep the earliest entry
        best_score = s;
        best = j;
      }
    }
    r.score = std::max(best_score, 0.0);
  }
  if (entries.empty() || r.score < config.threshold) {
    r.type = DetectionType::MissingNotice;
    return r;
  }

  const ChangeLogEntry& n = entries[best];
  r.matched = n;
  if (r.required_content.count(ContentElement::Date)) {
    bool ok = n.d_s.has_value() || n.d_e.has_value();
    if (ok && n.d_s && commit.commit.date < *n.d_s) ok = false;
    if (ok && n.d_e && commit.commit.date > *n.d_e) ok = false;
    if (!ok) {
      r.type = DetectionType::WrongDate;
      return r;
    }
  }
  if (r.required_content.count(ContentElement::Author)) {
    if (!n.author || !(*n.author == commit.commit.author)) {
      r.type = DetectionType::WrongAuthor;
      return r;
    }
  }
  r.type = DetectionType::Obligated;
  return r;
}

std::optional<FixAction> generate_fix(const DetectionRecord& record,
                                      const std::string& primary_notice_path) {
  FixAction f;
  switch (record.type) {
    case DetectionType::MissingNotice:
      f.kind = FixKind::CreateEntry;
      f.notice_path = primary_notice_path;
      f.message = text::collapse_ws(record.commit.message);
      f.author = record.commit.author;
      f.date = record.commit.date;
      return f;
    case DetectionType::WrongDate:
      f.kind = FixKind::SetDates;
      f.notice_path = record.matched ? record.matched->source_path
                                     : primary_notice_path;
      f.date = record.commit.date;
      f.block_index = record.matched ? record.matched->block_index : 0;
      return f;
    case DetectionType::WrongAuthor:
      f.kind = FixKind::SetAuthor;
      f.notice_path = record.matched ? record.matched->source_path
                                     : primary_notice_path;
      f.author = record.commit.author;
      f.line_no = record.matched ? record.matched->line_no : 0;
      return f;
    default:
      return std::nullopt;
  }
}

std::string apply_fixes(const std::optional<NoticeFile>& file,
                        const std::vector<FixAction>& actions) {
  std::vector<std::string> lines;
  if (file) lines = text::split_lines(file->text);
  if (lines.size() == 1 && lines[0].empty()) lines.clear();
  ParsedNotice parsed = parse_blocks(lines);

  std::map<std::size_t, std::string> replace;
  std::map<std::size_t, std::vector<std::string>> insert_before;
  std::map<Date, std::vector<const FixAction*>, std::greater<Date>> creates;

  auto line_text = [&](std::size_t i) {
    auto it = replace.find(i);
    return it != replace.end() ? it->second : lines.at(i);
  };

  for (const auto& a : actions) {
    switch (a.kind) {
      case FixKind::CreateEntry:
        creates[a.date].push_back(&a);
        break;
      case FixKind::SetDates: {
        if (a.block_index >= parsed.blocks.size()) break;
        const ChangeLogBlock& b = parsed.blocks[a.block_index];
        if (b.subtitle_line != kNoLine) {
          std::string s = line_text(b.subtitle_line);
          if (b.subtitle_date) {
            const DateSpan& span = *b.subtitle_date;
            s = s.substr(0, span.pos) + a.date.str() + s.substr(span.pos + span.len);
          } else {
            s += " (" + a.date.str() + ")";
          }
          replace[b.subtitle_line] = s;
        } else {
          std::size_t anchor = b.lines.empty() ? 0 : b.lines.front().first;
          auto& ins = insert_before[anchor];
          ins.push_back("## " + a.date.str());
          ins.push_back("");
        }
        break;
      }
      case FixKind::SetAuthor: {
        if (a.line_no >= lines.size() || !a.author) break;
        replace[a.line_no] = line_text(a.line_no) + " (" + a.author->name + ")";
        break;
      }
    }
  }

  if (!creates.empty()) {
    std::vector<std::string> block_lines;
    for (const auto& [date, acts] : creates) {
      block_lines.push_back("## " + date.str());
      block_lines.push_back("");
      for (const FixAction* a : acts) {
        std::string line = "- " + a->message;
        if (a->author && !a->author->name.empty())
          line += " (" + a->author->name + ")";
        block_lines.push_back(std::move(line));
      }
      block_lines.push_back("");
    }
    std::size_t anchor = 0;
    for (const auto& b : parsed.blocks)
      if (b.subtitle_line != kNoLine) {
        anchor = b.subtitle_line;
        break;
      }
    if (lines.empty()) {
      lines = {"# Changelog", ""};
      anchor = lines.size();
    }
    auto& ins = insert_before[anchor];
    ins.insert(ins.end(), block_lines.begin(), block_lines.end());
  }

  std::vector<std::string> out;
  for (std::size_t i = 0; i <= lines.size(); ++i) {
    auto it = insert_before.find(i);
    if (it != insert_before.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
    if (i < lines.size()) out.push_back(line_text(i));
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  if (out.empty()) return "";
  std::string result;
  for (const auto& l : out) {
    result += l;
    result += '\n';
  }
  return result;
}

} // namespace mtcheck
