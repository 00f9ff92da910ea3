// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Runs standalone (no test framework) so the output reads as
// a checklist.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mtcheck/commit_analyzer.hpp"
#include "mtcheck/mt_model.hpp"
#include "mtcheck/notice_extractor.hpp"
#include "mtcheck/report.hpp"
#include "mtcheck/violation_engine.hpp"
#include "support/git_fixture.hpp"

using namespace mtcheck;

namespace {

int failures = 0;

void outcome(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("%s: criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) ++failures;
}

template <typename Fn>
void criterion(int number, const char* name, Fn&& fn) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  outcome(number, name, ok, detail);
}

constexpr const char* kApacheLicenseText =
    "Licensed under the Apache License, Version 2.0 (the \"License\");\n"
    "you may not use this file except in compliance with the License.\n";

constexpr const char* kGplLicenseText =
    "This program is free software; you can redistribute it and/or modify it\n"
    "under the terms of the GNU General Public License as published by the\n"
    "Free Software Foundation; either version 2 of the License.\n";

// ---------------------------------------------------------------- criterion 1

bool dominating_licenses(std::string& detail) {
  struct Expected {
    const char* license;
    const char* scope;
    const char* content;
    const char* location;
  };
  const Expected table[] = {
      {"Apache-2.0", "S_g3", "C_g3", "L_g2"},
      {"GPL-2.0", "S_g8", "C_g1", "L_g2"},
      {"LGPL-2.1", "S_g8", "C_g1", "L_g2"},
      {"GPL-3.0", "S_g8", "C_g1", "L_g4"},
      {"AGPL-3.0", "S_g8", "C_g1", "L_g4"},
  };
  MtDatabase db = MtDatabase::builtin();
  for (const Expected& e : table) {
    auto term = db.lookup(e.license);
    if (!term) {
      detail = std::string(e.license) + " missing from the database";
      return false;
    }
    if (term->obligation.scope.name != e.scope ||
        term->obligation.content.name != e.content ||
        term->obligation.location.name != e.location) {
      detail = std::string(e.license) + " carries " + term->obligation.scope.name +
               "," + term->obligation.content.name + "," +
               term->obligation.location.name + " instead of " + e.scope + "," +
               e.content + "," + e.location;
      return false;
    }
  }
  detail = "5 licenses exact";
  return true;
}

// ---------------------------------------------------------------- criterion 2

bool group_assignments(std::string& detail) {
  struct Expected {
    const char* license;
    const char* group; // prefix decides the axis
  };
  const Expected table[] = {
      {"AFL-3.0", "S_g1"},  {"OHL-2.0", "S_g2"},   {"APSL-2.0", "S_g4"},
      {"MPL-1.1", "S_g5"},  {"RPL-1.5", "S_g6"},   {"SPL-1.0", "S_g7"},
      {"CDDL-1.0", "C_g2"}, {"LPPL-1.3c", "C_g4"}, {"OGTSL", "C_g5"},
      {"NASA-1.3", "C_g6"}, {"AFL-3.0", "L_g1"},   {"RPL-1.1", "L_g3"},
  };
  MtDatabase db = MtDatabase::builtin();
  for (const Expected& e : table) {
    auto term = db.lookup(e.license);
    if (!term) {
      detail = std::string(e.license) + " missing from the database";
      return false;
    }
    std::string got;
    switch (e.group[0]) {
      case 'S': got = term->obligation.scope.name; break;
      case 'C': got = term->obligation.content.name; break;
      default: got = term->obligation.location.name; break;
    }
    if (got != e.group) {
      detail = std::string(e.license) + " sits in " + got + ", expected " + e.group;
      return false;
    }
  }
  detail = "12 assignments exact";
  return true;
}

// ---------------------------------------------------------------- criterion 3

bool model_invariants(std::string& detail) {
  for (const ScopeGroup& g : scope_groups())
    if (!g.elements.count(ScopeElement::SourceCode)) {
      detail = g.name + " lacks S_c1";
      return false;
    }
  for (const ContentGroup& g : content_groups())
    if (!g.elements.count(ContentElement::BriefStatement) &&
        !g.elements.count(ContentElement::InformativeStatement)) {
      detail = g.name + " lacks a statement element";
      return false;
    }

  bool threw = false;
  try {
    union_required({});
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  if (!threw) {
    detail = "union over no terms did not throw";
    return false;
  }

  std::mt19937 rng(20260818);
  const auto& sgs = scope_groups();
  const auto& cgs = content_groups();
  const auto& lgs = location_groups();
  auto random_term = [&](int tag) {
    ModificationTerm t;
    t.license = "L" + std::to_string(tag);
    t.obligation.scope = sgs[rng() % sgs.size()];
    t.obligation.content = cgs[rng() % cgs.size()];
    t.obligation.location = lgs[rng() % lgs.size()];
    return t;
  };

  for (int round = 0; round < 1000; ++round) {
    std::vector<ModificationTerm> terms;
    std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) terms.push_back(random_term(static_cast<int>(i)));

    std::set<ContentElement> expected_content;
    std::set<LocationMode> expected_locations;
    for (const auto& t : terms) {
      expected_content.insert(t.obligation.content.elements.begin(),
                              t.obligation.content.elements.end());
      expected_locations.insert(t.obligation.location.mode);
    }

    RequiredNotice r = union_required(terms);
    if (r.content != expected_content || r.locations != expected_locations) {
      detail = "union mismatch at round " + std::to_string(round);
      return false;
    }

    std::vector<ModificationTerm> shuffled = terms;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    RequiredNotice s = union_required(shuffled);
    if (s.content != r.content || s.locations != r.locations) {
      detail = "order changed the union at round " + std::to_string(round);
      return false;
    }

    std::vector<ModificationTerm> doubled = terms;
    doubled.push_back(terms.front());
    RequiredNotice d = union_required(doubled);
    if (d.content != r.content || d.locations != r.locations) {
      detail = "duplicate term changed the union at round " + std::to_string(round);
      return false;
    }

    std::vector<ModificationTerm> grown = terms;
    grown.push_back(random_term(99));
    RequiredNotice g = union_required(grown);
    if (!std::includes(g.content.begin(), g.content.end(), r.content.begin(),
                       r.content.end()) ||
        !std::includes(g.locations.begin(), g.locations.end(), r.locations.begin(),
                       r.locations.end())) {
      detail = "extra term shrank the union at round " + std::to_string(round);
      return false;
    }
  }
  detail = "1000 randomized rounds";
  return true;
}

// ------------------------------------------------------------ criteria 4 and 6

struct FixturePaths {
  bool built = false;
  std::filesystem::path vn_base, vn_fork; // pair (c)
  std::filesystem::path vd_base, vd_fork; // pair (d)
};

bool fixture_suite(std::string& detail, const std::filesystem::path& root,
                   FixturePaths& keep) {
  auto start = std::chrono::steady_clock::now();

  // (a) fork leaves every base file untouched
  {
    fixture::GitRepo base{root / "a_base"};
    base.init();
    base.write("LICENSE", kApacheLicenseText);
    base.write("src/main.c", "int main(void) { return 0; }\n");
    base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "a_fork"};
    fork.clone_from(base.dir);
    fork.write("docs/own.md", "fork-only notes\n");
    fork.commit_all("add own docs", "2021-02-01T12:00:00+0000");

    Report r = run_detect(base.dir, fork.dir, {});
    if (r.verdict != RepoVerdict::ObligationFree) {
      detail = "pair (a): expected ObligationFree, got " +
               std::string(to_string(r.verdict));
      return false;
    }
  }

  // (b) source edit with a matching change-log line
  {
    fixture::GitRepo base{root / "b_base"};
    base.init();
    base.write("LICENSE", kApacheLicenseText);
    base.write("src/main.c", "int main(void) { return 0; }\n");
    base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "b_fork"};
    fork.clone_from(base.dir);
    fork.write("src/main.c", "int main(void) { return 1; }\n");
    fork.write("CHANGELOG.md", "## 2021-03-03\n\n- improve main parser (Alice)\n");
    fork.commit_all("improve main parser", "2021-03-03T12:00:00+0000");

    Report r = run_detect(base.dir, fork.dir, {});
    if (r.verdict != RepoVerdict::FullyObligated || r.records.size() != 1 ||
        r.records[0].type != DetectionType::Obligated) {
      detail = "pair (b): expected one OB record";
      return false;
    }
  }

  // (c) the same edit with no change log at all
  {
    fixture::GitRepo base{root / "c_base"};
    base.init();
    base.write("COPYING", kGplLicenseText);
    base.write("src/core.c", "int tick(void) { return 0; }\n");
    base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "c_fork"};
    fork.clone_from(base.dir);
    fork.write("src/core.c", "int tick(void) { return 1; }\n");
    fork.commit_all("rework scheduler queue", "2021-05-06T12:00:00+0000");

    Report r = run_detect(base.dir, fork.dir, {});
    if (r.verdict != RepoVerdict::FullyViolated || r.records.size() != 1 ||
        r.records[0].type != DetectionType::MissingNotice) {
      detail = "pair (c): expected one VN record";
      return false;
    }
    keep.vn_base = base.dir;
    keep.vn_fork = fork.dir;
  }

  // (d) matching line but the commit date falls outside the block range
  {
    fixture::GitRepo base{root / "d_base"};
    base.init();
    base.write("COPYING", kGplLicenseText);
    base.write("src/core.c", "int tick(void) { return 0; }\n");
    base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "d_fork"};
    fork.clone_from(base.dir);
    fork.write("src/core.c", "int tick(void) { return 1; }\n");
    fork.write("CHANGELOG.md", "## 2021-04-01\n\n- rework scheduler queue (Alice)\n");
    fork.commit_all("rework scheduler queue", "2021-05-06T12:00:00+0000");

    Report r = run_detect(base.dir, fork.dir, {});
    if (r.verdict != RepoVerdict::FullyViolated || r.records.size() != 1 ||
        r.records[0].type != DetectionType::WrongDate) {
      detail = "pair (d): expected one VD record";
      return false;
    }
    keep.vd_base = base.dir;
    keep.vd_fork = fork.dir;
  }

  // (e) a base commit brought into the fork drops out via the picked filter
  {
    fixture::GitRepo base{root / "e_base"};
    base.init();
    base.write("LICENSE", kApacheLicenseText);
    base.write("src/main.c", "int main(void) { return 0; }\n");
    std::string fork_point = base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "e_fork"};
    fork.clone_from(base.dir);
    base.write("src/main.c", "int main(void) { return 7; }\n");
    std::string upstream = base.commit_all("upstream tweak", "2021-02-01T12:00:00+0000");
    fork.fast_forward_to(base.dir, upstream);
    fork.write("docs/own.md", "fork-only notes\n");
    fork.commit_all("add own docs", "2021-03-01T12:00:00+0000");

    RunOptions options;
    options.fork_point = fork_point;
    Report r = run_detect(base.dir, fork.dir, options);
    bool ok = r.verdict == RepoVerdict::ObligationFree && r.records.size() == 1 &&
              r.records[0].type == DetectionType::ObligationFree;
    if (!ok) {
      detail = "pair (e): the picked base commit was not excluded";
      return false;
    }
  }

  // (f) a reverted edit and its revert cancel out
  {
    fixture::GitRepo base{root / "f_base"};
    base.init();
    base.write("LICENSE", kApacheLicenseText);
    base.write("src/main.c", "int main(void) { return 0; }\n");
    base.commit_all("base import", "2021-01-01T12:00:00+0000");
    fixture::GitRepo fork{root / "f_fork"};
    fork.clone_from(base.dir);
    fork.write("src/main.c", "int main(void) { return 2; }\n");
    fork.commit_all("tweak parser core", "2021-02-01T12:00:00+0000");
    fork.revert_head("2021-02-02T12:00:00+0000");
    fork.write("docs/own.md", "fork-only notes\n");
    fork.commit_all("add own docs", "2021-03-01T12:00:00+0000");

    Report r = run_detect(base.dir, fork.dir, {});
    bool ok = r.verdict == RepoVerdict::ObligationFree && r.records.size() == 1 &&
              r.records[0].type == DetectionType::ObligationFree;
    if (!ok) {
      detail = "pair (f): the revert pair was not excluded";
      return false;
    }
  }

  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  keep.built = true;
  char buf[64];
  std::snprintf(buf, sizeof buf, "6 pairs in %.2f s", elapsed.count());
  detail = buf;
  return elapsed.count() < 5.0;
}

bool fix_settles(std::string& detail, const FixturePaths& paths) {
  if (!paths.built) {
    detail = "fixture pairs unavailable";
    return false;
  }
  struct Pair {
    const char* tag;
    std::filesystem::path base, fork;
  };
  const Pair pairs[] = {{"VN", paths.vn_base, paths.vn_fork},
                        {"VD", paths.vd_base, paths.vd_fork}};
  for (const Pair& p : pairs) {
    run_fix(p.base, p.fork, {}, true);
    Report r = run_detect(p.base, p.fork, {});
    bool ok = r.verdict == RepoVerdict::FullyObligated &&
              r.counts.at(DetectionType::MissingNotice) == 0 &&
              r.counts.at(DetectionType::WrongDate) == 0 &&
              r.counts.at(DetectionType::WrongAuthor) == 0;
    if (!ok) {
      detail = std::string("the ") + p.tag + " fixture did not settle: " +
               std::string(to_string(r.verdict));
      return false;
    }
  }
  detail = "both violating fixtures settle to FullyObligated";
  return true;
}

// ---------------------------------------------------------------- criterion 5

bool worked_example(std::string& detail) {
  NoticeFile file{"CHANGELOG.md",
                  "# Sample Changelog\n"
                  "\n"
                  "some preamble text\n"
                  "\n"
                  "## 1.2.0 - 2021-01-19\n"
                  "\n"
                  "Features:\n"
                  "- improve the parser core (Phylu)\n"
                  "- fix crash on empty input\n"
                  "\n"
                  "## 1.1.0 - 2020-05-24\n"
                  "\n"
                  "- initial packaging (Phylu)\n"};
  std::vector<git::Author> authors = {{"Phylu", "phylu@example.org"},
                                      {"Alice", "alice@example.org"}};
  auto entries = extract_entries(file, authors);
  if (entries.empty()) {
    detail = "no entries parsed";
    return false;
  }
  const ChangeLogEntry* phylu_entry = nullptr;
  const ChangeLogEntry* plain_entry = nullptr;
  for (const auto& e : entries) {
    if (e.msg == "- improve the parser core (Phylu)") phylu_entry = &e;
    if (e.msg == "- fix crash on empty input") plain_entry = &e;
  }
  if (!phylu_entry || !plain_entry) {
    detail = "expected entries missing";
    return false;
  }
  if (!phylu_entry->d_s || *phylu_entry->d_s != Date{2020, 5, 24}) {
    detail = "first block d_s is not 2020-05-24";
    return false;
  }
  if (!phylu_entry->d_e || *phylu_entry->d_e != Date{2021, 1, 19}) {
    detail = "first block d_e is not 2021-01-19";
    return false;
  }
  if (!phylu_entry->author || phylu_entry->author->name != "Phylu") {
    detail = "Phylu line not attributed";
    return false;
  }
  if (plain_entry->author.has_value()) {
    detail = "unattributed line received an author";
    return false;
  }
  detail = "bounds 2020-05-24 / 2021-01-19 and attribution exact";
  return true;
}

// ---------------------------------------------------------------- criterion 7

std::vector<std::string> oracle_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char ch : text) {
    if (std::isalnum(ch)) {
      cur += static_cast<char>(std::tolower(ch));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::map<std::string, double> oracle_vector(const std::string& text,
                                            const std::map<std::string, std::size_t>& df,
                                            std::size_t doc_count) {
  std::map<std::string, double> weights;
  for (const auto& tok : oracle_tokens(text)) {
    auto it = df.find(tok);
    if (it == df.end()) continue;
    double idf = std::log((1.0 + static_cast<double>(doc_count)) /
                          (1.0 + static_cast<double>(it->second))) +
                 1.0;
    weights[tok] += idf;
  }
  double norm = 0.0;
  for (const auto& [tok, w] : weights) norm += w * w;
  norm = std::sqrt(norm);
  if (norm > 0)
    for (auto& [tok, w] : weights) w /= norm;
  return weights;
}

double oracle_cosine(const std::map<std::string, double>& a,
                     const std::map<std::string, double>& b) {
  double dot = 0.0;
  for (const auto& [tok, w] : a) {
    auto it = b.find(tok);
    if (it != b.end()) dot += w * it->second;
  }
  return dot;
}

bool oracle_equivalence(std::string& detail) {
  std::mt19937 rng(880818);
  std::vector<std::string> vocab, oov;
  for (int i = 0; i < 40; ++i) vocab.push_back("w" + std::to_string(i));
  for (int i = 0; i < 10; ++i) oov.push_back("z" + std::to_string(i));

  std::vector<ChangeLogEntry> entries;
  for (int i = 0; i < 50; ++i) {
    std::size_t len = 3 + rng() % 10;
    std::string msg;
    for (std::size_t j = 0; j < len; ++j) {
      if (j) msg += ' ';
      msg += vocab[rng() % vocab.size()];
    }
    ChangeLogEntry e;
    e.msg = msg;
    entries.push_back(e);
  }
  std::vector<std::string> messages;
  for (int i = 0; i < 50; ++i) {
    std::size_t len = 1 + rng() % 10;
    std::string msg;
    for (std::size_t j = 0; j < len; ++j) {
      if (j) msg += ' ';
      msg += (rng() % 5 == 0) ? oov[rng() % oov.size()] : vocab[rng() % vocab.size()];
    }
    messages.push_back(msg);
  }

  std::map<std::string, std::size_t> df;
  for (const auto& e : entries) {
    std::set<std::string> seen;
    for (const auto& tok : oracle_tokens(e.msg)) seen.insert(tok);
    for (const auto& tok : seen) df[tok]++;
  }

  TfIdfIndex index = build_index(entries);
  std::vector<std::map<std::string, double>> entry_vecs;
  for (const auto& e : entries)
    entry_vecs.push_back(oracle_vector(e.msg, df, entries.size()));

  double worst = 0.0;
  for (const auto& msg : messages) {
    auto msg_vec = oracle_vector(msg, df, entries.size());
    for (std::size_t j = 0; j < entries.size(); ++j) {
      double expected = oracle_cosine(msg_vec, entry_vecs[j]);
      double got = similarity(index, msg, j);
      worst = std::max(worst, std::fabs(got - expected));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.3g over 2500 pairs", worst);
  detail = buf;
  return worst < 1e-9;
}

// ---------------------------------------------------------------- criterion 8

bool labeled_corpus(std::string& detail) {
  MtDatabase db = MtDatabase::builtin();
  ModificationTerm apache = *db.lookup("Apache-2.0"); // statement only
  ModificationTerm gpl = *db.lookup("GPL-2.0");       // date + statement

  auto family_tokens = [](int family, int count) {
    std::string out;
    for (int j = 0; j < count; ++j) {
      if (j) out += ' ';
      out += "f" + std::to_string(family) + "t" + std::to_string(j);
    }
    return out;
  };
  auto make_commit = [](const std::string& id, const std::string& msg, Date date) {
    git::Commit c;
    c.id = id;
    c.message = msg;
    c.date = date;
    c.author = {"Alice", "alice@example.org"};
    return c;
  };
  auto make_obligating = [](const git::Commit& c, const ModificationTerm& term) {
    ObligatingCommit oc;
    oc.commit = c;
    oc.terms = {term};
    oc.required = union_required(oc.terms);
    oc.touched = {"src/unit.c"};
    return oc;
  };

  std::vector<ChangeLogEntry> entries;
  std::vector<ObligatingCommit> obligating;
  std::vector<std::string> free_ids;
  std::map<std::string, DetectionType> labels;
  int family = 0;

  for (int i = 0; i < 25; ++i) { // OB: graded similarity sqrt(k/10), k = 1..10
    ChangeLogEntry e;
    e.msg = family_tokens(family, 10);
    e.d_e = Date{2021, 3, 1};
    entries.push_back(e);
    int k = i % 10 + 1;
    std::string id = "ob" + std::to_string(i);
    obligating.push_back(
        make_obligating(make_commit(id, family_tokens(family, k), {2021, 3, 1}), apache));
    labels[id] = DetectionType::Obligated;
    ++family;
  }
  for (int i = 0; i < 25; ++i) { // VD: exact text match, commit after the block
    ChangeLogEntry e;
    e.msg = family_tokens(family, 10);
    e.d_e = Date{2021, 1, 31};
    entries.push_back(e);
    std::string id = "vd" + std::to_string(i);
    obligating.push_back(
        make_obligating(make_commit(id, family_tokens(family, 10), {2021, 5, 6}), gpl));
    labels[id] = DetectionType::WrongDate;
    ++family;
  }
  for (int i = 0; i < 25; ++i) { // VN: tokens no entry mentions
    std::string id = "vn" + std::to_string(i);
    std::string msg = "q" + std::to_string(i) + "a q" + std::to_string(i) + "b";
    obligating.push_back(make_obligating(make_commit(id, msg, {2021, 4, 1}), apache));
    labels[id] = DetectionType::MissingNotice;
  }
  for (int i = 0; i < 25; ++i) { // OF
    std::string id = "of" + std::to_string(i);
    free_ids.push_back(id);
    labels[id] = DetectionType::ObligationFree;
  }

  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  auto rows = threshold_sweep(obligating, free_ids, entries, labels, grid);
  if (rows.size() != 9) {
    detail = "expected 9 sweep rows";
    return false;
  }

  const MetricsRow& at03 = rows[2];
  if (std::fabs(at03.macro_precision - 1.0) > 1e-12 ||
      std::fabs(at03.macro_recall - 1.0) > 1e-12) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "at 0.3: macro P %.6f, R %.6f (expected 1, 1)",
                  at03.macro_precision, at03.macro_recall);
    detail = buf;
    return false;
  }
  for (std::size_t i = 2; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].macro_recall > rows[i].macro_recall + 1e-12) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "recall rose from th %.1f to %.1f", rows[i].th,
                    rows[i + 1].th);
      detail = buf;
      return false;
    }
  }
  if (!(rows[8].macro_recall < rows[2].macro_recall - 1e-9)) {
    detail = "recall at 0.9 is not strictly below recall at 0.3";
    return false;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "macro P = R = 1 at 0.3; recall %.4f at 0.9 on 100 labeled commits",
                rows[8].macro_recall);
  detail = buf;
  return true;
}

// ---------------------------------------------------------------- criterion 9

bool performance(std::string& detail, const std::filesystem::path& root) {
  fixture::GitRepo base{root / "perf_base"};
  base.init();
  base.write("LICENSE", kApacheLicenseText);
  for (int i = 0; i < 499; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "src/u%03d.c", i);
    base.write(name, "int unit_" + std::to_string(i) + "(void) { return 0; }\n");
  }
  base.commit_all("base import", "2021-01-01T12:00:00+0000");

  fixture::GitRepo fork{root / "perf_fork"};
  fork.clone_from(base.dir);
  for (int i = 0; i < 199; ++i) {
    char name[32], date[40];
    std::snprintf(name, sizeof name, "src/u%03d.c", i);
    std::snprintf(date, sizeof date, "2021-03-%02dT12:00:00+0000", i % 28 + 1);
    fork.write(name, "int unit_" + std::to_string(i) + "(void) { return 1; }\n");
    fork.commit_all("update unit " + std::to_string(i), date);
  }
  std::string changelog = "## 2021-12-31\n\n";
  for (int i = 0; i < 50; ++i)
    changelog += "- update unit " + std::to_string(i) + " (Alice)\n";
  fork.write("CHANGELOG.md", changelog);
  fork.commit_all("collect change notes", "2021-12-31T12:00:00+0000");

  auto start = std::chrono::steady_clock::now();
  Report r = run_detect(base.dir, fork.dir, {});
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);

  if (r.records.size() != 200) {
    detail = "expected 200 records, got " + std::to_string(r.records.size());
    return false;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "detect over 200 commits / 500 files in %.2f s",
                elapsed.count());
  detail = buf;
  return elapsed.count() < 10.0;
}

} // namespace

int main() {
  std::printf("acceptance suite\n");
  fixture::TempDir tmp;
  FixturePaths fixtures;

  criterion(1, "builtin term database: dominating licenses", dominating_licenses);
  criterion(2, "builtin term database: group assignments", group_assignments);
  criterion(3, "model invariants over 1000 randomized unions", model_invariants);
  criterion(4, "six fixture pairs classify as designed in under 5 s",
            [&](std::string& d) { return fixture_suite(d, tmp.path(), fixtures); });
  criterion(5, "worked changelog example yields exact bounds and author",
            worked_example);
  criterion(6, "fix --write settles every violating fixture",
            [&](std::string& d) { return fix_settles(d, fixtures); });
  criterion(7, "similarity equals the brute-force reference within 1e-9",
            oracle_equivalence);
  criterion(8, "labeled corpus: exact metrics at 0.3, recall falls beyond",
            labeled_corpus);
  criterion(9, "200-commit, 500-file pair detects in under 10 s",
            [&](std::string& d) { return performance(d, tmp.path()); });

  if (failures > 0) {
    std::printf("\n%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("\nall 9 criteria passed\n");
  return 0;
}
