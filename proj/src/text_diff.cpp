#include "mtcheck/text_diff.hpp"

#include <algorithm>
#include <vector>

namespace mtcheck {

namespace {

struct DiffLine {
  std::string text;
  bool has_nl = true; // only the final line of a text can lack its newline

  bool operator==(const DiffLine& o) const {
    return has_nl == o.has_nl && text == o.text;
  }
};

std::vector<DiffLine> split(const std::string& text) {
  std::vector<DiffLine> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back({std::move(cur), true});
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back({std::move(cur), false});
  return out;
}

enum class Op { Keep, Del, Ins };

struct Edit {
  Op op;
  std::size_t old_index; // old lines consumed before/at this op
  std::size_t new_index; // new lines consumed before/at this op
  const DiffLine* line;
};

std::string range_header(std::size_t start, std::size_t count) {
  std::string s = std::to_string(start);
  if (count != 1) s += "," + std::to_string(count);
  return s;
}

} // namespace

std::string unified_diff(const std::string& old_text, const std::string& new_text,
                         const std::string& old_label, const std::string& new_label,
                         std::size_t context) {
  const std::vector<DiffLine> a = split(old_text);
  const std::vector<DiffLine> b = split(new_text);
  if (a == b) return "";

  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      dp[i][j] = a[i] == b[j] ? dp[i + 1][j + 1] + 1
                              : std::max(dp[i + 1][j], dp[i][j + 1]);

  std::vector<Edit> ops;
  ops.reserve(n + m);
  {
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
      if (i < n && j < m && a[i] == b[j]) {
        ops.push_back({Op::Keep, i, j, &a[i]});
        ++i;
        ++j;
      } else if (i < n && (j == m || dp[i + 1][j] >= dp[i][j + 1])) {
        ops.push_back({Op::Del, i, j, &a[i]});
        ++i;
      } else {
        ops.push_back({Op::Ins, i, j, &b[j]});
        ++j;
      }
    }
  }

  // changes separated by at most 2*context kept lines share a hunk
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].op == Op::Keep) continue;
    if (!groups.empty() && k - groups.back().second - 1 <= 2 * context)
      groups.back().second = k;
    else
      groups.emplace_back(k, k);
  }

  std::string out = "--- " + old_label + "\n+++ " + new_label + "\n";
  for (const auto& [first_change, last_change] : groups) {
    std::size_t start = first_change >= context ? first_change - context : 0;
    std::size_t end = std::min(last_change + context, ops.size() - 1);

    std::size_t old_count = 0, new_count = 0;
    std::size_t old_start = ops[start].old_index, new_start = ops[start].new_index;
    bool saw_old = false, saw_new = false;
    for (std::size_t k = start; k <= end; ++k) {
      if (ops[k].op != Op::Ins) {
        ++old_count;
        if (!saw_old) {
          old_start = ops[k].old_index + 1;
          saw_old = true;
        }
      }
      if (ops[k].op != Op::Del) {
        ++new_count;
        if (!saw_new) {
          new_start = ops[k].new_index + 1;
          saw_new = true;
        }
      }
    }

    out += "@@ -" + range_header(old_start, old_count) + " +" +
           range_header(new_start, new_count) + " @@\n";
    for (std::size_t k = start; k <= end; ++k) {
      char prefix = ops[k].op == Op::Keep ? ' ' : ops[k].op == Op::Del ? '-' : '+';
      out += prefix;
      out += ops[k].line->text;
      out += '\n';
      if (!ops[k].line->has_nl) out += "\\ No newline at end of file\n";
    }
  }
  return out;
}

} // namespace mtcheck
