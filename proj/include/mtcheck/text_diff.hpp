#pragma once

#include <cstddef>
#include <string>

namespace mtcheck {

// Unified diff of two texts. Returns "" when the texts are equal; otherwise
// "--- old_label / +++ new_label" headers followed by hunks with `context`
// unchanged lines around each change. Changes separated by at most 2*context
// unchanged lines share a hunk. A missing final newline is flagged with the
// usual backslash marker line.
std::string unified_diff(const std::string& old_text, const std::string& new_text,
                         const std::string& old_label, const std::string& new_label,
                         std::size_t context = 3);

} // namespace mtcheck
