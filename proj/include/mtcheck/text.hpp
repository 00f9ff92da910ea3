#pragma once

#include <string>
#include <string_view>
#include <vector>

// Shared text helpers used by license detection, clone fingerprinting and
// notice parsing. Everything here is byte-oriented: non-ASCII bytes pass
// through untouched except where noted.
namespace mtcheck::text {

std::string to_lower(std::string_view s);

// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_ws(std::string_view s);

// Splits into lines on \n, dropping a trailing \r per line.
std::vector<std::string> split_lines(std::string_view s);

// Lowercase tokens split on non-alphanumeric bytes; empty tokens dropped.
std::vector<std::string> tokenize(std::string_view s);

// Whitespace-separated words of the lowercased input (punctuation kept).
std::vector<std::string> words(std::string_view s);

// True if s contains needle bounded by non-alphanumeric bytes (or the string
// ends). Case-sensitive.
bool contains_word(std::string_view s, std::string_view needle);

// NUL byte within the leading window marks content as binary.
bool looks_binary(std::string_view content);

bool starts_with(std::string_view s, std::string_view prefix);

} // namespace mtcheck::text
