#pragma once

#include <string_view>

// Built-in copies of the shipped data tables, embedded at build time.
namespace mtcheck::data {

std::string_view mt_database();
std::string_view extension_map();
std::string_view license_templates();
std::string_view license_aliases();
std::string_view notice_patterns();

} // namespace mtcheck::data
