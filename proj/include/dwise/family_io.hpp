#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dwise/family.hpp"

namespace dwise::io {

// Text format v1:
//   # comment
//   n=7 k=3
//   1,2,3
//   1,2,4
// JSON: {"n":7,"k":3,"sets":[[1,2,3],[1,2,4]]}
//
// Both readers raise ParseError carrying the offending line.

Family parse_text(std::string_view text);
Family parse_json(std::string_view text);
/// JSON when the first non-blank character is '{', text otherwise.
Family parse_any(std::string_view text);

std::string to_text(const Family& f);
std::string to_json(const Family& f);

Family read_file(const std::string& path);
void write_file(const std::string& path, const Family& f, bool json);

}  // namespace dwise::io
