#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qrefl {

/// One `key = value` entry of a flat text file. Lines starting with `[name]`
/// open a new record; `#` starts a comment.
struct KeyValue {
  std::string section;  // empty before the first [section]
  int record = -1;      // index of the enclosing [section] block, -1 if none
  std::string key;
  std::string value;
  int line = 0;
};

/// Throws std::invalid_argument with the line number on malformed input.
std::vector<KeyValue> parse_key_values(std::string_view text);

/// Strict numeric conversion; throws std::invalid_argument naming `what`.
double parse_double(std::string_view text, std::string_view what);

std::string read_text_file(const std::string& path);

}  // namespace qrefl
