#pragma once

#include <string>
#include <vector>

namespace schain {

/// One non-comment line of a TSV file, pre-split on tabs.
struct Record {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line number in the source file
};

using TextTable = std::vector<Record>;

/// Reads a UTF-8 text file into tab-split records. Blank lines and lines
/// starting with '#' are skipped; trailing '\r' is stripped.
TextTable read_table(const std::string& path);

/// Same splitting applied to in-memory text (tests, small fixtures).
TextTable parse_table(const std::string& text);

// Strict double parser; returns false on trailing garbage or empty field.
bool parse_double(const std::string& field, double& out);

}  // namespace schain
