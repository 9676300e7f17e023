#include "schain/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "schain/error.hpp"

namespace schain {

namespace {

void append_line(TextTable& table, std::string line, int line_no) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.empty() || line[0] == '#') return;
  Record rec;
  rec.line = line_no;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      rec.fields.push_back(line.substr(start));
      break;
    }
    rec.fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  table.push_back(std::move(rec));
}

}  // namespace

TextTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open " + path);
  TextTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) append_line(table, std::move(line), ++line_no);
  return table;
}

TextTable parse_table(const std::string& text) {
  TextTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) append_line(table, std::move(line), ++line_no);
  return table;
}

bool parse_double(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace schain
