#include "schain/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "schain/error.hpp"
#include "schain/text_io.hpp"

namespace schain {

namespace {

std::string trim(std::string_view s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return std::string(s.substr(lo, hi - lo));
}

template <typename T>
T parse_or_throw(const std::string& key, const std::string& text) {
  T out{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorKind::BadConfig, "bad value '" + text + "' for " + key);
  return out;
}

void apply_pair(const std::string& key, const std::string& value, SchainConfig& config) {
  if (key == "k")
    config.k = parse_or_throw<int>(key, value);
  else if (key == "alpha")
    config.alpha = parse_or_throw<double>(key, value);
  else if (key == "gamma")
    config.gamma = parse_or_throw<double>(key, value);
  else if (key == "epsilon")
    config.epsilon = parse_or_throw<double>(key, value);
  else if (key == "max_iter")
    config.max_iter = parse_or_throw<int>(key, value);
  else if (key == "seed")
    config.seed = parse_or_throw<std::uint64_t>(key, value);
  else if (key == "tol_f")
    config.tol_f = parse_or_throw<double>(key, value);
  else if (key == "kmeans_restarts")
    config.kmeans_restarts = parse_or_throw<int>(key, value);
  else
    throw Error(ErrorKind::BadConfig, "unknown config key '" + key + "'");
}

void apply_stream(std::istream& in, SchainConfig& config) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "expected key = value at line " << line_no;
      throw Error(ErrorKind::BadConfig, os.str());
    }
    apply_pair(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)), config);
  }
}

}  // namespace

void apply_config_file(const std::string& path, SchainConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open " + path);
  apply_stream(in, config);
}

void apply_config_text(const std::string& text, SchainConfig& config) {
  std::istringstream in(text);
  apply_stream(in, config);
}

}  // namespace schain
