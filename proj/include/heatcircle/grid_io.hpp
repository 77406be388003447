#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"

namespace heatcircle {

/// 17 significant digits: enough for an exact double round trip.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

inline double parse_double(const std::string& tok, const std::string& source, std::size_t line,
                           const char* what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + tok + "'");
  }
  return v;
}

inline std::int64_t parse_int(const std::string& tok, const std::string& source, std::size_t line,
                              const char* what) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + tok + "'");
  }
  return v;
}

}  // namespace detail

/**
 * Grid-function text format:
 *
 *   n_pts circumference origin
 *   index real imag          (n_pts lines, each index 0..n_pts-1 once)
 *
 * Blank lines and lines starting with '#' are ignored.
 */
inline void write_grid_function(std::ostream& out, const GridFunction& f) {
  const CircleGrid& g = f.grid();
  out << g.size() << ' ' << format_number(g.circumference()) << ' ' << format_number(g.origin())
      << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i << ' ' << format_number(f[i].real()) << ' ' << format_number(f[i].imag()) << '\n';
  }
}

inline std::string grid_function_text(const GridFunction& f) {
  std::ostringstream out;
  write_grid_function(out, f);
  return out.str();
}

inline GridFunction read_grid_function(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!detail::is_blank_or_comment(line)) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(source, lineno, "missing header line");
  const auto header = detail::split_ws(line);
  if (header.size() != 3) {
    throw ParseError(source, lineno, "header needs 'n_pts circumference origin'");
  }
  const std::int64_t n = detail::parse_int(header[0], source, lineno, "point count");
  if (n < static_cast<std::int64_t>(CircleGrid::kMinPoints)) {
    throw ParseError(source, lineno, "point count must be >= " +
                                         std::to_string(CircleGrid::kMinPoints));
  }
  const double circumference = detail::parse_double(header[1], source, lineno, "circumference");
  if (!(circumference > 0.0)) throw ParseError(source, lineno, "circumference must be positive");
  const double origin = detail::parse_double(header[2], source, lineno, "origin");
  const CircleGrid grid(static_cast<std::size_t>(n), circumference, origin);

  std::vector<Complex> values(grid.size());
  std::vector<bool> seen(grid.size(), false);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!next_content_line()) {
      throw ParseError(source, lineno, "expected " + std::to_string(n) + " value lines, found " +
                                           std::to_string(k));
    }
    const auto tok = detail::split_ws(line);
    if (tok.size() != 3) throw ParseError(source, lineno, "value line needs 'index real imag'");
    const std::int64_t idx = detail::parse_int(tok[0], source, lineno, "index");
    if (idx < 0 || idx >= n) {
      throw ParseError(source, lineno, "index " + tok[0] + " outside [0, " + header[0] + ")");
    }
    const auto i = static_cast<std::size_t>(idx);
    if (seen[i]) throw ParseError(source, lineno, "duplicate index " + tok[0]);
    seen[i] = true;
    values[i] = {detail::parse_double(tok[1], source, lineno, "real part"),
                 detail::parse_double(tok[2], source, lineno, "imaginary part")};
  }
  if (next_content_line()) throw ParseError(source, lineno, "unexpected trailing content");
  return GridFunction(grid, std::move(values));
}

inline GridFunction parse_grid_function(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return read_grid_function(in, source);
}

inline GridFunction load_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_grid_function(in, path);
}

/// Writes `text` to `path` in one go.
inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace heatcircle
