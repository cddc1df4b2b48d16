#pragma once

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pda/core.hpp"

// PDA text format v1:
//
//   pda v1
//   K=<int> F=<int> Z=<int> S=<int>
//   <F lines of K tokens, each '*' or a code in [0,S)>
//
// Serialization uses single spaces and ends with a newline.

namespace pda {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline bool parse_uint(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline Entry parse_token(std::string_view tok, std::size_t line_no) {
  if (tok == "*") return Entry::star();
  std::int64_t v = 0;
  if (!parse_uint(tok, v) || v >= static_cast<std::int64_t>(std::numeric_limits<std::uint32_t>::max()))
    throw StructuralError("line " + std::to_string(line_no) + ": bad token '" + std::string(tok) + "'");
  return Entry::code(static_cast<std::uint32_t>(v));
}

}  // namespace detail

// Whitespace-separated rows such as {"* * 0 1", "* 0 * 2"}; no validation.
inline Grid grid_from_rows(const std::vector<std::string>& rows) {
  std::vector<std::vector<Entry>> cells;
  std::size_t n = 0;
  for (const auto& r : rows) {
    ++n;
    std::vector<Entry> row;
    for (const auto& tok : detail::split_ws(r)) row.push_back(detail::parse_token(tok, n));
    cells.push_back(std::move(row));
  }
  return Grid(cells);
}

inline Pda pda_from_rows(const std::vector<std::string>& rows) { return Pda::from_grid(grid_from_rows(rows)); }

inline std::string format_rows(const Grid& g) {
  std::string out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j) out += ' ';
      const Entry e = g.at(i, j);
      out += e.is_star() ? std::string("*") : std::to_string(e.value());
    }
    out += '\n';
  }
  return out;
}

inline std::string serialize(const Pda& p) {
  std::string out = "pda v1\n";
  out += "K=" + std::to_string(p.k()) + " F=" + std::to_string(p.f()) + " Z=" + std::to_string(p.z()) +
         " S=" + std::to_string(p.s()) + "\n";
  out += format_rows(p.grid());
  return out;
}

struct RawPda {
  Params header;
  Grid grid;
};

// Reads one array in the text format, checking only its shape: header
// fields, row and token counts, and codes below the declared S.
inline RawPda parse_raw(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line() || detail::split_ws(line) != std::vector<std::string>{"pda", "v1"})
    throw StructuralError("missing 'pda v1' header");
  if (!next_line()) throw StructuralError("missing parameter line");

  const auto fields = detail::split_ws(line);
  const char* names[] = {"K=", "F=", "Z=", "S="};
  std::int64_t vals[4] = {};
  if (fields.size() != 4) throw StructuralError("parameter line must read 'K=<int> F=<int> Z=<int> S=<int>'");
  for (int i = 0; i < 4; ++i) {
    const std::string& f = fields[static_cast<std::size_t>(i)];
    if (f.rfind(names[i], 0) != 0 || !detail::parse_uint(std::string_view(f).substr(2), vals[i]))
      throw StructuralError("bad parameter field '" + f + "', expected " + names[i] + "<int>");
  }
  const Params header{vals[0], vals[1], vals[2], vals[3]};
  if (header.k <= 0 || header.f <= 0) throw StructuralError("K and F must be positive");

  std::vector<std::vector<Entry>> rows;
  for (std::int64_t i = 0; i < header.f; ++i) {
    if (!next_line()) throw StructuralError("expected " + std::to_string(header.f) + " rows, got " + std::to_string(i));
    const auto toks = detail::split_ws(line);
    if (static_cast<std::int64_t>(toks.size()) != header.k)
      throw StructuralError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.k) +
                            " tokens, got " + std::to_string(toks.size()));
    std::vector<Entry> row;
    for (const auto& t : toks) {
      const Entry e = detail::parse_token(t, line_no);
      if (e.is_code() && static_cast<std::int64_t>(e.value()) >= header.s)
        throw StructuralError("line " + std::to_string(line_no) + ": code " + t + " is outside [0,S)");
      row.push_back(e);
    }
    rows.push_back(std::move(row));
  }
  if (next_line()) throw StructuralError("line " + std::to_string(line_no) + ": trailing content after the array");
  return {header, Grid(rows)};
}

// Reads one PDA. The header must agree with the parameters the body verifies to.
inline Pda parse(std::istream& in) {
  RawPda raw = parse_raw(in);
  Pda p = Pda::from_grid(std::move(raw.grid));
  if (p.params() != raw.header) {
    std::ostringstream os;
    os << "header declares " << raw.header << " but the array has " << p.params();
    throw VerificationError(os.str());
  }
  return p;
}

inline Pda parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse(is);
}

}  // namespace pda
