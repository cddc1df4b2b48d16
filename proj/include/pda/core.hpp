#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pda/error.hpp"

namespace pda {

// One cell of a placement delivery array: the star symbol or a nonnegative code.
class Entry {
 public:
  constexpr Entry() = default;

  static constexpr Entry star() { return Entry(); }
  static constexpr Entry code(std::uint32_t value) { return Entry(value); }

  constexpr bool is_star() const { return value_ == kStar; }
  constexpr bool is_code() const { return value_ != kStar; }
  constexpr std::uint32_t value() const { return value_; }

  friend constexpr bool operator==(Entry, Entry) = default;

 private:
  static constexpr std::uint32_t kStar = std::numeric_limits<std::uint32_t>::max();

  constexpr explicit Entry(std::uint32_t v) : value_(v) {}

  std::uint32_t value_ = kStar;
};

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

// Rectangular F x K matrix of entries, no conditions imposed.
class Grid {
 public:
  Grid(std::size_t rows, std::size_t cols, Entry fill = Entry::star())
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw StructuralError("grid must have at least one row and one column");
  }

  explicit Grid(const std::vector<std::vector<Entry>>& rows) {
    if (rows.empty() || rows.front().empty())
      throw StructuralError("grid must have at least one row and one column");
    rows_ = rows.size();
    cols_ = rows.front().size();
    cells_.reserve(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rows[i].size() != cols_) {
        std::ostringstream msg;
        msg << "ragged grid: row " << i << " has " << rows[i].size() << " entries, expected " << cols_;
        throw StructuralError(msg.str());
      }
      cells_.insert(cells_.end(), rows[i].begin(), rows[i].end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Entry at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  Entry at(Cell c) const { return at(c.row, c.col); }
  void set(std::size_t i, std::size_t j, Entry e) { cells_[i * cols_ + j] = e; }

  std::size_t stars_in_column(std::size_t j) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows_; ++i) n += at(i, j).is_star() ? 1 : 0;
    return n;
  }

  std::size_t stars_in_row(std::size_t i) const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < cols_; ++j) n += at(i, j).is_star() ? 1 : 0;
    return n;
  }

  // Distinct codes in ascending order.
  std::vector<std::uint32_t> codes() const {
    std::set<std::uint32_t> seen;
    for (Entry e : cells_)
      if (e.is_code()) seen.insert(e.value());
    return {seen.begin(), seen.end()};
  }

  // Cells holding each code, each list in row-major order.
  std::map<std::uint32_t, std::vector<Cell>> occurrences() const {
    std::map<std::uint32_t, std::vector<Cell>> occ;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j).is_code()) occ[at(i, j).value()].push_back({i, j});
    return occ;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> cells_;
};

// (K, F, Z, S): users/columns, packets/rows, stars per column, distinct codes.
struct Params {
  std::int64_t k = 0;
  std::int64_t f = 0;
  std::int64_t z = 0;
  std::int64_t s = 0;

  friend constexpr bool operator==(const Params&, const Params&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Params& p) {
  return os << '(' << p.k << ',' << p.f << ',' << p.z << ',' << p.s << ')';
}

enum class Rule { C1, C2a, C2b, CodeRange };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::C1: return "C1";
    case Rule::C2a: return "C2a";
    case Rule::C2b: return "C2b";
    case Rule::CodeRange: return "CodeRange";
  }
  return "?";
}

struct Violation {
  Rule rule;
  std::vector<Cell> cells;
  std::string message;
};

struct VerificationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }

  bool has(Rule r) const {
    return std::any_of(violations.begin(), violations.end(), [r](const Violation& v) { return v.rule == r; });
  }

  std::string summary(std::size_t limit = 8) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
      if (i) os << "; ";
      os << to_string(violations[i].rule) << ": " << violations[i].message;
    }
    if (violations.size() > limit) os << "; ... (" << violations.size() - limit << " more)";
    return os.str();
  }
};

struct VerifyOptions {
  // list every offending pair instead of the first one per (rule, code)
  bool all_pairs = false;
  bool check_c1 = true;
  bool check_code_range = true;
};

namespace detail {

inline std::string cell_str(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace detail

// Checks the star-count condition against column 0, the two same-code
// conditions, and that the codes present are exactly {0..S-1}.
inline VerificationReport verify(const Grid& g, const VerifyOptions& opts = {}) {
  VerificationReport report;

  if (opts.check_c1) {
    const std::size_t expected = g.stars_in_column(0);
    for (std::size_t j = 1; j < g.cols(); ++j) {
      const std::size_t got = g.stars_in_column(j);
      if (got != expected) {
        report.violations.push_back({Rule::C1, {Cell{0, j}},
                                     "column " + std::to_string(j) + " has " + std::to_string(got) +
                                         " stars, column 0 has " + std::to_string(expected)});
      }
    }
  }

  const auto occ = g.occurrences();
  for (const auto& [code, cells] : occ) {
    bool reported_a = false;
    bool reported_b = false;
    for (std::size_t x = 0; x < cells.size(); ++x) {
      for (std::size_t y = x + 1; y < cells.size(); ++y) {
        const Cell p = cells[x];
        const Cell q = cells[y];
        if (p.row == q.row || p.col == q.col) {
          if (opts.all_pairs || !reported_a) {
            report.violations.push_back({Rule::C2a, {p, q},
                                         "code " + std::to_string(code) + " repeats in a row or column at " +
                                             detail::cell_str(p) + " and " + detail::cell_str(q)});
            reported_a = true;
          }
        } else if (!g.at(p.row, q.col).is_star() || !g.at(q.row, p.col).is_star()) {
          if (opts.all_pairs || !reported_b) {
            report.violations.push_back({Rule::C2b, {p, q},
                                         "code " + std::to_string(code) + " at " + detail::cell_str(p) + " and " +
                                             detail::cell_str(q) +
                                             " lacks stars at " + detail::cell_str({p.row, q.col}) + " and " +
                                             detail::cell_str({q.row, p.col})});
            reported_b = true;
          }
        }
      }
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.cells.front() < b.cells.front(); });

  if (opts.check_code_range && !occ.empty()) {
    std::uint32_t expect = 0;
    for (const auto& [code, cells] : occ) {
      for (; expect < code; ++expect) {
        report.violations.push_back({Rule::CodeRange, {},
                                     "code " + std::to_string(expect) + " is missing below the largest code " +
                                         std::to_string(occ.rbegin()->first)});
      }
      expect = code + 1;
    }
  }
  return report;
}

// A grid that satisfies every array condition with codes exactly {0..S-1}.
// Immutable once built.
class Pda {
 public:
  static Pda from_grid(Grid g) {
    const VerificationReport report = verify(g);
    if (!report.valid()) throw VerificationError("not a valid PDA: " + report.summary());
    Params p;
    p.k = static_cast<std::int64_t>(g.cols());
    p.f = static_cast<std::int64_t>(g.rows());
    p.z = static_cast<std::int64_t>(g.stars_in_column(0));
    p.s = static_cast<std::int64_t>(g.codes().size());
    return Pda(std::move(g), p);
  }

  const Grid& grid() const { return grid_; }
  const Params& params() const { return params_; }
  std::int64_t k() const { return params_.k; }
  std::int64_t f() const { return params_.f; }
  std::int64_t z() const { return params_.z; }
  std::int64_t s() const { return params_.s; }

  Entry at(std::size_t i, std::size_t j) const { return grid_.at(i, j); }

  friend bool operator==(const Pda& a, const Pda& b) { return a.grid_ == b.grid_; }

 private:
  Pda(Grid g, Params p) : grid_(std::move(g)), params_(p) {}

  Grid grid_;
  Params params_;
};

inline Params params(const Pda& p) { return p.params(); }

// Exact nonnegative fraction in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw PreconditionError("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return g ? Rational{n / g, d / g} : Rational{0, 1};
  }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

struct RateMemory {
  Rational rate;          // S/F
  Rational memory_ratio;  // M/N = Z/F
};

inline RateMemory rate_and_memory(const Pda& p) {
  return {Rational::of(p.s(), p.f()), Rational::of(p.z(), p.f())};
}

// Every row must hold the same number of stars.
inline Pda transpose(const Pda& p) {
  const Grid& g = p.grid();
  const std::size_t first = g.stars_in_row(0);
  for (std::size_t i = 1; i < g.rows(); ++i) {
    const std::size_t n = g.stars_in_row(i);
    if (n != first) {
      throw NotTransposableError(0, i,
                                 "rows 0 and " + std::to_string(i) + " hold " + std::to_string(first) + " and " +
                                     std::to_string(n) + " stars; transpose would break the column star count");
    }
  }
  Grid t(g.cols(), g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t.set(j, i, g.at(i, j));
  return Pda::from_grid(std::move(t));
}

// Raw transpose, no conditions checked.
inline Grid transpose_grid(const Grid& g) {
  Grid t(g.cols(), g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t.set(j, i, g.at(i, j));
  return t;
}

// Adds `offset` to every code. The result keeps the array conditions but its
// code set starts at `offset`, so it is returned as a raw grid.
inline Grid shift(const Grid& g, std::uint32_t offset) {
  Grid out = g;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g.at(i, j).is_code()) out.set(i, j, Entry::code(g.at(i, j).value() + offset));
  return out;
}

inline Grid shift(const Pda& p, std::uint32_t offset) { return shift(p.grid(), offset); }

// Relabels codes to {0..S-1} by first occurrence in row-major order.
inline Pda normalize(const Grid& g) {
  std::map<std::uint32_t, std::uint32_t> relabel;
  Grid out = g;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Entry e = g.at(i, j);
      if (e.is_star()) continue;
      auto [it, fresh] = relabel.try_emplace(e.value(), static_cast<std::uint32_t>(relabel.size()));
      out.set(i, j, Entry::code(it->second));
    }
  }
  return Pda::from_grid(std::move(out));
}

// Closes gaps in the code set while keeping the relative order of codes, so a
// grid whose codes are already {0..S-1} is returned unchanged.
inline Grid compact_codes(const Grid& g) {
  const std::vector<std::uint32_t> present = g.codes();
  Grid out = g;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Entry e = g.at(i, j);
      if (e.is_star()) continue;
      const auto pos = std::lower_bound(present.begin(), present.end(), e.value()) - present.begin();
      out.set(i, j, Entry::code(static_cast<std::uint32_t>(pos)));
    }
  }
  return out;
}

// Removes the given columns; surviving codes are compacted to {0..S'-1}
// in their original relative order.
inline Pda delete_columns(const Pda& p, const std::set<std::size_t>& drop) {
  const Grid& g = p.grid();
  for (std::size_t j : drop)
    if (j >= g.cols()) throw StructuralError("column " + std::to_string(j) + " is out of range");
  if (drop.size() >= g.cols()) throw StructuralError("cannot delete every column");
  if (drop.empty()) return p;
  Grid out(g.rows(), g.cols() - drop.size());
  std::size_t dst = 0;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    if (drop.count(j)) continue;
    for (std::size_t i = 0; i < g.rows(); ++i) out.set(i, dst, g.at(i, j));
    ++dst;
  }
  return Pda::from_grid(compact_codes(out));
}

inline Pda delete_last_columns(const Pda& p, std::size_t count) {
  std::set<std::size_t> drop;
  const auto k = static_cast<std::size_t>(p.k());
  if (count > k) throw StructuralError("cannot delete more columns than exist");
  for (std::size_t j = k - count; j < k; ++j) drop.insert(j);
  return delete_columns(p, drop);
}

}  // namespace pda
