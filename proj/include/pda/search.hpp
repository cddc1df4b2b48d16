#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pda/bounds.hpp"
#include "pda/core.hpp"

// Exact decision of "does a (K,F,Z,S) array exist" by backtracking, and the
// optimality certificate built on top of it.
//
// Columns are filled left to right. For each column a star pattern is chosen,
// then the coded rows receive codes top to bottom. Placing code s at (i,j)
// requires, for every earlier cell (i',j') holding s, that i' != i, that
// (i,j') is a star and that (i',j) is a star. With per-code row and column
// bitmasks that is two subset tests.
//
// Symmetry breaking (optional):
//  - codes are introduced in increasing order of first use;
//  - rows that are all stars so far are interchangeable, so within that
//    group the rows receiving a code in the current column form a prefix
//    and their codes increase downwards.

namespace pda {

enum class SearchStatus { found, none, budget_exceeded };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

struct SearchConfig {
  std::int64_t k = 0;
  std::int64_t f = 0;
  std::int64_t z = 0;
  std::int64_t s = 0;
  std::optional<std::uint64_t> node_budget;
  bool symmetry_breaking = true;
};

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Pda> witness;  // exactly S codes when found
  // least code count among the arrays the search actually built; may be below S
  std::int64_t raw_codes = 0;
  std::uint64_t nodes = 0;
};

namespace detail {

class Backtracker {
 public:
  explicit Backtracker(const SearchConfig& cfg)
      : k_(static_cast<int>(cfg.k)),
        f_(static_cast<int>(cfg.f)),
        z_(static_cast<int>(cfg.z)),
        s_(static_cast<int>(cfg.s)),
        budget_(cfg.node_budget),
        symmetry_(cfg.symmetry_breaking),
        cells_(static_cast<std::size_t>(k_ * f_), -1),
        col_star_(static_cast<std::size_t>(k_), 0),
        row_star_(static_cast<std::size_t>(f_), 0),
        code_rows_(static_cast<std::size_t>(s_), 0),
        code_cols_(static_cast<std::size_t>(s_), 0),
        code_count_(static_cast<std::size_t>(s_), 0),
        reuse_after_(static_cast<std::size_t>(k_) + 1, 0) {
    for (int j = k_ - 1; j >= 0; --j)
      reuse_after_[static_cast<std::size_t>(j)] = reuse_after_[static_cast<std::size_t>(j) + 1] + reuse_cap(j);
  }

  SearchStatus run() {
    const std::uint64_t all_rows = f_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << f_) - 1);
    const bool ok = column(0, all_rows);
    if (aborted_) return SearchStatus::budget_exceeded;
    return ok ? SearchStatus::found : SearchStatus::none;
  }

  std::uint64_t nodes() const { return nodes_; }

  Grid grid() const {
    Grid g(static_cast<std::size_t>(f_), static_cast<std::size_t>(k_));
    for (int i = 0; i < f_; ++i)
      for (int j = 0; j < k_; ++j) {
        const int c = cells_[index(i, j)];
        if (c >= 0) g.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), Entry::code(static_cast<std::uint32_t>(c)));
      }
    return g;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * k_ + j); }

  bool tick() {
    ++nodes_;
    if (budget_ && nodes_ > *budget_) aborted_ = true;
    return !aborted_;
  }

  // Upper bound on how many more cells the codes can still cover from column j on.
  bool capacity_ok(int j) const {
    const std::int64_t cols_left = k_ - j;
    const std::int64_t need = static_cast<std::int64_t>(f_ - z_) * cols_left;
    const std::int64_t per_code = std::min<std::int64_t>({z_ + 1, cols_left, f_});
    std::int64_t cap = 0;
    const int open = symmetry_ ? used_ : s_;
    for (int c = 0; c < open; ++c) {
      const std::int64_t left = std::min<std::int64_t>(z_ + 1 - code_count_[static_cast<std::size_t>(c)],
                                                       f_ - code_count_[static_cast<std::size_t>(c)]);
      cap += std::max<std::int64_t>(0, std::min(left, cols_left));
    }
    cap += static_cast<std::int64_t>(s_ - open) * per_code;
    return cap >= need;
  }

  // A code repeated in column j maps injectively to (starred row of column j,
  // earlier column) via its earliest occurrence, so at most Z*j repeats fit.
  std::int64_t reuse_cap(int j) const { return std::min<std::int64_t>(f_ - z_, static_cast<std::int64_t>(z_) * j); }

  // Cells still to fill must be first occurrences of unused codes or repeats.
  bool supply_ok(int j, std::size_t left_in_column) const {
    const std::int64_t need = static_cast<std::int64_t>(left_in_column) + static_cast<std::int64_t>(f_ - z_) * (k_ - j - 1);
    const std::int64_t supply = (s_ - distinct_) + std::max<std::int64_t>(0, reuse_cap(j) - repeats_) +
                                reuse_after_[static_cast<std::size_t>(j) + 1];
    return need <= supply;
  }

  bool column(int j, std::uint64_t fresh) {
    if (j == k_) return true;
    if (!capacity_ok(j)) return false;

    const int coded = f_ - z_;
    std::vector<int> fresh_rows;
    std::vector<int> other_rows;
    for (int i = 0; i < f_; ++i) ((fresh >> i) & 1 ? fresh_rows : other_rows).push_back(i);

    if (!symmetry_) {
      std::vector<int> all(static_cast<std::size_t>(f_));
      for (int i = 0; i < f_; ++i) all[static_cast<std::size_t>(i)] = i;
      return choose_rows(j, fresh, all, coded, 0, 0);
    }
    const int max_prefix = std::min<int>(coded, static_cast<int>(fresh_rows.size()));
    for (int x = max_prefix; x >= 0; --x) {
      if (coded - x > static_cast<int>(other_rows.size())) continue;
      std::uint64_t prefix = 0;
      for (int i = 0; i < x; ++i) prefix |= std::uint64_t{1} << fresh_rows[static_cast<std::size_t>(i)];
      if (choose_rows(j, fresh, other_rows, coded - x, 0, prefix)) return true;
      if (aborted_) return false;
    }
    return false;
  }

  // Picks `remaining` more coded rows from pool[from..], then fills the column.
  bool choose_rows(int j, std::uint64_t fresh, const std::vector<int>& pool, int remaining, std::size_t from,
                   std::uint64_t coded_mask) {
    if (remaining == 0) return place_pattern(j, fresh, coded_mask);
    for (std::size_t p = from; p + static_cast<std::size_t>(remaining) <= pool.size(); ++p) {
      if (choose_rows(j, fresh, pool, remaining - 1, p + 1, coded_mask | (std::uint64_t{1} << pool[p]))) return true;
      if (aborted_) return false;
    }
    return false;
  }

  bool place_pattern(int j, std::uint64_t fresh, std::uint64_t coded_mask) {
    if (!tick()) return false;
    const std::uint64_t all_rows = f_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << f_) - 1);
    const std::uint64_t stars = all_rows & ~coded_mask;
    col_star_[static_cast<std::size_t>(j)] = stars;
    for (int i = 0; i < f_; ++i)
      if ((stars >> i) & 1) row_star_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    std::vector<int> rows;
    for (int i = 0; i < f_; ++i)
      if ((coded_mask >> i) & 1) rows.push_back(i);
    repeats_ = 0;
    const bool ok = fill(j, fresh, rows, 0, -1);
    for (int i = 0; i < f_; ++i) row_star_[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << j);
    col_star_[static_cast<std::size_t>(j)] = 0;
    return ok;
  }

  bool fill(int j, std::uint64_t fresh, const std::vector<int>& rows, std::size_t idx, int last_fresh_code) {
    if (idx == rows.size()) {
      const int saved = repeats_;
      const bool ok = column(j + 1, fresh & col_star_[static_cast<std::size_t>(j)]);
      repeats_ = saved;
      return ok;
    }
    if (!supply_ok(j, rows.size() - idx)) return false;
    const int i = rows[idx];
    const bool is_fresh = (fresh >> i) & 1;
    const std::uint64_t row_bit = std::uint64_t{1} << i;
    const std::uint64_t col_bit = std::uint64_t{1} << j;
    const std::uint64_t stars_here = col_star_[static_cast<std::size_t>(j)];
    const std::uint64_t stars_in_row = row_star_[static_cast<std::size_t>(i)];
    const int limit = symmetry_ ? std::min(used_ + 1, s_) : s_;
    const int start = symmetry_ && is_fresh ? last_fresh_code + 1 : 0;
    for (int c = start; c < limit; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      if (code_rows_[cu] & row_bit) continue;
      // earlier occurrences must sit in rows starred in this column, and in
      // columns starred in this row (which also excludes column j itself)
      if (code_rows_[cu] & ~stars_here) continue;
      if (code_cols_[cu] & ~stars_in_row) continue;
      if (code_count_[cu] >= z_ + 1) continue;
      if (!tick()) return false;
      const bool opened = c == used_;
      if (opened) ++used_;
      const bool repeat = code_count_[cu] > 0;
      repeat ? ++repeats_ : ++distinct_;
      code_rows_[cu] |= row_bit;
      code_cols_[cu] |= col_bit;
      ++code_count_[cu];
      cells_[index(i, j)] = c;
      // on success the assignment stays in cells_ for grid()
      if (fill(j, fresh, rows, idx + 1, is_fresh ? c : last_fresh_code)) return true;
      cells_[index(i, j)] = -1;
      --code_count_[cu];
      code_cols_[cu] &= ~col_bit;
      code_rows_[cu] &= ~row_bit;
      repeat ? --repeats_ : --distinct_;
      if (opened) --used_;
      if (aborted_) return false;
    }
    return false;
  }

  int k_;
  int f_;
  int z_;
  int s_;
  std::optional<std::uint64_t> budget_;
  bool symmetry_;
  std::vector<int> cells_;
  std::vector<std::uint64_t> col_star_;
  std::vector<std::uint64_t> row_star_;
  std::vector<std::uint64_t> code_rows_;
  std::vector<std::uint64_t> code_cols_;
  std::vector<int> code_count_;
  std::vector<std::int64_t> reuse_after_;  // sum of reuse_cap over columns >= j
  int used_ = 0;
  int distinct_ = 0;  // codes with at least one occurrence
  int repeats_ = 0;   // repeated codes in the current column
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

// Splits codes that occur more than once until exactly `target` codes are in
// use. A singleton code satisfies the same-code conditions vacuously.
inline Grid split_to(Grid g, std::int64_t target) {
  g = compact_codes(g);
  auto occ = g.occurrences();
  auto next = static_cast<std::uint32_t>(occ.size());
  for (auto& [code, cells] : occ) {
    while (static_cast<std::int64_t>(next) < target && cells.size() > 1) {
      const Cell c = cells.back();
      cells.pop_back();
      g.set(c.row, c.col, Entry::code(next++));
    }
  }
  return g;
}

}  // namespace detail

/// Decides whether a (K,F,Z,S) array exists. `none` is a proof of
/// nonexistence; `budget_exceeded` means the node budget ran out first.
inline SearchResult exists_pda(const SearchConfig& cfg) {
  if (cfg.k < 1 || cfg.f < 1) throw PreconditionError("K and F must be positive");
  if (cfg.z < 0 || cfg.z > cfg.f) throw PreconditionError("Z must lie in [0, F]");
  if (cfg.s < 0) throw PreconditionError("S must be nonnegative");
  if (cfg.k > 64 || cfg.f > 64) throw PreconditionError("search supports at most 64 rows and 64 columns");

  SearchResult out;
  const std::int64_t cells = (cfg.f - cfg.z) * cfg.k;
  // every code needs a cell, and the all-distinct array always works
  if (cfg.s > cells) return out;
  if (cfg.s == cells) {
    Grid g(static_cast<std::size_t>(cfg.f), static_cast<std::size_t>(cfg.k));
    std::uint32_t next = 0;
    for (std::size_t j = 0; j < g.cols(); ++j)
      for (std::size_t i = static_cast<std::size_t>(cfg.z); i < g.rows(); ++i) g.set(i, j, Entry::code(next++));
    out.status = SearchStatus::found;
    out.raw_codes = cells;
    out.witness = Pda::from_grid(std::move(g));
    return out;
  }

  detail::Backtracker bt(cfg);
  out.status = bt.run();
  out.nodes = bt.nodes();
  if (out.status == SearchStatus::found) {
    const Grid raw = compact_codes(bt.grid());
    out.raw_codes = static_cast<std::int64_t>(raw.codes().size());
    out.witness = Pda::from_grid(detail::split_to(raw, cfg.s));
  }
  return out;
}

struct MinSearchResult {
  bool decided = false;
  std::int64_t s = 0;  // the minimum when decided
  std::optional<Pda> witness;
  std::int64_t lower = 0;  // bracket when undecided: minimum lies in [lower, upper]
  std::int64_t upper = 0;
  std::uint64_t nodes = 0;
};

struct MinSearchOptions {
  std::optional<std::uint64_t> node_budget;  // per existence query
  bool start_from_bound = true;
  bool symmetry_breaking = true;
  // give up (undecided, lower = max_s + 1) rather than try code counts above this
  std::optional<std::int64_t> max_s;
};

/// Smallest S for which a (K,F,Z,S) array exists. Starts at the best lower
/// bound (or 0) and walks upward; (F-Z)K always succeeds.
inline MinSearchResult exhaustive_min_s(std::int64_t k, std::int64_t f, std::int64_t z,
                                        const MinSearchOptions& opts = {}) {
  MinSearchResult out;
  out.upper = (f - z) * k;
  std::int64_t s = opts.start_from_bound ? best_lower_bound(k, f, z).value : 0;
  out.lower = s;
  const std::int64_t last = opts.max_s ? std::min(*opts.max_s, out.upper) : out.upper;
  for (; s <= last; ++s) {
    SearchConfig cfg{k, f, z, s, opts.node_budget, opts.symmetry_breaking};
    SearchResult r = exists_pda(cfg);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::budget_exceeded) {
      out.lower = s;
      return out;
    }
    if (r.status == SearchStatus::found) {
      out.decided = true;
      // a witness with fewer codes than requested can only appear when the
      // starting bound was too high
      out.s = r.raw_codes;
      out.witness = out.s == s ? std::move(r.witness)
                               : Pda::from_grid(detail::split_to(r.witness->grid(), out.s));
      out.lower = out.upper = out.s;
      return out;
    }
  }
  out.lower = s;
  return out;
}

enum class CertificateKind { bound_matched, search_exhaustive, improvable, undecided };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::bound_matched: return "bound-matched";
    case CertificateKind::search_exhaustive: return "search-exhaustive";
    case CertificateKind::improvable: return "improvable";
    case CertificateKind::undecided: return "undecided";
  }
  return "?";
}

struct Certificate {
  CertificateKind kind = CertificateKind::undecided;
  BoundReport lower;
  std::int64_t achieved = 0;
  // improvable: an array with achieved-1 codes
  std::optional<Pda> witness;
  std::uint64_t nodes = 0;

  bool optimal() const { return kind == CertificateKind::bound_matched || kind == CertificateKind::search_exhaustive; }
};

struct CertifyOptions {
  // instances with K*F above this are not searched
  std::int64_t max_search_cells = 30;
  std::optional<std::uint64_t> node_budget = std::uint64_t{100'000'000};
};

/// Optimal when the best lower bound equals S, or when a complete search
/// shows no array with S-1 codes exists.
inline Certificate certify_optimal(const Pda& p, const CertifyOptions& opts = {}) {
  Certificate cert;
  cert.achieved = p.s();
  cert.lower = best_lower_bound(p.k(), p.f(), p.z());
  if (cert.lower.value > p.s())
    throw VerificationError("lower bound " + std::to_string(cert.lower.value) + " exceeds the code count " +
                            std::to_string(p.s()) + " of a verified array");
  if (cert.lower.value == p.s()) {
    cert.kind = CertificateKind::bound_matched;
    return cert;
  }
  if (p.k() * p.f() > opts.max_search_cells) return cert;

  const SearchResult r = exists_pda({p.k(), p.f(), p.z(), p.s() - 1, opts.node_budget, true});
  cert.nodes = r.nodes;
  switch (r.status) {
    case SearchStatus::none: cert.kind = CertificateKind::search_exhaustive; break;
    case SearchStatus::found:
      cert.kind = CertificateKind::improvable;
      cert.witness = r.witness;
      break;
    case SearchStatus::budget_exceeded: break;
  }
  return cert;
}

}  // namespace pda
