#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pda/core.hpp"
#include "pda/families.hpp"
#include "pda/text_format.hpp"

namespace pda::testing {

// Arrays as printed in the source material, row by row.
namespace printed {

inline const std::vector<std::string> an_4_2 = {
    "* * 0 1", "* 0 * 2", "* 1 2 *", "0 * * 3", "1 * 3 *", "2 3 * *",
};

inline const std::vector<std::string> an_4_2_transposed = {
    "* * * 0 1 2",
    "* 0 1 * * 3",
    "0 * 2 * 3 *",
    "1 2 * 3 * *",
};

inline const std::vector<std::string> two_transposed_side_by_side = {
    "* * * 0 1 2 * * * 4 5 6",
    "* 0 1 * * 3 * 4 5 * * 7",
    "0 * 2 * 3 * 4 * 6 * 7 *",
    "1 2 * 3 * * 5 6 * 7 * *",
};

inline const std::vector<std::string> p86 = {
    "0 * * * 3 *", "1 3 * * * 4", "* 0 1 * * *", "2 * 3 * * *",
    "* 2 * 1 * *", "* * 4 0 2 *", "* * * * 1 0", "* * * 3 * 2",
};

inline const std::vector<std::string> z0_1_m2_k2 = {"0 1 * *", "* * 0 1"};
inline const std::vector<std::string> z0_2_m2_k2 = {"0 *", "1 *", "* 0", "* 1"};

inline const std::vector<std::string> z0_3_m2_k4 = {
    "* * 0 1 * * * *", "* 0 * 2 * * * *", "* 1 2 * * * * *", "0 * * 3 * * * *",
    "1 * 3 * * * * *", "2 3 * * * * * *", "* * * * * * 0 1", "* * * * * 0 * 2",
    "* * * * * 1 2 *", "* * * * 0 * * 3", "* * * * 1 * 3 *", "* * * * 2 3 * *",
};

inline const std::vector<std::string> z0_4_m2_k4 = {
    "* * * 0 1 2 * * * * * *", "* 0 1 * * 3 * * * * * *", "0 * 2 * 3 * * * * * * *",
    "1 2 * 3 * * * * * * * *", "* * * * * * * * * 0 1 2", "* * * * * * * 0 1 * * 3",
    "* * * * * * 0 * 2 * 3 *", "* * * * * * 1 2 * 3 * *",
};

inline const std::vector<std::string> comb_4 = {
    "* * * 0 1 2 4 *",
    "* 0 1 * * 3 5 *",
    "0 * 2 * 3 * * 4",
    "1 2 * 3 * * * 5",
};

inline const std::vector<std::string> diag_6_3 = {"0 * * 1 * *", "* 0 * * 1 *", "* * 0 * * 1"};
inline const std::vector<std::string> diag_5_3 = {"0 * * 1 *", "* 0 * * 1", "* * 0 * *"};

inline const std::vector<std::string> square_4_1 = {"0 1 2 *", "3 4 * 2", "5 * 4 1", "* 5 3 0"};

inline const std::vector<std::string> z1_7_4 = {
    "0 1 2 * 6 7 8",
    "3 4 * 2 9 10 *",
    "5 * 4 1 11 * 10",
    "* 5 3 0 * 11 9",
};

}  // namespace printed

inline bool same_cells(const Grid& a, const Grid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

// Equal up to a row permutation, a column permutation and a renaming of the
// codes. Plain brute force, meant for arrays with a few rows and columns.
inline bool isomorphic(const Grid& a, const Grid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<std::size_t> rp(a.rows()), cp(a.cols());
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      std::map<std::uint32_t, std::uint32_t> fwd, back;
      bool ok = true;
      for (std::size_t i = 0; ok && i < a.rows(); ++i)
        for (std::size_t j = 0; ok && j < a.cols(); ++j) {
          const Entry x = a.at(rp[i], cp[j]);
          const Entry y = b.at(i, j);
          if (x.is_star() != y.is_star()) {
            ok = false;
          } else if (x.is_code()) {
            auto [f, fnew] = fwd.emplace(x.value(), y.value());
            auto [r, rnew] = back.emplace(y.value(), x.value());
            ok = f->second == y.value() && r->second == x.value();
          }
        }
      if (ok) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

// Random row order, column order and code names; keeps the array a PDA.
inline Grid scramble(const Grid& g, std::mt19937_64& rng) {
  std::vector<std::size_t> rp(g.rows()), cp(g.cols());
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  const auto codes = g.codes();
  std::vector<std::uint32_t> names(codes.begin(), codes.end());
  std::vector<std::uint32_t> shuffled = names;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::map<std::uint32_t, std::uint32_t> rename;
  for (std::size_t i = 0; i < names.size(); ++i) rename[names[i]] = shuffled[i];
  Grid out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Entry e = g.at(rp[i], cp[j]);
      out.set(i, j, e.is_star() ? e : Entry::code(rename.at(e.value())));
    }
  return out;
}

// A small random family member, kept below `max_cells` cells.
inline FamilySpec random_spec(std::mt19937_64& rng, std::int64_t max_cells = 400) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  for (;;) {
    FamilySpec s;
    switch (pick(0, 10)) {
      case 0: s = {"an-pda", {{"k", pick(1, 6)}}}; s.bind["t"] = pick(0, s.bind["k"]); break;
      case 1: s = {"an-transpose", {{"k", pick(1, 6)}}}; s.bind["t"] = pick(0, s.bind["k"]); break;
      case 2: s = {"hconcat-repeat", {{"k", pick(2, 5)}, {"m", pick(1, 3)}}}; s.bind["t"] = pick(0, s.bind["k"] - 1); break;
      case 3: s = {"block-diagonal", {{"k", pick(2, 5)}, {"m", pick(1, 3)}}}; s.bind["t"] = pick(0, s.bind["k"] - 1); break;
      case 4: s = {"z0-family-" + std::to_string(pick(1, 4)), {{"m", pick(1, 3)}, {"k", pick(2, 5)}}}; break;
      case 5: s = {"z-f-minus-1", {{"K", pick(1, 20)}, {"F", pick(1, 6)}}}; break;
      case 6: s = {"z-one", {{"K", pick(1, 20)}, {"F", pick(2, 6)}}}; break;
      case 7: s = {"comb", {{"n", 2 * pick(1, 4)}}}; break;
      case 8: {
        const auto k = pick(2, 5), m = pick(2, 3);
        s = {pick(0, 1) ? "theorem10-a" : "theorem10-b", {{"k", k}, {"m", m}, {"kappa", pick(0, (m * k - 1) / 2)}}};
        break;
      }
      case 9: {
        const auto f = pick(3, 12);
        s = {"z-f-minus-2", {{"F", f}, {"K", f * pick(1, 2)}}};
        if (2 * s.bind["K"] * s.bind["K"] > f * f * f) continue;
        break;
      }
      default: s = {std::vector<std::string>{"p4", "p6", "p7", "p86"}[static_cast<std::size_t>(pick(0, 3))], {}}; break;
    }
    const Params p = claimed_params(s);
    if (p.k * p.f <= max_cells) return s;
  }
}

// Next restricted growth string, i.e. the next set partition.
inline bool next_partition(std::vector<std::uint32_t>& a) {
  for (std::size_t pos = a.size(); pos-- > 1;) {
    if (a[pos] <= *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(pos))) {
      ++a[pos];
      std::fill(a.begin() + static_cast<std::ptrdiff_t>(pos) + 1, a.end(), 0);
      return true;
    }
  }
  return false;
}

// Independent minimum-S oracle: every star pattern with Z stars per column,
// every set partition of the coded cells, keep the smallest partition that
// verifies. Only for instances with a handful of coded cells.
inline std::optional<std::int64_t> naive_min_s(std::int64_t k, std::int64_t f, std::int64_t z) {
  const auto rows = static_cast<std::size_t>(f), cols = static_cast<std::size_t>(k);
  std::vector<std::uint64_t> patterns;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f); ++mask)
    if (std::popcount(mask) == z) patterns.push_back(mask);
  std::optional<std::int64_t> best;
  std::vector<std::size_t> choice(cols, 0);
  for (;;) {
    Grid g(rows, cols);
    std::vector<Cell> coded;
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i)
        if (!((patterns[choice[j]] >> i) & 1)) coded.push_back({i, j});
    // restricted growth strings enumerate set partitions once each
    std::vector<std::uint32_t> label(coded.size(), 0);
    for (;;) {
      std::uint32_t blocks = 0;
      for (std::size_t c = 0; c < coded.size(); ++c) {
        g.set(coded[c].row, coded[c].col, Entry::code(label[c]));
        blocks = std::max(blocks, label[c] + 1);
      }
      if ((!best || blocks < *best) && verify(g).valid()) best = blocks;
      if (!next_partition(label)) break;
    }
    std::size_t j = 0;
    while (j < cols && ++choice[j] == patterns.size()) choice[j++] = 0;
    if (j == cols) break;
  }
  return best;
}

}  // namespace pda::testing
