#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pda/combinatorics.hpp"
#include "pda/core.hpp"
#include "pda/text_format.hpp"

namespace pda {

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline std::size_t checked_count(std::uint64_t n, const char* what) {
  // keep constructions at a size that fits in memory comfortably
  constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 26;
  if (n == 0 || n > kMaxCells) throw PreconditionError(std::string(what) + " is too large to build");
  return static_cast<std::size_t>(n);
}

}  // namespace detail

/// The Maddah-Ali--Niesen array. Rows are the t-subsets T of [0,k) in
/// lexicographic order; cell (T, j) is the lexicographic rank of T + {j}
/// among (t+1)-subsets when j is not in T, and a star otherwise.
///
/// Parameters (k, C(k,t), C(k-1,t-1), C(k,t+1)).
inline Pda an_pda(std::int64_t k, std::int64_t t) {
  detail::require(k >= 1, "an_pda: k must be positive");
  detail::require(t >= 0 && t <= k, "an_pda: t must lie in [0, k]");
  const std::size_t rows = detail::checked_count(binomial(k, t) * static_cast<std::uint64_t>(k), "an_pda grid") /
                           static_cast<std::size_t>(k);
  Grid g(rows, static_cast<std::size_t>(k));
  // unused when t = k: every cell is then a star
  const SubsetRank wider(k, std::min(t + 1, k));

  std::vector<std::int64_t> subset(static_cast<std::size_t>(t));
  for (std::int64_t i = 0; i < t; ++i) subset[static_cast<std::size_t>(i)] = i;
  std::vector<std::int64_t> joined;
  std::size_t row = 0;
  do {
    for (std::int64_t j = 0; j < k; ++j) {
      if (std::binary_search(subset.begin(), subset.end(), j)) continue;
      joined = subset;
      joined.insert(std::lower_bound(joined.begin(), joined.end(), j), j);
      g.set(row, static_cast<std::size_t>(j), Entry::code(static_cast<std::uint32_t>(wider.rank(joined))));
    }
    ++row;
  } while (next_subset(subset, k));
  return Pda::from_grid(std::move(g));
}

/// Transposed AN array, parameters (C(k,t), k, t, C(k,t+1)).
inline Pda an_transpose(std::int64_t k, std::int64_t t) { return transpose(an_pda(k, t)); }

/// Side-by-side concatenation; part i has its codes offset by the total
/// code count of parts 0..i-1. All parts must share F and Z.
inline Pda hconcat(std::span<const Pda> parts) {
  detail::require(!parts.empty(), "hconcat: need at least one part");
  if (parts.size() == 1) return parts.front();
  const Pda& first = parts.front();
  std::size_t cols = 0;
  for (const Pda& p : parts) {
    detail::require(p.f() == first.f(), "hconcat: parts must have the same number of rows");
    detail::require(p.z() == first.z(), "hconcat: parts must have the same stars per column");
    cols += static_cast<std::size_t>(p.k());
  }
  Grid g(static_cast<std::size_t>(first.f()), cols);
  std::size_t col0 = 0;
  std::uint32_t offset = 0;
  for (const Pda& p : parts) {
    const Grid shifted = shift(p, offset);
    for (std::size_t i = 0; i < shifted.rows(); ++i)
      for (std::size_t j = 0; j < shifted.cols(); ++j) g.set(i, col0 + j, shifted.at(i, j));
    col0 += shifted.cols();
    offset += static_cast<std::uint32_t>(p.s());
  }
  return Pda::from_grid(std::move(g));
}

inline Pda hconcat_repeat(const Pda& p, std::int64_t copies) {
  detail::require(copies >= 1, "hconcat: need at least one copy");
  const std::vector<Pda> parts(static_cast<std::size_t>(copies), p);
  return hconcat(parts);
}

/// Parts on the diagonal, stars everywhere else. Codes are reused across
/// blocks, so S is the largest part's S. Requires equal F - Z for all parts.
inline Pda block_diagonal(std::span<const Pda> parts) {
  detail::require(!parts.empty(), "block_diagonal: need at least one part");
  if (parts.size() == 1) return parts.front();
  const std::int64_t gap = parts.front().f() - parts.front().z();
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const Pda& p : parts) {
    detail::require(p.f() - p.z() == gap, "block_diagonal: parts must have equal F - Z");
    rows += static_cast<std::size_t>(p.f());
    cols += static_cast<std::size_t>(p.k());
  }
  Grid g(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const Pda& p : parts) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.f()); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(p.k()); ++j) g.set(r0 + i, c0 + j, p.at(i, j));
    r0 += static_cast<std::size_t>(p.f());
    c0 += static_cast<std::size_t>(p.k());
  }
  return Pda::from_grid(std::move(g));
}

inline Pda block_diagonal_repeat(const Pda& p, std::int64_t copies) {
  detail::require(copies >= 1, "block_diagonal: need at least one copy");
  const std::vector<Pda> parts(static_cast<std::size_t>(copies), p);
  return block_diagonal(parts);
}

/// The four block-diagonal families built from AN arrays with t = 0 or
/// t = k - 2:
///   1: (mk, m, m-1, k)              2: (m, mk, (m-1)k, k)
///   3: (mk, mC(k,2), mC(k,2)-k+1, k) 4: (mC(k,2), mk, mk-2, k)
inline Pda z0_family(int variant, std::int64_t m, std::int64_t k) {
  detail::require(m >= 1 && k >= 1, "z0_family: m and k must be positive");
  switch (variant) {
    case 1: return block_diagonal_repeat(an_pda(k, 0), m);
    case 2: return block_diagonal_repeat(an_transpose(k, 0), m);
    case 3:
      detail::require(k >= 2, "z0_family variant 3 needs k >= 2");
      return block_diagonal_repeat(an_pda(k, k - 2), m);
    case 4:
      detail::require(k >= 2, "z0_family variant 4 needs k >= 2");
      return block_diagonal_repeat(an_transpose(k, k - 2), m);
    default: throw PreconditionError("z0_family: variant must be 1, 2, 3 or 4");
  }
}

/// (K, F, F-1, ceil(K/F)): copies of the (F,F,F-1,1) diagonal array side by
/// side, trimmed to K columns from the right.
inline Pda z_f_minus_1(std::int64_t k, std::int64_t f) {
  detail::require(k >= 1 && f >= 1, "z_f_minus_1: K and F must be positive");
  const std::int64_t copies = ceil_div(k, f);
  const Pda wide = hconcat_repeat(an_pda(f, f - 1), copies);
  return delete_last_columns(wide, static_cast<std::size_t>(copies * f - k));
}

/// (K, F, 1, mC(F,2) - (F-kappa)(F-kappa-1)/2) with K = (m-1)F + kappa:
/// copies of the transposed AN array with t = 1, trimmed from the right.
inline Pda z_one(std::int64_t k, std::int64_t f) {
  detail::require(k >= 1, "z_one: K must be positive");
  detail::require(f >= 2, "z_one: F must be at least 2");
  const std::int64_t copies = ceil_div(k, f);
  const Pda wide = hconcat_repeat(an_transpose(f, 1), copies);
  return delete_last_columns(wide, static_cast<std::size_t>(copies * f - k));
}

/// Code count z_one(k, f) attains.
inline std::int64_t z_one_codes(std::int64_t k, std::int64_t f) {
  // K = (m-1)F + kappa, 0 <= kappa < F
  const std::int64_t m = k / f + 1;
  const std::int64_t kappa = k % f;
  return m * static_cast<std::int64_t>(binomial(f, 2)) - (f - kappa) * (f - kappa - 1) / 2;
}

enum class Builtin { P4, P6, P7, P86 };

inline std::optional<Builtin> builtin_from_name(std::string_view name) {
  if (name == "P4" || name == "p4") return Builtin::P4;
  if (name == "P6" || name == "p6") return Builtin::P6;
  if (name == "P7" || name == "p7") return Builtin::P7;
  if (name == "P86" || name == "p86") return Builtin::P86;
  return std::nullopt;
}

/// Hand-built optimal arrays: the square (4,4,1,6), (6,6,3,6), (7,7,4,6)
/// blocks used for Z = F - 3, and an (6,8,5,5) array.
inline Pda builtin(Builtin which) {
  switch (which) {
    case Builtin::P4:
      return pda_from_rows({
          "0 3 5 *",
          "1 4 * 5",
          "2 * 4 3",
          "* 2 1 0",
      });
    case Builtin::P6:
      return pda_from_rows({
          "0 3 5 * * *",
          "1 4 * 5 * *",
          "2 * 4 * 3 *",
          "* 2 * * 0 5",
          "* * 1 0 * 3",
          "* * * 2 1 4",
      });
    case Builtin::P7:
      return pda_from_rows({
          "0 3 5 * * * *",
          "1 4 * 5 * * *",
          "2 * * * 3 5 *",
          "* 2 * * 0 * 5",
          "* * 1 0 * * 4",
          "* * 2 * * 0 3",
          "* * * 2 1 4 *",
      });
    case Builtin::P86:
      return pda_from_rows({
          "0 * * * 3 *",
          "1 3 * * * 4",
          "* 0 1 * * *",
          "2 * 3 * * *",
          "* 2 * 1 * *",
          "* * 4 0 2 *",
          "* * * * 1 0",
          "* * * 3 * 2",
      });
  }
  throw PreconditionError("unknown builtin array");
}

inline Pda builtin(std::string_view name) {
  const auto which = builtin_from_name(name);
  if (!which) throw PreconditionError("unknown builtin array '" + std::string(name) + "'");
  return builtin(*which);
}

/// (F, F, F-3, 6) for F > 10 with 5 not dividing F. F = 4a + 6b + 7c with
/// b, c in {0,1} picked by F mod 4; blocks are laid out P4 x a, then P6,
/// then P7.
inline Pda z_f_minus_3(std::int64_t f) {
  detail::require(f > 10, "z_f_minus_3: F must exceed 10");
  detail::require(f % 5 != 0, "z_f_minus_3: F must not be divisible by 5");
  std::int64_t six = 0;
  std::int64_t seven = 0;
  switch (f % 4) {
    case 0: break;
    case 1: six = seven = 1; break;
    case 2: six = 1; break;
    case 3: seven = 1; break;
  }
  const std::int64_t fours = (f - 6 * six - 7 * seven) / 4;
  std::vector<Pda> parts(static_cast<std::size_t>(fours), builtin(Builtin::P4));
  if (six) parts.push_back(builtin(Builtin::P6));
  if (seven) parts.push_back(builtin(Builtin::P7));
  return block_diagonal(parts);
}

/// (n^2/2, n, n-2, n+2) for even n: the transposed AN array with t = n-2
/// next to family 2 with m = n/2, k = 2.
inline Pda comb(std::int64_t n) {
  detail::require(n >= 2 && n % 2 == 0, "comb: n must be a positive even integer");
  const Pda parts[] = {an_transpose(n, n - 2), z0_family(2, n / 2, 2)};
  return hconcat(parts);
}

/// m copies of `base` on the diagonal with the last kappa columns removed.
/// `base` must be a (K0,F0,Z0,S0) array with F0 | (F0-Z0)K0 and
/// S0 = (F0-Z0)K0/F0 + F0-Z0-1; kappa < mF0/(F0-Z0).
inline Pda lemma3_delete(const Pda& base, std::int64_t m, std::int64_t kappa) {
  const std::int64_t k0 = base.k();
  const std::int64_t f0 = base.f();
  const std::int64_t z0 = base.z();
  detail::require(m >= 2, "lemma3_delete: m must be at least 2");
  detail::require(kappa >= 0, "lemma3_delete: kappa must be nonnegative");
  detail::require(f0 > z0, "lemma3_delete: base must contain codes (F0 > Z0)");
  detail::require(((f0 - z0) * k0) % f0 == 0, "lemma3_delete: F0 must divide (F0-Z0)K0");
  detail::require(base.s() == (f0 - z0) * k0 / f0 + f0 - z0 - 1,
                  "lemma3_delete: base S must equal (F0-Z0)K0/F0 + F0-Z0-1");
  detail::require(kappa * (f0 - z0) < m * f0, "lemma3_delete: kappa must be below mF0/(F0-Z0)");
  return delete_last_columns(block_diagonal_repeat(base, m), static_cast<std::size_t>(kappa));
}

enum class Theorem10Variant { a, b };

/// a: (mk - kappa, mC(k,2), mC(k,2)-k+1, k) from the AN array with t = k-2.
/// b: (mC(k,2) - kappa, mk, mk-2, k) from its transpose.
inline Pda theorem10(std::int64_t k, std::int64_t m, std::int64_t kappa, Theorem10Variant variant) {
  detail::require(k >= 2, "theorem10: k must be at least 2");
  detail::require(m >= 2, "theorem10: m must be at least 2");
  detail::require(kappa >= 0 && 2 * kappa < m * k, "theorem10: kappa must lie in [0, mk/2)");
  const Pda base = variant == Theorem10Variant::a ? an_pda(k, k - 2) : an_transpose(k, k - 2);
  return lemma3_delete(base, m, kappa);
}

struct FMinus2Plan {
  std::int64_t n = 0;  // K / F
  std::int64_t a = 0;
  std::int64_t b = 0;  // F = 2an + b, 0 <= b < 2a
  std::int64_t codes = 0;
};

/// Chooses the decomposition F = 2an + b used by z_f_minus_2. When
/// (2n+1) | F the split b = a is taken, otherwise a = F div 2n, b = F mod 2n.
inline FMinus2Plan plan_z_f_minus_2(std::int64_t k, std::int64_t f) {
  detail::require(k >= 1 && f >= 1, "z_f_minus_2: K and F must be positive");
  detail::require(k % f == 0, "z_f_minus_2: F must divide K");
  detail::require(f * f * f >= 2 * k * k, "z_f_minus_2: needs F^3 >= 2K^2");
  FMinus2Plan plan;
  plan.n = k / f;
  if (f % (2 * plan.n + 1) == 0) {
    plan.a = plan.b = f / (2 * plan.n + 1);
    plan.codes = 2 * plan.n + 1;
  } else {
    plan.a = f / (2 * plan.n);
    plan.b = f % (2 * plan.n);
    plan.codes = 2 * plan.n + 2;
  }
  return plan;
}

/// (K, F, F-2, S) for F | K and F^3 >= 2K^2, with S = 2K/F + 1 when
/// (2K/F + 1) | F and 2K/F + 2 otherwise.
inline Pda z_f_minus_2(std::int64_t k, std::int64_t f) {
  const FMinus2Plan plan = plan_z_f_minus_2(k, f);
  const std::int64_t n = plan.n;
  const std::int64_t a = plan.a;
  const std::int64_t b = plan.b;
  if (b == a) return z0_family(4, a, 2 * n + 1);

  const Pda odd = an_transpose(2 * n + 1, 2 * n - 1);  // (n(2n+1), 2n+1, 2n-1, 2n+1)
  std::vector<Pda> parts;
  if (b < a) {
    const Pda even = comb(2 * n);  // (2n^2, 2n, 2n-2, 2n+2)
    parts.assign(static_cast<std::size_t>(a - b), even);
    parts.insert(parts.end(), static_cast<std::size_t>(b), odd);
  } else {
    // (n(2n+2), 2n+2, 2n, 2n+2)
    const Pda trimmed = delete_last_columns(an_transpose(2 * n + 2, 2 * n), static_cast<std::size_t>(n + 1));
    parts.assign(static_cast<std::size_t>(b - a), trimmed);
    parts.insert(parts.end(), static_cast<std::size_t>(2 * a - b), odd);
  }
  return block_diagonal(parts);
}

}  // namespace pda
