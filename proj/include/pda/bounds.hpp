#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pda/combinatorics.hpp"
#include "pda/error.hpp"

// Lower bounds on S(K,F,Z), the least code count of any (K,F,Z,S) array.
// Everything here is exact integer arithmetic.

namespace pda {

enum class BoundSource { trivial_z0, trivial_zf, recursive, simple, improved, f_minus_2, square, lemma1_refined };

inline const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::trivial_z0: return "trivial-Z0";
    case BoundSource::trivial_zf: return "trivial-ZF";
    case BoundSource::recursive: return "recursive";
    case BoundSource::simple: return "simple";
    case BoundSource::improved: return "improved";
    case BoundSource::f_minus_2: return "f-minus-2";
    case BoundSource::square: return "square";
    case BoundSource::lemma1_refined: return "lemma1-refined";
  }
  return "?";
}

struct BoundReport {
  std::int64_t value = 0;
  BoundSource source = BoundSource::trivial_zf;
  // recursive: the nested ceilings T_1..T_{F-Z}; others: the quantities the
  // formula is built from, first entry is ceil((F-Z)K/F) where it applies
  std::vector<std::int64_t> terms;
  // human-readable derivation, one step per entry
  std::vector<std::string> chain;
};

namespace detail {

inline void check_instance(std::int64_t k, std::int64_t f, std::int64_t z) {
  if (k < 1 || f < 1) throw PreconditionError("K and F must be positive");
  if (z < 0 || z > f) throw PreconditionError("Z must lie in [0, F]");
}

inline std::string kfz(std::int64_t k, std::int64_t f, std::int64_t z) {
  return "(" + std::to_string(k) + "," + std::to_string(f) + "," + std::to_string(z) + ")";
}

}  // namespace detail

/// Nested-ceiling bound: T_1 = ceil((F-Z)K/F), T_i = ceil((F-Z-i+1) T_{i-1} / (F-i+1)),
/// value = T_1 + ... + T_{F-Z}. Z = F gives 0 and Z = 0 gives KF.
inline BoundReport recursive_bound(std::int64_t k, std::int64_t f, std::int64_t z) {
  detail::check_instance(k, f, z);
  BoundReport r;
  if (z == f) {
    r.source = BoundSource::trivial_zf;
    r.chain.push_back("S" + detail::kfz(k, f, z) + " = 0: every cell is a star");
    return r;
  }
  if (z == 0) {
    r.value = k * f;
    r.source = BoundSource::trivial_z0;
    r.chain.push_back("S" + detail::kfz(k, f, z) + " = KF: no stars, every code is a singleton");
    return r;
  }
  r.source = BoundSource::recursive;
  std::int64_t t = ceil_div((f - z) * k, f);
  r.terms.push_back(t);
  for (std::int64_t i = 2; i <= f - z; ++i) {
    t = ceil_div((f - z - i + 1) * t, f - i + 1);
    r.terms.push_back(t);
  }
  for (std::int64_t x : r.terms) r.value += x;
  std::string terms;
  for (std::size_t i = 0; i < r.terms.size(); ++i) terms += (i ? "+" : "") + std::to_string(r.terms[i]);
  r.chain.push_back("recursive row peeling " + detail::kfz(k, f, z) + ": " + terms + " = " + std::to_string(r.value));
  return r;
}

/// ceil((F-Z)K/F) + F - Z - 1, clamped at 0 for Z = F.
inline BoundReport simple_bound(std::int64_t k, std::int64_t f, std::int64_t z) {
  detail::check_instance(k, f, z);
  BoundReport r;
  r.source = BoundSource::simple;
  const std::int64_t t1 = ceil_div((f - z) * k, f);
  r.terms = {t1};
  r.value = std::max<std::int64_t>(0, t1 + f - z - 1);
  r.chain.push_back("simple bound " + detail::kfz(k, f, z) + ": " + std::to_string(t1) + " + " +
                    std::to_string(f - z) + " - 1 = " + std::to_string(r.value));
  return r;
}

/// ceil((F-Z)K/F) + F - Z when both
///   ceil((F-Z-1) T1 / (F-1)) = 1  and  T1 F < ceil((F-Z)K/B) B,  B = T1 + F-Z-1,
/// hold; needs 1 <= Z <= F-2.
inline std::optional<BoundReport> improved_bound(std::int64_t k, std::int64_t f, std::int64_t z) {
  detail::check_instance(k, f, z);
  if (z < 1 || z > f - 2) return std::nullopt;
  const std::int64_t t1 = ceil_div((f - z) * k, f);
  if (ceil_div((f - z - 1) * t1, f - 1) != 1) return std::nullopt;
  const std::int64_t base = t1 + f - z - 1;
  const std::int64_t rhs = ceil_div((f - z) * k, base) * base;
  if (!(t1 * f < rhs)) return std::nullopt;
  BoundReport r;
  r.source = BoundSource::improved;
  r.value = t1 + f - z;
  r.terms = {t1, base, rhs};
  r.chain.push_back("improved bound " + detail::kfz(k, f, z) + ": " + std::to_string(t1) + "*" + std::to_string(f) +
                    " < " + std::to_string(rhs) + ", so S >= " + std::to_string(r.value));
  return r;
}

/// Z = F-2 case of the improved bound: ceil(2K/F) + 2 when K <= F(F-1)/2 and
/// ceil(2K/F) F < ceil(2K/(ceil(2K/F)+1)) (ceil(2K/F)+1).
inline std::optional<BoundReport> f_minus_2_bound(std::int64_t k, std::int64_t f) {
  if (k < 1 || f < 3) return std::nullopt;
  if (2 * k > f * (f - 1)) return std::nullopt;
  const std::int64_t c = ceil_div(2 * k, f);
  const std::int64_t rhs = ceil_div(2 * k, c + 1) * (c + 1);
  if (!(c * f < rhs)) return std::nullopt;
  BoundReport r;
  r.source = BoundSource::f_minus_2;
  r.value = c + 2;
  r.terms = {c, rhs};
  r.chain.push_back("Z=F-2 bound " + detail::kfz(k, f, f - 2) + ": " + std::to_string(c) + "*" + std::to_string(f) +
                    " < " + std::to_string(rhs) + ", so S >= " + std::to_string(r.value));
  return r;
}

/// K = F case: 2(F-Z) when (2F-2Z-1) does not divide (F-Z)F.
inline std::optional<BoundReport> square_bound(std::int64_t f, std::int64_t z) {
  if (f < 1 || z < 0 || z >= f) return std::nullopt;
  const std::int64_t d = 2 * f - 2 * z - 1;
  if (((f - z) * f) % d == 0) return std::nullopt;
  BoundReport r;
  r.source = BoundSource::square;
  r.value = 2 * (f - z);
  r.terms = {d, (f - z) * f};
  r.chain.push_back("square bound " + detail::kfz(f, f, z) + ": " + std::to_string(d) + " does not divide " +
                    std::to_string((f - z) * f) + ", so S >= " + std::to_string(r.value));
  return r;
}

struct Lemma1Outcome {
  bool contradiction = false;
  // induced instance; meaningful when `feasible`
  std::int64_t sub_k = 0;
  std::int64_t sub_f = 0;
  std::int64_t sub_z = 0;
  bool feasible = false;
  std::int64_t sub_bound = 0;
  std::string reason;
};

inline BoundReport best_lower_bound(std::int64_t k, std::int64_t f, std::int64_t z, int depth = 3);

/// Tests the hypothesis that an array with exactly h codes exists. Some code
/// then occurs r = ceil((F-Z)K/h) times; the rows and columns it avoids leave
/// an (r, F-r, Z-r+1) array with at most h-1 codes. A lower bound above h-1
/// on that instance refutes the hypothesis.
///
/// `depth` is passed on to the sub-instance bound; the default 0 keeps it to
/// the closed-form bounds.
inline Lemma1Outcome lemma1_refine(std::int64_t k, std::int64_t f, std::int64_t z, std::int64_t h, int depth = 0) {
  detail::check_instance(k, f, z);
  if (h < 1) throw PreconditionError("lemma1_refine: hypothesis S must be positive");
  if (z > f - 2) throw PreconditionError("lemma1_refine: needs Z <= F-2");
  Lemma1Outcome out;
  const std::int64_t r = ceil_div((f - z) * k, h);
  out.sub_k = r;
  out.sub_f = f - r;
  out.sub_z = z - r + 1;
  if (r > k || r > f || r > z + 1) {
    // a code occupies at most one cell per row and column, and its r cells
    // force r-1 stars into each of its columns
    out.contradiction = true;
    out.reason = "a code would need " + std::to_string(r) + " occurrences, more than any code can have";
    return out;
  }
  if (out.sub_z < 0 || out.sub_f < out.sub_z) {
    out.contradiction = true;
    out.reason = "induced instance " + detail::kfz(out.sub_k, out.sub_f, out.sub_z) + " is infeasible";
    return out;
  }
  out.feasible = true;
  if (out.sub_f == 0) {
    out.sub_bound = 0;
  } else {
    out.sub_bound = best_lower_bound(out.sub_k, out.sub_f, out.sub_z, depth).value;
  }
  out.contradiction = out.sub_bound > h - 1;
  out.reason = "induced instance " + detail::kfz(out.sub_k, out.sub_f, out.sub_z) + " needs at least " +
               std::to_string(out.sub_bound) + (out.contradiction ? " > " : " <= ") + std::to_string(h - 1) + " codes";
  return out;
}

/// Largest applicable bound. Ties go to the earliest of trivial, recursive,
/// simple, improved, f-minus-2, square; except that when F - Z >= 2 the
/// simple bound is named ahead of the recursive one, since equality there
/// means every tail term of the recursion bottomed out at 1.
///
/// Afterwards the value is raised while lemma1_refine refutes it, for at most
/// `depth` rounds. The sub-instances only see the closed-form bounds.
inline BoundReport best_lower_bound(std::int64_t k, std::int64_t f, std::int64_t z, int depth) {
  detail::check_instance(k, f, z);
  if (z == f || z == 0) return recursive_bound(k, f, z);

  std::vector<BoundReport> candidates;
  BoundReport rec = recursive_bound(k, f, z);
  BoundReport simple = simple_bound(k, f, z);
  if (f - z >= 2) {
    candidates.push_back(std::move(simple));
    candidates.push_back(std::move(rec));
  } else {
    candidates.push_back(std::move(rec));
    candidates.push_back(std::move(simple));
  }
  if (auto b = improved_bound(k, f, z)) candidates.push_back(std::move(*b));
  if (z == f - 2)
    if (auto b = f_minus_2_bound(k, f)) candidates.push_back(std::move(*b));
  if (k == f)
    if (auto b = square_bound(f, z)) candidates.push_back(std::move(*b));

  BoundReport best = candidates.front();
  for (const auto& c : candidates)
    if (c.value > best.value) best = c;

  if (z <= f - 2) {
    // S = (F-Z)K is always attainable, so never raise past it
    const std::int64_t cap = (f - z) * k;
    for (int round = 0; round < depth && best.value >= 1 && best.value < cap; ++round) {
      const Lemma1Outcome o = lemma1_refine(k, f, z, best.value);
      if (!o.contradiction) break;
      best.chain.push_back("S = " + std::to_string(best.value) + " refuted: " + o.reason);
      ++best.value;
      best.source = BoundSource::lemma1_refined;
    }
  }
  return best;
}

}  // namespace pda
