#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pda/combinatorics.hpp"
#include "pda/constructions.hpp"

// Named construction families with their parameter bindings, so that the
// CLI and the parameter sweeps address constructions the same way.

namespace pda {

struct FamilySpec {
  std::string id;
  std::map<std::string, std::int64_t> bind;  // keys: k t m kappa n K F

  std::int64_t get(const std::string& key) const {
    auto it = bind.find(key);
    if (it == bind.end()) throw PreconditionError("family '" + id + "' needs --" + key);
    return it->second;
  }

  std::string str() const {
    std::string out = id;
    for (const auto& [key, v] : bind) out += " " + key + "=" + std::to_string(v);
    return out;
  }
};

struct FamilyInfo {
  std::string id;
  std::vector<std::string> keys;
  std::string params;      // claimed (K,F,Z,S) as a formula
  std::string provenance;  // which result the family realizes
  std::function<Pda(const FamilySpec&)> build;
  std::function<Params(const FamilySpec&)> claimed;
};

namespace detail {

inline std::int64_t choose(std::int64_t n, std::int64_t r) { return static_cast<std::int64_t>(binomial(n, r)); }

}  // namespace detail

inline const std::vector<FamilyInfo>& families() {
  using detail::choose;
  static const std::vector<FamilyInfo> all = {
      {"an-pda", {"k", "t"}, "(k, C(k,t), C(k-1,t-1), C(k,t+1))",
       "Maddah-Ali--Niesen scheme as an array; optimal",
       [](const FamilySpec& s) { return an_pda(s.get("k"), s.get("t")); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), t = s.get("t");
         return Params{k, choose(k, t), choose(k - 1, t - 1), choose(k, t + 1)};
       }},
      {"an-transpose", {"k", "t"}, "(C(k,t), k, t, C(k,t+1))", "transpose of the AN array; optimal",
       [](const FamilySpec& s) { return an_transpose(s.get("k"), s.get("t")); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), t = s.get("t");
         return Params{choose(k, t), k, t, choose(k, t + 1)};
       }},
      {"hconcat-repeat", {"k", "t", "m"}, "(mC(k,t), k, t, mC(k,t+1))",
       "m transposed AN arrays side by side with code offsets; optimal",
       [](const FamilySpec& s) { return hconcat_repeat(an_transpose(s.get("k"), s.get("t")), s.get("m")); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), t = s.get("t"), m = s.get("m");
         return Params{m * choose(k, t), k, t, m * choose(k, t + 1)};
       }},
      {"block-diagonal", {"k", "t", "m"}, "(mk, mC(k,t), mC(k,t)-C(k,t)+C(k-1,t-1), C(k,t+1))",
       "m AN arrays on the diagonal, codes shared across blocks",
       [](const FamilySpec& s) { return block_diagonal_repeat(an_pda(s.get("k"), s.get("t")), s.get("m")); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), t = s.get("t"), m = s.get("m");
         const auto f = choose(k, t);
         return Params{m * k, m * f, m * f - f + choose(k - 1, t - 1), choose(k, t + 1)};
       }},
      {"z0-family-1", {"m", "k"}, "(mk, m, m-1, k)", "block diagonal of m (k,1,0,k) rows; optimal",
       [](const FamilySpec& s) { return z0_family(1, s.get("m"), s.get("k")); },
       [](const FamilySpec& s) {
         const auto m = s.get("m"), k = s.get("k");
         return Params{m * k, m, m - 1, k};
       }},
      {"z0-family-2", {"m", "k"}, "(m, mk, (m-1)k, k)", "block diagonal of m (1,k,0,k) columns; optimal",
       [](const FamilySpec& s) { return z0_family(2, s.get("m"), s.get("k")); },
       [](const FamilySpec& s) {
         const auto m = s.get("m"), k = s.get("k");
         return Params{m, m * k, (m - 1) * k, k};
       }},
      {"z0-family-3", {"m", "k"}, "(mk, mC(k,2), mC(k,2)-k+1, k)",
       "block diagonal of m AN arrays with t = k-2; optimal",
       [](const FamilySpec& s) { return z0_family(3, s.get("m"), s.get("k")); },
       [](const FamilySpec& s) {
         const auto m = s.get("m"), k = s.get("k");
         return Params{m * k, m * choose(k, 2), m * choose(k, 2) - k + 1, k};
       }},
      {"z0-family-4", {"m", "k"}, "(mC(k,2), mk, mk-2, k)",
       "block diagonal of m transposed AN arrays with t = k-2; optimal",
       [](const FamilySpec& s) { return z0_family(4, s.get("m"), s.get("k")); },
       [](const FamilySpec& s) {
         const auto m = s.get("m"), k = s.get("k");
         return Params{m * choose(k, 2), m * k, m * k - 2, k};
       }},
      {"z-f-minus-1", {"K", "F"}, "(K, F, F-1, ceil(K/F))",
       "diagonal (F,F,F-1,1) blocks side by side, trimmed to K columns; optimal for all K, F",
       [](const FamilySpec& s) { return z_f_minus_1(s.get("K"), s.get("F")); },
       [](const FamilySpec& s) {
         const auto k = s.get("K"), f = s.get("F");
         return Params{k, f, f - 1, ceil_div(k, f)};
       }},
      {"z-one", {"K", "F"}, "(K, F, 1, mC(F,2) - (F-kappa)(F-kappa-1)/2), K = (m-1)F + kappa",
       "transposed AN arrays with t = 1 side by side, trimmed to K columns; optimal for all K, F",
       [](const FamilySpec& s) { return z_one(s.get("K"), s.get("F")); },
       [](const FamilySpec& s) {
         const auto k = s.get("K"), f = s.get("F");
         return Params{k, f, 1, z_one_codes(k, f)};
       }},
      {"z-f-minus-3", {"F"}, "(F, F, F-3, 6)",
       "block diagonal of the P4, P6, P7 squares; optimal for F > 10, 5 not dividing F",
       [](const FamilySpec& s) { return z_f_minus_3(s.get("F")); },
       [](const FamilySpec& s) {
         const auto f = s.get("F");
         return Params{f, f, f - 3, 6};
       }},
      {"z-f-minus-2", {"K", "F"}, "(K, F, F-2, 2K/F+1 if (2K/F+1) | F else 2K/F+2)",
       "block diagonal mixing comb and transposed AN blocks; optimal for F | K, F^3 >= 2K^2",
       [](const FamilySpec& s) { return z_f_minus_2(s.get("K"), s.get("F")); },
       [](const FamilySpec& s) {
         const auto k = s.get("K"), f = s.get("F");
         const auto c = 2 * k / f + 1;
         return Params{k, f, f - 2, f % c == 0 ? c : c + 1};
       }},
      {"comb", {"n"}, "(n^2/2, n, n-2, n+2)",
       "transposed AN array (t = n-2) beside z0-family-2 (m = n/2, k = 2); optimal for even n",
       [](const FamilySpec& s) { return comb(s.get("n")); },
       [](const FamilySpec& s) {
         const auto n = s.get("n");
         return Params{n * n / 2, n, n - 2, n + 2};
       }},
      {"theorem10-a", {"k", "m", "kappa"}, "(mk-kappa, mC(k,2), mC(k,2)-k+1, k)",
       "z0-family-3 with the last kappa columns deleted; optimal for kappa < mk/2",
       [](const FamilySpec& s) { return theorem10(s.get("k"), s.get("m"), s.get("kappa"), Theorem10Variant::a); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), m = s.get("m"), kappa = s.get("kappa");
         return Params{m * k - kappa, m * choose(k, 2), m * choose(k, 2) - k + 1, k};
       }},
      {"theorem10-b", {"k", "m", "kappa"}, "(mC(k,2)-kappa, mk, mk-2, k)",
       "z0-family-4 with the last kappa columns deleted; optimal for kappa < mk/2",
       [](const FamilySpec& s) { return theorem10(s.get("k"), s.get("m"), s.get("kappa"), Theorem10Variant::b); },
       [](const FamilySpec& s) {
         const auto k = s.get("k"), m = s.get("m"), kappa = s.get("kappa");
         return Params{m * choose(k, 2) - kappa, m * k, m * k - 2, k};
       }},
      {"p4", {}, "(4, 4, 1, 6)", "hand-built square block for Z = F-3",
       [](const FamilySpec&) { return builtin(Builtin::P4); }, [](const FamilySpec&) { return Params{4, 4, 1, 6}; }},
      {"p6", {}, "(6, 6, 3, 6)", "hand-built square block for Z = F-3",
       [](const FamilySpec&) { return builtin(Builtin::P6); }, [](const FamilySpec&) { return Params{6, 6, 3, 6}; }},
      {"p7", {}, "(7, 7, 4, 6)", "hand-built square block for Z = F-3",
       [](const FamilySpec&) { return builtin(Builtin::P7); }, [](const FamilySpec&) { return Params{7, 7, 4, 6}; }},
      {"p86", {}, "(6, 8, 5, 5)", "hand-built array meeting the simple bound",
       [](const FamilySpec&) { return builtin(Builtin::P86); }, [](const FamilySpec&) { return Params{6, 8, 5, 5}; }},
  };
  return all;
}

inline const FamilyInfo* find_family(const std::string& id) {
  const std::string key = id == "an" ? "an-pda" : id;
  for (const auto& f : families())
    if (f.id == key) return &f;
  return nullptr;
}

inline Pda build(const FamilySpec& spec) {
  const FamilyInfo* info = find_family(spec.id);
  if (!info) throw PreconditionError("unknown family '" + spec.id + "'");
  return info->build(spec);
}

inline Params claimed_params(const FamilySpec& spec) {
  const FamilyInfo* info = find_family(spec.id);
  if (!info) throw PreconditionError("unknown family '" + spec.id + "'");
  return info->claimed(spec);
}

}  // namespace pda
