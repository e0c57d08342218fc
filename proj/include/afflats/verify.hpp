#pragma once

// Verification harness: closed forms against exhaustive enumeration, exact
// inequality sweeps, and identity checks. Every report carries the two exact
// values and the relation between them, so its pass flag can be recomputed
// from the report alone.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "afflats/affine.hpp"
#include "afflats/counting.hpp"
#include "afflats/families.hpp"
#include "afflats/linalg.hpp"
#include "json.hpp"

namespace afflats::verify {

using Rational = boost::multiprecision::cpp_rational;

struct Range {
  int lo = 0;
  int hi = 0;
  bool contains(int v) const noexcept { return lo <= v && v <= hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct GridSpec {
  std::vector<int> q{2};
  Range n{0, 12};
  Range k1{1, 12};
  Range k2{1, 12};
  Range s{0, 12};
  Range t{1, 12};
  Range j{0, 12};
  Range x{0, 12};
};

enum class Relation { eq, lt, gt, le };

inline std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::eq: return "==";
    case Relation::lt: return "<";
    case Relation::gt: return ">";
    case Relation::le: return "<=";
  }
  return "?";
}

inline Relation parse_relation(std::string_view s) {
  if (s == "==") return Relation::eq;
  if (s == "<") return Relation::lt;
  if (s == ">") return Relation::gt;
  if (s == "<=") return Relation::le;
  throw ParseError("unknown relation '" + std::string(s) + "'");
}

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, int>> params;
  bool pass = false;
  Relation relation = Relation::eq;
  std::string lhs;
  std::string rhs;
  std::optional<std::string> witness;
};

struct CheckRun {
  std::vector<CheckReport> reports;
  long long skipped = 0;
};

struct Summary {
  long long passed = 0;
  long long failed = 0;
  long long skipped = 0;
};

// Known selector ids; aliases map onto them.
inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"flatcounts", "nprime", "doublecount", "qbinom-bounds", "h-decreasing",
                                            "a1-vs-a2", "swap-order", "trivial-product", "cover-bound"};
  return ids;
}

inline std::string canonical_check_id(std::string_view id) {
  static const std::map<std::string, std::string, std::less<>> aliases{
      {"lemma21", "qbinom-bounds"}, {"lemma22", "nprime"},         {"lemma23", "flatcounts"},
      {"lemma25", "doublecount"},   {"lemma27", "cover-bound"},    {"lemma31", "h-decreasing"},
      {"lemma41", "a1-vs-a2"},      {"lemma42", "swap-order"},     {"theorem", "trivial-product"},
  };
  if (auto it = aliases.find(id); it != aliases.end()) return it->second;
  for (const auto& c : check_ids()) {
    if (c == id) return c;
  }
  throw PreconditionError("unknown check id '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Exact values and self-verification

inline std::string rational_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
  return Rational(BigInt(std::string(s.substr(0, slash))), BigInt(std::string(s.substr(slash + 1))));
}

inline bool holds(const Rational& a, Relation r, const Rational& b) {
  switch (r) {
    case Relation::eq: return a == b;
    case Relation::lt: return a < b;
    case Relation::gt: return a > b;
    case Relation::le: return a <= b;
  }
  return false;
}

// Recomputes the pass flag from the recorded values.
inline bool recompute_pass(const CheckReport& r) {
  return holds(parse_rational(r.lhs), r.relation, parse_rational(r.rhs));
}

inline CheckReport make_report(std::string check, std::vector<std::pair<std::string, int>> params, const Rational& lhs,
                               Relation rel, const Rational& rhs, std::optional<std::string> witness = std::nullopt) {
  CheckReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.relation = rel;
  r.lhs = rational_string(lhs);
  r.rhs = rational_string(rhs);
  r.pass = holds(lhs, rel, rhs);
  r.witness = std::move(witness);
  return r;
}

inline Rational as_rational(const BigInt& v) { return Rational(v); }

// ---------------------------------------------------------------------------
// Enumeration oracles

namespace detail {

inline Count flat_total(int n, int q) {
  Count total = 0;
  for (int k = 0; k <= n; ++k) total += num_flats_in(n, k, q);
  return total;
}

inline void require_grid_budget(const Count& estimate, std::string_view check) {
  require_budget(estimate, std::string(check));
}

}  // namespace detail

// Enumerated flat counts against q^{m-k}[m k] and [n-m k-m]. For each
// (n, m, k) the anchor U is the first m-flat; flats_within/flats_containing
// are also checked against a brute-force filter of the global enumeration.
inline CheckRun check_flat_counts(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q) {
    const Field& f = Field::of(q);
    for (int n = std::max(0, g.n.lo); n <= g.n.hi; ++n) {
      detail::require_grid_budget(detail::flat_total(n, q), "flatcounts");
      std::vector<std::vector<Flat>> all(static_cast<std::size_t>(n + 1));
      for (int k = 0; k <= n; ++k) {
        all[k] = enumerate_flats(k, n, f);
        run.reports.push_back(make_report("flatcounts.total", {{"q", q}, {"n", n}, {"k", k}},
                                          Rational(static_cast<long long>(all[k].size())), Relation::eq,
                                          as_rational(num_flats_in(n, k, q))));
      }
      for (int m = 0; m <= n; ++m) {
        const Flat anchor = first_flat(f, n, m);
        for (int k = 0; k <= m; ++k) {
          const auto inside = flats_within(anchor, k);
          const auto scanned = std::count_if(all[k].begin(), all[k].end(),
                                             [&](const Flat& fl) { return flat_contains(anchor, fl); });
          const bool same = scanned == static_cast<long long>(inside.size()) &&
                            std::all_of(inside.begin(), inside.end(), [&](const Flat& fl) {
                              return fl.dim() == k && flat_contains(anchor, fl);
                            });
          run.reports.push_back(make_report("flatcounts.within", {{"q", q}, {"n", n}, {"m", m}, {"k", k}},
                                            Rational(static_cast<long long>(inside.size())), Relation::eq,
                                            as_rational(num_flats_in(m, k, q))));
          run.reports.push_back(make_report("flatcounts.within-scan", {{"q", q}, {"n", n}, {"m", m}, {"k", k}},
                                            Rational(static_cast<long long>(scanned)), Relation::eq,
                                            Rational(same ? static_cast<long long>(inside.size()) : -1)));
        }
        for (int k = m; k <= n; ++k) {
          const auto through = flats_containing(anchor, k, n);
          const auto scanned = std::count_if(all[k].begin(), all[k].end(),
                                             [&](const Flat& fl) { return flat_contains(fl, anchor); });
          const bool same = scanned == static_cast<long long>(through.size()) &&
                            std::all_of(through.begin(), through.end(), [&](const Flat& fl) {
                              return fl.dim() == k && flat_contains(fl, anchor);
                            });
          run.reports.push_back(make_report("flatcounts.containing", {{"q", q}, {"n", n}, {"m", m}, {"k", k}},
                                            Rational(static_cast<long long>(through.size())), Relation::eq,
                                            as_rational(num_flats_through(n, m, k, q))));
          run.reports.push_back(make_report("flatcounts.containing-scan", {{"q", q}, {"n", n}, {"m", m}, {"k", k}},
                                            Rational(static_cast<long long>(scanned)), Relation::eq,
                                            Rational(same ? static_cast<long long>(through.size()) : -1)));
        }
      }
    }
  }
  return run;
}

// Direct count of m-subspaces P of F_q^{e+l} with dim(P ∩ W) = h containing
// the fixed P1 = <w_1..w_h1, u_1..u_{m1-h1}>, where W = <e_1..e_l> and the u's
// are the next coordinate vectors. Zero when no such P1 exists.
inline Count enumerate_nprime(int m1, int h1, int m, int h, int e, int l, const Field& f) {
  const int v = e + l;
  if (h1 > l || m1 - h1 > e || h1 < 0 || m1 < h1 || m > v) return 0;
  Matrix w(l, v);
  for (int i = 0; i < l; ++i) w.at(i, i) = 1;
  const Subspace wsp = Subspace::span(f, w);
  Matrix p1(m1, v);
  for (int i = 0; i < h1; ++i) p1.at(i, i) = 1;
  for (int i = 0; i < m1 - h1; ++i) p1.at(h1 + i, l + i) = 1;
  const Subspace fixed = Subspace::span(f, p1);
  long long count = 0;
  for_each_subspace(v, m, f, [&](const Subspace& p) {
    if (!p.contains(fixed)) return;
    const int meet = p.dim() + wsp.dim() - span_rank(f, v, {}, {&p, &wsp});
    if (meet == h) ++count;
  });
  return count;
}

inline CheckRun check_nprime(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q) {
    const Field& f = Field::of(q);
    for (int v = std::max(0, g.n.lo); v <= g.n.hi; ++v) {
      detail::require_grid_budget(detail::flat_total(v, q), "nprime");
      for (int l = 0; l <= v; ++l) {
        const int e = v - l;
        for (int m1 = 0; m1 <= v; ++m1)
          for (int h1 = 0; h1 <= v; ++h1)
            for (int m = 0; m <= v; ++m)
              for (int h = 0; h <= v; ++h) {
                run.reports.push_back(make_report(
                    "nprime", {{"q", q}, {"e", e}, {"l", l}, {"m1", m1}, {"h1", h1}, {"m", m}, {"h", h}},
                    as_rational(n_prime(m1, h1, m, h, e, l, q)), Relation::eq,
                    as_rational(enumerate_nprime(m1, h1, m, h, e, l, f))));
              }
      }
    }
  }
  return run;
}

// For S the first s-flat and T the first t-flat inside it, enumerates the
// k-flats through T by dim(F ∩ S) and checks the double-counting identity
// for every j, plus the a0 lower bound where its hypotheses hold.
inline CheckRun check_double_count(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q) {
    const Field& f = Field::of(q);
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n) {
      for (int t = std::max(1, g.t.lo); t <= std::min(n, g.t.hi); ++t) {
        for (int s = std::max(t, g.s.lo); s <= std::min(n, g.s.hi); ++s) {
          const Flat big = first_flat(f, n, s);
          const Flat anchor = first_flat_within(big, t);
          for (int k = t; k <= n; ++k) {
            require_budget(num_flats_through(n, t, k, q), "doublecount");
            std::vector<long long> by_dim(static_cast<std::size_t>(s + 1), 0);
            for (const auto& fl : flats_containing(anchor, k, n)) {
              const auto d = intersection_dim(fl, big);
              ++by_dim[*d];  // F ⊇ T ⊆ S, so the intersection is nonempty
            }
            for (int j = std::max(t, g.j.lo); j <= std::min(s, g.j.hi); ++j) {
              const Count lhs = gauss_binomial(s - t, j - t, q) * gauss_binomial(n - j, k - j, q);
              Count rhs = 0;
              for (int i = j; i <= s; ++i) rhs += gauss_binomial(i - t, j - t, q) * by_dim[i];
              run.reports.push_back(make_report("doublecount", {{"q", q}, {"n", n}, {"s", s}, {"t", t}, {"k", k}, {"j", j}},
                                                as_rational(lhs), Relation::eq, as_rational(rhs)));
            }
            if (n > k && n > s && k >= t + 1 && s >= t + 1) {
              long long at_least = 0;
              for (int i = t + 1; i <= s; ++i) at_least += by_dim[i];
              run.reports.push_back(make_report("a0-lower-bound", {{"q", q}, {"n", n}, {"s", s}, {"t", t}, {"k", k}},
                                                as_rational(a0(n, k, s, t, q)), Relation::le,
                                                Rational(at_least)));
            } else {
              ++run.skipped;
            }
          }
        }
      }
    }
  }
  return run;
}

// q-ratio and Gaussian binomial bracketing for 1 <= i < m.
inline CheckRun check_qbinom_bounds(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q) {
    for (int m = std::max(2, g.n.lo); m <= g.n.hi; ++m) {
      for (int i = 1; i < m; ++i) {
        const Rational ratio(ipow(q, m) - 1, ipow(q, i) - 1);
        const Rational inv = 1 / ratio;
        const Count gb = gauss_binomial(m, i, q);
        const std::vector<std::pair<std::string, int>> p{{"q", q}, {"m", m}, {"i", i}};
        run.reports.push_back(make_report("qbinom-bounds.ratio-lower", p, as_rational(ipow(q, m - i)), Relation::lt, ratio));
        run.reports.push_back(make_report("qbinom-bounds.ratio-upper", p, ratio, Relation::lt, as_rational(ipow(q, m - i + 1))));
        run.reports.push_back(make_report("qbinom-bounds.inverse-lower", p, Rational(1, ipow(q, m - i + 1)), Relation::lt, inv));
        run.reports.push_back(make_report("qbinom-bounds.inverse-upper", p, inv, Relation::lt, Rational(1, ipow(q, m - i))));
        run.reports.push_back(make_report("qbinom-bounds.gauss-lower", p, as_rational(ipow(q, i * (m - i))), Relation::lt, as_rational(gb)));
        run.reports.push_back(make_report("qbinom-bounds.gauss-upper", p, as_rational(gb), Relation::lt, as_rational(ipow(q, i * (m - i + 1)))));
      }
    }
  }
  return run;
}

// h_{b,c}(x) > h_{b,c}(x+1) for n >= b+c+3, b >= t+1, c >= t.
inline CheckRun check_h_decreasing(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q)
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n)
      for (int b = std::max(1, g.k1.lo); b <= g.k1.hi; ++b)
        for (int c = std::max(1, g.k2.lo); c <= g.k2.hi; ++c)
          for (int t = std::max(1, g.t.lo); t <= g.t.hi; ++t) {
            if (!(n >= b + c + 3 && b >= t + 1 && c >= t)) {
              ++run.skipped;
              continue;
            }
            for (int x = std::max(t, g.x.lo); x < b && x + 1 <= g.x.hi; ++x) {
              run.reports.push_back(make_report("h-decreasing", {{"q", q}, {"n", n}, {"b", b}, {"c", c}, {"t", t}, {"x", x}},
                                                as_rational(h_value(n, b, c, t, x, q)), Relation::gt,
                                                as_rational(h_value(n, b, c, t, x + 1, q))));
            }
          }
  return run;
}

inline std::vector<std::pair<std::string, int>> tuple_params(int q, int n, int k1, int k2, int t) {
  return {{"q", q}, {"n", n}, {"k1", k1}, {"k2", k2}, {"t", t}};
}

// a1 > a2 when k2 >= 2t+1, a1 < a2 when k2 <= 2t.
inline CheckRun check_a1_vs_a2(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q)
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n)
      for (int k1 = std::max(1, g.k1.lo); k1 <= g.k1.hi; ++k1)
        for (int k2 = std::max(1, g.k2.lo); k2 <= g.k2.hi; ++k2)
          for (int t = std::max(1, g.t.lo); t <= g.t.hi; ++t) {
            const ParamTuple p{n, k1, k2, t, q};
            if (!hypothesis_check(p, Hypothesis::a1_a2_order)) {
              ++run.skipped;
              continue;
            }
            const bool large = k2 >= 2 * t + 1;
            run.reports.push_back(make_report(large ? "a1-vs-a2.greater" : "a1-vs-a2.less", tuple_params(q, n, k1, k2, t),
                                              as_rational(a1(p)), large ? Relation::gt : Relation::lt,
                                              as_rational(a2(p))));
          }
  return run;
}

// a1 and a2 both drop when k1 > k2 are swapped.
inline CheckRun check_swap_order(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q)
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n)
      for (int k1 = std::max(1, g.k1.lo); k1 <= g.k1.hi; ++k1)
        for (int k2 = std::max(1, g.k2.lo); k2 <= g.k2.hi; ++k2)
          for (int t = std::max(1, g.t.lo); t <= g.t.hi; ++t) {
            const ParamTuple p{n, k1, k2, t, q};
            if (!hypothesis_check(p, Hypothesis::swap_order)) {
              ++run.skipped;
              continue;
            }
            const ParamTuple swapped{n, k2, k1, t, q};
            run.reports.push_back(make_report("swap-order.a1", tuple_params(q, n, k1, k2, t), as_rational(a1(p)),
                                              Relation::gt, as_rational(a1(swapped))));
            run.reports.push_back(make_report("swap-order.a2", tuple_params(q, n, k1, k2, t), as_rational(a2(p)),
                                              Relation::gt, as_rational(a2(swapped))));
          }
  return run;
}

namespace detail {

// Enumerated |{F ∈ M(k,n) : T ⊂ F}| for the first t-flat T, memoized.
class TrivialSizes {
 public:
  static constexpr long long kMaxEnumerated = 20000;

  std::optional<long long> size(int q, int n, int t, int k) {
    const auto key = std::make_tuple(q, n, t, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<long long> out;
    if (num_flats_through(n, t, k, q) <= kMaxEnumerated) {
      const Field& f = Field::of(q);
      out = static_cast<long long>(build_trivial(first_flat(f, n, t), k).size());
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::map<std::tuple<int, int, int, int>, std::optional<long long>> memo_;
};

inline void nonincreasing_sequences(int d, int lo, int hi, std::vector<int>& cur,
                                    const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(cur.size()) == d) {
    visit(cur);
    return;
  }
  const int top = cur.empty() ? hi : cur.back();
  for (int k = lo; k <= top; ++k) {
    cur.push_back(k);
    nonincreasing_sequences(d, lo, hi, cur, visit);
    cur.pop_back();
  }
}

}  // namespace detail

// Trivial-pair product [n-t k1-t][n-t k2-t] against max(a1, a2), the
// enumerated trivial pair against the product, and d-wise trivial families
// (d = 3, 4) against the product of their closed-form sizes.
inline CheckRun check_trivial_product(const GridSpec& g) {
  CheckRun run;
  detail::TrivialSizes sizes;
  for (int q : g.q)
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n)
      for (int t = std::max(1, g.t.lo); t <= g.t.hi; ++t) {
        for (int k1 = std::max(1, g.k1.lo); k1 <= g.k1.hi; ++k1)
          for (int k2 = std::max(1, g.k2.lo); k2 <= std::min(k1, g.k2.hi); ++k2) {
            const ParamTuple p{n, k1, k2, t, q};
            if (!hypothesis_check(p, Hypothesis::trivial_extremal)) {
              ++run.skipped;
              continue;
            }
            const Count bound = gauss_binomial(n - t, k1 - t, q) * gauss_binomial(n - t, k2 - t, q);
            if (k2 >= t + 1) {
              const Count best = std::max(a1(p), a2(p));
              run.reports.push_back(make_report("trivial-product.beats-nontrivial", tuple_params(q, n, k1, k2, t),
                                                as_rational(best), Relation::lt, as_rational(bound)));
            }
            const auto s1 = sizes.size(q, n, t, k1);
            const auto s2 = sizes.size(q, n, t, k2);
            if (s1 && s2) {
              run.reports.push_back(make_report("trivial-product.pair", tuple_params(q, n, k1, k2, t),
                                                Rational(*s1) * Rational(*s2), Relation::eq, as_rational(bound)));
            } else {
              ++run.skipped;
            }
          }
        for (int d = 3; d <= 4; ++d) {
          std::vector<int> cur;
          detail::nonincreasing_sequences(d, std::max(t, g.k2.lo), g.k1.hi, cur, [&](const std::vector<int>& ks) {
            if (n < ks[0] + ks[1] + 3) {
              ++run.skipped;
              return;
            }
            Count bound = 1;
            Rational product = 1;
            bool enumerated = true;
            for (int k : ks) {
              bound *= gauss_binomial(n - t, k - t, q);
              if (const auto sz = sizes.size(q, n, t, k)) {
                product *= *sz;
              } else {
                enumerated = false;
              }
            }
            if (!enumerated) {
              ++run.skipped;
              return;
            }
            std::vector<std::pair<std::string, int>> params{{"q", q}, {"n", n}, {"t", t}, {"d", d}};
            for (int i = 0; i < d; ++i) params.emplace_back("k" + std::to_string(i + 1), ks[i]);
            run.reports.push_back(make_report("trivial-product.dwise", std::move(params), product, Relation::eq,
                                              as_rational(bound)));
          });
        }
      }
  return run;
}

// Measured covering numbers plugged into the cover bound, both directions,
// for the trivial pair and the A1/A2 and A3/A4 constructions (q from grid).
inline CheckRun check_cover_bound(const GridSpec& g) {
  CheckRun run;
  for (int q : g.q) {
    const Field& f = Field::of(q);
    for (int n = std::max(1, g.n.lo); n <= g.n.hi; ++n)
      for (int t = std::max(1, g.t.lo); t <= g.t.hi; ++t)
        for (int k1 = std::max(t, g.k1.lo); k1 <= std::min(n, g.k1.hi); ++k1)
          for (int k2 = std::max(t, g.k2.lo); k2 <= std::min(k1, g.k2.hi); ++k2) {
            if (n < k1 + k2 - t + 1) {
              ++run.skipped;
              continue;
            }
            require_budget(num_flats_in(n, k1, q), "cover-bound");
            std::vector<std::pair<std::string, std::pair<FlatFamily, FlatFamily>>> pairs;
            const Flat anchor = first_flat(f, n, t);
            pairs.emplace_back("trivial", std::make_pair(build_trivial(anchor, k1), build_trivial(anchor, k2)));
            if (k2 >= t + 1 && n >= k2 + 1) {
              const Flat big = first_flat(f, n, k2 + 1);
              const Flat inner = first_flat_within(big, t);
              pairs.emplace_back("A1A2", std::make_pair(build_A1(big, inner, k1, t), build_A2(big, inner, k2, t)));
              const Flat seed = first_flat(f, n, t + 1);
              pairs.emplace_back("A3A4", std::make_pair(build_A3(seed, k1), build_A4(seed, k2, t)));
            }
            int idx = 0;
            for (const auto& [name, fams] : pairs) {
              const auto& [fa, fb] = fams;
              const std::vector<std::pair<std::string, int>> params{{"q", q}, {"n", n}, {"k1", k1}, {"k2", k2}, {"t", t}, {"pair", idx++}};
              const auto cross = is_cross_t_intersecting(fa, fb, t);
              if (!cross.ok) {
                run.reports.push_back(make_report("cover-bound.cross", params, 0, Relation::eq, 1,
                                                  name + ": " + to_string(cross.witness->first) + " / " +
                                                      to_string(cross.witness->second)));
                continue;
              }
              const int tau_a = tau_t(fa, t).tau;
              const int tau_b = tau_t(fb, t).tau;
              const std::string wit = name + " tau=" + std::to_string(tau_a) + "," + std::to_string(tau_b);
              run.reports.push_back(make_report("cover-bound.first", params, Rational(static_cast<long long>(fa.size())),
                                                Relation::le, as_rational(cover_bound(n, k1, k2, t, tau_a, tau_b, q)), wit));
              run.reports.push_back(make_report("cover-bound.second", params, Rational(static_cast<long long>(fb.size())),
                                                Relation::le, as_rational(cover_bound(n, k2, k1, t, tau_b, tau_a, q)), wit));
            }
          }
  }
  return run;
}

// ---------------------------------------------------------------------------
// Grids and dispatch

inline std::vector<GridSpec> default_grids(std::string_view check, bool extended = false) {
  const int formula_max = extended ? 16 : 14;
  std::vector<int> formula_q{2, 3};
  if (extended) formula_q = {2, 3, 4, 5};
  GridSpec g;
  if (check == "flatcounts") {
    g.q = {2, 3};
    g.n = {0, 5};
    return {g};
  }
  if (check == "nprime") {
    GridSpec g2 = g;
    g2.q = {2};
    g2.n = {0, 4};
    GridSpec g3 = g;
    g3.q = {3};
    g3.n = {0, 3};
    return {g2, g3};
  }
  if (check == "doublecount") {
    g.q = {2};
    g.n = {1, 6};
    g.t = {1, 6};
    g.s = {1, 6};
    g.j = {1, 6};
    return {g};
  }
  if (check == "qbinom-bounds") {
    g.q = {2, 3, 4, 5};
    g.n = {2, extended ? 16 : 12};
    return {g};
  }
  if (check == "h-decreasing") {
    const int hi = extended ? 16 : 12;
    g.q = formula_q;
    g.n = {1, hi};
    g.k1 = {1, hi};
    g.k2 = {1, hi};
    g.t = {1, hi};
    g.x = {1, hi};
    return {g};
  }
  if (check == "a1-vs-a2" || check == "swap-order" || check == "trivial-product") {
    g.q = formula_q;
    g.n = {1, formula_max};
    g.k1 = {1, formula_max};
    g.k2 = {1, formula_max};
    g.t = {1, formula_max};
    return {g};
  }
  if (check == "cover-bound") {
    g.q = {2};
    g.n = {5, 6};
    g.k1 = {2, 2};
    g.k2 = {2, 2};
    g.t = {1, 1};
    return {g};
  }
  throw PreconditionError("unknown check id '" + std::string(check) + "'");
}

inline CheckRun run_check(std::string_view check, const GridSpec& g) {
  if (check == "flatcounts") return check_flat_counts(g);
  if (check == "nprime") return check_nprime(g);
  if (check == "doublecount") return check_double_count(g);
  if (check == "qbinom-bounds") return check_qbinom_bounds(g);
  if (check == "h-decreasing") return check_h_decreasing(g);
  if (check == "a1-vs-a2") return check_a1_vs_a2(g);
  if (check == "swap-order") return check_swap_order(g);
  if (check == "trivial-product") return check_trivial_product(g);
  if (check == "cover-bound") return check_cover_bound(g);
  throw PreconditionError("unknown check id '" + std::string(check) + "'");
}

// Reports ordered by (check id, parameter tuple).
inline void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    return std::tie(a.check, a.params) < std::tie(b.check, b.params);
  });
}

inline Summary summarize(const std::vector<CheckReport>& reports, long long skipped) {
  Summary s;
  s.skipped = skipped;
  for (const auto& r : reports) (r.pass ? s.passed : s.failed)++;
  return s;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["pass"] = r.pass;
  j["lhs"] = r.lhs;
  j["relation"] = std::string(relation_symbol(r.relation));
  j["rhs"] = r.rhs;
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

inline CheckReport report_from_json(const nlohmann::ordered_json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<int>());
  r.pass = j.at("pass").get<bool>();
  r.lhs = j.at("lhs").get<std::string>();
  r.relation = parse_relation(j.at("relation").get<std::string>());
  r.rhs = j.at("rhs").get<std::string>();
  if (j.contains("witness")) r.witness = j.at("witness").get<std::string>();
  return r;
}

inline nlohmann::ordered_json to_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["skipped"] = s.skipped;
  return j;
}

// Applies the fields present in `j` on top of `base`.
inline GridSpec apply_grid_json(GridSpec base, const nlohmann::json& j) {
  auto range = [&](const char* key, Range& r) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2) throw ParseError(std::string("grid field '") + key + "' must be [lo, hi]");
    r = {v[0].get<int>(), v[1].get<int>()};
    if (r.lo > r.hi) throw ParseError(std::string("grid field '") + key + "' is empty");
  };
  if (j.contains("q")) {
    base.q = j.at("q").get<std::vector<int>>();
    if (base.q.empty()) throw ParseError("grid field 'q' is empty");
    for (int q : base.q) {
      if (!Field::supported(q)) throw ParseError("unsupported field order q=" + std::to_string(q));
    }
  }
  range("n", base.n);
  range("k1", base.k1);
  range("k2", base.k2);
  range("s", base.s);
  range("t", base.t);
  range("j", base.j);
  range("x", base.x);
  return base;
}

}  // namespace afflats::verify
