#pragma once

// Exact closed-form counts over AG(n,q) and the extremal-family size formulas.
// Everything is evaluated in arbitrary precision; nothing is rounded.

#include <algorithm>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "afflats/error.hpp"
#include "afflats/gf.hpp"

namespace afflats {

using BigInt = boost::multiprecision::cpp_int;
// Nonnegative for every count; a0 is the one signed formula.
using Count = BigInt;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt ipow(int base, int exp) {
  if (exp < 0) throw PreconditionError("negative exponent");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// [m i]_q. Zero when i < 0 or i > m, one when i = 0.
inline Count gauss_binomial(int m, int i, int q) {
  if (i < 0 || m < 0 || i > m) return 0;
  if (i == 0) return 1;
  BigInt num = 1;
  BigInt den = 1;
  for (int j = 0; j < i; ++j) {
    num *= ipow(q, m - j) - 1;
    den *= ipow(q, i - j) - 1;
  }
  BigInt quo;
  BigInt rem;
  boost::multiprecision::divide_qr(num, den, quo, rem);
  if (rem != 0) throw Error("gauss_binomial: inexact division");
  return quo;
}

// k-flats inside an m-flat.
inline Count num_flats_in(int m, int k, int q) {
  if (k < 0 || k > m) return 0;
  return ipow(q, m - k) * gauss_binomial(m, k, q);
}

// k-flats of AG(n,q) containing a fixed m-flat.
inline Count num_flats_through(int n, int m, int k, int q) {
  if (m < 0 || m > k || k > n) return 0;
  return gauss_binomial(n - m, k - m, q);
}

// Number of m-subspaces P of an (e+l)-space V with dim(P ∩ W) = h, W a fixed
// l-subspace, that contain a fixed subspace P1 with dim P1 = m1 and
// dim(P1 ∩ W) = h1.
inline Count n_prime(int m1, int h1, int m, int h, int e, int l, int q) {
  if (std::min({m1, h1, m, h, e, l}) < 0) throw PreconditionError("n_prime arguments must be nonnegative");
  const bool first = 0 <= h1 && h1 <= h && h <= l;
  const bool second = 0 <= m1 - h1 && m1 - h1 <= m - h && m - h <= e;
  if (!first || !second) return 0;
  const int d1 = m1 - h1;
  const int d = m - h;
  return ipow(q, (l - h) * (d - d1)) * gauss_binomial(e - d1, d - d1, q) * gauss_binomial(l - h1, h - h1, q);
}

// Signed lower bound for |{F : T ⊂ F, dim(F ∩ S) >= t+1}|, S an s-flat and
// T a t-flat inside it.
inline BigInt a0(int n, int k, int s, int t, int q) {
  if (!(n > k && n > s && k >= t + 1 && s >= t + 1 && t >= 1)) {
    throw PreconditionError("a0 requires n > k, n > s, k >= t+1, s >= t+1, t >= 1");
  }
  return gauss_binomial(s - t, 1, q) * gauss_binomial(n - t - 1, k - t - 1, q) -
         BigInt(q) * gauss_binomial(s - t, 2, q) * gauss_binomial(n - t - 2, k - t - 2, q);
}

// |{F ∈ M(k1,n) : T ⊂ F, dim(F ∩ M) >= t+1}| for M a (k2+1)-flat, T ⊂ M a t-flat.
inline Count size_A1(int n, int k1, int k2, int t, int q) {
  if (!(k1 >= t && k2 >= t && t >= 1 && n >= k2 + 1)) {
    throw PreconditionError("size_A1 requires k1, k2 >= t >= 1 and n >= k2 + 1");
  }
  return gauss_binomial(n - t, k1 - t, q) -
         ipow(q, (k2 - t + 1) * (k1 - t)) * gauss_binomial(n - k2 - 1, k1 - t, q);
}

// k2-flats through T plus the k2-flats of M meeting T in a (t-1)-flat.
inline Count size_A2(int n, int k2, int t, int q) {
  if (!(k2 >= t && t >= 1 && n >= k2 + 1)) throw PreconditionError("size_A2 requires k2 >= t >= 1 and n >= k2 + 1");
  return gauss_binomial(n - t, k2 - t, q) + ipow(q, k2 - t + 2) * gauss_binomial(t, 1, q);
}

// k1-flats through a (t+1)-flat S.
inline Count size_A3(int n, int k1, int t, int q) {
  if (!(k1 >= t + 1 && t >= 1 && n >= k1)) throw PreconditionError("size_A3 requires k1 >= t+1, t >= 1, n >= k1");
  return gauss_binomial(n - t - 1, k1 - t - 1, q);
}

// k2-flats meeting a (t+1)-flat S in dimension >= t: inclusion-exclusion over
// the q[t+1 1] t-subflats of S.
inline Count size_A4(int n, int k2, int t, int q) {
  if (!(k2 >= t && t >= 1 && n >= k2)) throw PreconditionError("size_A4 requires k2 >= t >= 1 and n >= k2");
  const BigInt sub = BigInt(q) * gauss_binomial(t + 1, 1, q);
  return sub * gauss_binomial(n - t, k2 - t, q) - (sub - 1) * gauss_binomial(n - t - 1, k2 - t - 1, q);
}

struct ParamTuple {
  int n = 0;
  int k1 = 0;
  int k2 = 0;
  int t = 0;
  int q = 2;
};

// Both formulas are also evaluated with k1 < k2 (the swapped comparisons), so
// only k1, k2 >= t+1 is required.
inline Count a1(const ParamTuple& p) {
  if (!(p.k1 >= p.t + 1 && p.k2 >= p.t + 1)) throw PreconditionError("a1 requires k1, k2 >= t+1");
  return size_A1(p.n, p.k1, p.k2, p.t, p.q) * size_A2(p.n, p.k2, p.t, p.q);
}

inline Count a2(const ParamTuple& p) {
  if (!(p.k1 >= p.t + 1 && p.k2 >= p.t + 1)) throw PreconditionError("a2 requires k1, k2 >= t+1");
  return size_A3(p.n, p.k1, p.t, p.q) * size_A4(p.n, p.k2, p.t, p.q);
}

// q^{x-t} [x t] [c-t+1 1]^{x-t} [n-x b-x]
inline Count h_value(int n, int b, int c, int t, int x, int q) {
  if (!(t <= x && x <= b)) throw PreconditionError("h_value requires t <= x <= b");
  if (!(b >= t + 1 && c >= t && t >= 1)) throw PreconditionError("h_value requires b >= t+1, c >= t, t >= 1");
  return ipow(q, x - t) * gauss_binomial(x, t, q) *
         boost::multiprecision::pow(gauss_binomial(c - t + 1, 1, q), static_cast<unsigned>(x - t)) *
         gauss_binomial(n - x, b - x, q);
}

// Upper bound on |F| for cross t-intersecting F ⊂ M(k1,n), G ⊂ M(k2,n) with
// covering numbers tau_f and tau_g.
inline Count cover_bound(int n, int k1, int k2, int t, int tau_f, int tau_g, int q) {
  if (!(n >= k1 + k2 - t + 1)) throw PreconditionError("cover bound requires n >= k1 + k2 - t + 1");
  if (!(t <= tau_f && tau_f <= k2 && t <= tau_g && tau_g <= k1)) {
    throw PreconditionError("cover bound requires t <= tau_f <= k2 and t <= tau_g <= k1");
  }
  return ipow(q, tau_f - t) * gauss_binomial(tau_f, t, q) *
         boost::multiprecision::pow(gauss_binomial(k2 - t + 1, 1, q), static_cast<unsigned>(tau_g - t)) *
         gauss_binomial(n - tau_g, k1 - tau_g, q);
}

enum class Hypothesis {
  trivial_extremal,     // product bound for cross t-intersecting pairs
  nontrivial_extremal,  // second-largest product structure
  swap_order,           // a1/a2 decrease when k1 and k2 are swapped
  a1_a2_order,          // a1 versus a2 comparison
};

inline bool hypothesis_check(const ParamTuple& p, Hypothesis which) {
  switch (which) {
    case Hypothesis::trivial_extremal:
      return p.t >= 1 && p.k1 >= p.t && p.k2 >= p.t && p.n >= p.k1 + p.k2 + 3;
    case Hypothesis::nontrivial_extremal:
      return p.t >= 1 && p.k1 >= p.k2 && p.k2 >= p.t + 1 && p.n >= p.k1 + p.k2 + p.t + 7;
    case Hypothesis::swap_order:
      return p.t >= 1 && p.k1 > p.k2 && p.k2 >= p.t + 1 && p.n >= p.k1 + p.k2 + p.t + 3;
    case Hypothesis::a1_a2_order:
      return p.t >= 1 && p.k1 >= p.k2 && p.k2 >= p.t + 1 && p.n >= p.k1 + p.k2 + 3;
  }
  throw PreconditionError("unknown hypothesis id");
}

inline Hypothesis parse_hypothesis(std::string_view id) {
  if (id == "trivial-extremal") return Hypothesis::trivial_extremal;
  if (id == "nontrivial-extremal") return Hypothesis::nontrivial_extremal;
  if (id == "swap-order") return Hypothesis::swap_order;
  if (id == "a1-a2-order") return Hypothesis::a1_a2_order;
  throw PreconditionError("unknown hypothesis id '" + std::string(id) + "'");
}

}  // namespace afflats
