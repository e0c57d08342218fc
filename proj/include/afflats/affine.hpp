#pragma once

// Flats of AG(n,q): cosets P + x of a linear subspace P of F_q^n.
//
// A Flat keeps its direction P in RREF and a representative point whose
// coordinates at P's pivot columns are all zero; that representative is the
// unique one with this property, so equal cosets compare equal.

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afflats/error.hpp"
#include "afflats/gf.hpp"
#include "afflats/linalg.hpp"

namespace afflats {

class Flat {
 public:
  Flat(Subspace direction, std::span<const digit_t> anypoint)
      : direction_(std::move(direction)), point_(direction_.reduce(anypoint)) {}

  // Single point.
  Flat(const Field& f, std::span<const digit_t> p) : Flat(Subspace(f, static_cast<int>(p.size())), p) {}

  const Subspace& direction() const noexcept { return direction_; }
  const Vector& point() const noexcept { return point_; }
  int dim() const noexcept { return direction_.dim(); }
  int ambient() const noexcept { return direction_.ambient(); }
  const Field& field() const noexcept { return direction_.field(); }

  void check_compatible(const Flat& other) const { direction_.check_compatible(other.direction_); }

  friend bool operator==(const Flat&, const Flat&) = default;

  // Orders by (q, n, dim, direction rows, point): the same order as the
  // serialized strings of flats sharing q and n.
  friend std::strong_ordering operator<=>(const Flat& a, const Flat& b) {
    if (auto c = a.direction_ <=> b.direction_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.point_.begin(), a.point_.end(), b.point_.begin(), b.point_.end());
  }

 private:
  Subspace direction_;
  Vector point_;
};

// Empty intersections are nullopt; there is no integer dimension for them.
using MaybeFlat = std::optional<Flat>;

// Order of for_each_flat: dimension, pivot columns, direction entries, point.
// Differs from operator< (serialization order), which ignores pivot sets.
inline bool enumeration_less(const Flat& a, const Flat& b) {
  const auto& da = a.direction();
  const auto& db = b.direction();
  if (da.dim() != db.dim()) return da.dim() < db.dim();
  if (da.pivots() != db.pivots()) return da.pivots() < db.pivots();
  if (da.basis().data() != db.basis().data()) return da.basis().data() < db.basis().data();
  return a.point() < b.point();
}

inline Flat make_flat(const Subspace& direction, std::span<const digit_t> anypoint) {
  if (static_cast<int>(anypoint.size()) != direction.ambient()) {
    throw AmbientMismatch("point length does not match the direction's ambient dimension");
  }
  return Flat(direction, anypoint);
}

inline Flat whole_space(const Field& f, int n) {
  return Flat(Subspace::whole(f, n), Vector(static_cast<std::size_t>(n), 0));
}

namespace detail {

inline Vector difference(const Field& f, std::span<const digit_t> a, std::span<const digit_t> b) {
  Vector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = f.sub(a[i], b[i]);
  return d;
}

}  // namespace detail

inline bool flat_contains_point(const Flat& f, std::span<const digit_t> p) {
  if (static_cast<int>(p.size()) != f.ambient()) throw AmbientMismatch("point length does not match ambient dimension");
  return f.direction().contains(detail::difference(f.field(), p, f.point()));
}

// Point-set containment inner ⊆ outer.
inline bool flat_contains(const Flat& outer, const Flat& inner) {
  outer.check_compatible(inner);
  return outer.direction().contains(inner.direction()) && flat_contains_point(outer, inner.point());
}

inline bool incident(const Flat& a, const Flat& b) {
  a.check_compatible(b);
  return flat_contains(a, b) || flat_contains(b, a);
}

// Dimension of a ∩ b, or nullopt when the flats are disjoint. Uses only ranks:
// the flats meet iff a.point - b.point ∈ A' + B', and then
// dim(A' ∩ B') = dim A' + dim B' - dim(A' + B').
inline std::optional<int> intersection_dim(const Flat& a, const Flat& b) {
  a.check_compatible(b);
  const Field& f = a.field();
  const int n = a.ambient();
  const int sum = span_rank(f, n, {}, {&a.direction(), &b.direction()});
  const auto diff = detail::difference(f, a.point(), b.point());
  const int with_diff = span_rank(f, n, {std::span<const digit_t>(diff)}, {&a.direction(), &b.direction()});
  if (with_diff != sum) return std::nullopt;
  return a.dim() + b.dim() - sum;
}

inline MaybeFlat flat_intersect(const Flat& a, const Flat& b) {
  a.check_compatible(b);
  const Field& f = a.field();
  const int n = a.ambient();
  const int da = a.dim();
  const int db = b.dim();
  // Find l, m with a.point + l·A = b.point + m·B, i.e. [A^T | -B^T](l,m) = b.point - a.point.
  Matrix sys(n, da + db);
  for (int i = 0; i < da; ++i)
    for (int c = 0; c < n; ++c) sys.at(c, i) = a.direction().row(i)[c];
  for (int j = 0; j < db; ++j)
    for (int c = 0; c < n; ++c) sys.at(c, da + j) = f.neg(b.direction().row(j)[c]);
  const auto rhs = detail::difference(f, b.point(), a.point());
  const auto coeffs = solve(f, sys, rhs);
  if (!coeffs) return std::nullopt;
  Vector x = a.point();
  for (int i = 0; i < da; ++i) {
    const digit_t l = (*coeffs)[i];
    if (l == 0) continue;
    const auto row = a.direction().row(i);
    for (int c = 0; c < n; ++c) x[c] = f.add(x[c], f.mul(l, row[c]));
  }
  return Flat(subspace_intersect(a.direction(), b.direction()), x);
}

// Smallest flat containing both: A' + B' + <b.point - a.point> through a.point.
inline Flat flat_join(const Flat& a, const Flat& b) {
  a.check_compatible(b);
  Matrix rows = a.direction().basis();
  for (int r = 0; r < b.dim(); ++r) rows.append_row(b.direction().row(r));
  rows.append_row(detail::difference(a.field(), b.point(), a.point()));
  return Flat(Subspace::span(a.field(), rows), a.point());
}

inline bool t_intersects(const Flat& a, const Flat& b, int t) {
  if (t < 0) throw PreconditionError("t must be nonnegative");
  const auto d = intersection_dim(a, b);
  return d.has_value() && *d >= t;
}

inline MaybeFlat intersect_many(std::span<const Flat> flats) {
  if (flats.empty()) throw PreconditionError("intersect_many needs at least one flat");
  MaybeFlat acc = flats.front();
  for (std::size_t i = 1; i < flats.size() && acc; ++i) acc = flat_intersect(*acc, flats[i]);
  return acc;
}

// Visits every k-flat of AG(n,q): directions in subspace enumeration order,
// then canonical points lexicographically (free coordinates, last fastest).
template <typename Visit>
void for_each_flat(int k, int n, const Field& f, Visit&& visit) {
  if (k < 0 || k > n) return;
  for_each_subspace(n, k, f, [&](const Subspace& dir) {
    std::vector<int> free_cols;
    std::size_t pi = 0;
    for (int c = 0; c < n; ++c) {
      if (pi < dir.pivots().size() && dir.pivots()[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
    std::vector<digit_t> digits(free_cols.size(), 0);
    Vector p(static_cast<std::size_t>(n), 0);
    do {
      for (std::size_t i = 0; i < free_cols.size(); ++i) p[free_cols[i]] = digits[i];
      visit(Flat(dir, p));
    } while (detail::next_digits(digits, f.q()));
  });
}

inline std::vector<Flat> enumerate_flats(int k, int n, const Field& f) {
  std::vector<Flat> out;
  for_each_flat(k, n, f, [&](const Flat& fl) { out.push_back(fl); });
  return out;
}

namespace detail {

// Maps a coefficient vector over the rows of `basis` to the vector it spans.
inline Vector combine(const Field& f, const Subspace& basis, std::span<const digit_t> coeffs, Vector acc) {
  for (int i = 0; i < basis.dim(); ++i) {
    if (coeffs[i] == 0) continue;
    const auto row = basis.row(i);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = f.add(acc[c], f.mul(coeffs[i], row[c]));
  }
  return acc;
}

}  // namespace detail

// All a-flats inside A, built from the a-subspaces of A's coordinate space and
// coset representatives inside A (no scan of the global enumeration).
inline std::vector<Flat> flats_within(const Flat& outer, int a) {
  std::vector<Flat> out;
  const int m = outer.dim();
  if (a < 0 || a > m) return out;
  const Field& f = outer.field();
  const int n = outer.ambient();
  const Subspace& big = outer.direction();
  for_each_subspace(m, a, f, [&](const Subspace& coeff_space) {
    Matrix rows(0, n);
    for (int r = 0; r < a; ++r) rows.append_row(detail::combine(f, big, coeff_space.row(r), Vector(static_cast<std::size_t>(n), 0)));
    const Subspace dir = Subspace::span(f, rows);
    // Coefficient vectors vanishing on coeff_space's pivots pick one point per coset.
    std::vector<int> free_cols;
    std::size_t pi = 0;
    for (int c = 0; c < m; ++c) {
      if (pi < coeff_space.pivots().size() && coeff_space.pivots()[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
    std::vector<digit_t> digits(free_cols.size(), 0);
    Vector coeffs(static_cast<std::size_t>(m), 0);
    do {
      for (std::size_t i = 0; i < free_cols.size(); ++i) coeffs[free_cols[i]] = digits[i];
      out.emplace_back(dir, detail::combine(f, big, coeffs, outer.point()));
    } while (detail::next_digits(digits, f.q()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// All k-flats containing U, from the (k - dim U)-subspaces of F_q^n / U'.
// Quotient coordinates are U's non-pivot columns.
inline std::vector<Flat> flats_containing(const Flat& inner, int k, int n) {
  std::vector<Flat> out;
  if (n != inner.ambient()) throw AmbientMismatch("flat does not live in AG(n,q) for the requested n");
  const int m = inner.dim();
  if (k < m || k > n) return out;
  const Field& f = inner.field();
  const Subspace& low = inner.direction();
  std::vector<int> free_cols;
  std::size_t pi = 0;
  for (int c = 0; c < n; ++c) {
    if (pi < low.pivots().size() && low.pivots()[pi] == c) {
      ++pi;
    } else {
      free_cols.push_back(c);
    }
  }
  for_each_subspace(n - m, k - m, f, [&](const Subspace& quotient) {
    Matrix rows = low.basis();
    for (int r = 0; r < quotient.dim(); ++r) {
      Vector lifted(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < free_cols.size(); ++i) lifted[free_cols[i]] = quotient.row(r)[i];
      rows.append_row(lifted);
    }
    out.emplace_back(Subspace::span(f, rows), inner.point());
  });
  std::sort(out.begin(), out.end());
  return out;
}

// "q=<q>;n=<n>;dim=<k>;dir=<row|row|...>;pt=<digits>"
inline std::string to_string(const Flat& fl) {
  std::string out = "q=" + std::to_string(fl.field().q()) + ";n=" + std::to_string(fl.ambient()) +
                    ";dim=" + std::to_string(fl.dim()) + ";dir=" + to_string(fl.direction()) + ";pt=";
  for (digit_t d : fl.point()) out += static_cast<char>('0' + d);
  return out;
}

namespace detail {

inline int parse_int(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer");
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParseError("bad integer '" + std::string(s) + "'");
    v = v * 10 + (ch - '0');
    if (v > 1'000'000) throw ParseError("integer out of range");
  }
  return v;
}

}  // namespace detail

inline Flat parse_flat(std::string_view text) {
  std::string_view fields[5];
  const char* keys[5] = {"q=", "n=", "dim=", "dir=", "pt="};
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    const auto semi = text.find(';', start);
    if ((i < 4) == (semi == std::string_view::npos)) throw ParseError("flat must have fields q;n;dim;dir;pt");
    auto piece = text.substr(start, i < 4 ? semi - start : std::string_view::npos);
    const std::string_view key = keys[i];
    if (piece.substr(0, key.size()) != key) throw ParseError("expected field '" + std::string(key) + "'");
    fields[i] = piece.substr(key.size());
    start = semi + 1;
  }
  const int q = detail::parse_int(fields[0]);
  if (!Field::supported(q)) throw ParseError("unsupported field order q=" + std::to_string(q));
  const Field& f = Field::of(q);
  const int n = detail::parse_int(fields[1]);
  const int dim = detail::parse_int(fields[2]);
  const Subspace dir = parse_subspace(fields[3], f, n);
  if (dir.dim() != dim) throw ParseError("declared dim does not match direction rank");
  const Vector pt = parse_digits(fields[4], f);
  if (static_cast<int>(pt.size()) != n) throw ParseError("point has wrong length");
  return Flat(dir, pt);
}

}  // namespace afflats
