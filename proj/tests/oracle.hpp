#pragma once

// Brute-force reference implementations over explicit point sets. Nothing here
// touches RREF, canonical forms or the closed-form counts.

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "afflats/affine.hpp"

namespace oracle {

using afflats::digit_t;
using afflats::Field;
using afflats::Vector;
using PointSet = std::set<Vector>;

inline std::vector<Vector> all_points(const Field& f, int n) {
  std::vector<Vector> out;
  Vector v(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(v);
    int i = n - 1;
    while (i >= 0 && ++v[i] == f.q()) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline Vector add(const Field& f, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

inline Vector sub(const Field& f, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

inline Vector scale(const Field& f, digit_t c, const Vector& a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(c, a[i]);
  return out;
}

// Linear span of vectors by closure.
inline PointSet span_set(const Field& f, int n, const std::vector<Vector>& gens) {
  PointSet s{Vector(static_cast<std::size_t>(n), 0)};
  for (const auto& g : gens) {
    PointSet next;
    for (const auto& d : s)
      for (int c = 0; c < f.q(); ++c) next.insert(add(f, d, scale(f, static_cast<digit_t>(c), g)));
    s = std::move(next);
  }
  return s;
}

// Smallest flat containing the points.
inline PointSet affine_hull(const Field& f, const std::vector<Vector>& pts) {
  if (pts.empty()) return {};
  const int n = static_cast<int>(pts[0].size());
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(f, pts[i], pts[0]));
  PointSet out;
  for (const auto& d : span_set(f, n, diffs)) out.insert(add(f, pts[0], d));
  return out;
}

inline PointSet points_of(const afflats::Flat& fl) {
  const Field& f = fl.field();
  std::vector<Vector> gens;
  for (int r = 0; r < fl.dim(); ++r) gens.emplace_back(fl.direction().row(r).begin(), fl.direction().row(r).end());
  PointSet out;
  for (const auto& d : span_set(f, fl.ambient(), gens)) out.insert(add(f, fl.point(), d));
  return out;
}

inline int log_q(std::size_t size, int q) {
  int d = 0;
  std::size_t v = 1;
  while (v < size) {
    v *= static_cast<std::size_t>(q);
    ++d;
  }
  return v == size ? d : -1;
}

// Every k-flat of AG(n,q) as a point set, grown from points by adjoining one
// outside point at a time.
inline std::set<PointSet> all_flat_sets(const Field& f, int n, int k) {
  const auto pts = all_points(f, n);
  std::set<PointSet> level;
  for (const auto& p : pts) level.insert(PointSet{p});
  for (int d = 0; d < k; ++d) {
    std::set<PointSet> next;
    for (const auto& s : level) {
      for (const auto& p : pts) {
        if (s.count(p)) continue;
        std::vector<Vector> gen(s.begin(), s.end());
        gen.push_back(p);
        next.insert(affine_hull(f, gen));
      }
    }
    level = std::move(next);
  }
  return level;
}

inline int set_intersection_dim(const PointSet& a, const PointSet& b, int q) {
  std::size_t common = 0;
  for (const auto& p : a) common += b.count(p);
  return common == 0 ? -1 : log_q(common, q);
}

inline Vector random_vector(const Field& f, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  Vector v(static_cast<std::size_t>(n));
  for (auto& x : v) x = static_cast<digit_t>(d(rng));
  return v;
}

// A random flat of dimension at most k (random generators may be dependent).
inline afflats::Flat random_flat(const Field& f, int n, int k, std::mt19937& rng) {
  std::vector<Vector> gens;
  for (int i = 0; i < k; ++i) gens.push_back(random_vector(f, n, rng));
  const auto dir = gens.empty() ? afflats::Subspace(f, n) : afflats::Subspace::span(f, n, gens);
  return afflats::Flat(dir, random_vector(f, n, rng));
}

}  // namespace oracle
