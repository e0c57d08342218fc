#pragma once

// Families of equal-dimension flats: the trivial and A1..A4 constructions,
// cross t-intersection tests, t-covers and the covering number, and the
// partner closure that turns a family into its largest cross t-intersecting
// counterpart.

#include <algorithm>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "afflats/affine.hpp"
#include "afflats/counting.hpp"
#include "afflats/error.hpp"
#include "afflats/parallel.hpp"

namespace afflats {

// Exhaustive scans refuse to touch more flats than this.
inline constexpr long long kEnumerationBudget = 10'000'000;

inline void require_budget(const Count& flats, const std::string& what) {
  if (flats > kEnumerationBudget) {
    throw BudgetExceeded(what + " would enumerate " + flats.str() + " flats (budget " +
                             std::to_string(kEnumerationBudget) + ")",
                         flats.str());
  }
}

class FlatFamily {
 public:
  FlatFamily(const Field& f, int n, int k) : field_(&f), n_(n), k_(k) {}

  // Sorts and deduplicates; every member must be a k-flat of AG(n,q).
  FlatFamily(const Field& f, int n, int k, std::vector<Flat> members) : FlatFamily(f, n, k) {
    for (const auto& m : members) check_member(m);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
  }

  const Field& field() const noexcept { return *field_; }
  int q() const noexcept { return field_->q(); }
  int ambient() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Flat>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(const Flat& fl) const { return std::binary_search(members_.begin(), members_.end(), fl); }

  bool is_subset_of(const FlatFamily& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  void check_compatible(const FlatFamily& other) const {
    if (other.q() != q() || other.n_ != n_) throw AmbientMismatch("families live in different affine spaces");
  }

  friend bool operator==(const FlatFamily& a, const FlatFamily& b) {
    return a.q() == b.q() && a.n_ == b.n_ && a.k_ == b.k_ && a.members_ == b.members_;
  }

 private:
  void check_member(const Flat& m) const {
    if (m.field().q() != q() || m.ambient() != n_) throw AmbientMismatch("member is not a flat of this affine space");
    if (m.dim() != k_) throw PreconditionError("member dimension differs from family dimension");
  }

  const Field* field_;
  int n_;
  int k_;
  std::vector<Flat> members_;
};

// ---------------------------------------------------------------------------
// Anchors

// First d-flat of AG(n,q) in enumeration order: <e1..ed> through the origin.
inline Flat first_flat(const Field& f, int n, int d) {
  if (d < 0 || d > n) throw PreconditionError("anchor dimension out of range");
  Matrix m(d, n);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return Flat(Subspace::span(f, m), Vector(static_cast<std::size_t>(n), 0));
}

// First d-flat inside `outer` in enumeration order.
inline Flat first_flat_within(const Flat& outer, int d) {
  auto inside = flats_within(outer, d);
  if (inside.empty()) throw PreconditionError("no flat of the requested dimension inside the anchor");
  return *std::min_element(inside.begin(), inside.end(), enumeration_less);
}

// ---------------------------------------------------------------------------
// Constructions

inline FlatFamily build_trivial(const Flat& anchor, int k) {
  if (k < anchor.dim()) throw PreconditionError("trivial family needs k >= dim T");
  const int n = anchor.ambient();
  return FlatFamily(anchor.field(), n, k, flats_containing(anchor, k, n));
}

// {F ∈ M(k1,n) : T ⊂ F, dim(F ∩ M) >= t+1}
inline FlatFamily build_A1(const Flat& big, const Flat& anchor, int k1, int t) {
  big.check_compatible(anchor);
  if (!flat_contains(big, anchor)) throw PreconditionError("T must be contained in M");
  if (anchor.dim() != t) throw PreconditionError("T must have dimension t");
  const int n = big.ambient();
  std::vector<Flat> out;
  for (auto& fl : flats_containing(anchor, k1, n)) {
    const auto d = intersection_dim(fl, big);
    if (d && *d >= t + 1) out.push_back(std::move(fl));
  }
  return FlatFamily(big.field(), n, k1, std::move(out));
}

// {F ∈ M(k2,n) : T ⊂ F} ∪ {F ∈ M(k2,M) : dim(F ∩ T) = t-1}
inline FlatFamily build_A2(const Flat& big, const Flat& anchor, int k2, int t) {
  big.check_compatible(anchor);
  if (t < 1) throw PreconditionError("A2 requires t >= 1");
  if (!flat_contains(big, anchor)) throw PreconditionError("T must be contained in M");
  if (anchor.dim() != t) throw PreconditionError("T must have dimension t");
  const int n = big.ambient();
  std::vector<Flat> out = flats_containing(anchor, k2, n);
  for (auto& fl : flats_within(big, k2)) {
    const auto d = intersection_dim(fl, anchor);
    if (d && *d == t - 1) out.push_back(std::move(fl));
  }
  return FlatFamily(big.field(), n, k2, std::move(out));
}

inline FlatFamily build_A3(const Flat& seed, int k1) {
  if (k1 < seed.dim()) throw PreconditionError("A3 requires k1 >= dim S");
  return build_trivial(seed, k1);
}

// {F ∈ M(k2,n) : dim(F ∩ S) >= t}, S a (t+1)-flat: the union over the t-subflats
// W of S of the flats through W.
inline FlatFamily build_A4(const Flat& seed, int k2, int t) {
  if (seed.dim() != t + 1) throw PreconditionError("A4 requires dim S = t + 1");
  const int n = seed.ambient();
  std::vector<Flat> out;
  for (const auto& w : flats_within(seed, t)) {
    auto through = flats_containing(w, k2, n);
    out.insert(out.end(), std::make_move_iterator(through.begin()), std::make_move_iterator(through.end()));
  }
  return FlatFamily(seed.field(), n, k2, std::move(out));
}

// ---------------------------------------------------------------------------
// Intersection tests

struct CrossCheck {
  bool ok = true;
  std::optional<std::pair<Flat, Flat>> witness;  // first violating pair in member order
};

inline CrossCheck is_cross_t_intersecting(const FlatFamily& f1, const FlatFamily& f2, int t) {
  f1.check_compatible(f2);
  const auto& a = f1.members();
  const auto& b = f2.members();
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> first(std::max<std::size_t>(1, worker_count()));
  const auto blocks = parallel_blocks(a.size(), [&](std::size_t blk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!t_intersects(a[i], b[j], t)) {
          first[blk] = std::make_pair(i, j);
          return;
        }
      }
    }
  });
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    if (first[blk]) return {false, std::make_pair(a[first[blk]->first], b[first[blk]->second])};
  }
  return {};
}

inline bool is_t_cover(const Flat& x, const FlatFamily& f, int t) {
  if (x.field().q() != f.q() || x.ambient() != f.ambient()) throw AmbientMismatch("cover candidate is not in the family's space");
  for (const auto& m : f) {
    if (!t_intersects(x, m, t)) return false;
  }
  return true;
}

struct DWiseCheck {
  bool ok = true;
  std::vector<Flat> witness;  // a violating tuple, one flat per family
};

// A prefix whose intersection already falls below dimension t cannot recover,
// so the search backtracks there with any completion as the witness.
inline DWiseCheck is_d_wise_t_intersecting(const std::vector<FlatFamily>& families, int t) {
  if (families.size() < 2) throw PreconditionError("d-wise check needs d >= 2");
  for (std::size_t i = 1; i < families.size(); ++i) families[0].check_compatible(families[i]);
  for (const auto& fam : families) {
    if (fam.empty()) return {};
  }
  std::vector<Flat> chosen;
  DWiseCheck result;
  auto complete = [&](std::size_t depth) {
    for (std::size_t i = depth; i < families.size(); ++i) chosen.push_back(families[i].members().front());
    result = {false, chosen};
  };
  std::function<bool(std::size_t, const MaybeFlat&)> search = [&](std::size_t depth, const MaybeFlat& acc) -> bool {
    if (depth == families.size()) return true;
    for (const auto& fl : families[depth]) {
      MaybeFlat next = acc ? flat_intersect(*acc, fl) : MaybeFlat(fl);
      chosen.push_back(fl);
      if (!next || next->dim() < t) {
        complete(depth + 1);
        return false;
      }
      if (!search(depth + 1, next)) return false;
      chosen.pop_back();
    }
    return true;
  };
  if (search(0, std::nullopt)) return {};
  return result;
}

// ---------------------------------------------------------------------------
// Covers and partner closure

struct CoverResult {
  int tau = 0;
  std::vector<Flat> witnesses;  // every t-cover of dimension tau, serialization order
  std::vector<std::pair<int, std::size_t>> searched;  // (dimension, candidates scanned) per level
};

namespace detail {

inline std::vector<Flat> covers_of_dim(const FlatFamily& f, int x, int t) {
  require_budget(num_flats_in(f.ambient(), x, f.q()), "cover search");
  const auto candidates = enumerate_flats(x, f.ambient(), f.field());
  std::vector<std::vector<Flat>> found(std::max<std::size_t>(1, worker_count()));
  const auto blocks = parallel_blocks(candidates.size(), [&](std::size_t blk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (is_t_cover(candidates[i], f, t)) found[blk].push_back(candidates[i]);
    }
  });
  std::vector<Flat> out;
  for (std::size_t b = 0; b < blocks; ++b) out.insert(out.end(), found[b].begin(), found[b].end());
  return out;
}

}  // namespace detail

inline CoverResult tau_t(const FlatFamily& f, int t) {
  if (f.empty()) throw PreconditionError("covering number of an empty family is undefined");
  if (t > f.k()) throw PreconditionError("tau_t requires t <= k");
  CoverResult res;
  for (int x = t; x <= f.ambient(); ++x) {
    auto covers = detail::covers_of_dim(f, x, t);
    std::sort(covers.begin(), covers.end());
    res.searched.emplace_back(x, static_cast<std::size_t>(num_flats_in(f.ambient(), x, f.q())));
    if (!covers.empty()) {
      res.tau = x;
      res.witnesses = std::move(covers);
      return res;
    }
  }
  throw Error("no t-cover found; family members should cover themselves");
}

// {G ∈ M(k2,n) : G t-intersects every member of f}
inline FlatFamily partner(const FlatFamily& f, int k2, int t) {
  if (f.empty()) throw PreconditionError("partner of an empty family is undefined");
  require_budget(num_flats_in(f.ambient(), k2, f.q()), "partner scan");
  const auto candidates = enumerate_flats(k2, f.ambient(), f.field());
  std::vector<std::vector<Flat>> found(std::max<std::size_t>(1, worker_count()));
  const auto blocks = parallel_blocks(candidates.size(), [&](std::size_t blk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (is_t_cover(candidates[i], f, t)) found[blk].push_back(candidates[i]);
    }
  });
  std::vector<Flat> out;
  for (std::size_t b = 0; b < blocks; ++b) out.insert(out.end(), found[b].begin(), found[b].end());
  return FlatFamily(f.field(), f.ambient(), k2, std::move(out));
}

struct CoverCrossReport {
  bool pass = true;
  CoverResult covers1;
  CoverResult covers2;
  std::optional<std::pair<Flat, Flat>> witness;  // minimum covers that fail to t-intersect
};

// For mutually maximal cross t-intersecting f1, f2: every minimum t-cover of
// f1 must t-intersect every minimum t-cover of f2.
inline CoverCrossReport min_covers_cross_check(const FlatFamily& f1, const FlatFamily& f2, int t) {
  f1.check_compatible(f2);
  const int n = f1.ambient();
  if (n < f1.k() + f2.k() + 1) throw PreconditionError("minimum-cover check requires n >= k1 + k2 + 1");
  if (!(partner(f1, f2.k(), t) == f2) || !(partner(f2, f1.k(), t) == f1)) {
    throw PreconditionError("families are not mutually maximal cross t-intersecting");
  }
  CoverCrossReport rep;
  rep.covers1 = tau_t(f1, t);
  rep.covers2 = tau_t(f2, t);
  for (const auto& s1 : rep.covers1.witnesses) {
    for (const auto& s2 : rep.covers2.witnesses) {
      if (!t_intersects(s1, s2, t)) {
        rep.pass = false;
        rep.witness = std::make_pair(s1, s2);
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Family files: "q=..;n=..;k=..;count=.." then one serialized flat per line.

inline void write_family(std::ostream& out, const FlatFamily& f) {
  out << "q=" << f.q() << ";n=" << f.ambient() << ";k=" << f.k() << ";count=" << f.size() << '\n';
  for (const auto& m : f) out << to_string(m) << '\n';
}

inline std::string family_to_string(const FlatFamily& f) {
  std::ostringstream os;
  write_family(os, f);
  return os.str();
}

inline FlatFamily read_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing family header", 1);
  int vals[4];
  const char* keys[4] = {"q=", "n=", "k=", "count="};
  {
    std::string_view rest = line;
    for (int i = 0; i < 4; ++i) {
      const auto semi = rest.find(';');
      if ((i < 3) == (semi == std::string_view::npos)) throw ParseError("header must be q=..;n=..;k=..;count=..", 1);
      auto piece = rest.substr(0, semi);
      const std::string_view key = keys[i];
      if (piece.substr(0, key.size()) != key) throw ParseError("header field '" + std::string(key) + "' expected", 1);
      try {
        vals[i] = detail::parse_int(piece.substr(key.size()));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 1);
      }
      if (semi != std::string_view::npos) rest = rest.substr(semi + 1);
    }
  }
  if (!Field::supported(vals[0])) throw ParseError("unsupported field order", 1);
  const Field& f = Field::of(vals[0]);
  std::vector<Flat> members;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      Flat fl = parse_flat(line);
      if (fl.field().q() != vals[0] || fl.ambient() != vals[1]) throw ParseError("flat does not match header q/n");
      if (fl.dim() != vals[2]) throw ParseError("flat dimension does not match header k");
      if (!(to_string(fl) == line)) throw ParseError("flat is not in canonical form");
      members.push_back(std::move(fl));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (static_cast<int>(members.size()) != vals[3]) {
    throw ParseError("header count " + std::to_string(vals[3]) + " but " + std::to_string(members.size()) + " flats", lineno);
  }
  FlatFamily fam(f, vals[1], vals[2], std::move(members));
  if (static_cast<int>(fam.size()) != vals[3]) throw ParseError("family contains duplicate flats", lineno);
  return fam;
}

}  // namespace afflats
