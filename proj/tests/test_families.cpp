#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "afflats/families.hpp"
#include "oracle.hpp"

using namespace afflats;

namespace {

// |{F ∈ M(k,n) : pred(points of F)}| by scanning point sets.
template <typename Pred>
long long scan_count(const Field& f, int n, int k, Pred pred) {
  long long c = 0;
  for (const auto& fl : enumerate_flats(k, n, f)) c += pred(oracle::points_of(fl)) ? 1 : 0;
  return c;
}

int meet_dim(const oracle::PointSet& a, const oracle::PointSet& b, int q) { return oracle::set_intersection_dim(a, b, q); }

bool subset(const oracle::PointSet& a, const oracle::PointSet& b) {
  for (const auto& p : a)
    if (!b.count(p)) return false;
  return true;
}

struct Anchors {
  Flat big, anchor, seed;
};

Anchors anchors(const Field& f, int n, int k2, int t) {
  const Flat big = first_flat(f, n, k2 + 1);
  return {big, first_flat_within(big, t), first_flat(f, n, t + 1)};
}

// Construction sizes at q=2, t=1, k1=k2=2 against a point-set scan and the
// closed forms.
class ConstructionSizes : public ::testing::TestWithParam<int> {};

TEST_P(ConstructionSizes, MatchScanAndFormula) {
  const int n = GetParam();
  const Field& f = Field::of(2);
  const auto a = anchors(f, n, 2, 1);
  const auto big = oracle::points_of(a.big);
  const auto tee = oracle::points_of(a.anchor);
  const auto seed = oracle::points_of(a.seed);
  const long long s1 = scan_count(f, n, 2, [&](const oracle::PointSet& p) { return subset(tee, p) && meet_dim(p, big, 2) >= 2; });
  const long long s2 = scan_count(f, n, 2, [&](const oracle::PointSet& p) {
    return subset(tee, p) || (subset(p, big) && meet_dim(p, tee, 2) == 0);
  });
  const long long s3 = scan_count(f, n, 2, [&](const oracle::PointSet& p) { return subset(seed, p); });
  const long long s4 = scan_count(f, n, 2, [&](const oracle::PointSet& p) { return meet_dim(p, seed, 2) >= 1; });
  EXPECT_EQ(static_cast<long long>(build_A1(a.big, a.anchor, 2, 1).size()), s1);
  EXPECT_EQ(static_cast<long long>(build_A2(a.big, a.anchor, 2, 1).size()), s2);
  EXPECT_EQ(static_cast<long long>(build_A3(a.seed, 2).size()), s3);
  EXPECT_EQ(static_cast<long long>(build_A4(a.seed, 2, 1).size()), s4);
  EXPECT_EQ(size_A1(n, 2, 2, 1, 2), s1);
  EXPECT_EQ(size_A2(n, 2, 1, 2), s2);
  EXPECT_EQ(size_A3(n, 2, 1, 2), s3);
  EXPECT_EQ(size_A4(n, 2, 1, 2), s4);
  if (n == 6) {
    EXPECT_EQ(s1, 3);
    EXPECT_EQ(s2, 39);
    EXPECT_EQ(s3, 1);
    EXPECT_EQ(s4, 181);
  }
}

INSTANTIATE_TEST_SUITE_P(Desk, ConstructionSizes, ::testing::Values(5, 6));

TEST(Constructions, OtherParametersMatchFormulas) {
  for (int q : {2, 3}) {
    const Field& f = Field::of(q);
    for (int n = 4; n <= (q == 2 ? 6 : 4); ++n)
      for (int t = 1; t <= 2; ++t)
        for (int k = t; k + 1 <= n; ++k) {
          const auto a = anchors(f, n, k, t);
          EXPECT_EQ(build_A2(a.big, a.anchor, k, t).size(), size_A2(n, k, t, q)) << q << n << k << t;
          EXPECT_EQ(build_A4(a.seed, k, t).size(), size_A4(n, k, t, q)) << q << n << k << t;
          for (int k1 = t; k1 <= n; ++k1) EXPECT_EQ(build_A1(a.big, a.anchor, k1, t).size(), size_A1(n, k1, k, t, q));
          if (k >= t + 1) EXPECT_EQ(build_A3(a.seed, k).size(), size_A3(n, k, t, q));
        }
  }
}

TEST(Constructions, Examples) {
  const Field& f = Field::of(2);
  const auto tee = first_flat(f, 5, 1);
  EXPECT_EQ(build_trivial(tee, 1).size(), 1u);
  EXPECT_EQ(build_trivial(tee, 2).size(), 15u);
  const auto a = anchors(f, 6, 2, 1);
  // second part of A2: flats of M meeting T in a point
  const auto a2 = build_A2(a.big, a.anchor, 2, 1);
  const auto through = build_trivial(a.anchor, 2);
  EXPECT_EQ(a2.size() - through.size(), 8u);
  EXPECT_EQ(build_A1(a.big, a.anchor, 1, 1).size(), 0u);
  const auto a3 = build_A3(a.seed, 3);
  EXPECT_TRUE(a3.is_subset_of(build_A4(a.seed, 3, 1)));
  EXPECT_THROW(build_A4(a.anchor, 2, 1), PreconditionError);
}

TEST(CrossIntersecting, ConstructionsPass) {
  for (int n : {6, 7}) {
    const Field& f = Field::of(2);
    const auto a = anchors(f, n, 2, 1);
    EXPECT_TRUE(is_cross_t_intersecting(build_A1(a.big, a.anchor, 2, 1), build_A2(a.big, a.anchor, 2, 1), 1).ok);
    EXPECT_TRUE(is_cross_t_intersecting(build_A3(a.seed, 2), build_A4(a.seed, 2, 1), 1).ok);
  }
}

TEST(CrossIntersecting, ParallelLinesFailWithWitness) {
  const Field& f = Field::of(2);
  const Flat x0(Subspace::span(f, 2, {{1, 0}}), Vector{0, 0});
  const Flat x1(Subspace::span(f, 2, {{1, 0}}), Vector{0, 1});
  const FlatFamily a(f, 2, 1, {x0});
  const FlatFamily b(f, 2, 1, {x1});
  const auto res = is_cross_t_intersecting(a, b, 1);
  EXPECT_FALSE(res.ok);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->first, x0);
  EXPECT_EQ(res.witness->second, x1);
}

TEST(CrossIntersecting, SubfamilyOfTrivial) {
  const Field& f = Field::of(3);
  const auto tee = first_flat(f, 4, 1);
  const auto triv = build_trivial(tee, 2);
  const FlatFamily some(f, 4, 2, {triv.members()[0], triv.members()[5]});
  EXPECT_TRUE(is_cross_t_intersecting(some, triv, 1).ok);
  EXPECT_THROW(is_cross_t_intersecting(some, FlatFamily(f, 5, 2), 1), AmbientMismatch);
}

TEST(Covers, Examples) {
  const Field& f = Field::of(2);
  const auto tee = first_flat(f, 5, 1);
  const auto triv = build_trivial(tee, 2);
  EXPECT_TRUE(is_t_cover(tee, triv, 1));
  const auto res = tau_t(triv, 1);
  EXPECT_EQ(res.tau, 1);
  EXPECT_NE(std::find(res.witnesses.begin(), res.witnesses.end(), tee), res.witnesses.end());
  // a flat disjoint from a member is no cover
  const Flat far(f, Vector{0, 1, 1, 1, 1});
  EXPECT_FALSE(is_t_cover(far, triv, 0));
  // singleton: any t-subflat of F is a minimum cover
  const FlatFamily single(f, 5, 2, {triv.members()[3]});
  const auto s = tau_t(single, 1);
  EXPECT_EQ(s.tau, 1);
  EXPECT_EQ(s.witnesses, flats_within(triv.members()[3], 1));
}

TEST(Covers, A2AtDesk) {
  const Field& f = Field::of(2);
  const auto a = anchors(f, 6, 2, 1);
  const auto fam = build_A2(a.big, a.anchor, 2, 1);
  const auto res = tau_t(fam, 1);
  ASSERT_FALSE(res.witnesses.empty());
  // every witness covers by point sets; nothing one dimension lower does
  std::vector<oracle::PointSet> members;
  for (const auto& m : fam) members.push_back(oracle::points_of(m));
  auto covers = [&](const Flat& x) {
    const auto px = oracle::points_of(x);
    return std::all_of(members.begin(), members.end(), [&](const oracle::PointSet& m) { return meet_dim(px, m, 2) >= 1; });
  };
  for (const auto& w : res.witnesses) EXPECT_TRUE(covers(w));
  for (const auto& x : enumerate_flats(res.tau - 1, 6, f)) ASSERT_FALSE(covers(x));
  EXPECT_EQ(res.tau, 2);
}

TEST(Partner, Examples) {
  const Field& f = Field::of(2);
  const auto tee = first_flat(f, 5, 1);
  EXPECT_EQ(partner(FlatFamily(f, 5, 1, {tee}), 2, 1), build_trivial(tee, 2));
  const auto a = anchors(f, 6, 2, 1);
  const auto a3 = build_A3(a.seed, 2);
  const auto a4 = build_A4(a.seed, 2, 1);
  const auto p = partner(a3, 2, 1);
  EXPECT_TRUE(a4.is_subset_of(p));
  EXPECT_EQ(p, a4);
}

TEST(Partner, AntitoneAndClosure) {
  const Field& f = Field::of(2);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Flat> small, large;
    const auto base = build_trivial(first_flat(f, 5, 1), 2);
    for (const auto& fl : base) {
      if (rng() % 3 == 0) small.push_back(fl);
      if (rng() % 2 == 0) large.push_back(fl);
    }
    if (small.empty()) small.push_back(base.members().front());
    large.insert(large.end(), small.begin(), small.end());
    const FlatFamily s(f, 5, 2, small), l(f, 5, 2, large);
    ASSERT_TRUE(s.is_subset_of(l));
    EXPECT_TRUE(partner(l, 2, 1).is_subset_of(partner(s, 2, 1)));
    EXPECT_TRUE(s.is_subset_of(partner(partner(s, 2, 1), 2, 1)));
  }
}

TEST(DWise, Examples) {
  const Field& f = Field::of(2);
  const auto tee = first_flat(f, 6, 1);
  std::vector<FlatFamily> fams{build_trivial(tee, 2), build_trivial(tee, 3), build_trivial(tee, 2)};
  EXPECT_TRUE(is_d_wise_t_intersecting(fams, 1).ok);
  const Flat p0(f, Vector{0, 0, 0, 0, 0, 0});
  const Flat p1(f, Vector{0, 0, 0, 0, 0, 1});
  const FlatFamily pts(f, 6, 0, {p0, p1});
  const auto res = is_d_wise_t_intersecting({pts, pts, pts}, 0);
  EXPECT_FALSE(res.ok);
  ASSERT_EQ(res.witness.size(), 3u);
  EXPECT_FALSE(intersect_many(res.witness).has_value());
  EXPECT_THROW(is_d_wise_t_intersecting({pts}, 0), PreconditionError);
}

// d-wise check against a plain triple loop on random small families.
TEST(DWise, MatchesBruteForce) {
  const Field& f = Field::of(2);
  const auto all = enumerate_flats(2, 4, f);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<FlatFamily> fams;
    for (int i = 0; i < 3; ++i) {
      std::vector<Flat> m;
      for (int j = 0; j < 3; ++j) m.push_back(all[rng() % all.size()]);
      fams.emplace_back(f, 4, 2, m);
    }
    const int t = static_cast<int>(trial % 2);
    bool expect = true;
    for (const auto& a : fams[0])
      for (const auto& b : fams[1])
        for (const auto& c : fams[2]) {
          const auto s = oracle::points_of(a);
          oracle::PointSet common;
          for (const auto& p : s)
            if (oracle::points_of(b).count(p) && oracle::points_of(c).count(p)) common.insert(p);
          if (common.empty() || oracle::log_q(common.size(), 2) < t) expect = false;
        }
    const auto res = is_d_wise_t_intersecting(fams, t);
    EXPECT_EQ(res.ok, expect);
    if (!res.ok) {
      const auto meet = intersect_many(res.witness);
      EXPECT_TRUE(!meet || meet->dim() < t);
    }
  }
}

TEST(MinCovers, TrivialPair) {
  const Field& f = Field::of(2);
  const auto tee = first_flat(f, 5, 1);
  const auto triv = build_trivial(tee, 2);
  const auto rep = min_covers_cross_check(triv, triv, 1);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.covers1.witnesses, std::vector<Flat>{tee});
  EXPECT_EQ(rep.covers2.witnesses, std::vector<Flat>{tee});
  EXPECT_THROW(min_covers_cross_check(build_trivial(first_flat(f, 4, 1), 2), build_trivial(first_flat(f, 4, 1), 2), 1),
               PreconditionError);
}

TEST(FamilyFile, RoundTrip) {
  const Field& f = Field::of(3);
  const auto fam = build_A4(first_flat(f, 4, 2), 2, 1);
  std::istringstream in(family_to_string(fam));
  EXPECT_EQ(read_family(in), fam);
}

TEST(FamilyFile, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_family(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of(""), 1);
  EXPECT_EQ(line_of("q=2;n=2;k=1\n"), 1);
  EXPECT_EQ(line_of("q=2;n=2;k=1;count=1\nq=2;n=2;dim=1;dir=10;pt=03\n"), 2);
  EXPECT_EQ(line_of("q=2;n=2;k=1;count=2\nq=2;n=2;dim=1;dir=10;pt=01\nq=2;n=2;dim=1;dir=10;pt=11\n"), 3);
  EXPECT_EQ(line_of("q=2;n=2;k=1;count=2\nq=2;n=2;dim=1;dir=10;pt=01\n"), 2);
  EXPECT_EQ(line_of("q=2;n=2;k=1;count=1\nq=2;n=2;dim=0;dir=-;pt=01\n"), 2);
}

TEST(Budget, Refuses) {
  EXPECT_THROW(require_budget(Count(kEnumerationBudget) + 1, "x"), BudgetExceeded);
  EXPECT_NO_THROW(require_budget(Count(kEnumerationBudget), "x"));
  const Field& f = Field::of(2);
  EXPECT_THROW(partner(FlatFamily(f, 12, 5, {first_flat(f, 12, 5)}), 5, 1), BudgetExceeded);
}

TEST(Determinism, ParallelScansIndependentOfThreads) {
  const Field& f = Field::of(2);
  const auto a = anchors(f, 6, 2, 1);
  const auto a2 = build_A2(a.big, a.anchor, 2, 1);
  ::setenv("AFFLATS_THREADS", "1", 1);
  const auto p1 = partner(a2, 2, 1);
  const auto c1 = tau_t(a2, 1);
  ::setenv("AFFLATS_THREADS", "4", 1);
  const auto p4 = partner(a2, 2, 1);
  const auto c4 = tau_t(a2, 1);
  ::unsetenv("AFFLATS_THREADS");
  EXPECT_EQ(p1, p4);
  EXPECT_EQ(c1.witnesses, c4.witnesses);
}

}  // namespace
