#include <gtest/gtest.h>

#include <cmath>

#include "afflats/gf.hpp"

using namespace afflats;

namespace {

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, Exhaustive) {
  const Field& f = Field::of(GetParam());
  const int q = f.q();
  EXPECT_EQ(static_cast<int>(std::pow(f.characteristic(), f.degree())), q);
  for (int a = 0; a < q; ++a) {
    EXPECT_EQ(f.add(a, 0), a);
    EXPECT_EQ(f.mul(a, 1), a);
    EXPECT_EQ(f.mul(a, 0), 0);
    EXPECT_EQ(f.add(a, f.neg(a)), 0);
    if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
    // p·a = 0
    digit_t acc = 0;
    for (int i = 0; i < f.characteristic(); ++i) acc = f.add(acc, a);
    EXPECT_EQ(acc, 0);
    for (int b = 0; b < q; ++b) {
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (a && b) EXPECT_NE(f.mul(a, b), 0);
      for (int c = 0; c < q; ++c) {
        EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllOrders, FieldAxioms, ::testing::Values(2, 3, 4, 5, 7, 8, 9));

TEST(Field, PrimeFieldsAreModular) {
  for (int p : {2, 3, 5, 7}) {
    const Field& f = Field::of(p);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        EXPECT_EQ(f.add(a, b), (a + b) % p);
        EXPECT_EQ(f.mul(a, b), (a * b) % p);
      }
  }
}

TEST(Field, ModuliAreIrreducible) {
  for (int q : {4, 8, 9}) {
    const Field& f = Field::of(q);
    EXPECT_TRUE(modulus_is_irreducible(f.modulus(), f.characteristic())) << q;
  }
  EXPECT_FALSE(modulus_is_irreducible({1, 0, 1}, 2));  // X^2+1 = (X+1)^2 over GF(2)
  EXPECT_FALSE(modulus_is_irreducible({2, 0, 1}, 3));  // X^2-1
}

TEST(Field, XSquaredFollowsModulus) {
  // X has index p
  EXPECT_EQ(Field::of(4).mul(2, 2), 3);  // X^2 = X + 1
  EXPECT_EQ(Field::of(8).mul(2, 4), 3);  // X^3 = X + 1
  EXPECT_EQ(Field::of(9).mul(3, 3), Field::of(9).neg(1));
}

TEST(Field, Examples) {
  EXPECT_EQ(fe_add(Field::of(2), {1}, {1}), FieldElement{0});
  EXPECT_EQ(fe_add(Field::of(3), {2}, {2}), FieldElement{1});
  EXPECT_EQ(fe_add(Field::of(4), {2}, {3}), FieldElement{1});
  EXPECT_EQ(fe_inv(Field::of(5), {2}), FieldElement{3});
  EXPECT_EQ(fe_mul(Field::of(2), {1}, {1}), FieldElement{1});
  EXPECT_EQ(fe_mul(Field::of(9), {3}, {3}), fe_neg(Field::of(9), {1}));
}

TEST(Field, Errors) {
  EXPECT_THROW(Field::of(6), PreconditionError);
  EXPECT_FALSE(Field::supported(16));
  EXPECT_THROW(fe_add(Field::of(3), {3}, {0}), InvalidElement);
  EXPECT_THROW(fe_inv(Field::of(7), {0}), DivisionByZero);
  EXPECT_THROW(fe_neg(Field::of(4), {4}), InvalidElement);
}

}  // namespace
