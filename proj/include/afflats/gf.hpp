#pragma once

// Table-driven arithmetic in the small fields GF(q), q in {2,3,4,5,7,8,9}.
//
// An element is stored as its index in [0,q): the base-p digits of the index
// are the coefficients a0, a1, ... of a0 + a1 X + ... modulo the field's fixed
// irreducible polynomial. Index 0 is zero and index 1 is one in every field.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "afflats/error.hpp"

namespace afflats {

using digit_t = std::uint8_t;

struct FieldElement {
  digit_t index = 0;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

class Field {
 public:
  static constexpr std::array<int, 7> kSupportedOrders{2, 3, 4, 5, 7, 8, 9};

  // Shared immutable instance; throws PreconditionError for unsupported q.
  static const Field& of(int q);

  static bool supported(int q) noexcept {
    for (int s : kSupportedOrders) {
      if (s == q) return true;
    }
    return false;
  }

  int q() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return d_; }
  // Coefficients c0..cd of the monic modulus; empty for prime fields.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  digit_t add(digit_t a, digit_t b) const noexcept { return add_[a * q_ + b]; }
  digit_t sub(digit_t a, digit_t b) const noexcept { return add_[a * q_ + neg_[b]]; }
  digit_t mul(digit_t a, digit_t b) const noexcept { return mul_[a * q_ + b]; }
  digit_t neg(digit_t a) const noexcept { return neg_[a]; }
  // Caller guarantees a != 0; inv(0) is 0 in the table.
  digit_t inv(digit_t a) const noexcept { return inv_[a]; }

  bool valid(digit_t a) const noexcept { return a < q_; }

  std::string to_string() const { return "q=" + std::to_string(q_); }

  explicit Field(int q);

 private:
  int q_;
  int p_;
  int d_;
  std::vector<int> modulus_;
  std::vector<digit_t> add_;
  std::vector<digit_t> mul_;
  std::vector<digit_t> neg_;
  std::vector<digit_t> inv_;
};

namespace detail {

inline std::vector<int> to_digits(int index, int p, int d) {
  std::vector<int> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

inline int from_digits(const std::vector<int>& digits, int p) {
  int v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * p + *it;
  return v;
}

// Evaluates the polynomial with the given coefficients at x in GF(p).
inline int eval_mod(const std::vector<int>& coeffs, int x, int p) {
  int v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = (v * x + *it) % p;
  return v;
}

}  // namespace detail

// Degree 2 and 3 polynomials are irreducible exactly when they have no root.
inline bool modulus_is_irreducible(const std::vector<int>& coeffs, int p) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1 || coeffs.back() != 1) return false;
  if (deg > 3) throw PreconditionError("irreducibility test supports degree <= 3 only");
  for (int x = 0; x < p; ++x) {
    if (detail::eval_mod(coeffs, x, p) == 0) return false;
  }
  return true;
}

inline Field::Field(int q) : q_(q) {
  switch (q) {
    case 2: case 3: case 5: case 7:
      p_ = q; d_ = 1; break;
    case 4:
      p_ = 2; d_ = 2; modulus_ = {1, 1, 1}; break;  // X^2 + X + 1
    case 8:
      p_ = 2; d_ = 3; modulus_ = {1, 1, 0, 1}; break;  // X^3 + X + 1
    case 9:
      p_ = 3; d_ = 2; modulus_ = {1, 0, 1}; break;  // X^2 + 1
    default:
      throw PreconditionError("unsupported field order q=" + std::to_string(q));
  }

  const auto qq = static_cast<std::size_t>(q);
  add_.resize(qq * qq);
  mul_.resize(qq * qq);
  neg_.resize(qq);
  inv_.assign(qq, 0);

  for (int a = 0; a < q; ++a) {
    const auto da = detail::to_digits(a, p_, d_);
    for (int b = 0; b < q; ++b) {
      const auto db = detail::to_digits(b, p_, d_);
      std::vector<int> sum(static_cast<std::size_t>(d_));
      for (int i = 0; i < d_; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<digit_t>(detail::from_digits(sum, p_));

      // Schoolbook product, then reduce by the monic modulus from the top.
      std::vector<int> prod(static_cast<std::size_t>(2 * d_ - 1), 0);
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int top = 2 * d_ - 2; top >= d_; --top) {
        const int c = prod[top];
        if (c == 0) continue;
        for (int i = 0; i <= d_; ++i) {
          prod[top - d_ + i] = ((prod[top - d_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
      }
      prod.resize(static_cast<std::size_t>(d_));
      mul_[a * q + b] = static_cast<digit_t>(detail::from_digits(prod, p_));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a * q + b] == 0) neg_[a] = static_cast<digit_t>(b);
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<digit_t>(b);
    }
  }
}

inline const Field& Field::of(int q) {
  static const std::array<Field, 7> fields{Field(2), Field(3), Field(4), Field(5),
                                           Field(7), Field(8), Field(9)};
  for (const auto& f : fields) {
    if (f.q() == q) return f;
  }
  throw PreconditionError("unsupported field order q=" + std::to_string(q));
}

inline void check_element(const Field& f, FieldElement a) {
  if (!f.valid(a.index)) {
    throw InvalidElement("element index " + std::to_string(a.index) + " out of range for " +
                         f.to_string());
  }
}

inline FieldElement fe_add(const Field& f, FieldElement a, FieldElement b) {
  check_element(f, a);
  check_element(f, b);
  return {f.add(a.index, b.index)};
}

inline FieldElement fe_mul(const Field& f, FieldElement a, FieldElement b) {
  check_element(f, a);
  check_element(f, b);
  return {f.mul(a.index, b.index)};
}

inline FieldElement fe_neg(const Field& f, FieldElement a) {
  check_element(f, a);
  return {f.neg(a.index)};
}

inline FieldElement fe_inv(const Field& f, FieldElement a) {
  check_element(f, a);
  if (a.index == 0) throw DivisionByZero("inverse of zero in " + f.to_string());
  return {f.inv(a.index)};
}

}  // namespace afflats
