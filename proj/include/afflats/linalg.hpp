#pragma once

// Exact linear algebra over GF(q): reduced row echelon form, rank, linear
// solving, subspace sum and intersection, and enumeration of all k-subspaces
// of F_q^n in a fixed order.
//
// Subspaces are always held in RREF, so two Subspace values describe the same
// space exactly when their stored rows are identical. Over GF(2) elimination
// runs on rows packed into 64-bit words.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afflats/error.hpp"
#include "afflats/gf.hpp"

namespace afflats {

using Vector = std::vector<digit_t>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {}

  static Matrix from_rows(const std::vector<Vector>& rows, int cols) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows_; ++r) {
      if (static_cast<int>(rows[r].size()) != cols) throw ShapeMismatch("ragged matrix rows");
      std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::span<digit_t> row(int r) noexcept { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const digit_t> row(int r) const noexcept { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }

  digit_t& at(int r, int c) noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  digit_t at(int r, int c) const noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  void append_row(std::span<const digit_t> v) {
    if (static_cast<int>(v.size()) != cols_) throw ShapeMismatch("row length does not match matrix width");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  void truncate_rows(int rows) {
    rows_ = rows;
    data_.resize(static_cast<std::size_t>(rows) * cols_);
  }

  const std::vector<digit_t>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<digit_t> data_;
};

struct RrefResult {
  Matrix basis;             // the nonzero rows of the reduced form
  int rank = 0;
  std::vector<int> pivots;  // pivot column of each basis row
};

namespace detail {

inline RrefResult rref_gf2(const Matrix& m) {
  const int cols = m.cols();
  std::vector<std::uint64_t> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    std::uint64_t w = 0;
    for (int c = 0; c < cols; ++c) {
      if (m.at(r, c)) w |= std::uint64_t{1} << c;
    }
    rows.push_back(w);
  }
  RrefResult out;
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r] & bit) { sel = r; break; }
    }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    }
    out.pivots.push_back(c);
    ++rank;
  }
  out.rank = rank;
  out.basis = Matrix(rank, cols);
  for (int r = 0; r < rank; ++r) {
    for (int c = 0; c < cols; ++c) out.basis.at(r, c) = static_cast<digit_t>((rows[r] >> c) & 1u);
  }
  return out;
}

inline RrefResult rref_generic(const Field& f, Matrix m) {
  const int cols = m.cols();
  const int nrows = m.rows();
  RrefResult out;
  int rank = 0;
  for (int c = 0; c < cols && rank < nrows; ++c) {
    int sel = -1;
    for (int r = rank; r < nrows; ++r) {
      if (m.at(r, c) != 0) { sel = r; break; }
    }
    if (sel < 0) continue;
    if (sel != rank) {
      auto a = m.row(sel);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(rank);
    const digit_t scale = f.inv(prow[c]);
    for (auto& x : prow) x = f.mul(x, scale);
    for (int r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      const digit_t factor = m.at(r, c);
      if (factor == 0) continue;
      auto target = m.row(r);
      for (int j = c; j < cols; ++j) target[j] = f.sub(target[j], f.mul(factor, prow[j]));
    }
    out.pivots.push_back(c);
    ++rank;
  }
  m.truncate_rows(rank);
  out.rank = rank;
  out.basis = std::move(m);
  return out;
}

}  // namespace detail

inline RrefResult rref(const Field& f, const Matrix& m) {
  if (f.q() == 2 && m.cols() <= 64) return detail::rref_gf2(m);
  return detail::rref_generic(f, m);
}

// Returns some x with m x = rhs, or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const Field& f, const Matrix& m, std::span<const digit_t> rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw ShapeMismatch("right-hand side length must equal the number of equations");
  Matrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = rhs[r];
  }
  const auto red = rref(f, aug);
  Vector x(static_cast<std::size_t>(m.cols()), 0);
  for (int r = 0; r < red.rank; ++r) {
    const int pc = red.pivots[r];
    if (pc == m.cols()) return std::nullopt;
    x[pc] = red.basis.at(r, m.cols());
  }
  return x;
}

// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vector> nullspace(const Field& f, const Matrix& m) {
  const auto red = rref(f, m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : red.pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(static_cast<std::size_t>(m.cols()), 0);
    v[free] = 1;
    for (int r = 0; r < red.rank; ++r) v[red.pivots[r]] = f.neg(red.basis.at(r, free));
    out.push_back(std::move(v));
  }
  return out;
}

class Subspace {
 public:
  // The zero subspace of F_q^n.
  Subspace(const Field& f, int n) : field_(&f), n_(n) {}

  static Subspace span(const Field& f, const Matrix& rows) {
    auto red = rref(f, rows);
    Subspace s(f, rows.cols());
    s.dim_ = red.rank;
    s.rows_ = std::move(red.basis);
    s.pivots_ = std::move(red.pivots);
    return s;
  }

  static Subspace span(const Field& f, int n, const std::vector<Vector>& rows) {
    return span(f, Matrix::from_rows(rows, n));
  }

  static Subspace whole(const Field& f, int n) {
    Matrix id(n, n);
    for (int i = 0; i < n; ++i) id.at(i, i) = 1;
    return span(f, id);
  }

  const Field& field() const noexcept { return *field_; }
  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  const Matrix& basis() const noexcept { return rows_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  std::span<const digit_t> row(int r) const noexcept { return rows_.row(r); }

  // v minus the combination of basis rows that clears every pivot coordinate.
  // The result is zero exactly when v lies in the subspace.
  Vector reduce(std::span<const digit_t> v) const {
    check_len(v.size());
    Vector out(v.begin(), v.end());
    const Field& f = *field_;
    for (int r = 0; r < dim_; ++r) {
      const digit_t c = out[pivots_[r]];
      if (c == 0) continue;
      const auto br = rows_.row(r);
      for (int j = pivots_[r]; j < n_; ++j) out[j] = f.sub(out[j], f.mul(c, br[j]));
    }
    return out;
  }

  bool contains(std::span<const digit_t> v) const {
    const auto red = reduce(v);
    return std::all_of(red.begin(), red.end(), [](digit_t x) { return x == 0; });
  }

  bool contains(const Subspace& other) const {
    check_compatible(other);
    if (other.dim_ > dim_) return false;
    for (int r = 0; r < other.dim_; ++r) {
      if (!contains(other.row(r))) return false;
    }
    return true;
  }

  void check_compatible(const Subspace& other) const {
    if (other.n_ != n_ || other.field_->q() != field_->q()) {
      throw AmbientMismatch("subspaces live in different ambient spaces");
    }
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_->q() == b.field_->q() && a.n_ == b.n_ && a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.field_->q() <=> b.field_->q(); c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    const auto& da = a.rows_.data();
    const auto& db = b.rows_.data();
    return std::lexicographical_compare_three_way(da.begin(), da.end(), db.begin(), db.end());
  }

  // Trusted constructor for rows already in RREF (used by enumeration).
  static Subspace from_rref(const Field& f, Matrix rows, std::vector<int> pivots) {
    Subspace s(f, rows.cols());
    s.dim_ = rows.rows();
    s.rows_ = std::move(rows);
    s.pivots_ = std::move(pivots);
    return s;
  }

 private:
  void check_len(std::size_t len) const {
    if (static_cast<int>(len) != n_) throw AmbientMismatch("vector length does not match ambient dimension");
  }

  const Field* field_;
  int n_;
  int dim_ = 0;
  Matrix rows_{0, n_};
  std::vector<int> pivots_;
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  Matrix stacked = a.basis();
  for (int r = 0; r < b.dim(); ++r) stacked.append_row(b.row(r));
  return Subspace::span(a.field(), stacked);
}

// Kernel of [a-rows ; -b-rows]: coefficient pairs with sum(l_i a_i) = sum(m_j b_j).
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  const Field& f = a.field();
  const int n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(f, n);
  Matrix sys(n, a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int c = 0; c < n; ++c) sys.at(c, i) = a.row(i)[c];
  for (int j = 0; j < b.dim(); ++j)
    for (int c = 0; c < n; ++c) sys.at(c, a.dim() + j) = f.neg(b.row(j)[c]);
  Matrix vecs(0, n);
  for (const auto& coeffs : nullspace(f, sys)) {
    Vector v(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < a.dim(); ++i) {
      if (coeffs[i] == 0) continue;
      const auto ar = a.row(i);
      for (int c = 0; c < n; ++c) v[c] = f.add(v[c], f.mul(coeffs[i], ar[c]));
    }
    vecs.append_row(v);
  }
  return Subspace::span(f, vecs);
}

// dim of the span of the given rows, all of length n.
inline int span_rank(const Field& f, int n, std::initializer_list<std::span<const digit_t>> extra,
                     std::initializer_list<const Subspace*> spaces) {
  if (f.q() == 2 && n <= 64) {
    // XOR basis keyed by highest set bit.
    std::array<std::uint64_t, 64> basis{};
    int rank = 0;
    auto insert = [&](std::span<const digit_t> v) {
      std::uint64_t w = 0;
      for (int c = 0; c < n; ++c) {
        if (v[c]) w |= std::uint64_t{1} << c;
      }
      while (w) {
        const int top = 63 - std::countl_zero(w);
        if (!basis[top]) {
          basis[top] = w;
          ++rank;
          return;
        }
        w ^= basis[top];
      }
    };
    for (const Subspace* s : spaces)
      for (int r = 0; r < s->dim(); ++r) insert(s->row(r));
    for (auto v : extra) insert(v);
    return rank;
  }
  Matrix m(0, n);
  for (const Subspace* s : spaces)
    for (int r = 0; r < s->dim(); ++r) m.append_row(s->row(r));
  for (auto v : extra) m.append_row(v);
  return rref(f, m).rank;
}

namespace detail {

inline bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

// Advances digits in place as a base-q counter, last position fastest.
inline bool next_digits(std::vector<digit_t>& digits, int q) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < q) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

// Visits every k-subspace of F_q^n exactly once: pivot sets in lexicographic
// order, then the free RREF entries (row-major, last entry fastest).
inline void for_each_subspace(int n, int k, const Field& f, const std::function<void(const Subspace&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> pivots(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pivots[i] = i;
  do {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free_slots;
    for (int r = 0; r < k; ++r)
      for (int c = pivots[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(r, c);
    Matrix m(k, n);
    for (int r = 0; r < k; ++r) m.at(r, pivots[r]) = 1;
    std::vector<digit_t> digits(free_slots.size(), 0);
    do {
      for (std::size_t i = 0; i < free_slots.size(); ++i) m.at(free_slots[i].first, free_slots[i].second) = digits[i];
      visit(Subspace::from_rref(f, m, pivots));
    } while (detail::next_digits(digits, f.q()));
  } while (k > 0 && detail::next_combination(pivots, n));
}

inline std::vector<Subspace> enumerate_subspaces(int n, int k, const Field& f) {
  std::vector<Subspace> out;
  for_each_subspace(n, k, f, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

// "100|010" for <e1,e2> in n=3; the zero subspace is "-".
inline std::string to_string(const Subspace& s) {
  if (s.dim() == 0) return "-";
  std::string out;
  for (int r = 0; r < s.dim(); ++r) {
    if (r) out += '|';
    for (digit_t d : s.row(r)) out += static_cast<char>('0' + d);
  }
  return out;
}

inline Vector parse_digits(std::string_view text, const Field& f) {
  Vector v;
  v.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9' || ch - '0' >= f.q()) {
      throw ParseError("invalid field digit '" + std::string(1, ch) + "' for " + f.to_string());
    }
    v.push_back(static_cast<digit_t>(ch - '0'));
  }
  return v;
}

inline Subspace parse_subspace(std::string_view text, const Field& f, int n) {
  if (text == "-") return Subspace(f, n);
  Matrix m(0, n);
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto bar = text.find('|', start);
    const auto piece = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    const auto v = parse_digits(piece, f);
    if (static_cast<int>(v.size()) != n) throw ParseError("subspace row has wrong length");
    m.append_row(v);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Subspace::span(f, m);
}

}  // namespace afflats
