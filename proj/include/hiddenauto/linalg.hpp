// Exact integer and rational linear algebra over incidence matrices.
//
// Convention: entry (i, j) of an incidence matrix counts letter i in the image
// of letter j, so columns are indexed by source letters and the column sums
// are the image lengths. With this convention M(f o g) = M(f) M(g).

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hiddenauto/word.hpp"

namespace hiddenauto {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

template <class T>
Matrix<T> matrix_power(Matrix<T> base, std::uint64_t k) {
  Matrix<T> result = Matrix<T>::identity(base.rows());
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

/// Row vector times matrix.
template <class T>
std::vector<T> left_multiply(std::span<const T> v, const Matrix<T>& m) {
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  return out;
}

template <class T>
std::vector<T> right_multiply(const Matrix<T>& m, std::span<const T> v) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

struct IncidenceData {
  IntMatrix matrix;
  std::vector<BigInt> length_vector;
  std::size_t dim = 0;
};

inline IncidenceData incidence(const Morphism& m) {
  IncidenceData d{IntMatrix(m.size(), m.size()), {}, m.size()};
  for (Letter j = 0; j < m.size(); ++j) {
    for (Letter i : m.image(j)) d.matrix(i, j) += 1;
    d.length_vector.emplace_back(m.image(j).size());
  }
  return d;
}

/// Monic integer polynomial, coefficients stored from the constant term up.
class IntPolynomial {
 public:
  IntPolynomial() : coeffs_{BigInt(1)} {}
  explicit IntPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty() || coeffs_.back() != 1)
      throw std::invalid_argument("IntPolynomial must be monic");
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Coefficients from the leading term down, e.g. {1,-2,-2,-1,2}.
  std::vector<BigInt> descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

  template <class T>
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      BigInt c = coeffs_[k];
      if (c == 0) continue;
      bool neg = c < 0;
      BigInt a = neg ? BigInt(-c) : c;
      if (first)
        out << (neg ? "-" : "");
      else
        out << (neg ? " - " : " + ");
      if (a != 1 || k == 0) out << a;
      if (k >= 1) out << 'x';
      if (k >= 2) out << '^' << k;
      first = false;
    }
    if (first) out << '0';
    return out.str();
  }

 private:
  std::vector<BigInt> coeffs_;
};

/// det(xI - M) by the Faddeev-LeVerrier recurrence; every division is exact.
inline IntPolynomial char_poly(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("char_poly: matrix must be square");
  const std::size_t n = m.rows();
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    IntMatrix amk = m * mk;
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    if (trace % k != 0) throw std::logic_error("char_poly: inexact Faddeev-LeVerrier division");
    c[n - k] = -trace / BigInt(k);
  }
  return IntPolynomial(std::move(c));
}

namespace detail {

/// Synthetic division by (x - r); returns quotient (ascending) and remainder.
inline std::pair<std::vector<BigInt>, BigInt> divide_linear(const std::vector<BigInt>& p,
                                                            const BigInt& r) {
  std::vector<BigInt> q(p.size() - 1);
  BigInt acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * r + p[k];
    if (k > 0) q[k - 1] = acc;
  }
  return {q, acc};
}

inline std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

struct IntegerRoot {
  BigInt root;
  std::size_t multiplicity;
  friend bool operator==(const IntegerRoot&, const IntegerRoot&) = default;
};

/// All integer (equivalently, rational) roots of a monic polynomial, in
/// increasing order. Candidates are 0 and the divisors of the constant term.
inline std::vector<IntegerRoot> integer_roots(const IntPolynomial& p) {
  std::vector<BigInt> c = p.coefficients();
  std::vector<IntegerRoot> roots;
  std::size_t zero_mult = 0;
  while (c.size() > 1 && c.front() == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  std::vector<BigInt> candidates;
  if (c.size() > 1)
    for (const BigInt& d : detail::positive_divisors(c.front())) {
      candidates.push_back(d);
      candidates.push_back(-d);
    }
  for (const BigInt& r : candidates) {
    std::size_t mult = 0;
    while (c.size() > 1) {
      auto [q, rem] = detail::divide_linear(c, r);
      if (rem != 0) break;
      c = std::move(q);
      ++mult;
    }
    if (mult) roots.push_back({r, mult});
  }
  if (zero_mult) roots.push_back({BigInt(0), zero_mult});
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
  return roots;
}

/// Returns lambda iff L M = lambda L exactly.
inline std::optional<Rational> left_eigencheck(std::span<const BigInt> l, const IntMatrix& m) {
  if (l.size() != m.rows() || !m.square()) throw std::invalid_argument("left_eigencheck: dimension mismatch");
  auto lm = left_multiply(l, m);
  std::optional<Rational> lambda;
  for (std::size_t j = 0; j < l.size(); ++j) {
    if (l[j] <= 0) throw std::invalid_argument("left_eigencheck: L must be positive");
    Rational ratio(lm[j], l[j]);
    if (!lambda)
      lambda = ratio;
    else if (*lambda != ratio)
      return std::nullopt;
  }
  return lambda;
}

/// Support pattern of M as 0/1 entries.
inline Matrix<std::uint8_t> support(const IntMatrix& m) {
  Matrix<std::uint8_t> s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = m(i, j) != 0;
  return s;
}

namespace detail {

inline Matrix<std::uint8_t> bool_product(const Matrix<std::uint8_t>& a, const Matrix<std::uint8_t>& b) {
  Matrix<std::uint8_t> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k))
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) |= b(k, j);
  return c;
}

}  // namespace detail

/// Primitivity via the Wielandt exponent: M is primitive iff M^(r^2-2r+2) > 0.
inline bool is_primitive(const IntMatrix& m) {
  const std::size_t r = m.rows();
  if (r == 0) return false;
  std::uint64_t w = static_cast<std::uint64_t>(r) * r - 2 * r + 2;
  auto base = support(m);
  auto result = Matrix<std::uint8_t>::identity(r);
  while (w) {
    if (w & 1) result = detail::bool_product(result, base);
    w >>= 1;
    if (w) base = detail::bool_product(base, base);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!result(i, j)) return false;
  return true;
}

/// Strongly connected components of the support digraph (edge j -> i when
/// M(i, j) > 0), Tarjan's algorithm. Components come out in reverse
/// topological order.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (m(w, v) == 0) continue;
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comps;
}

struct RadiusBracket {
  Rational lo;
  Rational hi;
  bool loose = false;  // tolerance not reached within the iteration cap

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

namespace detail {

/// Collatz-Wielandt bracket for an irreducible nonnegative block B, run on
/// A = I + B (primitive, spectral radius 1 + rho(B)). The iterate is rescaled
/// by powers of two to keep its size bounded; the bounds are exact for
/// whatever positive vector is used.
inline RadiusBracket irreducible_bracket(const IntMatrix& b, const Rational& tol, std::size_t max_iter) {
  const std::size_t n = b.rows();
  IntMatrix a = b + IntMatrix::identity(n);
  std::vector<BigInt> v(n, BigInt(1));
  RadiusBracket best{Rational(0), Rational(0), true};
  bool have = false;
  constexpr unsigned keep_bits = 256;
  for (std::size_t it = 0; it < max_iter; ++it) {
    auto w = right_multiply<BigInt>(a, v);
    Rational lo, hi;
    for (std::size_t i = 0; i < n; ++i) {
      Rational ratio(w[i], v[i]);
      if (i == 0 || ratio < lo) lo = ratio;
      if (i == 0 || ratio > hi) hi = ratio;
    }
    if (!have || lo - 1 > best.lo) best.lo = lo - 1;
    if (!have || hi - 1 < best.hi) best.hi = hi - 1;
    have = true;
    if (best.hi - best.lo <= tol) {
      best.loose = false;
      return best;
    }
    BigInt top = *std::max_element(w.begin(), w.end());
    std::size_t bits = boost::multiprecision::msb(top) + 1;
    if (bits > 2 * keep_bits) {
      unsigned shift = static_cast<unsigned>(bits - keep_bits);
      for (auto& x : w) {
        x >>= shift;
        if (x == 0) x = 1;
      }
    }
    v = std::move(w);
  }
  return best;
}

}  // namespace detail

/// Rational interval containing the spectral radius, of width <= tol unless
/// `loose` is set. The radius is the maximum over the irreducible diagonal
/// blocks of the SCC decomposition.
inline RadiusBracket radius_bracket(const IntMatrix& m, const Rational& tol = Rational(1, 1000000000),
                                    std::size_t max_iter = 20000) {
  if (!m.square()) throw std::invalid_argument("radius_bracket: matrix must be square");
  RadiusBracket out{Rational(0), Rational(0), false};
  for (const auto& comp : strongly_connected_components(m)) {
    IntMatrix block(comp.size(), comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < comp.size(); ++j) block(i, j) = m(comp[i], comp[j]);
    if (comp.size() == 1) {
      Rational x(block(0, 0));
      out.lo = std::max(out.lo, x);
      out.hi = std::max(out.hi, x);
      continue;
    }
    auto b = detail::irreducible_bracket(block, tol, max_iter);
    out.lo = std::max(out.lo, b.lo);
    out.hi = std::max(out.hi, b.hi);
    out.loose = out.loose || b.loose;
  }
  if (out.hi - out.lo > tol) out.loose = true;
  return out;
}

namespace detail {

using RatPoly = std::vector<Rational>;  // ascending

inline void normalize(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * k);
  normalize(d);
  return d;
}

inline RatPoly remainder(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= factor * b[k];
    a.pop_back();
    normalize(a);
  }
  return a;
}

inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Rational eval(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Number of distinct real roots of p in (a, +inf), by Sturm's theorem;
/// requires p(a) != 0.
inline std::size_t real_roots_above(const RatPoly& p, const Rational& a) {
  std::vector<RatPoly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    RatPoly r = remainder(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  auto variations = [](const std::vector<int>& signs) {
    std::size_t v = 0;
    int prev = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  std::vector<int> at_a, at_inf;
  for (const auto& q : chain) {
    at_a.push_back(sign(eval(q, a)));
    at_inf.push_back(sign(q.back()));
  }
  return variations(at_a) - variations(at_inf);
}

}  // namespace detail

struct SpectralReport {
  IntPolynomial char_poly;
  std::vector<IntegerRoot> integer_roots;
  RadiusBracket radius_bracket;
  bool dominant_is_integer = false;
  std::optional<BigInt> dominant_value;
};

/// The spectral radius of a nonnegative matrix is its largest real
/// eigenvalue. It is rational iff it is an integer (monic char poly), and it
/// equals the largest integer root r iff char_poly / (x - r)^m has no real
/// root above r, which a Sturm chain decides exactly.
inline SpectralReport spectral_report(const IntMatrix& m, const Rational& tol = Rational(1, 1000000000)) {
  SpectralReport rep{char_poly(m), {}, radius_bracket(m, tol), false, std::nullopt};
  rep.integer_roots = integer_roots(rep.char_poly);
  if (!rep.integer_roots.empty()) {
    const IntegerRoot& top = rep.integer_roots.back();
    std::vector<BigInt> q = rep.char_poly.coefficients();
    for (std::size_t i = 0; i < top.multiplicity; ++i) q = detail::divide_linear(q, top.root).first;
    detail::RatPoly rq(q.begin(), q.end());
    bool larger_real_root = rq.size() > 1 && detail::real_roots_above(rq, Rational(top.root)) > 0;
    if (!larger_real_root) {
      rep.dominant_is_integer = true;
      rep.dominant_value = top.root;
      if (!rep.radius_bracket.contains(Rational(top.root)))
        throw std::logic_error("spectral_report: integer spectral radius outside its bracket");
    }
  }
  return rep;
}

/// Basis of the right null space of a rational matrix (reduced row echelon).
inline std::vector<std::vector<Rational>> null_space(Matrix<Rational> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Letter frequencies of a primitive morphism with integer dominant
/// eigenvalue q: the positive right eigenvector of M for q, summing to 1.
inline std::optional<std::vector<Rational>> perron_frequencies(const IntMatrix& m) {
  if (!is_primitive(m)) return std::nullopt;
  auto rep = spectral_report(m);
  if (!rep.dominant_is_integer) return std::nullopt;
  Matrix<Rational> shifted = m.cast<Rational>();
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= Rational(*rep.dominant_value);
  auto basis = null_space(std::move(shifted));
  if (basis.size() != 1) throw std::logic_error("perron_frequencies: Perron eigenspace is not simple");
  auto v = std::move(basis.front());
  Rational total = std::accumulate(v.begin(), v.end(), Rational(0));
  for (auto& x : v) {
    x /= total;
    if (x <= 0) throw std::logic_error("perron_frequencies: eigenvector not positive");
  }
  return v;
}

/// Decimal strings, row-major; the JSON encoding of matrices.
inline std::vector<std::vector<std::string>> to_strings(const IntMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).str());
  return out;
}

inline std::string to_string(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

}  // namespace hiddenauto
