#pragma once

/**
 * @file linalg.hpp
 * @brief Coordinate vectors and canonical subspaces over an exact field.
 *
 * A Subspace keeps its basis in reduced row-echelon form (pivot entries 1,
 * pivot columns zero elsewhere, pivots ascending), so two subspaces are equal
 * exactly when their stored rows are equal.
 */

#include <complen/scalar.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace complen {

template <ExactField F>
using Vec = std::vector<typename F::Element>;

template <ExactField F>
Vec<F> zero_vec(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <ExactField F>
Vec<F> basis_vec(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <ExactField F>
bool is_zero_vec(const F& f, std::span<const typename F::Element> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& c) { return f.is_zero(c); });
}

/// y += c * x
template <ExactField F>
void axpy(const F& f, const typename F::Element& c, std::span<const typename F::Element> x,
          std::span<typename F::Element> y) {
  if (f.is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(c, x[i]));
}

template <ExactField F>
Vec<F> vec_add(const F& f, const Vec<F>& x, const Vec<F>& y) {
  Vec<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.add(x[i], y[i]);
  return out;
}

template <ExactField F>
Vec<F> vec_sub(const F& f, const Vec<F>& x, const Vec<F>& y) {
  Vec<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.sub(x[i], y[i]);
  return out;
}

template <ExactField F>
Vec<F> vec_scale(const F& f, const typename F::Element& c, const Vec<F>& x) {
  Vec<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.mul(c, x[i]);
  return out;
}

/// Linear combination sum_i coeffs[i] * vectors[i].
template <ExactField F>
Vec<F> combine(const F& f, std::size_t n, std::span<const typename F::Element> coeffs,
               std::span<const Vec<F>> vectors) {
  Vec<F> out = zero_vec(f, n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) axpy<F>(f, coeffs[i], vectors[i], out);
  return out;
}

template <ExactField F>
class Subspace {
 public:
  using Element = typename F::Element;

  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return pivots_.size(); }
  bool is_full() const { return rank() == ambient_; }
  bool empty() const { return pivots_.empty(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::span<const Element> row(std::size_t r) const {
    return {rows_.data() + r * ambient_, ambient_};
  }

  std::vector<Vec<F>> basis() const {
    std::vector<Vec<F>> out;
    for (std::size_t r = 0; r < rank(); ++r) out.emplace_back(row(r).begin(), row(r).end());
    return out;
  }

  /// Remainder of v modulo the span; zero iff v is contained.
  Vec<F> reduce(const F& f, std::span<const Element> v) const {
    Vec<F> out(v.begin(), v.end());
    for (std::size_t r = 0; r < rank(); ++r) {
      Element c = out[pivots_[r]];
      if (f.is_zero(c)) continue;
      auto src = row(r);
      for (std::size_t j = pivots_[r]; j < ambient_; ++j)
        if (!f.is_zero(src[j])) out[j] = f.sub(out[j], f.mul(c, src[j]));
    }
    return out;
  }

  bool contains(const F& f, std::span<const Element> v) const {
    check_length(v.size());
    auto rem = reduce(f, v);
    return is_zero_vec<F>(f, rem);
  }

  /// Adds v to the span in place; returns whether the rank grew.
  bool absorb(const F& f, std::span<const Element> v) {
    check_length(v.size());
    if (is_full()) return false;
    Vec<F> rem = reduce(f, v);
    std::size_t lead = 0;
    while (lead < ambient_ && f.is_zero(rem[lead])) ++lead;
    if (lead == ambient_) return false;
    Element scale = f.inv(rem[lead]);
    for (std::size_t j = lead; j < ambient_; ++j) rem[j] = f.mul(scale, rem[j]);
    for (std::size_t r = 0; r < rank(); ++r) {
      Element* dst = rows_.data() + r * ambient_;
      Element c = dst[lead];
      if (f.is_zero(c)) continue;
      for (std::size_t j = lead; j < ambient_; ++j)
        if (!f.is_zero(rem[j])) dst[j] = f.sub(dst[j], f.mul(c, rem[j]));
    }
    auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos * ambient_), rem.begin(), rem.end());
    return true;
  }

  bool is_subspace_of(const F& f, const Subspace& other) const {
    for (std::size_t r = 0; r < rank(); ++r)
      if (!other.contains(f, row(r))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  void check_length(std::size_t n) const {
    if (n != ambient_)
      throw Error(Errc::dimension_mismatch,
                  "vector of length " + std::to_string(n) + " in ambient dimension " + std::to_string(ambient_));
  }

  std::size_t ambient_;
  std::vector<std::size_t> pivots_;
  std::vector<Element> rows_;
};

template <ExactField F>
Subspace<F> span_of(const F& f, std::size_t n, std::span<const Vec<F>> vectors) {
  Subspace<F> s(n);
  for (const auto& v : vectors) s.absorb(f, v);
  return s;
}

template <ExactField F>
std::size_t rank_of(const F& f, std::size_t n, std::span<const Vec<F>> vectors) {
  return span_of(f, n, vectors).rank();
}

/// subspace_insert: U + span{v}.
template <ExactField F>
Subspace<F> subspace_insert(const F& f, Subspace<F> u, std::span<const typename F::Element> v) {
  u.absorb(f, v);
  return u;
}

template <ExactField F>
bool subspace_contains(const F& f, const Subspace<F>& u, std::span<const typename F::Element> v) {
  return u.contains(f, v);
}

template <ExactField F>
Subspace<F> subspace_sum(const F& f, Subspace<F> u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw Error(Errc::dimension_mismatch, "subspace_sum of different ambient dimensions");
  for (std::size_t r = 0; r < v.rank(); ++r) u.absorb(f, v.row(r));
  return u;
}

/// One solution of the linear system rows * x = rhs (free variables set to
/// zero), or nullopt when it is inconsistent.
template <ExactField F>
std::optional<Vec<F>> solve_linear(const F& f, const std::vector<Vec<F>>& rows, const Vec<F>& rhs,
                                   std::size_t unknowns) {
  // Echelonise the augmented matrix; a pivot in the last column means no solution.
  Subspace<F> aug(unknowns + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Vec<F> r = rows[i];
    r.push_back(rhs[i]);
    aug.absorb(f, r);
  }
  Vec<F> x = zero_vec(f, unknowns);
  for (std::size_t r = 0; r < aug.rank(); ++r) {
    std::size_t p = aug.pivots()[r];
    if (p == unknowns) return std::nullopt;
    x[p] = aug.row(r)[unknowns];
  }
  return x;
}

}  // namespace complen
