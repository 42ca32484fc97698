#pragma once

/**
 * @file algebra.hpp
 * @brief Finite-dimensional algebras given by structure constants.
 *
 * An Algebra stores the coordinates of every basis product e_i * e_j, an
 * optional two-sided unit and an optional quadratic form. The form keeps the
 * diagonal values n(e_i) next to the polar values n(e_i, e_j), i < j, because
 * in characteristic 2 the polar form does not determine n.
 */

#include <complen/linalg.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace complen {

template <ExactField F>
struct QuadraticForm {
  using Element = typename F::Element;

  std::size_t dim = 0;
  Vec<F> diag;
  /// Row-major dim x dim; only entries with i < j are meaningful.
  Vec<F> upper;

  static QuadraticForm zero(const F& f, std::size_t n) {
    return QuadraticForm{n, Vec<F>(n, f.zero()), Vec<F>(n * n, f.zero())};
  }

  const Element& polar_entry(std::size_t i, std::size_t j) const {
    return i < j ? upper[i * dim + j] : upper[j * dim + i];
  }
  void set_polar(std::size_t i, std::size_t j, Element v) {
    if (i > j) std::swap(i, j);
    upper[i * dim + j] = std::move(v);
  }

  /// Gram matrix of the polar form; its diagonal is 2 n(e_i).
  std::vector<Vec<F>> gram(const F& f) const {
    std::vector<Vec<F>> g(dim, Vec<F>(dim, f.zero()));
    for (std::size_t i = 0; i < dim; ++i) {
      g[i][i] = f.add(diag[i], diag[i]);
      for (std::size_t j = i + 1; j < dim; ++j) g[i][j] = g[j][i] = upper[i * dim + j];
    }
    return g;
  }

  bool strictly_nondegenerate(const F& f) const {
    auto g = gram(f);
    return rank_of<F>(f, dim, g) == dim;
  }

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    if (a.dim != b.dim || a.diag != b.diag) return false;
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = i + 1; j < a.dim; ++j)
        if (a.upper[i * a.dim + j] != b.upper[i * b.dim + j]) return false;
    return true;
  }
};

enum class Twist { I, II, III, IV };

inline const char* twist_name(Twist t) {
  switch (t) {
    case Twist::I: return "I";
    case Twist::II: return "II";
    case Twist::III: return "III";
    case Twist::IV: return "IV";
  }
  return "?";
}

/// Remembers that an algebra is a standard twist of a Hurwitz algebra with
/// the given unit; the twisted product no longer has that unit.
template <ExactField F>
struct TwistInfo {
  Twist type = Twist::I;
  Vec<F> base_unit;

  friend bool operator==(const TwistInfo&, const TwistInfo&) = default;
};

template <ExactField F>
class Algebra {
 public:
  using Element = typename F::Element;

  /// `mul` is dim*dim*dim: entry (i*dim + j)*dim + k is the e_k coordinate of
  /// e_i * e_j. Throws DimensionMismatch on bad sizes and InvariantViolation
  /// when a supplied unit is not a two-sided unit.
  Algebra(F field, std::string name, std::vector<std::string> labels, Vec<F> mul,
          std::optional<Vec<F>> unit = std::nullopt,
          std::optional<QuadraticForm<F>> quad = std::nullopt,
          std::optional<TwistInfo<F>> twist = std::nullopt)
      : field_(std::move(field)),
        name_(std::move(name)),
        labels_(std::move(labels)),
        dim_(labels_.size()),
        mul_(std::move(mul)),
        unit_(std::move(unit)),
        quad_(std::move(quad)),
        twist_(std::move(twist)) {
    if (dim_ == 0) throw Error(Errc::dimension_mismatch, "algebra of dimension 0");
    if (mul_.size() != dim_ * dim_ * dim_)
      throw Error(Errc::dimension_mismatch, "structure constants need dim^3 = " +
                                                std::to_string(dim_ * dim_ * dim_) + " entries");
    if (unit_ && unit_->size() != dim_) throw Error(Errc::dimension_mismatch, "unit has wrong length");
    if (quad_ && (quad_->dim != dim_ || quad_->diag.size() != dim_ || quad_->upper.size() != dim_ * dim_))
      throw Error(Errc::dimension_mismatch, "quadratic form has wrong dimension");
    if (twist_ && twist_->base_unit.size() != dim_)
      throw Error(Errc::dimension_mismatch, "twist base unit has wrong length");
    build_terms();
    if (unit_) verify_unit();
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec<F>& structure_constants() const { return mul_; }
  std::span<const Element> product_of_basis(std::size_t i, std::size_t j) const {
    return {mul_.data() + (i * dim_ + j) * dim_, dim_};
  }
  const std::optional<Vec<F>>& unit() const { return unit_; }
  const std::optional<QuadraticForm<F>>& quad() const { return quad_; }
  const std::optional<TwistInfo<F>>& twist() const { return twist_; }
  bool is_unital() const { return unit_.has_value(); }

  Algebra with_quad(QuadraticForm<F> q) const {
    Algebra copy = *this;
    if (q.dim != dim_) throw Error(Errc::dimension_mismatch, "quadratic form has wrong dimension");
    copy.quad_ = std::move(q);
    return copy;
  }
  Algebra with_name(std::string name) const {
    Algebra copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  /// out = x * y; out must already have length dim.
  void multiply_into(std::span<const Element> x, std::span<const Element> y, std::span<Element> out) const {
    for (auto& c : out) c = field_.zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(y[j])) continue;
        Element c = field_.mul(x[i], y[j]);
        const std::size_t cell = i * dim_ + j;
        for (std::uint32_t t = offsets_[cell]; t < offsets_[cell + 1]; ++t)
          out[terms_[t].first] = field_.add(out[terms_[t].first], field_.mul(c, terms_[t].second));
      }
    }
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.name_ == b.name_ && a.labels_ == b.labels_ && a.mul_ == b.mul_ &&
           a.unit_ == b.unit_ && a.quad_ == b.quad_ && a.twist_ == b.twist_;
  }

 private:
  void build_terms() {
    offsets_.assign(dim_ * dim_ + 1, 0);
    terms_.clear();
    for (std::size_t cell = 0; cell < dim_ * dim_; ++cell) {
      offsets_[cell] = static_cast<std::uint32_t>(terms_.size());
      for (std::size_t k = 0; k < dim_; ++k) {
        const Element& c = mul_[cell * dim_ + k];
        if (!field_.is_zero(c)) terms_.emplace_back(static_cast<std::uint32_t>(k), c);
      }
    }
    offsets_[dim_ * dim_] = static_cast<std::uint32_t>(terms_.size());
  }

  void verify_unit() const {
    Vec<F> out(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec<F> bj = basis_vec(field_, dim_, j);
      multiply_into(*unit_, bj, out);
      bool left = out == bj;
      multiply_into(bj, *unit_, out);
      if (!left || out != bj)
        throw Error(Errc::invariant_violation, "declared unit fails e * " + labels_[j] + " = " + labels_[j] +
                                                   " = " + labels_[j] + " * e");
    }
  }

  F field_;
  std::string name_;
  std::vector<std::string> labels_;
  std::size_t dim_;
  Vec<F> mul_;
  std::optional<Vec<F>> unit_;
  std::optional<QuadraticForm<F>> quad_;
  std::optional<TwistInfo<F>> twist_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::pair<std::uint32_t, Element>> terms_;
};

template <ExactField F>
void check_conforms(const Algebra<F>& a, std::size_t n) {
  if (n != a.dim())
    throw Error(Errc::dimension_mismatch, "element of length " + std::to_string(n) + " in algebra of dim " +
                                              std::to_string(a.dim()));
}

template <ExactField F>
Vec<F> multiply(const Algebra<F>& a, std::span<const typename F::Element> x,
                std::span<const typename F::Element> y) {
  check_conforms(a, x.size());
  check_conforms(a, y.size());
  Vec<F> out(a.dim());
  a.multiply_into(x, y, out);
  return out;
}

template <ExactField F>
Vec<F> multiply(const Algebra<F>& a, const Vec<F>& x, const Vec<F>& y) {
  return multiply<F>(a, std::span<const typename F::Element>(x), std::span<const typename F::Element>(y));
}

template <ExactField F>
const QuadraticForm<F>& require_quad(const Algebra<F>& a) {
  if (!a.quad()) throw Error(Errc::missing_quadratic_form, "algebra '" + a.name() + "' has no quadratic form");
  return *a.quad();
}

template <ExactField F>
const Vec<F>& require_unit(const Algebra<F>& a) {
  if (!a.unit()) throw Error(Errc::missing_unit, "algebra '" + a.name() + "' has no unit");
  return *a.unit();
}

template <ExactField F>
typename F::Element quad_eval(const F& f, const QuadraticForm<F>& q, std::span<const typename F::Element> x) {
  auto acc = f.zero();
  for (std::size_t i = 0; i < q.dim; ++i) {
    if (f.is_zero(x[i])) continue;
    acc = f.add(acc, f.mul(f.mul(x[i], x[i]), q.diag[i]));
    for (std::size_t j = i + 1; j < q.dim; ++j) {
      if (f.is_zero(x[j])) continue;
      const auto& c = q.upper[i * q.dim + j];
      if (!f.is_zero(c)) acc = f.add(acc, f.mul(f.mul(x[i], x[j]), c));
    }
  }
  return acc;
}

/// n(x) by the evaluation rule sum x_i^2 diag_i + sum_{i<j} x_i x_j polar_ij.
template <ExactField F>
typename F::Element quad_eval(const Algebra<F>& a, std::span<const typename F::Element> x) {
  check_conforms(a, x.size());
  return quad_eval(a.field(), require_quad(a), x);
}

/// n(x, y) = n(x + y) - n(x) - n(y).
template <ExactField F>
typename F::Element polar_eval(const Algebra<F>& a, std::span<const typename F::Element> x,
                               std::span<const typename F::Element> y) {
  check_conforms(a, x.size());
  check_conforms(a, y.size());
  const F& f = a.field();
  Vec<F> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = f.add(x[i], y[i]);
  return f.sub(f.sub(quad_eval(a, s), quad_eval(a, x)), quad_eval(a, y));
}

/// Solves e * e_j = e_j = e_j * e for all j and verifies the candidate.
template <ExactField F>
std::optional<Vec<F>> find_unit(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.dim();
  std::vector<Vec<F>> rows;
  Vec<F> rhs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Vec<F> left(n), right(n);
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = a.product_of_basis(i, j)[k];
        right[i] = a.product_of_basis(j, i)[k];
      }
      auto target = j == k ? f.one() : f.zero();
      rows.push_back(std::move(left));
      rhs.push_back(target);
      rows.push_back(std::move(right));
      rhs.push_back(target);
    }
  }
  auto e = solve_linear(f, rows, rhs, n);
  if (!e) return std::nullopt;
  Vec<F> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec<F> bj = basis_vec(f, n, j);
    a.multiply_into(*e, bj, out);
    if (out != bj) return std::nullopt;
    a.multiply_into(bj, *e, out);
    if (out != bj) return std::nullopt;
  }
  return e;
}

/// n(x, e) e - x relative to an explicit unit of the underlying Hurwitz algebra.
template <ExactField F>
Vec<F> conjugate_with(const F& f, const QuadraticForm<F>& q, const Vec<F>& e, std::span<const typename F::Element> x) {
  Vec<F> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = f.add(x[i], e[i]);
  auto t = f.sub(f.sub(quad_eval(f, q, s), quad_eval(f, q, x)), quad_eval(f, q, std::span<const typename F::Element>(e)));
  Vec<F> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.sub(f.mul(t, e[i]), x[i]);
  return out;
}

template <ExactField F>
Vec<F> conjugate(const Algebra<F>& a, std::span<const typename F::Element> x) {
  check_conforms(a, x.size());
  const auto& e = require_unit(a);
  return conjugate_with(a.field(), require_quad(a), e, x);
}

/// Span of {u * v : u in rows(U), v in rows(V)}.
template <ExactField F>
Subspace<F> product_span(const Algebra<F>& a, const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != a.dim() || v.ambient_dim() != a.dim())
    throw Error(Errc::dimension_mismatch, "product_span operands do not live in the algebra");
  Subspace<F> out(a.dim());
  Vec<F> prod(a.dim());
  for (std::size_t i = 0; i < u.rank() && !out.is_full(); ++i)
    for (std::size_t j = 0; j < v.rank() && !out.is_full(); ++j) {
      a.multiply_into(u.row(i), v.row(j), prod);
      out.absorb(a.field(), prod);
    }
  return out;
}

/// Smallest subspace containing S and closed under multiplication.
template <ExactField F>
Subspace<F> subalgebra_closure(const Algebra<F>& a, std::span<const Vec<F>> s) {
  const F& f = a.field();
  Subspace<F> span(a.dim());
  std::vector<Vec<F>> gens;
  for (const auto& v : s) {
    check_conforms(a, v.size());
    if (span.absorb(f, v)) gens.push_back(v);
  }
  Vec<F> prod(a.dim());
  // Every ordered pair of generators is multiplied once: when the later of
  // the two is processed.
  for (std::size_t next = 0; next < gens.size() && !span.is_full(); ++next) {
    for (std::size_t j = 0; j <= next && !span.is_full(); ++j) {
      a.multiply_into(gens[next], gens[j], prod);
      if (span.absorb(f, prod)) gens.push_back(prod);
      if (j == next) continue;
      a.multiply_into(gens[j], gens[next], prod);
      if (span.absorb(f, prod)) gens.push_back(prod);
    }
  }
  return span;
}

}  // namespace complen
