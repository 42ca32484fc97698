#pragma once

/**
 * @file constructors.hpp
 * @brief Hurwitz algebras, their standard twists, Okubo algebras and the
 * two-dimensional form of a para-Hurwitz algebra.
 *
 * Every constructor verifies its defining laws before returning and throws
 * SelfCheckFailed otherwise.
 */

#include <complen/checkers.hpp>

#include <array>

namespace complen {

namespace detail {

inline std::vector<std::string> indexed_labels(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

template <ExactField F>
void require_nonzero(const F& f, const typename F::Element& x, const char* name) {
  if (f.is_zero(x)) throw Error(Errc::zero_parameter, std::string(name) + " must be nonzero");
}

template <ExactField F>
void self_check(const Verdict<F>& v, const Algebra<F>& a, const std::string& what) {
  if (v.holds) return;
  std::string detail = v.counterexample ? v.counterexample->relation : std::string("no detail");
  throw Error(Errc::self_check_failed, what + " fails on '" + a.name() + "': " + detail);
}

}  // namespace detail

/// F itself with n(x) = x^2; a Hurwitz algebra only when char F != 2.
template <ExactField F>
Algebra<F> make_field_algebra(const F& f) {
  if (f.characteristic() == 2)
    throw Error(Errc::characteristic_forbidden, "the one-dimensional Hurwitz algebra needs characteristic != 2");
  auto q = QuadraticForm<F>::zero(f, 1);
  q.diag[0] = f.one();
  return Algebra<F>(f, "F", {"e0"}, Vec<F>{f.one()}, Vec<F>{f.one()}, q);
}

/// K(mu) = F + F l with l^2 = l + mu and n(x + y l) = x^2 + xy - mu y^2.
template <ExactField F>
Algebra<F> make_quadratic_etale(const F& f, const typename F::Element& mu) {
  auto four_mu_plus_one = f.add(f.mul(f.from_int(4), mu), f.one());
  if (f.is_zero(four_mu_plus_one)) throw Error(Errc::degenerate_parameter, "4 mu + 1 = 0");
  const auto z = f.zero(), o = f.one();
  // rows: e*e, e*l, l*e, l*l
  Vec<F> mul{o, z, z, o, z, o, mu, o};
  auto q = QuadraticForm<F>::zero(f, 2);
  q.diag = {o, f.neg(mu)};
  q.set_polar(0, 1, o);
  Algebra<F> a(f, "K(" + f.format(mu) + ")", {"e0", "e1"}, std::move(mul), Vec<F>{o, z}, q);
  detail::self_check(check_composition(a, Strategy::polarized), a, "composition law");
  return a;
}

/// (a, b)(c, d) = (ac + alpha conj(d) b, da + b conj(c)); n(a, b) = n(a) - alpha n(b).
/// The new basis is e_i = (e_i, 0) followed by e_{i+n} = (0, e_i) = e_i l.
template <ExactField F>
Algebra<F> cayley_dickson_double(const Algebra<F>& base, const typename F::Element& alpha) {
  const F& f = base.field();
  detail::require_nonzero(f, alpha, "doubling parameter");
  const auto& e = require_unit(base);
  const auto& q = require_quad(base);
  if (base.twist() && base.twist()->type != Twist::I)
    throw Error(Errc::invariant_violation, "cannot double a twisted product");
  const std::size_t n = base.dim(), m = 2 * n;
  std::vector<Vec<F>> conj;
  for (std::size_t i = 0; i < n; ++i) conj.push_back(conjugate_with(f, q, e, basis_vec(f, n, i)));
  Vec<F> mul(m * m * m, f.zero());
  auto put = [&](std::size_t i, std::size_t j, std::size_t offset, const Vec<F>& v, const typename F::Element& c) {
    for (std::size_t k = 0; k < n; ++k) mul[(i * m + j) * m + offset + k] = f.mul(c, v[k]);
  };
  const auto one = f.one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ei = basis_vec(f, n, i), ej = basis_vec(f, n, j);
      put(i, j, 0, multiply(base, ei, ej), one);
      put(i, n + j, n, multiply(base, ej, ei), one);
      put(n + i, j, n, multiply(base, ei, conj[j]), one);
      put(n + i, n + j, 0, multiply(base, conj[j], ei), alpha);
    }
  auto nq = QuadraticForm<F>::zero(f, m);
  auto neg_alpha = f.neg(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    nq.diag[i] = q.diag[i];
    nq.diag[n + i] = f.mul(neg_alpha, q.diag[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      nq.set_polar(i, j, q.polar_entry(i, j));
      nq.set_polar(n + i, n + j, f.mul(neg_alpha, q.polar_entry(i, j)));
    }
  }
  Vec<F> unit = zero_vec(f, m);
  for (std::size_t i = 0; i < n; ++i) unit[i] = e[i];
  Algebra<F> out(f, base.name() + "+(" + f.format(alpha) + ")", detail::indexed_labels("e", m), std::move(mul), unit, nq);

  // conj must fix e and reverse products; both are bilinear, so basis pairs suffice.
  if (conjugate(out, unit) != unit) throw Error(Errc::self_check_failed, "conjugation does not fix e");
  std::vector<Vec<F>> oconj;
  for (std::size_t i = 0; i < m; ++i) oconj.push_back(conjugate(out, basis_vec(f, m, i)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto lhs = conjugate(out, out.product_of_basis(i, j));
      if (lhs != multiply(out, oconj[j], oconj[i]))
        throw Error(Errc::self_check_failed, "conjugation is not an anti-automorphism at " + out.labels()[i] + ", " +
                                                 out.labels()[j]);
    }
  if (m <= 8) detail::self_check(check_composition(out, Strategy::polarized), out, "composition law");
  return out;
}

/// Starts from K(mu) when mu is given, otherwise from F, then doubles once per parameter.
template <ExactField F>
Algebra<F> make_hurwitz(const F& f, const std::optional<typename F::Element>& mu,
                        const std::vector<typename F::Element>& params) {
  Algebra<F> a = mu ? make_quadratic_etale(f, *mu) : make_field_algebra(f);
  for (const auto& p : params) a = cayley_dickson_double(a, p);
  return a.with_name(std::string("hurwitz dim ") + std::to_string(a.dim()));
}

/// (I) ab, (II) conj(a)b, (III) a conj(b), (IV) conj(a)conj(b).
template <ExactField F>
Algebra<F> standard_twist(const Algebra<F>& base, Twist t) {
  const F& f = base.field();
  const auto& e = require_unit(base);
  const auto& q = require_quad(base);
  if (base.twist() && base.twist()->type != Twist::I) throw Error(Errc::invariant_violation, "algebra is already twisted");
  const std::size_t n = base.dim();
  std::vector<Vec<F>> conj;
  for (std::size_t i = 0; i < n; ++i) conj.push_back(conjugate_with(f, q, e, basis_vec(f, n, i)));
  Vec<F> mul(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ei = basis_vec(f, n, i), ej = basis_vec(f, n, j);
      const bool left = t == Twist::II || t == Twist::IV, right = t == Twist::III || t == Twist::IV;
      auto p = multiply(base, left ? conj[i] : ei, right ? conj[j] : ej);
      std::copy(p.begin(), p.end(), mul.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n));
    }
  // Twisting a one-dimensional algebra changes nothing, so it keeps its unit.
  std::optional<Vec<F>> unit;
  if (t == Twist::I || n == 1) unit = e;
  Algebra<F> out(f, base.name() + " type " + twist_name(t), base.labels(), std::move(mul), unit, q, TwistInfo<F>{t, e});
  if (t != Twist::I && n >= 2 && find_unit(out))
    throw Error(Errc::self_check_failed, std::string("type ") + twist_name(t) + " twist acquired a unit");
  detail::self_check(check_polarized_identity(out, Identity::two_product), out, "a*b + b*a in Lin(e,a,b)");
  if (t == Twist::IV) {
    if (multiply(out, e, e) != e) throw Error(Errc::self_check_failed, "para-unit fails e*e = e");
    for (std::size_t i = 0; i < n; ++i) {
      auto ei = basis_vec(f, n, i);
      if (multiply(out, e, ei) != conj[i] || multiply(out, ei, e) != conj[i])
        throw Error(Errc::self_check_failed, "para-unit fails e*a = a*e = conj(a) at " + out.labels()[i]);
    }
  }
  return out;
}

template <ExactField F>
Algebra<F> make_para_hurwitz(const Algebra<F>& base) {
  return standard_twist(base, Twist::IV);
}

namespace detail {

/// Monomial coefficients in a table cell: a = alpha, A = alpha^-1, b = beta,
/// B = beta^-1, g = gamma, then x<index>. Example: "-Abx7+x2".
template <ExactField F>
Vec<F> parse_cell(const F& f, std::string_view cell, std::size_t n, const typename F::Element& a,
                  const typename F::Element& b, const typename F::Element& g) {
  Vec<F> out = zero_vec(f, n);
  if (cell == "0") return out;
  std::size_t i = 0;
  while (i < cell.size()) {
    auto c = f.one();
    if (cell[i] == '+' || cell[i] == '-') {
      if (cell[i] == '-') c = f.neg(c);
      ++i;
    }
    for (; i < cell.size() && cell[i] != 'x'; ++i) {
      switch (cell[i]) {
        case 'a': c = f.mul(c, a); break;
        case 'A': c = f.div(c, a); break;
        case 'b': c = f.mul(c, b); break;
        case 'B': c = f.div(c, b); break;
        case 'g': c = f.mul(c, g); break;
        default: throw Error(Errc::invariant_violation, "bad table cell " + std::string(cell));
      }
    }
    ++i;
    std::size_t idx = static_cast<std::size_t>(cell[i++] - '0');
    out[idx] = f.add(out[idx], c);
  }
  return out;
}

template <ExactField F>
Algebra<F> table_algebra(const F& f, std::string name, std::vector<std::string> labels,
                         const std::array<std::array<const char*, 8>, 8>& table, const typename F::Element& a,
                         const typename F::Element& b, const typename F::Element& g) {
  Vec<F> mul;
  mul.reserve(512);
  for (const auto& row : table)
    for (const char* cell : row) {
      auto v = parse_cell(f, cell, 8, a, b, g);
      mul.insert(mul.end(), v.begin(), v.end());
    }
  return Algebra<F>(f, std::move(name), std::move(labels), std::move(mul));
}

template <ExactField F>
Algebra<F> finish_symmetric(Algebra<F> alg) {
  QuadraticForm<F> q;
  try {
    q = recover_norm(alg);
  } catch (const Error& err) {
    throw Error(Errc::self_check_failed, std::string("norm recovery failed: ") + err.what());
  }
  alg = alg.with_quad(std::move(q));
  self_check(check_polarized_identity(alg, Identity::symmetric), alg, "symmetric law");
  self_check(check_polarized_identity(alg, Identity::form_associativity), alg, "form associativity");
  return alg;
}

}  // namespace detail

inline const std::vector<std::string>& okubo_isotropic_labels() {
  static const std::vector<std::string> l{"x_{1,0}", "x_{-1,0}", "x_{0,1}",  "x_{0,-1}",
                                          "x_{1,1}", "x_{-1,-1}", "x_{-1,1}", "x_{1,-1}"};
  return l;
}

/// Okubo algebra with isotropic norm, basis x_{1,0}, x_{-1,0}, x_{0,1},
/// x_{0,-1}, x_{1,1}, x_{-1,-1}, x_{-1,1}, x_{1,-1}.
template <ExactField F>
Algebra<F> make_okubo_isotropic(const F& f, const typename F::Element& alpha, const typename F::Element& beta) {
  detail::require_nonzero(f, alpha, "alpha");
  detail::require_nonzero(f, beta, "beta");
  static constexpr std::array<std::array<const char*, 8>, 8> table{{
      {"-ax1", "0", "0", "x7", "0", "x3", "0", "ax5"},
      {"0", "-Ax0", "x6", "0", "x2", "0", "Ax4", "0"},
      {"x4", "0", "-bx3", "0", "bx7", "0", "0", "x0"},
      {"0", "x5", "0", "-Bx2", "0", "Bx6", "x1", "0"},
      {"ax6", "0", "0", "x0", "-abx5", "0", "bx3", "0"},
      {"0", "Ax7", "x1", "0", "0", "-ABx4", "0", "Bx2"},
      {"x2", "0", "bx5", "0", "0", "Ax0", "-Abx7", "0"},
      {"0", "x3", "0", "Bx4", "ax1", "0", "0", "-aBx6"},
  }};
  return detail::finish_symmetric(detail::table_algebra(
      f, "okubo isotropic", okubo_isotropic_labels(), table, alpha, beta, f.one()));
}

/// Okubo algebra with nonzero idempotents, basis x0..x7; char F != 3.
template <ExactField F>
Algebra<F> make_okubo_idempotent(const F& f, const typename F::Element& beta, const typename F::Element& gamma) {
  if (f.characteristic() == 3) throw Error(Errc::characteristic_forbidden, "the idempotent table needs characteristic != 3");
  detail::require_nonzero(f, beta, "beta");
  detail::require_nonzero(f, gamma, "gamma");
  static constexpr std::array<std::array<const char*, 8>, 8> table{{
      {"x0", "-x0-x1", "-x2", "-x3", "x4+x5", "-x4", "x6+x7", "-x6"},
      {"-x0-x1", "x1", "x2+x3", "-x2", "-x5", "x4+x5", "-x6", "-x7"},
      {"-x2", "-x3", "bx0", "-bx0-bx1", "-x6-x7", "x6", "-bx4-bx5", "bx4"},
      {"-x3", "x2+x3", "bx1", "bx0", "x6", "x7", "bx5", "-bx4-bx5"},
      {"-x5", "x4+x5", "-x7", "x6+x7", "-gx0-gx1", "gx1", "-gx3", "gx2+gx3"},
      {"x4+x5", "-x4", "x6+x7", "-x6", "gx0", "-gx0-gx1", "-gx2", "-gx3"},
      {"-x7", "-x6", "-bx5", "-bx4", "-gx2-gx3", "gx3", "-bgx1", "bgx0+bgx1"},
      {"x6+x7", "-x7", "bx4+bx5", "-bx5", "gx2", "-gx2-gx3", "-bgx0", "-bgx1"},
  }};
  return detail::finish_symmetric(
      detail::table_algebra(f, "okubo idempotent", detail::indexed_labels("x", 8), table, f.one(), beta, gamma));
}

/// Roots of 3X(1 - X) = 1.
template <ExactField F>
std::vector<typename F::Element> pseudo_octonion_mus(const F& f) {
  return solve_quadratic(f, f.from_int(3), f.from_int(-3), f.one());
}

namespace detail {

template <ExactField F>
using Mat3 = std::array<std::array<typename F::Element, 3>, 3>;

template <ExactField F>
Mat3<F> mat_mul(const F& f, const Mat3<F>& x, const Mat3<F>& y) {
  Mat3<F> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto acc = f.zero();
      for (int k = 0; k < 3; ++k) acc = f.add(acc, f.mul(x[i][k], y[k][j]));
      out[i][j] = acc;
    }
  return out;
}

template <ExactField F>
typename F::Element trace(const F& f, const Mat3<F>& x) {
  return f.add(f.add(x[0][0], x[1][1]), x[2][2]);
}

/// E12, E21, E13, E31, E23, E32, H1 = E11 - E22, H2 = E22 - E33.
template <ExactField F>
std::vector<Mat3<F>> sl3_basis(const F& f) {
  std::vector<Mat3<F>> out;
  auto zero = [&] {
    Mat3<F> m;
    for (auto& r : m) r.fill(f.zero());
    return m;
  };
  static constexpr std::pair<int, int> offdiag[] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}};
  for (auto [i, j] : offdiag) {
    auto m = zero();
    m[i][j] = f.one();
    out.push_back(m);
  }
  auto h1 = zero(), h2 = zero();
  h1[0][0] = f.one();
  h1[1][1] = f.neg(f.one());
  h2[1][1] = f.one();
  h2[2][2] = f.neg(f.one());
  out.push_back(h1);
  out.push_back(h2);
  return out;
}

/// Coordinates of a trace-zero matrix: diag(d1, d2, d3) = d1 H1 - d3 H2.
template <ExactField F>
Vec<F> sl3_coords(const F& f, const Mat3<F>& m) {
  return {m[0][1], m[1][0], m[0][2], m[2][0], m[1][2], m[2][1], m[0][0], f.neg(m[2][2])};
}

}  // namespace detail

/// sl_3 with x*y = mu xy + (1 - mu) yx - tr(xy)/3 I and n(x) = tr(x^2)/6.
/// When mu is omitted the first root of 3X(1 - X) = 1 is used.
template <ExactField F>
Algebra<F> make_pseudo_octonion(const F& f, std::optional<typename F::Element> mu = std::nullopt) {
  const auto p = f.characteristic();
  if (p == 2 || p == 3) throw Error(Errc::characteristic_forbidden, "pseudo-octonions need characteristic != 2, 3");
  if (mu) {
    auto lhs = f.mul(f.mul(f.from_int(3), *mu), f.sub(f.one(), *mu));
    if (lhs != f.one()) throw Error(Errc::mu_not_a_solution, "3 mu (1 - mu) != 1 for mu = " + f.format(*mu));
  } else {
    auto roots = pseudo_octonion_mus(f);
    if (roots.empty()) throw Error(Errc::mu_not_a_solution, "3X(1 - X) = 1 has no root in " + f.spec().to_string());
    mu = roots.front();
  }
  auto basis = detail::sl3_basis(f);
  const auto third = f.inv(f.from_int(3)), sixth = f.inv(f.from_int(6));
  const auto nu = f.sub(f.one(), *mu);
  Vec<F> mul;
  for (const auto& x : basis)
    for (const auto& y : basis) {
      auto xy = detail::mat_mul(f, x, y), yx = detail::mat_mul(f, y, x);
      auto shift = f.mul(detail::trace(f, xy), third);
      detail::Mat3<F> prod;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          prod[i][j] = f.add(f.mul(*mu, xy[i][j]), f.mul(nu, yx[i][j]));
          if (i == j) prod[i][j] = f.sub(prod[i][j], shift);
        }
      auto c = detail::sl3_coords(f, prod);
      mul.insert(mul.end(), c.begin(), c.end());
    }
  auto q = QuadraticForm<F>::zero(f, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    q.diag[i] = f.mul(detail::trace(f, detail::mat_mul(f, basis[i], basis[i])), sixth);
    for (std::size_t j = i + 1; j < 8; ++j)
      q.set_polar(i, j, f.mul(detail::trace(f, detail::mat_mul(f, basis[i], basis[j])), third));
  }
  Algebra<F> a(f, "pseudo-octonion mu=" + f.format(*mu), {"E12", "E21", "E13", "E31", "E23", "E32", "H1", "H2"},
               std::move(mul), std::nullopt, q);
  detail::self_check(check_polarized_identity(a, Identity::symmetric), a, "symmetric law");
  detail::self_check(check_polarized_identity(a, Identity::form_associativity), a, "form associativity");
  return a;
}

/// u^2 = v, uv = vu = u, v^2 = lambda u - v; requires x^3 - 3x - lambda irreducible.
template <ExactField F>
Algebra<F> make_two_dim_form(const F& f, const typename F::Element& lambda) {
  if (!is_irreducible_cubic(f, f.from_int(-3), f.neg(lambda)))
    throw Error(Errc::reducible_cubic, "x^3 - 3x - " + f.format(lambda) + " has a root");
  const auto z = f.zero(), o = f.one();
  // rows: u*u, u*v, v*u, v*v
  Vec<F> mul{z, o, o, z, o, z, lambda, f.neg(o)};
  Algebra<F> a(f, "two-dim form lambda=" + f.format(lambda), {"u", "v"}, std::move(mul));
  try {
    a = a.with_quad(recover_norm(a));
  } catch (const Error&) {
    // Leaves the algebra without a norm; the products above are authoritative.
  }
  return a;
}

}  // namespace complen
