#include <complen/checkers.hpp>
#include <complen/constructors.hpp>

#include <doctest.h>

#include <random>

using namespace complen;

namespace {

using Q = RationalField;
using FF = FiniteField;

FF gf(const char* s) { return FF(FieldSpec::parse(s)); }

template <class F>
Errc error_code(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invariant_violation;
}

template <ExactField F>
Vec<F> random_vec(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vec<F> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.sample(rng));
  return v;
}

}  // namespace

TEST_CASE("K(mu) has norm x^2 + xy - mu y^2 and conj(l) = e - l") {
  auto f = gf("F5");
  const auto mu = f.from_int(2);
  auto k = make_quadratic_etale(f, mu);
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = 0; y < 5; ++y) {
      Vec<FF> v{x, y};
      auto want = f.sub(f.add(f.mul(x, x), f.mul(x, y)), f.mul(mu, f.mul(y, y)));
      CHECK(quad_eval(k, std::span<const FF::Element>(v)) == want);
    }
  CHECK(conjugate(k, Vec<FF>{0, 1}) == Vec<FF>{1, f.from_int(-1)});
  CHECK(multiply(k, Vec<FF>{0, 1}, Vec<FF>{0, 1}) == Vec<FF>{mu, 1});
  CHECK(error_code([&] { make_quadratic_etale(f, f.one()); }) == Errc::degenerate_parameter);
}

TEST_CASE("doubling F twice gives the quaternions") {
  Q q;
  auto h = make_hurwitz<Q>(q, std::nullopt, {mpq_class(-1), mpq_class(-1)});
  REQUIRE(h.dim() == 4);
  auto e = [&](std::size_t i) { return basis_vec(q, 4, i); };
  auto neg = [&](Vec<Q> v) { return vec_scale(q, mpq_class(-1), v); };
  CHECK(multiply(h, e(1), e(1)) == neg(e(0)));
  CHECK(multiply(h, e(2), e(2)) == neg(e(0)));
  CHECK(multiply(h, e(3), e(3)) == neg(e(0)));
  CHECK(multiply(h, e(1), e(2)) == e(3));
  CHECK(multiply(h, e(2), e(1)) == neg(e(3)));
  CHECK(conjugate(h, e(1)) == neg(e(1)));
  CHECK(find_unit(h) == e(0));
  // Associative on basis triples; the octonions are alternative but not associative.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(multiply(h, multiply(h, e(i), e(j)), e(k)) == multiply(h, e(i), multiply(h, e(j), e(k))));
  auto o = make_hurwitz<Q>(q, std::nullopt, {mpq_class(-1), mpq_class(-1), mpq_class(-1)});
  bool associative = true;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      auto x = basis_vec(q, 8, i), y = basis_vec(q, 8, j);
      CHECK(multiply(o, multiply(o, x, x), y) == multiply(o, x, multiply(o, x, y)));
      for (std::size_t k = 0; k < 8; ++k) {
        auto z = basis_vec(q, 8, k);
        if (multiply(o, multiply(o, x, y), z) != multiply(o, x, multiply(o, y, z))) associative = false;
      }
    }
  CHECK_FALSE(associative);
}

TEST_CASE("norms of Hurwitz algebras multiply") {
  auto f = gf("F5");
  auto a = make_hurwitz<FF>(f, std::nullopt, {f.from_int(2), f.from_int(3), f.from_int(2)});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto x = random_vec(f, 8, rng), y = random_vec(f, 8, rng);
    auto xy = multiply(a, x, y);
    CHECK(quad_eval(a, std::span<const FF::Element>(xy)) ==
          f.mul(quad_eval(a, std::span<const FF::Element>(x)), quad_eval(a, std::span<const FF::Element>(y))));
  }
}

TEST_CASE("standard twists conjugate the factors") {
  auto f = gf("F5");
  auto base = make_hurwitz<FF>(f, f.from_int(2), {f.from_int(3)});
  std::mt19937_64 rng(7);
  for (Twist t : {Twist::I, Twist::II, Twist::III, Twist::IV}) {
    auto a = standard_twist(base, t);
    CHECK(a.twist()->type == t);
    CHECK(find_unit(a).has_value() == (t == Twist::I));
    for (int i = 0; i < 30; ++i) {
      auto x = random_vec(f, 4, rng), y = random_vec(f, 4, rng);
      auto lx = (t == Twist::II || t == Twist::IV) ? conjugate(base, x) : x;
      auto ry = (t == Twist::III || t == Twist::IV) ? conjugate(base, y) : y;
      CHECK(multiply(a, x, y) == multiply(base, lx, ry));
    }
  }
}

TEST_CASE("Okubo isotropic table entries") {
  auto f = gf("F5");
  const auto alpha = f.from_int(2), beta = f.from_int(3);
  auto a = make_okubo_isotropic(f, alpha, beta);
  auto x = [&](std::size_t i) { return basis_vec(f, 8, i); };
  auto sc = [&](FF::Element c, std::size_t i) { return vec_scale(f, c, x(i)); };
  // Index order: x_{1,0}, x_{-1,0}, x_{0,1}, x_{0,-1}, x_{1,1}, x_{-1,-1}, x_{-1,1}, x_{1,-1}.
  CHECK(multiply(a, x(0), x(0)) == sc(f.neg(alpha), 1));
  CHECK(multiply(a, x(2), x(0)) == x(4));
  CHECK(is_zero_vec<FF>(f, multiply(a, x(0), x(2))));
  CHECK(multiply(a, x(4), x(4)) == sc(f.neg(f.mul(alpha, beta)), 5));
  CHECK(multiply(a, x(1), x(6)) == sc(f.inv(alpha), 4));
  CHECK(multiply(a, x(7), x(7)) == sc(f.neg(f.div(alpha, beta)), 6));
  CHECK_FALSE(find_unit(a).has_value());
  REQUIRE(a.quad());
  CHECK(a.quad()->diag[0] == f.zero());
  CHECK(error_code([&] { make_okubo_isotropic(f, f.zero(), beta); }) == Errc::zero_parameter);
}

TEST_CASE("Okubo idempotent table entries") {
  Q q;
  const mpq_class beta(2), gamma(3);
  auto a = make_okubo_idempotent(q, beta, gamma);
  auto x = [&](std::size_t i) { return basis_vec(q, 8, i); };
  CHECK(multiply(a, x(0), x(0)) == x(0));
  CHECK(multiply(a, x(1), x(1)) == x(1));
  Vec<Q> want(8, mpq_class(0));
  want[0] = beta * gamma;
  want[1] = beta * gamma;
  CHECK(multiply(a, x(6), x(7)) == want);
  auto f3 = gf("F3");
  CHECK(error_code([&] { make_okubo_idempotent(f3, f3.one(), f3.one()); }) == Errc::characteristic_forbidden);
}

TEST_CASE("pseudo-octonion product matches the matrix formula") {
  auto f = gf("F7");
  for (auto mu : pseudo_octonion_mus(f)) {
    auto a = make_pseudo_octonion(f, mu);
    auto basis = detail::sl3_basis(f);
    const auto one_minus = f.sub(f.one(), mu), third = f.inv(f.from_int(3));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        auto xy = detail::mat_mul(f, basis[i], basis[j]), yx = detail::mat_mul(f, basis[j], basis[i]);
        const auto t = f.mul(detail::trace(f, xy), third);
        detail::Mat3<FF> m{};
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) {
            m[r][c] = f.add(f.mul(mu, xy[r][c]), f.mul(one_minus, yx[r][c]));
            if (r == c) m[r][c] = f.sub(m[r][c], t);
          }
        CHECK(Vec<FF>(a.product_of_basis(i, j).begin(), a.product_of_basis(i, j).end()) ==
              detail::sl3_coords(f, m));
      }
  }
  CHECK(error_code([&] { make_pseudo_octonion(f, f.from_int(3)); }) == Errc::mu_not_a_solution);
  auto f5 = gf("F5"), f3 = gf("F3");
  CHECK(error_code([&] { make_pseudo_octonion(f5); }) == Errc::mu_not_a_solution);
  CHECK(error_code([&] { make_pseudo_octonion(f3); }) == Errc::characteristic_forbidden);
}

TEST_CASE("two-dimensional symmetric composition algebra") {
  auto f = gf("F5");
  auto a = make_two_dim_form(f, f.one());
  Vec<FF> u{1, 0}, v{0, 1};
  CHECK(multiply(a, u, u) == v);
  CHECK(multiply(a, u, v) == u);
  CHECK(multiply(a, v, u) == u);
  CHECK(multiply(a, v, v) == Vec<FF>{1, f.from_int(-1)});
  if (a.quad()) CHECK(check_polarized_identity(a, Identity::symmetric).holds);
  // x^3 - 3x - 3 has the root 1 over F5.
  CHECK(error_code([&] { make_two_dim_form(f, f.from_int(3)); }) == Errc::reducible_cubic);
}

TEST_CASE("constructor preconditions") {
  auto f2 = gf("F2");
  CHECK(error_code([&] { make_field_algebra(f2); }) == Errc::characteristic_forbidden);
  CHECK(error_code([&] { make_hurwitz<FF>(f2, f2.one(), {f2.zero()}); }) == Errc::zero_parameter);
  Q q;
  Vec<Q> mul(8, mpq_class(0));
  mul[0] = 1;  // e0 e0 = e0, everything else 0
  CHECK(error_code([&] { Algebra<Q>(q, "bad", {"a", "b"}, mul, Vec<Q>{1, 0}); }) == Errc::invariant_violation);
  CHECK(error_code([&] { Algebra<Q>(q, "bad", {"a", "b"}, Vec<Q>(7)); }) == Errc::dimension_mismatch);
}

TEST_CASE("subalgebra closure") {
  auto f = gf("F2");
  auto a = make_okubo_isotropic(f, f.one(), f.one());
  std::vector<Vec<FF>> s{basis_vec(f, 8, 2), basis_vec(f, 8, 0)};
  CHECK(subalgebra_closure(a, std::span<const Vec<FF>>(s)).is_full());
  std::vector<Vec<FF>> one{basis_vec(f, 8, 0)};
  // x_{1,0} and x_{-1,0} square to each other; their mixed products vanish.
  CHECK(subalgebra_closure(a, std::span<const Vec<FF>>(one)).rank() == 2);
}

TEST_CASE("polar forms are symmetric and bilinear, also in characteristic 2") {
  auto f2 = gf("F2"), f5 = gf("F5");
  for (const auto* f : {&f2, &f5}) {
    auto a = make_okubo_isotropic(*f, f->one(), f->one());
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
      auto x = random_vec(*f, 8, rng), y = random_vec(*f, 8, rng), z = random_vec(*f, 8, rng);
      auto c = f->sample(rng);
      auto p = [&](const Vec<FF>& u, const Vec<FF>& v) {
        return polar_eval(a, std::span<const FF::Element>(u), std::span<const FF::Element>(v));
      };
      CHECK(p(x, y) == p(y, x));
      CHECK(p(vec_add(*f, vec_scale(*f, c, x), z), y) == f->add(f->mul(c, p(x, y)), p(z, y)));
      auto n = quad_eval(a, std::span<const FF::Element>(x));
      CHECK(p(x, x) == f->add(n, n));
    }
  }
}

TEST_CASE("para-Hurwitz unit") {
  for (const char* s : {"F2", "F3"}) {
    auto f = gf(s);
    auto base = make_hurwitz<FF>(f, f.one(), {f.one(), f.one()});
    auto p = make_para_hurwitz(base);
    const auto& e = *base.unit();
    CHECK(multiply(p, e, e) == e);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      auto x = basis_vec(f, p.dim(), i);
      auto bar = conjugate(base, std::span<const FF::Element>(x));
      CHECK(multiply(p, e, x) == bar);
      CHECK(multiply(p, x, e) == bar);
    }
  }
}
