#include <complen/checkers.hpp>
#include <complen/constructors.hpp>

#include <doctest.h>

#include <random>

using namespace complen;

namespace {

using Q = RationalField;
using FF = FiniteField;

FF gf(const char* s) { return FF(FieldSpec::parse(s)); }

std::vector<Vec<FF>> all_vectors(const FF& f, std::size_t n) {
  std::vector<Vec<FF>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.size();
  for (std::uint64_t m = 0; m < total; ++m) {
    Vec<FF> v(n);
    std::uint64_t r = m;
    for (std::size_t i = 0; i < n; ++i, r /= f.size()) v[i] = f.element(r % f.size());
    out.push_back(v);
  }
  return out;
}

Vec<FF> mul(const Algebra<FF>& a, const Vec<FF>& x, const Vec<FF>& y) { return multiply(a, x, y); }

FF::Element norm(const Algebra<FF>& a, const Vec<FF>& x) { return quad_eval(a, std::span<const FF::Element>(x)); }

// Direct evaluation of each identity at (x, y), independent of identity_residual.
bool holds_at(const Algebra<FF>& a, Identity id, const Vec<FF>& x, const Vec<FF>& y) {
  const FF& f = a.field();
  switch (id) {
    case Identity::flexible: return mul(a, mul(a, x, y), x) == mul(a, x, mul(a, y, x));
    case Identity::alternative:
      return mul(a, mul(a, x, x), y) == mul(a, x, mul(a, x, y)) && mul(a, mul(a, y, x), x) == mul(a, y, mul(a, x, x));
    case Identity::symmetric: {
      auto want = vec_scale(f, norm(a, x), y);
      return mul(a, mul(a, x, y), x) == want && mul(a, x, mul(a, y, x)) == want;
    }
    case Identity::quadratic: {
      // x^2 - t(x) x + n(x) e = 0 with t(x) = n(x, e)
      const auto& e = *a.unit();
      auto t = polar_eval(a, std::span<const FF::Element>(x), std::span<const FF::Element>(e));
      auto r = vec_add(f, vec_sub(f, mul(a, x, x), vec_scale(f, t, x)), vec_scale(f, norm(a, x), e));
      return is_zero_vec<FF>(f, r);
    }
    default: break;
  }
  FAIL("no direct evaluation for this identity");
  return false;
}

Algebra<FF> random_algebra(const FF& f, std::size_t n, std::mt19937_64& rng, bool with_quad) {
  Vec<FF> m(n * n * n);
  for (auto& c : m) c = f.sample(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::optional<QuadraticForm<FF>> q;
  if (with_quad) {
    auto z = QuadraticForm<FF>::zero(f, n);
    for (auto& d : z.diag) d = f.sample(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) z.set_polar(i, j, f.sample(rng));
    q = z;
  }
  return Algebra<FF>(f, "random", labels, m, std::nullopt, q);
}

bool composition_everywhere(const Algebra<FF>& a) {
  auto vs = all_vectors(a.field(), a.dim());
  for (const auto& x : vs)
    for (const auto& y : vs)
      if (norm(a, mul(a, x, y)) != a.field().mul(norm(a, x), norm(a, y))) return false;
  return true;
}

}  // namespace

TEST_CASE("polarized checks agree with exhaustive evaluation") {
  std::mt19937_64 rng(31);
  for (const char* spec : {"F2", "F3"}) {
    auto f = gf(spec);
    std::vector<Algebra<FF>> algebras;
    for (int t = 0; t < 12; ++t) algebras.push_back(random_algebra(f, 2 + t % 2, rng, true));
    // Algebras where the identities hold, to exercise the positive side.
    algebras.push_back(make_hurwitz<FF>(f, f.one(), {f.one()}));
    algebras.push_back(standard_twist(make_hurwitz<FF>(f, f.one(), {}), Twist::IV));
    for (const auto& a : algebras) {
      auto vs = all_vectors(f, a.dim());
      for (Identity id : {Identity::flexible, Identity::alternative, Identity::symmetric, Identity::quadratic}) {
        if (id == Identity::quadratic && !a.unit()) continue;
        bool want = true;
        for (const auto& x : vs)
          for (const auto& y : vs)
            if (!holds_at(a, id, x, y)) want = false;
        auto v = check_polarized_identity(a, id);
        CAPTURE(identity_name(id));
        CHECK(v.holds == want);
        if (!v.holds) {
          REQUIRE(v.counterexample);
          CHECK_FALSE(holds_at(a, id, v.counterexample->elements[0], v.counterexample->elements[1]));
        }
      }
      bool want = composition_everywhere(a);
      for (Strategy s : {Strategy::exhaustive, Strategy::polarized}) {
        auto v = check_composition(a, s);
        CHECK(v.holds == want);
        if (!v.holds) {
          auto& ce = *v.counterexample;
          CHECK(norm(a, mul(a, ce.elements[0], ce.elements[1])) !=
                f.mul(norm(a, ce.elements[0]), norm(a, ce.elements[1])));
        }
      }
    }
  }
}

TEST_CASE("sampled composition checks are reproducible and non-certifying") {
  Q q;
  auto a = make_okubo_isotropic(q, mpq_class(2), mpq_class(3));
  auto v1 = check_composition(a, Strategy::sampled, 42, 200), v2 = check_composition(a, Strategy::sampled, 42, 200);
  CHECK(v1.holds);
  CHECK(v1.certificate == CertificateKind::sampled);
  CHECK(v1.seed == 42);
  CHECK(v1.samples == 200);
  CHECK(v1.holds == v2.holds);
  CHECK(v1.certifying() == false);
  CHECK(check_composition(a, Strategy::automatic).certificate == CertificateKind::sampled);
  CHECK_THROWS_AS(check_composition(a, Strategy::exhaustive), Error);
}

TEST_CASE("recovered norm of the isotropic Okubo algebra") {
  auto f = gf("F5");
  auto a = make_okubo_isotropic(f, f.from_int(2), f.from_int(3));
  auto q = recover_norm(a);
  CHECK(q.diag[0] == f.zero());
  CHECK(q.polar_entry(0, 1) == f.one());
  CHECK(q.strictly_nondegenerate(f));
  // The mirror law defines n independently: x(yx) = n(x)y.
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    Vec<FF> x, y(8, f.zero());
    for (int i = 0; i < 8; ++i) x.push_back(f.sample(rng));
    y[t % 8] = f.one();
    auto m = multiply(a, x, multiply(a, y, x));
    CHECK(m == vec_scale(f, quad_eval(f, q, std::span<const FF::Element>(x)), y));
  }
}

TEST_CASE("norm recovery rejects algebras without the mirror law") {
  auto f = gf("F5");
  auto h = make_hurwitz<FF>(f, std::nullopt, {f.from_int(2)});
  try {
    recover_norm(h);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK((e.code() == Errc::not_scalar_operator || e.code() == Errc::mirror_law_failed));
  }
  auto para = standard_twist(make_hurwitz<FF>(f, std::nullopt, {f.from_int(2), f.from_int(3)}), Twist::IV);
  auto q = recover_norm(para);
  CHECK(q == *para.quad());
}

TEST_CASE("descending laws on small algebras") {
  auto f = gf("F2");
  auto a = make_okubo_isotropic(f, f.one(), f.one());
  DescendingOptions<FF> ex;
  ex.strategy = Strategy::exhaustive;
  CHECK_THROWS_AS(check_descending(a, DescendingKind::alternative, ex), CostCapExceeded);
  auto alt = check_descending(a, DescendingKind::alternative);
  CHECK_FALSE(alt.holds);
  CHECK(alt.certificate == CertificateKind::exhaustive);
  REQUIRE(alt.counterexample);
  const auto& ce = alt.counterexample->elements;
  auto target = pair_target(a, ce[0], ce[1]);
  bool outside = !target.contains(f, multiply(a, multiply(a, ce[1], ce[0]), ce[0])) ||
                 !target.contains(f, multiply(a, ce[0], multiply(a, ce[0], ce[1])));
  CHECK(outside);
  auto fl = check_descending(a, DescendingKind::flexible);
  CHECK(fl.holds);
  CHECK(fl.certifying());

  // A random algebra over F2 in dimension 3 has all triples enumerated.
  std::mt19937_64 rng(4);
  auto r = random_algebra(f, 3, rng, false);
  auto v = check_descending(r, DescendingKind::flexible, ex);
  CHECK(v.certificate == CertificateKind::exhaustive);
}

TEST_CASE("the bound checker needs a certificate") {
  auto f = gf("F2");
  auto a = make_okubo_isotropic(f, f.one(), f.one());
  std::vector<Vec<FF>> s{basis_vec(f, 8, 2), basis_vec(f, 8, 0)};
  auto r = length_of_set<FF>(a, s, nullptr);
  std::vector<LengthReport<FF>> reports{r};
  CHECK_THROWS_AS(certify_bounds(a, std::span<const LengthReport<FF>>(reports), DescendingCertificate{}), Error);
  auto cert = certify_descending(a);
  CHECK(certify_bounds(a, std::span<const LengthReport<FF>>(reports), cert).holds);
  // A fabricated report with an impossible length breaks the bound.
  auto fake = r;
  fake.d = {0, 1, 1, 1, 1, 1, 1, 1, 1};
  fake.length = 8;
  reports = {fake};
  auto v = certify_bounds(a, std::span<const LengthReport<FF>>(reports), cert);
  CHECK_FALSE(v.holds);
  CHECK_FALSE(difference_law_violations(fake, 8, false, 1, cert).empty());
  CHECK(difference_law_violations(r, 8, false, 2, cert).empty());
}

TEST_CASE("idempotent and isotropic searches") {
  auto f = gf("F5");
  auto a = make_okubo_idempotent(f, f.from_int(2), f.from_int(3));
  auto id = find_idempotents(a);
  REQUIRE_FALSE(id.found.empty());
  CHECK(id.exhaustive);
  for (const auto& x : id.found) CHECK(multiply(a, x, x) == x);
  auto iso = find_isotropic(a);
  REQUIRE_FALSE(iso.found.empty());
  for (const auto& x : iso.found) {
    CHECK_FALSE(is_zero_vec<FF>(f, x));
    CHECK(quad_eval(a, std::span<const FF::Element>(x)) == f.zero());
  }
  auto f7 = gf("F7");
  auto p = make_pseudo_octonion(f7, f7.from_int(2));
  CHECK_THROWS_AS(find_idempotents(p), CostCapExceeded);
}

TEST_CASE("identity names round-trip") {
  for (Identity id : {Identity::flexible, Identity::alternative, Identity::quadratic, Identity::regular_involution,
                      Identity::symmetric, Identity::two_product, Identity::standard_flexibility,
                      Identity::form_associativity})
    CHECK(parse_identity(identity_name(id)) == id);
  CHECK_THROWS_AS(parse_identity("commutative"), Error);
  CHECK(parse_strategy("sampled") == Strategy::sampled);
}

TEST_CASE("a recovered norm certifies the symmetric laws") {
  auto f3 = gf("F3"), f5 = gf("F5");
  std::vector<Algebra<FF>> algebras{make_okubo_isotropic(f3, f3.one(), f3.one()),
                                    make_okubo_idempotent(f5, f5.from_int(2), f5.from_int(3)),
                                    make_pseudo_octonion(gf("F7"))};
  for (auto& a : algebras) {
    auto bare = Algebra<FF>(a.field(), a.name(), a.labels(), a.structure_constants(), a.unit(), std::nullopt);
    auto with = bare.with_quad(recover_norm(bare));
    CAPTURE(a.name());
    CHECK(check_polarized_identity(with, Identity::symmetric).holds);
    CHECK(check_polarized_identity(with, Identity::form_associativity).holds);
  }
}

TEST_CASE("finite Okubo algebras have idempotents or isotropic elements") {
  for (const char* s : {"F2", "F3", "F5"}) {
    auto f = gf(s);
    std::vector<Algebra<FF>> algebras{make_okubo_isotropic(f, f.one(), f.one())};
    if (f.spec().p != 3) algebras.push_back(make_okubo_idempotent(f, f.one(), f.one()));
    for (const auto& a : algebras) {
      std::vector<Vec<FF>> candidates;
      if (f.size() > 3)
        for (std::size_t i = 0; i < 8; ++i) candidates.push_back(basis_vec(f, 8, i));
      CAPTURE(s);
      CHECK(find_idempotents(a, candidates).found.size() + find_isotropic(a, candidates).found.size() > 0);
    }
  }
}
