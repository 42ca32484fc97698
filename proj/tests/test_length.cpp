#include <complen/checkers.hpp>
#include <complen/constructors.hpp>
#include <complen/length.hpp>

#include <doctest.h>

#include <random>
#include <set>

using namespace complen;

namespace {

using Q = RationalField;
using FF = FiniteField;

FF gf(const char* s) { return FF(FieldSpec::parse(s)); }

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

struct Naive {
  std::vector<std::size_t> d;
  std::size_t length = 0;
  bool generating = false;
};

// Words of length k are products of words of lengths i and k - i; Lin_k is
// spanned by all words up to length k (and the unit).
Naive naive_lengths(const Algebra<FF>& a, const std::vector<Vec<FF>>& s) {
  const FF& f = a.field();
  const std::size_t n = a.dim();
  Subspace<FF> lin(n);
  Naive out;
  if (a.unit()) lin.absorb(f, *a.unit());
  out.d.push_back(lin.rank());
  std::vector<std::set<Vec<FF>>> words(2);
  words[1] = std::set<Vec<FF>>(s.begin(), s.end());
  for (std::size_t k = 1; k <= 2 * n + 2; ++k) {
    if (k >= 2) {
      std::set<Vec<FF>> wk;
      for (std::size_t i = 1; i < k; ++i)
        for (const auto& u : words[i])
          for (const auto& v : words[k - i]) wk.insert(multiply(a, u, v));
      words.push_back(std::move(wk));
    }
    const std::size_t before = lin.rank();
    for (const auto& w : words[k]) lin.absorb(f, w);
    out.d.push_back(lin.rank() - before);
  }
  for (std::size_t k = 0; k < out.d.size(); ++k)
    if (out.d[k]) out.length = k;
  out.d.resize(std::max<std::size_t>(1, out.length) + 1);
  out.generating = lin.is_full();
  return out;
}

Algebra<FF> algebra_from_bits(const FF& f, std::size_t n, std::uint64_t bits) {
  Vec<FF> mul(n * n * n);
  for (std::size_t i = 0; i < mul.size(); ++i) mul[i] = (bits >> i) & 1u;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return Algebra<FF>(f, "table " + std::to_string(bits), labels, mul);
}

std::vector<Vec<FF>> nonzero_vectors(std::size_t n) {
  std::vector<Vec<FF>> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    Vec<FF> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (m >> i) & 1u;
    out.push_back(v);
  }
  return out;
}

void compare_with_naive(const Algebra<FF>& a) {
  const std::size_t n = a.dim();
  auto vs = nonzero_vectors(n);
  std::size_t best = 0;
  bool any = false;
  for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
    std::vector<Vec<FF>> s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (mask >> i & 1u) s.push_back(vs[i]);
    auto want = naive_lengths(a, s);
    auto got = length_of_set<FF>(a, s, nullptr);
    CHECK(got.d == want.d);
    CHECK(got.length == want.length);
    CHECK(got.generating == want.generating);
    if (want.generating) {
      any = true;
      best = std::max(best, want.length);
    }
  }
  auto r = length_of_algebra(a, SearchOptions<FF>{});
  CHECK(r.best_length == best);
  CHECK((r.enumerated > 0) == any);
}

}  // namespace

TEST_CASE("subspace counts match the Gaussian binomial product formula") {
  CHECK(gaussian_binomial(2, 8, 4) == 200787);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= 8; ++k) {
    total += gaussian_binomial(2, 8, k);
    CHECK(count_subspaces(2, 8, k) == doctest::Approx(static_cast<double>(gaussian_binomial(2, 8, k))));
  }
  CHECK(total == 417199);
  for (auto [spec, q, n] : {std::tuple{"F2", 2u, 5u}, {"F3", 3u, 3u}, {"F5", 5u, 3u}, {"F2^2:1,1,1", 4u, 3u}}) {
    auto f = gf(spec);
    for (std::size_t k = 0; k <= n; ++k) {
      std::set<std::vector<Vec<FF>>> seen;
      std::uint64_t count = 0;
      for_each_subspace(f, n, k, [&](const Subspace<FF>& s) {
        CHECK(s.rank() == k);
        seen.insert(s.basis());
        ++count;
        return true;
      });
      CHECK(count == gaussian_binomial(q, n, k));
      CHECK(seen.size() == count);
    }
  }
}

TEST_CASE("lengths agree with naive word enumeration on every 2-dimensional algebra over F2") {
  auto f = gf("F2");
  for (std::uint64_t bits = 0; bits < 256; ++bits) compare_with_naive(algebra_from_bits(f, 2, bits));
}

TEST_CASE("lengths agree with naive word enumeration on random 3-dimensional algebras over F2") {
  auto f = gf("F2");
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) compare_with_naive(algebra_from_bits(f, 3, rng() & ((1u << 27) - 1)));
}

TEST_CASE("unital algebras start from Lin0 = Fe") {
  auto f = gf("F3");
  auto h = make_hurwitz<FF>(f, std::nullopt, {f.one(), f.one()});
  std::vector<Vec<FF>> s{basis_vec(f, 4, 1), basis_vec(f, 4, 2)};
  auto r = length_of_set<FF>(h, s, nullptr);
  CHECK(r.d == std::vector<std::size_t>{1, 2, 1});
  CHECK(r.length == 2);
  CHECK(r.generating);
  auto naive = naive_lengths(h, s);
  CHECK(naive.d == r.d);
}

TEST_CASE("descending spans agree with general spans when certified") {
  auto f5 = gf("F5");
  auto a = make_okubo_idempotent(f5, f5.from_int(2), f5.from_int(3));
  auto f3 = gf("F3");
  auto b = make_okubo_isotropic(f3, f3.one(), f3.from_int(2));
  auto c = standard_twist(make_hurwitz<FF>(f5, std::nullopt, {f5.from_int(2), f5.from_int(3), f5.one()}), Twist::II);
  std::mt19937_64 rng(17);
  for (const auto* alg : {&a, &b, &c}) {
    auto cert = certify_descending(*alg);
    REQUIRE(cert.flexible);
    for (int t = 0; t < 60; ++t) {
      std::vector<Vec<FF>> s;
      for (int i = 0; i < 1 + t % 3; ++i) {
        Vec<FF> v;
        for (std::size_t j = 0; j < alg->dim(); ++j) v.push_back(alg->field().sample(rng));
        s.push_back(v);
      }
      SpanOptions desc;
      desc.mode = SpanMode::descending;
      auto rd = lin_spans<FF>(*alg, s, desc, &cert);
      auto rg = lin_spans<FF>(*alg, s, SpanOptions{}, nullptr);
      CHECK(rd.d == rg.d);
    }
  }
}

TEST_CASE("descending mode needs a certificate") {
  Q q;
  auto a = make_hurwitz<Q>(q, std::nullopt, {mpq_class(1), mpq_class(2), mpq_class(3), mpq_class(5)});
  std::vector<Vec<Q>> s{basis_vec(q, 16, 1)};
  SpanOptions desc;
  desc.mode = SpanMode::descending;
  CHECK_THROWS_AS(lin_spans<Q>(a, s, desc, nullptr), Error);
  DescendingCertificate none;
  CHECK_THROWS_AS(lin_spans<Q>(a, s, desc, &none), Error);
  desc.override_certificate = true;
  CHECK_NOTHROW(lin_spans<Q>(a, s, desc, nullptr));
}

TEST_CASE("bounds on the length of descending algebras") {
  CHECK(descending_flexible_bound(1) == 1);
  CHECK(descending_flexible_bound(2) == 2);
  CHECK(descending_flexible_bound(3) == 5);
  CHECK(descending_flexible_bound(5) == 9);
  CHECK(descending_flexible_bound(6) == 15);
  CHECK(descending_flexible_bound(7) == 28);
  CHECK(descending_alternative_bound(2) == 2);
  CHECK(descending_alternative_bound(3) == 5);
  CHECK(descending_alternative_bound(4) == 10);
  DescendingCertificate flex{true, false, ""}, alt{true, true, ""};
  CHECK(length_upper_bound(8, flex) == 4);
  CHECK(length_upper_bound(8, alt) == 3);
  CHECK(length_upper_bound(7, alt) == 3);
  CHECK(length_upper_bound(4, alt) == 2);
}

TEST_CASE("search options: cost cap, infinite fields, determinism") {
  auto f = gf("F3");
  auto h = make_hurwitz<FF>(f, std::nullopt, {f.one(), f.one()});
  SearchOptions<FF> capped;
  capped.cost_cap = 10;
  CHECK_THROWS_AS(length_of_algebra(h, capped), CostCapExceeded);

  Q q;
  auto hq = make_hurwitz<Q>(q, std::nullopt, {mpq_class(-1)});
  CHECK_THROWS_AS(length_of_algebra(hq, SearchOptions<Q>{}), Error);

  SearchOptions<FF> one, three;
  three.jobs = 3;
  auto r1 = length_of_algebra(h, one), r3 = length_of_algebra(h, three);
  CHECK(r1.best_length == r3.best_length);
  CHECK(r1.witness == r3.witness);
  CHECK(r1.enumerated == r3.enumerated);
  CHECK(r1.examined == 1 + 40 + 130 + 40 + 1);

  SearchOptions<Q> rnd;
  rnd.mode = SearchMode::random;
  rnd.seed = 99;
  rnd.budget = 50;
  auto a = length_of_algebra(hq, rnd), b = length_of_algebra(hq, rnd);
  CHECK(a.best_length == b.best_length);
  CHECK(a.witness == b.witness);
  CHECK_FALSE(a.exact);
  CHECK(a.best_length == 1);
}

TEST_CASE("spans grow monotonically inside the generated subalgebra") {
  auto f = gf("F5");
  std::mt19937_64 rng(41);
  auto a = make_okubo_idempotent(f, f.one(), f.from_int(2));
  SpanOptions keep;
  keep.keep_spans = true;
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec<FF>> s;
    for (int i = 0; i < 1 + t % 3; ++i) {
      Vec<FF> v;
      for (int j = 0; j < 8; ++j) v.push_back(f.sample(rng));
      s.push_back(v);
    }
    auto r = lin_spans<FF>(a, s, keep, nullptr);
    auto closure = subalgebra_closure(a, std::span<const Vec<FF>>(s));
    CHECK(subalgebra_closure(a, std::span<const Vec<FF>>(closure.basis())) == closure);
    for (std::size_t k = 0; k < r.spans.size(); ++k) {
      CHECK(r.spans[k].is_subspace_of(f, closure));
      if (k) CHECK(r.spans[k - 1].is_subspace_of(f, r.spans[k]));
    }
    CHECK(r.spans.back() == closure);
  }
}
