#include <complen/suite.hpp>

#include <complen/checkers.hpp>
#include <complen/constructors.hpp>
#include <complen/length.hpp>

#include <json.hpp>

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace complen {

const char* case_status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skip: return "skip";
    case CaseStatus::error: return "error";
  }
  return "?";
}

const char* case_source_name(CaseSource s) { return s == CaseSource::stated ? "stated" : "computed"; }

namespace {

using Q = RationalField;
using FF = FiniteField;

FF gf(const char* spec) { return FF(FieldSpec::parse(spec)); }

CaseOutcome outcome(bool ok, std::string expected, std::string measured, std::string detail = {}) {
  return {ok ? CaseStatus::pass : CaseStatus::fail, std::move(expected), std::move(measured), std::move(detail)};
}

std::string seq(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

template <ExactField F>
std::size_t rank_mod_unit(const Algebra<F>& a, std::span<const Vec<F>> s) {
  Subspace<F> span(a.dim());
  if (a.unit()) span.absorb(a.field(), *a.unit());
  const std::size_t base = span.rank();
  for (const auto& v : s) span.absorb(a.field(), v);
  return span.rank() - base;
}

template <ExactField F>
std::vector<std::string> laws(const Algebra<F>& a, const LengthReport<F>& r, std::span<const Vec<F>> s,
                              const DescendingCertificate& cert) {
  return difference_law_violations(r, a.dim(), a.unit().has_value(), rank_mod_unit(a, s), cert);
}

std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

// A product word compared against its tabulated value.
template <ExactField F>
struct Word {
  const char* name;
  Vec<F> got;
  const char* expected;  // cell grammar of parse_cell
};

template <ExactField F>
std::vector<std::string> mismatched(const Algebra<F>& a, const std::vector<Word<F>>& words,
                                    const typename F::Element& al, const typename F::Element& be,
                                    const typename F::Element& ga) {
  std::vector<std::string> bad;
  for (const auto& w : words)
    if (w.got != detail::parse_cell(a.field(), w.expected, a.dim(), al, be, ga))
      bad.push_back(std::string(w.name) + " = " + detail::describe_vec(a, w.got));
  return bad;
}

// ------------------------------------------------------------ Okubo cases

CaseOutcome okubo_gf2_exhaustive() {
  auto f = gf("F2");
  auto a = make_okubo_isotropic(f, f.one(), f.one());
  auto cert = certify_descending(a);
  SearchOptions<FF> so;
  so.certificate = &cert;
  auto r = length_of_algebra(a, so);
  return outcome(r.best_length == 4 && r.exact, "4", std::to_string(r.best_length),
                 std::to_string(r.enumerated) + " generating of " + std::to_string(r.examined) + " subspaces");
}

CaseOutcome okubo_gf2_laws() {
  auto f = gf("F2");
  auto a = make_okubo_isotropic(f, f.one(), f.one());
  auto cert = certify_descending(a);
  std::uint64_t violations = 0, mismatches = 0;
  std::set<std::string> seen;
  SearchOptions<FF> so;  // general mode is the reference
  so.observer = [&](const Subspace<FF>& s, const LengthReport<FF>& r) {
    auto basis = s.basis();
    auto v = laws<FF>(a, r, basis, cert);
    violations += v.size();
    seen.insert(v.begin(), v.end());
    SpanOptions d;
    d.mode = SpanMode::descending;
    auto rd = lin_spans<FF>(a, basis, d, &cert);
    if (rd.d != r.d) ++mismatches;
  };
  auto r = length_of_algebra(a, so);
  std::vector<std::string> notes(seen.begin(), seen.end());
  return outcome(violations == 0 && mismatches == 0 && r.best_length == 4,
                 "0 violations, 0 mode mismatches, l=4",
                 std::to_string(violations) + " violations, " + std::to_string(mismatches) + " mode mismatches, l=" +
                     std::to_string(r.best_length),
                 join(notes));
}

template <ExactField F>
CaseOutcome isotropic_witness(const F& f, long al, long be) {
  const auto alpha = f.from_int(al), beta = f.from_int(be);
  auto a = make_okubo_isotropic(f, alpha, beta);
  detail::Ops<F> o(a);
  auto x = basis_vec(f, 8, 2), y = basis_vec(f, 8, 0);  // a = x_{0,1}, b = x_{1,0}
  auto aa = o.mul(x, x), bb = o.mul(y, y), ab = o.mul(x, y), ba = o.mul(y, x);
  std::vector<Word<F>> words{
      {"aa", aa, "-bx3"},
      {"ba", ba, "0"},
      {"a(ab)", o.mul(x, ab), "bx7"},
      {"bb", bb, "-ax1"},
      {"a(bb)", o.mul(x, bb), "0"},
      {"(bb)a", o.mul(bb, x), "-ax6"},
      {"ab", ab, "x4"},
      {"(ba)a", o.mul(ba, x), "0"},
      {"(aa)(bb)", o.mul(aa, bb), "abx5"},
  };
  auto bad = mismatched(a, words, alpha, beta, f.one());
  std::vector<Vec<F>> s{x, y};
  auto cert = certify_descending(a);
  auto r = length_of_set<F>(a, s, nullptr);
  auto v = laws<F>(a, r, s, cert);
  bad.insert(bad.end(), v.begin(), v.end());
  std::string measured = "d=" + seq(r.d) + " l=" + std::to_string(r.length);
  const bool ok = r.d == std::vector<std::size_t>{0, 2, 3, 2, 1} && r.length == 4 && bad.empty();
  return outcome(ok, "d=(0,2,3,2,1) l=4", measured, join(bad));
}

template <ExactField F>
CaseOutcome idempotent_witness(const F& f, long be, long ga) {
  const auto beta = f.from_int(be), gamma = f.from_int(ga);
  auto a = make_okubo_idempotent(f, beta, gamma);
  detail::Ops<F> o(a);
  auto x = basis_vec(f, 8, 1), y = o.add(basis_vec(f, 8, 3), basis_vec(f, 8, 7));
  auto ab = o.mul(x, y), ba = o.mul(y, x), bb = o.mul(y, y), bba = o.mul(bb, x);
  std::vector<Word<F>> words{
      {"aa", o.mul(x, x), "x1"},
      {"ab", ab, "-x2-x7"},
      {"ba", ba, "x2+x3-x7"},
      {"bb", bb, "bx0-bgx1-bx4-bx5-bx5"},
      {"a(ab)", o.mul(x, ab), "-x2-x3+x7"},
      {"a(bb)", o.mul(x, bb), "-bx0-bx1-bgx1-bx4-bx4-bx5"},
      {"(ba)a", o.mul(ba, x), "x2+x7"},
      {"(bb)a", bba, "-bx0-bx1-bgx1+bx4-bx5"},
      {"((bb)a)b", o.mul(bba, y), "bx2+bgx2+bgx2+bx3+bgx3+bgx3+bx6+bx6+bx6+bx7+bx7+bgx7"},
  };
  auto bad = mismatched(a, words, f.one(), beta, gamma);
  std::vector<Vec<F>> s{x, y};
  SpanOptions so;
  so.keep_spans = true;
  auto r = lin_spans<F>(a, s, so, nullptr);
  std::vector<Vec<F>> lin3_basis;
  for (std::size_t i : {0, 1, 2, 3, 4, 5, 7}) lin3_basis.push_back(basis_vec(f, 8, i));
  const bool lin3_ok = r.spans.size() > 3 && r.spans[3] == span_of<F>(f, 8, lin3_basis);
  if (!lin3_ok) bad.push_back("Lin3 differs from <x0,...,x5,x7>");
  auto cert = certify_descending(a);
  auto v = laws<F>(a, r, s, cert);
  bad.insert(bad.end(), v.begin(), v.end());
  const std::size_t lin3 = r.spans.size() > 3 ? r.spans[3].rank() : 0;
  const std::size_t lin4 = r.spans.size() > 4 ? r.spans[4].rank() : 0;
  std::string measured =
      "dim Lin3=" + std::to_string(lin3) + " dim Lin4=" + std::to_string(lin4) + " l=" + std::to_string(r.length);
  return outcome(lin3 == 7 && lin4 == 8 && r.length == 4 && bad.empty(), "dim Lin3=7 dim Lin4=8 l=4", measured,
                 join(bad));
}

template <ExactField F>
CaseOutcome not_alternative(const Algebra<F>& a, Vec<F> x, Vec<F> y) {
  DescendingOptions<F> opt;
  opt.candidates.push_back({std::move(x), std::move(y)});
  auto v = check_descending(a, DescendingKind::alternative, opt);
  auto fl = check_descending(a, DescendingKind::flexible);
  const bool ok = !v.holds && v.certificate == CertificateKind::witness && fl.holds && fl.certifying();
  std::string measured = std::string("alternative ") + (v.holds ? "holds" : "fails") + ", flexible " +
                         (fl.holds ? "holds" : "fails");
  return outcome(ok, "alternative fails, flexible holds", measured,
                 v.counterexample ? v.counterexample->relation : std::string{});
}

// -------------------------------------------------------- Hurwitz cases

CaseOutcome a4_not_descending() {
  Q f;
  const mpq_class g0 = 2, g1 = 3, g2 = 5, g3 = 7;
  auto a = make_hurwitz<Q>(f, std::nullopt, {g0, g1, g2, g3});
  auto x = vec_add(f, basis_vec(f, 16, 1), basis_vec(f, 16, 10));
  auto y = vec_add(f, basis_vec(f, 16, 3), basis_vec(f, 16, 15));
  DescendingOptions<Q> opt;
  opt.candidates.push_back({x, y});
  auto fl = check_descending(a, DescendingKind::flexible, opt);
  auto al = check_descending(a, DescendingKind::alternative, opt);
  detail::Ops<Q> o(a);
  auto aba = o.mul(o.mul(x, y), x);
  const mpq_class coef = abs(aba[4]);
  const mpq_class want = 2 * g0 * g1 * g3;
  auto lin1 = pair_target(a, x, y);
  const bool outside = !lin1.contains(f, aba);
  const bool ok = !fl.holds && !al.holds && fl.certificate == CertificateKind::witness &&
                  al.certificate == CertificateKind::witness && coef == want && outside;
  std::string measured = std::string("flexible ") + (fl.holds ? "holds" : "fails") + ", alternative " +
                         (al.holds ? "holds" : "fails") + ", |coef e4 of (ab)a|=" + coef.get_str() +
                         (outside ? ", (ab)a outside Lin1" : ", (ab)a inside Lin1");
  return outcome(ok, "both fail, |coef e4|=2*g0*g1*g3=" + want.get_str() + ", (ab)a outside Lin1", measured);
}

struct Tower {
  std::string tag;  // field and starting algebra, e.g. "F2-K1"
  std::string field;
  std::optional<long> mu;
  std::vector<long> params;  // all doublings; prefixes give the smaller algebras
};

template <ExactField F>
Algebra<F> tower_algebra(const F& f, const Tower& t, std::size_t doublings) {
  std::optional<typename F::Element> mu;
  if (t.mu) mu = f.from_int(*t.mu);
  std::vector<typename F::Element> ps;
  for (std::size_t i = 0; i < doublings; ++i) ps.push_back(f.from_int(t.params[i]));
  return make_hurwitz(f, mu, ps);
}

std::size_t log2_dim(std::size_t d) { return static_cast<std::size_t>(std::countr_zero(d)); }

/// The exact length of a standard composition algebra.
std::size_t standard_length(const FieldSpec& fs, std::optional<long> mu, Twist t, std::size_t dim) {
  if (t == Twist::I || dim == 1) return log2_dim(dim);
  const bool f2 = fs.kind == FieldSpec::Kind::prime && fs.p == 2;
  if (f2 && dim == 2 && mu) {
    if (*mu % 2 == 0 && (t == Twist::II || t == Twist::III)) return 1;
    if (*mu % 2 != 0 && t == Twist::IV) return 1;
  }
  return std::max<std::size_t>(2, log2_dim(dim));
}

template <ExactField F>
CaseOutcome standard_case(const F& f, const FieldSpec& fs, const Tower& tw, std::size_t doublings, Twist t,
                          std::uint64_t seed) {
  auto base = tower_algebra(f, tw, doublings);
  auto a = t == Twist::I ? base : standard_twist(base, t);
  const std::size_t n = a.dim();
  const std::size_t expected = standard_length(fs, tw.mu, t, n);
  auto cert = certify_descending(a, seed);
  long double subspaces = 0;
  if constexpr (F::is_finite)
    for (std::size_t k = 0; k <= n; ++k) subspaces += count_subspaces(f.size(), n, k);
  else
    subspaces = INFINITY;
  if (subspaces <= 5e5L) {
    if constexpr (F::is_finite) {
      SearchOptions<F> so;
      so.certificate = cert.any() ? &cert : nullptr;
      std::uint64_t violations = 0;
      so.observer = [&](const Subspace<F>& s, const LengthReport<F>& r) {
        auto basis = s.basis();
        violations += laws<F>(a, r, basis, cert).size();
      };
      auto r = length_of_algebra(a, so);
      return outcome(r.best_length == expected && violations == 0, std::to_string(expected),
                     std::to_string(r.best_length) + " (exhaustive)",
                     std::to_string(violations) + " difference-law violations");
    }
  }
  // Witness {e_1, e_2, e_4, ...} for the lower bound, certified bound above.
  std::vector<Vec<F>> s;
  for (std::size_t k = 1; k < n; k <<= 1) s.push_back(basis_vec(f, n, k));
  if (!cert.any()) return outcome(false, std::to_string(expected), "no descending certificate");
  auto r = length_of_set<F>(a, s, &cert);
  auto v = laws<F>(a, r, s, cert);
  const std::size_t upper = length_upper_bound(n - r.d[0], cert);
  std::string measured = std::to_string(r.length) + " (witness " + std::to_string(r.length) + ", bound " +
                         std::to_string(upper) + ")";
  if (!r.generating) v.push_back("witness does not generate");
  return outcome(r.generating && r.length == expected && upper == expected && v.empty(), std::to_string(expected),
                 measured, join(v));
}

template <ExactField F>
CaseOutcome hurwitz_identities(const F& f, const Tower& tw) {
  std::size_t checked = 0;
  std::vector<std::string> bad;
  for (std::size_t d = 1; d <= tw.params.size(); ++d) {
    auto a = tower_algebra(f, tw, d);
    for (Identity id : {Identity::quadratic, Identity::regular_involution, Identity::alternative}) {
      ++checked;
      if (!check_polarized_identity(a, id).holds) bad.push_back(a.name() + ": " + identity_name(id));
    }
    ++checked;
    if (!check_composition(a, Strategy::polarized).holds) bad.push_back(a.name() + ": composition");
    for (Twist t : {Twist::I, Twist::II, Twist::III, Twist::IV}) {
      auto b = standard_twist(a, t);
      ++checked;
      if (!check_polarized_identity(b, Identity::two_product).holds)
        bad.push_back(b.name() + ": two-product");
    }
  }
  const auto held = std::to_string(checked - bad.size()) + "/" + std::to_string(checked);
  return outcome(bad.empty(), std::to_string(checked) + "/" + std::to_string(checked) + " hold", held + " hold",
                 join(bad));
}

template <ExactField F>
CaseOutcome symmetric_identities(const std::vector<Algebra<F>>& algebras) {
  std::size_t checked = 0;
  std::vector<std::string> bad;
  for (const auto& a : algebras)
    for (Identity id : {Identity::symmetric, Identity::form_associativity}) {
      ++checked;
      if (!check_polarized_identity(a, id).holds) bad.push_back(a.name() + ": " + identity_name(id));
    }
  const auto all = std::to_string(checked);
  return outcome(bad.empty(), all + "/" + all + " hold", std::to_string(checked - bad.size()) + "/" + all + " hold",
                 join(bad));
}

template <ExactField F>
std::string composition_summary(const Algebra<F>& a, std::uint64_t seed, bool& ok) {
  auto q = recover_norm(a);
  auto b = a.with_quad(q);
  auto v = check_composition(b, Strategy::automatic, seed);
  ok = ok && v.holds && q.strictly_nondegenerate(a.field());
  return a.name() + " over " + a.field().spec().to_string() + ": " + certificate_name(v.certificate) +
         (v.holds ? " holds" : " fails");
}

CaseOutcome pseudo_octonion_norm() {
  auto f = gf("F7");
  auto a = make_pseudo_octonion(f, f.from_int(2));
  auto q = recover_norm(a);
  auto basis = detail::sl3_basis(f);
  const auto six = f.from_int(6), three = f.from_int(3);
  bool trace_form = true;
  for (std::size_t i = 0; i < 8; ++i) {
    auto sq = detail::trace(f, detail::mat_mul(f, basis[i], basis[i]));
    if (q.diag[i] != f.div(sq, six)) trace_form = false;
    for (std::size_t j = i + 1; j < 8; ++j) {
      auto t = detail::trace(f, detail::mat_mul(f, basis[i], basis[j]));
      if (q.polar_entry(i, j) != f.div(t, three)) trace_form = false;
    }
  }
  const bool nondeg = q.strictly_nondegenerate(f);
  auto v = check_composition(a.with_quad(q), Strategy::automatic, 0);
  std::string measured = std::string(trace_form ? "n(x) = tr(x^2)/6" : "n(x) != tr(x^2)/6") +
                         (nondeg ? ", nondegenerate" : ", degenerate") + ", composition " +
                         (v.holds ? "holds" : "fails") + " (" + certificate_name(v.certificate) + ")";
  return outcome(trace_form && nondeg && v.holds, "n(x) = tr(x^2)/6, nondegenerate, composition holds", measured);
}

CaseOutcome okubo_norms(std::uint64_t seed) {
  bool ok = true;
  std::vector<std::string> parts;
  auto f2 = gf("F2"), f3 = gf("F3"), f5 = gf("F5");
  Q q;
  parts.push_back(composition_summary(make_okubo_isotropic(f2, f2.one(), f2.one()), seed, ok));
  parts.push_back(composition_summary(make_okubo_isotropic(f3, f3.one(), f3.one()), seed, ok));
  parts.push_back(composition_summary(make_okubo_idempotent(f2, f2.one(), f2.one()), seed, ok));
  parts.push_back(composition_summary(make_okubo_isotropic(f5, f5.from_int(2), f5.from_int(3)), seed, ok));
  parts.push_back(composition_summary(make_okubo_isotropic(q, mpq_class(1), mpq_class(1)), seed, ok));
  parts.push_back(composition_summary(make_okubo_idempotent(q, mpq_class(1), mpq_class(1)), seed, ok));
  return outcome(ok, "norm recovered, nondegenerate, composition holds", ok ? "all hold" : "some fail", join(parts));
}

CaseOutcome twist_iv_descending() {
  auto f = gf("F3");
  std::vector<std::string> parts;
  bool ok = true;
  auto run = [&](const Algebra<FF>& a, Strategy s) {
    for (auto kind : {DescendingKind::flexible, DescendingKind::alternative}) {
      auto v = check_descending(a, kind, {s, 0, default_samples, {}});
      ok = ok && v.holds && v.certifying();
      parts.push_back("dim " + std::to_string(a.dim()) + " " + descending_kind_name(kind) + " " +
                      (v.holds ? "holds" : "fails") + " (" + certificate_name(v.certificate) + ")");
    }
  };
  run(standard_twist(make_hurwitz(f, std::nullopt, {f.one()}), Twist::IV), Strategy::exhaustive);
  run(standard_twist(make_hurwitz(f, std::nullopt, {f.one(), f.one()}), Twist::IV), Strategy::automatic);
  return outcome(ok, "flexible and alternative certified", join(parts, ", "));
}

CaseOutcome twist_ii_not_flexible() {
  auto f = gf("F3");
  auto a = standard_twist(make_hurwitz(f, std::nullopt, {f.one(), f.one()}), Twist::II);
  auto v = check_polarized_identity(a, Identity::flexible);
  return outcome(!v.holds && v.counterexample.has_value(), "flexible identity fails",
                 std::string("flexible identity ") + (v.holds ? "holds" : "fails"),
                 v.counterexample ? v.counterexample->relation : std::string{});
}

CaseOutcome finite_okubo_elements() {
  std::vector<std::string> parts;
  bool ok = true;
  // Spaces beyond the scan cap are searched over the basis only.
  auto record = [&](const auto& a) {
    std::vector<Vec<FF>> basis;
    if (std::pow(static_cast<double>(a.field().size()), a.dim()) > element_scan_cap)
      for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(basis_vec(a.field(), a.dim(), i));
    auto id = find_idempotents(a, basis);
    auto iso = find_isotropic(a, basis);
    ok = ok && (!id.found.empty() || !iso.found.empty());
    parts.push_back(a.name() + " over " + a.field().spec().to_string() + ": " +
                    (id.found.empty() ? "no idempotent" : "idempotent") + ", " +
                    (iso.found.empty() ? "no isotropic element" : "isotropic element"));
  };
  auto f2 = gf("F2"), f5 = gf("F5"), f7 = gf("F7");
  record(make_okubo_isotropic(f2, f2.one(), f2.one()));
  record(make_okubo_idempotent(f5, f5.from_int(2), f5.from_int(3)));
  record(make_pseudo_octonion(f7, f7.from_int(2)));
  return outcome(ok, "each has an idempotent or an isotropic element", ok ? "yes" : "no", join(parts));
}

CaseOutcome two_dim_form() {
  auto f = gf("F5");
  auto a = make_two_dim_form(f, f.one());
  SearchOptions<FF> so;
  auto r = length_of_algebra(a, so);
  std::vector<Vec<FF>> u{basis_vec(f, 2, 0)};
  auto ru = length_of_set<FF>(a, u, nullptr);
  std::string measured = "l(A)=" + std::to_string(r.best_length) + " l({u})=" + std::to_string(ru.length);
  return outcome(r.best_length == 2 && ru.length == 2 && ru.generating, "l(A)=2 l({u})=2", measured);
}

std::vector<SuiteCase> build_cases() {
  std::vector<SuiteCase> c;
  auto add = [&](std::string id, CaseSource src, std::string anchor, std::function<CaseOutcome(std::uint64_t)> fn) {
    c.push_back({std::move(id), std::move(anchor), src, std::move(fn)});
  };
  const auto stated = CaseSource::stated, computed = CaseSource::computed;

  add("okubo-isotropic-gf2-length", stated, "Okubo algebras with isotropic norm have length 4",
      [](std::uint64_t) { return okubo_gf2_exhaustive(); });
  add("okubo-isotropic-gf2-difference-laws", stated,
      "difference sequences of descendingly flexible algebras: sum, last index, plateau, growth and bound laws",
      [](std::uint64_t) { return okubo_gf2_laws(); });
  add("okubo-isotropic-gf5-witness", stated, "S = {x_{0,1}, x_{1,0}} generates with d = (0,2,3,2,1)",
      [](std::uint64_t) {
        auto f = gf("F5");
        return isotropic_witness(f, 2, 3);
      });
  add("okubo-isotropic-q-witness", stated, "S = {x_{0,1}, x_{1,0}} generates with d = (0,2,3,2,1)",
      [](std::uint64_t) { return isotropic_witness(Q{}, 1, 1); });
  add("okubo-idempotent-q-witness", stated, "S = {x1, x3 + x7}: Lin3 = <x0,...,x5,x7>, so l(S) = 4",
      [](std::uint64_t) { return idempotent_witness(Q{}, 1, 1); });
  add("okubo-idempotent-gf5-witness", computed, "S = {x1, x3 + x7}: Lin3 = <x0,...,x5,x7>, so l(S) = 4",
      [](std::uint64_t) {
        auto f = gf("F5");
        return idempotent_witness(f, 2, 3);
      });
  add("okubo-isotropic-not-descendingly-alternative", stated,
      "a = x_{1,0}, b = x_{0,-1}: a(ab) = alpha x_{-1,-1} lies outside Lin1", [](std::uint64_t) {
        auto f = gf("F2");
        return not_alternative(make_okubo_isotropic(f, f.one(), f.one()), basis_vec(f, 8, 0), basis_vec(f, 8, 3));
      });
  add("okubo-idempotent-not-descendingly-alternative", stated, "a = x3, b = x6: a(ab) = beta x7 lies outside Lin1",
      [](std::uint64_t) {
        Q f;
        return not_alternative(make_okubo_idempotent(f, mpq_class(1), mpq_class(1)), basis_vec(f, 8, 3),
                               basis_vec(f, 8, 6));
      });
  add("a4-not-descending", stated,
      "the sixteen-dimensional Cayley-Dickson algebra is neither descendingly flexible nor alternative",
      [](std::uint64_t) { return a4_not_descending(); });

  const std::vector<Tower> towers{
      {"F2-K0", "F2", 0, {1, 1}},
      {"F2-K1", "F2", 1, {1, 1}},
      {"F3", "F3", std::nullopt, {1, 1, 1}},
      {"Q", "Q", std::nullopt, {-1, -1, -1}},
  };
  for (const auto& tw : towers) {
    const auto fs = FieldSpec::parse(tw.field);
    for (std::size_t dbl = 0; dbl <= tw.params.size(); ++dbl) {
      const std::size_t dim = (tw.mu ? 2u : 1u) << dbl;
      if (tw.tag == "F2-K0" && dim > 2) continue;  // the F2 tower above K(0) is covered by K(1)
      for (Twist t : {Twist::I, Twist::II, Twist::III, Twist::IV}) {
        if (dim == 1 && t != Twist::I) continue;
        add("standard-" + tw.tag + "-" + twist_name(t) + "-dim" + std::to_string(dim), stated,
            "lengths of standard composition algebras", [tw, fs, dbl, t](std::uint64_t seed) {
              return std::visit([&](const auto& f) { return standard_case(f, fs, tw, dbl, t, seed); },
                                make_field(fs));
            });
      }
    }
  }

  const std::vector<Tower> hurwitz{
      {"gf2", "F2", 1, {1, 1}},
      {"gf3", "F3", std::nullopt, {1, 1, 1}},
      {"gf5", "F5", std::nullopt, {2, 3, 2}},
      {"q", "Q", std::nullopt, {-1, 2, -3}},
  };
  for (const auto& tw : hurwitz)
    add("hurwitz-" + tw.tag + "-identities", stated,
        "Hurwitz algebras are quadratic, alternative, with a regular involution; standard products satisfy "
        "a*b + b*a in Lin(e,a,b)",
        [tw](std::uint64_t) {
          return std::visit([&](const auto& f) { return hurwitz_identities(f, tw); },
                            make_field(FieldSpec::parse(tw.field)));
        });

  add("okubo-symmetric-identities", stated,
      "Okubo algebras are symmetric composition algebras: (xy)x = x(yx) = n(x)y and n(xy, z) = n(x, yz)",
      [](std::uint64_t) {
        auto f2 = gf("F2"), f5 = gf("F5"), f7 = gf("F7");
        Q q;
        auto r1 = symmetric_identities<FF>({make_okubo_isotropic(f2, f2.one(), f2.one()),
                                            make_okubo_isotropic(f5, f5.from_int(2), f5.from_int(3)),
                                            make_okubo_idempotent(f2, f2.one(), f2.one()),
                                            make_okubo_idempotent(f5, f5.from_int(2), f5.from_int(3)),
                                            make_pseudo_octonion(f7, f7.from_int(2)),
                                            make_pseudo_octonion(f7, f7.from_int(6))});
        auto r2 = symmetric_identities<Q>({make_okubo_isotropic(q, mpq_class(1), mpq_class(1)),
                                           make_okubo_isotropic(q, mpq_class(2), mpq_class(-3)),
                                           make_okubo_idempotent(q, mpq_class(1), mpq_class(1))});
        const bool ok = r1.status == CaseStatus::pass && r2.status == CaseStatus::pass;
        return outcome(ok, "all hold", ok ? "all hold" : "some fail", join({r1.detail, r2.detail}));
      });
  add("okubo-norm-recovery", stated, "the norm of a symmetric composition algebra is read off from x(yx) = n(x)y",
      [](std::uint64_t seed) { return okubo_norms(seed); });
  add("pseudo-octonion-gf7-norm", stated, "pseudo-octonions: x*y = mu xy + (1 - mu) yx - tr(xy)/3, n(x) = tr(x^2)/6",
      [](std::uint64_t) { return pseudo_octonion_norm(); });
  add("twist-IV-gf3-descending", stated, "standard composition algebras are descendingly flexible and alternative",
      [](std::uint64_t) { return twist_iv_descending(); });
  add("twist-II-gf3-not-flexible", computed, "type II products are not flexible in dimension 4",
      [](std::uint64_t) { return twist_ii_not_flexible(); });
  add("okubo-finite-idempotent-or-isotropic", stated,
      "over a finite field an Okubo algebra has a nonzero idempotent or a nonzero isotropic element",
      [](std::uint64_t) { return finite_okubo_elements(); });
  add("two-dim-form-gf5-length", stated, "the two-dimensional symmetric composition algebra has length 2",
      [](std::uint64_t) { return two_dim_form(); });
  add("okubo-exceptional-length", stated,
      "an Okubo algebra with no idempotent and no isotropic element has length 3 or 4", [](std::uint64_t) {
        return CaseOutcome{CaseStatus::skip, "3 or 4", "-",
                           "no explicit instance is constructible: such algebras exist only over special fields"};
      });
  return c;
}

}  // namespace

void validate_cases(const std::vector<SuiteCase>& cases) {
  std::set<std::string> ids;
  for (const auto& c : cases) {
    if (c.anchor.empty()) throw Error(Errc::invariant_violation, "case '" + c.id + "' has no anchor");
    if (!c.run) throw Error(Errc::invariant_violation, "case '" + c.id + "' has nothing to run");
    if (!ids.insert(c.id).second) throw Error(Errc::invariant_violation, "duplicate case id '" + c.id + "'");
  }
}

const std::vector<SuiteCase>& suite_cases() {
  static const std::vector<SuiteCase> cases = [] {
    auto c = build_cases();
    validate_cases(c);
    return c;
  }();
  return cases;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  return fnmatch(std::string(pattern).c_str(), std::string(text).c_str(), 0) == 0;
}

std::vector<CaseResult> run_suite(const std::vector<SuiteCase>& cases, std::string_view filter, unsigned jobs,
                                  std::uint64_t seed) {
  std::vector<const SuiteCase*> picked;
  for (const auto& c : cases)
    if (filter.empty() || glob_match(filter, c.id)) picked.push_back(&c);
  std::vector<CaseResult> out(picked.size());
  auto run_one = [&](std::size_t i) {
    const auto& c = *picked[i];
    auto& r = out[i];
    r.id = c.id;
    r.anchor = c.anchor;
    r.source = c.source;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.outcome = c.run(seed);
    } catch (const std::exception& e) {
      r.outcome = {CaseStatus::error, "-", "-", e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::max(1u, jobs); ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < picked.size();) run_one(i);
      });
    for (std::size_t i; (i = next.fetch_add(1)) < picked.size();) run_one(i);
  }
  std::sort(out.begin(), out.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return out;
}

namespace {

std::string seconds_text(double s, bool timing) {
  if (!timing) return "-";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << s;
  return os.str();
}

std::string tsv_field(std::string s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string suite_tsv(const std::vector<CaseResult>& results, bool timing) {
  std::string out = "id\tstatus\texpected\tmeasured\tseconds\n";
  for (const auto& r : results)
    out += r.id + "\t" + case_status_name(r.outcome.status) + "\t" + tsv_field(r.outcome.expected) + "\t" +
           tsv_field(r.outcome.measured) + "\t" + seconds_text(r.seconds, timing) + "\n";
  return out;
}

std::string suite_json(const std::vector<CaseResult>& results, bool timing) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["status"] = case_status_name(r.outcome.status);
    j["expected"] = r.outcome.expected;
    j["measured"] = r.outcome.measured;
    j["seconds"] = timing ? nlohmann::ordered_json(r.seconds) : nlohmann::ordered_json("-");
    j["anchor"] = r.anchor;
    j["source"] = case_source_name(r.source);
    if (!r.outcome.detail.empty()) j["detail"] = r.outcome.detail;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

bool suite_passed(const std::vector<CaseResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CaseResult& r) {
    return r.outcome.status == CaseStatus::fail || r.outcome.status == CaseStatus::error;
  });
}

}  // namespace complen
