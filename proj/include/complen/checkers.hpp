#pragma once

/**
 * @file checkers.hpp
 * @brief Exact verification of polynomial identities and membership laws.
 *
 * An identity f(a, b) that is homogeneous of degree at most 2 in a and
 * linear in b vanishes everywhere iff it vanishes at a = e_i and at
 * a = e_i + e_k for all basis vectors, with b running over the basis. Checking
 * the diagonal terms first makes every reported failure a genuine
 * counterexample: once f(e_i, .) = 0, the value at e_i + e_k is exactly the
 * symmetrised cross term. This holds in every characteristic.
 */

#include <complen/length.hpp>

#include <sstream>

namespace complen {

enum class CertificateKind { exhaustive, polarized_basis, sampled, witness };

inline const char* certificate_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::exhaustive: return "exhaustive";
    case CertificateKind::polarized_basis: return "polarized-basis";
    case CertificateKind::sampled: return "sampled";
    case CertificateKind::witness: return "witness";
  }
  return "?";
}

enum class Strategy { automatic, exhaustive, sampled, polarized };

inline Strategy parse_strategy(std::string_view s) {
  if (s == "auto") return Strategy::automatic;
  if (s == "exhaustive") return Strategy::exhaustive;
  if (s == "sampled") return Strategy::sampled;
  if (s == "polarized") return Strategy::polarized;
  throw ParseError(0, 0, "unknown strategy '" + std::string(s) + "'");
}

inline constexpr std::uint64_t default_samples = 200;

template <ExactField F>
struct Counterexample {
  std::vector<Vec<F>> elements;
  std::string relation;
};

template <ExactField F>
struct Verdict {
  bool holds = true;
  CertificateKind certificate = CertificateKind::polarized_basis;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string note;
  std::optional<Counterexample<F>> counterexample;

  /// Sampled successes are evidence only; everything else is definitive.
  bool certifying() const { return !holds || certificate != CertificateKind::sampled; }
};

enum class Identity {
  flexible,
  alternative,
  quadratic,
  regular_involution,
  symmetric,
  two_product,
  standard_flexibility,
  form_associativity,
};

inline const char* identity_name(Identity id) {
  switch (id) {
    case Identity::flexible: return "flexible";
    case Identity::alternative: return "alternative";
    case Identity::quadratic: return "quadratic";
    case Identity::regular_involution: return "regular-involution";
    case Identity::symmetric: return "symmetric";
    case Identity::two_product: return "two-product";
    case Identity::standard_flexibility: return "standard-flexibility";
    case Identity::form_associativity: return "form-associativity";
  }
  return "?";
}

inline Identity parse_identity(std::string_view s) {
  for (auto id : {Identity::flexible, Identity::alternative, Identity::quadratic, Identity::regular_involution,
                  Identity::symmetric, Identity::two_product, Identity::standard_flexibility,
                  Identity::form_associativity})
    if (s == identity_name(id)) return id;
  throw Error(Errc::unknown_identity, "unknown identity '" + std::string(s) + "'");
}

/// Hurwitz algebra data behind a standard product: the twist type and the
/// unit of the underlying Hurwitz algebra.
template <ExactField F>
struct StandardContext {
  Twist type = Twist::I;
  Vec<F> e;
};

template <ExactField F>
std::optional<StandardContext<F>> standard_context(const Algebra<F>& a) {
  if (!a.quad()) return std::nullopt;
  if (a.twist()) return StandardContext<F>{a.twist()->type, a.twist()->base_unit};
  if (a.unit()) return StandardContext<F>{Twist::I, *a.unit()};
  return std::nullopt;
}

namespace detail {

template <ExactField F>
struct Ops {
  using Element = typename F::Element;
  const Algebra<F>& alg;
  const F& f;
  std::size_t n;

  explicit Ops(const Algebra<F>& a) : alg(a), f(a.field()), n(a.dim()) {}

  Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> out(n);
    alg.multiply_into(x, y, out);
    return out;
  }
  Vec<F> add(const Vec<F>& x, const Vec<F>& y) const { return vec_add(f, x, y); }
  Vec<F> sub(const Vec<F>& x, const Vec<F>& y) const { return vec_sub(f, x, y); }
  Vec<F> scale(const Element& c, const Vec<F>& x) const { return vec_scale(f, c, x); }
  Element norm(const Vec<F>& x) const { return quad_eval(f, *alg.quad(), std::span<const Element>(x)); }
  Element polar(const Vec<F>& x, const Vec<F>& y) const {
    return f.sub(f.sub(norm(add(x, y)), norm(x)), norm(y));
  }
};

template <ExactField F>
std::string describe_vec(const Algebra<F>& a, const Vec<F>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (a.field().is_zero(v[i])) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != a.field().one()) out += "(" + a.field().format(v[i]) + ")";
    out += a.labels()[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Residuals of a two-variable identity at (a, b), each with the relation it
/// encodes; the identity holds at (a, b) iff all residuals vanish.
template <ExactField F>
std::vector<std::pair<std::string, Vec<F>>> identity_residual(const Algebra<F>& alg, Identity id, const Vec<F>& a,
                                                              const Vec<F>& b) {
  check_conforms(alg, a.size());
  check_conforms(alg, b.size());
  detail::Ops<F> o(alg);
  const F& f = o.f;
  std::vector<std::pair<std::string, Vec<F>>> out;
  switch (id) {
    case Identity::flexible: {
      out.emplace_back("(ab)a = a(ba)", o.sub(o.mul(o.mul(a, b), a), o.mul(a, o.mul(b, a))));
      break;
    }
    case Identity::alternative: {
      auto aa = o.mul(a, a);
      out.emplace_back("(aa)b = a(ab)", o.sub(o.mul(aa, b), o.mul(a, o.mul(a, b))));
      out.emplace_back("(ba)a = b(aa)", o.sub(o.mul(o.mul(b, a), a), o.mul(b, aa)));
      break;
    }
    case Identity::quadratic: {
      const auto& e = require_unit(alg);
      require_quad(alg);
      auto r = o.sub(o.mul(a, a), o.scale(o.polar(a, e), a));
      out.emplace_back("aa - t(a)a + n(a)e = 0", o.add(r, o.scale(o.norm(a), e)));
      break;
    }
    case Identity::regular_involution: {
      const auto& e = require_unit(alg);
      require_quad(alg);
      auto abar = conjugate(alg, std::span<const typename F::Element>(a));
      auto ne = o.scale(o.norm(a), e);
      out.emplace_back("conj(a)a = n(a)e", o.sub(o.mul(abar, a), ne));
      out.emplace_back("a conj(a) = n(a)e", o.sub(o.mul(a, abar), ne));
      break;
    }
    case Identity::symmetric: {
      require_quad(alg);
      auto nb = o.scale(o.norm(a), b);
      out.emplace_back("(ab)a = n(a)b", o.sub(o.mul(o.mul(a, b), a), nb));
      out.emplace_back("a(ba) = n(a)b", o.sub(o.mul(a, o.mul(b, a)), nb));
      break;
    }
    case Identity::two_product:
    case Identity::standard_flexibility: {
      require_quad(alg);
      auto ctx = standard_context(alg);
      if (!ctx) throw Error(Errc::missing_unit, "algebra '" + alg.name() + "' is not a standard twist of a unital algebra");
      const Vec<F>& e = ctx->e;
      auto ta = o.polar(a, e), tb = o.polar(b, e), na = o.norm(a), nab = o.polar(a, b);
      auto ab = o.mul(a, b), ba = o.mul(b, a);
      auto lin = [&](std::initializer_list<std::pair<typename F::Element, const Vec<F>*>> terms) {
        Vec<F> acc = zero_vec(f, o.n);
        for (const auto& [c, v] : terms) axpy<F>(f, c, *v, acc);
        return acc;
      };
      if (id == Identity::two_product) {
        Vec<F> closed;
        switch (ctx->type) {
          case Twist::I: closed = lin({{tb, &a}, {ta, &b}, {f.neg(nab), &e}}); break;
          case Twist::II:
          case Twist::III: closed = lin({{nab, &e}}); break;
          case Twist::IV: {
            auto c = f.sub(f.add(f.mul(ta, tb), f.mul(ta, tb)), nab);
            closed = lin({{c, &e}, {f.neg(ta), &b}, {f.neg(tb), &a}});
            break;
          }
        }
        out.emplace_back(std::string("a*b + b*a (type ") + twist_name(ctx->type) + ")", o.sub(o.add(ab, ba), closed));
        break;
      }
      auto aa = o.mul(a, a);
      auto aba = o.mul(ab, a), a_ba = o.mul(a, ba), baa = o.mul(ba, a), a_ab = o.mul(a, ab);
      Vec<F> c_aba, c_a_ba, c_baa, c_a_ab;
      switch (ctx->type) {
        case Twist::I:
          c_aba = lin({{f.neg(nab), &a}, {tb, &aa}, {na, &b}});
          c_a_ba = c_aba;
          c_baa = lin({{ta, &ba}, {f.neg(na), &b}});
          c_a_ab = lin({{ta, &ab}, {f.neg(na), &b}});
          break;
        case Twist::II:
          c_aba = lin({{ta, &ba}, {na, &b}, {f.neg(tb), &aa}});
          c_a_ba = lin({{ta, &ba}, {f.neg(nab), &a}, {na, &b}});
          c_baa = lin({{nab, &a}, {f.neg(ta), &ba}, {f.neg(na), &b}, {tb, &aa}});
          c_a_ab = lin({{ta, &ab}, {f.neg(na), &b}});
          break;
        case Twist::III:
          c_a_ba = lin({{ta, &ab}, {na, &b}, {f.neg(tb), &aa}});
          c_aba = lin({{ta, &ab}, {f.neg(nab), &a}, {na, &b}});
          c_a_ab = lin({{nab, &a}, {f.neg(ta), &ab}, {f.neg(na), &b}, {tb, &aa}});
          c_baa = lin({{ta, &ba}, {f.neg(na), &b}});
          break;
        case Twist::IV: {
          c_aba = lin({{na, &b}});
          c_a_ba = c_aba;
          auto cb = f.sub(f.mul(ta, ta), na);
          auto ca = f.sub(nab, f.mul(ta, tb));
          c_baa = lin({{ta, &ab}, {cb, &b}, {ca, &a}, {f.neg(tb), &aa}});
          c_a_ab = lin({{ta, &ba}, {cb, &b}, {ca, &a}, {f.neg(tb), &aa}});
          break;
        }
      }
      out.emplace_back("(a*b)*a closed form", o.sub(aba, c_aba));
      out.emplace_back("a*(b*a) closed form", o.sub(a_ba, c_a_ba));
      out.emplace_back("(b*a)*a closed form", o.sub(baa, c_baa));
      out.emplace_back("a*(a*b) closed form", o.sub(a_ab, c_a_ab));
      break;
    }
    case Identity::form_associativity:
      throw Error(Errc::unknown_identity, "form-associativity is trilinear; use form_associativity_defect");
  }
  return out;
}

inline bool identity_uses_b(Identity id) {
  return id != Identity::quadratic && id != Identity::regular_involution;
}

/// n(x*y, z) - n(x, y*z).
template <ExactField F>
typename F::Element form_associativity_defect(const Algebra<F>& alg, const Vec<F>& x, const Vec<F>& y,
                                              const Vec<F>& z) {
  require_quad(alg);
  detail::Ops<F> o(alg);
  return o.f.sub(o.polar(o.mul(x, y), z), o.polar(x, o.mul(y, z)));
}

/// Runs the basis and paired-basis substitutions for a residual that is
/// homogeneous of degree <= 2 in its first argument and linear in the second.
template <ExactField F, class Residual>
std::optional<Counterexample<F>> polarized_search(const Algebra<F>& alg, bool uses_b, Residual&& residual) {
  const F& f = alg.field();
  const std::size_t n = alg.dim();
  const std::size_t nb = uses_b ? n : 1;
  auto bvec = [&](std::size_t j) { return uses_b ? basis_vec(f, n, j) : zero_vec(f, n); };
  auto test = [&](const Vec<F>& a, const Vec<F>& b) -> std::optional<Counterexample<F>> {
    for (auto& [rel, r] : residual(a, b))
      if (!is_zero_vec<F>(f, r)) {
        Counterexample<F> c;
        c.elements.push_back(a);
        if (uses_b) c.elements.push_back(b);
        c.relation = rel;
        return c;
      }
    return std::nullopt;
  };
  for (std::size_t j = 0; j < nb; ++j) {
    auto b = bvec(j);
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = test(basis_vec(f, n, i), b)) return c;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    auto b = bvec(j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        auto a = basis_vec(f, n, i);
        a[k] = f.one();
        if (auto c = test(a, b)) return c;
      }
  }
  return std::nullopt;
}

/// Exact certification of a catalog identity; never samples.
template <ExactField F>
Verdict<F> check_polarized_identity(const Algebra<F>& alg, Identity id) {
  Verdict<F> v;
  v.certificate = CertificateKind::polarized_basis;
  const std::size_t n = alg.dim();
  const F& f = alg.field();
  if (id == Identity::form_associativity) {
    require_quad(alg);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          auto x = basis_vec(f, n, i), y = basis_vec(f, n, j), z = basis_vec(f, n, k);
          if (!f.is_zero(form_associativity_defect(alg, x, y, z))) {
            v.holds = false;
            v.counterexample = Counterexample<F>{{x, y, z}, "n(x*y, z) = n(x, y*z)"};
            return v;
          }
        }
    v.note = "all basis triples";
    return v;
  }
  // Surface missing data before the search starts.
  identity_residual(alg, id, zero_vec(f, n), zero_vec(f, n));
  auto c = polarized_search(alg, identity_uses_b(id),
                            [&](const Vec<F>& a, const Vec<F>& b) { return identity_residual(alg, id, a, b); });
  if (c) {
    v.holds = false;
    v.counterexample = std::move(c);
  }
  v.note = identity_name(id);
  return v;
}

// ------------------------------------------------------------- composition

/// Some b with n(a*b) != n(a)n(b), or none when b -> n(a*b) - n(a)n(b) is the
/// zero quadratic form (checked on its diagonal and polar coefficients).
template <ExactField F>
std::optional<Vec<F>> composition_defect(const Algebra<F>& alg, std::span<const typename F::Element> a) {
  const F& f = alg.field();
  const auto& q = require_quad(alg);
  const std::size_t n = alg.dim();
  auto na = quad_eval(f, q, a);
  std::vector<Vec<F>> cols(n, Vec<F>(n));
  Vec<F> ek = zero_vec(f, n);
  std::vector<typename F::Element> ncol(n);
  for (std::size_t k = 0; k < n; ++k) {
    ek[k] = f.one();
    alg.multiply_into(a, ek, cols[k]);
    ek[k] = f.zero();
    ncol[k] = quad_eval(f, q, std::span<const typename F::Element>(cols[k]));
    if (ncol[k] != f.mul(na, q.diag[k])) return basis_vec(f, n, k);
  }
  Vec<F> sum(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      for (std::size_t t = 0; t < n; ++t) sum[t] = f.add(cols[k][t], cols[l][t]);
      auto cross = f.sub(f.sub(quad_eval(f, q, std::span<const typename F::Element>(sum)), ncol[k]), ncol[l]);
      if (cross != f.mul(na, q.polar_entry(k, l))) {
        auto b = basis_vec(f, n, k);
        b[l] = f.one();
        return b;
      }
    }
  return std::nullopt;
}

namespace detail {

/// |F|^n, saturating.
template <ExactField F>
double power_count(const F& f, std::size_t n) {
  auto q = f.cardinality();
  if (!q) return std::numeric_limits<double>::infinity();
  return std::pow(static_cast<double>(*q), static_cast<double>(n));
}

/// Odometer over F^n in enumeration order (last coordinate fastest).
template <ExactField F, class Fn>
  requires(F::is_finite)
void for_each_vector(const F& f, std::size_t n, Fn&& fn) {
  Vec<F> v = zero_vec(f, n);
  std::vector<std::uint64_t> digits(n, 0);
  while (true) {
    if (!fn(std::as_const(v))) return;
    std::size_t i = n;
    while (true) {
      if (i == 0) return;
      --i;
      if (++digits[i] < f.size()) {
        v[i] = f.element(digits[i]);
        break;
      }
      digits[i] = 0;
      v[i] = f.element(0);
    }
  }
}

template <ExactField F>
Vec<F> random_vec(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vec<F> v(n);
  for (auto& c : v) c = f.sample(rng);
  return v;
}

}  // namespace detail

inline constexpr double composition_exhaustive_cap = 1e5;

/// n(a*b) = n(a)n(b). Exhaustive runs every a and clears the quadratic form
/// b -> n(a*b) - n(a)n(b) coefficientwise, which covers all pairs. Polarized
/// runs the same per-a test at a = e_i and e_i + e_j only; the coefficients
/// are quadratic in a, so this is exact over any field.
template <ExactField F>
Verdict<F> check_composition(const Algebra<F>& alg, Strategy strategy = Strategy::automatic, std::uint64_t seed = 0,
                             std::uint64_t samples = default_samples) {
  require_quad(alg);
  const F& f = alg.field();
  const std::size_t n = alg.dim();
  const double space = detail::power_count(f, n);
  if (strategy == Strategy::automatic)
    strategy = space <= composition_exhaustive_cap ? Strategy::exhaustive : Strategy::sampled;
  Verdict<F> v;
  const std::string rel = "n(ab) = n(a)n(b)";
  if (strategy == Strategy::exhaustive) {
    if constexpr (!F::is_finite) {
      throw Error(Errc::infinite_field, "exhaustive composition check needs a finite field");
    } else {
      const double cap = default_cost_cap();
      if (space > cap) throw CostCapExceeded(space, cap, "exhaustive composition check over " + std::to_string(space) + " left factors");
      v.certificate = CertificateKind::exhaustive;
      detail::for_each_vector(f, n, [&](const Vec<F>& a) {
        if (auto b = composition_defect<F>(alg, a)) {
          v.holds = false;
          v.counterexample = Counterexample<F>{{a, *b}, rel};
          return false;
        }
        return true;
      });
      v.note = "all pairs";
    }
  } else if (strategy == Strategy::polarized) {
    v.certificate = CertificateKind::polarized_basis;
    for (std::size_t i = 0; i < n && v.holds; ++i) {
      auto a = basis_vec(f, n, i);
      if (auto b = composition_defect<F>(alg, a)) {
        v.holds = false;
        v.counterexample = Counterexample<F>{{a, *b}, rel};
      }
    }
    for (std::size_t i = 0; i < n && v.holds; ++i)
      for (std::size_t j = i + 1; j < n && v.holds; ++j) {
        auto a = basis_vec(f, n, i);
        a[j] = f.one();
        if (auto b = composition_defect<F>(alg, a)) {
          v.holds = false;
          v.counterexample = Counterexample<F>{{a, *b}, rel};
        }
      }
    v.note = "biquadratic coefficients";
  } else {
    v.certificate = CertificateKind::sampled;
    v.seed = seed;
    v.samples = samples;
    std::mt19937_64 rng(seed);
    detail::Ops<F> o(alg);
    for (std::uint64_t s = 0; s < samples; ++s) {
      auto a = detail::random_vec(f, n, rng);
      auto b = detail::random_vec(f, n, rng);
      if (o.norm(o.mul(a, b)) != f.mul(o.norm(a), o.norm(b))) {
        v.holds = false;
        v.counterexample = Counterexample<F>{{a, b}, rel};
        break;
      }
    }
    v.note = "random pairs";
  }
  return v;
}

// ----------------------------------------------------------- norm recovery

/// Reads n off the symmetric law: y -> (e_i*y)*e_i must be n(e_i) id and
/// y -> (e_i*y)*e_j + (e_j*y)*e_i must be n(e_i, e_j) id.
template <ExactField F>
QuadraticForm<F> recover_norm(const Algebra<F>& alg) {
  const F& f = alg.field();
  const std::size_t n = alg.dim();
  detail::Ops<F> o(alg);
  auto scalar_of = [&](auto&& op, const std::string& what) {
    std::vector<Vec<F>> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(op(basis_vec(f, n, k)));
    auto lambda = cols[0][0];
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k)
      for (std::size_t t = 0; t < n && ok; ++t) ok = cols[k][t] == (t == k ? lambda : f.zero());
    if (!ok) {
      std::ostringstream msg;
      msg << what << " is not a scalar operator; columns:";
      for (std::size_t k = 0; k < n; ++k) {
        msg << " [";
        for (std::size_t t = 0; t < n; ++t) msg << (t ? "," : "") << f.format(cols[k][t]);
        msg << "]";
      }
      throw Error(Errc::not_scalar_operator, msg.str());
    }
    return lambda;
  };
  auto q = QuadraticForm<F>::zero(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ei = basis_vec(f, n, i);
    q.diag[i] = scalar_of([&](const Vec<F>& y) { return o.mul(o.mul(ei, y), ei); },
                          "y -> (" + alg.labels()[i] + "*y)*" + alg.labels()[i] + " (basis index " + std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ei = basis_vec(f, n, i), ej = basis_vec(f, n, j);
      q.set_polar(i, j, scalar_of([&](const Vec<F>& y) { return o.add(o.mul(o.mul(ei, y), ej), o.mul(o.mul(ej, y), ei)); },
                                  "linearized operator at basis indices " + std::to_string(i) + "," + std::to_string(j)));
    }
  auto with = alg.with_quad(q);
  detail::Ops<F> w(with);
  auto bad = polarized_search(with, true, [&](const Vec<F>& a, const Vec<F>& b) {
    std::vector<std::pair<std::string, Vec<F>>> r;
    r.emplace_back("a(ba) = n(a)b", w.sub(w.mul(a, w.mul(b, a)), w.scale(w.norm(a), b)));
    return r;
  });
  if (bad)
    throw Error(Errc::mirror_law_failed, "x*(y*x) = n(x)y fails at x = " + detail::describe_vec(with, bad->elements[0]) +
                                             ", y = " + detail::describe_vec(with, bad->elements[1]));
  if (!q.strictly_nondegenerate(f)) throw Error(Errc::degenerate_form, "recovered norm of '" + alg.name() + "' is degenerate");
  return q;
}

// -------------------------------------------------------- descending laws

enum class DescendingKind { flexible, alternative };

inline const char* descending_kind_name(DescendingKind k) {
  return k == DescendingKind::flexible ? "flexible" : "alternative";
}

template <ExactField F>
struct DescendingOptions {
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 0;
  std::uint64_t samples = default_samples;
  /// Pairs (a, b) or triples (a, b, c) tried before anything else.
  std::vector<std::vector<Vec<F>>> candidates;
};

/// Lin_1(a, b, aa, ab, ba), with e when unital.
template <ExactField F>
Subspace<F> pair_target(const Algebra<F>& alg, const Vec<F>& a, const Vec<F>& b) {
  detail::Ops<F> o(alg);
  Subspace<F> s(alg.dim());
  if (alg.unit()) s.absorb(o.f, *alg.unit());
  for (const auto& v : {a, b, o.mul(a, a), o.mul(a, b), o.mul(b, a)}) s.absorb(o.f, v);
  return s;
}

/// Lin'_2(a, b, c): words of length <= 2 except aa, bb, cc, with e when unital.
template <ExactField F>
Subspace<F> triple_target(const Algebra<F>& alg, const Vec<F>& a, const Vec<F>& b, const Vec<F>& c) {
  detail::Ops<F> o(alg);
  Subspace<F> s(alg.dim());
  if (alg.unit()) s.absorb(o.f, *alg.unit());
  for (const auto& v : {a, b, c, o.mul(a, b), o.mul(b, a), o.mul(c, b), o.mul(b, c), o.mul(a, c), o.mul(c, a)})
    s.absorb(o.f, v);
  return s;
}

template <ExactField F>
std::optional<Counterexample<F>> descending_pair_defect(const Algebra<F>& alg, DescendingKind kind, const Vec<F>& a,
                                                        const Vec<F>& b) {
  detail::Ops<F> o(alg);
  auto target = pair_target(alg, a, b);
  std::vector<std::pair<std::string, Vec<F>>> words;
  if (kind == DescendingKind::flexible) {
    words.emplace_back("(ab)a in Lin_1(a,b,aa,ab,ba)", o.mul(o.mul(a, b), a));
    words.emplace_back("a(ba) in Lin_1(a,b,aa,ab,ba)", o.mul(a, o.mul(b, a)));
  } else {
    words.emplace_back("(ba)a in Lin_1(a,b,aa,ab,ba)", o.mul(o.mul(b, a), a));
    words.emplace_back("a(ab) in Lin_1(a,b,aa,ab,ba)", o.mul(a, o.mul(a, b)));
  }
  for (auto& [rel, w] : words)
    if (!target.contains(o.f, w)) return Counterexample<F>{{a, b}, rel};
  return std::nullopt;
}

template <ExactField F>
std::optional<Counterexample<F>> descending_triple_defect(const Algebra<F>& alg, DescendingKind kind, const Vec<F>& a,
                                                          const Vec<F>& b, const Vec<F>& c) {
  detail::Ops<F> o(alg);
  auto target = triple_target(alg, a, b, c);
  std::vector<std::pair<std::string, Vec<F>>> words;
  if (kind == DescendingKind::flexible) {
    words.emplace_back("(ab)c + (cb)a in Lin'_2(a,b,c)", o.add(o.mul(o.mul(a, b), c), o.mul(o.mul(c, b), a)));
    words.emplace_back("a(bc) + c(ba) in Lin'_2(a,b,c)", o.add(o.mul(a, o.mul(b, c)), o.mul(c, o.mul(b, a))));
  } else {
    words.emplace_back("(ab)c + (ac)b in Lin'_2(a,b,c)", o.add(o.mul(o.mul(a, b), c), o.mul(o.mul(a, c), b)));
    words.emplace_back("a(bc) + b(ac) in Lin'_2(a,b,c)", o.add(o.mul(a, o.mul(b, c)), o.mul(b, o.mul(a, c))));
  }
  for (auto& [rel, w] : words)
    if (!target.contains(o.f, w)) return Counterexample<F>{{a, b, c}, rel};
  return std::nullopt;
}

inline constexpr double descending_pair_cap = 1 << 20;
inline constexpr double descending_triple_cap = 1 << 18;

/// Membership laws for descending flexibility or alternativity. Positive
/// certificates come from the symmetric law, the closed forms of a standard
/// twist, or exhaustive enumeration; sampled passes are non-certifying.
template <ExactField F>
Verdict<F> check_descending(const Algebra<F>& alg, DescendingKind kind, const DescendingOptions<F>& opt = {}) {
  const F& f = alg.field();
  const std::size_t n = alg.dim();
  Verdict<F> v;
  auto fail = [&](Counterexample<F> c, CertificateKind k) {
    v.holds = false;
    v.certificate = k;
    v.counterexample = std::move(c);
    return v;
  };
  for (const auto& cand : opt.candidates) {
    if (cand.size() < 2 || cand.size() > 3)
      throw Error(Errc::dimension_mismatch, "descending witnesses are pairs or triples");
    for (const auto& x : cand) check_conforms(alg, x.size());
    if (auto c = descending_pair_defect(alg, kind, cand[0], cand[1])) return fail(*c, CertificateKind::witness);
    if (cand.size() == 3)
      if (auto c = descending_triple_defect(alg, kind, cand[0], cand[1], cand[2])) return fail(*c, CertificateKind::witness);
  }
  if (opt.strategy == Strategy::automatic || opt.strategy == Strategy::polarized) {
    v.certificate = CertificateKind::polarized_basis;
    if (kind == DescendingKind::flexible && alg.quad() && check_polarized_identity(alg, Identity::symmetric).holds) {
      v.note = "symmetric composition law";
      return v;
    }
    if (standard_context(alg) && check_polarized_identity(alg, Identity::standard_flexibility).holds) {
      v.note = "closed forms of the standard product";
      return v;
    }
    if (opt.strategy == Strategy::polarized) {
      v.holds = false;
      v.note = "no closed-form certificate applies";
      return v;
    }
  }
  const double pairs = detail::power_count(f, 2 * n);
  const double triples = detail::power_count(f, 3 * n);
  Strategy s = opt.strategy;
  if (s == Strategy::automatic) s = triples <= descending_triple_cap ? Strategy::exhaustive : Strategy::sampled;
  if constexpr (F::is_finite) {
    if (s == Strategy::exhaustive && triples > descending_triple_cap)
      throw CostCapExceeded(triples, descending_triple_cap, "exhaustive descending check over " + std::to_string(triples) + " triples");
    // Exhaustive pair pass: cheap and definitive on failure.
    if (pairs <= descending_pair_cap) {
      std::optional<Counterexample<F>> bad;
      detail::for_each_vector(f, n, [&](const Vec<F>& a) {
        detail::for_each_vector(f, n, [&](const Vec<F>& b) {
          bad = descending_pair_defect(alg, kind, a, b);
          return !bad;
        });
        return !bad;
      });
      if (bad) return fail(*bad, CertificateKind::exhaustive);
    }
    if (s == Strategy::exhaustive) {
      std::optional<Counterexample<F>> bad;
      detail::for_each_vector(f, n, [&](const Vec<F>& a) {
        detail::for_each_vector(f, n, [&](const Vec<F>& b) {
          detail::for_each_vector(f, n, [&](const Vec<F>& c) {
            bad = descending_triple_defect(alg, kind, a, b, c);
            return !bad;
          });
          return !bad;
        });
        return !bad;
      });
      if (bad) return fail(*bad, CertificateKind::exhaustive);
      v.certificate = CertificateKind::exhaustive;
      v.note = "all pairs and triples";
      return v;
    }
  } else if (s == Strategy::exhaustive) {
    throw Error(Errc::infinite_field, "exhaustive descending check needs a finite field");
  }
  std::mt19937_64 rng(opt.seed);
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    auto a = detail::random_vec(f, n, rng), b = detail::random_vec(f, n, rng), c = detail::random_vec(f, n, rng);
    if (auto bad = descending_pair_defect(alg, kind, a, b)) return fail(*bad, CertificateKind::sampled);
    if (auto bad = descending_triple_defect(alg, kind, a, b, c)) return fail(*bad, CertificateKind::sampled);
  }
  v.certificate = CertificateKind::sampled;
  v.seed = opt.seed;
  v.samples = opt.samples;
  v.note = "random pairs and triples";
  return v;
}

/// Certifies what can be certified; sampled passes do not count.
template <ExactField F>
DescendingCertificate certify_descending(const Algebra<F>& alg, std::uint64_t seed = 0) {
  DescendingCertificate cert;
  DescendingOptions<F> opt;
  opt.seed = seed;
  auto fl = check_descending(alg, DescendingKind::flexible, opt);
  auto al = check_descending(alg, DescendingKind::alternative, opt);
  cert.flexible = fl.holds && fl.certifying();
  cert.alternative = al.holds && al.certifying();
  if (cert.flexible) cert.basis = "flexible: " + fl.note;
  if (cert.alternative) cert.basis += std::string(cert.basis.empty() ? "" : "; ") + "alternative: " + al.note;
  return cert;
}

// ------------------------------------------------------- element searches

template <ExactField F>
struct ElementScan {
  std::vector<Vec<F>> found;
  /// True when every nonzero element was examined.
  bool exhaustive = false;
};

inline constexpr double element_scan_cap = 1e6;

namespace detail {

template <ExactField F, class Pred>
ElementScan<F> scan_elements(const Algebra<F>& alg, const std::vector<Vec<F>>& candidates, bool first_only,
                             const char* what, Pred&& pred) {
  const F& f = alg.field();
  const std::size_t n = alg.dim();
  ElementScan<F> out;
  const double space = power_count(f, n);
  if constexpr (F::is_finite) {
    if (space <= element_scan_cap) {
      out.exhaustive = true;
      for_each_vector(f, n, [&](const Vec<F>& x) {
        if (is_zero_vec<F>(f, x) || !pred(x)) return true;
        out.found.push_back(x);
        return !first_only;
      });
      return out;
    }
  }
  if (candidates.empty())
    throw CostCapExceeded(space, element_scan_cap, std::string(what) + " search over " + std::to_string(space) +
                                                       " elements needs candidate witnesses");
  for (const auto& x : candidates) {
    check_conforms(alg, x.size());
    if (!is_zero_vec<F>(f, x) && pred(x)) {
      out.found.push_back(x);
      if (first_only) break;
    }
  }
  return out;
}

}  // namespace detail

/// All nonzero x with x*x = x (exhaustive when small, else the candidates that qualify).
template <ExactField F>
ElementScan<F> find_idempotents(const Algebra<F>& alg, const std::vector<Vec<F>>& candidates = {}) {
  Vec<F> sq(alg.dim());
  return detail::scan_elements(alg, candidates, false, "idempotent", [&](const Vec<F>& x) {
    alg.multiply_into(x, x, sq);
    return sq == x;
  });
}

/// The first nonzero x with n(x) = 0 in enumeration order.
template <ExactField F>
ElementScan<F> find_isotropic(const Algebra<F>& alg, const std::vector<Vec<F>>& candidates = {}) {
  const auto& q = require_quad(alg);
  return detail::scan_elements(alg, candidates, true, "isotropic", [&](const Vec<F>& x) {
    return alg.field().is_zero(quad_eval(alg.field(), q, std::span<const typename F::Element>(x)));
  });
}

// --------------------------------------------------------------- bounds

/// Checks each generating report against the length inequalities that the
/// certificate makes available.
template <ExactField F>
Verdict<F> certify_bounds(const Algebra<F>& alg, std::span<const LengthReport<F>> reports,
                          const DescendingCertificate& cert) {
  if (!cert.any())
    throw Error(Errc::certificate_missing, "no descending certificate for '" + alg.name() + "'");
  Verdict<F> v;
  v.certificate = CertificateKind::exhaustive;
  std::size_t checked = 0;
  for (const auto& r : reports) {
    if (!r.generating) continue;
    ++checked;
    const std::uint64_t room = alg.dim() - (r.d.empty() ? 0 : r.d[0]);
    const std::size_t k = r.length;
    std::optional<std::string> broken;
    if (cert.flexible && room < descending_flexible_bound(k))
      broken = "descendingly flexible bound " + std::to_string(descending_flexible_bound(k));
    else if (cert.alternative && room < descending_alternative_bound(k))
      broken = "descendingly alternative bound " + std::to_string(descending_alternative_bound(k));
    if (broken) {
      v.holds = false;
      Counterexample<F> c;
      if (r.spans.size() > 1) c.elements = r.spans[1].basis();
      c.relation = "dim A - d0 = " + std::to_string(room) + " below the " + *broken + " for length " + std::to_string(k);
      v.counterexample = std::move(c);
      return v;
    }
  }
  v.note = std::to_string(checked) + " generating reports";
  return v;
}


/// Names of the difference-sequence laws a report breaks. rank_s is the
/// rank of S modulo the unit line; the growth and bound laws apply only when
/// the certificate covers them.
template <ExactField F>
std::vector<std::string> difference_law_violations(const LengthReport<F>& r, std::size_t dim, bool unital,
                                                   std::size_t rank_s, const DescendingCertificate& cert) {
  std::vector<std::string> out;
  const auto& d = r.d;
  if (d.empty() || d[0] != (unital ? 1u : 0u)) out.push_back("d0 = [A unital]");
  if (r.generating != (r.total() == dim)) out.push_back("generating iff sum d_k = dim A");
  std::size_t last = 0;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) last = k;
  if (r.length != last) out.push_back("l(S) = max{k : d_k != 0}");
  if (d.size() > 1 && d[1] != rank_s) out.push_back("d1 = rank(S)");
  for (std::size_t m = 1; m + 1 < d.size(); ++m)
    if (d[m] == 0 && d[m + 1] != 0) {
      out.push_back("plateau persistence");
      break;
    }
  if (cert.flexible) {
    for (std::size_t m : {3u, 4u})
      if (m < d.size() && d[m] >= 1)
        for (std::size_t k = 1; k < m; ++k)
          if (d[k] < 2) out.push_back("d_k >= 2 below a nonzero d_" + std::to_string(m));
  }
  if (r.generating) {
    const std::uint64_t room = dim - d[0];
    if (cert.flexible && room < descending_flexible_bound(r.length)) out.push_back("descendingly flexible bound");
    if (cert.alternative && room < descending_alternative_bound(r.length)) out.push_back("descendingly alternative bound");
  }
  return out;
}

}  // namespace complen
