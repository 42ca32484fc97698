#include <complen/scalar.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace complen {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::parse_error, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Integer literal `-?digits` reduced modulo p.
std::uint64_t parse_residue(std::string_view s, std::uint64_t p) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::parse_error, "bad residue '" + std::string(s) + "'");
  mpz_class v(std::string(s), 10);
  mpz_class m(std::to_string(p), 10);
  v %= m;
  if (negative && v != 0) v = m - v;
  return v.get_ui();
}

using Poly = std::vector<std::uint64_t>;

/// Remainder of num modulo the monic polynomial mod over GF(p).
Poly poly_rem(Poly num, const Poly& mod, std::uint64_t p) {
  const std::size_t dm = mod.size() - 1;
  while (num.size() > dm) {
    std::uint64_t lead = num.back();
    if (lead != 0) {
      std::size_t shift = num.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) {
        num[shift + i] = (num[shift + i] + (p - lead) * mod[i]) % p;
      }
    }
    num.pop_back();
  }
  return num;
}

bool has_root(const Poly& poly, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * x + poly[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

bool has_quadratic_factor(const Poly& poly, std::uint64_t p) {
  for (std::uint64_t c0 = 0; c0 < p; ++c0) {
    for (std::uint64_t c1 = 0; c1 < p; ++c1) {
      Poly r = poly_rem(poly, Poly{c0, c1, 1}, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint64_t c) { return c == 0; })) return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  FieldSpec spec;
  if (text == "Q") return spec;
  if (text.empty() || text.front() != 'F')
    throw Error(Errc::parse_error, "field spec must be Q, F<p> or F<p>^<k>:<coeffs>: '" +
                                       std::string(text) + "'");
  text.remove_prefix(1);
  auto caret = text.find('^');
  if (caret == std::string_view::npos) {
    spec.kind = Kind::prime;
    spec.p = parse_u64(text, "characteristic");
    return spec;
  }
  spec.kind = Kind::prime_power;
  spec.p = parse_u64(text.substr(0, caret), "characteristic");
  auto rest = text.substr(caret + 1);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::parse_error, "prime-power field spec needs ':<c0>,...,<ck>'");
  spec.k = static_cast<unsigned>(parse_u64(rest.substr(0, colon), "extension degree"));
  for (auto part : split(rest.substr(colon + 1), ','))
    spec.modulus.push_back(parse_u64(part, "modulus coefficient"));
  if (spec.modulus.size() != spec.k + 1)
    throw Error(Errc::parse_error, "modulus needs k+1 = " + std::to_string(spec.k + 1) +
                                       " coefficients, got " + std::to_string(spec.modulus.size()));
  return spec;
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case Kind::rational: return "Q";
    case Kind::prime: return "F" + std::to_string(p);
    case Kind::prime_power: {
      std::string s = "F" + std::to_string(p) + "^" + std::to_string(k) + ":";
      for (std::size_t i = 0; i < modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(modulus[i]);
      }
      return s;
    }
  }
  return "?";
}

// ------------------------------------------------------------ RationalField

RationalField::Element RationalField::inv(const Element& a) const {
  if (is_zero(a)) throw Error(Errc::division_by_zero, "inverse of 0 in Q");
  return Element(1) / a;
}

RationalField::Element RationalField::parse(std::string_view text) const {
  text = trim(text);
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  auto num = body.substr(0, slash);
  auto den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw Error(Errc::parse_error, "bad rational '" + std::string(text) + "'");
  Element v;
  v.get_num() = mpz_class(std::string(num), 10);
  v.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (v.get_den() == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
  if (text.front() == '-') v.get_num() = -v.get_num();
  v.canonicalize();
  return v;
}

RationalField::Element RationalField::sample(std::mt19937_64& rng) const {
  long num = std::uniform_int_distribution<long>(-6, 6)(rng);
  long den = std::uniform_int_distribution<long>(1, 3)(rng);
  Element v(num, static_cast<unsigned long>(den));
  v.canonicalize();
  return v;
}

// -------------------------------------------------------------- FiniteField

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FiniteField::FiniteField(const FieldSpec& spec) : spec_(spec) {
  if (spec.kind == FieldSpec::Kind::rational)
    throw Error(Errc::parse_error, "FiniteField needs a finite field spec");
  p_ = spec.p;
  if (p_ >= (std::uint64_t{1} << 32)) throw Error(Errc::unsupported_degree, "characteristic too large");
  if (!is_prime(p_)) throw Error(Errc::not_prime, std::to_string(p_) + " is not prime");
  if (spec.kind == FieldSpec::Kind::prime) {
    k_ = 1;
    spec_.k = 1;
    spec_.modulus.clear();
  } else {
    k_ = spec.k;
    if (k_ < 2 || k_ > 4)
      throw Error(Errc::unsupported_degree, "extension degree must be 2..4, got " + std::to_string(k_));
    for (auto c : spec.modulus)
      if (c >= p_) throw Error(Errc::parse_error, "modulus coefficient out of range [0,p)");
    if (spec.modulus.back() != 1) throw Error(Errc::reducible_modulus, "modulus is not monic");
    if (has_root(spec.modulus, p_) || (k_ == 4 && has_quadratic_factor(spec.modulus, p_)))
      throw Error(Errc::reducible_modulus, spec.to_string() + " has a reducible modulus");
  }
  q_ = 1;
  for (unsigned i = 0; i < k_; ++i) {
    q_ *= p_;
    if (q_ >= (std::uint64_t{1} << 32))
      throw Error(Errc::unsupported_degree, "field with more than 2^32 elements");
  }
  if (q_ <= 256) {
    auto t = std::make_shared<Tables>();
    t->add.resize(q_ * q_);
    t->mul.resize(q_ * q_);
    t->neg.resize(q_);
    t->inv.resize(q_);
    for (std::uint64_t a = 0; a < q_; ++a) {
      t->neg[a] = static_cast<std::uint8_t>(neg_slow(static_cast<Element>(a)));
      for (std::uint64_t b = 0; b < q_; ++b) {
        t->add[a * q_ + b] = static_cast<std::uint8_t>(add_slow(static_cast<Element>(a), static_cast<Element>(b)));
        t->mul[a * q_ + b] = static_cast<std::uint8_t>(mul_slow(static_cast<Element>(a), static_cast<Element>(b)));
      }
    }
    for (std::uint64_t a = 1; a < q_; ++a)
      t->inv[a] = static_cast<std::uint8_t>(inv_slow(static_cast<Element>(a)));
    tables_ = std::move(t);
  }
}

std::vector<std::uint64_t> FiniteField::coefficients(Element a) const {
  std::vector<std::uint64_t> c(k_);
  std::uint64_t v = a;
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

FiniteField::Element FiniteField::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p_ + coeffs[i] % p_;
  return static_cast<Element>(v);
}

FiniteField::Element FiniteField::add_slow(Element a, Element b) const {
  auto ca = coefficients(a), cb = coefficients(b);
  for (unsigned i = 0; i < k_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
  return from_coefficients(ca);
}

FiniteField::Element FiniteField::neg_slow(Element a) const {
  auto ca = coefficients(a);
  for (auto& c : ca) c = (p_ - c) % p_;
  return from_coefficients(ca);
}

FiniteField::Element FiniteField::mul_slow(Element a, Element b) const {
  if (k_ == 1) return static_cast<Element>((std::uint64_t{a} * b) % p_);
  auto ca = coefficients(a), cb = coefficients(b);
  Poly prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  return from_coefficients(poly_rem(std::move(prod), spec_.modulus, p_));
}

FiniteField::Element FiniteField::inv_slow(Element a) const {
  if (a == 0) throw Error(Errc::division_by_zero, "inverse of 0 in " + spec_.to_string());
  // a^(q-2)
  Element result = 1, base = a;
  for (std::uint64_t e = q_ - 2; e; e >>= 1) {
    if (e & 1) result = mul_slow(result, base);
    base = mul_slow(base, base);
  }
  return result;
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) throw Error(Errc::division_by_zero, "inverse of 0 in " + spec_.to_string());
  if (tables_) return tables_->inv[a];
  return inv_slow(a);
}

FiniteField::Element FiniteField::from_int(long long v) const {
  long long p = static_cast<long long>(p_);
  return static_cast<Element>(((v % p) + p) % p);
}

FiniteField::Element FiniteField::parse(std::string_view text) const {
  text = trim(text);
  if (!text.empty() && text.front() == '(' && text.back() == ')') text = trim(text.substr(1, text.size() - 2));
  auto parts = split(text, ',');
  if (parts.size() == 1) return static_cast<Element>(parse_residue(parts[0], p_));
  if (k_ == 1 || parts.size() != k_)
    throw Error(Errc::parse_error, "expected a residue or " + std::to_string(k_) +
                                       " coefficients for " + spec_.to_string() + ", got '" +
                                       std::string(text) + "'");
  std::vector<std::uint64_t> coeffs;
  for (auto part : parts) coeffs.push_back(parse_residue(part, p_));
  return from_coefficients(coeffs);
}

std::string FiniteField::format(Element a) const {
  if (k_ == 1) return std::to_string(a);
  std::string s;
  auto c = coefficients(a);
  for (unsigned i = 0; i < k_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

AnyField make_field(const FieldSpec& spec) {
  if (spec.kind == FieldSpec::Kind::rational) return RationalField{};
  return FiniteField(spec);
}

// --------------------------------------------------------- polynomial utils

std::vector<mpq_class> solve_quadratic(const RationalField&, const mpq_class& a, const mpq_class& b,
                                       const mpq_class& c) {
  if (sgn(a) == 0) throw Error(Errc::degenerate_leading_coefficient, "a = 0");
  mpq_class disc = b * b - 4 * a * c;
  if (sgn(disc) < 0) return {};
  mpz_class num = disc.get_num(), den = disc.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return {};
  mpq_class root(sqrt(num), sqrt(den));
  root.canonicalize();
  std::vector<mpq_class> out{(-b - root) / (2 * a), (-b + root) / (2 * a)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FiniteField::Element> solve_quadratic(const FiniteField& f, FiniteField::Element a,
                                                  FiniteField::Element b, FiniteField::Element c) {
  if (f.is_zero(a)) throw Error(Errc::degenerate_leading_coefficient, "a = 0");
  std::vector<FiniteField::Element> out;
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    auto x = f.element(i);
    auto v = f.add(f.mul(f.add(f.mul(a, x), b), x), c);
    if (f.is_zero(v)) out.push_back(x);
  }
  return out;
}

bool is_irreducible_cubic(const RationalField&, const mpq_class& c1, const mpq_class& c0) {
  // x = y / L turns the cubic into the monic integer cubic y^3 + (c1 L^2) y + c0 L^3,
  // whose rational roots are integer divisors of the constant term.
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), c1.get_den().get_mpz_t(), c0.get_den().get_mpz_t());
  mpq_class a1 = c1 * l * l, a0 = c0 * l * l * l;
  mpz_class lin = a1.get_num(), cst = a0.get_num();
  if (cst == 0) return false;
  mpz_class n = abs(cst);
  auto is_root = [&](const mpz_class& y) { return y * y * y + lin * y + cst == 0; };
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class e = n / d;
    if (is_root(d) || is_root(-d) || is_root(e) || is_root(-e)) return false;
  }
  return true;
}

bool is_irreducible_cubic(const FiniteField& f, FiniteField::Element c1, FiniteField::Element c0) {
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    auto x = f.element(i);
    auto v = f.add(f.mul(f.add(f.mul(x, x), c1), x), c0);
    if (f.is_zero(v)) return false;
  }
  return true;
}

std::vector<std::string> split_scalar_list(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.emplace_back(trim(cur));
  return out;
}

}  // namespace complen
