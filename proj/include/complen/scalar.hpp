#pragma once

/**
 * @file scalar.hpp
 * @brief Exact fields: the rationals (GMP) and finite fields GF(p), GF(p^k), k <= 4.
 *
 * Fields are small value types passed explicitly to every arithmetic call;
 * elements are plain values (mpq_class or a packed residue index). Finite
 * field elements are encoded as the integer sum c_j p^j of their coefficient
 * vector, so enumerating 0..q-1 visits the elements in lexicographic order of
 * (c_{k-1}, ..., c_0).
 */

#include <complen/error.hpp>

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace complen {

struct FieldSpec {
  enum class Kind { rational, prime, prime_power };

  Kind kind = Kind::rational;
  std::uint64_t p = 0;
  unsigned k = 1;
  /// k+1 coefficients of the monic modulus, constant term first.
  std::vector<std::uint64_t> modulus;

  /// Grammar: `Q | F<p> | F<p>^<k>:<c0>,...,<ck>`.
  static FieldSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class F>
concept ExactField = requires(const F f, const typename F::Element& a, std::string_view s,
                              std::mt19937_64& rng) {
  { F::is_finite } -> std::convertible_to<bool>;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.sub(a, a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.div(a, a) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_int(1LL) } -> std::same_as<typename F::Element>;
  { f.parse(s) } -> std::same_as<typename F::Element>;
  { f.format(a) } -> std::same_as<std::string>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.cardinality() } -> std::same_as<std::optional<std::uint64_t>>;
  { f.sample(rng) } -> std::same_as<typename F::Element>;
  { f.spec() } -> std::convertible_to<FieldSpec>;
};

class RationalField {
 public:
  using Element = mpq_class;
  static constexpr bool is_finite = false;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  Element from_int(long long v) const { return Element(mpz_class(std::to_string(v))); }

  /// `-?digits(/digits)?`, stored in lowest terms.
  Element parse(std::string_view text) const;
  std::string format(const Element& a) const { return a.get_str(); }

  std::uint64_t characteristic() const { return 0; }
  std::optional<std::uint64_t> cardinality() const { return std::nullopt; }

  /// Small fractions num/den with |num| <= 6, 1 <= den <= 3; zero is likely
  /// enough that sparse vectors get sampled too.
  Element sample(std::mt19937_64& rng) const;

  FieldSpec spec() const { return FieldSpec{}; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class FiniteField {
 public:
  using Element = std::uint32_t;
  static constexpr bool is_finite = true;

  /// Validates primality and (for k >= 2) irreducibility of the modulus.
  explicit FiniteField(const FieldSpec& spec);

  Element zero() const { return 0; }
  Element one() const { return 1; }

  Element add(Element a, Element b) const {
    if (tables_) return tables_->add[a * q_ + b];
    if (k_ == 1) {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Element>(s >= p_ ? s - p_ : s);
    }
    return add_slow(a, b);
  }
  Element neg(Element a) const {
    if (tables_) return tables_->neg[a];
    if (k_ == 1) return a == 0 ? 0 : static_cast<Element>(p_ - a);
    return neg_slow(a);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (tables_) return tables_->mul[a * q_ + b];
    if (k_ == 1) return static_cast<Element>((std::uint64_t{a} * b) % p_);
    return mul_slow(a, b);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool eq(Element a, Element b) const { return a == b; }
  Element from_int(long long v) const;

  /// A residue `-?digits` (reduced mod p, the constant coefficient for
  /// extensions) or, for extensions, a coefficient list `c0,...,c{k-1}`;
  /// the list may be wrapped in parentheses.
  Element parse(std::string_view text) const;
  /// Residue for prime fields, coefficient list for extensions.
  std::string format(Element a) const;

  std::uint64_t characteristic() const { return p_; }
  std::optional<std::uint64_t> cardinality() const { return q_; }
  std::uint64_t size() const { return q_; }
  unsigned degree() const { return k_; }

  /// The index-th element in enumeration order; elements are their own index.
  Element element(std::uint64_t index) const { return static_cast<Element>(index); }
  std::vector<std::uint64_t> coefficients(Element a) const;
  Element from_coefficients(std::span<const std::uint64_t> coeffs) const;

  Element sample(std::mt19937_64& rng) const {
    return static_cast<Element>(std::uniform_int_distribution<std::uint64_t>(0, q_ - 1)(rng));
  }

  const FieldSpec& spec() const { return spec_; }
  friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.spec_ == b.spec_; }

 private:
  struct Tables {
    std::vector<std::uint8_t> add, mul;
    std::vector<std::uint8_t> neg, inv;
  };

  Element add_slow(Element a, Element b) const;
  Element neg_slow(Element a) const;
  Element mul_slow(Element a, Element b) const;
  Element inv_slow(Element a) const;

  FieldSpec spec_;
  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  unsigned k_ = 1;
  std::shared_ptr<const Tables> tables_;
};

using AnyField = std::variant<RationalField, FiniteField>;

/// field_make: validates the spec and returns the matching field.
AnyField make_field(const FieldSpec& spec);

bool is_prime(std::uint64_t n);

/// All roots of aX^2 + bX + c, ascending (rationals) or in enumeration order
/// (finite fields, found by exhaustive substitution in any characteristic).
std::vector<mpq_class> solve_quadratic(const RationalField& f, const mpq_class& a,
                                       const mpq_class& b, const mpq_class& c);
std::vector<FiniteField::Element> solve_quadratic(const FiniteField& f, FiniteField::Element a,
                                                  FiniteField::Element b,
                                                  FiniteField::Element c);

/// True iff x^3 + c1 x + c0 has no root in the field, which for a cubic is
/// the same as irreducibility.
bool is_irreducible_cubic(const RationalField& f, const mpq_class& c1, const mpq_class& c0);
bool is_irreducible_cubic(const FiniteField& f, FiniteField::Element c1, FiniteField::Element c0);

/// Splits a comma-separated CLI list at top level, keeping parenthesised
/// extension-field coefficient lists together.
std::vector<std::string> split_scalar_list(std::string_view text);

}  // namespace complen
