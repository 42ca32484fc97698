#pragma once

/**
 * @file io.hpp
 * @brief Algebra files, family dispatch, and JSON renderings of results.
 *
 * Algebra files are JSON documents with keys name, field, dim, labels, unit
 * (optional), mul (dim x dim x dim scalar strings), quad (optional: diag and
 * [i, j, value] polar triples with i < j) and twist (optional: type and the
 * unit of the untwisted algebra).
 */

#include <complen/constructors.hpp>

#include <json.hpp>

#include <filesystem>
#include <variant>

namespace complen {

using AnyAlgebra = std::variant<Algebra<RationalField>, Algebra<FiniteField>>;
using json = nlohmann::ordered_json;

/// Throws ParseError for malformed documents and InvariantViolation when the
/// declared unit is not a unit.
AnyAlgebra algebra_from_json(std::string_view text);
std::string algebra_to_json(const AnyAlgebra& a);

AnyAlgebra load_algebra(const std::filesystem::path& path);
void save_algebra(const AnyAlgebra& a, const std::filesystem::path& path);

Twist parse_twist(std::string_view s);

/// Families: hurwitz, twist, para-hurwitz, okubo-isotropic, okubo-idempotent,
/// pseudo-octonion, two-dim-form. Hurwitz-type parameters may start with
/// mu=<m> to begin the tower at K(mu) instead of F.
AnyAlgebra construct_family(std::string_view family, const FieldSpec& field, const std::vector<std::string>& params,
                            std::optional<Twist> twist = std::nullopt);

/// "c1,c2,..." with extension-field scalars parenthesised.
template <ExactField F>
Vec<F> parse_element(const Algebra<F>& a, std::string_view text) {
  auto parts = split_scalar_list(text);
  if (parts.size() != a.dim())
    throw ParseError(0, 0, "element '" + std::string(text) + "' has " + std::to_string(parts.size()) +
                               " coordinates, algebra '" + a.name() + "' has dimension " + std::to_string(a.dim()));
  Vec<F> v;
  for (const auto& p : parts) v.push_back(a.field().parse(p));
  return v;
}

/// Semicolon-separated elements.
template <ExactField F>
std::vector<Vec<F>> parse_element_set(const Algebra<F>& a, std::string_view text) {
  std::vector<Vec<F>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_element(a, piece));
    start = end + 1;
  }
  return out;
}

template <ExactField F>
json element_to_json(const F& f, std::span<const typename F::Element> v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(f.format(c));
  return out;
}

template <ExactField F>
json subspace_to_json(const F& f, const Subspace<F>& s) {
  json rows = json::array();
  for (std::size_t r = 0; r < s.rank(); ++r) rows.push_back(element_to_json(f, s.row(r)));
  return rows;
}

template <ExactField F>
json report_to_json(const Algebra<F>& a, const LengthReport<F>& r) {
  json out;
  out["algebra"] = a.name();
  out["mode"] = span_mode_name(r.mode);
  out["d"] = r.d;
  out["length"] = r.length;
  out["generating"] = r.generating;
  out["truncated"] = r.truncated;
  json dims = json::array();
  for (const auto& s : r.spans) dims.push_back(s.rank());
  out["span_dims"] = dims;
  return out;
}

template <ExactField F>
json search_to_json(const Algebra<F>& a, const SearchResult<F>& r) {
  json out;
  out["algebra"] = a.name();
  out["mode"] = r.mode == SearchMode::exhaustive ? "exhaustive" : "random";
  if (r.mode == SearchMode::random) {
    out["seed"] = r.seed;
    out["budget"] = r.budget;
  }
  out["best_length"] = r.best_length;
  out["exact"] = r.exact;
  out["witness"] = subspace_to_json(a.field(), r.witness);
  out["enumerated"] = r.enumerated;
  out["examined"] = r.examined;
  return out;
}

template <ExactField F>
json verdict_to_json(const Algebra<F>& a, const std::string& what, const Verdict<F>& v) {
  json out;
  out["algebra"] = a.name();
  out["check"] = what;
  out["holds"] = v.holds;
  json cert;
  cert["kind"] = certificate_name(v.certificate);
  if (v.certificate == CertificateKind::sampled) {
    cert["seed"] = v.seed;
    cert["samples"] = v.samples;
  }
  cert["certifying"] = v.certifying();
  out["certificate"] = cert;
  if (!v.note.empty()) out["note"] = v.note;
  if (v.counterexample) {
    json ce;
    json elems = json::array();
    for (const auto& e : v.counterexample->elements) elems.push_back(element_to_json<F>(a.field(), e));
    ce["elements"] = elems;
    ce["relation"] = v.counterexample->relation;
    out["counterexample"] = ce;
  }
  return out;
}

template <ExactField F>
json scan_to_json(const Algebra<F>& a, const std::string& what, const ElementScan<F>& s) {
  json out;
  out["algebra"] = a.name();
  out["check"] = what;
  out["exhaustive"] = s.exhaustive;
  json found = json::array();
  for (const auto& x : s.found) found.push_back(element_to_json<F>(a.field(), x));
  out["found"] = found;
  return out;
}

}  // namespace complen
