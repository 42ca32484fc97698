#include <complen/io.hpp>

#include <fstream>
#include <sstream>

namespace complen {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& why) {
  throw ParseError(0, 0, (pointer.empty() ? std::string("/") : pointer) + ": " + why);
}

const json& member(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail("", std::string("missing key '") + key + "'");
  return *it;
}

std::size_t index_value(const json& j, const std::string& ptr) {
  if (!j.is_number_unsigned()) fail(ptr, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <ExactField F>
typename F::Element scalar(const F& f, const json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a scalar string");
  try {
    return f.parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(ptr, e.what());
  }
}

template <ExactField F>
Vec<F> vector_of(const F& f, const json& j, std::size_t n, const std::string& ptr) {
  if (!j.is_array()) fail(ptr, "expected an array");
  if (j.size() != n) fail(ptr, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  Vec<F> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(f, j[i], ptr + "/" + std::to_string(i)));
  return v;
}

template <ExactField F>
Algebra<F> build(const F& f, const json& doc) {
  const json& name = member(doc, "name");
  if (!name.is_string()) fail("/name", "expected a string");
  const std::size_t n = index_value(member(doc, "dim"), "/dim");
  if (n == 0) fail("/dim", "dimension must be positive");
  const json& labels_j = member(doc, "labels");
  if (!labels_j.is_array() || labels_j.size() != n) fail("/labels", "expected " + std::to_string(n) + " labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (!labels_j[i].is_string()) fail("/labels/" + std::to_string(i), "expected a string");
    labels.push_back(labels_j[i].get<std::string>());
  }
  const json& mul_j = member(doc, "mul");
  if (!mul_j.is_array() || mul_j.size() != n) fail("/mul", "expected " + std::to_string(n) + " rows");
  Vec<F> mul;
  mul.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = "/mul/" + std::to_string(i);
    if (!mul_j[i].is_array() || mul_j[i].size() != n) fail(row, "expected " + std::to_string(n) + " products");
    for (std::size_t j = 0; j < n; ++j) {
      auto v = vector_of(f, mul_j[i][j], n, row + "/" + std::to_string(j));
      mul.insert(mul.end(), v.begin(), v.end());
    }
  }
  std::optional<Vec<F>> unit;
  if (auto it = doc.find("unit"); it != doc.end() && !it->is_null()) unit = vector_of(f, *it, n, "/unit");
  std::optional<QuadraticForm<F>> quad;
  if (auto it = doc.find("quad"); it != doc.end() && !it->is_null()) {
    auto q = QuadraticForm<F>::zero(f, n);
    if (!it->is_object()) fail("/quad", "expected an object");
    q.diag = vector_of(f, member(*it, "diag"), n, "/quad/diag");
    const json& polar = member(*it, "polar");
    if (!polar.is_array()) fail("/quad/polar", "expected an array");
    std::vector<bool> seen(n * n, false);
    for (std::size_t t = 0; t < polar.size(); ++t) {
      const std::string ptr = "/quad/polar/" + std::to_string(t);
      const json& e = polar[t];
      if (!e.is_array() || e.size() != 3) fail(ptr, "expected [i, j, value]");
      auto i = index_value(e[0], ptr + "/0"), j = index_value(e[1], ptr + "/1");
      if (!(i < j && j < n)) fail(ptr, "indices must satisfy i < j < dim");
      if (seen[i * n + j]) fail(ptr, "duplicate polar entry");
      seen[i * n + j] = true;
      q.set_polar(i, j, scalar(f, e[2], ptr + "/2"));
    }
    quad = std::move(q);
  }
  std::optional<TwistInfo<F>> twist;
  if (auto it = doc.find("twist"); it != doc.end() && !it->is_null()) {
    const json& type = member(*it, "type");
    if (!type.is_string()) fail("/twist/type", "expected a string");
    TwistInfo<F> info;
    try {
      info.type = parse_twist(type.get<std::string>());
    } catch (const Error& e) {
      fail("/twist/type", e.what());
    }
    info.base_unit = vector_of(f, member(*it, "base_unit"), n, "/twist/base_unit");
    twist = std::move(info);
  }
  return Algebra<F>(f, name.get<std::string>(), std::move(labels), std::move(mul), std::move(unit), std::move(quad),
                    std::move(twist));
}

template <ExactField F>
std::string render(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.dim();
  auto vec = [&](std::span<const typename F::Element> v) { return element_to_json<F>(f, v).dump(); };
  std::ostringstream out;
  out << "{\n";
  out << "  \"name\": " << json(a.name()).dump() << ",\n";
  out << "  \"field\": " << json(f.spec().to_string()).dump() << ",\n";
  out << "  \"dim\": " << n << ",\n";
  out << "  \"labels\": " << json(a.labels()).dump() << ",\n";
  if (a.unit()) out << "  \"unit\": " << vec(*a.unit()) << ",\n";
  out << "  \"mul\": [\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << "    [";
    for (std::size_t j = 0; j < n; ++j) out << (j ? ", " : "") << vec(a.product_of_basis(i, j));
    out << "]" << (i + 1 < n ? "," : "") << "\n";
  }
  out << "  ]";
  if (a.quad()) {
    const auto& q = *a.quad();
    json polar = json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!f.is_zero(q.polar_entry(i, j))) polar.push_back(json::array({i, j, f.format(q.polar_entry(i, j))}));
    out << ",\n  \"quad\": {\"diag\": " << vec(q.diag) << ", \"polar\": " << polar.dump() << "}";
  }
  if (a.twist()) {
    out << ",\n  \"twist\": {\"type\": " << json(twist_name(a.twist()->type)).dump()
        << ", \"base_unit\": " << vec(a.twist()->base_unit) << "}";
  }
  out << "\n}\n";
  return out.str();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <ExactField F>
typename F::Element param(const F& f, const std::string& text, const char* what) {
  try {
    return f.parse(text);
  } catch (const Error& e) {
    throw ParseError(0, 0, std::string("parameter ") + what + ": " + e.what());
  }
}

template <ExactField F>
Algebra<F> build_family(const F& f, std::string_view family, const std::vector<std::string>& params,
                        std::optional<Twist> twist) {
  auto count = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw ParseError(0, 0, std::string(family) + " takes " + std::to_string(lo) +
                                 (hi != lo ? ".." + std::to_string(hi) : std::string()) + " parameters, got " +
                                 std::to_string(params.size()));
  };
  if (family == "hurwitz" || family == "twist" || family == "para-hurwitz") {
    std::optional<typename F::Element> mu;
    std::vector<typename F::Element> ps;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i == 0 && params[i].rfind("mu=", 0) == 0)
        mu = param(f, params[i].substr(3), "mu");
      else
        ps.push_back(param(f, params[i], "doubling parameter"));
    }
    auto a = make_hurwitz(f, mu, ps);
    if (family == "para-hurwitz") return make_para_hurwitz(a);
    if (family == "twist") {
      if (!twist) throw ParseError(0, 0, "family twist needs --twist I|II|III|IV");
      return standard_twist(a, *twist);
    }
    if (twist && *twist != Twist::I) return standard_twist(a, *twist);
    return a;
  }
  if (family == "okubo-isotropic") {
    count(2, 2);
    return make_okubo_isotropic(f, param(f, params[0], "alpha"), param(f, params[1], "beta"));
  }
  if (family == "okubo-idempotent") {
    count(2, 2);
    return make_okubo_idempotent(f, param(f, params[0], "beta"), param(f, params[1], "gamma"));
  }
  if (family == "pseudo-octonion") {
    count(0, 1);
    std::optional<typename F::Element> mu;
    if (!params.empty()) mu = param(f, params[0], "mu");
    return make_pseudo_octonion(f, mu);
  }
  if (family == "two-dim-form") {
    count(1, 1);
    return make_two_dim_form(f, param(f, params[0], "lambda"));
  }
  throw ParseError(0, 0, "unknown family '" + std::string(family) + "'");
}

}  // namespace

Twist parse_twist(std::string_view s) {
  if (s == "I") return Twist::I;
  if (s == "II") return Twist::II;
  if (s == "III") return Twist::III;
  if (s == "IV") return Twist::IV;
  throw ParseError(0, 0, "twist must be I, II, III or IV, got '" + std::string(s) + "'");
}

AnyAlgebra algebra_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw ParseError(line, col, e.what());
  }
  if (!doc.is_object()) fail("", "expected an object");
  const json& field = member(doc, "field");
  if (!field.is_string()) fail("/field", "expected a field spec string");
  FieldSpec spec;
  try {
    spec = FieldSpec::parse(field.get<std::string>());
  } catch (const Error& e) {
    if (e.code() != Errc::parse_error) throw;
    fail("/field", e.what());
  }
  return std::visit([&](const auto& f) -> AnyAlgebra { return build(f, doc); }, make_field(spec));
}

std::string algebra_to_json(const AnyAlgebra& a) {
  return std::visit([](const auto& alg) { return render(alg); }, a);
}

AnyAlgebra load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return algebra_from_json(buf.str());
}

void save_algebra(const AnyAlgebra& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invariant_violation, "cannot write " + path.string());
  out << algebra_to_json(a);
}

AnyAlgebra construct_family(std::string_view family, const FieldSpec& field, const std::vector<std::string>& params,
                            std::optional<Twist> twist) {
  return std::visit([&](const auto& f) -> AnyAlgebra { return build_family(f, family, params, twist); },
                    make_field(field));
}

}  // namespace complen
