#include <complen/io.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>

using namespace complen;

namespace {

using Q = RationalField;
using FF = FiniteField;

FF gf(const char* s) { return FF(FieldSpec::parse(s)); }

const char* two_dim_doc = R"({
  "name": "test",
  "field": "Q",
  "dim": 2,
  "labels": ["e", "x"],
  "unit": ["1", "0"],
  "mul": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("algebras survive a save and load") {
  auto dir = std::filesystem::temp_directory_path() / "complen_io_test";
  std::filesystem::create_directories(dir);
  auto f = gf("F5");
  AnyAlgebra okubo = make_okubo_isotropic(f, f.from_int(2), f.from_int(3));
  save_algebra(okubo, dir / "okubo.json");
  auto back = load_algebra(dir / "okubo.json");
  CHECK(std::get<Algebra<FF>>(back) == std::get<Algebra<FF>>(okubo));

  Q q;
  AnyAlgebra twisted = standard_twist(make_hurwitz<Q>(q, std::nullopt, {mpq_class(-1), mpq_class(1, 2)}), Twist::III);
  auto again = algebra_from_json(algebra_to_json(twisted));
  const auto& t = std::get<Algebra<Q>>(again);
  CHECK(t == std::get<Algebra<Q>>(twisted));
  REQUIRE(t.twist());
  CHECK(t.twist()->type == Twist::III);
  CHECK(t.quad() == std::get<Algebra<Q>>(twisted).quad());

  auto f9 = gf("F3^2:1,0,1");
  AnyAlgebra ext = make_hurwitz<FF>(f9, std::nullopt, {f9.parse("(0,1)")});
  CHECK(std::get<Algebra<FF>>(algebra_from_json(algebra_to_json(ext))) == std::get<Algebra<FF>>(ext));
  std::filesystem::remove_all(dir);
}

TEST_CASE("a declared unit must be a unit") {
  CHECK_NOTHROW(algebra_from_json(two_dim_doc));
  try {
    algebra_from_json(replace(two_dim_doc, R"("unit": ["1", "0"])", R"("unit": ["0", "1"])"));
    FAIL("expected InvariantViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invariant_violation);
  }
}

TEST_CASE("malformed documents report where they fail") {
  try {
    algebra_from_json("{\n  \"name\": \"x\",\n  \"dim\": 2,,\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
  try {
    algebra_from_json(replace(two_dim_doc, R"(["-1","0"])", R"(["-1"])"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 0);
    CHECK(std::string(e.what()).find("/mul/1/1") != std::string::npos);
  }
  try {
    algebra_from_json(replace(two_dim_doc, R"("Q")", R"("F4")"));
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_prime);
  }
  CHECK_THROWS_AS(algebra_from_json(replace(two_dim_doc, R"("-1","0")", R"("-1","zz")")), ParseError);
  CHECK_THROWS_AS(algebra_from_json(replace(two_dim_doc, R"("dim": 2)", R"("dim": 3)")), ParseError);
  CHECK_THROWS_AS(load_algebra("/nonexistent/algebra.json"), Error);
}

TEST_CASE("elements are parsed against the algebra dimension") {
  auto f = gf("F5");
  auto a = make_okubo_isotropic(f, f.from_int(2), f.from_int(3));
  CHECK(parse_element(a, "0,0,1,0,0,0,0,0") == basis_vec(f, 8, 2));
  CHECK_THROWS_AS(parse_element(a, "0,0,1,0,0,0,0"), ParseError);
  auto set = parse_element_set(a, "0,0,1,0,0,0,0,0; 1,0,0,0,0,0,0,0");
  REQUIRE(set.size() == 2);
  CHECK(set[1] == basis_vec(f, 8, 0));
}

TEST_CASE("family dispatch") {
  auto fs = FieldSpec::parse("F5");
  auto a = construct_family("okubo-isotropic", fs, {"2", "3"});
  CHECK(std::get<Algebra<FF>>(a).dim() == 8);
  auto h = construct_family("hurwitz", FieldSpec::parse("F2"), {"mu=1", "1", "1"});
  CHECK(std::get<Algebra<FF>>(h).dim() == 8);
  auto t = construct_family("twist", FieldSpec::parse("Q"), {"-1", "-1"}, Twist::II);
  CHECK(std::get<Algebra<Q>>(t).twist()->type == Twist::II);
  auto p = construct_family("para-hurwitz", FieldSpec::parse("F3"), {"1"});
  CHECK(std::get<Algebra<FF>>(p).twist()->type == Twist::IV);
  CHECK(std::get<Algebra<FF>>(construct_family("pseudo-octonion", FieldSpec::parse("F7"), {})).dim() == 8);
  CHECK(std::get<Algebra<FF>>(construct_family("two-dim-form", fs, {"1"})).dim() == 2);
  CHECK_THROWS_AS(construct_family("sedenion", fs, {}), ParseError);
  CHECK_THROWS_AS(construct_family("okubo-isotropic", fs, {"2"}), Error);
  CHECK(parse_twist("IV") == Twist::IV);
  CHECK_THROWS_AS(parse_twist("V"), Error);
}
