// complen: construct algebras, check identities, compute lengths, and run the
// regression suite.

#include <complen/io.hpp>
#include <complen/suite.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace complen;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

template <ExactField F>
json run_check(const Algebra<F>& a, const std::string& what, Strategy strategy, std::uint64_t seed,
               std::uint64_t samples, const std::string& witness) {
  if (what == "composition") return verdict_to_json(a, what, check_composition(a, strategy, seed, samples));
  if (what == "descending-flexible" || what == "descending-alternative") {
    DescendingOptions<F> opt;
    opt.strategy = strategy;
    opt.seed = seed;
    opt.samples = samples;
    if (!witness.empty()) opt.candidates.push_back(parse_element_set(a, witness));
    auto kind = what == "descending-flexible" ? DescendingKind::flexible : DescendingKind::alternative;
    return verdict_to_json(a, what, check_descending(a, kind, opt));
  }
  if (what == "idempotents" || what == "isotropic") {
    std::vector<Vec<F>> cands;
    if (!witness.empty()) cands = parse_element_set(a, witness);
    auto s = what == "idempotents" ? find_idempotents(a, cands) : find_isotropic(a, cands);
    return scan_to_json(a, what, s);
  }
  return verdict_to_json(a, what, check_polarized_identity(a, parse_identity(what)));
}

template <ExactField F>
json run_length_set(const Algebra<F>& a, const std::string& set, const std::string& mode, bool force,
                    std::optional<std::size_t> max_k, std::uint64_t seed) {
  auto s = parse_element_set(a, set);
  SpanOptions opt;
  opt.max_k = max_k;
  DescendingCertificate cert;
  if (mode == "descending") {
    opt.mode = SpanMode::descending;
    opt.override_certificate = force;
    if (!force) cert = certify_descending(a, seed);
  }
  auto r = lin_spans<F>(a, s, opt, mode == "descending" && cert.any() ? &cert : nullptr);
  return report_to_json(a, r);
}

template <ExactField F>
json run_length_algebra(const Algebra<F>& a, const std::string& mode, std::uint64_t seed, std::uint64_t budget,
                        unsigned jobs, bool general) {
  SearchOptions<F> opt;
  opt.mode = mode == "random" ? SearchMode::random : SearchMode::exhaustive;
  if (mode == "auto") {
    // Exhaustive when it fits under the cost cap, random otherwise.
    bool fits = false;
    if constexpr (F::is_finite) {
      long double estimate = 0;
      for (std::size_t k = 0; k <= a.dim(); ++k) estimate += count_subspaces(a.field().size(), a.dim(), k);
      fits = estimate <= opt.cost_cap;
    }
    if (!fits) opt.mode = SearchMode::random;
  }
  opt.seed = seed;
  opt.budget = budget;
  opt.jobs = jobs;
  DescendingCertificate cert;
  if (!general) {
    cert = certify_descending(a, seed);
    if (cert.any()) opt.certificate = &cert;
  }
  return search_to_json(a, length_of_algebra(a, opt));
}

std::vector<std::string> split_params(const std::string& text) {
  if (text.empty()) return {};
  return split_scalar_list(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lengths of composition and symmetric composition algebras over exact fields"};
  app.require_subcommand(1);

  std::string family, field = "Q", params, twist, out;
  auto* construct = app.add_subcommand("construct", "build an algebra and write its JSON file");
  construct->add_option("--family", family, "hurwitz|twist|para-hurwitz|okubo-isotropic|okubo-idempotent|"
                                             "pseudo-octonion|two-dim-form")
      ->required();
  construct->add_option("--field", field, "Q | F<p> | F<p>^<k>:<c0>,...,<ck>");
  construct->add_option("--params", params, "comma-separated parameters; hurwitz towers accept a leading mu=<m>");
  construct->add_option("--twist", twist, "I|II|III|IV");
  construct->add_option("--out", out, "output file (stdout when omitted)");

  std::string algebra_path, what, strategy = "auto", witness;
  std::uint64_t seed = 0, samples = default_samples;
  auto* check = app.add_subcommand("check", "check an identity or law");
  check->add_option("--algebra", algebra_path, "algebra file")->required();
  check->add_option("--what", what,
                    "composition|flexible|alternative|symmetric|quadratic|regular-involution|two-product|"
                    "standard-flexibility|form-associativity|descending-flexible|descending-alternative|"
                    "idempotents|isotropic")
      ->required();
  check->add_option("--strategy", strategy, "auto|exhaustive|sampled|polarized");
  check->add_option("--seed", seed);
  check->add_option("--samples", samples);
  check->add_option("--witness", witness, "semicolon-separated elements tried first");

  std::string set, span_mode = "general";
  bool force = false;
  std::optional<std::size_t> max_k;
  auto* length_set = app.add_subcommand("length-set", "difference sequence and length of a set");
  length_set->add_option("--algebra", algebra_path, "algebra file")->required();
  length_set->add_option("--set", set, "semicolon-separated coordinate vectors")->required();
  length_set->add_option("--mode", span_mode, "general|descending")->check(CLI::IsMember({"general", "descending"}));
  length_set->add_flag("--force", force, "use descending mode without certifying the algebra");
  length_set->add_option("--max-k", max_k, "general-mode cap on the word length");
  length_set->add_option("--seed", seed);

  std::string search_mode = "auto";
  std::uint64_t budget = 1000;
  unsigned jobs = 1;
  bool general = false;
  auto* length_algebra = app.add_subcommand("length-algebra", "length of the algebra");
  length_algebra->add_option("--algebra", algebra_path, "algebra file")->required();
  length_algebra->add_option("--mode", search_mode, "auto|exhaustive|random")
      ->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  length_algebra->add_option("--seed", seed);
  length_algebra->add_option("--budget", budget, "random samples");
  length_algebra->add_option("--jobs", jobs);
  length_algebra->add_flag("--general", general, "never use descending spans");

  std::string filter, format = "tsv";
  bool timing = false;
  auto* verify = app.add_subcommand("verify-paper", "run the regression suite");
  verify->add_option("--filter", filter, "glob over case ids");
  verify->add_option("--jobs", jobs);
  verify->add_option("--seed", seed);
  verify->add_option("--format", format, "tsv|json")->check(CLI::IsMember({"tsv", "json"}));
  verify->add_flag("--timing", timing, "report wall-clock seconds per case");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      std::optional<Twist> t;
      if (!twist.empty()) t = parse_twist(twist);
      auto a = construct_family(family, FieldSpec::parse(field), split_params(params), t);
      if (out.empty())
        std::cout << algebra_to_json(a);
      else
        save_algebra(a, out);
    } else if (*check) {
      auto a = load_algebra(algebra_path);
      auto s = parse_strategy(strategy);
      std::visit([&](const auto& alg) { emit(run_check(alg, what, s, seed, samples, witness)); }, a);
    } else if (*length_set) {
      auto a = load_algebra(algebra_path);
      std::visit([&](const auto& alg) { emit(run_length_set(alg, set, span_mode, force, max_k, seed)); }, a);
    } else if (*length_algebra) {
      auto a = load_algebra(algebra_path);
      std::visit([&](const auto& alg) { emit(run_length_algebra(alg, search_mode, seed, budget, jobs, general)); },
                 a);
    } else if (*verify) {
      auto results = run_suite(suite_cases(), filter, jobs, seed);
      std::cout << (format == "json" ? suite_json(results, timing) : suite_tsv(results, timing));
      return suite_passed(results) ? 0 : 1;
    }
  } catch (const CostCapExceeded& e) {
    std::cerr << "complen: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "complen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
