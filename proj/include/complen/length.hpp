#pragma once

/**
 * @file length.hpp
 * @brief Lin_k(S), difference sequences, l(S) and l(A).
 *
 * Lin_k(S) is built level by level. New(a) denotes vectors whose span,
 * together with Lin_{a-1}, is Lin_a. Every word of length exactly k is a
 * product of words of lengths a + b = k, so
 *
 *   Lin_k = Lin_{k-1} + sum_{a+b=k, a,b>=1} New(a) * New(b).
 *
 * On descendingly flexible or alternative algebras the recursion collapses
 * to Lin_{k+1} = Lin_k + New(k) * S + S * New(k) and a plateau is final.
 */

#include <complen/algebra.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace complen {

enum class SpanMode { general, descending };

inline const char* span_mode_name(SpanMode m) { return m == SpanMode::general ? "general" : "descending"; }

/// Which descending properties have been certified for an algebra, and how.
struct DescendingCertificate {
  bool flexible = false;
  bool alternative = false;
  std::string basis;

  bool any() const { return flexible || alternative; }
};

template <ExactField F>
struct LengthReport {
  std::vector<std::size_t> d;
  std::size_t length = 0;
  bool generating = false;
  std::vector<Subspace<F>> spans;
  SpanMode mode = SpanMode::general;
  bool truncated = false;

  std::size_t total() const { return std::accumulate(d.begin(), d.end(), std::size_t{0}); }
};

struct SpanOptions {
  SpanMode mode = SpanMode::general;
  /// General-mode cap on k; defaults to 2 * dim.
  std::optional<std::size_t> max_k;
  /// Allows descending mode without a certificate.
  bool override_certificate = false;
  bool keep_spans = true;
};

/// Lower bounds on dim A - d_0 forced by an algebra length k.
inline std::uint64_t descending_flexible_bound(std::size_t k) {
  if (k <= 2) return k;
  if (k <= 5) return 2 * k - 1;
  return 3 * (std::uint64_t{1} << (k - 4)) + k - 3;
}

inline std::uint64_t descending_alternative_bound(std::size_t k) {
  if (k < 2) return k;
  return (std::uint64_t{1} << (k - 1)) + k - 2;
}

/// Largest length compatible with the certified bounds for an algebra with
/// dim A - d_0 = room.
inline std::size_t length_upper_bound(std::size_t room, const DescendingCertificate& cert) {
  std::size_t best = 0;
  for (std::size_t k = 1; k <= room + 1 && k < 60; ++k) {
    bool ok = true;
    if (cert.flexible && descending_flexible_bound(k) > room) ok = false;
    if (cert.alternative && descending_alternative_bound(k) > room) ok = false;
    if (!cert.any() && k > room) ok = false;
    if (ok) best = k;
  }
  return best;
}

template <ExactField F>
LengthReport<F> lin_spans(const Algebra<F>& a, std::span<const Vec<F>> s, const SpanOptions& opt,
                          const DescendingCertificate* cert) {
  if (opt.mode == SpanMode::descending && !opt.override_certificate && !(cert && cert->any()))
    throw Error(Errc::mode_unjustified,
                "descending mode needs a descending flexibility or alternativity certificate for '" + a.name() + "'");
  const F& f = a.field();
  const std::size_t n = a.dim();
  for (const auto& v : s) check_conforms(a, v.size());

  LengthReport<F> rep;
  rep.mode = opt.mode;
  Subspace<F> cur(n);
  if (a.unit()) cur.absorb(f, *a.unit());
  rep.d.push_back(cur.rank());
  if (opt.keep_spans) rep.spans.push_back(cur);

  std::vector<std::vector<Vec<F>>> fresh_at(2);
  for (const auto& v : s)
    if (cur.absorb(f, v)) fresh_at[1].push_back(v);
  rep.d.push_back(fresh_at[1].size());
  if (opt.keep_spans) rep.spans.push_back(cur);

  Vec<F> prod(n);
  if (opt.mode == SpanMode::descending) {
    const std::vector<Vec<F>> gens = fresh_at[1];
    for (std::size_t k = 1; !cur.is_full() && !fresh_at[k].empty(); ++k) {
      std::vector<Vec<F>> fresh;
      for (const auto& x : fresh_at[k]) {
        for (const auto& g : gens) {
          a.multiply_into(x, g, prod);
          if (cur.absorb(f, prod)) fresh.push_back(prod);
          a.multiply_into(g, x, prod);
          if (cur.absorb(f, prod)) fresh.push_back(prod);
        }
      }
      if (fresh.empty()) break;
      rep.d.push_back(fresh.size());
      if (opt.keep_spans) rep.spans.push_back(cur);
      fresh_at.push_back(std::move(fresh));
    }
  } else {
    std::vector<Vec<F>> all(s.begin(), s.end());
    if (a.unit()) all.push_back(*a.unit());
    const std::size_t target = subalgebra_closure<F>(a, all).rank();
    const std::size_t max_k = opt.max_k.value_or(2 * n);
    std::size_t k = 1;
    while (cur.rank() < target && k < max_k) {
      ++k;
      std::vector<Vec<F>> fresh;
      for (std::size_t left = 1; left < k; ++left) {
        for (const auto& x : fresh_at[left])
          for (const auto& y : fresh_at[k - left]) {
            a.multiply_into(x, y, prod);
            if (cur.absorb(f, prod)) fresh.push_back(prod);
          }
      }
      rep.d.push_back(fresh.size());
      if (opt.keep_spans) rep.spans.push_back(cur);
      fresh_at.push_back(std::move(fresh));
    }
    rep.truncated = cur.rank() < target;
  }

  std::size_t last = 0;
  for (std::size_t k = 0; k < rep.d.size(); ++k)
    if (rep.d[k] != 0) last = k;
  rep.length = last;
  if (!rep.truncated) {
    std::size_t keep = std::max<std::size_t>(last, 1) + 1;
    rep.d.resize(keep);
    if (opt.keep_spans) rep.spans.resize(keep, Subspace<F>(n));
  }
  rep.generating = rep.total() == n;
  return rep;
}

/// Descending mode when a certificate is supplied, general mode otherwise.
template <ExactField F>
LengthReport<F> length_of_set(const Algebra<F>& a, std::span<const Vec<F>> s,
                              const DescendingCertificate* cert = nullptr) {
  SpanOptions opt;
  opt.mode = cert && cert->any() ? SpanMode::descending : SpanMode::general;
  return lin_spans(a, s, opt, cert);
}

// ------------------------------------------------------------------ search

/// Pivot columns plus free-entry count of one Schubert cell of the
/// k-dimensional subspaces of F^n.
struct EchelonCell {
  std::vector<std::size_t> pivots;
  std::size_t free = 0;
};

/// All pivot sets of size k in lexicographic order.
inline std::vector<EchelonCell> echelon_cells(std::size_t n, std::size_t k) {
  std::vector<EchelonCell> cells;
  if (k > n) return cells;
  std::vector<std::size_t> piv(k);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  while (true) {
    EchelonCell c{piv, 0};
    for (std::size_t r = 0; r < k; ++r) c.free += (n - 1 - piv[r]) - (k - 1 - r);
    cells.push_back(std::move(c));
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return cells;
}

/// Number of k-dimensional subspaces of GF(q)^n, summed cell by cell.
inline long double count_subspaces(std::uint64_t q, std::size_t n, std::size_t k) {
  long double total = 0;
  for (const auto& c : echelon_cells(n, k)) total += std::pow(static_cast<long double>(q), static_cast<long double>(c.free));
  return total;
}

/// Builds the subspace of a cell whose free entries are given in row-major order.
template <ExactField F>
Subspace<F> cell_subspace(const F& f, std::size_t n, const EchelonCell& cell,
                          std::span<const typename F::Element> free_entries) {
  Subspace<F> s(n);
  std::size_t idx = 0;
  std::vector<bool> is_pivot(n, false);
  for (auto p : cell.pivots) is_pivot[p] = true;
  for (std::size_t r = 0; r < cell.pivots.size(); ++r) {
    Vec<F> row = zero_vec(f, n);
    row[cell.pivots[r]] = f.one();
    for (std::size_t c = cell.pivots[r] + 1; c < n; ++c)
      if (!is_pivot[c]) row[c] = free_entries[idx++];
    s.absorb(f, row);
  }
  return s;
}

/// Visits every k-dimensional subspace of F^n exactly once, in canonical
/// order (cells lexicographically, then free entries as base-q odometer with
/// the last entry fastest). fn returns false to stop early.
template <ExactField F, class Fn>
  requires(F::is_finite)
void for_each_subspace_in_cell(const F& f, std::size_t n, const EchelonCell& cell, Fn&& fn) {
  const std::uint64_t q = f.size();
  std::vector<std::uint64_t> digits(cell.free, 0);
  Vec<F> entries(cell.free, f.zero());
  while (true) {
    if (!fn(cell_subspace(f, n, cell, std::span<const typename F::Element>(entries)))) return;
    std::size_t i = cell.free;
    while (i > 0) {
      --i;
      if (++digits[i] < q) {
        entries[i] = f.element(digits[i]);
        break;
      }
      digits[i] = 0;
      entries[i] = f.element(0);
      if (i == 0) return;
    }
    if (cell.free == 0) return;
  }
}

template <ExactField F, class Fn>
void for_each_subspace(const F& f, std::size_t n, std::size_t k, Fn&& fn) {
  if constexpr (!F::is_finite) {
    throw Error(Errc::infinite_field, "cannot enumerate subspaces over an infinite field");
  } else {
    bool go = true;
    for (const auto& cell : echelon_cells(n, k)) {
      for_each_subspace_in_cell(f, n, cell, [&](const Subspace<F>& s) { return go = fn(s); });
      if (!go) return;
    }
  }
}

/// enumerate_subspaces: all k-dimensional subspaces in canonical order.
template <ExactField F>
std::vector<Subspace<F>> enumerate_subspaces(const F& f, std::size_t n, std::size_t k) {
  std::vector<Subspace<F>> out;
  for_each_subspace(f, n, k, [&](const Subspace<F>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

/// COMPLEN_COST_CAP overrides the default of 1e7 subspace evaluations.
inline double default_cost_cap() {
  if (const char* env = std::getenv("COMPLEN_COST_CAP")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e7;
}

enum class SearchMode { exhaustive, random };

template <ExactField F>
struct SearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000;
  double cost_cap = default_cost_cap();
  unsigned jobs = 1;
  const DescendingCertificate* certificate = nullptr;
  /// Called for every evaluated subspace; must be thread-safe when jobs > 1.
  std::function<void(const Subspace<F>&, const LengthReport<F>&)> observer;
};

template <ExactField F>
struct SearchResult {
  std::size_t best_length = 0;
  Subspace<F> witness;
  std::uint64_t enumerated = 0;  ///< generating subspaces examined
  std::uint64_t examined = 0;    ///< all subspaces examined
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  /// Exhaustive results are exact; random ones are lower bounds.
  bool exact = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {

template <ExactField F>
struct Candidate {
  std::size_t length = 0;
  std::uint64_t order = 0;  ///< position in the canonical (or sampling) order
  std::optional<Subspace<F>> witness;
  std::uint64_t generating = 0;
  std::uint64_t examined = 0;

  void offer(std::size_t len, std::uint64_t ord, const Subspace<F>& s) {
    if (!witness || len > length || (len == length && ord < order)) {
      length = len;
      order = ord;
      witness = s;
    }
  }
  void merge(const Candidate& o) {
    generating += o.generating;
    examined += o.examined;
    if (o.witness) offer(o.length, o.order, *o.witness);
  }
};

template <ExactField F>
void evaluate(const Algebra<F>& a, const SearchOptions<F>& opt, const Subspace<F>& s, std::uint64_t order,
              Candidate<F>& acc) {
  auto basis = s.basis();
  SpanOptions so;
  so.mode = opt.certificate && opt.certificate->any() ? SpanMode::descending : SpanMode::general;
  so.keep_spans = static_cast<bool>(opt.observer);
  auto rep = lin_spans<F>(a, basis, so, opt.certificate);
  ++acc.examined;
  if (opt.observer) opt.observer(s, rep);
  if (!rep.generating) return;
  ++acc.generating;
  acc.offer(rep.length, order, s);
}

}  // namespace detail

/// l(A): exact by exhaustive enumeration of subspaces (the length of a set
/// depends only on its span), or a lower bound by seeded random sampling.
template <ExactField F>
SearchResult<F> length_of_algebra(const Algebra<F>& a, const SearchOptions<F>& opt) {
  const std::size_t n = a.dim();
  SearchResult<F> res;
  res.mode = opt.mode;
  res.seed = opt.seed;
  res.budget = opt.budget;
  detail::Candidate<F> best;

  if (opt.mode == SearchMode::exhaustive) {
    if constexpr (!F::is_finite) {
      throw Error(Errc::infinite_field, "exhaustive length search needs a finite field");
    } else {
      const std::uint64_t q = a.field().size();
      long double estimate = 0;
      for (std::size_t k = 0; k <= n; ++k) estimate += count_subspaces(q, n, k);
      if (estimate > opt.cost_cap)
        throw CostCapExceeded(static_cast<double>(estimate), opt.cost_cap,
                              "exhaustive search over " + std::to_string(std::llround(static_cast<double>(estimate))) +
                                  " subspaces exceeds the cap " + std::to_string(std::llround(opt.cost_cap)));
      struct Shard {
        EchelonCell cell;
        std::uint64_t base;
      };
      std::vector<Shard> shards;
      std::uint64_t base = 0;
      for (std::size_t k = 0; k <= n; ++k)
        for (auto& cell : echelon_cells(n, k)) {
          auto count = static_cast<std::uint64_t>(std::pow(static_cast<long double>(q), cell.free));
          shards.push_back({std::move(cell), base});
          base += count;
        }
      std::vector<detail::Candidate<F>> partial(shards.size());
      auto run_shard = [&](std::size_t i) {
        std::uint64_t ord = shards[i].base;
        for_each_subspace_in_cell(a.field(), n, shards[i].cell, [&](const Subspace<F>& s) {
          detail::evaluate(a, opt, s, ord++, partial[i]);
          return true;
        });
      };
      const unsigned jobs = std::max(1u, opt.jobs);
      if (jobs == 1) {
        for (std::size_t i = 0; i < shards.size(); ++i) run_shard(i);
      } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t)
          pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < shards.size();) run_shard(i);
          });
      }
      for (const auto& p : partial) best.merge(p);
      res.exact = true;
    }
  } else {
    const F& f = a.field();
    for (std::uint64_t i = 0; i < opt.budget; ++i) {
      std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(i)));
      std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
      auto cells = echelon_cells(n, k);
      std::size_t pick = 0;
      if constexpr (F::is_finite) {
        // Cells weighted by size so the subspace is uniform among dimension k.
        std::vector<long double> w;
        for (const auto& c : cells) w.push_back(std::pow(static_cast<long double>(f.size()), c.free));
        std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
        pick = dist(rng);
      } else {
        pick = std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng);
      }
      Vec<F> entries;
      for (std::size_t j = 0; j < cells[pick].free; ++j) entries.push_back(f.sample(rng));
      auto s = cell_subspace(f, n, cells[pick], std::span<const typename F::Element>(entries));
      detail::evaluate(a, opt, s, i, best);
    }
    res.exact = false;
  }
  res.best_length = best.length;
  res.witness = best.witness.value_or(Subspace<F>(n));
  res.enumerated = best.generating;
  res.examined = best.examined;
  return res;
}

}  // namespace complen
