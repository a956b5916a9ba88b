#include "ffgeom/lemma_verifier.hpp"

#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace ffgeom {

namespace {

using Witness = std::vector<std::pair<std::string, Rational>>;
using Reports = std::vector<CounterexampleReport>;

Rational rmin(const Rational& x, const Rational& y) { return x < y ? x : y; }
Rational rmax(const Rational& x, const Rational& y) { return x < y ? y : x; }

ExactExponent emax(const ExactExponent& x, const ExactExponent& y) { return x < y ? y : x; }

std::optional<Rational> gap(const ExactExponent& big, const ExactExponent& small) {
  if (big.is_negative_infinity() || small.is_negative_infinity()) return std::nullopt;
  return big.value() - small.value();
}

/// Records a violation of `lhs >= rhs` (ge) or `lhs <= rhs` (!ge) after perturbation.
void judge(Reports& out, const char* lemma, int n, int k, Witness witness, const ExactExponent& lhs,
           const ExactExponent& rhs, bool ge, const Perturbation& perturb = {}) {
  const bool want_ge = ge != perturb.flip;
  const ExactExponent target = rhs + ExactExponent(perturb.rhs_shift);
  const bool holds = want_ge ? lhs >= target : lhs <= target;
  if (holds) return;
  out.push_back({lemma, n, k, std::move(witness), lhs, rhs,
                 want_ge ? gap(target, lhs) : gap(lhs, target)});
}

void judge_equal(Reports& out, const char* lemma, int n, int k, Witness witness,
                 const ExactExponent& got, const ExactExponent& expected) {
  if (got == expected) return;
  auto diff = gap(got, expected);
  if (diff && *diff < 0) diff = -*diff;
  out.push_back({lemma, n, k, std::move(witness), got, expected, diff});
}

template <typename Body>
Reports sweep(const std::vector<Rational>& outer, Body body, unsigned jobs) {
  auto parts = parallel_map(
      outer.size(),
      [&](std::size_t i) {
        Reports local;
        body(outer[i], local);
        return local;
      },
      jobs);
  Reports all;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  return all;
}

void require_step(const Rational& step) {
  if (step <= 0) throw DomainError("grid step must be positive");
}

}  // namespace

std::vector<Rational> grid_values(const Rational& lo, const Rational& hi, const Rational& step,
                                  bool lo_open) {
  require_step(step);
  std::vector<Rational> out;
  for (std::int64_t j = ceil(lo / step); Rational(j) * step <= hi; ++j) {
    const Rational x = Rational(j) * step;
    if (lo_open && x == lo) continue;
    out.push_back(x);
  }
  return out;
}

std::string CounterexampleReport::witness_string() const {
  std::string out;
  for (const auto& [name, value] : witness) {
    if (!out.empty()) out += ' ';
    out += name + "=" + to_string(value);
  }
  return out;
}

std::string CounterexampleReport::deficit_string() const {
  return deficit ? to_string(*deficit) : std::string("inf");
}

IndexFunctions unclamped_type3_functions() {
  IndexFunctions fns;
  fns.marstrand = [](const Rational& a, const Rational& s, int n, int k) {
    const auto mp = MarstrandParams::make(a, s, n, k);
    if (mp.type != MarstrandType::type3) return mp.index();
    return ExactExponent(Rational(k * (n - k)) - Rational((mp.m + 1 - mp.l) * (k - mp.l)) +
                         2 * mp.gamma - mp.beta);
  };
  return fns;
}

std::vector<CounterexampleReport> check_recursion_f1(int k, const Rational& step,
                                                     const Perturbation& perturb, unsigned jobs) {
  if (k < 2) throw DomainError("recursion F1 needs k >= 2");
  require_step(step);
  const Rational one(1);
  return sweep(
      grid_values(0, k, step),
      [&](const Rational& s, Reports& out) {
        for (const auto& t : grid_values(0, k + 1, step)) {
          const ExactExponent rhs = furstenberg_index(s, t, k + 1, k);
          for (const auto& t1 : grid_values(0, k - 1, step)) {
            const Rational t2 = t - t1;
            if (t2 < 0 || t2 > 2) continue;
            for (const auto& s1 : grid_values(0, rmin(one, s), step)) {
              const Rational s2 = s - s1;
              // F(s2, .; k, k-1) is only defined for s2 <= k-1.
              if (s2 > k - 1) continue;
              const Rational f21 = furstenberg_index(s1, t2, 2, 1).value();
              for (const auto& u : grid_values(s1, one, step)) {
                const Rational v = f21 - u;
                if (v < 0 || v > 1) continue;
                const ExactExponent inner = furstenberg_index(s2, t1 + v, k, k - 1);
                const ExactExponent lhs = ExactExponent(u) + emax(inner, ExactExponent(s2 + v));
                judge(out, "recursion_f1", k + 1, k,
                      {{"s", s}, {"t", t}, {"t1", t1}, {"t2", t2}, {"s1", s1}, {"s2", s2},
                       {"u", u}, {"v", v}},
                      lhs, rhs, true, perturb);
              }
            }
          }
        }
      },
      jobs);
}

std::vector<CounterexampleReport> check_recursion_f2(int n, int k, const Rational& step,
                                                     const Perturbation& perturb, unsigned jobs) {
  if (k < 1 || n < k + 2) throw DomainError("recursion F2 needs n >= k+2, k >= 1");
  require_step(step);
  return sweep(
      grid_values(0, k, step),
      [&](const Rational& s, Reports& out) {
        for (const auto& t : grid_values(0, (k + 1) * (n - k), step)) {
          const ExactExponent rhs = furstenberg_index(s, t, n, k);
          for (const auto& t1 : grid_values(0, (k + 1) * (n - k - 1), step)) {
            const Rational t2 = t - t1;
            if (t2 < 0 || t2 > k + 1) continue;
            const Rational top = furstenberg_index(s, t2, k + 1, k).value();
            for (const auto& s1 : grid_values(s, k, step)) {
              const ExactExponent lhs =
                  furstenberg_index(s1, t1, n - 1, k) + ExactExponent(rmax(top - s1, Rational(0)));
              judge(out, "recursion_f2", n, k,
                    {{"s", s}, {"t", t}, {"t1", t1}, {"t2", t2}, {"s1", s1}}, lhs, rhs, true,
                    perturb);
            }
          }
        }
      },
      jobs);
}

std::vector<CounterexampleReport> check_recursion_m(int n, int k, const Rational& step,
                                                    const Perturbation& perturb, unsigned jobs) {
  if (k < 1 || n < k + 2) throw DomainError("recursion M needs n >= k+2, k >= 1");
  require_step(step);
  const Rational zero(0);
  return sweep(
      grid_values(0, n, step, true),
      [&](const Rational& a, Reports& out) {
        const Rational s_lo = rmax(zero, a - (n - k));
        for (const auto& s : grid_values(s_lo, rmin(a, Rational(k)), step, true)) {
          const ExactExponent rhs = marstrand_index(a, s, n, k);
          // a1 = 0 and s1 = 0 are outside the domain of M.
          for (const auto& a1 : grid_values(rmax(zero, a - 1), rmin(Rational(n - 1), a), step, true)) {
            for (const auto& s1 : grid_values(zero, s, step, true)) {
              const ExactExponent lhs =
                  marstrand_index(a1, s1, n - 1, k) + marstrand_index(s1 + a - a1, s, k + 1, k);
              judge(out, "recursion_m", n, k, {{"a", a}, {"s", s}, {"a1", a1}, {"s1", s1}}, lhs,
                    rhs, false, perturb);
            }
          }
        }
      },
      jobs);
}

namespace {

Reports furstenberg_properties(int n, int k, const Rational& step, const IndexFunctions& fns,
                               unsigned jobs) {
  const Rational top((k + 1) * (n - k));
  const Rational full(k * (n - k));
  return sweep(
      grid_values(0, k, step),
      [&](const Rational& s, Reports& out) {
        for (const auto& t : grid_values(0, top, step)) {
          const ExactExponent f = fns.furstenberg(s, t, n, k);
          judge(out, "easybound", n, k, {{"s", s}, {"t", t}}, f,
                ExactExponent(s + rmax(Rational(0), t - full)), true);

          for (const auto& t1 : grid_values(0, top - t, step)) {
            judge(out, "t_lipschitz", n, k, {{"s", s}, {"t1", t1}, {"t2", t}},
                  fns.furstenberg(s, t1 + t, n, k), ExactExponent(t1) + f, false);
          }

          if (s > 0) {
            const Rational sigma = canonical_split(s).fraction;
            for (const auto& theta : grid_values(0, sigma, step)) {
              if (theta >= sigma) continue;
              judge(out, "left_lipschitz", n, k, {{"s", s}, {"t", t}, {"theta", theta}},
                    fns.furstenberg(s - theta, t, n, k), f - 2 * theta, true);
            }
          }
        }
      },
      jobs);
}

Reports marstrand_properties(int n, int k, const Rational& step, const IndexFunctions& fns,
                             unsigned jobs) {
  const Rational full(k * (n - k));
  return sweep(
      grid_values(0, n, step, true),
      [&](const Rational& a, Reports& out) {
        const auto [m, beta] = canonical_split(a);
        for (const auto& s : grid_values(0, n, step, true)) {
          const auto holds = marstrand_type_conditions(a, s, n, k);
          const auto count = std::count(holds.begin(), holds.end(), true);
          judge_equal(out, "type_partition", n, k, {{"a", a}, {"s", s}}, ExactExponent(count),
                      ExactExponent(1));
          if (count != 1) continue;

          const ExactExponent mv = fns.marstrand(a, s, n, k);
          for (const auto& theta : grid_values(0, rmin(a, s), step, true)) {
            if (theta >= a || theta >= s) continue;
            judge(out, "m_diagonal", n, k, {{"a", a}, {"s", s}, {"theta", theta}},
                  fns.marstrand(a - theta, s - theta, n, k), mv, false);
          }

          if (a - (n - k) < s && s <= rmin(Rational(k), a)) {
            const auto [l, gamma] = canonical_split(s);
            const Rational lower = full - Rational((m + 1 - l) * (k - l)) +
                                   rmax(2 * gamma - beta, Rational(0));
            const Rational upper = full - Rational((m - l) * (k - l)) +
                                   rmax(2 * gamma - (beta + 1), Rational(0));
            judge(out, "easy_m_lower", n, k, {{"a", a}, {"s", s}}, mv, ExactExponent(lower), true);
            judge(out, "easy_m_upper", n, k, {{"a", a}, {"s", s}}, mv, ExactExponent(upper), false);
          }
        }
      },
      jobs);
}

}  // namespace

std::vector<CounterexampleReport> check_index_properties(const GridSpec& grid,
                                                         const IndexFunctions& fns, unsigned jobs) {
  require_step(grid.step);
  Reports all;
  for (const auto& [n, k] : grid.dims) {
    if (k < 1 || k >= n) throw DomainError("need 1 <= k < n in grid dims");
    for (auto part : {furstenberg_properties(n, k, grid.step, fns, jobs),
                      marstrand_properties(n, k, grid.step, fns, jobs)}) {
      std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    if (n == 2 && k == 1) {
      auto part = check_closed_form_2d(grid.step, fns);
      std::move(part.begin(), part.end(), std::back_inserter(all));
    }
  }
  return all;
}

std::vector<CounterexampleReport> check_closed_form_2d(const Rational& step,
                                                       const IndexFunctions& fns) {
  Reports out;
  for (const auto& s : grid_values(0, 1, step, true)) {
    for (const auto& t : grid_values(0, 2, step)) {
      const Rational expected = rmin(rmin(s + t, 3 * s / 2 + t / 2), s + 1);
      judge_equal(out, "closed_form_f21", 2, 1, {{"s", s}, {"t", t}}, fns.furstenberg(s, t, 2, 1),
                  ExactExponent(expected));
    }
  }
  for (const auto& a : grid_values(0, 2, step, true)) {
    for (const auto& s : grid_values(0, 2, step, true)) {
      ExactExponent expected = ExactExponent::negative_infinity();
      if (s > rmin(Rational(1), a)) {
        expected = 1;
      } else if (a - 1 < s) {
        expected = rmax(Rational(0), 2 * s - a);
      }
      judge_equal(out, "closed_form_m21", 2, 1, {{"a", a}, {"s", s}}, fns.marstrand(a, s, 2, 1),
                  expected);
    }
  }
  return out;
}

void write_counterexamples_csv(std::ostream& out, const std::vector<CounterexampleReport>& reports,
                               bool header) {
  if (header) out << "lemma,n,k,witness,lhs,rhs,deficit\n";
  for (const auto& r : reports) {
    out << r.lemma << ',' << r.n << ',' << r.k << ',' << r.witness_string() << ','
        << r.lhs.to_string() << ',' << r.rhs.to_string() << ',' << r.deficit_string() << '\n';
  }
}

}  // namespace ffgeom
