#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/indices.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ffgeom {

/// Grid of multiples of `step`. The variable ranges come from each lemma's
/// hypothesis block; `dims` lists the (n, k) pairs to sweep.
struct GridSpec {
  Rational step{1, 4};
  std::vector<std::pair<int, int>> dims;
};

/// Multiples of step in [lo, hi], or (lo, hi] when lo_open.
std::vector<Rational> grid_values(const Rational& lo, const Rational& hi, const Rational& step,
                                  bool lo_open = false);

struct CounterexampleReport {
  std::string lemma;
  int n = 0;
  int k = 0;
  std::vector<std::pair<std::string, Rational>> witness;
  ExactExponent lhs{0};
  ExactExponent rhs{0};
  /// Amount by which the inequality fails; nullopt when infinite.
  std::optional<Rational> deficit;

  std::string witness_string() const;
  std::string deficit_string() const;
};

using IndexFunction = std::function<ExactExponent(const Rational&, const Rational&, int, int)>;

/// The index functions a property check evaluates. Tests swap in mutated
/// versions to confirm the checks can fail.
struct IndexFunctions {
  IndexFunction furstenberg = furstenberg_index;
  IndexFunction marstrand = marstrand_index;
};

/// F as usual, M with the max{., 0} clamp of the Type-3 formula removed.
/// Used as a negative control for the property checks.
IndexFunctions unclamped_type3_functions();

/// Falsifies a recursion inequality on purpose: `rhs_shift` is added to the
/// right-hand side and `flip` reverses the direction of the comparison.
struct Perturbation {
  Rational rhs_shift{0};
  bool flip = false;
};

/// u + max{F(s2, t1+v; k, k-1), s2+v} >= F(s, t; k+1, k).
std::vector<CounterexampleReport> check_recursion_f1(int k, const Rational& step,
                                                     const Perturbation& perturb = {},
                                                     unsigned jobs = 1);

/// F(s1, t1; n-1, k) + max{F(s, t2; k+1, k) - s1, 0} >= F(s, t; n, k).
std::vector<CounterexampleReport> check_recursion_f2(int n, int k, const Rational& step,
                                                     const Perturbation& perturb = {},
                                                     unsigned jobs = 1);

/// M(a1, s1; n-1, k) + M(s1+a-a1, s; k+1, k) <= M(a, s; n, k).
std::vector<CounterexampleReport> check_recursion_m(int n, int k, const Rational& step,
                                                    const Perturbation& perturb = {},
                                                    unsigned jobs = 1);

/// Easy lower bound, t-Lipschitz, left-Lipschitz in s (C = 2), diagonal
/// monotonicity of M, the two-sided M sandwich and the type partition, for
/// each (n, k) in grid.dims. Adds the (2, 1) closed forms when (2, 1) is listed.
std::vector<CounterexampleReport> check_index_properties(const GridSpec& grid,
                                                         const IndexFunctions& fns = {},
                                                         unsigned jobs = 1);

/// F(s, t; 2, 1) = min{s+t, 3s/2+t/2, s+1} on (0,1] x [0,2] and the three-piece
/// formula for M(a, s; 2, 1) on (0,2] x (0,2].
std::vector<CounterexampleReport> check_closed_form_2d(const Rational& step,
                                                       const IndexFunctions& fns = {});

/// Header: lemma,n,k,witness,lhs,rhs,deficit
void write_counterexamples_csv(std::ostream& out, const std::vector<CounterexampleReport>& reports,
                               bool header = true);

}  // namespace ffgeom
