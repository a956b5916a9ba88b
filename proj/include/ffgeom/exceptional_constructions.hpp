#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/flag_geometry.hpp"
#include "ffgeom/indices.hpp"
#include "ffgeom/projections.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ffgeom {

/// A set A with a family of directions claimed to lie in E_s(A; n, k), and
/// E_s(A; n, k) itself from full enumeration.
struct ExceptionalWitness {
  MarstrandParams params;
  std::int64_t p = 0;
  /// "oberlin", "type1", "type2", "type2_high_gamma", "type3", "type3_low_gamma" or "type4".
  std::string branch;
  /// The containment the claims instantiate, in words.
  std::string containment;
  PointSet set_a{0, 2};
  std::vector<LinearSubspace> claimed_directions;
  /// U_theta for each theta in E_gamma of the planar factor (type3 and type2_high_gamma).
  std::vector<std::vector<LinearSubspace>> theta_families;
  /// E_s(A; n, k) in enumeration order.
  std::vector<LinearSubspace> exceptional;
  BigInt certified_count;
};

/// {(x, y) : |x| <= floor(p^(a-s)/5), |y| <= floor(p^s/5)} with symmetric residues.
PointSet oberlin_rectangle(const Rational& a, const Rational& s, std::int64_t p);

/// Planar witness for a in (0, 2], s in (a/2, min{1, a}]; claims the lines
/// y = kx with |k| <= floor(p^(2s-a)/5). Throws DegenerateScaleError when
/// floor(p^s/5) = 0.
ExceptionalWitness construct_oberlin_rectangle(const Rational& a, const Rational& s, std::int64_t p,
                                               unsigned jobs = 1);

/// Dispatches on the type of (a, s; n, k) and the sub-range of gamma.
ExceptionalWitness construct_marstrand_witness(const Rational& a, const Rational& s, int n, int k,
                                               std::int64_t p, unsigned jobs = 1);

/// certified_count >= c * p^M(a, s; n, k); true when M = -infinity.
bool certify_lower_bound(const ExceptionalWitness& w, const Rational& c);

/// Every claim lies in the enumerated exceptional set and passes the strict
/// test #pi*_V(A) < p^s on its own.
bool claims_sound(const ExceptionalWitness& w);

/// No direction lies in two of the theta families.
bool theta_families_disjoint(const ExceptionalWitness& w);

/// Header "p=.. n=.. k=.. a=.. s=.. type=.. branch=..", then "A:" with the
/// points, "claimed:" with canonical subspace forms and "certified_count=..".
void write_witness(std::ostream& out, const ExceptionalWitness& w);

}  // namespace ffgeom
