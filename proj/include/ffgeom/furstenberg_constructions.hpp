#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/flag_geometry.hpp"
#include "ffgeom/indices.hpp"
#include "ffgeom/projections.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ffgeom {

struct FamilyMember {
  AffineFlat flat;
  PointSet y_set;
};

/// E = union of Y(V) over the members V.
struct FurstenbergFamily {
  FurstenbergParams params;
  std::int64_t p = 0;
  Rational lambda{1};
  std::string branch;
  std::vector<FamilyMember> members;
  PointSet union_set{0, 2};
};

struct ValidityRecord {
  bool is_valid = true;
  std::vector<std::string> failures;
};

struct ConstructionReport {
  std::string family_id;
  std::string branch;
  BigInt e_size;
  ExactExponent target{0};
  BigRational ratio;  // #E / ceil(p^F)
  bool valid = false;
  bool lower_sanity = false;
  bool upper_bound = false;
  std::vector<std::string> failures;

  bool passed() const { return valid && lower_sanity && upper_bound; }
};

/// Planar (s, t; 2, 1; 1/2)-sets for 0 <= s <= 1, 0 <= t <= 2. Branches:
/// "pencil" (s = 0, t <= 1), "point_lines" (s = 0, t > 1), "sum" (t <= s),
/// "grid" (s < t <= 2 - s) and "strip" (t > 2 - s).
/// Throws DegenerateScaleError when p is too small for the chosen branch.
FurstenbergFamily construct_2d(const Rational& s, const Rational& t, std::int64_t p);

/// (s, t; n, k)-sets following the four cases of F. Throws DomainError for
/// inadmissible tuples and DegenerateScaleError when p is too small.
FurstenbergFamily construct_general(const Rational& s, const Rational& t, int n, int k,
                                    std::int64_t p);

/// Checks #members >= lambda p^t, #Y(V) >= lambda p^s, Y(V) inside V,
/// distinct members and that union_set is the union of the Y(V).
ValidityRecord verify_family(const FurstenbergFamily& f, unsigned jobs = 1);

/// #E >= ceil(lambda p^s) and #E * #G(k, F_p^n) >= lambda^2 p^(s+t).
bool lower_bound_sanity(const FurstenbergFamily& f);

/// #E <= c * p^F(s,t;n,k), decided in integers.
bool upper_bound_holds(const FurstenbergFamily& f, const Rational& c);

ConstructionReport report(const FurstenbergFamily& f, const std::string& family_id,
                          const Rational& upper_constant, unsigned jobs = 1);

/// Header line "p=.. n=.. k=.. s=.. t=.. lambda=.. branch=..", then one line
/// per member: flat; Y-set points.
void write_family(std::ostream& out, const FurstenbergFamily& f);

}  // namespace ffgeom
