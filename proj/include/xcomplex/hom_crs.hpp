#pragma once

#include <array>
#include <vector>

#include "xcomplex/crossed_complex.hpp"
#include "xcomplex/free_crossed.hpp"

namespace xcomplex {

/// CRS(chi(Z,1), D). A map out of chi(Z,1) is a loop lambda in D1; a homotopy
/// f -> g is (u, h) with u : f* -> g*, h in D2(g*) and
/// lambda_f = u lambda_g delta(h) u^{-1}; an m-fold homotopy over f is
/// (H0, H1) in D_m(f*) x D_{m+1}(f*).
struct MappingComplex {
  CrossedComplex complex;
  std::vector<int> loops;                             // object -> loop in D1
  std::vector<std::array<int, 2>> homotopies;         // level-1 cell -> (u, h)
  std::vector<std::vector<std::array<int, 2>>> higher;  // higher[m-2][cell] -> (H0, H1)
};

/// Levels above m_max are left trivial; m_max < 0 means up to D's top level.
MappingComplex crs_hom_z1(const CrossedComplex& d, int m_max = -1);

/// Postcomposition CRS(chi(Z,1), D) -> CRS(chi(Z,1), E) with f : D -> E.
CrossedMorphism postcompose(const MappingComplex& md, const CrossedComplex& d, const MappingComplex& me,
                            const CrossedComplex& e, const CrossedMorphism& f);
/// Evaluation at the base point, CRS(chi(Z,1), D) -> D.
CrossedMorphism evaluation(const MappingComplex& md, const CrossedComplex& d);
/// Constant maps D -> CRS(chi(Z,1), D); for D = chi(pi,1) this is x -> (x, 0).
CrossedMorphism constant_inclusion(const CrossedComplex& d, const MappingComplex& md);

struct FibrewiseLoop {
  int n = 0;
  ChiPhi target;          // chi_phi(A, n)
  ChiPhi shifted;         // chi_phi(A, n-1)
  MappingComplex over_target, over_base;
  Pullback first, second;
  CrossedComplex complex;      // the double pullback
  CrossedMorphism projection;  // complex -> chi(pi, 1)
  CrossedMorphism iso;         // complex -> chi_phi(A, n-1)
  CrossedMorphism iso_inverse;
};

/// The fibrewise loop complex of chi_phi(A, n) over chi(pi, 1) with its
/// identification with chi_phi(A, n-1). Throws if the identification fails
/// to be an isomorphism over chi(pi, 1).
FibrewiseLoop fibrewise_loop(const PiModule& m, int n);

/// Inverse of a levelwise bijective morphism.
CrossedMorphism inverse_morphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f);

/// Truncated nerve: k-simplices are the morphisms Pi(Delta^k) -> C.
struct Nerve {
  std::vector<std::vector<FreeMorphism>> simplices;
  std::vector<std::vector<std::vector<int>>> faces;         // faces[k][i][j] in degree k-1
  std::vector<std::vector<std::vector<int>>> degeneracies;  // degeneracies[k][i][j] in degree k+1

  int count(int k) const { return static_cast<int>(simplices[k].size()); }
  int top() const { return static_cast<int>(simplices.size()) - 1; }
  /// All simplicial identities on the stored degrees; throws ValidationError.
  void validate() const;
  /// Number of nondegenerate simplices in degree k.
  int nondegenerate_count(int k) const;
};

Nerve nerve(const CrossedComplex& c, int d_max);

struct SpectrumFamily {
  std::vector<ChiPhi> levels;        // levels[n] = chi_phi(A, n), n = 0..n_max
  std::vector<FibrewiseLoop> loops;  // loops[n-1] identifies chi_phi(A, n-1) with the loops of level n
};

SpectrumFamily omega_family(const PiModule& m, int n_max);

}  // namespace xcomplex
