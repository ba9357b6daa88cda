#pragma once

#include <optional>
#include <vector>

#include "xcomplex/free_crossed.hpp"
#include "xcomplex/simplicial.hpp"

namespace xcomplex {

/// Local coefficients on a simplicial set: one automorphism of A per
/// nondegenerate edge, transporting values from the edge's target to its
/// source. Either derived from pi-labels through a pi-module, or given
/// directly (which covers infinite pi such as Z acting by -1).
class LocalSystem {
 public:
  LocalSystem() = default;

  /// Labels must satisfy l(d2 s) * l(d0 s) = l(d1 s) on every 2-simplex.
  static LocalSystem from_labels(const SimplicialSet& x, const PiModule& m, std::vector<int> labels);
  /// Twists must be automorphisms with T(d2 s) T(d0 s) = T(d1 s).
  static LocalSystem from_twists(const SimplicialSet& x, FgAbelianGroup a, std::vector<IntMatrix> twists);
  static LocalSystem constant(const SimplicialSet& x, FgAbelianGroup a);

  const FgAbelianGroup& module() const { return a_; }
  const std::vector<IntMatrix>& twists() const { return twists_; }
  /// Twist along a possibly degenerate 1-simplex.
  IntMatrix transport(const SimplexRef& edge) const;

  bool has_labels() const { return pi_module_.has_value(); }
  const PiModule& pi_module() const { return pi_module_.value(); }
  const std::vector<int>& labels() const { return labels_; }
  /// Label along a possibly degenerate 1-simplex.
  int label(const SimplexRef& edge) const;

  /// The system pulled back along f : y -> x (this system lives on x).
  LocalSystem pullback(const SimplicialSet& y, const SimplicialMap& f) const;

  void validate(const SimplicialSet& x) const;

 private:
  FgAbelianGroup a_;
  std::vector<IntMatrix> twists_;
  std::optional<PiModule> pi_module_;
  std::vector<int> labels_;
};

/// C^n(X; A) as a direct sum of one copy of A per nondegenerate n-simplex.
FgAbelianGroup cochain_group(const SimplicialSet& x, const LocalSystem& l, int n);

/// delta f(s) = T(s|[0,1]) f(d0 s) + sum_{j >= 1} (-1)^j f(dj s).
AbHom coboundary(const SimplicialSet& x, const LocalSystem& l, int n);

/// Cochain complex in degrees 0..dim X.
AbCochainComplex local_cochain_complex(const SimplicialSet& x, const LocalSystem& l);

FgAbelianGroup local_h(const SimplicialSet& x, const LocalSystem& l, int n);

/// The edge labels as a morphism of Pi(x) into chi(pi, 1).
FreeMorphism classifying_map(const FreeCrossedComplex& fx, const LocalSystem& l);

struct HomClassesResult {
  int num_maps = 0;
  std::vector<FreeMorphism> representatives;
};

/// Homotopy classes of maps Pi(x) -> chi_phi(A, n) over chi(pi, 1), where the
/// structure map of Pi(x) is given by the labels of l.
HomClassesResult hom_classes_over(const SimplicialSet& x, const LocalSystem& l, int n);

}  // namespace xcomplex
