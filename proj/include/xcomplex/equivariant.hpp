#pragma once

#include <string>
#include <vector>

#include "xcomplex/groupoid.hpp"
#include "xcomplex/local_cohomology.hpp"
#include "xcomplex/simplicial.hpp"

namespace xcomplex {

/// Orbit category of a finite group. Objects are the subgroups H (standing
/// for G/H); a morphism H -> K is a G-map a^ : G/H -> G/K, eH -> aK, which
/// exists iff a^{-1} H a lies in K. The coset aK is stored by its smallest
/// element.
class OrbitCategory {
 public:
  OrbitCategory() = default;
  explicit OrbitCategory(FiniteGroup g);

  const FiniteGroup& group() const { return g_; }
  int num_objects() const { return static_cast<int>(subgroups_.size()); }
  const std::vector<int>& subgroup(int h) const { return subgroups_[h]; }
  /// Index of a subgroup given as a sorted element list; -1 if it is not one.
  int find_subgroup(const std::vector<int>& elements) const;
  int trivial_subgroup() const { return 0; }
  int whole_group() const { return num_objects() - 1; }

  int num_morphisms() const { return static_cast<int>(source_.size()); }
  int source(int m) const { return source_[m]; }
  int target(int m) const { return target_[m]; }
  int element(int m) const { return rep_[m]; }
  /// The morphism H -> K with coset aK; -1 if a^ is not a G-map.
  int find(int h, int k, int a) const;
  std::vector<int> hom(int h, int k) const;
  int identity(int h) const { return find(h, h, g_.identity()); }
  /// a then b, i.e. (ab)^.
  int compose(int a, int b) const;

 private:
  FiniteGroup g_;
  std::vector<std::vector<int>> subgroups_;
  std::vector<int> source_, target_, rep_;
  std::vector<std::vector<int>> coset_min_;  // [subgroup][element] -> smallest element of the coset
};

/// A functor O_G^op -> finite groups. maps[m] for m : H -> K sends
/// values[K] to values[H].
struct OGGroup {
  std::vector<FiniteGroup> values;
  std::vector<std::vector<int>> maps;

  static OGGroup trivial(const OrbitCategory& oc);
  void validate(const OrbitCategory& oc) const;
};

/// A module over an OGGroup: values[H] is a pi(G/H)-module and maps[m] for
/// m : H -> K is M(G/K) -> M(G/H), equivariant along pi(m).
struct OGModule {
  OGGroup pi;
  std::vector<PiModule> values;
  std::vector<AbHom> maps;

  /// M(G/H) = a for every H with identity maps and trivial pi.
  static OGModule constant(const OrbitCategory& oc, const FgAbelianGroup& a);
  const FgAbelianGroup& module(int h) const { return values[h].module(); }
  void validate(const OrbitCategory& oc) const;
};

/// A simplicial set with a left action of G by permutations of the
/// nondegenerate simplices commuting with faces.
class GSimplicialSet {
 public:
  GSimplicialSet() = default;
  /// act[g][dim][id] for every element g.
  GSimplicialSet(SimplicialSet x, FiniteGroup g, std::vector<std::vector<std::vector<int>>> act);
  /// One permutation table per generator of g; closed up over the group.
  static GSimplicialSet from_generators(SimplicialSet x, FiniteGroup g,
                                        const std::vector<std::vector<std::vector<int>>>& generator_act);
  static GSimplicialSet trivial(SimplicialSet x, FiniteGroup g);

  const SimplicialSet& set() const { return x_; }
  const FiniteGroup& group() const { return g_; }
  int act(int g, int dim, int id) const { return act_[g][dim][id]; }
  SimplexRef act(int g, const SimplexRef& s) const;
  const std::vector<std::vector<std::vector<int>>>& table() const { return act_; }

  void validate() const;

 private:
  SimplicialSet x_;
  FiniteGroup g_;
  std::vector<std::vector<std::vector<int>>> act_;
};

/// X^H for a subgroup given by its elements.
Subcomplex fixed_points(const GSimplicialSet& x, const std::vector<int>& h);

/// A G-invariant subcomplex as a G-simplicial set.
struct GSubcomplex {
  Subcomplex sub;
  GSimplicialSet set;
};
GSubcomplex restrict_to(const GSimplicialSet& x, const std::vector<std::vector<bool>>& keep);

/// Throws unless f : from -> to is simplicial and G-equivariant.
void validate_equivariant(const GSimplicialSet& from, const GSimplicialSet& to, const SimplicialMap& f);

/// A pi-valued local system on each fixed point set, compatible along the
/// orbit category: omega_H(a e) = pi(a^)(omega_K(e)) for e in X^K.
/// omega[H][edge] is indexed by edges of X and is -1 off X^H.
struct EquivariantLocalSystem {
  OGModule coefficients;
  std::vector<std::vector<int>> omega;

  /// Constant coefficients with trivial pi.
  static EquivariantLocalSystem constant(const OrbitCategory& oc, const GSimplicialSet& x, const FgAbelianGroup& a);
  /// The system pulled back along an equivariant map f : y -> x.
  EquivariantLocalSystem pullback(const GSimplicialSet& y, const SimplicialMap& f) const;
  /// Label of a possibly degenerate edge of X^H.
  int label(int h, const SimplexRef& edge) const;
  void validate(const OrbitCategory& oc, const GSimplicialSet& x) const;
};

/// The Bredon cochain complex as the compatible families inside
/// the direct sum over H of C^n(X^H; M(G/H)).
struct BredonComplex {
  OrbitCategory orbits;
  std::vector<Subcomplex> fixed;         // per subgroup
  std::vector<LocalSystem> systems;      // per subgroup, on fixed[h].set
  std::vector<FgAbelianGroup> ambient;   // per degree
  std::vector<std::vector<int>> offsets; // [degree][subgroup] block start in ambient
  std::vector<Subgroup> cochains;        // per degree, inside ambient
  AbCochainComplex complex;              // in cochain coordinates

  int top_degree() const { return complex.top_degree(); }
  /// Ambient coordinate of generator j of M(G/H) on fixed-point simplex s.
  int coordinate(int n, int h, int s, int j) const;
};

/// Throws ValidationError if the coefficient system is inconsistent, i.e.
/// the coboundary leaves the compatible families.
/// Degrees run up to max(dim X, min_top).
BredonComplex bredon_cochains(const GSimplicialSet& x, const EquivariantLocalSystem& l, int min_top = 0);
FgAbelianGroup bredon_h(const GSimplicialSet& x, const EquivariantLocalSystem& l, int n);

/// Fibrewise suspension over k: (X x S^1) with X x {*} collapsed onto k
/// along p, together with its projection to k.
struct FibrewiseSuspension {
  GSimplicialSet set;
  SimplicialMap projection;  // set -> k
  SimplicialMap section;     // k -> set; k's simplices come first in each dimension
};
FibrewiseSuspension fibrewise_suspension(const GSimplicialSet& x, const GSimplicialSet& k, const SimplicialMap& p);

struct SuspensionCheck {
  int degree = 0;
  FgAbelianGroup suspension;  // H^n_G(S_K X)
  FgAbelianGroup lower;       // H^{n-1}_G(X)
  FgAbelianGroup base;        // H^n_G(K)
  bool pass = false;
};
/// l lives on k and is pulled back along p and along the projection; n >= 1.
SuspensionCheck verify_suspension_iso(const GSimplicialSet& x, const GSimplicialSet& k, const SimplicialMap& p,
                                      const EquivariantLocalSystem& l, int n);

struct ExactnessNode {
  int degree = 0;
  std::string position;  // "X", "A+B" or "A^B"
  bool pass = false;
};
struct MayerVietorisCheck {
  std::vector<ExactnessNode> nodes;
  bool pass = false;
};
/// Exactness of the Mayer-Vietoris sequence of the G-subcomplexes a and b
/// (which must cover x) in degrees lo..hi.
MayerVietorisCheck mayer_vietoris_check(const GSimplicialSet& x, const EquivariantLocalSystem& l,
                                        const std::vector<std::vector<bool>>& a,
                                        const std::vector<std::vector<bool>>& b, int lo, int hi);

/// A diagram O_G^op -> simplicial sets. maps[m] for m : H -> K is
/// values[K] -> values[H].
struct OGDiagram {
  std::vector<SimplicialSet> values;
  std::vector<SimplicialMap> maps;

  static OGDiagram fixed_point_diagram(const OrbitCategory& oc, const GSimplicialSet& x);
  static OGDiagram constant(const OrbitCategory& oc, const SimplicialSet& s);
  void validate(const OrbitCategory& oc) const;
};

/// Diagonal of the two-sided bar construction B(U, O_G, iota)^H up to
/// degree d. A p-simplex is (y in U(c_0)_p, f_1, ..., f_p, x) with
/// f_i : c_i -> c_{i-1} and x : G/H -> c_p.
struct BarDiagonal {
  struct Simplex {
    SimplexRef y;
    std::vector<int> chain;  // f_1..f_p
    int x = 0;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
  };
  std::vector<std::vector<Simplex>> simplices;
  std::vector<std::vector<std::vector<int>>> faces;  // faces[p][i][j]
  std::vector<int> augmentation;                     // vertex -> vertex of U(G/H)
  int components = 0;
  int target_components = 0;
  bool pi0_bijective = false;

  /// Simplicial identities on the stored degrees.
  void validate() const;
};
BarDiagonal elmendorf_bar(const OrbitCategory& oc, const OGDiagram& u, int h, int d);

}  // namespace xcomplex
