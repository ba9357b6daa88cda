#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xcomplex/groupoid.hpp"

namespace xcomplex {

/// Totally disconnected groupoid: one finite group per object. Morphisms are
/// numbered globally, the ones at object v occupying a contiguous block.
class Level {
 public:
  Level() = default;
  explicit Level(std::vector<FiniteGroup> groups);
  static Level trivial(int num_objects);
  static Level constant(int num_objects, const FiniteGroup& g);

  int num_objects() const { return static_cast<int>(groups_.size()); }
  int size() const { return offset_.empty() ? 0 : offset_.back(); }
  const FiniteGroup& group(int v) const { return groups_[v]; }
  int object_of(int c) const;
  int local(int c) const { return c - offset_[object_of(c)]; }
  int global(int v, int g) const { return offset_[v] + g; }
  int identity(int v) const { return offset_[v] + groups_[v].identity(); }
  int mul(int a, int b) const;
  int inv(int c) const;
  bool is_trivial() const;

 private:
  std::vector<FiniteGroup> groups_;
  std::vector<int> offset_;
};

/// Finite crossed complex truncated at its top level; all levels above are
/// trivial. Level 0 is the object set, level 1 the groupoid C1, levels n >= 2
/// are totally disconnected. C1 acts on the right: act(n, c, x) = c^x for
/// c at source(x), landing at target(x).
class CrossedComplex {
 public:
  using BoundaryFn = std::function<int(int n, int c)>;
  using ActionFn = std::function<int(int n, int c, int x)>;

  CrossedComplex() = default;
  /// levels[i] is level i+2. boundary(n, c) lies in level n-1 (a C1 morphism
  /// for n = 2). Runs validate().
  CrossedComplex(Groupoid c1, std::vector<Level> levels, const BoundaryFn& boundary, const ActionFn& action);

  int num_objects() const { return c1_.num_objects(); }
  const Groupoid& c1() const { return c1_; }
  /// Highest stored level (at least 1).
  int top() const { return static_cast<int>(levels_.size()) + 1; }
  /// Level n >= 2; trivial beyond top().
  const Level& level(int n) const;
  /// Number of cells at level n (objects for n = 0).
  int level_size(int n) const;
  int delta(int n, int c) const;
  int act(int n, int c, int x) const;

  /// Checks every crossed-complex axiom exhaustively; throws ValidationError.
  void validate() const;

 private:
  Groupoid c1_;
  std::vector<Level> levels_;
  Level trivial_;
  std::vector<std::vector<int>> boundary_;             // boundary_[n-2][c]
  std::vector<std::vector<std::vector<int>>> action_;  // action_[n-2][x][local c]
};

/// Levelwise map. Levels beyond the stored ones map to identities.
struct CrossedMorphism {
  std::vector<int> f0, f1;
  std::vector<std::vector<int>> fn;  // fn[n-2]

  int on_object(int v) const { return f0[v]; }
  int on_c1(int x) const { return f1[x]; }
  int apply(int n, int c, const CrossedComplex& from, const CrossedComplex& to) const;

  friend bool operator==(const CrossedMorphism&, const CrossedMorphism&) = default;
};

void validate_morphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f);
CrossedMorphism identity_morphism(const CrossedComplex& c);
/// f then g.
CrossedMorphism compose(const CrossedComplex& a, const CrossedComplex& b, const CrossedComplex& c,
                        const CrossedMorphism& f, const CrossedMorphism& g);
/// Bijective on every level.
bool is_isomorphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f);

/// Star-surjective on level 1 and surjective on every higher level.
bool is_fibration(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f);

CrossedComplex chi(const FiniteGroup& pi, int n);

struct ChiPhi {
  CrossedComplex complex;
  CrossedComplex base;  // chi(pi, 1)
  CrossedMorphism p;    // complex -> base
  CrossedMorphism s;    // base -> complex, p after s = id
};

/// chi_phi(A, n) with its projection to chi(pi, 1) and section. Level n >= 2
/// carries the right action c^g = phi(g^{-1}) c. For n = 1 level 1 is pi |x A;
/// for n = 0 it is the action groupoid of pi on A.
ChiPhi chi_phi(const PiModule& m, int n);

struct Pullback {
  CrossedComplex complex;
  CrossedMorphism to_left, to_right;
  /// cells[n][i] = (left index, right index) of cell i at level n.
  std::vector<std::vector<std::pair<int, int>>> cells;
  /// Neither leg is a fibration; the construction is still carried out.
  bool no_fibration_leg = false;
};

/// Levelwise fibred product of f : left -> base and g : right -> base.
Pullback pullback(const CrossedComplex& left, const CrossedMorphism& f, const CrossedComplex& right,
                  const CrossedMorphism& g, const CrossedComplex& base);

}  // namespace xcomplex
