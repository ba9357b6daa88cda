#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xcomplex/abelian.hpp"

namespace xcomplex {

/// Finite group on elements 0..n-1 stored as a full multiplication table.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// table[a][b] = a*b. Checks closure, associativity, identity and inverses.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table);
  /// Closure of permutation generators on {0..degree-1}; (g*h)(i) = g(h(i)).
  static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& generators);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// Same group with a chosen generating list; throws if it does not generate.
  FiniteGroup with_generators(std::vector<int> generators) const;

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::vector<int>& generators() const { return generators_; }

  bool is_abelian() const;
  int element_order(int a) const;
  /// Subgroup generated by the given elements, sorted.
  std::vector<int> closure(const std::vector<int>& elements) const;
  /// All subgroups as sorted element lists, ordered by size then lexicographically.
  std::vector<std::vector<int>> subgroups() const;
  std::vector<std::vector<int>> table() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup(int order, std::vector<int> table);
  void finish();

  int order_ = 1;
  int identity_ = 0;
  std::vector<int> table_{0};
  std::vector<int> inverse_{0};
  std::vector<int> generators_;
};

/// Finite groupoid. Composition is written left to right: compose(a, b) is
/// "a then b" and requires target(a) == source(b).
class Groupoid {
 public:
  Groupoid() = default;

  /// compose is only called on composable pairs. Identities and inverses are
  /// found by search; throws if they do not exist.
  static Groupoid build(int num_objects, std::vector<int> source, std::vector<int> target,
                        const std::function<int(int, int)>& compose);
  static Groupoid discrete(int num_objects);
  /// One-object groupoid of a group, compose(a, b) = a*b.
  static Groupoid from_group(const FiniteGroup& g);

  int num_objects() const { return num_objects_; }
  int num_morphisms() const { return static_cast<int>(source_.size()); }
  int source(int a) const { return source_[a]; }
  int target(int a) const { return target_[a]; }
  int identity(int object) const { return identity_[object]; }
  int inverse(int a) const { return inverse_[a]; }
  bool composable(int a, int b) const { return target_[a] == source_[b]; }
  int compose(int a, int b) const;
  /// Morphisms with the given source.
  const std::vector<int>& star(int object) const { return star_[object]; }
  /// Morphisms x -> y.
  std::vector<int> hom(int x, int y) const;
  bool is_totally_disconnected() const;
  /// Vertex group at an object is abelian.
  bool is_abelian_at(int object) const;

  /// Category and inverse laws on all composable triples.
  void validate() const;

 private:
  int num_objects_ = 0;
  std::vector<int> source_, target_;
  std::vector<int> identity_, inverse_;
  std::vector<std::vector<int>> star_;
  std::vector<int> star_pos_;
  std::vector<std::vector<int>> comp_;
};

/// Whether f (given on objects and morphisms) is a functor from -> to.
void validate_functor(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                      const std::vector<int>& on_morphisms);

/// Every morphism out of f(x) lifts to a morphism out of x.
bool star_surjective(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                     const std::vector<int>& on_morphisms);

/// Left action of a finite group on {0..size-1}.
class GroupAction {
 public:
  GroupAction(FiniteGroup group, int size, std::vector<std::vector<int>> permutations);

  const FiniteGroup& group() const { return group_; }
  int size() const { return size_; }
  int act(int g, int m) const { return perms_[g][m]; }

 private:
  FiniteGroup group_;
  int size_;
  std::vector<std::vector<int>> perms_;
};

/// Objects = the set, morphisms g : m -> g.m indexed g * size + m.
Groupoid action_groupoid(const GroupAction& act);
/// The forgetful functor to the one-object groupoid of the group, g -> g^{-1}
/// (the inverse makes it covariant for left-to-right composition).
std::vector<int> action_groupoid_projection(const GroupAction& act);

/// A pi-module: a finite group acting on a finitely generated abelian group by
/// automorphisms (left action).
class PiModule {
 public:
  /// One automorphism matrix per generator of pi; the closure over the whole
  /// group is computed and checked to be a homomorphism.
  PiModule(FiniteGroup pi, FgAbelianGroup a, const std::vector<IntMatrix>& generator_matrices);
  static PiModule trivial_action(FiniteGroup pi, FgAbelianGroup a);

  const FiniteGroup& pi() const { return pi_; }
  const FgAbelianGroup& module() const { return a_; }
  const AbHom& action(int g) const { return action_[g]; }
  IntVector act(int g, const IntVector& v) const { return action_[g].apply(v); }

  /// Action on element indices of a finite module.
  int act_index(int g, int a) const;
  int module_size() const { return size_; }
  int add(int a, int b) const;
  int negate(int a) const;
  GroupAction as_action() const;

 private:
  FiniteGroup pi_;
  FgAbelianGroup a_;
  std::vector<AbHom> action_;
  // Element-index tables, filled for finite modules only.
  int size_ = 0;
  std::vector<int> act_table_, add_table_, neg_table_;
};

/// pi |x A on pairs (g, a) indexed g * |A| + a with (g,a)(h,b) = (gh, a + g.b).
FiniteGroup semidirect(const PiModule& m);
/// Finite abelian group as a FiniteGroup on its element indices.
FiniteGroup abelian_as_group(const FgAbelianGroup& a);

}  // namespace xcomplex
