#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace xcomplex {

using Integer = std::int64_t;
using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

/// Raised when an input structure violates one of its invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smith normal form S = U * M * V with U, V unimodular. The inverses are
/// tracked alongside so callers can change coordinates in both directions.
struct SmithForm {
  IntMatrix S;
  IntMatrix U, U_inv;
  IntMatrix V, V_inv;
  int rank = 0;

  Integer diagonal(int i) const { return i < S.rows() && i < S.cols() ? S(i, i) : 0; }
};

SmithForm snf(const IntMatrix& m);

/// Integer kernel basis (columns) of m.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some integer solution of a * x = b, if one exists.
std::optional<IntVector> integer_solve(const IntMatrix& a, const IntVector& b);

Integer checked_add(Integer a, Integer b);
Integer checked_mul(Integer a, Integer b);
Integer floor_mod(Integer a, Integer m);

/// Finitely generated abelian group given as a direct sum of cyclic groups
/// Z/o_1 + ... + Z/o_k (o_i = 0 means Z). The invariant-factor form is
/// computed at construction; equality compares invariant factors only.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  explicit FgAbelianGroup(std::vector<Integer> orders);

  static FgAbelianGroup trivial() { return FgAbelianGroup{}; }
  static FgAbelianGroup cyclic(Integer n) { return FgAbelianGroup({n}); }
  static FgAbelianGroup free(int rank) { return FgAbelianGroup(std::vector<Integer>(rank, 0)); }
  /// Group whose presentation is its invariant-factor form (torsion first, then Z's).
  static FgAbelianGroup canonical(int rank, std::vector<Integer> torsion);
  static FgAbelianGroup direct_sum(const std::vector<FgAbelianGroup>& parts);

  const std::vector<Integer>& orders() const { return orders_; }
  int num_generators() const { return static_cast<int>(orders_.size()); }
  int rank() const { return rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  bool is_finite() const { return rank_ == 0; }
  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  /// Number of elements; throws for infinite groups.
  Integer order() const;

  FgAbelianGroup canonical_form() const { return canonical(rank_, torsion_); }

  /// Reduce coordinates modulo the generator orders.
  IntVector reduce(IntVector v) const;
  bool is_zero(const IntVector& v) const;
  IntVector zero() const { return IntVector::Zero(num_generators()); }

  // Mixed-radix enumeration of a finite group's elements.
  Integer element_index(const IntVector& v) const;
  IntVector element(Integer index) const;

  /// Relation matrix diag(orders).
  IntMatrix relations() const;

  std::string to_string() const;

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::vector<Integer> orders_;
  int rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Homomorphism stored on the presentation generators of domain and codomain.
class AbHom {
 public:
  AbHom() = default;
  /// Validates that every column respects the order of its generator.
  AbHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix);

  static AbHom zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain);
  static AbHom identity(const FgAbelianGroup& g);

  const FgAbelianGroup& domain() const { return domain_; }
  const FgAbelianGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const;
  /// this after other: x -> this(other(x)).
  AbHom after(const AbHom& other) const;
  bool is_zero() const;
  bool is_automorphism() const;

  friend bool operator==(const AbHom& a, const AbHom& b);

 private:
  FgAbelianGroup domain_, codomain_;
  IntMatrix matrix_;
};

/// A subgroup of an ambient group, presented in invariant-factor form.
struct Subgroup {
  FgAbelianGroup ambient;
  FgAbelianGroup group;  // canonical presentation
  IntMatrix inclusion;   // ambient generators x group generators

  /// Coordinates of an ambient element in the subgroup; nullopt if outside.
  std::optional<IntVector> coordinates(const IntVector& x) const;
};

/// A quotient G / <generators> in invariant-factor form with the projection.
struct Quotient {
  FgAbelianGroup source;
  FgAbelianGroup group;  // canonical presentation
  IntMatrix projection;  // group generators x source generators
  IntMatrix lifts;       // source generators x group generators

  IntVector project(const IntVector& x) const { return group.reduce(projection * x); }
};

Subgroup kernel(const AbHom& f);
Subgroup subgroup_generated(const FgAbelianGroup& g, const IntMatrix& generators);
Quotient quotient(const FgAbelianGroup& g, const IntMatrix& generators);
/// Cokernel of f as a quotient of its codomain.
Quotient cokernel(const AbHom& f);

/// Cochain complex C^0 -> C^1 -> ... -> C^N of finitely generated abelian groups.
class AbCochainComplex {
 public:
  AbCochainComplex() = default;
  /// differentials[n] : groups[n] -> groups[n+1]; checks delta^{n+1} delta^n = 0.
  AbCochainComplex(std::vector<FgAbelianGroup> groups, std::vector<AbHom> differentials);

  int top_degree() const { return static_cast<int>(groups_.size()) - 1; }
  const FgAbelianGroup& group(int n) const { return groups_.at(n); }
  /// delta^n, the zero map past the top degree.
  AbHom differential(int n) const;

 private:
  std::vector<FgAbelianGroup> groups_;
  std::vector<AbHom> differentials_;
};

/// H^n with enough data to push cocycles into the group and lift classes back.
struct CohomologyGroup {
  FgAbelianGroup group;     // canonical
  Subgroup cocycles;        // Z^n inside C^n
  Quotient classes;         // Z^n / B^n
  IntMatrix representatives;  // C^n coordinates of a cocycle per generator of group

  /// Class of a cocycle given in C^n coordinates; throws if not a cocycle.
  IntVector class_of(const IntVector& cocycle) const;
};

CohomologyGroup cohomology_data(const AbCochainComplex& cx, int n);
FgAbelianGroup cohomology(const AbCochainComplex& cx, int n);

/// Induced map on cohomology of a degree-n cochain map given on C^n.
AbHom induced_map(const CohomologyGroup& from, const CohomologyGroup& to, const IntMatrix& cochain_map);

}  // namespace xcomplex
