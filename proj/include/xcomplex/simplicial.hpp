#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xcomplex/abelian.hpp"

namespace xcomplex {

/// A simplex of a simplicial set in Eilenberg-Zilber form: a nondegenerate
/// simplex `id` of dimension `nd_dim` pulled back along the monotone surjection
/// `surjection : [dim] -> [nd_dim]`.
struct SimplexRef {
  int nd_dim = 0;
  int id = 0;
  std::vector<int> surjection{0};

  static SimplexRef nondegenerate(int dim, int id);
  int dim() const { return static_cast<int>(surjection.size()) - 1; }
  bool degenerate() const { return dim() != nd_dim; }

  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// All monotone surjections [n] -> [k], lexicographic.
std::vector<std::vector<int>> monotone_surjections(int n, int k);

/// Finite simplicial set stored by its nondegenerate simplices; faces may be
/// degenerate.
class SimplicialSet {
 public:
  SimplicialSet() = default;

  /// Appends a nondegenerate simplex and returns its id. faces.size() == dim+1
  /// (empty for vertices).
  int add_simplex(int dim, std::vector<SimplexRef> faces);
  int add_vertex() { return add_simplex(0, {}); }
  /// Convenience for simplices whose faces are all nondegenerate.
  int add_simplex_by_ids(int dim, const std::vector<int>& face_ids);

  int dimension() const { return static_cast<int>(faces_.size()) - 1; }
  int count(int dim) const { return dim >= 0 && dim <= dimension() ? static_cast<int>(faces_[dim].size()) : 0; }
  const std::vector<SimplexRef>& faces(int dim, int id) const { return faces_.at(dim).at(id); }

  SimplexRef face(const SimplexRef& s, int i) const;
  static SimplexRef degeneracy(const SimplexRef& s, int i);
  /// Vertex id at position j of s.
  int vertex(const SimplexRef& s, int j) const;
  /// The 1-dimensional face spanned by positions a < b of s.
  SimplexRef edge(const SimplexRef& s, int a, int b) const;

  /// d_i d_j = d_{j-1} d_i for i < j on every nondegenerate simplex.
  void validate() const;

  /// Number of connected components.
  int components() const;

  static SimplicialSet point();
  static SimplicialSet points(int n);
  /// One vertex and one loop edge.
  static SimplicialSet minimal_circle();
  /// n vertices and n edges i -> i+1 (mod n).
  static SimplicialSet polygon(int n);
  static SimplicialSet standard_simplex(int n);
  /// One vertex, three edges a, b, c and two triangles (a,b | c) and (b,a | c).
  static SimplicialSet torus();
  /// Delta^n with its boundary collapsed: one vertex and one n-simplex.
  static SimplicialSet sphere_quotient(int n);

  friend bool operator==(const SimplicialSet&, const SimplicialSet&) = default;

 private:
  SimplexRef face_nd(int dim, int id, int i) const;
  std::vector<std::vector<std::vector<SimplexRef>>> faces_;
};

/// Simplicial map given on nondegenerate simplices.
struct SimplicialMap {
  std::vector<std::vector<SimplexRef>> images;  // images[dim][id]

  SimplexRef apply(const SimplexRef& s) const;
  /// Checks that faces are preserved.
  void validate(const SimplicialSet& from, const SimplicialSet& to) const;
  static SimplicialMap identity(const SimplicialSet& x);
  /// Constant map to vertex v of the target.
  static SimplicialMap constant(const SimplicialSet& x, int v);
};

/// Every simplex of the given dimension, degenerate ones included.
std::vector<SimplexRef> all_simplices(const SimplicialSet& x, int dim);

/// Product truncated at max_dim with the pair decomposition of each
/// nondegenerate simplex recorded.
struct ProductSet {
  SimplicialSet set;
  std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs;  // pairs[dim][id]
  std::map<std::pair<SimplexRef, SimplexRef>, int> index;

  /// Normal form of an arbitrary pair of equal-dimensional simplices.
  SimplexRef normalize(const SimplexRef& a, const SimplexRef& b) const;
};

ProductSet product(const SimplicialSet& x, const SimplicialSet& y, int max_dim);

/// A subcomplex with the id translation to and from the ambient set.
struct Subcomplex {
  SimplicialSet set;
  std::vector<std::vector<int>> to_parent;    // [dim][id] -> ambient id
  std::vector<std::vector<int>> from_parent;  // [dim][ambient id] -> id or -1

  SimplexRef lift(const SimplexRef& s) const;     // into the ambient set
  SimplexRef restrict(const SimplexRef& s) const; // from the ambient set; throws if outside
  bool contains(int dim, int parent_id) const { return from_parent[dim][parent_id] >= 0; }
  /// Inclusion as a simplicial map into the ambient set.
  SimplicialMap inclusion() const;
};

/// keep[dim][id] selects nondegenerate simplices; must be closed under faces.
Subcomplex subcomplex(const SimplicialSet& x, const std::vector<std::vector<bool>>& keep);

}  // namespace xcomplex
