#pragma once

#include <functional>
#include <vector>

#include "xcomplex/crossed_complex.hpp"
#include "xcomplex/simplicial.hpp"

namespace xcomplex {

struct Letter {
  int edge;
  int exp;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};
using PathWord = std::vector<Letter>;

/// (cell^{path})^{sign} in the free crossed module on the 2-cells, or in the
/// free module on the 3-cells.
struct Term {
  int cell;
  int sign;
  PathWord path;
};
using CellWord = std::vector<Term>;

/// Free crossed complex on the nondegenerate cells of a simplicial set, up to
/// dimension 3. Cells are numbered as the simplices of the simplicial set.
class FreeCrossedComplex {
 public:
  static constexpr int kMaxDim = 3;

  FreeCrossedComplex() = default;
  static FreeCrossedComplex from_simplicial(const SimplicialSet& x, int top_dim);

  int top() const { return top_; }
  int num_cells(int n) const;
  int edge_source(int e) const { return edge_source_[e]; }
  int edge_target(int e) const { return edge_target_[e]; }
  /// Base vertex of a cell of dimension n (the vertex itself for n = 0).
  int base(int n, int c) const;
  /// Boundary of a 2-cell: a loop at its base vertex.
  const PathWord& boundary2(int c) const { return boundary2_[c]; }
  /// Boundary of a 3-cell: a word in 2-cells based at its base vertex.
  const CellWord& boundary3(int c) const { return boundary3_[c]; }

  /// Boundary words are loops, and delta2 of every delta3 reduces to the
  /// empty word.
  void validate() const;

 private:
  int top_ = 0;
  int vertices_ = 0;
  std::vector<int> edge_source_, edge_target_;
  std::vector<int> base2_, base3_;
  std::vector<PathWord> boundary2_;
  std::vector<CellWord> boundary3_;
};

/// Fundamental crossed complex of a simplicial set of dimension <= 3.
FreeCrossedComplex free_pi(const SimplicialSet& x, int top_dim = FreeCrossedComplex::kMaxDim);

/// Path word of a 1-simplex (empty when degenerate).
PathWord path_of(const SimplexRef& edge);
PathWord inverse_path(const PathWord& w);
/// Free reduction.
PathWord reduce(PathWord w);

/// A morphism out of a free crossed complex, given on generators:
/// images[n][cell] is a cell of level n of the target (objects for n = 0).
struct FreeMorphism {
  std::vector<std::vector<int>> images;

  int at(int n, int c) const { return images[n][c]; }
  friend bool operator==(const FreeMorphism&, const FreeMorphism&) = default;
  friend auto operator<=>(const FreeMorphism&, const FreeMorphism&) = default;
};

/// Value of a path word in D1 starting at vertex `start`.
int eval_path(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f, const PathWord& w,
              int start);
/// Value of a cell word at level n of D (n = 2 or 3), based at vertex `base`.
int eval_cells(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f, int n, const CellWord& w,
               int base);

/// Generator images satisfy the boundary conditions.
bool is_morphism(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f);

/// Optional restrictions on generator images: allowed[n][cell] lists the
/// permitted values (an empty outer vector means no restriction).
struct ImageConstraints {
  std::vector<std::vector<int>> objects;
  std::vector<std::vector<int>> edges;
};

/// All morphisms x -> d satisfying the constraints, in lexicographic order of
/// generator images.
std::vector<FreeMorphism> enumerate_morphisms(const FreeCrossedComplex& x, const CrossedComplex& d,
                                              const ImageConstraints& constraints = {});

/// Constraints restricting to morphisms over theta : x -> base along p : d -> base.
ImageConstraints over_constraints(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                                  const FreeMorphism& theta);

/// Homotopy data on generators: h[n][cell] in level n+1 of the target.
struct FreeHomotopy {
  std::vector<std::vector<int>> h;
};

/// Extension of H1 to a path word as a derivation over g, starting at `start`.
int homotopy_on_path(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g,
                     const FreeHomotopy& hom, const PathWord& w, int start);
/// The initial morphism f determined by (H, g).
FreeMorphism initial_morphism(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g,
                              const FreeHomotopy& hom);

/// Calls visit for every homotopy ending at g whose H0 values lie in the
/// kernel of p (trivial image in the base). Stops early when visit returns false.
void for_each_homotopy_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                            const FreeMorphism& g, const std::function<bool(const FreeHomotopy&)>& visit);

/// Whether some homotopy over the base runs from f to g (staged search).
bool homotopic_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                    const FreeMorphism& f, const FreeMorphism& g);

/// Homotopy classes among the given morphisms (which must be closed under
/// homotopy): one representative per class, plus the class of each morphism.
struct HomotopyClasses {
  std::vector<FreeMorphism> representatives;
  std::vector<int> class_of;
};
HomotopyClasses homotopy_classes_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                                      const std::vector<FreeMorphism>& maps);

}  // namespace xcomplex
