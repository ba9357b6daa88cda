#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "xcomplex/equivariant.hpp"
#include "xcomplex/hom_crs.hpp"
#include "xcomplex/local_cohomology.hpp"

namespace testing {

using namespace xcomplex;

// Seed for property tests: --seed=k on the command line, else XCOMPLEX_SEED,
// else a fixed default.
std::uint64_t seed();
void set_seed_from_args(int& argc, char** argv);
constexpr int kCases = 200;

// The three coefficient modules used throughout.
PiModule z2_on_z3();  // Z/2 acting by -1 on Z/3
PiModule z2_on_z4();  // Z/2 acting by -1 on Z/4
PiModule s3_on_z7();  // S3 acting on Z/7 through the sign
std::vector<PiModule> grid_modules();

// A labelled space for the representability grid.
struct LabelledSpace {
  std::string name;
  SimplicialSet set;
  std::vector<int> labels;  // edge labels in pi, given as "use the odd element" flags
};
// Labels: 0 means identity, 1 means an element acting by -1 (t for Z/2, a
// transposition for S3).
std::vector<LabelledSpace> grid_spaces();
int odd_element(const FiniteGroup& pi);
LocalSystem grid_system(const LabelledSpace& s, const PiModule& m);

// Simplicial complex on vertices 0..v-1 from a face-closed list of subsets.
SimplicialSet from_subsets(int vertices, const std::vector<std::vector<int>>& simplices);
// Random face-closed subcomplex of the 2-skeleton of a simplex.
SimplicialSet random_complex(std::mt19937_64& rng, int max_vertices);
// Random valid labels: potential differences on edges of triangles, free elsewhere.
std::vector<int> random_labels(std::mt19937_64& rng, const SimplicialSet& x, const FiniteGroup& pi);

// Z/2-spaces.
GSimplicialSet reflection_circle();  // two fixed vertices, two swapped edges
GSimplicialSet reflection_square();  // 4-gon reflected through vertices 0 and 2
GSimplicialSet free_zero_sphere();   // two swapped points
// y + y swapped plus z fixed.
GSimplicialSet doubled(const SimplicialSet& y, const SimplicialSet& z);

// Coefficients m at every orbit with identity structure maps; omega_H is
// labels restricted to the edges of X^H. Labels must be G-invariant.
EquivariantLocalSystem shared_labels(const OrbitCategory& oc, const GSimplicialSet& x, const PiModule& m,
                                     const std::vector<int>& labels);

// --- oracles, independent of the library's cohomology code ---

// Finite cohomology by enumeration. killed[k] = #{h in H : k h = 0}.
struct BruteCohomology {
  Integer order = 0;
  std::map<Integer, Integer> killed;
};
BruteCohomology brute_local_h(const SimplicialSet& x, const std::vector<Integer>& orders,
                              const std::vector<IntMatrix>& twists, int n);
// The same counts read off a library group.
std::map<Integer, Integer> killed_counts(const FgAbelianGroup& g, const std::vector<Integer>& ks);

// Nonzero Smith invariants of a small integer matrix, by plain row and
// column reduction.
std::vector<Integer> smith_diagonal(std::vector<std::vector<Integer>> a);

// Integer cohomology H^n(X/G; Z) of the orbit cochain complex. Returns
// (rank, torsion) through a private Smith reduction.
std::pair<int, std::vector<Integer>> orbit_cohomology(const GSimplicialSet& x, int n);

// Number of G-maps G/H -> G/K by coset enumeration.
int orbit_hom_count(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k);

// Sorted element orders.
std::vector<int> order_profile(const FiniteGroup& g);
std::vector<int> order_profile_of_abelian(const std::vector<Integer>& orders);

// Expected CRS(chi(Z,1), chi_phi(A,n)) tables. Returns an empty string on
// agreement, else a description of the first mismatch.
std::string check_crs_tables(const PiModule& m, int n);
// The same for CRS(chi(Z,1), chi(pi,1)).
std::string check_crs_tables_pi(const FiniteGroup& pi);

// Star surjectivity by scanning every morphism.
bool brute_star_surjective(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                           const std::vector<int>& on_morphisms);

// --- property suites; each returns "" or the first failure with its case seed ---
std::string suite_delta_squared(std::uint64_t seed, int cases);
std::string suite_crossed_axioms(std::uint64_t seed, int cases);
std::string suite_simplicial_identities(std::uint64_t seed, int cases);
std::string suite_fibrations(std::uint64_t seed, int cases);
std::string suite_star_surjectivity(std::uint64_t seed, int cases);

}  // namespace testing
