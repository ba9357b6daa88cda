#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace testing {

namespace {

std::uint64_t g_seed = 0;
bool g_seed_set = false;

IntMatrix one_by_one(Integer v) {
  IntMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

// Element orders computed by repeated multiplication rather than through
// FiniteGroup::element_order.
int order_of(const std::function<int(int, int)>& mul, int identity, int x) {
  int k = 1;
  for (int y = x; y != identity; y = mul(y, x)) ++k;
  return k;
}

SimplicialSet disjoint_union(const std::vector<SimplicialSet>& parts, std::vector<std::vector<int>>& offsets) {
  int top = 0;
  for (const auto& p : parts) top = std::max(top, p.dimension());
  offsets.assign(parts.size(), std::vector<int>(top + 1, 0));
  for (int d = 0; d <= top; ++d) {
    int acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      offsets[i][d] = acc;
      acc += parts[i].count(d);
    }
  }
  SimplicialSet out;
  for (int d = 0; d <= top; ++d)
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int id = 0; id < parts[i].count(d); ++id) {
        std::vector<SimplexRef> faces = parts[i].faces(d, id);
        for (auto& f : faces) f.id += offsets[i][f.nd_dim];
        out.add_simplex(d, faces);
      }
  return out;
}

}  // namespace

std::uint64_t seed() {
  if (!g_seed_set) {
    g_seed = 20261015;
    if (const char* env = std::getenv("XCOMPLEX_SEED")) g_seed = std::strtoull(env, nullptr, 10);
    g_seed_set = true;
  }
  return g_seed;
}

void set_seed_from_args(int& argc, char** argv) {
  seed();
  int out = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      g_seed = std::strtoull(argv[i] + 7, nullptr, 10);
    } else {
      argv[out++] = argv[i];
    }
  }
  argc = out;
}

int odd_element(const FiniteGroup& pi) {
  for (int g = 0; g < pi.order(); ++g)
    if (order_of([&](int a, int b) { return pi.mul(a, b); }, pi.identity(), g) == 2) return g;
  return pi.identity();
}

namespace {
// Sign character: -1 on the elements of order 2 (enough for Z/2 and S3).
PiModule sign_module(const FiniteGroup& pi, Integer modulus) {
  std::vector<IntMatrix> gens;
  for (int g : pi.generators()) {
    int ord = order_of([&](int a, int b) { return pi.mul(a, b); }, pi.identity(), g);
    gens.push_back(one_by_one(ord % 2 == 0 ? -1 : 1));
  }
  return PiModule(pi, FgAbelianGroup::cyclic(modulus), gens);
}
}  // namespace

PiModule z2_on_z3() { return sign_module(FiniteGroup::cyclic(2), 3); }
PiModule z2_on_z4() { return sign_module(FiniteGroup::cyclic(2), 4); }
PiModule s3_on_z7() { return sign_module(FiniteGroup::symmetric(3), 7); }
std::vector<PiModule> grid_modules() { return {z2_on_z3(), z2_on_z4(), s3_on_z7()}; }

std::vector<LabelledSpace> grid_spaces() {
  return {{"minimal circle", SimplicialSet::minimal_circle(), {1}},
          {"torus", SimplicialSet::torus(), {1, 0, 1}},
          {"collapsed 2-simplex", SimplicialSet::sphere_quotient(2), {}}};
}

LocalSystem grid_system(const LabelledSpace& s, const PiModule& m) {
  std::vector<int> labels;
  int odd = odd_element(m.pi());
  for (int f : s.labels) labels.push_back(f ? odd : m.pi().identity());
  return LocalSystem::from_labels(s.set, m, labels);
}

SimplicialSet from_subsets(int vertices, const std::vector<std::vector<int>>& simplices) {
  std::vector<std::vector<int>> sorted = simplices;
  for (auto& s : sorted) std::sort(s.begin(), s.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  SimplicialSet x = SimplicialSet::points(vertices);
  std::map<std::vector<int>, int> id;
  for (int v = 0; v < vertices; ++v) id[{v}] = v;
  for (const auto& s : sorted) {
    if (s.size() < 2 || id.count(s)) continue;
    std::vector<int> faces;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<int> f = s;
      f.erase(f.begin() + static_cast<long>(i));
      faces.push_back(id.at(f));
    }
    id[s] = x.add_simplex_by_ids(static_cast<int>(s.size()) - 1, faces);
  }
  return x;
}

SimplicialSet random_complex(std::mt19937_64& rng, int max_vertices) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  std::bernoulli_distribution edge(0.6), tri(0.5);
  int v = nv(rng);
  std::set<std::vector<int>> edges;
  std::vector<std::vector<int>> simplices;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (edge(rng)) {
        edges.insert({a, b});
        simplices.push_back({a, b});
      }
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c)
        if (edges.count({a, b}) && edges.count({b, c}) && edges.count({a, c}) && tri(rng))
          simplices.push_back({a, b, c});
  return from_subsets(v, simplices);
}

std::vector<int> random_labels(std::mt19937_64& rng, const SimplicialSet& x, const FiniteGroup& pi) {
  std::uniform_int_distribution<int> pick(0, pi.order() - 1);
  std::vector<int> potential(x.count(0));
  for (auto& g : potential) g = pick(rng);
  std::vector<bool> in_triangle(x.count(1), false);
  for (int t = 0; t < x.count(2); ++t)
    for (const auto& f : x.faces(2, t))
      if (!f.degenerate()) in_triangle[f.id] = true;
  std::vector<int> labels(x.count(1));
  for (int e = 0; e < x.count(1); ++e) {
    int src = x.faces(1, e)[1].id, tgt = x.faces(1, e)[0].id;
    labels[e] = in_triangle[e] ? pi.mul(pi.inv(potential[src]), potential[tgt]) : pick(rng);
  }
  return labels;
}

GSimplicialSet reflection_circle() {
  SimplicialSet s = SimplicialSet::points(2);
  s.add_simplex_by_ids(1, {1, 0});
  s.add_simplex_by_ids(1, {1, 0});
  return GSimplicialSet::from_generators(s, FiniteGroup::cyclic(2), {{{0, 1}, {1, 0}}});
}

GSimplicialSet reflection_square() {
  SimplicialSet s = SimplicialSet::points(4);
  s.add_simplex_by_ids(1, {1, 0});
  s.add_simplex_by_ids(1, {3, 0});
  s.add_simplex_by_ids(1, {1, 2});
  s.add_simplex_by_ids(1, {3, 2});
  return GSimplicialSet::from_generators(s, FiniteGroup::cyclic(2), {{{0, 3, 2, 1}, {1, 0, 3, 2}}});
}

GSimplicialSet free_zero_sphere() {
  return GSimplicialSet::from_generators(SimplicialSet::points(2), FiniteGroup::cyclic(2), {{{1, 0}}});
}

GSimplicialSet doubled(const SimplicialSet& y, const SimplicialSet& z) {
  std::vector<std::vector<int>> off;
  SimplicialSet x = disjoint_union({y, y, z}, off);
  std::vector<std::vector<int>> swap(x.dimension() + 1);
  for (int d = 0; d <= x.dimension(); ++d) {
    swap[d].resize(x.count(d));
    std::iota(swap[d].begin(), swap[d].end(), 0);
    for (int id = 0; id < y.count(d); ++id) {
      swap[d][off[0][d] + id] = off[1][d] + id;
      swap[d][off[1][d] + id] = off[0][d] + id;
    }
  }
  return GSimplicialSet::from_generators(x, FiniteGroup::cyclic(2), {swap});
}

BruteCohomology brute_local_h(const SimplicialSet& x, const std::vector<Integer>& orders,
                              const std::vector<IntMatrix>& twists, int n) {
  const int r = static_cast<int>(orders.size());
  Integer a_size = 1;
  for (Integer o : orders) a_size *= o;
  auto reduce = [&](std::vector<Integer> v) {
    for (int i = 0; i < r; ++i) v[i] = ((v[i] % orders[i]) + orders[i]) % orders[i];
    return v;
  };
  auto decode_elem = [&](Integer idx) {
    std::vector<Integer> v(r);
    for (int i = 0; i < r; ++i) v[i] = idx % orders[i], idx /= orders[i];
    return v;
  };
  auto encode_elem = [&](const std::vector<Integer>& v) {
    Integer idx = 0;
    for (int i = r - 1; i >= 0; --i) idx = idx * orders[i] + v[i];
    return idx;
  };
  // A cochain is a list of element indices, one per nondegenerate simplex.
  auto size_of = [&](int d) {
    Integer s = 1;
    for (int i = 0; i < x.count(d); ++i) s *= a_size;
    return s;
  };
  auto decode = [&](int d, Integer idx) {
    std::vector<Integer> f(x.count(d));
    for (auto& e : f) e = idx % a_size, idx /= a_size;
    return f;
  };
  auto encode = [&](const std::vector<Integer>& f) {
    Integer idx = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) idx = idx * a_size + *it;
    return idx;
  };
  auto value = [&](const std::vector<Integer>& f, const SimplexRef& s) {
    return s.degenerate() ? std::vector<Integer>(r, 0) : decode_elem(f[s.id]);
  };
  auto delta = [&](int d, const std::vector<Integer>& f) {
    std::vector<Integer> out(x.count(d + 1));
    for (int id = 0; id < x.count(d + 1); ++id) {
      SimplexRef s = SimplexRef::nondegenerate(d + 1, id);
      std::vector<Integer> acc(r, 0);
      std::vector<Integer> f0 = value(f, x.face(s, 0));
      SimplexRef e = x.edge(s, 0, 1);
      if (!e.degenerate()) {
        std::vector<Integer> t(r, 0);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) t[i] += twists[e.id](i, j) * f0[j];
        f0 = t;
      }
      for (int i = 0; i < r; ++i) acc[i] += f0[i];
      for (int j = 1; j <= d + 1; ++j) {
        std::vector<Integer> fj = value(f, x.face(s, j));
        for (int i = 0; i < r; ++i) acc[i] += (j % 2 ? -1 : 1) * fj[i];
      }
      out[id] = encode_elem(reduce(acc));
    }
    return out;
  };

  std::set<Integer> boundaries;
  if (n == 0) {
    boundaries.insert(0);
  } else {
    for (Integer i = 0; i < size_of(n - 1); ++i) boundaries.insert(encode(delta(n - 1, decode(n - 1, i))));
  }
  std::vector<std::vector<Integer>> cocycles;
  for (Integer i = 0; i < size_of(n); ++i) {
    std::vector<Integer> f = decode(n, i);
    std::vector<Integer> df = delta(n, f);
    if (std::all_of(df.begin(), df.end(), [](Integer v) { return v == 0; })) cocycles.push_back(f);
  }
  BruteCohomology out;
  const Integer b = static_cast<Integer>(boundaries.size());
  out.order = static_cast<Integer>(cocycles.size()) / b;
  Integer exponent_bound = 1;
  for (Integer o : orders) exponent_bound = std::lcm(exponent_bound, o);
  for (Integer k = 1; k <= exponent_bound; ++k) {
    Integer hits = 0;
    for (const auto& z : cocycles) {
      std::vector<Integer> kz(z.size());
      for (std::size_t s = 0; s < z.size(); ++s) {
        std::vector<Integer> v = decode_elem(z[s]);
        for (auto& c : v) c *= k;
        kz[s] = encode_elem(reduce(v));
      }
      if (boundaries.count(encode(kz))) ++hits;
    }
    out.killed[k] = hits / b;
  }
  return out;
}

std::map<Integer, Integer> killed_counts(const FgAbelianGroup& g, const std::vector<Integer>& ks) {
  std::map<Integer, Integer> out;
  for (Integer k : ks) {
    Integer c = 1;
    for (Integer t : g.torsion()) c *= std::gcd(k, t);
    out[k] = c;
  }
  return out;
}

// Smith diagonal of a small integer matrix by gcd row and column steps.
std::vector<Integer> smith_diagonal(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> diag;
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero absolute value in the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr < 0 || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) pr = i, pc = j;
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        Integer q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        Integer q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold in any entry the pivot does not divide
      for (int i = t + 1; i < rows && clean; ++i)
        for (int j = t + 1; j < cols && clean; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (int k = t; k < cols; ++k) a[t][k] += a[i][k];
            clean = false;
          }
    }
    diag.push_back(std::llabs(a[t][t]));
  }
  return diag;
}

std::pair<int, std::vector<Integer>> orbit_cohomology(const GSimplicialSet& x, int n) {
  const SimplicialSet& s = x.set();
  const FiniteGroup& g = x.group();
  // orbit label per nondegenerate simplex
  std::vector<std::vector<int>> orbit(s.dimension() + 2);
  std::vector<int> num(s.dimension() + 2, 0);
  for (int d = 0; d <= s.dimension(); ++d) {
    orbit[d].assign(s.count(d), -1);
    for (int id = 0; id < s.count(d); ++id) {
      if (orbit[d][id] >= 0) continue;
      for (int e = 0; e < g.order(); ++e) orbit[d][x.act(e, d, id)] = num[d];
      ++num[d];
    }
  }
  auto matrix = [&](int d) {
    // delta^d : Z^{orbits_d} -> Z^{orbits_{d+1}} on orbit representatives
    std::vector<std::vector<Integer>> m(num[d + 1], std::vector<Integer>(num[d], 0));
    std::vector<bool> done(num[d + 1], false);
    for (int id = 0; id < s.count(d + 1); ++id) {
      int o = orbit[d + 1][id];
      if (done[o]) continue;
      done[o] = true;
      for (int i = 0; i <= d + 1; ++i) {
        SimplexRef f = s.face(SimplexRef::nondegenerate(d + 1, id), i);
        if (!f.degenerate()) m[o][orbit[d][f.id]] += (i % 2 ? -1 : 1);
      }
    }
    return m;
  };
  auto rank_and_torsion = [&](int d) {
    std::pair<int, std::vector<Integer>> rt{0, {}};
    if (d < 0 || d > s.dimension() - 1) return rt;
    for (Integer v : smith_diagonal(matrix(d))) {
      ++rt.first;
      if (v > 1) rt.second.push_back(v);
    }
    return rt;
  };
  auto out_rank = rank_and_torsion(n);
  auto in_rank = rank_and_torsion(n - 1);
  std::vector<Integer> torsion = in_rank.second;
  std::sort(torsion.begin(), torsion.end());
  return {num[n] - out_rank.first - in_rank.first, torsion};
}

int orbit_hom_count(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k) {
  std::set<int> ks(k.begin(), k.end());
  std::set<std::vector<int>> cosets;
  for (int a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (int x : h)
      if (!ks.count(g.mul(g.mul(g.inv(a), x), a))) ok = false;
    if (!ok) continue;
    std::vector<int> coset;
    for (int y : k) coset.push_back(g.mul(a, y));
    std::sort(coset.begin(), coset.end());
    cosets.insert(coset);
  }
  return static_cast<int>(cosets.size());
}

std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) out.push_back(order_of([&](int a, int b) { return g.mul(a, b); }, g.identity(), x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> order_profile_of_abelian(const std::vector<Integer>& orders) {
  std::vector<int> out{1};
  for (Integer o : orders) {
    std::vector<int> next;
    for (int prev : out)
      for (Integer x = 0; x < o; ++x)
        next.push_back(static_cast<int>(std::lcm(static_cast<Integer>(prev), o / std::gcd(x, o))));
    out = next;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Element orders of a set of loops in a groupoid, by repeated composition.
std::vector<int> groupoid_profile(const Groupoid& gd, const std::vector<int>& loops) {
  std::vector<int> out;
  for (int u : loops) {
    int id = gd.identity(gd.source(u));
    out.push_back(order_of([&](int a, int b) { return gd.compose(a, b); }, id, u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> level_profile(const CrossedComplex& c, int m, int v) { return order_profile(c.level(m).group(v)); }

std::string where(int n, const std::string& what) {
  std::ostringstream os;
  os << "n=" << n << ": " << what;
  return os.str();
}

// Shared level-0 and level-1 comparison for a one-object D1 group given by
// its multiplication.
std::string check_low_levels(const MappingComplex& mc, int d1_order, const std::function<int(int, int)>& mul,
                             const std::function<int(int)>& inv, int identity, Integer extra_factor,
                             bool compare_vertex_groups, int n) {
  const CrossedComplex& c = mc.complex;
  if (c.num_objects() != d1_order) return where(n, "level 0 has the wrong size");
  for (int i = 0; i < c.num_objects(); ++i) {
    int f = mc.loops[i];
    for (int j = 0; j < c.num_objects(); ++j) {
      int g = mc.loops[j];
      std::vector<int> xs;
      for (int x = 0; x < d1_order; ++x)
        if (f == mul(mul(x, g), inv(x))) xs.push_back(x);
      if (static_cast<Integer>(c.c1().hom(i, j).size()) != static_cast<Integer>(xs.size()) * extra_factor)
        return where(n, "level 1 hom-set size differs");
      if (compare_vertex_groups && i == j) {
        std::vector<int> expected;
        for (int x : xs) expected.push_back(order_of(mul, identity, x));
        std::sort(expected.begin(), expected.end());
        if (groupoid_profile(c.c1(), c.c1().hom(i, i)) != expected) return where(n, "vertex group differs");
      }
    }
  }
  return "";
}

}  // namespace

std::string check_crs_tables(const PiModule& m, int n) {
  ChiPhi cp = chi_phi(m, n);
  MappingComplex mc = crs_hom_z1(cp.complex);
  const FiniteGroup& pi = m.pi();
  const int a = m.module_size();
  std::string err;
  if (n == 1) {
    // pi |x A written out directly
    auto mul = [&](int x, int y) {
      int g = x / a, u = x % a, h = y / a, v = y % a;
      return pi.mul(g, h) * a + m.add(u, m.act_index(g, v));
    };
    auto inv = [&](int x) {
      int g = x / a, u = x % a;
      int gi = pi.inv(g);
      return gi * a + m.act_index(gi, m.negate(u));
    };
    err = check_low_levels(mc, pi.order() * a, mul, inv, pi.identity() * a, 1, true, n);
  } else {
    auto mul = [&](int x, int y) { return pi.mul(x, y); };
    auto inv = [&](int x) { return pi.inv(x); };
    err = check_low_levels(mc, pi.order(), mul, inv, pi.identity(), n == 2 ? a : 1, n >= 3, n);
  }
  if (!err.empty()) return err;
  std::vector<int> a_profile = order_profile_of_abelian(m.module().orders());
  for (int lvl = 2; lvl <= n + 2; ++lvl) {
    bool is_a = (n >= 3 && (lvl == n - 1 || lvl == n)) || (n == 2 && lvl == 2);
    for (int v = 0; v < mc.complex.num_objects(); ++v) {
      std::vector<int> got = level_profile(mc.complex, lvl, v);
      if (is_a ? got != a_profile : got.size() != 1) return where(n, "level " + std::to_string(lvl) + " differs");
    }
  }
  return "";
}

std::string check_crs_tables_pi(const FiniteGroup& pi) {
  MappingComplex mc = crs_hom_z1(chi(pi, 1));
  auto mul = [&](int x, int y) { return pi.mul(x, y); };
  auto inv = [&](int x) { return pi.inv(x); };
  std::string err = check_low_levels(mc, pi.order(), mul, inv, pi.identity(), 1, true, 1);
  if (!err.empty()) return err;
  for (int lvl = 2; lvl <= 3; ++lvl)
    for (int v = 0; v < mc.complex.num_objects(); ++v)
      if (mc.complex.level(lvl).group(v).order() != 1) return "higher level not trivial";
  return "";
}

bool brute_star_surjective(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                           const std::vector<int>& on_morphisms) {
  for (int x = 0; x < from.num_objects(); ++x)
    for (int b = 0; b < to.num_morphisms(); ++b) {
      if (to.source(b) != on_objects[x]) continue;
      bool lifted = false;
      for (int a = 0; a < from.num_morphisms() && !lifted; ++a)
        lifted = from.source(a) == x && on_morphisms[a] == b;
      if (!lifted) return false;
    }
  return true;
}

// ---------------------------------------------------------------- suites

namespace {

std::string failure(const std::string& suite, int k, std::uint64_t s, const std::string& what) {
  std::ostringstream os;
  os << suite << " case " << k << " (seed " << s << "): " << what;
  return os.str();
}

PiModule random_module(std::mt19937_64& rng) {
  std::vector<PiModule> pool = grid_modules();
  pool.push_back(PiModule::trivial_action(FiniteGroup::cyclic(3), FgAbelianGroup::cyclic(2)));
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

}  // namespace

EquivariantLocalSystem shared_labels(const OrbitCategory& oc, const GSimplicialSet& x, const PiModule& m,
                                     const std::vector<int>& labels) {
  const int objects = oc.num_objects();
  std::vector<int> id(m.pi().order());
  std::iota(id.begin(), id.end(), 0);
  OGModule coeff;
  coeff.pi.values.assign(objects, m.pi());
  coeff.pi.maps.assign(oc.num_morphisms(), id);
  coeff.values.assign(objects, m);
  coeff.maps.assign(oc.num_morphisms(), AbHom::identity(m.module()));
  EquivariantLocalSystem l;
  l.coefficients = coeff;
  l.omega.assign(objects, std::vector<int>(x.set().count(1), -1));
  for (int h = 0; h < objects; ++h) {
    Subcomplex fixed = fixed_points(x, oc.subgroup(h));
    for (int e = 0; e < x.set().count(1); ++e)
      if (fixed.contains(1, e)) l.omega[h][e] = labels[e];
  }
  l.validate(oc, x);
  return l;
}

namespace {

// Random y and z glued as y + y + z with y's labels repeated.
struct RandomGSpace {
  GSimplicialSet x;
  std::vector<int> labels;
  std::vector<int> potential;  // 0/1 per vertex, monotone in the vertex number
};

RandomGSpace random_gspace(std::mt19937_64& rng) {
  SimplicialSet y = random_complex(rng, 4);
  SimplicialSet z = random_complex(rng, 3);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  std::vector<int> ly = random_labels(rng, y, z2), lz = random_labels(rng, z, z2);
  RandomGSpace out;
  out.x = doubled(y, z);
  out.labels = ly;
  out.labels.insert(out.labels.end(), ly.begin(), ly.end());
  out.labels.insert(out.labels.end(), lz.begin(), lz.end());
  std::uniform_int_distribution<int> cut_y(0, y.count(0)), cut_z(0, z.count(0));
  int cy = cut_y(rng), cz = cut_z(rng);
  for (int copy = 0; copy < 2; ++copy)
    for (int v = 0; v < y.count(0); ++v) out.potential.push_back(v >= cy ? 1 : 0);
  for (int v = 0; v < z.count(0); ++v) out.potential.push_back(v >= cz ? 1 : 0);
  return out;
}

// Map to the minimal circle sending the edge u -> v to the loop when the
// potential jumps from 0 to 1.
SimplicialMap to_minimal_circle(const SimplicialSet& x, const std::vector<int>& potential) {
  SimplicialMap f;
  f.images.resize(x.dimension() + 1);
  for (int v = 0; v < x.count(0); ++v) f.images[0].push_back(SimplexRef::nondegenerate(0, 0));
  if (x.dimension() >= 1)
    for (int e = 0; e < x.count(1); ++e) {
      int s = potential[x.faces(1, e)[1].id], t = potential[x.faces(1, e)[0].id];
      f.images[1].push_back(s != t ? SimplexRef::nondegenerate(1, 0) : SimplexRef{0, 0, {0, 0}});
    }
  if (x.dimension() >= 2)
    for (int tr = 0; tr < x.count(2); ++tr) {
      SimplexRef s = SimplexRef::nondegenerate(2, tr);
      int a = potential[x.vertex(s, 0)], b = potential[x.vertex(s, 1)], c = potential[x.vertex(s, 2)];
      if (a == c) f.images[2].push_back(SimplexRef{0, 0, {0, 0, 0}});
      else if (b == a) f.images[2].push_back(SimplexRef{1, 0, {0, 0, 1}});
      else f.images[2].push_back(SimplexRef{1, 0, {0, 1, 1}});
    }
  return f;
}

}  // namespace

std::string suite_delta_squared(std::uint64_t s, int cases) {
  std::mt19937_64 rng(s);
  for (int k = 0; k < cases; ++k) {
    try {
      if (k % 2 == 0) {
        SimplicialSet x = random_complex(rng, 5);
        PiModule m = random_module(rng);
        LocalSystem l = LocalSystem::from_labels(x, m, random_labels(rng, x, m.pi()));
        for (int n = 0; n + 1 < x.dimension(); ++n)
          if (!coboundary(x, l, n + 1).after(coboundary(x, l, n)).is_zero())
            return failure("local delta^2", k, s, "nonzero in degree " + std::to_string(n));
      } else {
        RandomGSpace g = random_gspace(rng);
        OrbitCategory oc(g.x.group());
        EquivariantLocalSystem l = k % 4 == 1 ? shared_labels(oc, g.x, z2_on_z4(), g.labels)
                                              : EquivariantLocalSystem::constant(oc, g.x, FgAbelianGroup::free(1));
        BredonComplex b = bredon_cochains(g.x, l);
        for (int n = 0; n + 1 < b.top_degree(); ++n)
          if (!b.complex.differential(n + 1).after(b.complex.differential(n)).is_zero())
            return failure("Bredon delta^2", k, s, "nonzero in degree " + std::to_string(n));
      }
    } catch (const std::exception& e) {
      return failure("delta^2", k, s, e.what());
    }
  }
  return "";
}

std::string suite_crossed_axioms(std::uint64_t s, int cases) {
  std::mt19937_64 rng(s);
  for (int k = 0; k < cases; ++k) {
    try {
      PiModule m = random_module(rng);
      int n = std::uniform_int_distribution<int>(0, 4)(rng);
      ChiPhi cp = chi_phi(m, n);
      cp.complex.validate();
      cp.base.validate();
      switch (k % 4) {
        case 0: crs_hom_z1(cp.complex).complex.validate(); break;
        case 1: pullback(cp.complex, cp.p, cp.base, identity_morphism(cp.base), cp.base).complex.validate(); break;
        case 2:
          if (n >= 1) {
            FibrewiseLoop fl = fibrewise_loop(m, n);
            fl.complex.validate();
            validate_morphism(fl.complex, fl.shifted.complex, fl.iso);
            if (!is_isomorphism(fl.complex, fl.shifted.complex, fl.iso))
              return failure("crossed axioms", k, s, "loop identification is not an isomorphism");
          }
          break;
        default: crs_hom_z1(chi(m.pi(), 1)).complex.validate(); break;
      }
    } catch (const std::exception& e) {
      return failure("crossed axioms", k, s, e.what());
    }
  }
  return "";
}

std::string suite_simplicial_identities(std::uint64_t s, int cases) {
  std::mt19937_64 rng(s);
  for (int k = 0; k < cases; ++k) {
    try {
      if (k % 2 == 0) {
        PiModule m = random_module(rng);
        int n = std::uniform_int_distribution<int>(0, 3)(rng);
        bool small = m.pi().order() * m.module_size() <= 8;
        nerve(chi_phi(m, n).complex, small ? 3 : 2).validate();
      } else {
        RandomGSpace g = random_gspace(rng);
        GSimplicialSet base;
        SimplicialMap p;
        if (k % 4 == 1) {
          base = GSimplicialSet::trivial(SimplicialSet::point(), g.x.group());
          p = SimplicialMap::constant(g.x.set(), 0);
        } else {
          base = GSimplicialSet::trivial(SimplicialSet::minimal_circle(), g.x.group());
          p = to_minimal_circle(g.x.set(), g.potential);
        }
        validate_equivariant(g.x, base, p);
        FibrewiseSuspension fs = fibrewise_suspension(g.x, base, p);
        fs.set.set().validate();
        fs.set.validate();
        fs.projection.validate(fs.set.set(), base.set());
        fs.section.validate(base.set(), fs.set.set());
      }
    } catch (const std::exception& e) {
      return failure("simplicial identities", k, s, e.what());
    }
  }
  return "";
}

std::string suite_fibrations(std::uint64_t s, int cases) {
  std::mt19937_64 rng(s);
  for (int k = 0; k < cases; ++k) {
    try {
      PiModule m = random_module(rng);
      int n = std::uniform_int_distribution<int>(0, 4)(rng);
      ChiPhi cp = chi_phi(m, n);
      if (!is_fibration(cp.complex, cp.base, cp.p)) return failure("fibrations", k, s, "p is not a fibration");
      for (int v = 0; v < cp.base.num_objects(); ++v)
        if (cp.p.on_object(cp.s.on_object(v)) != v) return failure("fibrations", k, s, "p s != id on objects");
      for (int x = 0; x < cp.base.c1().num_morphisms(); ++x)
        if (cp.p.on_c1(cp.s.on_c1(x)) != x) return failure("fibrations", k, s, "p s != id on morphisms");
      if (n >= 1 && k % 5 == 0) {
        FibrewiseLoop fl = fibrewise_loop(m, n);
        if (!is_fibration(fl.complex, cp.base, fl.projection))
          return failure("fibrations", k, s, "loop projection is not a fibration");
      }
    } catch (const std::exception& e) {
      return failure("fibrations", k, s, e.what());
    }
  }
  return "";
}

namespace {

FiniteGroup random_group(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return FiniteGroup::cyclic(std::uniform_int_distribution<int>(1, 6)(rng));
    case 1: return FiniteGroup::symmetric(3);
    case 2: return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    default: return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  }
}

struct RandomFunctor {
  Groupoid from, to;
  std::vector<int> f0, f1;
};

RandomFunctor random_functor(std::mt19937_64& rng) {
  FiniteGroup g = random_group(rng);
  std::vector<std::vector<int>> subs = g.subgroups();
  auto pick_sub = [&]() { return subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)]; };
  RandomFunctor r;
  r.to = Groupoid::from_group(g);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: {
      // action groupoid of G on a union of coset spaces, projected to G
      std::vector<std::vector<int>> points;  // cosets as sorted lists
      int copies = std::uniform_int_distribution<int>(1, 2)(rng);
      for (int c = 0; c < copies; ++c) {
        std::vector<int> h = pick_sub();
        std::set<std::vector<int>> cosets;
        for (int a = 0; a < g.order(); ++a) {
          std::vector<int> cs;
          for (int y : h) cs.push_back(g.mul(a, y));
          std::sort(cs.begin(), cs.end());
          cosets.insert(cs);
        }
        for (auto cs : cosets) {
          cs.push_back(-1 - c);  // tag the copy
          points.push_back(cs);
        }
      }
      int size = static_cast<int>(points.size());
      std::vector<std::vector<int>> perms(g.order(), std::vector<int>(size));
      for (int a = 0; a < g.order(); ++a)
        for (int i = 0; i < size; ++i) {
          std::vector<int> cs;
          for (std::size_t t = 0; t + 1 < points[i].size(); ++t) cs.push_back(g.mul(a, points[i][t]));
          std::sort(cs.begin(), cs.end());
          cs.push_back(points[i].back());
          perms[a][i] = static_cast<int>(std::find(points.begin(), points.end(), cs) - points.begin());
        }
      GroupAction act(g, size, perms);
      r.from = action_groupoid(act);
      r.f0.assign(size, 0);
      r.f1 = action_groupoid_projection(act);
      break;
    }
    case 1: {
      // cyclic group mapped by k -> y^k
      int y = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
      int ord = order_of([&](int a, int b) { return g.mul(a, b); }, g.identity(), y);
      int n = ord * std::uniform_int_distribution<int>(1, 2)(rng);
      r.from = Groupoid::from_group(FiniteGroup::cyclic(n));
      r.f0 = {0};
      // element k of cyclic(n) is k times the generator 1
      FiniteGroup cn = FiniteGroup::cyclic(n);
      int gen = cn.generators().empty() ? cn.identity() : cn.generators()[0];
      r.f1.assign(n, g.identity());
      int e = cn.identity(), img = g.identity();
      for (int k = 0; k < n; ++k) {
        r.f1[e] = img;
        e = cn.mul(e, gen);
        img = g.mul(img, y);
      }
      break;
    }
    case 2: {
      // subgroup inclusion
      std::vector<int> h = pick_sub();
      std::vector<std::vector<int>> table(h.size(), std::vector<int>(h.size()));
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
          table[i][j] = static_cast<int>(std::find(h.begin(), h.end(), g.mul(h[i], h[j])) - h.begin());
      r.from = Groupoid::from_group(FiniteGroup::from_table(table));
      r.f0 = {0};
      r.f1 = h;
      break;
    }
    default: {
      int k = std::uniform_int_distribution<int>(1, 3)(rng);
      r.from = Groupoid::discrete(k);
      r.f0.assign(k, 0);
      for (int v = 0; v < k; ++v) r.f1.push_back(g.identity());
      break;
    }
  }
  return r;
}

}  // namespace

std::string suite_star_surjectivity(std::uint64_t s, int cases) {
  std::mt19937_64 rng(s);
  int yes = 0, no = 0;
  for (int k = 0; k < cases; ++k) {
    try {
      RandomFunctor f = random_functor(rng);
      validate_functor(f.from, f.to, f.f0, f.f1);
      bool lib = star_surjective(f.from, f.to, f.f0, f.f1);
      bool oracle = brute_star_surjective(f.from, f.to, f.f0, f.f1);
      if (lib != oracle) return failure("star surjectivity", k, s, "library and oracle disagree");
      (oracle ? yes : no)++;
    } catch (const std::exception& e) {
      return failure("star surjectivity", k, s, e.what());
    }
  }
  if (cases >= 50 && (yes == 0 || no == 0)) return "star surjectivity: only one outcome was exercised";
  return "";
}

}  // namespace testing
