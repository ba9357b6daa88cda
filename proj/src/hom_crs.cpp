#include "xcomplex/hom_crs.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace xcomplex {

namespace {

using Key4 = std::array<int, 4>;  // (source object, target object, u, h)

// position of (H0, H1) in the level-m group at a mapping-complex object
int higher_local(const CrossedComplex& d, int m, int x, int h0, int h1) {
  return d.level(m).local(h0) * d.level(m + 1).group(x).order() + d.level(m + 1).local(h1);
}

int higher_index(const MappingComplex& mc, const CrossedComplex& d, int m, int obj, int h0, int h1) {
  int x = d.c1().source(mc.loops[obj]);
  if (m > mc.complex.top()) {
    if (h0 != d.level(m).identity(x) || h1 != d.level(m + 1).identity(x))
      throw std::logic_error("nontrivial homotopy above the computed levels");
    return obj;
  }
  return mc.complex.level(m).global(obj, higher_local(d, m, x, h0, h1));
}

std::map<Key4, int> homotopy_index(const MappingComplex& mc) {
  std::map<Key4, int> idx;
  const Groupoid& c1 = mc.complex.c1();
  for (int i = 0; i < c1.num_morphisms(); ++i)
    idx[{c1.source(i), c1.target(i), mc.homotopies[i][0], mc.homotopies[i][1]}] = i;
  return idx;
}

}  // namespace

MappingComplex crs_hom_z1(const CrossedComplex& d, int m_max) {
  const Groupoid& g = d.c1();
  const Level& l2 = d.level(2);
  MappingComplex mc;
  std::map<int, int> loop_index;
  for (int x = 0; x < g.num_morphisms(); ++x)
    if (g.source(x) == g.target(x)) {
      loop_index[x] = static_cast<int>(mc.loops.size());
      mc.loops.push_back(x);
    }
  const int nobj = static_cast<int>(mc.loops.size());

  std::map<Key4, int> idx1;
  std::vector<int> src, tgt;
  for (int f = 0; f < nobj; ++f) {
    const int lf = mc.loops[f], x = g.source(lf);
    for (int gi = 0; gi < nobj; ++gi) {
      const int lg = mc.loops[gi], y = g.source(lg);
      for (int u : g.hom(x, y))
        for (int a = 0; a < l2.group(y).order(); ++a) {
          int h = l2.global(y, a);
          int rhs = g.compose(g.compose(g.compose(u, lg), d.delta(2, h)), g.inverse(u));
          if (rhs != lf) continue;
          idx1[{f, gi, u, h}] = static_cast<int>(mc.homotopies.size());
          mc.homotopies.push_back({u, h});
          src.push_back(f);
          tgt.push_back(gi);
        }
    }
  }
  // (u,h) then (v,k) = (uv, k + h^v)
  Groupoid c1 = Groupoid::build(nobj, src, tgt, [&](int a, int b) {
    auto [u, h] = mc.homotopies[a];
    auto [v, k] = mc.homotopies[b];
    return idx1.at({src[a], tgt[b], g.compose(u, v), l2.mul(k, d.act(2, h, v))});
  });

  const int top = m_max < 0 ? d.top() : m_max;
  std::vector<Level> levels;
  for (int m = 2; m <= top; ++m) {
    const Level& lm = d.level(m);
    const Level& lm1 = d.level(m + 1);
    std::vector<FiniteGroup> groups;
    mc.higher.emplace_back();
    for (int f = 0; f < nobj; ++f) {
      const int x = g.source(mc.loops[f]);
      const FiniteGroup& a = lm.group(x);
      const FiniteGroup& b = lm1.group(x);
      std::vector<std::vector<int>> table(a.order() * b.order(), std::vector<int>(a.order() * b.order()));
      for (int i = 0; i < a.order() * b.order(); ++i)
        for (int j = 0; j < a.order() * b.order(); ++j)
          table[i][j] = a.mul(i / b.order(), j / b.order()) * b.order() + b.mul(i % b.order(), j % b.order());
      groups.push_back(FiniteGroup::from_table(table));
      for (int i = 0; i < a.order() * b.order(); ++i)
        mc.higher.back().push_back({lm.global(x, i / b.order()), lm1.global(x, i % b.order())});
    }
    levels.emplace_back(std::move(groups));
  }

  auto object_of = [&](int m, int c) { return levels[m - 2].object_of(c); };
  mc.complex = CrossedComplex(
      c1, levels,
      [&](int m, int c) {
        auto [h0, h1] = mc.higher[m - 2][c];
        const int f = object_of(m, c), lam = mc.loops[f];
        const Level& lm = d.level(m);
        if (m == 2) {
          // (delta H0, -H0^lambda + H0 + delta H1)
          int h = lm.mul(lm.mul(lm.inv(d.act(2, h0, lam)), h0), d.delta(3, h1));
          return idx1.at({f, f, d.delta(2, h0), h});
        }
        // (delta H0, delta H1 + (-1)^m (H0 - H0^lambda))
        int t = lm.mul(h0, lm.inv(d.act(m, h0, lam)));
        if (m % 2 == 1) t = lm.inv(t);
        int b = lm.mul(d.delta(m + 1, h1), t);
        const int x = g.source(lam);
        return levels[m - 3].global(f, higher_local(d, m - 1, x, d.delta(m, h0), b));
      },
      [&](int m, int c, int k) {
        auto [h0, h1] = mc.higher[m - 2][c];
        const int u = mc.homotopies[k][0];
        const int to = c1.target(k), y = g.target(u);
        return levels[m - 2].global(to, higher_local(d, m, y, d.act(m, h0, u), d.act(m + 1, h1, u)));
      });
  return mc;
}

CrossedMorphism postcompose(const MappingComplex& md, const CrossedComplex& d, const MappingComplex& me,
                            const CrossedComplex& e, const CrossedMorphism& f) {
  CrossedMorphism out;
  std::map<int, int> loop_index;
  for (std::size_t i = 0; i < me.loops.size(); ++i) loop_index[me.loops[i]] = static_cast<int>(i);
  for (int lam : md.loops) out.f0.push_back(loop_index.at(f.f1[lam]));
  auto idx = homotopy_index(me);
  const Groupoid& c1 = md.complex.c1();
  for (int i = 0; i < c1.num_morphisms(); ++i) {
    auto [u, h] = md.homotopies[i];
    out.f1.push_back(idx.at({out.f0[c1.source(i)], out.f0[c1.target(i)], f.f1[u], f.apply(2, h, d, e)}));
  }
  for (int m = 2; m <= md.complex.top(); ++m) {
    out.fn.emplace_back();
    for (int c = 0; c < md.complex.level_size(m); ++c) {
      auto [h0, h1] = md.higher[m - 2][c];
      int obj = out.f0[md.complex.level(m).object_of(c)];
      out.fn.back().push_back(higher_index(me, e, m, obj, f.apply(m, h0, d, e), f.apply(m + 1, h1, d, e)));
    }
  }
  validate_morphism(md.complex, me.complex, out);
  return out;
}

CrossedMorphism evaluation(const MappingComplex& md, const CrossedComplex& d) {
  CrossedMorphism out;
  for (int lam : md.loops) out.f0.push_back(d.c1().source(lam));
  for (const auto& uh : md.homotopies) out.f1.push_back(uh[0]);
  for (const auto& level : md.higher) {
    out.fn.emplace_back();
    for (const auto& hh : level) out.fn.back().push_back(hh[0]);
  }
  validate_morphism(md.complex, d, out);
  return out;
}

CrossedMorphism constant_inclusion(const CrossedComplex& d, const MappingComplex& md) {
  CrossedMorphism out;
  const Groupoid& g = d.c1();
  std::map<int, int> loop_index;
  for (std::size_t i = 0; i < md.loops.size(); ++i) loop_index[md.loops[i]] = static_cast<int>(i);
  for (int v = 0; v < d.num_objects(); ++v) out.f0.push_back(loop_index.at(g.identity(v)));
  auto idx = homotopy_index(md);
  for (int x = 0; x < g.num_morphisms(); ++x)
    out.f1.push_back(idx.at({out.f0[g.source(x)], out.f0[g.target(x)], x, d.level(2).identity(g.target(x))}));
  for (int m = 2; m <= d.top(); ++m) {
    out.fn.emplace_back();
    for (int c = 0; c < d.level_size(m); ++c) {
      int v = d.level(m).object_of(c);
      out.fn.back().push_back(higher_index(md, d, m, out.f0[v], c, d.level(m + 1).identity(v)));
    }
  }
  validate_morphism(d, md.complex, out);
  return out;
}

CrossedMorphism inverse_morphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f) {
  if (!is_isomorphism(from, to, f)) throw ValidationError("morphism is not invertible");
  CrossedMorphism inv;
  const int top = std::max(from.top(), to.top());
  for (int n = 0; n <= top; ++n) {
    std::vector<int> back(to.level_size(n));
    for (int i = 0; i < from.level_size(n); ++i) back[f.apply(n, i, from, to)] = i;
    if (n == 0) inv.f0 = back;
    else if (n == 1) inv.f1 = back;
    else if (n <= to.top()) inv.fn.push_back(back);
  }
  validate_morphism(to, from, inv);
  return inv;
}

namespace {

bool same_morphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& a,
                   const CrossedMorphism& b) {
  for (int n = 0; n <= from.top(); ++n)
    for (int i = 0; i < from.level_size(n); ++i)
      if (a.apply(n, i, from, to) != b.apply(n, i, from, to)) return false;
  return true;
}

// the identification of the double pullback with chi_phi(A, n-1), following
// the three cases n >= 3, n = 2, n = 1
CrossedMorphism canonical_iso(const FibrewiseLoop& fl, const PiModule& m) {
  const int n = fl.n;
  const int na = m.module_size();
  const CrossedComplex& p2 = fl.complex;
  const CrossedComplex& tgt = fl.shifted.complex;
  // decode a cell of the double pullback into its base cell and mapping-complex cell
  auto decode = [&](int level, int i) {
    auto [b, j] = fl.second.cells[level][i];
    return std::pair<int, int>{b, fl.first.cells[level][j].second};
  };
  CrossedMorphism iso;
  for (int i = 0; i < p2.num_objects(); ++i) {
    if (n >= 2) {
      iso.f0.push_back(0);
    } else {
      int lam = fl.over_target.loops[decode(0, i).second];
      iso.f0.push_back(lam % na);
    }
  }
  for (int i = 0; i < p2.c1().num_morphisms(); ++i) {
    auto [x, k] = decode(1, i);
    if (n >= 3) {
      iso.f1.push_back(x);
    } else if (n == 2) {
      int h = fl.target.complex.level(2).local(fl.over_target.homotopies[k][1]);
      iso.f1.push_back(x * na + m.act_index(x, h));
    } else {
      iso.f1.push_back(m.pi().inv(x) * na + iso.f0[p2.c1().source(i)]);
    }
  }
  for (int lv = 2; lv <= p2.top(); ++lv) {
    iso.fn.emplace_back();
    for (int i = 0; i < p2.level_size(lv); ++i) {
      int obj = iso.f0[p2.level(lv).object_of(i)];
      if (n >= 3 && lv == n - 1) {
        int h1 = fl.over_target.higher[lv - 2][decode(lv, i).second][1];
        iso.fn.back().push_back(tgt.level(lv).global(obj, fl.target.complex.level(n).local(h1)));
      } else {
        iso.fn.back().push_back(tgt.level(lv).identity(obj));
      }
    }
  }
  return iso;
}

}  // namespace

FibrewiseLoop fibrewise_loop(const PiModule& m, int n) {
  if (n < 1) throw std::invalid_argument("fibrewise_loop needs n >= 1");
  FibrewiseLoop fl;
  fl.n = n;
  fl.target = chi_phi(m, n);
  fl.shifted = chi_phi(m, n - 1);
  const CrossedComplex& d = fl.target.complex;
  const CrossedComplex& base = fl.target.base;
  fl.over_target = crs_hom_z1(d);
  fl.over_base = crs_hom_z1(base);
  CrossedMorphism pstar = postcompose(fl.over_target, d, fl.over_base, base, fl.target.p);
  CrossedMorphism iota = constant_inclusion(base, fl.over_base);
  fl.first = pullback(base, iota, fl.over_target.complex, pstar, fl.over_base.complex);
  CrossedMorphism eval = evaluation(fl.over_target, d);
  CrossedMorphism eps = compose(fl.first.complex, fl.over_target.complex, d, fl.first.to_right, eval);
  fl.second = pullback(base, fl.target.s, fl.first.complex, eps, d);
  fl.complex = fl.second.complex;
  fl.projection = fl.second.to_left;

  fl.iso = canonical_iso(fl, m);
  try {
    validate_morphism(fl.complex, fl.shifted.complex, fl.iso);
  } catch (const ValidationError& e) {
    throw ValidationError("fibrewise loop identification for n = " + std::to_string(n) + " is not a morphism: " + e.what());
  }
  if (!is_isomorphism(fl.complex, fl.shifted.complex, fl.iso))
    throw ValidationError("fibrewise loop identification for n = " + std::to_string(n) + " is not bijective");
  CrossedMorphism over = compose(fl.complex, fl.shifted.complex, base, fl.iso, fl.shifted.p);
  if (!same_morphism(fl.complex, base, over, fl.projection))
    throw ValidationError("fibrewise loop identification does not commute with the projections");
  fl.iso_inverse = inverse_morphism(fl.complex, fl.shifted.complex, fl.iso);
  return fl;
}

namespace {

// vertex sets of the nondegenerate simplices of Delta^k, per dimension
std::vector<std::map<std::vector<int>, int>> subset_ids(const SimplicialSet& simplex) {
  std::vector<std::map<std::vector<int>, int>> ids(simplex.dimension() + 1);
  for (int j = 0; j <= simplex.dimension(); ++j)
    for (int id = 0; id < simplex.count(j); ++id) {
      auto ref = SimplexRef::nondegenerate(j, id);
      std::vector<int> verts;
      for (int v = 0; v <= j; ++v) verts.push_back(simplex.vertex(ref, v));
      ids[j][verts] = id;
    }
  return ids;
}

}  // namespace

Nerve nerve(const CrossedComplex& c, int d_max) {
  if (d_max < 0 || d_max > FreeCrossedComplex::kMaxDim)
    throw ValidationError("nerve is supported up to degree " + std::to_string(FreeCrossedComplex::kMaxDim));
  Nerve nv;
  std::vector<SimplicialSet> simplices;
  std::vector<std::vector<std::map<std::vector<int>, int>>> ids;
  std::vector<std::map<FreeMorphism, int>> index(d_max + 1);
  for (int k = 0; k <= d_max; ++k) {
    simplices.push_back(SimplicialSet::standard_simplex(k));
    ids.push_back(subset_ids(simplices.back()));
    nv.simplices.push_back(enumerate_morphisms(free_pi(simplices.back()), c));
    for (int i = 0; i < nv.count(k); ++i) index[k][nv.simplices[k][i]] = i;
  }
  // f restricted along theta : [m] -> [k]
  auto pull = [&](const FreeMorphism& f, int k, const std::vector<int>& theta) {
    const int m = static_cast<int>(theta.size()) - 1;
    FreeMorphism out;
    out.images.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
      std::vector<std::pair<std::vector<int>, int>> cells(ids[m][j].begin(), ids[m][j].end());
      out.images[j].resize(cells.size());
      for (const auto& [verts, id] : cells) {
        std::vector<int> img;
        for (int v : verts) img.push_back(theta[v]);
        img.erase(std::unique(img.begin(), img.end()), img.end());
        int o = f.at(0, theta[verts[0]]);
        if (static_cast<int>(img.size()) == j + 1) out.images[j][id] = f.at(j, ids[k][j].at(img));
        else if (j == 1) out.images[j][id] = c.c1().identity(o);
        else out.images[j][id] = c.level(j).identity(o);
      }
    }
    return out;
  };
  nv.faces.resize(d_max + 1);
  nv.degeneracies.resize(d_max + 1);
  for (int k = 0; k <= d_max; ++k) {
    for (const auto& f : nv.simplices[k]) {
      std::vector<int> fs, ds;
      for (int i = 0; k > 0 && i <= k; ++i) {
        std::vector<int> theta;
        for (int j = 0; j < k; ++j) theta.push_back(j < i ? j : j + 1);
        fs.push_back(index[k - 1].at(pull(f, k, theta)));
      }
      for (int i = 0; k < d_max && i <= k; ++i) {
        std::vector<int> theta;
        for (int j = 0; j <= k + 1; ++j) theta.push_back(j <= i ? j : j - 1);
        ds.push_back(index[k + 1].at(pull(f, k, theta)));
      }
      nv.faces[k].push_back(fs);
      nv.degeneracies[k].push_back(ds);
    }
  }
  nv.validate();
  return nv;
}

void Nerve::validate() const {
  auto fail = [](const std::string& what, int k) {
    throw ValidationError("nerve: " + what + " fails in degree " + std::to_string(k));
  };
  for (int k = 0; k <= top(); ++k) {
    for (int x = 0; x < count(k); ++x) {
      for (int j = 1; k >= 2 && j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (faces[k - 1][faces[k][x][j]][i] != faces[k - 1][faces[k][x][i]][j - 1]) fail("d_i d_j = d_{j-1} d_i", k);
      if (k + 2 <= top())
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i)
            if (degeneracies[k + 1][degeneracies[k][x][j]][i] != degeneracies[k + 1][degeneracies[k][x][i]][j + 1])
              fail("s_i s_j = s_{j+1} s_i", k);
      if (k + 1 <= top())
        for (int j = 0; j <= k; ++j) {
          int y = degeneracies[k][x][j];
          for (int i = 0; i <= k + 1; ++i) {
            int lhs = faces[k + 1][y][i];
            int rhs;
            if (i == j || i == j + 1) rhs = x;
            else if (i < j) rhs = degeneracies[k - 1][faces[k][x][i]][j - 1];
            else rhs = degeneracies[k - 1][faces[k][x][i - 1]][j];
            if (lhs != rhs) fail("d_i s_j", k);
          }
        }
    }
  }
}

int Nerve::nondegenerate_count(int k) const {
  if (k == 0) return count(0);
  std::set<int> degenerate;
  for (const auto& ds : degeneracies[k - 1])
    for (int y : ds) degenerate.insert(y);
  return count(k) - static_cast<int>(degenerate.size());
}

SpectrumFamily omega_family(const PiModule& m, int n_max) {
  if (n_max < 1) throw std::invalid_argument("omega_family needs n_max >= 1");
  SpectrumFamily fam;
  for (int n = 0; n <= n_max; ++n) {
    fam.levels.push_back(chi_phi(m, n));
    const ChiPhi& cp = fam.levels.back();
    if (!is_fibration(cp.complex, cp.base, cp.p))
      throw ValidationError("projection of level " + std::to_string(n) + " is not a fibration");
  }
  for (int n = 1; n <= n_max; ++n) {
    fam.loops.push_back(fibrewise_loop(m, n));
    const FibrewiseLoop& fl = fam.loops.back();
    if (!is_fibration(fl.complex, fl.target.base, fl.projection))
      throw ValidationError("fibrewise loop projection of level " + std::to_string(n) + " is not a fibration");
  }
  return fam;
}

}  // namespace xcomplex
