#include "xcomplex/free_crossed.hpp"

#include <algorithm>
#include <map>

namespace xcomplex {

PathWord path_of(const SimplexRef& edge) {
  if (edge.dim() != 1) throw std::invalid_argument("path_of needs a 1-simplex");
  if (edge.degenerate()) return {};
  return {Letter{edge.id, 1}};
}

PathWord inverse_path(const PathWord& w) {
  PathWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

PathWord reduce(PathWord w) {
  PathWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().edge == l.edge && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeCrossedComplex FreeCrossedComplex::from_simplicial(const SimplicialSet& x, int top_dim) {
  if (top_dim < 0 || top_dim > kMaxDim)
    throw ValidationError("free crossed complexes are supported up to dimension " + std::to_string(kMaxDim));
  if (x.dimension() > top_dim)
    throw ValidationError("simplicial set of dimension " + std::to_string(x.dimension()) +
                          " exceeds the supported dimension " + std::to_string(top_dim));
  FreeCrossedComplex fc;
  fc.top_ = std::max(0, x.dimension());
  fc.vertices_ = x.count(0);
  for (int e = 0; e < x.count(1); ++e) {
    auto ref = SimplexRef::nondegenerate(1, e);
    fc.edge_source_.push_back(x.vertex(ref, 0));
    fc.edge_target_.push_back(x.vertex(ref, 1));
  }
  for (int c = 0; c < x.count(2); ++c) {
    auto ref = SimplexRef::nondegenerate(2, c);
    fc.base2_.push_back(x.vertex(ref, 0));
    PathWord w = path_of(x.face(ref, 2));
    for (auto l : path_of(x.face(ref, 0))) w.push_back(l);
    for (auto l : inverse_path(path_of(x.face(ref, 1)))) w.push_back(l);
    fc.boundary2_.push_back(w);
  }
  for (int c = 0; c < x.count(3); ++c) {
    auto ref = SimplexRef::nondegenerate(3, c);
    fc.base3_.push_back(x.vertex(ref, 0));
    // (d0)^{e01^{-1}} + d2 - d1 - d3, degenerate faces dropped
    CellWord w;
    auto add = [&](int i, int sign, PathWord path) {
      SimplexRef f = x.face(ref, i);
      if (!f.degenerate()) w.push_back(Term{f.id, sign, std::move(path)});
    };
    add(0, 1, inverse_path(path_of(x.edge(ref, 0, 1))));
    add(2, 1, {});
    add(1, -1, {});
    add(3, -1, {});
    fc.boundary3_.push_back(w);
  }
  fc.validate();
  return fc;
}

int FreeCrossedComplex::num_cells(int n) const {
  switch (n) {
    case 0: return vertices_;
    case 1: return static_cast<int>(edge_source_.size());
    case 2: return static_cast<int>(base2_.size());
    case 3: return static_cast<int>(base3_.size());
    default: return 0;
  }
}

int FreeCrossedComplex::base(int n, int c) const {
  switch (n) {
    case 0: return c;
    case 1: return edge_source_[c];
    case 2: return base2_[c];
    case 3: return base3_[c];
    default: throw std::out_of_range("cell dimension");
  }
}

void FreeCrossedComplex::validate() const {
  auto walk = [this](const PathWord& w, int start) {
    int cur = start;
    for (const auto& l : w) {
      int from = l.exp > 0 ? edge_source_[l.edge] : edge_target_[l.edge];
      if (from != cur) throw ValidationError("boundary word is not a path");
      cur = l.exp > 0 ? edge_target_[l.edge] : edge_source_[l.edge];
    }
    return cur;
  };
  for (int c = 0; c < num_cells(2); ++c)
    if (walk(boundary2_[c], base2_[c]) != base2_[c]) throw ValidationError("2-cell boundary is not a loop");
  for (int c = 0; c < num_cells(3); ++c) {
    PathWord total;
    for (const auto& t : boundary3_[c]) {
      if (walk(t.path, base2_[t.cell]) != base3_[c]) throw ValidationError("3-cell boundary term is not based correctly");
      PathWord w = inverse_path(t.path);
      for (auto l : boundary2_[t.cell]) w.push_back(l);
      for (auto l : t.path) w.push_back(l);
      if (t.sign < 0) w = inverse_path(w);
      for (auto l : w) total.push_back(l);
    }
    if (!reduce(total).empty()) throw ValidationError("boundary of a 3-cell does not have trivial boundary");
  }
}

FreeCrossedComplex free_pi(const SimplicialSet& x, int top_dim) {
  return FreeCrossedComplex::from_simplicial(x, top_dim);
}

int eval_path(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f, const PathWord& w,
              int start) {
  const Groupoid& g = d.c1();
  int cur = g.identity(f.at(0, start));
  for (const auto& l : w) {
    int m = f.at(1, l.edge);
    if (l.exp < 0) m = g.inverse(m);
    if (!g.composable(cur, m)) throw std::logic_error("path images do not compose");
    cur = g.compose(cur, m);
  }
  (void)x;
  return cur;
}

int eval_cells(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f, int n, const CellWord& w,
               int base) {
  const Level& lv = d.level(n);
  int acc = lv.identity(f.at(0, base));
  for (const auto& t : w) {
    int v = x.base(n, t.cell);
    int val = d.act(n, f.at(n, t.cell), eval_path(x, d, f, t.path, v));
    if (t.sign < 0) val = lv.inv(val);
    acc = lv.mul(acc, val);
  }
  return acc;
}

bool is_morphism(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& f) {
  if (static_cast<int>(f.images.size()) < x.top() + 1) return false;
  for (int n = 0; n <= x.top(); ++n)
    if (static_cast<int>(f.images[n].size()) != x.num_cells(n)) return false;
  for (int v : f.images[0])
    if (v < 0 || v >= d.num_objects()) return false;
  for (int e = 0; e < x.num_cells(1); ++e) {
    int m = f.at(1, e);
    if (m < 0 || m >= d.c1().num_morphisms()) return false;
    if (d.c1().source(m) != f.at(0, x.edge_source(e)) || d.c1().target(m) != f.at(0, x.edge_target(e))) return false;
  }
  for (int n = 2; n <= x.top(); ++n) {
    const Level& lv = d.level(n);
    for (int c = 0; c < x.num_cells(n); ++c) {
      int val = f.at(n, c), v = x.base(n, c);
      if (val < 0 || val >= lv.size() || lv.object_of(val) != f.at(0, v)) return false;
      int expect = n == 2 ? eval_path(x, d, f, x.boundary2(c), v) : eval_cells(x, d, f, 2, x.boundary3(c), v);
      if (d.delta(n, val) != expect) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::vector<int>> preimages(const CrossedComplex& d, int n) {
  std::vector<std::vector<int>> pre(d.level_size(n - 1));
  for (int c = 0; c < d.level(n).size(); ++c) pre[d.delta(n, c)].push_back(c);
  return pre;
}

bool allowed(const std::vector<std::vector<int>>& lists, int i, int value) {
  if (lists.empty()) return true;
  const auto& l = lists[i];
  return std::find(l.begin(), l.end(), value) != l.end();
}

int max_edge(const PathWord& w) {
  int m = -1;
  for (const auto& l : w) m = std::max(m, l.edge);
  return m;
}

}  // namespace

std::vector<FreeMorphism> enumerate_morphisms(const FreeCrossedComplex& x, const CrossedComplex& d,
                                              const ImageConstraints& constraints) {
  std::vector<FreeMorphism> out;
  const int nv = x.num_cells(0), ne = x.num_cells(1), n2 = x.num_cells(2), n3 = x.num_cells(3);
  const auto pre2 = preimages(d, 2);
  const auto pre3 = preimages(d, 3);
  // 2-cells checked as soon as their last edge is assigned
  std::vector<std::vector<int>> cells_at_edge(ne + 1);
  for (int c = 0; c < n2; ++c) cells_at_edge[max_edge(x.boundary2(c)) + 1].push_back(c);
  // 3-cells checked once their last 2-cell is assigned
  std::vector<std::vector<int>> cells_at_2(n2 + 1);
  for (int c = 0; c < n3; ++c) {
    int m = -1;
    for (const auto& t : x.boundary3(c)) m = std::max(m, t.cell);
    cells_at_2[m + 1].push_back(c);
  }
  FreeMorphism f;
  f.images.resize(x.top() + 1);
  for (int n = 0; n <= x.top(); ++n) f.images[n].assign(x.num_cells(n), -1);

  std::function<void(int)> assign3 = [&](int c) {
    if (c == n3) {
      out.push_back(f);
      return;
    }
    int target = eval_cells(x, d, f, 2, x.boundary3(c), x.base(3, c));
    for (int val : pre3[target]) {
      f.images[3][c] = val;
      assign3(c + 1);
    }
    f.images[3][c] = -1;
  };
  auto check3 = [&](int k) {
    for (int c : cells_at_2[k])
      if (pre3[eval_cells(x, d, f, 2, x.boundary3(c), x.base(3, c))].empty()) return false;
    return true;
  };
  std::function<void(int)> assign2 = [&](int c) {
    if (c == n2) {
      assign3(0);
      return;
    }
    int target = eval_path(x, d, f, x.boundary2(c), x.base(2, c));
    for (int val : pre2[target]) {
      f.images[2][c] = val;
      if (check3(c + 1)) assign2(c + 1);
    }
    f.images[2][c] = -1;
  };
  auto check2 = [&](int k) {
    for (int c : cells_at_edge[k])
      if (pre2[eval_path(x, d, f, x.boundary2(c), x.base(2, c))].empty()) return false;
    return true;
  };
  std::function<void(int)> assign1 = [&](int e) {
    if (e == ne) {
      if (check3(0)) assign2(0);
      return;
    }
    int s = f.at(0, x.edge_source(e)), t = f.at(0, x.edge_target(e));
    for (int m : d.c1().hom(s, t)) {
      if (!allowed(constraints.edges, e, m)) continue;
      f.images[1][e] = m;
      if (check2(e + 1)) assign1(e + 1);
    }
    f.images[1][e] = -1;
  };
  std::function<void(int)> assign0 = [&](int v) {
    if (v == nv) {
      if (check2(0)) assign1(0);
      return;
    }
    for (int o = 0; o < d.num_objects(); ++o) {
      if (!allowed(constraints.objects, v, o)) continue;
      f.images[0][v] = o;
      assign0(v + 1);
    }
    f.images[0][v] = -1;
  };
  assign0(0);
  return out;
}

ImageConstraints over_constraints(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                                  const FreeMorphism& theta) {
  ImageConstraints c;
  c.objects.resize(x.num_cells(0));
  c.edges.resize(x.num_cells(1));
  for (int v = 0; v < x.num_cells(0); ++v)
    for (int o = 0; o < d.num_objects(); ++o)
      if (p.f0[o] == theta.at(0, v)) c.objects[v].push_back(o);
  for (int e = 0; e < x.num_cells(1); ++e)
    for (int m = 0; m < d.c1().num_morphisms(); ++m)
      if (p.f1[m] == theta.at(1, e)) c.edges[e].push_back(m);
  return c;
}

int homotopy_on_path(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g,
                     const FreeHomotopy& hom, const PathWord& w, int start) {
  const Level& l2 = d.level(2);
  int acc = l2.identity(g.at(0, start));
  for (const auto& l : w) {
    int ge = g.at(1, l.edge);
    int h = hom.h[1][l.edge];
    if (l.exp > 0) {
      acc = l2.mul(d.act(2, acc, ge), h);
    } else {
      int gi = d.c1().inverse(ge);
      acc = l2.mul(d.act(2, acc, gi), l2.inv(d.act(2, h, gi)));
    }
  }
  (void)x;
  return acc;
}

namespace {

int homotopy_on_cells(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g,
                      const FreeHomotopy& hom, const CellWord& w, int base) {
  const Level& l3 = d.level(3);
  int acc = l3.identity(g.at(0, base));
  for (const auto& t : w) {
    int val = d.act(3, hom.h[2][t.cell], eval_path(x, d, g, t.path, x.base(2, t.cell)));
    if (t.sign < 0) val = l3.inv(val);
    acc = l3.mul(acc, val);
  }
  return acc;
}

// f on single generators from (H, g); only the H values the generator needs are read
int initial_edge(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g, const FreeHomotopy& hom,
                 int e) {
  const Groupoid& c1 = d.c1();
  int a = hom.h[0][x.edge_source(e)], b = hom.h[0][x.edge_target(e)];
  int r = c1.compose(a, g.at(1, e));
  r = c1.compose(r, d.delta(2, hom.h[1][e]));
  return c1.compose(r, c1.inverse(b));
}

int initial_2(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g, const FreeHomotopy& hom,
              int c) {
  const Level& l2 = d.level(2);
  int v = x.base(2, c);
  int val = l2.mul(g.at(2, c), homotopy_on_path(x, d, g, hom, x.boundary2(c), v));
  int h2 = hom.h.size() > 2 ? hom.h[2][c] : d.level(3).identity(g.at(0, v));
  val = l2.mul(val, d.delta(3, h2));
  return d.act(2, val, d.c1().inverse(hom.h[0][v]));
}

int initial_3(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g, const FreeHomotopy& hom,
              int c) {
  const Level& l3 = d.level(3);
  int v = x.base(3, c);
  int val = l3.mul(g.at(3, c), homotopy_on_cells(x, d, g, hom, x.boundary3(c), v));
  val = l3.mul(val, d.delta(4, hom.h[3][c]));
  return d.act(3, val, d.c1().inverse(hom.h[0][v]));
}

}  // namespace

FreeMorphism initial_morphism(const FreeCrossedComplex& x, const CrossedComplex& d, const FreeMorphism& g,
                              const FreeHomotopy& hom) {
  FreeMorphism f;
  f.images.resize(x.top() + 1);
  for (int v = 0; v < x.num_cells(0); ++v) f.images[0].push_back(d.c1().source(hom.h[0][v]));
  if (x.top() >= 1)
    for (int e = 0; e < x.num_cells(1); ++e) f.images[1].push_back(initial_edge(x, d, g, hom, e));
  if (x.top() >= 2)
    for (int c = 0; c < x.num_cells(2); ++c) f.images[2].push_back(initial_2(x, d, g, hom, c));
  if (x.top() >= 3)
    for (int c = 0; c < x.num_cells(3); ++c) f.images[3].push_back(initial_3(x, d, g, hom, c));
  return f;
}

namespace {

// values allowed for H_n on each n-cell, given g
std::vector<std::vector<int>> homotopy_choices(const FreeCrossedComplex& x, const CrossedComplex& d,
                                               const FreeMorphism& g, int n) {
  std::vector<std::vector<int>> out(x.num_cells(n));
  const Level& lv = d.level(n + 1);
  for (int c = 0; c < x.num_cells(n); ++c) {
    int v = n == 1 ? x.edge_target(c) : x.base(n, c);
    int o = g.at(0, v);
    for (int a = 0; a < lv.group(o).order(); ++a) out[c].push_back(lv.global(o, a));
  }
  return out;
}

std::vector<std::vector<int>> h0_choices(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                                         const FreeMorphism& g, const FreeMorphism* f) {
  const Groupoid& c1 = d.c1();
  std::vector<std::vector<int>> out(x.num_cells(0));
  for (int v = 0; v < x.num_cells(0); ++v)
    for (int m = 0; m < c1.num_morphisms(); ++m) {
      if (c1.target(m) != g.at(0, v)) continue;
      if (f && c1.source(m) != f->at(0, v)) continue;
      if (p.f1[m] != p.f1[c1.identity(c1.target(m))]) continue;
      out[v].push_back(m);
    }
  return out;
}

}  // namespace

void for_each_homotopy_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                            const FreeMorphism& g, const std::function<bool(const FreeHomotopy&)>& visit) {
  std::vector<std::vector<std::vector<int>>> choices;
  choices.push_back(h0_choices(x, d, p, g, nullptr));
  for (int n = 1; n <= x.top(); ++n) choices.push_back(homotopy_choices(x, d, g, n));
  // flatten into one odometer over (n, cell)
  std::vector<std::pair<int, int>> slots;
  for (int n = 0; n <= x.top(); ++n)
    for (int c = 0; c < x.num_cells(n); ++c) {
      if (choices[n][c].empty()) return;
      slots.push_back({n, c});
    }
  FreeHomotopy hom;
  hom.h.resize(x.top() + 1);
  for (int n = 0; n <= x.top(); ++n) hom.h[n].assign(x.num_cells(n), -1);
  std::vector<std::size_t> pos(slots.size(), 0);
  for (std::size_t i = 0; i < slots.size(); ++i) hom.h[slots[i].first][slots[i].second] = choices[slots[i].first][slots[i].second][0];
  while (true) {
    if (!visit(hom)) return;
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      auto [n, c] = slots[i];
      if (++pos[i] < choices[n][c].size()) {
        hom.h[n][c] = choices[n][c][pos[i]];
        break;
      }
      pos[i] = 0;
      hom.h[n][c] = choices[n][c][0];
    }
    if (i == slots.size()) return;
  }
}

bool homotopic_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                    const FreeMorphism& f, const FreeMorphism& g) {
  const int nv = x.num_cells(0), ne = x.num_cells(1), n2 = x.num_cells(2), n3 = x.num_cells(3);
  const auto c0 = h0_choices(x, d, p, g, &f);
  const auto c1 = homotopy_choices(x, d, g, 1);
  const auto c2 = homotopy_choices(x, d, g, 2);
  const auto c3 = homotopy_choices(x, d, g, 3);
  FreeHomotopy hom;
  hom.h.resize(std::max(x.top(), 2) + 2);
  hom.h[0].assign(nv, -1);
  hom.h[1].assign(ne, -1);
  hom.h[2].assign(n2, -1);
  hom.h[3].assign(n3, -1);

  // 3-cells: each needs some H3 value on its own
  auto stage3 = [&]() {
    for (int c = 0; c < n3; ++c) {
      bool ok = false;
      for (int h : c3[c]) {
        hom.h[3][c] = h;
        if (initial_3(x, d, g, hom, c) == f.at(3, c)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  };
  // 2-cells: candidates per cell are independent given H0, H1
  std::function<bool(int, const std::vector<std::vector<int>>&)> stage2 = [&](int c, const std::vector<std::vector<int>>& cand) {
    if (c == n2) return stage3();
    for (int h : cand[c]) {
      hom.h[2][c] = h;
      if (stage2(c + 1, cand)) return true;
    }
    return false;
  };
  auto start2 = [&]() {
    std::vector<std::vector<int>> cand(n2);
    for (int c = 0; c < n2; ++c) {
      for (int h : c2[c]) {
        hom.h[2][c] = h;
        if (initial_2(x, d, g, hom, c) == f.at(2, c)) cand[c].push_back(h);
      }
      if (cand[c].empty()) return false;
    }
    return stage2(0, cand);
  };
  std::function<bool(int, const std::vector<std::vector<int>>&)> stage1 = [&](int e, const std::vector<std::vector<int>>& cand) {
    if (e == ne) return start2();
    for (int h : cand[e]) {
      hom.h[1][e] = h;
      if (stage1(e + 1, cand)) return true;
    }
    return false;
  };
  auto start1 = [&]() {
    std::vector<std::vector<int>> cand(ne);
    for (int e = 0; e < ne; ++e) {
      for (int h : c1[e]) {
        hom.h[1][e] = h;
        if (initial_edge(x, d, g, hom, e) == f.at(1, e)) cand[e].push_back(h);
      }
      if (cand[e].empty()) return false;
    }
    return stage1(0, cand);
  };
  std::function<bool(int)> stage0 = [&](int v) {
    if (v == nv) return start1();
    for (int m : c0[v]) {
      hom.h[0][v] = m;
      if (stage0(v + 1)) return true;
    }
    return false;
  };
  return stage0(0);
}

HomotopyClasses homotopy_classes_over(const FreeCrossedComplex& x, const CrossedComplex& d, const CrossedMorphism& p,
                                      const std::vector<FreeMorphism>& maps) {
  std::map<FreeMorphism, int> index;
  for (std::size_t i = 0; i < maps.size(); ++i) index[maps[i]] = static_cast<int>(i);
  HomotopyClasses out;
  out.class_of.assign(maps.size(), -1);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (out.class_of[i] >= 0) continue;
    const int k = static_cast<int>(out.representatives.size());
    out.representatives.push_back(maps[i]);
    out.class_of[i] = k;
    for_each_homotopy_over(x, d, p, maps[i], [&](const FreeHomotopy& hom) {
      FreeMorphism f = initial_morphism(x, d, maps[i], hom);
      auto it = index.find(f);
      if (it == index.end()) throw std::logic_error("homotopy leaves the enumerated set of maps");
      int& cls = out.class_of[it->second];
      if (cls >= 0 && cls != k) throw std::logic_error("homotopy orbits overlap");
      cls = k;
      return true;
    });
  }
  return out;
}

}  // namespace xcomplex
