#include "xcomplex/crossed_complex.hpp"

#include <algorithm>
#include <map>

namespace xcomplex {

Level::Level(std::vector<FiniteGroup> groups) : groups_(std::move(groups)) {
  offset_.push_back(0);
  for (const auto& g : groups_) offset_.push_back(offset_.back() + g.order());
}

Level Level::trivial(int num_objects) { return Level(std::vector<FiniteGroup>(num_objects, FiniteGroup::trivial())); }

Level Level::constant(int num_objects, const FiniteGroup& g) { return Level(std::vector<FiniteGroup>(num_objects, g)); }

int Level::object_of(int c) const {
  if (c < 0 || c >= size()) throw std::out_of_range("level cell out of range");
  return static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), c) - offset_.begin()) - 1;
}

int Level::mul(int a, int b) const {
  int v = object_of(a);
  if (object_of(b) != v) throw std::invalid_argument("product of cells at different objects");
  return global(v, groups_[v].mul(a - offset_[v], b - offset_[v]));
}

int Level::inv(int c) const {
  int v = object_of(c);
  return global(v, groups_[v].inv(c - offset_[v]));
}

bool Level::is_trivial() const { return size() == num_objects(); }

CrossedComplex::CrossedComplex(Groupoid c1, std::vector<Level> levels, const BoundaryFn& boundary,
                               const ActionFn& action)
    : c1_(std::move(c1)), levels_(std::move(levels)), trivial_(Level::trivial(c1_.num_objects())) {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const int n = static_cast<int>(i) + 2;
    const Level& lv = levels_[i];
    if (lv.num_objects() != num_objects())
      throw ValidationError("level " + std::to_string(n) + " has the wrong number of objects");
    boundary_.emplace_back(lv.size());
    for (int c = 0; c < lv.size(); ++c) boundary_[i][c] = boundary(n, c);
    action_.emplace_back(c1_.num_morphisms());
    for (int x = 0; x < c1_.num_morphisms(); ++x) {
      int v = c1_.source(x);
      auto& row = action_[i][x];
      row.resize(lv.group(v).order());
      for (int g = 0; g < lv.group(v).order(); ++g) row[g] = action(n, lv.global(v, g), x);
    }
  }
  validate();
}

const Level& CrossedComplex::level(int n) const {
  if (n < 2) throw std::invalid_argument("level() is for n >= 2");
  return n - 2 < static_cast<int>(levels_.size()) ? levels_[n - 2] : trivial_;
}

int CrossedComplex::level_size(int n) const {
  if (n == 0) return num_objects();
  if (n == 1) return c1_.num_morphisms();
  return level(n).size();
}

int CrossedComplex::delta(int n, int c) const {
  if (n < 2) throw std::invalid_argument("delta is defined from level 2");
  if (n - 2 < static_cast<int>(levels_.size())) return boundary_[n - 2][c];
  int v = level(n).object_of(c);
  return n == 2 ? c1_.identity(v) : level(n - 1).identity(v);
}

int CrossedComplex::act(int n, int c, int x) const {
  const Level& lv = level(n);
  int v = lv.object_of(c);
  if (v != c1_.source(x)) throw std::invalid_argument("acting morphism does not start at the cell's object");
  if (n - 2 < static_cast<int>(levels_.size())) return action_[n - 2][x][lv.local(c)];
  return c1_.target(x);
}

void CrossedComplex::validate() const {
  c1_.validate();
  auto fail = [](int n, const std::string& what) {
    throw ValidationError("crossed complex level " + std::to_string(n) + ": " + what);
  };
  for (int n = 2; n <= top(); ++n) {
    const Level& lv = level(n);
    for (int v = 0; v < num_objects(); ++v)
      if (n >= 3 && !lv.group(v).is_abelian()) fail(n, "group at an object is not abelian");
    // boundary lands at the same object and is a homomorphism
    for (int c = 0; c < lv.size(); ++c) {
      int d = delta(n, c), v = lv.object_of(c);
      if (n == 2) {
        if (d < 0 || d >= c1_.num_morphisms() || c1_.source(d) != v || c1_.target(d) != v)
          fail(n, "boundary is not a loop at the cell's object");
      } else {
        if (d < 0 || d >= level(n - 1).size() || level(n - 1).object_of(d) != v)
          fail(n, "boundary changes the object");
        int dd = delta(n - 1, d);
        int id = n - 1 == 2 ? c1_.identity(v) : level(n - 2).identity(v);
        if (dd != id) fail(n, "composite of two boundaries is not trivial");
      }
    }
    for (int v = 0; v < num_objects(); ++v) {
      const int k = lv.group(v).order();
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          int ga = lv.global(v, a), gb = lv.global(v, b);
          int lhs = delta(n, lv.mul(ga, gb));
          int rhs = n == 2 ? c1_.compose(delta(n, ga), delta(n, gb)) : level(n - 1).mul(delta(n, ga), delta(n, gb));
          if (lhs != rhs) fail(n, "boundary is not a homomorphism");
        }
    }
    // action laws
    for (int x = 0; x < c1_.num_morphisms(); ++x) {
      int s = c1_.source(x), t = c1_.target(x);
      const int k = lv.group(s).order();
      for (int a = 0; a < k; ++a) {
        int c = lv.global(s, a);
        int r = act(n, c, x);
        if (r < 0 || r >= lv.size() || lv.object_of(r) != t) fail(n, "action lands at the wrong object");
        if (x == c1_.identity(s) && r != c) fail(n, "identity does not act trivially");
        for (int b = 0; b < k; ++b) {
          int c2 = lv.global(s, b);
          if (act(n, lv.mul(c, c2), x) != lv.mul(r, act(n, c2, x))) fail(n, "action is not by homomorphisms");
        }
        for (int y : c1_.star(t))
          if (act(n, r, y) != act(n, c, c1_.compose(x, y))) fail(n, "action does not respect composition");
        int dr = delta(n, r);
        int expect = n == 2 ? c1_.compose(c1_.compose(c1_.inverse(x), delta(n, c)), x) : act(n - 1, delta(n, c), x);
        if (dr != expect) fail(n, "boundary is not equivariant");
      }
    }
    // image of delta_2 acts by conjugation on level 2 and trivially above
    const Level& l2 = level(2);
    for (int v = 0; v < num_objects(); ++v) {
      for (int a = 0; a < lv.group(v).order(); ++a) {
        int c = lv.global(v, a);
        for (int b = 0; b < l2.group(v).order(); ++b) {
          int d = l2.global(v, b);
          int r = act(n, c, delta(2, d));
          int expect = n == 2 ? lv.mul(lv.mul(lv.inv(d), c), d) : c;
          if (r != expect) fail(n, n == 2 ? "boundary of level 2 does not act by conjugation"
                                          : "boundary of level 2 does not act trivially");
        }
      }
    }
  }
}

int CrossedMorphism::apply(int n, int c, const CrossedComplex& from, const CrossedComplex& to) const {
  if (n == 0) return f0.at(c);
  if (n == 1) return f1.at(c);
  if (n - 2 < static_cast<int>(fn.size())) return fn[n - 2].at(c);
  if (n <= from.top()) throw std::out_of_range("morphism is missing level " + std::to_string(n));
  return to.level(n).identity(f0.at(from.level(n).object_of(c)));
}

void validate_morphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f) {
  auto fail = [](int n, const std::string& what) {
    throw ValidationError("crossed morphism level " + std::to_string(n) + ": " + what);
  };
  if (static_cast<int>(f.f0.size()) != from.num_objects()) fail(0, "wrong number of object images");
  if (static_cast<int>(f.f1.size()) != from.c1().num_morphisms()) fail(1, "wrong number of morphism images");
  for (int v : f.f0)
    if (v < 0 || v >= to.num_objects()) fail(0, "object image out of range");
  for (int x : f.f1)
    if (x < 0 || x >= to.c1().num_morphisms()) fail(1, "morphism image out of range");
  validate_functor(from.c1(), to.c1(), f.f0, f.f1);
  if (static_cast<int>(f.fn.size()) < from.top() - 1) fail(from.top(), "missing level map");
  for (int n = 2; n <= from.top(); ++n) {
    const Level& src = from.level(n);
    const Level& dst = to.level(n);
    if (static_cast<int>(f.fn[n - 2].size()) != src.size()) fail(n, "wrong number of images");
    for (int c = 0; c < src.size(); ++c) {
      int r = f.fn[n - 2][c];
      if (r < 0 || r >= dst.size() || dst.object_of(r) != f.f0[src.object_of(c)]) fail(n, "image at the wrong object");
      if (to.delta(n, r) != f.apply(n - 1, from.delta(n, c), from, to)) fail(n, "does not commute with boundaries");
    }
    for (int c = 0; c < src.size(); ++c)
      for (int c2 = 0; c2 < src.size(); ++c2)
        if (src.object_of(c) == src.object_of(c2) && f.fn[n - 2][src.mul(c, c2)] != dst.mul(f.fn[n - 2][c], f.fn[n - 2][c2]))
          fail(n, "not a homomorphism");
    for (int x = 0; x < from.c1().num_morphisms(); ++x) {
      int s = from.c1().source(x);
      for (int a = 0; a < src.group(s).order(); ++a) {
        int c = src.global(s, a);
        if (f.fn[n - 2][from.act(n, c, x)] != to.act(n, f.fn[n - 2][c], f.f1[x])) fail(n, "does not preserve the action");
      }
    }
  }
}

CrossedMorphism identity_morphism(const CrossedComplex& c) {
  CrossedMorphism f;
  for (int n = 0; n <= c.top(); ++n) {
    std::vector<int> id(c.level_size(n));
    for (int i = 0; i < c.level_size(n); ++i) id[i] = i;
    if (n == 0) f.f0 = id;
    else if (n == 1) f.f1 = id;
    else f.fn.push_back(id);
  }
  return f;
}

CrossedMorphism compose(const CrossedComplex& a, const CrossedComplex& b, const CrossedComplex& c,
                        const CrossedMorphism& f, const CrossedMorphism& g) {
  CrossedMorphism h;
  for (int v : f.f0) h.f0.push_back(g.f0.at(v));
  for (int x : f.f1) h.f1.push_back(g.f1.at(x));
  for (int n = 2; n <= a.top(); ++n) {
    h.fn.emplace_back();
    for (int i = 0; i < a.level_size(n); ++i) h.fn.back().push_back(g.apply(n, f.apply(n, i, a, b), b, c));
  }
  return h;
}

bool is_isomorphism(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f) {
  const int top = std::max(from.top(), to.top());
  for (int n = 0; n <= top; ++n) {
    if (from.level_size(n) != to.level_size(n)) return false;
    std::vector<bool> hit(to.level_size(n), false);
    for (int i = 0; i < from.level_size(n); ++i) {
      int r = f.apply(n, i, from, to);
      if (hit[r]) return false;
      hit[r] = true;
    }
  }
  return true;
}

bool is_fibration(const CrossedComplex& from, const CrossedComplex& to, const CrossedMorphism& f) {
  if (!star_surjective(from.c1(), to.c1(), f.f0, f.f1)) return false;
  const int top = std::max(from.top(), to.top());
  for (int n = 2; n <= top; ++n) {
    const Level& src = from.level(n);
    const Level& dst = to.level(n);
    for (int v = 0; v < from.num_objects(); ++v) {
      int w = f.f0[v];
      std::vector<bool> hit(dst.group(w).order(), false);
      for (int a = 0; a < src.group(v).order(); ++a) hit[dst.local(f.apply(n, src.global(v, a), from, to))] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
    }
  }
  return true;
}

namespace {

// boundary and action for complexes whose boundaries are all trivial
CrossedComplex::BoundaryFn trivial_boundary(const Groupoid& c1, const std::vector<Level>& levels) {
  return [&c1, &levels](int n, int c) {
    int v = levels[n - 2].object_of(c);
    return n == 2 ? c1.identity(v) : levels[n - 3].identity(v);
  };
}

}  // namespace

CrossedComplex chi(const FiniteGroup& pi, int n) {
  if (n < 0) throw std::invalid_argument("chi needs n >= 0");
  if (n == 0) {
    Groupoid c1 = Groupoid::discrete(pi.order());
    return CrossedComplex(c1, {}, nullptr, nullptr);
  }
  if (n == 1) return CrossedComplex(Groupoid::from_group(pi), {}, nullptr, nullptr);
  if (n >= 3 && !pi.is_abelian()) throw ValidationError("chi(pi, n) for n >= 3 needs an abelian group");
  Groupoid c1 = Groupoid::discrete(1);
  std::vector<Level> levels(n - 2, Level::trivial(1));
  levels.push_back(Level::constant(1, pi));
  return CrossedComplex(c1, levels, trivial_boundary(c1, levels), [](int, int c, int) { return c; });
}

ChiPhi chi_phi(const PiModule& m, int n) {
  if (n < 0) throw std::invalid_argument("chi_phi needs n >= 0");
  if (!m.module().is_finite()) throw ValidationError("chi_phi needs a finite module");
  const FiniteGroup& pi = m.pi();
  const int na = m.module_size();
  ChiPhi out;
  out.base = chi(pi, 1);
  std::vector<int> id_pi(pi.order());
  for (int g = 0; g < pi.order(); ++g) id_pi[g] = g;
  if (n >= 2) {
    Groupoid c1 = Groupoid::from_group(pi);
    std::vector<Level> levels(n - 2, Level::trivial(1));
    levels.push_back(Level::constant(1, abelian_as_group(m.module())));
    out.complex = CrossedComplex(c1, levels, trivial_boundary(c1, levels), [&](int k, int c, int x) {
      return k == n ? m.act_index(pi.inv(x), c) : c;
    });
    out.p.f0 = {0};
    out.p.f1 = id_pi;
    out.s.f0 = {0};
    out.s.f1 = id_pi;
    for (int k = 2; k <= n; ++k) {
      out.p.fn.emplace_back(out.complex.level_size(k), 0);
      out.s.fn.push_back({out.complex.level(k).identity(0)});
    }
  } else if (n == 1) {
    out.complex = CrossedComplex(Groupoid::from_group(semidirect(m)), {}, nullptr, nullptr);
    out.p.f0 = {0};
    out.s.f0 = {0};
    for (int x = 0; x < pi.order() * na; ++x) out.p.f1.push_back(x / na);
    for (int g = 0; g < pi.order(); ++g) out.s.f1.push_back(g * na);
  } else {
    GroupAction act = m.as_action();
    out.complex = CrossedComplex(action_groupoid(act), {}, nullptr, nullptr);
    out.p.f0.assign(na, 0);
    out.p.f1 = action_groupoid_projection(act);
    out.s.f0 = {0};
    for (int g = 0; g < pi.order(); ++g) out.s.f1.push_back(pi.inv(g) * na);
  }
  validate_morphism(out.complex, out.base, out.p);
  validate_morphism(out.base, out.complex, out.s);
  return out;
}

Pullback pullback(const CrossedComplex& left, const CrossedMorphism& f, const CrossedComplex& right,
                  const CrossedMorphism& g, const CrossedComplex& base) {
  try {
    validate_morphism(left, base, f);
    validate_morphism(right, base, g);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("pullback legs do not form a cospan: ") + e.what());
  }
  Pullback out;
  const int top = std::max(left.top(), right.top());
  std::vector<std::map<std::pair<int, int>, int>> index(top + 1);
  out.cells.resize(top + 1);
  auto add = [&](int n, int a, int b) {
    index[n][{a, b}] = static_cast<int>(out.cells[n].size());
    out.cells[n].push_back({a, b});
  };
  for (int a = 0; a < left.num_objects(); ++a)
    for (int b = 0; b < right.num_objects(); ++b)
      if (f.f0[a] == g.f0[b]) add(0, a, b);
  const Groupoid& l1 = left.c1();
  const Groupoid& r1 = right.c1();
  for (int a = 0; a < l1.num_morphisms(); ++a)
    for (int b = 0; b < r1.num_morphisms(); ++b)
      if (f.f1[a] == g.f1[b]) add(1, a, b);
  std::vector<int> src, tgt;
  for (auto [a, b] : out.cells[1]) {
    src.push_back(index[0].at({l1.source(a), r1.source(b)}));
    tgt.push_back(index[0].at({l1.target(a), r1.target(b)}));
  }
  Groupoid c1 = Groupoid::build(static_cast<int>(out.cells[0].size()), src, tgt, [&](int x, int y) {
    auto [a, b] = out.cells[1][x];
    auto [c, d] = out.cells[1][y];
    return index[1].at({l1.compose(a, c), r1.compose(b, d)});
  });
  std::vector<Level> levels;
  for (int n = 2; n <= top; ++n) {
    const Level& ll = left.level(n);
    const Level& rl = right.level(n);
    std::vector<FiniteGroup> groups;
    for (auto [x, y] : out.cells[0]) {
      std::vector<std::pair<int, int>> elems;
      for (int a = 0; a < ll.group(x).order(); ++a)
        for (int b = 0; b < rl.group(y).order(); ++b)
          if (f.apply(n, ll.global(x, a), left, base) == g.apply(n, rl.global(y, b), right, base)) elems.push_back({a, b});
      std::map<std::pair<int, int>, int> pos;
      for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
      std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
          table[i][j] = pos.at({ll.group(x).mul(elems[i].first, elems[j].first),
                                rl.group(y).mul(elems[i].second, elems[j].second)});
      groups.push_back(FiniteGroup::from_table(table));
      for (auto [a, b] : elems) add(n, ll.global(x, a), rl.global(y, b));
    }
    levels.emplace_back(std::move(groups));
  }
  out.complex = CrossedComplex(
      c1, levels,
      [&](int n, int c) {
        auto [a, b] = out.cells[n][c];
        return index[n - 1].at({left.delta(n, a), right.delta(n, b)});
      },
      [&](int n, int c, int x) {
        auto [a, b] = out.cells[n][c];
        auto [u, w] = out.cells[1][x];
        return index[n].at({left.act(n, a, u), right.act(n, b, w)});
      });
  for (int n = 0; n <= top; ++n) {
    std::vector<int> l, r;
    for (auto [a, b] : out.cells[n]) {
      l.push_back(a);
      r.push_back(b);
    }
    if (n == 0) {
      out.to_left.f0 = l;
      out.to_right.f0 = r;
    } else if (n == 1) {
      out.to_left.f1 = l;
      out.to_right.f1 = r;
    } else {
      out.to_left.fn.push_back(l);
      out.to_right.fn.push_back(r);
    }
  }
  out.no_fibration_leg = !is_fibration(left, base, f) && !is_fibration(right, base, g);
  return out;
}

}  // namespace xcomplex
