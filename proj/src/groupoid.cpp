#include "xcomplex/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace xcomplex {

FiniteGroup::FiniteGroup(int order, std::vector<int> table) : order_(order), table_(std::move(table)) { finish(); }

void FiniteGroup::finish() {
  const int n = order_;
  if (n < 1 || table_.size() != static_cast<std::size_t>(n) * n) throw ValidationError("group table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= n) throw ValidationError("group table is not closed");
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw ValidationError("group table has no identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
  if (std::count(inverse_.begin(), inverse_.end(), -1) > 0) throw ValidationError("group table lacks inverses");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw ValidationError("group table is not associative");
  // Greedy generating set.
  if (generators_.empty()) {
    std::vector<int> span{identity_};
    for (int a = 0; a < n && static_cast<int>(span.size()) < n; ++a) {
      if (std::binary_search(span.begin(), span.end(), a)) continue;
      generators_.push_back(a);
      span = closure(generators_);
    }
  }
}

FiniteGroup FiniteGroup::with_generators(std::vector<int> generators) const {
  for (int g : generators)
    if (g < 0 || g >= order_) throw ValidationError("generator is not a group element");
  if (static_cast<int>(closure(generators).size()) != order_) throw ValidationError("elements do not generate the group");
  FiniteGroup out = *this;
  out.generators_ = std::move(generators);
  return out;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  std::vector<int> flat;
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("group table must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return FiniteGroup(n, std::move(flat));
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& generators) {
  using Perm = std::vector<int>;
  Perm id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw ValidationError("permutation has the wrong degree");
    Perm sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw ValidationError("generator is not a permutation");
  }
  auto compose = [&](const Perm& g, const Perm& h) {
    Perm r(degree);
    for (int i = 0; i < degree; ++i) r[i] = g[h[i]];
    return r;
  };
  std::vector<Perm> elements{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (const auto& g : generators) {
      Perm p = compose(elements[k], g);
      if (!index.count(p)) {
        index.emplace(p, static_cast<int>(elements.size()));
        elements.push_back(p);
      }
    }
  const int n = static_cast<int>(elements.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index.at(compose(elements[a], elements[b]));
  FiniteGroup g;
  g.order_ = n;
  g.table_ = std::move(table);
  for (const auto& p : generators)
    if (p != id) g.generators_.push_back(index.at(p));
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup{}; }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be positive");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  FiniteGroup g(n, std::move(table));
  g.generators_ = n > 1 ? std::vector<int>{1} : std::vector<int>{};
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 2) return trivial();
  std::vector<int> swap(n), cycle(n);
  for (int i = 0; i < n; ++i) {
    swap[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(swap[0], swap[1]);
  return n == 2 ? from_permutations(n, {swap}) : from_permutations(n, {swap, cycle});
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order() * b.order();
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      table[static_cast<std::size_t>(x) * n + y] =
          a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
  return FiniteGroup(n, std::move(table));
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& elements) const {
  std::vector<bool> in(order_, false);
  std::vector<int> out{identity_};
  in[identity_] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int g : elements) {
      int p = mul(out[k], g);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  std::set<std::vector<int>> found;
  for (int a = 0; a < order_; ++a) found.insert(closure({a}));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> current(found.begin(), found.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<int> joined = current[i];
        joined.insert(joined.end(), current[j].begin(), current[j].end());
        if (found.insert(closure(joined)).second) grew = true;
      }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

// ---------------------------------------------------------------------------

Groupoid Groupoid::build(int num_objects, std::vector<int> source, std::vector<int> target,
                         const std::function<int(int, int)>& compose) {
  Groupoid g;
  g.num_objects_ = num_objects;
  g.source_ = std::move(source);
  g.target_ = std::move(target);
  const int m = g.num_morphisms();
  if (static_cast<int>(g.target_.size()) != m) throw ValidationError("groupoid source/target size mismatch");
  g.star_.assign(num_objects, {});
  g.star_pos_.assign(m, -1);
  for (int a = 0; a < m; ++a) {
    if (g.source_[a] < 0 || g.source_[a] >= num_objects || g.target_[a] < 0 || g.target_[a] >= num_objects)
      throw ValidationError("groupoid morphism has an invalid endpoint");
    g.star_pos_[a] = static_cast<int>(g.star_[g.source_[a]].size());
    g.star_[g.source_[a]].push_back(a);
  }
  g.comp_.assign(m, {});
  for (int a = 0; a < m; ++a) {
    const auto& next = g.star_[g.target_[a]];
    g.comp_[a].resize(next.size());
    for (std::size_t k = 0; k < next.size(); ++k) {
      int c = compose(a, next[k]);
      if (c < 0 || c >= m || g.source_[c] != g.source_[a] || g.target_[c] != g.target_[next[k]])
        throw ValidationError("groupoid composite has the wrong endpoints");
      g.comp_[a][k] = c;
    }
  }
  g.identity_.assign(num_objects, -1);
  for (int x = 0; x < num_objects; ++x)
    for (int e : g.star_[x])
      if (g.target_[e] == x && g.compose(e, e) == e) {
        g.identity_[x] = e;
        break;
      }
  for (int x = 0; x < num_objects; ++x)
    if (g.identity_[x] < 0) throw ValidationError("groupoid object " + std::to_string(x) + " has no identity");
  g.inverse_.assign(m, -1);
  for (int a = 0; a < m; ++a)
    for (int b : g.star_[g.target_[a]])
      if (g.target_[b] == g.source_[a] && g.compose(a, b) == g.identity_[g.source_[a]]) {
        g.inverse_[a] = b;
        break;
      }
  for (int a = 0; a < m; ++a)
    if (g.inverse_[a] < 0) throw ValidationError("groupoid morphism " + std::to_string(a) + " has no inverse");
  return g;
}

Groupoid Groupoid::discrete(int num_objects) {
  std::vector<int> ends(num_objects);
  for (int i = 0; i < num_objects; ++i) ends[i] = i;
  return build(num_objects, ends, ends, [](int a, int) { return a; });
}

Groupoid Groupoid::from_group(const FiniteGroup& g) {
  std::vector<int> ends(g.order(), 0);
  return build(1, ends, ends, [&](int a, int b) { return g.mul(a, b); });
}

int Groupoid::compose(int a, int b) const {
  if (target_[a] != source_[b]) throw ValidationError("composing non-composable groupoid morphisms");
  return comp_[a][star_pos_[b]];
}

std::vector<int> Groupoid::hom(int x, int y) const {
  std::vector<int> out;
  for (int a : star_[x])
    if (target_[a] == y) out.push_back(a);
  return out;
}

bool Groupoid::is_totally_disconnected() const {
  for (int a = 0; a < num_morphisms(); ++a)
    if (source_[a] != target_[a]) return false;
  return true;
}

bool Groupoid::is_abelian_at(int object) const {
  auto loops = hom(object, object);
  for (int a : loops)
    for (int b : loops)
      if (compose(a, b) != compose(b, a)) return false;
  return true;
}

void Groupoid::validate() const {
  for (int a = 0; a < num_morphisms(); ++a) {
    if (compose(identity_[source_[a]], a) != a || compose(a, identity_[target_[a]]) != a)
      throw ValidationError("groupoid identity law fails");
    if (compose(a, inverse_[a]) != identity_[source_[a]] || compose(inverse_[a], a) != identity_[target_[a]])
      throw ValidationError("groupoid inverse law fails");
    for (int b : star_[target_[a]]) {
      int ab = compose(a, b);
      for (int c : star_[target_[b]])
        if (compose(ab, c) != compose(a, compose(b, c))) throw ValidationError("groupoid composition is not associative");
    }
  }
}

void validate_functor(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                      const std::vector<int>& on_morphisms) {
  if (static_cast<int>(on_objects.size()) != from.num_objects() ||
      static_cast<int>(on_morphisms.size()) != from.num_morphisms())
    throw ValidationError("functor data has the wrong size");
  for (int a = 0; a < from.num_morphisms(); ++a) {
    int fa = on_morphisms[a];
    if (fa < 0 || fa >= to.num_morphisms()) throw ValidationError("functor image out of range");
    if (to.source(fa) != on_objects[from.source(a)] || to.target(fa) != on_objects[from.target(a)])
      throw ValidationError("functor does not preserve endpoints");
    for (int b : from.star(from.target(a)))
      if (on_morphisms[from.compose(a, b)] != to.compose(fa, on_morphisms[b]))
        throw ValidationError("functor does not preserve composition");
  }
}

bool star_surjective(const Groupoid& from, const Groupoid& to, const std::vector<int>& on_objects,
                     const std::vector<int>& on_morphisms) {
  for (int x = 0; x < from.num_objects(); ++x) {
    std::vector<bool> hit(to.num_morphisms(), false);
    for (int a : from.star(x)) hit[on_morphisms[a]] = true;
    for (int h : to.star(on_objects[x]))
      if (!hit[h]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

GroupAction::GroupAction(FiniteGroup group, int size, std::vector<std::vector<int>> permutations)
    : group_(std::move(group)), size_(size), perms_(std::move(permutations)) {
  if (static_cast<int>(perms_.size()) != group_.order()) throw ValidationError("need one permutation per group element");
  for (const auto& p : perms_)
    if (static_cast<int>(p.size()) != size_) throw ValidationError("action permutation has the wrong size");
  for (int m = 0; m < size_; ++m)
    if (act(group_.identity(), m) != m) throw ValidationError("identity acts nontrivially");
  for (int g = 0; g < group_.order(); ++g)
    for (int h = 0; h < group_.order(); ++h)
      for (int m = 0; m < size_; ++m)
        if (act(group_.mul(g, h), m) != act(g, act(h, m))) throw ValidationError("action is not compatible with multiplication");
}

Groupoid action_groupoid(const GroupAction& act) {
  const int n = act.size(), order = act.group().order();
  std::vector<int> src(static_cast<std::size_t>(order) * n), tgt(src.size());
  for (int g = 0; g < order; ++g)
    for (int m = 0; m < n; ++m) {
      src[g * n + m] = m;
      tgt[g * n + m] = act.act(g, m);
    }
  // (g : m -> gm) then (h : gm -> hgm) is hg : m -> hgm.
  return Groupoid::build(n, src, tgt, [&](int a, int b) {
    return act.group().mul(b / n, a / n) * n + a % n;
  });
}

std::vector<int> action_groupoid_projection(const GroupAction& act) {
  const int n = act.size();
  std::vector<int> out(static_cast<std::size_t>(act.group().order()) * n);
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = act.group().inv(static_cast<int>(a) / n);
  return out;
}

// ---------------------------------------------------------------------------

PiModule::PiModule(FiniteGroup pi, FgAbelianGroup a, const std::vector<IntMatrix>& generator_matrices)
    : pi_(std::move(pi)), a_(std::move(a)) {
  const auto& gens = pi_.generators();
  if (generator_matrices.size() != gens.size())
    throw ValidationError("module needs one matrix per group generator (" + std::to_string(gens.size()) + ")");
  std::vector<AbHom> gen_homs;
  for (const auto& m : generator_matrices) {
    AbHom h(a_, a_, m);
    if (!h.is_automorphism()) throw ValidationError("generator does not act by an automorphism");
    gen_homs.push_back(h);
  }
  std::vector<std::optional<AbHom>> phi(pi_.order());
  phi[pi_.identity()] = AbHom::identity(a_);
  std::deque<int> queue{pi_.identity()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = pi_.mul(x, gens[k]);
      AbHom py = phi[x]->after(gen_homs[k]);
      if (!phi[y]) {
        phi[y] = py;
        queue.push_back(y);
      } else if (!(*phi[y] == py)) {
        throw ValidationError("generator matrices do not define a group action");
      }
    }
  }
  for (int g = 0; g < pi_.order(); ++g) {
    if (!phi[g]) throw ValidationError("group generators do not generate the group");
    action_.push_back(*phi[g]);
  }
  for (int g = 0; g < pi_.order(); ++g)
    for (int h = 0; h < pi_.order(); ++h)
      if (!(action_[pi_.mul(g, h)] == action_[g].after(action_[h])))
        throw ValidationError("module action is not a homomorphism");

  if (a_.is_finite()) {
    size_ = static_cast<int>(a_.order());
    act_table_.resize(static_cast<std::size_t>(pi_.order()) * size_);
    for (int g = 0; g < pi_.order(); ++g)
      for (int x = 0; x < size_; ++x)
        act_table_[static_cast<std::size_t>(g) * size_ + x] = static_cast<int>(a_.element_index(act(g, a_.element(x))));
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    neg_table_.resize(size_);
    for (int x = 0; x < size_; ++x) {
      neg_table_[x] = static_cast<int>(a_.element_index(-a_.element(x)));
      for (int y = 0; y < size_; ++y)
        add_table_[static_cast<std::size_t>(x) * size_ + y] = static_cast<int>(a_.element_index(a_.element(x) + a_.element(y)));
    }
  }
}

PiModule PiModule::trivial_action(FiniteGroup pi, FgAbelianGroup a) {
  std::vector<IntMatrix> mats(pi.generators().size(), IntMatrix::Identity(a.num_generators(), a.num_generators()));
  return PiModule(std::move(pi), std::move(a), mats);
}

int PiModule::act_index(int g, int a) const {
  if (act_table_.empty()) throw ValidationError("element tables need a finite module");
  return act_table_[static_cast<std::size_t>(g) * size_ + a];
}

int PiModule::add(int a, int b) const {
  if (add_table_.empty()) throw ValidationError("element tables need a finite module");
  return add_table_[static_cast<std::size_t>(a) * size_ + b];
}

int PiModule::negate(int a) const {
  if (neg_table_.empty()) throw ValidationError("element tables need a finite module");
  return neg_table_[a];
}

GroupAction PiModule::as_action() const {
  std::vector<std::vector<int>> perms(pi_.order(), std::vector<int>(size_));
  for (int g = 0; g < pi_.order(); ++g)
    for (int x = 0; x < size_; ++x) perms[g][x] = act_index(g, x);
  return GroupAction(pi_, size_, std::move(perms));
}

FiniteGroup semidirect(const PiModule& m) {
  if (!m.module().is_finite()) throw ValidationError("semidirect product needs a finite module");
  const int na = m.module_size(), n = m.pi().order() * na;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int g = x / na, a = x % na, h = y / na, b = y % na;
      table[x][y] = m.pi().mul(g, h) * na + m.add(a, m.act_index(g, b));
    }
  return FiniteGroup::from_table(table);
}

FiniteGroup abelian_as_group(const FgAbelianGroup& a) {
  const int n = static_cast<int>(a.order());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x][y] = static_cast<int>(a.element_index(a.element(x) + a.element(y)));
  return FiniteGroup::from_table(table);
}

}  // namespace xcomplex
