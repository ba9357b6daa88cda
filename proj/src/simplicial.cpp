#include "xcomplex/simplicial.hpp"

#include <algorithm>
#include <numeric>

namespace xcomplex {

SimplexRef SimplexRef::nondegenerate(int dim, int id) {
  SimplexRef r;
  r.nd_dim = dim;
  r.id = id;
  r.surjection.resize(dim + 1);
  std::iota(r.surjection.begin(), r.surjection.end(), 0);
  return r;
}

namespace {

void surjections_rec(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  int j = static_cast<int>(cur.size());
  if (j == n + 1) {
    if (cur.back() == k) out.push_back(cur);
    return;
  }
  int last = cur.back();
  // remaining positions must still be able to reach k
  for (int step = 0; step <= 1; ++step) {
    int v = last + step;
    if (v > k || k - v > n - j) continue;
    cur.push_back(v);
    surjections_rec(n, k, cur, out);
    cur.pop_back();
  }
}

bool is_monotone_surjection(const std::vector<int>& s, int k) {
  if (s.empty() || s.front() != 0 || s.back() != k) return false;
  for (std::size_t j = 1; j < s.size(); ++j)
    if (s[j] - s[j - 1] != 0 && s[j] - s[j - 1] != 1) return false;
  return true;
}

}  // namespace

std::vector<std::vector<int>> monotone_surjections(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur{0};
  surjections_rec(n, k, cur, out);
  return out;
}

int SimplicialSet::add_simplex(int dim, std::vector<SimplexRef> faces) {
  if (dim < 0) throw ValidationError("negative simplex dimension");
  if (dim == 0 && !faces.empty()) throw ValidationError("a vertex has no faces");
  if (dim > 0 && static_cast<int>(faces.size()) != dim + 1)
    throw ValidationError("a " + std::to_string(dim) + "-simplex needs " + std::to_string(dim + 1) + " faces");
  for (const auto& f : faces) {
    if (f.dim() != dim - 1) throw ValidationError("face of the wrong dimension");
    if (f.nd_dim < 0 || f.nd_dim >= static_cast<int>(faces_.size()) || f.id < 0 || f.id >= count(f.nd_dim))
      throw ValidationError("face refers to an unknown simplex");
    if (!is_monotone_surjection(f.surjection, f.nd_dim)) throw ValidationError("face degeneracy is not a surjection");
  }
  while (dimension() < dim) faces_.emplace_back();
  faces_[dim].push_back(std::move(faces));
  return static_cast<int>(faces_[dim].size()) - 1;
}

int SimplicialSet::add_simplex_by_ids(int dim, const std::vector<int>& face_ids) {
  std::vector<SimplexRef> faces;
  for (int id : face_ids) faces.push_back(SimplexRef::nondegenerate(dim - 1, id));
  return add_simplex(dim, std::move(faces));
}

SimplexRef SimplicialSet::face_nd(int dim, int id, int i) const { return faces_.at(dim).at(id).at(i); }

SimplexRef SimplicialSet::face(const SimplexRef& s, int i) const {
  int n = s.dim();
  if (n == 0) throw std::invalid_argument("a vertex has no faces");
  if (i < 0 || i > n) throw std::out_of_range("face index");
  const int k = s.nd_dim;
  std::vector<int> mu;
  mu.reserve(n);
  for (int j = 0; j < n; ++j) mu.push_back(s.surjection[j < i ? j : j + 1]);
  std::vector<bool> hit(k + 1, false);
  for (int v : mu) hit[v] = true;
  auto missing = std::find(hit.begin(), hit.end(), false);
  if (missing == hit.end()) return SimplexRef{k, s.id, std::move(mu)};
  int m = static_cast<int>(missing - hit.begin());
  for (int& v : mu)
    if (v > m) --v;
  SimplexRef y = face_nd(k, s.id, m);
  SimplexRef out{y.nd_dim, y.id, {}};
  out.surjection.reserve(n);
  for (int v : mu) out.surjection.push_back(y.surjection[v]);
  return out;
}

SimplexRef SimplicialSet::degeneracy(const SimplexRef& s, int i) {
  int n = s.dim();
  if (i < 0 || i > n) throw std::out_of_range("degeneracy index");
  SimplexRef out{s.nd_dim, s.id, {}};
  for (int j = 0; j <= n + 1; ++j) out.surjection.push_back(s.surjection[j <= i ? j : j - 1]);
  return out;
}

int SimplicialSet::vertex(const SimplexRef& s, int j) const {
  if (s.nd_dim == 0) return s.id;
  SimplexRef cur = SimplexRef::nondegenerate(s.nd_dim, s.id);
  int p = s.surjection.at(j);
  while (cur.dim() > 0) {
    if (p < cur.dim()) {
      cur = face(cur, cur.dim());
    } else {
      cur = face(cur, 0);
      --p;
    }
  }
  return cur.id;
}

SimplexRef SimplicialSet::edge(const SimplexRef& s, int a, int b) const {
  SimplexRef cur = s;
  for (int pos = s.dim(); pos >= 0; --pos)
    if (pos != a && pos != b) cur = face(cur, pos);
  return cur;
}

void SimplicialSet::validate() const {
  for (int d = 2; d <= dimension(); ++d) {
    for (int id = 0; id < count(d); ++id) {
      SimplexRef x = SimplexRef::nondegenerate(d, id);
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i)
          if (face(face(x, j), i) != face(face(x, i), j - 1))
            throw ValidationError("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) +
                                  " fails on " + std::to_string(d) + "-simplex " + std::to_string(id));
    }
  }
}

int SimplicialSet::components() const {
  int n = count(0);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int comps = n;
  for (int e = 0; e < count(1); ++e) {
    int a = find(faces_[1][e][0].id), b = find(faces_[1][e][1].id);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

SimplicialSet SimplicialSet::point() { return points(1); }

SimplicialSet SimplicialSet::points(int n) {
  SimplicialSet s;
  for (int i = 0; i < n; ++i) s.add_vertex();
  return s;
}

SimplicialSet SimplicialSet::minimal_circle() { return polygon(1); }

SimplicialSet SimplicialSet::polygon(int n) {
  if (n < 1) throw std::invalid_argument("polygon needs at least one edge");
  SimplicialSet s = points(n);
  for (int i = 0; i < n; ++i) s.add_simplex_by_ids(1, {(i + 1) % n, i});
  return s;
}

SimplicialSet SimplicialSet::standard_simplex(int n) {
  SimplicialSet s;
  std::map<std::vector<int>, int> ids;
  for (int d = 0; d <= n; ++d) {
    // subsets of size d+1 in lexicographic order
    std::vector<bool> mask(n + 1, false);
    std::fill(mask.begin(), mask.begin() + d + 1, true);
    std::vector<std::vector<int>> subsets;
    do {
      std::vector<int> sub;
      for (int i = 0; i <= n; ++i)
        if (mask[i]) sub.push_back(i);
      subsets.push_back(sub);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::sort(subsets.begin(), subsets.end());
    for (const auto& sub : subsets) {
      if (d == 0) {
        ids[sub] = s.add_vertex();
        continue;
      }
      std::vector<int> face_ids;
      for (int i = 0; i <= d; ++i) {
        auto f = sub;
        f.erase(f.begin() + i);
        face_ids.push_back(ids.at(f));
      }
      ids[sub] = s.add_simplex_by_ids(d, face_ids);
    }
  }
  return s;
}

SimplicialSet SimplicialSet::torus() {
  SimplicialSet s = points(1);
  for (int e = 0; e < 3; ++e) s.add_simplex_by_ids(1, {0, 0});
  // edges a = 0, b = 1, c = 2; faces listed as (d0, d1, d2)
  s.add_simplex_by_ids(2, {1, 2, 0});
  s.add_simplex_by_ids(2, {0, 2, 1});
  return s;
}

SimplicialSet SimplicialSet::sphere_quotient(int n) {
  if (n < 1) throw std::invalid_argument("sphere_quotient needs n >= 1");
  SimplicialSet s = points(1);
  SimplexRef collapsed{0, 0, std::vector<int>(n, 0)};
  for (int d = 1; d < n; ++d) s.faces_.emplace_back();
  s.faces_.emplace_back();
  s.faces_[n].push_back(std::vector<SimplexRef>(n + 1, collapsed));
  return s;
}

SimplexRef SimplicialMap::apply(const SimplexRef& s) const {
  const SimplexRef& y = images.at(s.nd_dim).at(s.id);
  SimplexRef out{y.nd_dim, y.id, {}};
  out.surjection.reserve(s.surjection.size());
  for (int v : s.surjection) out.surjection.push_back(y.surjection[v]);
  return out;
}

void SimplicialMap::validate(const SimplicialSet& from, const SimplicialSet& to) const {
  if (static_cast<int>(images.size()) < from.dimension() + 1) throw ValidationError("map is missing dimensions");
  for (int d = 0; d <= from.dimension(); ++d) {
    if (static_cast<int>(images[d].size()) != from.count(d)) throw ValidationError("map has the wrong number of images");
    for (int id = 0; id < from.count(d); ++id) {
      const SimplexRef& y = images[d][id];
      if (y.dim() != d || y.nd_dim > to.dimension() || y.id < 0 || y.id >= to.count(y.nd_dim) ||
          !is_monotone_surjection(y.surjection, y.nd_dim))
        throw ValidationError("map image is not a simplex of the target");
      if (d == 0) continue;
      for (int i = 0; i <= d; ++i)
        if (apply(from.faces(d, id)[i]) != to.face(y, i))
          throw ValidationError("map does not commute with face d" + std::to_string(i));
    }
  }
}

SimplicialMap SimplicialMap::identity(const SimplicialSet& x) {
  SimplicialMap m;
  for (int d = 0; d <= x.dimension(); ++d) {
    m.images.emplace_back();
    for (int id = 0; id < x.count(d); ++id) m.images[d].push_back(SimplexRef::nondegenerate(d, id));
  }
  return m;
}

SimplicialMap SimplicialMap::constant(const SimplicialSet& x, int v) {
  SimplicialMap m;
  for (int d = 0; d <= x.dimension(); ++d)
    m.images.emplace_back(x.count(d), SimplexRef{0, v, std::vector<int>(d + 1, 0)});
  return m;
}

std::vector<SimplexRef> all_simplices(const SimplicialSet& x, int dim) {
  std::vector<SimplexRef> out;
  for (int k = 0; k <= std::min(dim, x.dimension()); ++k)
    for (const auto& s : monotone_surjections(dim, k))
      for (int id = 0; id < x.count(k); ++id) out.push_back(SimplexRef{k, id, s});
  return out;
}

namespace {

// positions i where both surjections repeat, i.e. s(i) == s(i+1)
std::vector<bool> joint_degeneracies(const SimplexRef& a, const SimplexRef& b) {
  int n = a.dim();
  std::vector<bool> d(n, false);
  for (int i = 0; i < n; ++i)
    d[i] = a.surjection[i] == a.surjection[i + 1] && b.surjection[i] == b.surjection[i + 1];
  return d;
}

}  // namespace

SimplexRef ProductSet::normalize(const SimplexRef& a, const SimplexRef& b) const {
  if (a.dim() != b.dim()) throw std::invalid_argument("product pair of different dimensions");
  auto d = joint_degeneracies(a, b);
  int n = a.dim();
  std::vector<int> zeta(n + 1, 0);
  for (int i = 0; i < n; ++i) zeta[i + 1] = zeta[i] + (d[i] ? 0 : 1);
  int m = zeta[n];
  SimplexRef a2{a.nd_dim, a.id, std::vector<int>(m + 1)};
  SimplexRef b2{b.nd_dim, b.id, std::vector<int>(m + 1)};
  for (int j = 0; j <= n; ++j) {
    a2.surjection[zeta[j]] = a.surjection[j];
    b2.surjection[zeta[j]] = b.surjection[j];
  }
  auto it = index.find({a2, b2});
  if (it == index.end()) throw std::out_of_range("product simplex above the truncation dimension");
  return SimplexRef{m, it->second, std::move(zeta)};
}

ProductSet product(const SimplicialSet& x, const SimplicialSet& y, int max_dim) {
  ProductSet p;
  int top = std::min(max_dim, x.dimension() + y.dimension());
  for (int n = 0; n <= top; ++n) {
    p.pairs.emplace_back();
    auto xs = all_simplices(x, n);
    auto ys = all_simplices(y, n);
    for (const auto& a : xs) {
      for (const auto& b : ys) {
        auto d = joint_degeneracies(a, b);
        if (std::find(d.begin(), d.end(), true) != d.end()) continue;
        std::vector<SimplexRef> faces;
        for (int i = 0; n > 0 && i <= n; ++i) faces.push_back(p.normalize(x.face(a, i), y.face(b, i)));
        int id = p.set.add_simplex(n, std::move(faces));
        p.pairs[n].push_back({a, b});
        p.index[{a, b}] = id;
      }
    }
  }
  return p;
}

}  // namespace xcomplex

namespace xcomplex {

SimplexRef Subcomplex::lift(const SimplexRef& s) const {
  return SimplexRef{s.nd_dim, to_parent.at(s.nd_dim).at(s.id), s.surjection};
}

SimplexRef Subcomplex::restrict(const SimplexRef& s) const {
  int id = s.nd_dim < static_cast<int>(from_parent.size()) ? from_parent[s.nd_dim].at(s.id) : -1;
  if (id < 0) throw ValidationError("simplex is not in the subcomplex");
  return SimplexRef{s.nd_dim, id, s.surjection};
}

SimplicialMap Subcomplex::inclusion() const {
  SimplicialMap m;
  for (int d = 0; d <= set.dimension(); ++d) {
    m.images.emplace_back();
    for (int id = 0; id < set.count(d); ++id) m.images[d].push_back(SimplexRef::nondegenerate(d, to_parent[d][id]));
  }
  return m;
}

Subcomplex subcomplex(const SimplicialSet& x, const std::vector<std::vector<bool>>& keep) {
  Subcomplex sub;
  for (int d = 0; d <= x.dimension(); ++d) {
    sub.from_parent.emplace_back(x.count(d), -1);
    sub.to_parent.emplace_back();
  }
  for (int d = 0; d <= x.dimension(); ++d) {
    for (int id = 0; id < x.count(d); ++id) {
      if (d >= static_cast<int>(keep.size()) || !keep[d].at(id)) continue;
      std::vector<SimplexRef> faces;
      for (const auto& f : d == 0 ? std::vector<SimplexRef>{} : x.faces(d, id)) {
        int fid = sub.from_parent[f.nd_dim][f.id];
        if (fid < 0) throw ValidationError("subcomplex is not closed under faces");
        faces.push_back(SimplexRef{f.nd_dim, fid, f.surjection});
      }
      sub.from_parent[d][id] = sub.set.add_simplex(d, std::move(faces));
      sub.to_parent[d].push_back(id);
    }
  }
  return sub;
}

}  // namespace xcomplex
