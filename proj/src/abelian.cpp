#include "xcomplex/abelian.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

namespace xcomplex {

Integer checked_add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

Integer floor_mod(Integer a, Integer m) {
  Integer r = a % m;
  return r < 0 ? r + m : r;
}

namespace {

// row_i += q * row_j
void add_row(IntMatrix& m, Eigen::Index i, Eigen::Index j, Integer q) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = checked_add(m(i, c), checked_mul(q, m(j, c)));
}

void add_col(IntMatrix& m, Eigen::Index i, Eigen::Index j, Integer q) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, i) = checked_add(m(r, i), checked_mul(q, m(r, j)));
}

}  // namespace

namespace {

// Smith form of m, over Z when modulus is 0 and over Z/modulus otherwise.
SmithForm smith(const IntMatrix& m, Integer modulus) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  SmithForm out;
  out.S = m;
  if (modulus > 0) out.S = out.S.unaryExpr([&](Integer x) { return floor_mod(x, modulus); });
  out.U = IntMatrix::Identity(rows, rows);
  out.U_inv = IntMatrix::Identity(rows, rows);
  out.V = IntMatrix::Identity(cols, cols);
  out.V_inv = IntMatrix::Identity(cols, cols);
  IntMatrix& a = out.S;

  // Elementary operations keep S = U m V, U U_inv = I, V V_inv = I.
  auto wrap = [&](auto&& block) {
    if (modulus > 0) block = block.unaryExpr([&](Integer x) { return floor_mod(x, modulus); });
  };
  auto row_op = [&](Eigen::Index i, Eigen::Index j, Integer q) {  // row_i += q row_j
    if (modulus > 0) q = floor_mod(q, modulus);
    add_row(a, i, j, q);
    add_row(out.U, i, j, q);
    add_col(out.U_inv, j, i, -q);
    wrap(a.row(i));
    wrap(out.U.row(i));
    wrap(out.U_inv.col(j));
  };
  auto col_op = [&](Eigen::Index i, Eigen::Index j, Integer q) {  // col_i += q col_j
    if (modulus > 0) q = floor_mod(q, modulus);
    add_col(a, i, j, q);
    add_col(out.V, i, j, q);
    add_row(out.V_inv, j, i, -q);
    wrap(a.col(i));
    wrap(out.V.col(i));
    wrap(out.V_inv.row(j));
  };
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    out.U.row(i).swap(out.U.row(j));
    out.U_inv.col(i).swap(out.U_inv.col(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    out.V.col(i).swap(out.V.col(j));
    out.V_inv.row(i).swap(out.V_inv.row(j));
  };

  const Eigen::Index diag = std::min(rows, cols);
  Eigen::Index t = 0;
  for (; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    Eigen::Index pi = -1, pj = -1;
    Integer best = 0;
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (a(i, j) != 0 && (best == 0 || std::abs(a(i, j)) < best)) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_op(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.row(t) *= -1;
      out.U.row(t) *= -1;
      out.U_inv.col(t) *= -1;
    }
    if (modulus > 0 && modulus % a(t, t) != 0) {
      // Scale by a unit so the pivot becomes gcd(pivot, modulus).
      const Integer g = std::gcd(a(t, t), modulus), e = modulus / g;
      Integer u = 1;
      while (floor_mod(checked_mul(u, a(t, t) / g), e) != 1 % e) ++u;
      while (std::gcd(u, modulus) != 1) u += e;
      Integer v = 1;
      while (floor_mod(checked_mul(u, v), modulus) != 1) ++v;
      a.row(t) *= u;
      out.U.row(t) *= u;
      out.U_inv.col(t) *= v;
      wrap(a.row(t));
      wrap(out.U.row(t));
      wrap(out.U_inv.col(t));
    }
  }
  out.rank = static_cast<int>(t);
  return out;
}

}  // namespace

SmithForm snf(const IntMatrix& m) { return smith(m, 0); }

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm f = snf(m);
  const Eigen::Index k = m.cols() - f.rank;
  return f.V.rightCols(k);
}

std::optional<IntVector> integer_solve(const IntMatrix& a, const IntVector& b) {
  SmithForm f = snf(a);
  IntVector ub = f.U * b;
  IntVector y = IntVector::Zero(a.cols());
  for (Eigen::Index i = 0; i < ub.size(); ++i) {
    if (i < f.rank) {
      if (ub(i) % f.S(i, i) != 0) return std::nullopt;
      y(i) = ub(i) / f.S(i, i);
    } else if (ub(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(f.V * y);
}

// ---------------------------------------------------------------------------

FgAbelianGroup::FgAbelianGroup(std::vector<Integer> orders) : orders_(std::move(orders)) {
  for (Integer o : orders_)
    if (o < 0) throw ValidationError("cyclic order must be nonnegative");
  const auto n = static_cast<Eigen::Index>(orders_.size());
  IntMatrix d = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = orders_[i];
  SmithForm f = snf(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    Integer s = f.diagonal(static_cast<int>(i));
    if (s == 0)
      ++rank_;
    else if (s > 1)
      torsion_.push_back(s);
  }
}

FgAbelianGroup FgAbelianGroup::canonical(int rank, std::vector<Integer> torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw ValidationError("invariant factors must be at least 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw ValidationError("invariant factors must form a divisibility chain");
  }
  std::vector<Integer> orders = torsion;
  orders.insert(orders.end(), rank, 0);
  return FgAbelianGroup(std::move(orders));
}

FgAbelianGroup FgAbelianGroup::direct_sum(const std::vector<FgAbelianGroup>& parts) {
  std::vector<Integer> orders;
  for (const auto& p : parts) orders.insert(orders.end(), p.orders_.begin(), p.orders_.end());
  return FgAbelianGroup(std::move(orders));
}

Integer FgAbelianGroup::order() const {
  if (!is_finite()) throw ValidationError("order of an infinite group");
  Integer n = 1;
  for (Integer o : orders_) n = checked_mul(n, o);
  return n;
}

IntVector FgAbelianGroup::reduce(IntVector v) const {
  for (int i = 0; i < num_generators(); ++i)
    if (orders_[i] > 0) v(i) = floor_mod(v(i), orders_[i]);
  return v;
}

bool FgAbelianGroup::is_zero(const IntVector& v) const { return reduce(v).isZero(); }

Integer FgAbelianGroup::element_index(const IntVector& v) const {
  IntVector r = reduce(v);
  Integer idx = 0;
  for (int i = num_generators() - 1; i >= 0; --i) {
    if (orders_[i] == 0) throw ValidationError("element index in an infinite group");
    idx = idx * orders_[i] + r(i);
  }
  return idx;
}

IntVector FgAbelianGroup::element(Integer index) const {
  IntVector v = zero();
  for (int i = 0; i < num_generators(); ++i) {
    if (orders_[i] == 0) throw ValidationError("element enumeration of an infinite group");
    v(i) = index % orders_[i];
    index /= orders_[i];
  }
  return v;
}

IntMatrix FgAbelianGroup::relations() const {
  IntMatrix r = IntMatrix::Zero(num_generators(), num_generators());
  for (int i = 0; i < num_generators(); ++i) r(i, i) = orders_[i];
  return r;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (Integer t : torsion_) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (rank_ > 0) {
    os << (first ? "" : " + ") << "Z";
    if (rank_ > 1) os << "^" << rank_;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

IntMatrix reduce_rows(const FgAbelianGroup& g, IntMatrix m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) = g.reduce(m.col(c));
  return m;
}

}  // namespace

AbHom::AbHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.num_generators() || matrix_.cols() != domain_.num_generators())
    throw ValidationError("homomorphism matrix has the wrong shape");
  matrix_ = reduce_rows(codomain_, matrix_);
  for (int j = 0; j < domain_.num_generators(); ++j) {
    const Integer d = domain_.orders()[j];
    if (d == 0) continue;
    IntVector image = matrix_.col(j) * d;
    if (!codomain_.is_zero(image))
      throw ValidationError("homomorphism does not respect the order of generator " + std::to_string(j));
  }
}

AbHom AbHom::zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain) {
  return AbHom(domain, codomain, IntMatrix::Zero(codomain.num_generators(), domain.num_generators()));
}

AbHom AbHom::identity(const FgAbelianGroup& g) {
  return AbHom(g, g, IntMatrix::Identity(g.num_generators(), g.num_generators()));
}

IntVector AbHom::apply(const IntVector& x) const { return codomain_.reduce(matrix_ * x); }

AbHom AbHom::after(const AbHom& other) const {
  if (other.codomain_.orders() != domain_.orders()) throw ValidationError("composing non-composable homomorphisms");
  return AbHom(other.domain_, codomain_, matrix_ * other.matrix_);
}

bool AbHom::is_zero() const { return matrix_.isZero(); }

bool AbHom::is_automorphism() const {
  if (domain_.orders() != codomain_.orders()) return false;
  if (!domain_.is_finite()) {
    // Over a free group: unimodular.
    if (domain_.num_generators() != codomain_.num_generators()) return false;
    SmithForm f = snf(matrix_);
    if (f.rank != domain_.num_generators()) return false;
    for (int i = 0; i < f.rank; ++i)
      if (f.S(i, i) != 1) return false;
    return true;
  }
  // Finite: injective suffices.
  return kernel(*this).group.is_trivial();
}

bool operator==(const AbHom& a, const AbHom& b) {
  return a.domain_.orders() == b.domain_.orders() && a.codomain_.orders() == b.codomain_.orders() &&
         a.matrix_ == b.matrix_;
}

// ---------------------------------------------------------------------------

namespace {

// Z^n / columns(relations), re-expressed in invariant-factor coordinates.
Quotient present(const FgAbelianGroup& source, const IntMatrix& relations) {
  const int n = source.num_generators();
  // A finite source lets the elimination run modulo the exponent.
  Integer exponent = 1;
  for (Integer o : source.orders()) {
    if (o == 0 || exponent > (Integer{1} << 40)) {
      exponent = 0;
      break;
    }
    exponent = std::lcm(exponent, o);
  }
  SmithForm f = smith(relations, exponent);
  std::vector<int> keep;
  std::vector<Integer> orders;
  for (int i = 0; i < n; ++i) {
    Integer s = i < f.rank ? f.S(i, i) : exponent;
    if (s == 1) continue;
    keep.push_back(i);
    orders.push_back(s);
  }
  Quotient q;
  q.source = source;
  q.group = FgAbelianGroup(orders);
  q.projection = IntMatrix(static_cast<Eigen::Index>(keep.size()), n);
  q.lifts = IntMatrix(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    q.projection.row(k) = f.U.row(keep[k]);
    q.lifts.col(k) = f.U_inv.col(keep[k]);
  }
  q.projection = reduce_rows(q.group, q.projection);
  q.lifts = reduce_rows(source, q.lifts);
  return q;
}

// Generators of {x in Z^n : m x lies in diag(row_orders) Z^rows}, up to
// adding diag(col_orders) Z^n, which must lie inside that lattice. Rows are
// handled one at a time with a gcd elimination on a single row, and the
// basis is reduced modulo col_orders after each, so entries stay near the
// orders. A full Smith form of [m | relations] overflows on modest inputs.
IntMatrix relation_kernel(const IntMatrix& m, const std::vector<Integer>& row_orders,
                          const std::vector<Integer>& col_orders) {
  const Eigen::Index n = m.cols();
  IntMatrix b = IntMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Integer o = row_orders[i];
    const Eigen::Index c = b.cols();
    const Eigen::Index len = c + (o > 0 ? 1 : 0);
    std::vector<Integer> w(len, 0);
    for (Eigen::Index j = 0; j < c; ++j) {
      Integer v = 0;
      for (Eigen::Index k = 0; k < n; ++k) v = checked_add(v, checked_mul(m(i, k), b(k, j)));
      w[j] = o > 0 ? floor_mod(v, o) : v;
    }
    if (o > 0) w[c] = o;
    IntMatrix t = IntMatrix::Identity(len, len);
    // Euclid across the row until one entry is left; t tracks the columns.
    for (;;) {
      Eigen::Index p = -1;
      for (Eigen::Index j = 0; j < len; ++j)
        if (w[j] != 0 && (p < 0 || std::abs(w[j]) < std::abs(w[p]))) p = j;
      if (p < 0) break;
      bool alone = true;
      for (Eigen::Index j = 0; j < len; ++j) {
        if (j == p || w[j] == 0) continue;
        Integer q = w[j] / w[p];
        w[j] -= q * w[p];
        add_col(t, j, p, -q);
        if (w[j] != 0) alone = false;
      }
      if (alone) {
        std::swap(w[0], w[p]);
        t.col(0).swap(t.col(p));
        break;
      }
    }
    const Eigen::Index first = len > 0 && w[0] != 0 ? 1 : 0;
    IntMatrix next = IntMatrix::Zero(n, len - first);
    for (Eigen::Index j = first; j < len; ++j)
      for (Eigen::Index k = 0; k < c; ++k)
        if (t(k, j) != 0)
          for (Eigen::Index r = 0; r < n; ++r) next(r, j - first) = checked_add(next(r, j - first), checked_mul(b(r, k), t(k, j)));
    for (Eigen::Index r = 0; r < n; ++r)
      if (col_orders[r] > 0)
        for (Eigen::Index j = 0; j < next.cols(); ++j) next(r, j) = floor_mod(next(r, j), col_orders[r]);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < next.cols(); ++j)
      if (!next.col(j).isZero()) keep.push_back(j);
    b = IntMatrix(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = next.col(keep[j]);
  }
  return b;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

std::optional<IntVector> Subgroup::coordinates(const IntVector& x) const {
  // Lattice of (y, s) with inclusion y = s x modulo the ambient relations;
  // x lies in the subgroup iff some element has s = 1.
  const Eigen::Index k = group.num_generators();
  IntMatrix a(inclusion.rows(), k + 1);
  a << inclusion, -ambient.reduce(x);
  std::vector<Integer> col_orders = group.orders();
  col_orders.push_back(0);
  IntMatrix basis = relation_kernel(a, ambient.orders(), col_orders);
  IntVector acc = IntVector::Zero(k + 1);
  Integer g = 0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const Integer s = basis(k, j);
    if (s == 0) continue;
    // u g + v s = gcd(g, s)
    Integer r0 = g, r1 = s, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
      const Integer q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
      std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
    }
    for (Eigen::Index i = 0; i <= k; ++i) acc(i) = checked_add(checked_mul(u0, acc(i)), checked_mul(v0, basis(i, j)));
    g = r0;
    for (Eigen::Index i = 0; i < k; ++i)
      if (col_orders[i] > 0) acc(i) = floor_mod(acc(i), col_orders[i]);
  }
  if (g != 1 && g != -1) return std::nullopt;
  return group.reduce(g * acc.head(k));
}

Subgroup subgroup_generated(const FgAbelianGroup& g, const IntMatrix& generators) {
  const Eigen::Index k = generators.cols();
  // Relations among the generators: c with gens * c in the relation lattice.
  IntMatrix rel = relation_kernel(generators, g.orders(), std::vector<Integer>(k, 0));
  Quotient q = present(FgAbelianGroup::free(static_cast<int>(k)), rel);
  Subgroup s;
  s.ambient = g;
  s.group = q.group;
  s.inclusion = reduce_rows(g, generators * q.lifts);
  return s;
}

Subgroup kernel(const AbHom& f) {
  IntMatrix gens = relation_kernel(f.matrix(), f.codomain().orders(), f.domain().orders());
  return subgroup_generated(f.domain(), gens);
}

Quotient quotient(const FgAbelianGroup& g, const IntMatrix& generators) {
  return present(g, hcat(g.relations(), generators));
}

Quotient cokernel(const AbHom& f) { return quotient(f.codomain(), f.matrix()); }

// ---------------------------------------------------------------------------

AbCochainComplex::AbCochainComplex(std::vector<FgAbelianGroup> groups, std::vector<AbHom> differentials)
    : groups_(std::move(groups)), differentials_(std::move(differentials)) {
  if (differentials_.size() + 1 != groups_.size() && !(groups_.empty() && differentials_.empty()))
    throw ValidationError("cochain complex needs one differential between consecutive groups");
  for (std::size_t n = 0; n < differentials_.size(); ++n) {
    if (differentials_[n].domain().orders() != groups_[n].orders() ||
        differentials_[n].codomain().orders() != groups_[n + 1].orders())
      throw ValidationError("differential " + std::to_string(n) + " has mismatched groups");
  }
  for (std::size_t n = 0; n + 1 < differentials_.size(); ++n)
    if (!differentials_[n + 1].after(differentials_[n]).is_zero())
      throw ValidationError("delta delta != 0 at degree " + std::to_string(n));
}

AbHom AbCochainComplex::differential(int n) const {
  if (n >= 0 && n < static_cast<int>(differentials_.size())) return differentials_[n];
  return AbHom::zero(groups_.at(n), FgAbelianGroup::trivial());
}

IntVector CohomologyGroup::class_of(const IntVector& cocycle) const {
  auto c = cocycles.coordinates(cocycle);
  if (!c) throw ValidationError("cochain is not a cocycle");
  return classes.project(*c);
}

CohomologyGroup cohomology_data(const AbCochainComplex& cx, int n) {
  CohomologyGroup h;
  if (n < 0 || n > cx.top_degree()) {
    h.cocycles.ambient = h.cocycles.group = FgAbelianGroup::trivial();
    h.cocycles.inclusion = IntMatrix(0, 0);
    h.classes = quotient(FgAbelianGroup::trivial(), IntMatrix(0, 0));
    h.representatives = IntMatrix(0, 0);
    return h;
  }
  const FgAbelianGroup& c = cx.group(n);
  h.cocycles = kernel(cx.differential(n));
  IntMatrix boundaries(h.cocycles.group.num_generators(), 0);
  if (n > 0) {
    const IntMatrix prev = cx.differential(n - 1).matrix();
    boundaries.resize(h.cocycles.group.num_generators(), prev.cols());
    for (Eigen::Index j = 0; j < prev.cols(); ++j) {
      auto coords = h.cocycles.coordinates(prev.col(j));
      if (!coords) throw ValidationError("coboundary is not a cocycle at degree " + std::to_string(n));
      boundaries.col(j) = *coords;
    }
  }
  h.classes = quotient(h.cocycles.group, boundaries);
  h.group = h.classes.group;
  h.representatives = reduce_rows(c, h.cocycles.inclusion * h.classes.lifts);
  return h;
}

FgAbelianGroup cohomology(const AbCochainComplex& cx, int n) { return cohomology_data(cx, n).group; }

AbHom induced_map(const CohomologyGroup& from, const CohomologyGroup& to, const IntMatrix& cochain_map) {
  IntMatrix m(to.group.num_generators(), from.group.num_generators());
  for (int j = 0; j < from.group.num_generators(); ++j) m.col(j) = to.class_of(cochain_map * from.representatives.col(j));
  return AbHom(from.group, to.group, m);
}

}  // namespace xcomplex
