#include "xcomplex/local_cohomology.hpp"

namespace xcomplex {

LocalSystem LocalSystem::from_labels(const SimplicialSet& x, const PiModule& m, std::vector<int> labels) {
  if (static_cast<int>(labels.size()) != x.count(1)) throw ValidationError("local system needs one label per edge");
  for (int l : labels)
    if (l < 0 || l >= m.pi().order()) throw ValidationError("edge label is not an element of pi");
  LocalSystem s;
  s.a_ = m.module();
  s.pi_module_ = m;
  s.labels_ = std::move(labels);
  for (int l : s.labels_) s.twists_.push_back(m.action(l).matrix());
  s.validate(x);
  return s;
}

LocalSystem LocalSystem::from_twists(const SimplicialSet& x, FgAbelianGroup a, std::vector<IntMatrix> twists) {
  if (static_cast<int>(twists.size()) != x.count(1)) throw ValidationError("local system needs one twist per edge");
  LocalSystem s;
  s.a_ = std::move(a);
  s.twists_ = std::move(twists);
  s.validate(x);
  return s;
}

LocalSystem LocalSystem::constant(const SimplicialSet& x, FgAbelianGroup a) {
  const int k = a.num_generators();
  return from_twists(x, std::move(a), std::vector<IntMatrix>(x.count(1), IntMatrix::Identity(k, k)));
}

IntMatrix LocalSystem::transport(const SimplexRef& edge) const {
  if (edge.degenerate()) return IntMatrix::Identity(a_.num_generators(), a_.num_generators());
  return twists_.at(edge.id);
}

int LocalSystem::label(const SimplexRef& edge) const {
  if (edge.degenerate()) return pi_module().pi().identity();
  return labels_.at(edge.id);
}

LocalSystem LocalSystem::pullback(const SimplicialSet& y, const SimplicialMap& f) const {
  std::vector<IntMatrix> twists;
  std::vector<int> labels;
  for (int e = 0; e < y.count(1); ++e) {
    SimplexRef img = f.apply(SimplexRef::nondegenerate(1, e));
    twists.push_back(transport(img));
    if (has_labels()) labels.push_back(label(img));
  }
  if (has_labels()) return from_labels(y, pi_module(), std::move(labels));
  return from_twists(y, a_, std::move(twists));
}

void LocalSystem::validate(const SimplicialSet& x) const {
  if (static_cast<int>(twists_.size()) != x.count(1)) throw ValidationError("local system has the wrong number of edges");
  for (const auto& t : twists_)
    if (!AbHom(a_, a_, t).is_automorphism()) throw ValidationError("edge twist is not an automorphism");
  for (int c = 0; c < x.count(2); ++c) {
    SimplexRef s = SimplexRef::nondegenerate(2, c);
    SimplexRef e01 = x.face(s, 2), e12 = x.face(s, 0), e02 = x.face(s, 1);
    if (has_labels()) {
      const FiniteGroup& pi = pi_module().pi();
      if (pi.mul(label(e01), label(e12)) != label(e02))
        throw ValidationError("edge labels fail the cocycle condition on 2-simplex " + std::to_string(c));
    }
    if (AbHom(a_, a_, transport(e01) * transport(e12)) != AbHom(a_, a_, transport(e02)))
      throw ValidationError("edge twists fail the cocycle condition on 2-simplex " + std::to_string(c));
  }
}

FgAbelianGroup cochain_group(const SimplicialSet& x, const LocalSystem& l, int n) {
  std::vector<Integer> orders;
  for (int i = 0; i < x.count(n); ++i)
    for (Integer o : l.module().orders()) orders.push_back(o);
  return FgAbelianGroup(orders);
}

AbHom coboundary(const SimplicialSet& x, const LocalSystem& l, int n) {
  const int k = l.module().num_generators();
  FgAbelianGroup from = cochain_group(x, l, n), to = cochain_group(x, l, n + 1);
  IntMatrix m = IntMatrix::Zero(to.num_generators(), from.num_generators());
  for (int s = 0; s < x.count(n + 1); ++s) {
    SimplexRef ref = SimplexRef::nondegenerate(n + 1, s);
    for (int j = 0; j <= n + 1; ++j) {
      SimplexRef f = x.face(ref, j);
      if (f.degenerate()) continue;
      IntMatrix block = j == 0 ? l.transport(x.edge(ref, 0, 1))
                               : IntMatrix(IntMatrix::Identity(k, k) * (j % 2 == 0 ? 1 : -1));
      m.block(s * k, f.id * k, k, k) += block;
    }
  }
  return AbHom(from, to, m);
}

AbCochainComplex local_cochain_complex(const SimplicialSet& x, const LocalSystem& l) {
  l.validate(x);
  const int top = std::max(x.dimension(), 0);
  std::vector<FgAbelianGroup> groups;
  std::vector<AbHom> diffs;
  for (int n = 0; n <= top; ++n) groups.push_back(cochain_group(x, l, n));
  for (int n = 0; n < top; ++n) diffs.push_back(coboundary(x, l, n));
  return AbCochainComplex(groups, diffs);
}

FgAbelianGroup local_h(const SimplicialSet& x, const LocalSystem& l, int n) {
  return cohomology(local_cochain_complex(x, l), n);
}

FreeMorphism classifying_map(const FreeCrossedComplex& fx, const LocalSystem& l) {
  if (!l.has_labels()) throw ValidationError("the classifying map needs pi-labelled edges");
  FreeMorphism theta;
  theta.images.resize(fx.top() + 1);
  for (int n = 0; n <= fx.top(); ++n) theta.images[n].assign(fx.num_cells(n), 0);
  if (fx.top() >= 1) theta.images[1] = l.labels();
  return theta;
}

HomClassesResult hom_classes_over(const SimplicialSet& x, const LocalSystem& l, int n) {
  if (!l.has_labels()) throw ValidationError("hom_classes_over needs a finite pi-module with edge labels");
  const PiModule& m = l.pi_module();
  if (!m.module().is_finite()) throw ValidationError("hom_classes_over needs a finite module");
  FreeCrossedComplex fx = free_pi(x);
  ChiPhi target = chi_phi(m, n);
  FreeMorphism theta = classifying_map(fx, l);
  auto maps = enumerate_morphisms(fx, target.complex, over_constraints(fx, target.complex, target.p, theta));
  auto classes = homotopy_classes_over(fx, target.complex, target.p, maps);
  HomClassesResult out;
  out.num_maps = static_cast<int>(maps.size());
  out.representatives = std::move(classes.representatives);
  return out;
}

}  // namespace xcomplex
