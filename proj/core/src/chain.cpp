#include "extri/chain.hpp"

#include <set>

#include "extri/snf.hpp"

namespace extri {

HomotopyCheck verify_homotopy(const ZChainMap& h, const ZChainMap& a, const ZChainMap& b, int eps) {
  if (a.degree != b.degree || h.degree != a.degree + 1)
    throw std::invalid_argument("homotopy degree must exceed the map degree by one");
  HomotopyCheck out;
  for (const auto& [g, n] : a.source.ranks()) {
    IntMatrix lhs = a.target.differential(g + h.degree) * h.block(g);
    IntMatrix tail = h.block(g - 1) * a.source.differential(g);
    if (eps > 0)
      lhs += tail;
    else
      lhs -= tail;
    IntMatrix res = lhs - (a.block(g) - b.block(g));
    if (!res.is_zero()) out.residuals[g] = res;
  }
  out.ok = out.residuals.empty();
  return out;
}

GradedGroup homology(const ZComplex& c) {
  if (!c.squares_to_zero()) throw std::invalid_argument("homology of a non-complex");
  std::map<int, SmithDecomposition> snf;
  auto snf_at = [&](int g) -> const SmithDecomposition& {
    int k = c.normalize(g);
    auto it = snf.find(k);
    if (it == snf.end()) it = snf.emplace(k, smith_normal_form(c.differential(k))).first;
    return it->second;
  };
  GradedGroup out(c.modulus());
  for (const auto& [g, n] : c.ranks()) {
    const auto& out_d = snf_at(g);
    const auto& in_d = snf_at(g + 1);
    std::size_t free_rank = n - out_d.rank() - in_d.rank();
    std::vector<Integer> torsion;
    for (const auto& x : in_d.diagonal())
      if (sgn(x) != 0 && x != 1) torsion.push_back(x);
    out.set(g, FgAbelianGroup(static_cast<unsigned>(free_rank), torsion));
  }
  return out;
}

FgAbelianGroup module_homology(const IntMatrix& d) {
  return homology(ZComplex::differential_module(d)).at(0);
}

bool is_acyclic(const IntMatrix& d) { return module_homology(d).is_trivial(); }

int FpComplex::normalize(int g) const {
  if (modulus == 0) return g;
  return ((g % modulus) + modulus) % modulus;
}

std::size_t FpComplex::rank(int g) const {
  auto it = ranks.find(normalize(g));
  return it == ranks.end() ? 0 : it->second;
}

ModpMatrix FpComplex::differential(int g) const {
  int k = normalize(g);
  auto it = differentials.find(k);
  if (it != differentials.end()) return it->second;
  return ModpMatrix(prime, rank(k - 1), rank(k));
}

FpComplex reduce_mod_p(const ZComplex& c, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("reduction needs a prime");
  FpComplex out{p, c.modulus(), c.ranks(), {}};
  for (const auto& [g, d] : c.differentials()) out.differentials.emplace(g, ModpMatrix::reduce(d, p));
  return out;
}

FpComplex specialize_mod_p(const LaurentComplex& c, std::uint64_t p, std::uint64_t unit) {
  if (!is_prime(p)) throw std::invalid_argument("specialization needs a prime");
  FpComplex out{p, c.modulus(), c.ranks(), {}};
  for (const auto& [g, d] : c.differentials()) out.differentials.emplace(g, ModpMatrix::specialize(d, p, unit));
  return out;
}

std::map<int, std::uint64_t> homology_dims(const FpComplex& c) {
  std::map<int, std::uint64_t> out;
  for (const auto& [g, n] : c.ranks) {
    std::size_t r_out = c.differential(g).rank();
    std::size_t r_in = c.differential(g + 1).rank();
    out[g] = n - r_out - r_in;
  }
  return out;
}

std::map<int, std::uint64_t> homology_dims(const ZComplex& c, Field k) {
  if (k.characteristic != 0) return homology_dims(reduce_mod_p(c, k.characteristic));
  std::map<int, std::uint64_t> out;
  GradedGroup h = homology(c);
  for (const auto& [g, n] : c.ranks()) out[g] = h.at(g).rank();
  return out;
}

LaurentComplex extend_scalars(const ZComplex& c) {
  std::map<int, LaurentMatrix> d;
  for (const auto& [g, m] : c.differentials()) d.emplace(g, extend_scalars(m));
  return LaurentComplex(c.modulus(), c.ranks(), d);
}

ZComplex specialize_at_one(const LaurentComplex& c) {
  std::map<int, IntMatrix> d;
  for (const auto& [g, m] : c.differentials()) d.emplace(g, eval_at_one(m));
  return ZComplex(c.modulus(), c.ranks(), d);
}

Cone mapping_cone(const ZChainMap& f) {
  f.validate();
  if (f.degree != 0) throw std::invalid_argument("mapping cone needs a degree-0 map");
  if (!f.is_chain_map()) throw std::invalid_argument("mapping cone of a non-chain map");
  const ZComplex& a = f.source;
  const ZComplex& b = f.target;
  int mod = a.modulus();
  auto norm = [&](int g) { return b.normalize(g); };

  std::set<int> grades;
  for (const auto& [g, n] : b.ranks()) grades.insert(norm(g));
  for (const auto& [g, n] : a.ranks()) grades.insert(norm(g + 1));

  std::map<int, std::size_t> ranks;
  for (int g : grades) ranks[g] = b.rank(g) + a.rank(g - 1);

  std::map<int, IntMatrix> d;
  for (int g : grades) {
    std::size_t rb = b.rank(g), ra = a.rank(g - 1);
    std::size_t tb = b.rank(g - 1), ta = a.rank(g - 2);
    IntMatrix m = block_matrix<Integer>({{b.differential(g), f.block(g - 1)}, {IntMatrix(), -a.differential(g - 1)}},
                                        {tb, ta}, {rb, ra});
    d.emplace(g, m);
  }
  ZComplex cone(mod, ranks, d);

  ZChainMap inc{b, cone, 0, {}};
  ZChainMap proj{cone, a, -1, {}};
  for (int g : grades) {
    std::size_t rb = b.rank(g), ra = a.rank(g - 1);
    IntMatrix i(rb + ra, rb);
    for (std::size_t k = 0; k < rb; ++k) i(k, k) = 1;
    if (rb) inc.blocks.emplace(g, i);
    IntMatrix p(ra, rb + ra);
    for (std::size_t k = 0; k < ra; ++k) p(k, rb + k) = 1;
    if (ra) proj.blocks.emplace(g, p);
  }
  return {cone, inc, proj};
}

IntMatrix cone_differential(const IntMatrix& d_target, const IntMatrix& d_source, const IntMatrix& f, int sign) {
  if (!d_target.is_square() || !d_source.is_square() || f.rows() != d_target.rows() || f.cols() != d_source.rows())
    throw std::invalid_argument("cone shape mismatch");
  IntMatrix ds = sign > 0 ? d_source : IntMatrix(-d_source);
  return block_matrix<Integer>({{d_target, f}, {IntMatrix(), ds}}, {d_target.rows(), d_source.rows()},
                               {d_target.cols(), d_source.cols()});
}

}  // namespace extri
