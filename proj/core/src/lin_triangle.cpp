#include "extri/lin_triangle.hpp"

#include <stdexcept>

#include "extri/nilpotent.hpp"

namespace extri {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(((i % 3) + 3) % 3); }

void expect_shape(const IntMatrix& m, std::size_t r, std::size_t c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw std::invalid_argument(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(r) + "x" + std::to_string(c));
}

HypothesisCheck make_check(std::string name, const IntMatrix& residual, std::string detail = {}) {
  HypothesisCheck c;
  c.name = std::move(name);
  c.passed = residual.is_zero();
  c.residual = residual;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

void TriangleHypotheses::validate_shapes() const {
  for (int i = 0; i < 3; ++i) {
    std::size_t n = dim(i), n1 = dim(i + 1), n2 = dim(i + 2);
    std::string s = std::to_string(i);
    expect_shape(d[idx(i)], n, n, "d" + s);
    expect_shape(f[idx(i)], n1, n, "f" + s);
    expect_shape(g[idx(i)], n2, n, "g" + s);
    expect_shape(H[idx(i)], n2, n, "H" + s);
    expect_shape(F[idx(i)], n, n, "F" + s);
    expect_shape(G[idx(i)], n, n, "G" + s);
    if (parity) expect_shape((*parity)[idx(i)], n, n, "parity" + s);
  }
}

bool HypothesisReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<std::string> HypothesisReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

const HypothesisCheck& HypothesisReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

std::optional<int> map_commutation_sign(const IntMatrix& d, const IntMatrix& map) {
  IntMatrix a = d * map, b = map * d;
  if ((a + b).is_zero()) return 1;
  if ((a - b).is_zero()) return -1;
  return std::nullopt;
}

HypothesisReport verify_hypotheses(const TriangleHypotheses& h, QuasiIsoMode mode) {
  h.validate_shapes();
  HypothesisReport rep;
  const auto& d = h.d;
  for (int i = 0; i < 3; ++i)
    rep.checks.push_back(make_check("complex_" + std::to_string(i), d[idx(i)] * d[idx(i)]));
  for (int i = 0; i < 3; ++i)
    rep.checks.push_back(
        make_check("chain_map_" + std::to_string(i), d[idx(i + 1)] * h.f[idx(i)] - h.f[idx(i)] * d[idx(i)]));
  for (int i = 0; i < 3; ++i) {
    IntMatrix lhs = d[idx(i + 2)] * h.H[idx(i)] + h.H[idx(i)] * d[idx(i)];
    IntMatrix rhs = h.f[idx(i + 1)] * h.f[idx(i)] - h.g[idx(i)];
    rep.checks.push_back(make_check("null_homotopy_" + std::to_string(i), lhs - rhs));
  }
  rep.checks.push_back(make_check("g1_zero", h.g[1]));
  for (int i = 0; i < 3; ++i) {
    IntMatrix lhs = d[idx(i)] * h.G[idx(i)] - h.G[idx(i)] * d[idx(i)];
    IntMatrix rhs = h.F[idx(i)] - (h.f[idx(i + 2)] * h.H[idx(i)] - h.H[idx(i + 1)] * h.f[idx(i)]);
    rep.checks.push_back(make_check("homotopy_identity_" + std::to_string(i), lhs - rhs));
  }
  for (int i = 0; i < 3; ++i) {
    HypothesisCheck c;
    c.name = "quasi_iso_" + std::to_string(i);
    const IntMatrix& fm = h.F[idx(i)];
    const IntMatrix& di = d[idx(i)];
    auto sign = map_commutation_sign(di, fm);
    if (!sign) {
      c.passed = false;
      c.residual = di * fm + fm * di;
      c.detail = "F is neither a chain map nor an anti-chain map";
    } else if (mode == QuasiIsoMode::Homology) {
      IntMatrix cone = cone_differential(di, di, fm, *sign > 0 ? 1 : -1);
      FgAbelianGroup hc = module_homology(cone);
      c.passed = hc.is_trivial();
      c.detail = std::string(*sign > 0 ? "anti-chain" : "chain") + " cone homology " + hc.to_string();
    } else {
      IntMatrix id = IntMatrix::identity(fm.rows());
      bool ok = false;
      for (int eps : {1, -1}) {
        IntMatrix n = (eps > 0 ? fm : IntMatrix(-fm)) - id;
        if (nilpotency_exponent(n)) {
          ok = true;
          c.detail = std::string("F = ") + (eps > 0 ? "" : "-") + "(Id + N), N nilpotent";
          break;
        }
      }
      c.passed = ok;
      if (!ok) c.detail = "no +-(Id + nilpotent) certificate";
    }
    rep.checks.push_back(c);
  }
  return rep;
}

std::array<std::size_t, 3> total_block_sizes(const TriangleHypotheses& h) {
  return {h.dim(0), h.dim(2), h.dim(1)};
}

IntMatrix build_total(const TriangleHypotheses& h) {
  h.validate_shapes();
  auto sz = total_block_sizes(h);
  std::vector<std::size_t> s(sz.begin(), sz.end());
  return block_matrix<Integer>({{h.d[0], h.f[2], -h.H[1]},
                                {IntMatrix(), -h.d[2], h.f[1]},
                                {IntMatrix(), IntMatrix(), h.d[1]}},
                               s, s);
}

IntMatrix phi_block_formula(const TriangleHypotheses& h) {
  auto sz = total_block_sizes(h);
  std::vector<std::size_t> s(sz.begin(), sz.end());
  const auto &f = h.f, &H = h.H, &G = h.G;
  IntMatrix a01 = -(f[2] * G[2]) - H[1] * H[2] - G[0] * f[2];
  IntMatrix a02 = G[0] * H[1] - H[1] * G[1];
  IntMatrix a12 = f[1] * G[1] + H[0] * H[1] + G[2] * f[1];
  return block_matrix<Integer>({{h.F[0], a01, a02}, {h.g[0], h.F[2], a12}, {IntMatrix(), -h.g[2], h.F[1]}}, s, s);
}

PhiCone build_phi_cone(const TriangleHypotheses& h) {
  PhiCone pc;
  pc.total = build_total(h);
  auto sz = total_block_sizes(h);
  std::vector<std::size_t> s(sz.begin(), sz.end());
  pc.G = block_matrix<Integer>({{h.G[0], IntMatrix(), IntMatrix()},
                                {h.H[0], -h.G[2], IntMatrix()},
                                {h.f[0], h.H[2], h.G[1]}},
                               s, s);
  pc.phi = pc.total * pc.G - pc.G * pc.total;
  pc.M = cone_differential(pc.total, pc.total, pc.phi, 1);
  pc.columns = {sz[0], sz[1], sz[2], sz[0], sz[1], sz[2]};
  std::vector<int> levels;
  for (int j = 0; j < 6; ++j) levels.insert(levels.end(), pc.columns[static_cast<std::size_t>(j)], j);
  pc.filtration = Filtration{ZComplex::differential_module(pc.M), {{0, levels}}};
  return pc;
}

SixStepReport run_six_step_ss(const PhiCone& cone, std::uint64_t p) {
  SixStepReport rep;
  rep.ss = spectral_sequence(cone.filtration, p);
  const auto& e1 = rep.ss.page(1);
  const auto& e2 = rep.ss.page(2);
  const auto& e3 = rep.ss.page(3);
  const auto& e4 = rep.ss.page(4);
  rep.d1_cross_zero = e1.d_rank(3) == 0;
  rep.d2_columns_zero = e2.d_rank(3) == 0 && e2.d_rank(4) == 0;
  rep.d3_isomorphisms = true;
  for (int s = 3; s <= 5; ++s)
    if (e3.d_rank(s) != e3.dim(s) || e3.d_rank(s) != e3.dim(s - 3)) rep.d3_isomorphisms = false;
  rep.e4_zero = e4.total() == 0;
  return rep;
}

DeltaReport build_delta(const TriangleHypotheses& h) {
  h.validate_shapes();
  DeltaReport rep;
  rep.delta = IntMatrix::vstack(-h.H[1], h.f[1]);
  rep.cone_f2 = cone_differential(h.d[0], h.d[2], h.f[2], -1);
  rep.anti_chain = (rep.cone_f2 * rep.delta + rep.delta * h.d[1]).is_zero();
  if (rep.anti_chain) rep.quasi_iso = is_acyclic(cone_differential(rep.cone_f2, h.d[1], rep.delta, 1));
  return rep;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

IntMatrix tensor_differential(const IntMatrix& d_a, const IntMatrix& s_a, const IntMatrix& d_b) {
  return kronecker(d_a, IntMatrix::identity(d_b.rows())) + kronecker(s_a, d_b);
}

Filtration iterated_cone_filtration(const std::vector<TriangleHypotheses>& hs) {
  if (hs.empty()) throw std::invalid_argument("iterated cone of an empty list");
  IntMatrix d, s;
  std::vector<int> levels;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    const auto& h = hs[j];
    h.validate_shapes();
    IntMatrix cone = cone_differential(h.d[0], h.d[2], h.f[2], -1);
    std::vector<int> lv(h.dim(0), 0);
    lv.insert(lv.end(), h.dim(2), 1);
    bool need_parity = j + 1 < hs.size();
    IntMatrix par;
    if (need_parity) {
      if (!h.parity) throw std::invalid_argument("cones are not composable: missing parity");
      const auto& p = *h.parity;
      par = IntMatrix::direct_sum(p[0], -p[2]);
      IntMatrix id = IntMatrix::identity(par.rows());
      if (par * par != id || !(par * cone + cone * par).is_zero())
        throw std::invalid_argument("cones are not composable: parity does not anti-commute with the cone");
    }
    if (j == 0) {
      d = cone;
      s = par;
      levels = lv;
    } else {
      IntMatrix nd = tensor_differential(d, s, cone);
      std::vector<int> nl;
      nl.reserve(levels.size() * lv.size());
      for (int a : levels)
        for (int b : lv) nl.push_back(a + b);
      if (need_parity) s = kronecker(s, par);
      d = nd;
      levels = nl;
    }
  }
  return Filtration{ZComplex::differential_module(d), {{0, levels}}};
}

}  // namespace extri
