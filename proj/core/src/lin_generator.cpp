#include <algorithm>
#include <random>
#include <stdexcept>

#include "extri/lin_triangle.hpp"
#include "extri/snf.hpp"

namespace extri {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Z-graded complex flattened with basis sorted by grade.
struct GradedBase {
  IntMatrix d;
  std::vector<int> grade;

  IntMatrix parity() const {
    IntMatrix s(grade.size(), grade.size());
    for (std::size_t i = 0; i < grade.size(); ++i) s(i, i) = grade[i] % 2 == 0 ? 1 : -1;
    return s;
  }
};

// Random complex in grades 0..2 built from free generators and pairs
// x -> n y with n in {1, 2, 3}; acyclic_only keeps n = 1 and no free generators.
GradedBase random_base(Rng& rng, std::size_t max_rank, bool acyclic_only = false) {
  std::vector<int> target(3);
  for (auto& t : target) t = uniform(rng, 0, static_cast<int>(max_rank));
  std::vector<int> have(3, 0);
  struct Piece {
    int top;  // grade of x; -1 for a lone generator
    int grade;
    int n;
  };
  std::vector<Piece> pieces;
  for (int g = 2; g >= 0; --g) {
    while (have[g] < target[g]) {
      bool pair_ok = g >= 1 && have[g - 1] < static_cast<int>(max_rank);
      if (pair_ok && (acyclic_only || uniform(rng, 0, 1) == 0)) {
        pieces.push_back({g, g, acyclic_only ? 1 : uniform(rng, 1, 3)});
        ++have[g];
        ++have[g - 1];
      } else if (!acyclic_only) {
        pieces.push_back({-1, g, 0});
        ++have[g];
      } else {
        break;
      }
    }
  }
  // Lay out basis elements by grade.
  std::vector<std::pair<int, int>> elements;  // (grade, piece)
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].top >= 0) {
      elements.push_back({pieces[k].top, static_cast<int>(k)});
      elements.push_back({pieces[k].top - 1, static_cast<int>(k)});
    } else {
      elements.push_back({pieces[k].grade, static_cast<int>(k)});
    }
  }
  std::stable_sort(elements.begin(), elements.end(), [](auto a, auto b) { return a.first < b.first; });
  GradedBase out;
  out.d = IntMatrix(elements.size(), elements.size());
  for (const auto& e : elements) out.grade.push_back(e.first);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].top < 0) continue;
    std::size_t x = 0, y = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].second != static_cast<int>(k)) continue;
      if (elements[i].first == pieces[k].top) x = i;
      else y = i;
    }
    out.d(y, x) = pieces[k].n;
  }
  return out;
}

// Random unimodular P and its inverse. Row operations only mix indices whose
// class labels agree (pass all-zero labels for an unrestricted matrix).
std::pair<IntMatrix, IntMatrix> random_unimodular(Rng& rng, const std::vector<int>& cls, int steps) {
  std::size_t n = cls.size();
  IntMatrix p = IntMatrix::identity(n), q = IntMatrix::identity(n);
  if (n < 2) return {p, q};
  for (int s = 0; s < steps; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    if (i == j || cls[i] != cls[j]) continue;
    Integer k = uniform(rng, 0, 1) ? 1 : -1;
    // P <- E P, Q <- Q E^-1 where E adds k * row j to row i.
    p.add_row_multiple(i, j, k);
    q.add_col_multiple(j, i, -k);
  }
  return {p, q};
}

IntMatrix random_sparse(Rng& rng, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      int u = uniform(rng, 0, 5);
      if (u == 0) m(i, j) = 1;
      else if (u == 1) m(i, j) = -1;
    }
  return m;
}

IntMatrix random_nonzero(Rng& rng, std::size_t r, std::size_t c) {
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = random_sparse(rng, r, c);
    if (!m.is_zero()) return m;
  }
  IntMatrix m(r, c);
  m(0, 0) = 1;
  return m;
}

std::size_t i3(int i) { return static_cast<std::size_t>(((i % 3) + 3) % 3); }

IntMatrix bracket(const TriangleHypotheses& h, int from, int to, const IntMatrix& k) {
  return h.d[i3(to)] * k + k * h.d[i3(from)];
}

IntMatrix commutator(const TriangleHypotheses& h, int from, int to, const IntMatrix& k) {
  return h.d[i3(to)] * k - k * h.d[i3(from)];
}

void recompute_F(TriangleHypotheses& h) {
  for (int i = 0; i < 3; ++i)
    h.F[i3(i)] = commutator(h, i, i, h.G[i3(i)]) + h.f[i3(i + 2)] * h.H[i3(i)] - h.H[i3(i + 1)] * h.f[i3(i)];
}

TriangleHypotheses conjugate(const TriangleHypotheses& h, const std::array<std::pair<IntMatrix, IntMatrix>, 3>& pq) {
  TriangleHypotheses out = h;
  auto P = [&](int i) -> const IntMatrix& { return pq[i3(i)].first; };
  auto Q = [&](int i) -> const IntMatrix& { return pq[i3(i)].second; };
  for (int i = 0; i < 3; ++i) {
    std::size_t k = i3(i);
    out.d[k] = P(i) * h.d[k] * Q(i);
    out.f[k] = P(i + 1) * h.f[k] * Q(i);
    out.g[k] = P(i + 2) * h.g[k] * Q(i);
    out.H[k] = P(i + 2) * h.H[k] * Q(i);
    out.F[k] = P(i) * h.F[k] * Q(i);
    out.G[k] = P(i) * h.G[k] * Q(i);
    if (h.parity) (*out.parity)[k] = P(i) * (*h.parity)[k] * Q(i);
  }
  return out;
}

TriangleHypotheses random_conjugate(Rng& rng, const TriangleHypotheses& h) {
  std::array<std::pair<IntMatrix, IntMatrix>, 3> pq;
  for (int i = 0; i < 3; ++i) {
    std::size_t n = h.dim(i);
    pq[i3(i)] = random_unimodular(rng, std::vector<int>(n, 0), static_cast<int>(2 * n));
  }
  return conjugate(h, pq);
}

TriangleHypotheses attempt(Rng& rng, const GeneratorOptions& opt) {
  GradedBase b;
  do {
    b = random_base(rng, 1);
  } while (b.grade.empty());
  GradedBase extra = random_base(rng, opt.max_base_rank);

  // A = B + extra, f2 = lambda * inclusion.
  std::size_t nb = b.grade.size(), ne = extra.grade.size(), na = nb + ne;
  IntMatrix da = IntMatrix::direct_sum(b.d, extra.d);
  std::vector<int> ga = b.grade;
  ga.insert(ga.end(), extra.grade.begin(), extra.grade.end());
  IntMatrix f2(na, nb);
  int lambda = std::vector<int>{0, 0, 1, 2, -1}[static_cast<std::size_t>(uniform(rng, 0, 4))];
  for (std::size_t i = 0; i < nb; ++i) f2(i, i) = lambda;

  // Grade-preserving basis changes keep the parities diagonal.
  auto [pa, qa] = random_unimodular(rng, ga, static_cast<int>(3 * na));
  auto [pb, qb] = random_unimodular(rng, b.grade, static_cast<int>(3 * nb));
  da = pa * da * qa;
  IntMatrix db = pb * b.d * qb;
  f2 = pa * f2 * qb;
  IntMatrix sa(na, na);
  for (std::size_t i = 0; i < na; ++i) sa(i, i) = ga[i] % 2 == 0 ? 1 : -1;
  IntMatrix sb = b.parity();

  if (opt.perturb) {
    // Odd homotopy K : B_g -> A_{g+1} keeps f2 parity-even.
    IntMatrix k(na, nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        if (ga[i] == b.grade[j] + 1) k(i, j) = uniform(rng, -1, 1);
    f2 += da * k + k * db;
  }

  TriangleHypotheses h = rotation_instance(da, sa, db, sb, f2);
  if (!opt.perturb) return random_conjugate(rng, h);

  // Change f0, f1 within their homotopy classes.
  for (int i = 0; i < 2; ++i) {
    IntMatrix k = random_sparse(rng, h.dim(i + 1), h.dim(i));
    IntMatrix kb = bracket(h, i, i + 1, k);
    // f_i -> f_i + [K] shifts H_i by f_{i+1} K and H_{i-1} by K f_{i-1}.
    h.H[i3(i)] += h.f[i3(i + 1)] * k;
    h.H[i3(i - 1)] += k * h.f[i3(i - 1)];
    h.f[i3(i)] += kb;
  }

  // g0 and g2 away from zero through maps killed by f on both sides.
  {
    IntMatrix kb = integer_kernel(h.f[2]);
    IntMatrix lb = integer_left_kernel(h.f[2]);
    if (kb.cols() && lb.cols()) {
      IntMatrix m0 = kb * random_nonzero(rng, kb.cols(), lb.cols()) * lb.transpose();
      h.H[0] += m0;
      h.g[0] -= bracket(h, 0, 2, m0);
    }
    IntMatrix kb1 = integer_kernel(h.f[1]);
    IntMatrix lb1 = integer_left_kernel(h.f[1]);
    if (kb1.cols() && lb1.cols()) {
      IntMatrix m2 = kb1 * random_nonzero(rng, kb1.cols(), lb1.cols()) * lb1.transpose();
      h.H[2] += m2;
      h.g[2] -= bracket(h, 2, 1, m2);
    }
  }

  for (int i = 0; i < 3; ++i) h.H[i3(i)] += commutator(h, i, i + 2, random_sparse(rng, h.dim(i + 2), h.dim(i)));
  for (int i = 0; i < 3; ++i) h.G[i3(i)] = random_sparse(rng, h.dim(i), h.dim(i));
  recompute_F(h);
  return random_conjugate(rng, h);
}

}  // namespace

TriangleHypotheses rotation_instance(const IntMatrix& a, const IntMatrix& s_a, const IntMatrix& b,
                                     const IntMatrix& s_b, const IntMatrix& f2) {
  std::size_t na = a.rows(), nb = b.rows();
  TriangleHypotheses h;
  h.d[0] = a;
  h.d[2] = b;
  h.d[1] = cone_differential(a, b, f2, -1);
  IntMatrix ia = IntMatrix::identity(na), ib = IntMatrix::identity(nb);
  h.f[0] = IntMatrix::vstack(ia, IntMatrix(nb, na));
  h.f[1] = IntMatrix::hstack(IntMatrix(nb, na), s_b);
  h.f[2] = f2;
  h.H[0] = IntMatrix(nb, na);
  h.H[1] = IntMatrix::hstack(s_a, IntMatrix(na, nb));
  h.H[2] = IntMatrix::vstack(IntMatrix(na, nb), ib);
  for (int i = 0; i < 3; ++i) {
    h.g[i3(i)] = IntMatrix(h.dim(i + 2), h.dim(i));
    h.G[i3(i)] = IntMatrix(h.dim(i), h.dim(i));
  }
  h.F[0] = -s_a;
  h.F[1] = IntMatrix::direct_sum(s_a, IntMatrix(-s_b));
  h.F[2] = s_b;
  h.parity = std::array<IntMatrix, 3>{s_a, IntMatrix::direct_sum(s_a, IntMatrix(-s_b)), s_b};
  return h;
}

TriangleHypotheses generate_valid_instance(std::uint64_t seed, const GeneratorOptions& opt) {
  Rng rng(seed);
  for (int a = 0; a < opt.max_attempts; ++a) {
    TriangleHypotheses h = attempt(rng, opt);
    if (verify_hypotheses(h).all_passed()) return h;
  }
  throw std::runtime_error("generator exhausted its retry budget");
}

TriangleHypotheses non_quasi_iso_instance(std::uint64_t seed) {
  Rng rng(seed);
  GradedBase c0;
  do {
    c0 = random_base(rng, 2);
  } while (homology(ZComplex::differential_module(c0.d)).is_trivial());
  GradedBase c1, c2;
  do {
    c1 = random_base(rng, 2, true);
  } while (c1.grade.empty());
  do {
    c2 = random_base(rng, 2, true);
  } while (c2.grade.empty());
  TriangleHypotheses h;
  h.d = {c0.d, c1.d, c2.d};
  for (int i = 0; i < 3; ++i) {
    h.f[i3(i)] = IntMatrix(h.dim(i + 1), h.dim(i));
    h.g[i3(i)] = IntMatrix(h.dim(i + 2), h.dim(i));
    h.H[i3(i)] = IntMatrix(h.dim(i + 2), h.dim(i));
    h.F[i3(i)] = IntMatrix(h.dim(i), h.dim(i));
    h.G[i3(i)] = IntMatrix(h.dim(i), h.dim(i));
  }
  h.parity = std::array<IntMatrix, 3>{c0.parity(), c1.parity(), c2.parity()};
  return random_conjugate(rng, h);
}

std::vector<Fault> all_faults() {
  return {Fault::PerturbG0,    Fault::PerturbG2,    Fault::NonzeroG1, Fault::PerturbGMap0, Fault::PerturbGMap1,
          Fault::PerturbGMap2, Fault::ShiftF0,      Fault::ShiftF1,   Fault::ShiftF2};
}

std::string fault_name(Fault f) {
  switch (f) {
    case Fault::PerturbG0: return "perturb_g0";
    case Fault::PerturbG2: return "perturb_g2";
    case Fault::NonzeroG1: return "nonzero_g1";
    case Fault::PerturbGMap0: return "perturb_G0";
    case Fault::PerturbGMap1: return "perturb_G1";
    case Fault::PerturbGMap2: return "perturb_G2";
    case Fault::ShiftF0: return "shift_F0";
    case Fault::ShiftF1: return "shift_F1";
    case Fault::ShiftF2: return "shift_F2";
  }
  return "unknown";
}

std::optional<FaultCase> inject_fault(const TriangleHypotheses& h, Fault fault, std::uint64_t seed) {
  Rng rng(seed);
  FaultCase fc{h, {}};
  auto& x = fc.data;
  auto g_fault = [&](int i) -> bool {
    if (h.dim(i) == 0 || h.dim(i + 2) == 0) return false;
    x.g[i3(i)] += random_nonzero(rng, h.dim(i + 2), h.dim(i));
    return true;
  };
  // Y with d Y - Y d != 0, or nothing.
  auto commutator_shift = [&](int i) -> std::optional<IntMatrix> {
    std::size_t n = h.dim(i);
    if (n == 0 || h.d[i3(i)].is_zero()) return std::nullopt;
    for (int t = 0; t < 100; ++t) {
      IntMatrix y = random_nonzero(rng, n, n);
      IntMatrix c = commutator(h, i, i, y);
      if (!c.is_zero()) return y;
    }
    return std::nullopt;
  };
  switch (fault) {
    case Fault::PerturbG0:
      if (!g_fault(0)) return std::nullopt;
      fc.expected_failures = {"null_homotopy_0"};
      break;
    case Fault::PerturbG2:
      if (!g_fault(2)) return std::nullopt;
      fc.expected_failures = {"null_homotopy_2"};
      break;
    case Fault::NonzeroG1:
      if (!g_fault(1)) return std::nullopt;
      fc.expected_failures = {"null_homotopy_1", "g1_zero"};
      break;
    case Fault::PerturbGMap0:
    case Fault::PerturbGMap1:
    case Fault::PerturbGMap2: {
      int i = static_cast<int>(fault) - static_cast<int>(Fault::PerturbGMap0);
      auto y = commutator_shift(i);
      if (!y) return std::nullopt;
      x.G[i3(i)] += *y;
      fc.expected_failures = {"homotopy_identity_" + std::to_string(i)};
      break;
    }
    case Fault::ShiftF0:
    case Fault::ShiftF1:
    case Fault::ShiftF2: {
      int i = static_cast<int>(fault) - static_cast<int>(Fault::ShiftF0);
      auto y = commutator_shift(i);
      if (!y) return std::nullopt;
      x.F[i3(i)] += commutator(h, i, i, *y);
      fc.expected_failures = {"homotopy_identity_" + std::to_string(i)};
      break;
    }
  }
  return fc;
}

}  // namespace extri
