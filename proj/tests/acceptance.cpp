// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "extri/chain.hpp"
#include "extri/energy_order.hpp"
#include "extri/index_calc.hpp"
#include "extri/lin_triangle.hpp"
#include "extri/moduli_enum.hpp"
#include "extri/snf.hpp"

using namespace extri;

namespace {

// Time limits in seconds.
constexpr double kPoincareLimit = 1.0;
constexpr double kLinLimit = 30.0;
constexpr double kModuliLimit = 5.0;

constexpr int kLinInstances = 100;
constexpr int kFaults = 20;
constexpr std::size_t kMaxModuleRank = 12;  // at most 4 per grade, three grades
constexpr int kRandomLattice = 200;
constexpr int kSnfCases = 1000;
constexpr int kPiSeeds = 50;

struct Verdict {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Fraction-free determinant.
Integer det(IntMatrix m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = v / prev;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Verdict poincare() {
  Verdict v;
  auto out = cli::run("poincare", std::nullopt, {});
  if (out.exit_code != 0) v.fail("exit code " + std::to_string(out.exit_code));
  const auto& o = out.output;
  if (o.value("A3", "") != "(Z^3)_(0) + K_(1)") v.fail("A3 = " + o.value("A3", ""));
  if (o.value("A1", "") != "Z_(0) + G_(1)") v.fail("A1 = " + o.value("A1", ""));
  if (o.value("verdict", "") != "not an F2 L-space") v.fail("verdict = " + o.value("verdict", ""));
  if (o.value("torsion", "").find("nontrivial 2-group") == std::string::npos) v.fail("torsion = " + o.value("torsion", ""));
  return v;
}

Verdict lin_suite() {
  Verdict v;
  int faults = 0;
  for (std::uint64_t seed = 0; seed < kLinInstances; ++seed) {
    TriangleHypotheses h = generate_valid_instance(seed);
    std::string tag = "seed " + std::to_string(seed) + ": ";
    for (int i = 0; i < 3; ++i)
      if (h.dim(i) > kMaxModuleRank) v.fail(tag + "module too large");
    if (!verify_hypotheses(h).all_passed()) v.fail(tag + "hypotheses");
    if (!is_acyclic(build_total(h))) v.fail(tag + "total complex not acyclic");
    if (!build_delta(h).quasi_iso) v.fail(tag + "delta not a quasi-isomorphism");
    PhiCone cone = build_phi_cone(h);
    for (std::uint64_t p : {2u, 3u})
      if (!run_six_step_ss(cone, p).ok()) v.fail(tag + "six-step over F" + std::to_string(p));
    if (faults >= kFaults) continue;
    for (Fault f : all_faults()) {
      if (faults >= kFaults) break;
      // One fault kind per instance, cycling through the kinds.
      if (static_cast<std::size_t>(f) != seed % all_faults().size()) continue;
      auto fc = inject_fault(h, f, seed);
      if (!fc) continue;
      ++faults;
      auto got = verify_hypotheses(fc->data).failing();
      std::sort(got.begin(), got.end());
      auto want = fc->expected_failures;
      std::sort(want.begin(), want.end());
      if (got != want || want.empty()) v.fail(tag + fault_name(f) + " not detected by its check");
    }
  }
  if (faults < kFaults) v.fail("only " + std::to_string(faults) + " faults injected");
  return v;
}

Verdict index_arithmetic() {
  Verdict v;
  if (index_closed(ClosedPairTopology::from_chi_sigma(4, 0), 0) != -6) v.fail("S2xS2");
  auto eq = rp3_cylinder_indices(true, false, 50);
  for (std::size_t k = 0; k < eq.indices.size(); ++k)
    if (eq.indices[k] != 8 * eq.kappas[k] - 3) v.fail("equal limits");
  auto ne = rp3_cylinder_indices(false, false, 50);
  if (ne.modulus != 8 || ne.residue != 3) v.fail("unequal limits residue");
  for (const auto& i : ne.indices)
    if (((i % 8) + 8) % 8 != 3) v.fail("unequal limits");
  // Gluing along a limit with h0 = 1: 0 = 1 + Ind(A) + Ind(B) at (0, -1).
  if (glue_index(0, -1, FlatLimit{"c", 1, 0}) != 0) v.fail("0 = 1 + Ind(A) + Ind(B)");
  auto flat = s2xs1_breaking_bound(true), nonflat = s2xs1_breaking_bound(false);
  if (8 * flat.kappa != flat.index + 2 || 8 * nonflat.kappa != nonflat.index + 2) v.fail("8 kappa = Ind + 2");
  if (!nonflat.bound || *nonflat.bound != 6 || nonflat.index < 6) v.fail("non-flat bound");
  for (const auto& p : charge_index_scan(4))
    if (p.index != 8 * p.k0 + 4 * p.l0 - 1 || p.index < -1) v.fail("charge formula");
  auto m = charge_point(0, 0);
  if (m.index != -1 || m.kappa != q(1, 8)) v.fail("minimal pair");
  auto claims = cli::run("index", std::nullopt, {});
  if (claims.exit_code != 0 || !claims.output.value("ok", false)) v.fail("index claims report");
  return v;
}

LatticePoint pt(long a, long b) { return LatticePoint{Integer(a), Integer(b)}; }

// Plain scan of |a_i| <= B with B = ceil(max |c_i|) + ceil(sqrt(target)) + 1,
// in integers after clearing the offset denominators.
std::vector<LatticePoint> box_scan(const LatticeProblem& p) {
  double cmax = 0;
  long lcm = 1;
  for (const auto& c : p.offsets) {
    cmax = std::max(cmax, std::abs(c.get_d()));
    lcm = std::lcm(lcm, c.get_den().get_si());
  }
  long b = static_cast<long>(std::ceil(cmax) + std::ceil(std::sqrt(p.target.get_d()))) + 1;
  std::vector<LatticePoint> out;
  Rational want = p.target * lcm * lcm;
  if (want.get_den() != 1) return out;
  long goal = want.get_num().get_si();
  std::size_t n = p.offsets.size();
  std::vector<long> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = Rational(p.offsets[i] * lcm).get_num().get_si();
  std::vector<long> a(n, -b);
  while (true) {
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (lcm * a[i] - scaled[i]) * (lcm * a[i] - scaled[i]);
    if (s == goal) {
      LatticePoint v;
      for (long x : a) v.push_back(x);
      out.push_back(v);
    }
    std::size_t i = n;
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++a[i] <= b) break;
      a[i] = -b;
    }
  }
}

Verdict moduli() {
  Verdict v;
  ChargeFrame trivial, shifted;
  trivial.s = shifted.s = {-1, -1};
  trivial.t = {0, 0};
  shifted.t = {-1, 1};
  auto lhs = reducibles_with_charges(trivial, q(1, 8));
  auto rhs = reducibles_with_charges(shifted, q(1, 8));
  if (enumerate_reducibles(trivial.problem(q(1, 8))) != std::vector<LatticePoint>{pt(0, 0)}) v.fail("trivial frame");
  if (enumerate_reducibles(shifted.problem(q(1, 8))) != std::vector<LatticePoint>{pt(1, 0)}) v.fail("shifted frame");
  if (lhs.size() != 1 || lhs[0].k != 0 || lhs[0].l != 0) v.fail("charges (0,0)");
  if (rhs.size() != 1 || rhs[0].k != q(1, 2) || rhs[0].l != -1) v.fail("charges (1/2,-1)");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> n(1, 4), num(-12, 12), den(1, 4), tgt(0, 25 * 16);
  for (int t = 0; t < kRandomLattice; ++t) {
    LatticeProblem p;
    int k = n(rng);
    for (int i = 0; i < k; ++i) p.offsets.push_back(q(num(rng), den(rng)));
    if (t % 2 == 0) {
      Rational s = 0;
      for (const auto& c : p.offsets) {
        Rational x = Rational(num(rng) / 4) - c;
        s += x * x;
      }
      p.target = s <= 25 ? s : Rational(tgt(rng) / 16);
    } else {
      p.target = q(tgt(rng), 16);
    }
    if (enumerate_reducibles(p) != box_scan(p)) v.fail("random problem " + std::to_string(t));
  }
  return v;
}

Verdict snf_suite() {
  Verdict v;
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> dim(0, 8), entry(-9, 9), big(-1000000, 1000000);
  for (int t = 0; t < kSnfCases; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = t % 10 == 9 ? big(rng) : entry(rng);
    auto s = smith_normal_form(m);
    std::string tag = "case " + std::to_string(t) + ": ";
    if (s.U * m * s.V != s.D) v.fail(tag + "U M V != D");
    if (abs(det(s.U)) != 1 || abs(det(s.V)) != 1) v.fail(tag + "not unimodular");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j && s.D(i, j) != 0) v.fail(tag + "off-diagonal entry");
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0) v.fail(tag + "negative diagonal");
      if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) v.fail(tag + "zero before nonzero");
      if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) v.fail(tag + "divisibility");
    }
  }
  return v;
}

Verdict homology_oracle() {
  Verdict v;
  auto rp2 = ZComplex::checked(0, {{0, 1}, {1, 1}, {2, 1}}, {{2, IntMatrix{{2}}}});
  auto klein = ZComplex::checked(0, {{0, 1}, {1, 2}, {2, 1}}, {{2, IntMatrix{{0}, {2}}}});
  auto h = homology(rp2);
  if (h.at(0) != FgAbelianGroup(1, {}) || h.at(1) != FgAbelianGroup::cyclic(2) || !h.at(2).is_trivial())
    v.fail("RP2: " + h.to_string());
  h = homology(klein);
  if (h.at(0) != FgAbelianGroup(1, {}) || h.at(1) != FgAbelianGroup(1, {2}) || !h.at(2).is_trivial())
    v.fail("Klein bottle: " + h.to_string());
  for (int p = 2; p <= 7; ++p)
    for (int r = 1; r < p; ++r) {
      if (std::gcd(p, r) != 1) continue;
      // The cellular differentials of L(p, r) are 0, p, 0 whatever r is.
      auto lens = ZComplex::checked(0, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, {{2, IntMatrix{{p}}}});
      auto l = homology(lens);
      std::string tag = "L(" + std::to_string(p) + "," + std::to_string(r) + ")";
      if (l.at(0) != FgAbelianGroup(1, {}) || l.at(1) != FgAbelianGroup::cyclic(p) || !l.at(2).is_trivial() ||
          l.at(3) != FgAbelianGroup(1, {}))
        v.fail(tag + ": " + l.to_string());
      GradedGroup inst(2);
      inst.set(0, FgAbelianGroup(static_cast<unsigned>(p), {}));
      if (Integer(inst.euler_characteristic()) != l.at(1).order() || !is_l_space(inst, Field::prime(2)))
        v.fail(tag + ": chi bookkeeping");
    }
  return v;
}

Verdict pi_certificate() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < kPiSeeds; ++seed) {
    PiAlgebraDatum x = synthetic_pi_datum(seed, 1 + seed % 3, seed % 3);
    auto c = pi_combination_certificate(x);
    std::string tag = "seed " + std::to_string(seed) + ": ";
    if (!c.ok) {
      v.fail(tag + c.failure);
      continue;
    }
    LaurentMatrix want = -x.n_minus + x.n_plus * (LaurentPoly::T() + LaurentPoly::T_inv() - LaurentPoly(1));
    if (c.n != want) v.fail(tag + "N formula");
    LaurentMatrix id = LaurentMatrix::identity(x.size());
    LaurentMatrix p = id;
    for (unsigned k = 0; k < c.nilpotency_exponent; ++k) p = p * c.n;
    if (!p.is_zero()) v.fail(tag + "not nilpotent");
    if ((id + c.n) * c.inverse != id) v.fail(tag + "(Id + N) inverse != Id");
    if (!specialization_commutes(x, c)) v.fail(tag + "specialization");
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
    double limit;
  };
  std::vector<Criterion> all{
      {"1 poincare pipeline", poincare, kPoincareLimit},
      {"2 lin lemma suite", lin_suite, kLinLimit},
      {"3 index arithmetic", index_arithmetic, 0},
      {"4 moduli enumeration", moduli, kModuliLimit},
      {"5 snf property suite", snf_suite, 0},
      {"6 homology oracle", homology_oracle, 0},
      {"7 pi certificate", pi_certificate, 0},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) v.fail("took " + std::to_string(secs) + " s");
    std::printf("%s  %-22s %8.3f s%s%s\n", v.ok ? "PASS" : "FAIL", c.name, secs, v.ok ? "" : "  ", v.note.c_str());
    failed += !v.ok;
  }
  return failed ? 1 : 0;
}
