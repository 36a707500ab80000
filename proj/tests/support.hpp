#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing here
// calls into the library's own search routines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "extri/abgroup.hpp"
#include "extri/matrix.hpp"

namespace extri::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

// Product of elementary row operations; determinant +-1 by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return rng() % 2 ? u : IntMatrix(-u);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int k = mult(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

inline IntMatrix submatrix(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1} where
// D_k is the gcd of all k x k minors.
inline std::vector<Integer> determinantal_invariants(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Integer d = determinant(submatrix(m, r, c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// --- explicit finite abelian groups ------------------------------------------

// Z/n1 x ... x Z/nk with elements as mixed-radix tuples, encoded as indices.
struct ExplicitGroup {
  std::vector<long> orders;

  long size() const {
    long s = 1;
    for (long n : orders) s *= n;
    return s;
  }
  std::vector<long> decode(long x) const {
    std::vector<long> v(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      v[i] = x % orders[i];
      x /= orders[i];
    }
    return v;
  }
  long encode(const std::vector<long>& v) const {
    long x = 0, m = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      x += (((v[i] % orders[i]) + orders[i]) % orders[i]) * m;
      m *= orders[i];
    }
    return x;
  }
  long add(long a, long b) const {
    auto u = decode(a), v = decode(b);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return encode(u);
  }
  long scale(long k, long a) const {
    auto u = decode(a);
    for (auto& x : u) x *= k;
    return encode(u);
  }
};

inline ExplicitGroup explicit_group(const FgAbelianGroup& g) {
  ExplicitGroup e;
  for (const auto& n : g.invariant_factors()) e.orders.push_back(n.get_si());
  return e;
}

// A finite abelian group is determined by its order signature: for each d,
// the number of x with d x = 0. Signatures here run over d = 1..window.
using OrderSignature = std::vector<long>;

// Subgroups of a small group, as membership masks.
inline std::vector<std::vector<char>> all_subgroups(const ExplicitGroup& g) {
  long n = g.size();
  std::set<std::vector<char>> seen;
  std::vector<std::vector<char>> frontier;
  std::vector<char> triv(static_cast<std::size_t>(n), 0);
  triv[0] = 1;
  seen.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (long x = 0; x < n; ++x) {
      if (cur[static_cast<std::size_t>(x)]) continue;
      std::vector<char> next = cur;
      std::vector<long> members;
      for (long y = 0; y < n; ++y)
        if (next[static_cast<std::size_t>(y)]) members.push_back(y);
      bool grew = true;
      std::vector<long> gens = members;
      gens.push_back(x);
      while (grew) {
        grew = false;
        std::vector<long> now;
        for (long y = 0; y < n; ++y)
          if (next[static_cast<std::size_t>(y)]) now.push_back(y);
        for (long a : now)
          for (long b : gens) {
            long s = g.add(a, b);
            if (!next[static_cast<std::size_t>(s)]) {
              next[static_cast<std::size_t>(s)] = 1;
              grew = true;
            }
          }
      }
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

// Invariant factor lists n1 | n2 | ... with product n (all abelian groups of order n).
inline void factor_lists(long n, long last, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (n == 1) {
    out.push_back(cur);
    return;
  }
  // Build from the largest factor down: each new factor divides the previous.
  for (long d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    if (last != 0 && last % d != 0) continue;
    long rest = n / d;
    // Remaining factors must divide d.
    long r = rest;
    bool ok = true;
    for (long q = 2; q <= r; ++q)
      while (r % q == 0) {
        if (d % q != 0) ok = false;
        r /= q;
      }
    if (!ok) continue;
    cur.push_back(d);
    factor_lists(rest, d, cur, out);
    cur.pop_back();
  }
}

inline std::vector<FgAbelianGroup> brute_groups_of_order(long n) {
  std::vector<std::vector<long>> lists;
  std::vector<long> cur;
  factor_lists(n, 0, cur, lists);
  std::set<std::vector<Integer>> uniq;
  std::vector<FgAbelianGroup> out;
  for (auto l : lists) {
    std::vector<Integer> f(l.begin(), l.end());
    FgAbelianGroup g(0, f);
    if (uniq.insert(g.invariant_factors()).second) out.push_back(g);
  }
  return out;
}

inline OrderSignature signature(const FgAbelianGroup& a, long window) {
  ExplicitGroup g = explicit_group(a);
  OrderSignature sig(static_cast<std::size_t>(window + 1), 0);
  for (long d = 1; d <= window; ++d)
    for (long x = 0; x < g.size(); ++x)
      if (g.scale(d, x) == 0) ++sig[static_cast<std::size_t>(d)];
  return sig;
}

// Signatures of S and of G/S for a subgroup mask S.
inline std::pair<OrderSignature, OrderSignature> sub_quotient_signature(const ExplicitGroup& g,
                                                                       const std::vector<char>& s, long window) {
  long n = g.size();
  std::vector<long> reps;
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (long x = 0; x < n; ++x) {
    if (covered[static_cast<std::size_t>(x)]) continue;
    reps.push_back(x);
    for (long y = 0; y < n; ++y)
      if (s[static_cast<std::size_t>(y)]) covered[static_cast<std::size_t>(g.add(x, y))] = 1;
  }
  OrderSignature sub(static_cast<std::size_t>(window + 1), 0), quo = sub;
  for (long d = 1; d <= window; ++d) {
    for (long x = 0; x < n; ++x)
      if (s[static_cast<std::size_t>(x)] && g.scale(d, x) == 0) ++sub[static_cast<std::size_t>(d)];
    for (long x : reps)
      if (s[static_cast<std::size_t>(g.scale(d, x))]) ++quo[static_cast<std::size_t>(d)];
  }
  return {sub, quo};
}

// The group of the given order with the given signature.
inline FgAbelianGroup identify(long order, const OrderSignature& sig, long window) {
  for (const auto& g : brute_groups_of_order(order))
    if (signature(g, window) == sig) return g;
  throw std::logic_error("no group matches the signature");
}

inline long count_members(const std::vector<char>& mask) { return std::count(mask.begin(), mask.end(), 1); }

// Groups G of order |H||K| with a subgroup isomorphic to H and quotient to K.
inline std::vector<FgAbelianGroup> brute_extensions(const FgAbelianGroup& h, const FgAbelianGroup& k) {
  long n = h.order().get_si() * k.order().get_si();
  OrderSignature hs = signature(h, n), ks = signature(k, n);
  std::vector<FgAbelianGroup> out;
  for (const auto& g : brute_groups_of_order(n)) {
    ExplicitGroup e = explicit_group(g);
    for (const auto& s : all_subgroups(e)) {
      auto [ss, qs] = sub_quotient_signature(e, s, n);
      if (ss == hs && qs == ks) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

// Every (kernel, cokernel) pair, up to isomorphism, of homomorphisms A -> B
// between finite groups, found by listing all homomorphisms.
inline std::set<std::pair<std::vector<Integer>, std::vector<Integer>>> brute_ker_coker(const FgAbelianGroup& a,
                                                                                      const FgAbelianGroup& b) {
  ExplicitGroup ea = explicit_group(a), eb = explicit_group(b);
  long window = std::max(ea.size(), eb.size());
  // Admissible images of each generator.
  std::vector<std::vector<long>> choices;
  for (long n : ea.orders) {
    std::vector<long> c;
    for (long y = 0; y < eb.size(); ++y)
      if (eb.scale(n, y) == 0) c.push_back(y);
    choices.push_back(c);
  }
  std::set<std::pair<std::vector<Integer>, std::vector<Integer>>> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    std::vector<char> in_image(static_cast<std::size_t>(eb.size()), 0), in_ker(static_cast<std::size_t>(ea.size()), 0);
    for (long x = 0; x < ea.size(); ++x) {
      auto v = ea.decode(x);
      long y = 0;
      for (std::size_t i = 0; i < v.size(); ++i) y = eb.add(y, eb.scale(v[i], choices[i][idx[i]]));
      in_image[static_cast<std::size_t>(y)] = 1;
      if (y == 0) in_ker[static_cast<std::size_t>(x)] = 1;
    }
    auto ker_sig = sub_quotient_signature(ea, in_ker, window).first;
    auto coker_sig = sub_quotient_signature(eb, in_image, window).second;
    long kn = count_members(in_ker), cn = eb.size() / count_members(in_image);
    out.insert({identify(kn, ker_sig, window).invariant_factors(), identify(cn, coker_sig, window).invariant_factors()});
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

}  // namespace extri::testing
