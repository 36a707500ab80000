#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "extri/abgroup.hpp"

namespace extri {

namespace {

using Partition = std::vector<unsigned>;

void partitions_rec(unsigned n, unsigned max_part, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions(unsigned n) {
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  return out;
}

unsigned total(const Partition& p) {
  unsigned s = 0;
  for (auto x : p) s += x;
  return s;
}

unsigned part(const Partition& p, std::size_t i) { return i < p.size() ? p[i] : 0; }

// Exponent partition of the p-primary part of a finite group.
Partition p_type(const FgAbelianGroup& g, const Integer& p) {
  Partition out;
  for (const auto& d : g.invariant_factors()) {
    unsigned e = 0;
    Integer m = d;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e) out.push_back(e);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<Integer> cyclic_orders(const Integer& p, const Partition& lambda) {
  std::vector<Integer> out;
  for (auto e : lambda) {
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
    out.push_back(q);
  }
  return out;
}

std::vector<FgAbelianGroup> combine(const std::vector<std::pair<Integer, std::vector<Partition>>>& choices) {
  std::vector<FgAbelianGroup> out;
  std::vector<Integer> acc;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      out.emplace_back(0, acc);
      return;
    }
    for (const auto& lam : choices[i].second) {
      auto orders = cyclic_orders(choices[i].first, lam);
      std::size_t mark = acc.size();
      acc.insert(acc.end(), orders.begin(), orders.end());
      rec(i + 1);
      acc.resize(mark);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// Littlewood-Richardson test: a finite abelian p-group of type lambda has a
// subgroup of type mu with quotient of type nu iff c^lambda_{mu,nu} != 0.
// Searches for one LR tableau of shape lambda/mu and content nu.
bool has_subgroup_with_quotient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (total(lambda) != total(mu) + total(nu)) return false;
  if (mu.size() > lambda.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu[i] > lambda[i]) return false;
  if (nu.empty()) return lambda == mu;

  // Cells in reading order: rows top to bottom, each row right to left.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (std::size_t c = lambda[r]; c-- > part(mu, r);) cells.emplace_back(r, c);

  std::map<std::pair<std::size_t, std::size_t>, unsigned> fill;
  std::vector<unsigned> used(nu.size() + 1, 0);

  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == cells.size()) return true;
    auto [r, c] = cells[k];
    unsigned lo = 1, hi = static_cast<unsigned>(nu.size());
    // Row weakly increasing: the cell to the right was already filled.
    auto right = fill.find({r, c + 1});
    if (right != fill.end()) hi = std::min(hi, right->second);
    // Column strictly increasing.
    if (r > 0 && c >= part(mu, r - 1) && c < lambda[r - 1]) lo = std::max(lo, fill.at({r - 1, c}) + 1);
    for (unsigned v = lo; v <= hi; ++v) {
      if (used[v] >= nu[v - 1]) continue;
      if (v > 1 && used[v] + 1 > used[v - 1]) continue;
      ++used[v];
      fill[{r, c}] = v;
      if (rec(k + 1)) return true;
      fill.erase({r, c});
      --used[v];
    }
    return false;
  };
  return rec(0);
}

std::vector<FgAbelianGroup> groups_of_order(const Integer& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("group order must be positive");
  std::vector<std::pair<Integer, std::vector<Partition>>> choices;
  for (const auto& [p, e] : factorize(n)) choices.emplace_back(p, partitions(e));
  return combine(choices);
}

std::vector<FgAbelianGroup> enumerate_extensions(const FgAbelianGroup& h, const FgAbelianGroup& k,
                                                 const Integer& bound) {
  if (!h.is_finite() || !k.is_finite()) throw std::invalid_argument("extension enumeration needs finite groups");
  Integer n = h.order() * k.order();
  if (n > bound) throw std::invalid_argument("extension enumeration exceeds the order bound");
  std::vector<std::pair<Integer, std::vector<Partition>>> choices;
  for (const auto& [p, e] : factorize(n)) {
    Partition mu = p_type(h, p), nu = p_type(k, p);
    std::vector<Partition> ok;
    for (const auto& lam : partitions(e))
      if (has_subgroup_with_quotient(lam, mu, nu)) ok.push_back(lam);
    if (ok.empty()) return {};
    choices.emplace_back(p, ok);
  }
  return combine(choices);
}

std::vector<std::pair<FgAbelianGroup, FgAbelianGroup>> subgroup_quotient_pairs(const FgAbelianGroup& a,
                                                                          const Integer& bound) {
  if (!a.is_finite()) throw std::invalid_argument("subgroup enumeration needs a finite group");
  if (a.order() > bound) throw std::invalid_argument("subgroup enumeration exceeds the order bound");
  // Per prime, all (mu, nu) with c^lambda_{mu,nu} != 0.
  std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> acc{{{}, {}}};
  for (const auto& [p, e] : factorize(a.order())) {
    Partition lam = p_type(a, p);
    std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> next;
    for (unsigned m = 0; m <= e; ++m) {
      std::vector<Partition> mus = m ? partitions(m) : std::vector<Partition>{{}};
      std::vector<Partition> nus = m < e ? partitions(e - m) : std::vector<Partition>{{}};
      for (const auto& mu : mus)
        for (const auto& nu : nus) {
          if (!has_subgroup_with_quotient(lam, mu, nu)) continue;
          auto mo = cyclic_orders(p, mu), no = cyclic_orders(p, nu);
          for (const auto& [x, y] : acc) {
            auto xs = x, ys = y;
            xs.insert(xs.end(), mo.begin(), mo.end());
            ys.insert(ys.end(), no.begin(), no.end());
            next.emplace_back(xs, ys);
          }
        }
    }
    acc = std::move(next);
  }
  std::vector<std::pair<FgAbelianGroup, FgAbelianGroup>> out;
  for (const auto& [x, y] : acc) out.emplace_back(FgAbelianGroup(0, x), FgAbelianGroup(0, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace extri
