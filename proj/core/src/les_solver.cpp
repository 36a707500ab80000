#include "extri/les_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "extri/snf.hpp"

namespace extri {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

std::string grade_str(int h) { return std::to_string(h); }

struct Names {
  std::set<std::string> used;
  const std::vector<std::string>* pool = nullptr;
  std::size_t next_index = 0;
  int spare = 0;

  std::string next() {
    while (next_index < pool->size()) {
      const std::string& s = (*pool)[next_index++];
      if (used.insert(s).second) return s;
    }
    while (true) {
      std::string s = "U" + std::to_string(++spare);
      if (used.insert(s).second) return s;
    }
  }
};

bool term_nonzero(const TorsionTerm& t, const std::map<std::string, FiniteUnknown>& symbols) {
  if (t.is_concrete()) return !t.value->is_trivial();
  auto it = symbols.find(t.symbol);
  return it != symbols.end() && it->second.nonzero;
}

long term_order(const TorsionTerm& t) { return t.is_concrete() ? t.value->order().get_si() : 0; }

std::string component_str(const SymbolicComponent& c) {
  std::vector<std::string> parts;
  if (c.rank > 0) parts.push_back(c.rank == 1 ? "Z" : "Z^" + std::to_string(c.rank));
  if (c.torsion.is_concrete()) {
    for (const auto& d : c.torsion.value->invariant_factors()) parts.push_back("Z/" + d.get_str());
  } else {
    parts.push_back(c.torsion.symbol);
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  bool compound = parts.size() > 1 || c.rank > 1;
  return compound ? "(" + s + ")" : s;
}

bool component_zero(const SymbolicComponent& c) { return c.rank == 0 && c.torsion.is_trivial(); }

std::optional<FgAbelianGroup> component_group(const SymbolicComponent& c) {
  if (!c.torsion.is_concrete()) return std::nullopt;
  return direct_sum(FgAbelianGroup::free(c.rank), *c.torsion.value);
}

std::string primes_word(const std::optional<std::set<std::uint64_t>>& primes) {
  if (!primes) return "finite ";
  if (primes->size() == 1) return std::to_string(*primes->begin()) + "-";
  std::string s = "{";
  bool first = true;
  for (auto q : *primes) {
    s += (first ? "" : ",") + std::to_string(q);
    first = false;
  }
  return s + "}-";
}

void collect_symbols(const SymbolicGroup& g, std::set<std::string>& out) {
  for (const auto& c : g.at)
    if (!c.torsion.is_concrete()) out.insert(c.torsion.symbol);
}

bool graded_less(const GradedGroup& a, const GradedGroup& b) { return a.components() < b.components(); }

struct Elimination {
  Rule rule;
  std::string why;
};

// Rank and torsion bookkeeping for one branch of image ranks.
struct BranchState {
  SolutionFamily fam;
  std::array<std::vector<TorsionTerm>, 2> x_options;  // torsion choices per grade of X
};

}  // namespace

TorsionTerm TorsionTerm::concrete(const FgAbelianGroup& g) {
  if (!g.is_finite()) throw std::invalid_argument("torsion term must be finite");
  return {g, ""};
}

std::string TorsionTerm::to_string() const { return value ? value->to_string() : symbol; }

SymbolicGroup SymbolicGroup::from_graded(const GradedGroup& g) {
  if (g.modulus() != 2) throw std::invalid_argument("triangle groups must be Z/2-graded");
  SymbolicGroup s;
  for (int h = 0; h < 2; ++h) {
    s.at[h].rank = g.at(h).rank();
    s.at[h].torsion = TorsionTerm::concrete(g.at(h).torsion());
  }
  return s;
}

bool SymbolicGroup::is_concrete() const { return at[0].torsion.is_concrete() && at[1].torsion.is_concrete(); }

GradedGroup SymbolicGroup::to_graded() const {
  if (!is_concrete()) throw std::logic_error("symbolic group has unknown torsion");
  GradedGroup g(2);
  for (int h = 0; h < 2; ++h) g.set(h, *component_group(at[h]));
  return g;
}

SymbolicGroup SymbolicGroup::shift(int n) const {
  SymbolicGroup s;
  for (int h = 0; h < 2; ++h) s.at[mod2(h + n)] = at[h];
  return s;
}

std::string SymbolicGroup::to_string() const {
  std::string s;
  for (int h = 0; h < 2; ++h) {
    if (component_zero(at[h])) continue;
    if (!s.empty()) s += " + ";
    s += component_str(at[h]) + "_(" + grade_str(h) + ")";
  }
  return s.empty() ? "0" : s;
}

std::string SesSchema::to_string(const std::string& x) const {
  std::string coker = "coker(f)" + (coker_shift ? "[" + std::to_string(coker_shift) + "]" : std::string());
  std::string ker = "ker(f)" + (ker_shift ? "[" + std::to_string(ker_shift) + "]" : std::string());
  return "0 -> " + coker + " -> " + x + " -> " + ker + " -> 0";
}

SesSchema split_les(const TrianglePuzzle& p) {
  std::size_t unknowns = 0, u = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (!p.corners[i]) {
      ++unknowns;
      u = i;
    }
  if (unknowns != 1) throw std::invalid_argument("triangle needs exactly one unknown corner");
  SesSchema s;
  s.unknown_corner = u;
  s.source_corner = (u + 1) % 3;
  s.target_corner = (u + 2) % 3;
  s.map_degree = mod2(p.degrees[s.source_corner]);
  s.coker_shift = mod2(p.degrees[s.target_corner]);
  s.ker_shift = mod2(-p.degrees[u]);
  return s;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::SplitLes: return "SplitLes";
    case Rule::RankAdditivity: return "RankAdditivity";
    case Rule::GradingRankBound: return "GradingRankBound";
    case Rule::TorsionToFree: return "TorsionToFree";
    case Rule::FreeKernel: return "FreeKernel";
    case Rule::NonSplitDetect: return "NonSplitDetect";
    case Rule::SplitOnFreeQuotient: return "SplitOnFreeQuotient";
    case Rule::TorsionTransfer: return "TorsionTransfer";
    case Rule::ExtensionOrder: return "ExtensionOrder";
    case Rule::PrimeRestriction: return "PrimeRestriction";
  }
  return "?";
}

std::string SolutionFamily::describe() const {
  std::ostringstream os;
  os << group.to_string();
  for (const auto& [name, u] : symbols) {
    os << "; " << name << " finite" << (u.nonzero ? " nonzero" : "");
    if (u.extension_of)
      os << ", 0 -> " << u.extension_of->first.to_string() << " -> " << name << " -> "
         << u.extension_of->second.to_string() << " -> 0";
    if (u.approximate) os << ", bound only";
  }
  if (torsion_primes) os << "; torsion is a " << primes_word(torsion_primes) << "group";
  return os.str();
}

namespace {

// Both known corners finite: list every solution.
void solve_concrete(const TrianglePuzzle& p, SolveResult& res, std::optional<Elimination>& first_cut) {
  const auto& sc = res.schema;
  GradedGroup bg = p.corners[sc.source_corner]->to_graded();
  GradedGroup cg = p.corners[sc.target_corner]->to_graded();
  using KerCoker = std::pair<FgAbelianGroup, FgAbelianGroup>;
  std::array<std::vector<KerCoker>, 2> options;
  for (int g = 0; g < 2; ++g) {
    int t = mod2(g + sc.map_degree);
    for (const auto& [s, image] : subgroup_quotient_pairs(bg.at(g), p.order_bound))
      for (const auto& [i, q] : subgroup_quotient_pairs(cg.at(t), p.order_bound))
        if (i == image) options[g].emplace_back(s, q);
    std::sort(options[g].begin(), options[g].end());
    options[g].erase(std::unique(options[g].begin(), options[g].end()), options[g].end());
  }

  std::vector<GradedGroup> found;
  std::map<std::string, SolutionFamily> witness;
  std::set<std::vector<long>> logged;
  auto cut = [&](Rule r, const std::string& why) {
    if (!first_cut) first_cut = Elimination{r, why};
  };
  for (const auto& o0 : options[0])
    for (const auto& o1 : options[1]) {
      std::array<const KerCoker*, 2> per_source{&o0, &o1};
      // coker by target grade
      std::array<FgAbelianGroup, 2> coker, ker;
      for (int g = 0; g < 2; ++g) {
        ker[g] = per_source[g]->first;
        coker[mod2(g + sc.map_degree)] = per_source[g]->second;
      }
      std::array<std::vector<FgAbelianGroup>, 2> xs;
      for (int h = 0; h < 2; ++h) {
        const auto& sub = coker[mod2(h - sc.coker_shift)];
        const auto& quot = ker[mod2(h - sc.ker_shift)];
        xs[h] = enumerate_extensions(sub, quot, p.order_bound);
        for (const auto& x : xs[h]) {
          std::vector<long> d{!sub.is_trivial(), !quot.is_trivial(), !x.is_trivial(), sub.order().get_si(),
                              quot.order().get_si(), x.order().get_si()};
          if (logged.insert(d).second)
            res.trace.steps.push_back({Rule::ExtensionOrder, h,
                                       {"0 -> " + sub.to_string() + " -> X_" + grade_str(h) + " -> " +
                                        quot.to_string() + " -> 0"},
                                       "|" + x.to_string() + "| = |" + sub.to_string() + "| |" + quot.to_string() + "|",
                                       d});
        }
      }
      for (const auto& x0 : xs[0])
        for (const auto& x1 : xs[1]) {
          GradedGroup cand(2);
          cand.set(0, x0);
          cand.set(1, x1);
          if (p.rank_constraint && ((*p.rank_constraint)[0] != 0 || (*p.rank_constraint)[1] != 0)) {
            cut(Rule::GradingRankBound, "finite corners force rank 0");
            continue;
          }
          if (p.allowed_primes) {
            bool bad = false;
            for (int h = 0; h < 2; ++h)
              for (const auto& q : cand.at(h).torsion_primes())
                if (!p.allowed_primes->count(q.get_ui())) bad = true;
            if (bad) {
              cut(Rule::PrimeRestriction, "torsion of " + cand.to_string() + " uses a disallowed prime");
              continue;
            }
          }
          std::string key = cand.to_string();
          if (witness.count(key)) continue;
          SolutionFamily f;
          f.group = SymbolicGroup::from_graded(cand);
          for (int i = 0; i < 2; ++i) {
            f.kernel[i] = {0, TorsionTerm::concrete(ker[i])};
            f.cokernel[i] = {0, TorsionTerm::concrete(coker[i])};
          }
          f.torsion_primes = p.allowed_primes;
          witness.emplace(key, f);
          found.push_back(cand);
        }
    }
  std::sort(found.begin(), found.end(), graded_less);
  for (const auto& g : found) res.families.push_back(witness.at(g.to_string()));
  res.concrete = found;
}

}  // namespace

SolveResult apply_rules(const TrianglePuzzle& p) {
  SolveResult res;
  res.schema = split_les(p);
  const auto& sc = res.schema;
  const SymbolicGroup& b = *p.corners[sc.source_corner];
  const SymbolicGroup& c = *p.corners[sc.target_corner];
  const std::string x = p.unknown_name;
  res.trace.steps.push_back(
      {Rule::SplitLes,
       0,
       {"deg of maps " + std::to_string(p.degrees[0]) + "," + std::to_string(p.degrees[1]) + "," +
        std::to_string(p.degrees[2]),
        "f: corner " + std::to_string(sc.source_corner) + " -> corner " + std::to_string(sc.target_corner)},
       sc.to_string(x),
       {p.degrees[sc.unknown_corner], p.degrees[sc.source_corner], p.degrees[sc.target_corner], sc.coker_shift,
        sc.ker_shift, sc.map_degree}});

  std::optional<Elimination> first_cut;
  bool finite = b.is_concrete() && c.is_concrete();
  for (int h = 0; h < 2; ++h) finite = finite && b.at[h].rank == 0 && c.at[h].rank == 0;
  if (finite) {
    solve_concrete(p, res, first_cut);
    if (res.families.empty())
      throw std::domain_error("inconsistent constraints: " +
                              (first_cut ? rule_name(first_cut->rule) + ": " + first_cut->why : "no solution"));
    return res;
  }

  std::set<std::string> used;
  collect_symbols(b, used);
  collect_symbols(c, used);
  for (const auto& [k, v] : p.symbols) used.insert(k);
  used.insert(x);

  auto& steps = res.trace.steps;
  std::array<unsigned, 2> max_rho;
  for (int g = 0; g < 2; ++g) max_rho[g] = std::min(b.at[g].rank, c.at[mod2(g + sc.map_degree)].rank);

  for (unsigned r0 = 0; r0 <= max_rho[0]; ++r0)
    for (unsigned r1 = 0; r1 <= max_rho[1]; ++r1) {
      const std::array<unsigned, 2> rho{r0, r1};
      const std::string tag = "branch rk im f = (" + std::to_string(r0) + "," + std::to_string(r1) + ")";
      Names names{used, &p.fresh_names};
      BranchState st;
      auto& fam = st.fam;
      fam.symbols = p.symbols;
      fam.image_rank = rho;
      std::optional<Elimination> cut;

      for (int g = 0; g < 2; ++g) {
        int t = mod2(g + sc.map_degree);
        const auto& bc = b.at[g];
        const auto& cc = c.at[t];
        const std::string gs = grade_str(g), ts = grade_str(t);
        unsigned kr = bc.rank - rho[g], cr = cc.rank - rho[g];
        steps.push_back({Rule::RankAdditivity,
                         g,
                         {tag, "rk source_" + gs + " = " + std::to_string(bc.rank),
                          "rk target_" + ts + " = " + std::to_string(cc.rank)},
                         "rk ker(f)_" + gs + " = " + std::to_string(kr) + ", rk coker(f)_" + ts + " = " +
                             std::to_string(cr),
                         {static_cast<long>(bc.rank), static_cast<long>(cc.rank), static_cast<long>(rho[g]),
                          static_cast<long>(kr), static_cast<long>(cr)}});

        SymbolicComponent ker{kr, TorsionTerm::concrete(FgAbelianGroup())};
        if (bc.torsion.is_trivial()) {
          steps.push_back({Rule::FreeKernel, g, {tag, "source_" + gs + " is free"}, "ker(f)_" + gs + " is free", {1, 1}});
        } else if (cc.torsion.is_trivial()) {
          ker.torsion = bc.torsion;
          steps.push_back({Rule::TorsionToFree,
                           g,
                           {tag, "target_" + ts + " is free"},
                           "Tor ker(f)_" + gs + " = " + bc.torsion.to_string(),
                           {1, 1}});
        } else {
          std::string n = names.next();
          FiniteUnknown u{n, false, std::nullopt, std::nullopt, bc.torsion.value, false,
                          "torsion of ker(f) in grading " + gs};
          fam.symbols[n] = u;
          ker.torsion = TorsionTerm::named(n);
        }

        SymbolicComponent coker{cr, TorsionTerm::concrete(FgAbelianGroup())};
        bool b_zero = component_zero(bc);
        if (component_zero(cc)) {
        } else if (b_zero || (rho[g] == 0 && cc.torsion.is_trivial())) {
          coker.torsion = cc.torsion;
        } else {
          std::string n = names.next();
          FiniteUnknown u{n, false, std::nullopt, std::nullopt, std::nullopt, false,
                          "torsion of coker(f) in grading " + ts};
          if (bc.torsion.is_trivial() && cc.torsion.is_concrete())
            u.cokernel_of = CokernelOrigin{FgAbelianGroup::free(bc.rank), *component_group(cc), rho[g]};
          bool kernel_zero = kr == 0 && ker.torsion.is_trivial();
          auto bgrp = component_group(bc), cgrp = component_group(cc);
          if (kernel_zero && cr == 0 && bgrp && cgrp && !(*bgrp == *cgrp)) {
            u.nonzero = true;
            steps.push_back({Rule::NonSplitDetect,
                             t,
                             {tag, "0 -> " + bgrp->to_string() + " -> " + cgrp->to_string() + " -> coker(f)_" + ts +
                                       " -> 0",
                              "coker(f)_" + ts + " finite"},
                             n + " != 0, otherwise the sequence splits and " + bgrp->to_string() +
                                 " = " + cgrp->to_string(),
                             {0, 1, 0, 0, 1}});
          }
          fam.symbols[n] = u;
          coker.torsion = TorsionTerm::named(n);
        }
        fam.kernel[g] = ker;
        fam.cokernel[t] = coker;
      }


      std::array<unsigned, 2> x_rank{};
      for (int h = 0; h < 2 && !cut; ++h) {
        int t = mod2(h - sc.coker_shift), g = mod2(h - sc.ker_shift);
        const auto& sub = fam.cokernel[t];
        const auto& quot = fam.kernel[g];
        const std::string xh = x + "_" + grade_str(h);
        const std::string cs = "coker(f)_" + grade_str(t), ks = "ker(f)_" + grade_str(g);
        x_rank[h] = sub.rank + quot.rank;
        if (p.rank_constraint) {
          unsigned want = (*p.rank_constraint)[h];
          bool excluded = x_rank[h] != want;
          steps.push_back({Rule::GradingRankBound,
                           h,
                           {tag, "rk " + cs + " = " + std::to_string(sub.rank), "rk " + xh + " = " + std::to_string(want)},
                           excluded ? "excluded: rk " + xh + " would be " + std::to_string(x_rank[h])
                                    : std::to_string(sub.rank) + " <= rk " + xh + " = " + std::to_string(x_rank[h]),
                           {static_cast<long>(sub.rank), static_cast<long>(x_rank[h]), static_cast<long>(want),
                            excluded ? 1 : 0}});
          if (excluded) {
            cut = Elimination{Rule::GradingRankBound, "rk " + xh + " = " + std::to_string(x_rank[h]) + " but " +
                                                          std::to_string(want) + " is required"};
            break;
          }
        }

        if (quot.torsion.is_trivial()) {
          steps.push_back({Rule::SplitOnFreeQuotient, h, {tag, ks + " is free"}, xh + " = " + cs + " + " + ks, {1, 1}});
          steps.push_back({Rule::TorsionTransfer,
                           h,
                           {tag, xh + " = " + cs + " + " + ks},
                           "Tor " + xh + " = Tor " + cs + " = " + sub.torsion.to_string(),
                           {1, component_zero(sub) ? 1 : 0}});
          st.x_options[h] = {sub.torsion};
        } else if (component_zero(sub)) {
          steps.push_back({Rule::TorsionTransfer, h, {tag, cs + " = 0"}, "Tor " + xh + " = Tor " + ks, {0, 1}});
          st.x_options[h] = {quot.torsion};
        } else if (sub.rank == 0 && quot.rank == 0) {
          bool snz = term_nonzero(sub.torsion, fam.symbols), qnz = term_nonzero(quot.torsion, fam.symbols);
          const std::string ses = "0 -> " + sub.torsion.to_string() + " -> " + xh + " -> " + quot.torsion.to_string() + " -> 0";
          if (sub.torsion.is_concrete() && quot.torsion.is_concrete()) {
            for (const auto& e : enumerate_extensions(*sub.torsion.value, *quot.torsion.value, p.order_bound)) {
              steps.push_back({Rule::ExtensionOrder,
                               h,
                               {tag, ses},
                               xh + " = " + e.to_string(),
                               {snz, qnz, !e.is_trivial(), term_order(sub.torsion), term_order(quot.torsion),
                                e.order().get_si()}});
              st.x_options[h].push_back(TorsionTerm::concrete(e));
            }
          } else {
            std::string n = names.next();
            FiniteUnknown u{n, snz || qnz, std::make_pair(sub.torsion, quot.torsion), std::nullopt, std::nullopt, false,
                            "torsion of " + xh};
            steps.push_back({Rule::ExtensionOrder,
                             h,
                             {tag, ses},
                             xh + " = " + n + ", |" + n + "| = |" + sub.torsion.to_string() + "| |" +
                                 quot.torsion.to_string() + "|" + (u.nonzero ? ", " + n + " != 0" : ""),
                             {snz, qnz, u.nonzero, term_order(sub.torsion), term_order(quot.torsion), 0}});
            fam.symbols[n] = u;
            st.x_options[h] = {TorsionTerm::named(n)};
          }
        } else {
          // A free part on either side lets torsion cancel; only a bound is known.
          std::string n = names.next();
          fam.symbols[n] = FiniteUnknown{n, false, std::make_pair(sub.torsion, quot.torsion), std::nullopt,
                                         std::nullopt, true, "torsion of " + xh};
          st.x_options[h] = {TorsionTerm::named(n)};
        }
      }
      if (cut) {
        if (!first_cut) first_cut = cut;
        continue;
      }

      for (const auto& t0 : st.x_options[0])
        for (const auto& t1 : st.x_options[1]) {
          SolutionFamily f = fam;
          f.group.at[0] = {x_rank[0], t0};
          f.group.at[1] = {x_rank[1], t1};
          if (p.allowed_primes) {
            const auto& allowed = *p.allowed_primes;
            std::vector<long> data{0};
            for (auto q : allowed) data.push_back(static_cast<long>(q));
            data.push_back(-1);
            bool bad = false;
            for (const auto& comp : f.group.at) {
              if (comp.torsion.is_concrete()) {
                for (const auto& q : comp.torsion.value->torsion_primes()) {
                  data.push_back(q.get_si());
                  if (!allowed.count(q.get_ui())) bad = true;
                }
              } else if (term_nonzero(comp.torsion, f.symbols)) {
                data.push_back(0);  // some prime
                if (allowed.empty()) bad = true;
              }
            }
            data[0] = bad;
            steps.push_back({Rule::PrimeRestriction,
                             0,
                             {tag, "torsion primes of " + x + " lie in the allowed set"},
                             bad ? "excluded: " + f.group.to_string()
                                 : "Tor " + x + " is a " + primes_word(allowed) + "group",
                             data});
            if (bad) {
              if (!first_cut)
                first_cut = Elimination{Rule::PrimeRestriction, f.group.to_string() + " has a disallowed prime"};
              continue;
            }
            f.torsion_primes = allowed;
          }
          res.families.push_back(f);
        }
    }

  if (res.families.empty())
    throw std::domain_error("inconsistent constraints: " +
                            (first_cut ? rule_name(first_cut->rule) + ": " + first_cut->why : "no solution"));
  return res;
}

bool replay_trace(const DeductionTrace& trace) {
  for (const auto& s : trace.steps) {
    const auto& d = s.data;
    auto need = [&](std::size_t n) { return d.size() == n; };
    bool ok = false;
    switch (s.rule) {
      case Rule::SplitLes:
        ok = need(6) && d[3] == mod2(static_cast<int>(d[2])) && d[4] == mod2(-static_cast<int>(d[0])) &&
             d[5] == mod2(static_cast<int>(d[1]));
        break;
      case Rule::RankAdditivity:
        ok = need(5) && d[2] >= 0 && d[2] <= d[0] && d[2] <= d[1] && d[3] == d[0] - d[2] && d[4] == d[1] - d[2];
        break;
      case Rule::GradingRankBound:
        ok = need(4) && d[0] <= d[1] && d[3] == (d[1] != d[2] ? 1 : 0);
        break;
      case Rule::TorsionToFree:
        ok = need(2) && d[0] == 1 && d[1] == 1;
        break;
      case Rule::FreeKernel:
        ok = need(2) && (d[1] == 0 || d[0] == 1);
        break;
      case Rule::NonSplitDetect:
        ok = need(5) && (d[4] == 0 || (d[0] == 0 && d[1] == 1 && d[2] == 0 && d[3] == 0));
        break;
      case Rule::SplitOnFreeQuotient:
        ok = need(2) && (d[1] == 0 || d[0] == 1);
        break;
      case Rule::TorsionTransfer:
        ok = need(2) && (d[0] == 1 || d[1] == 1);
        break;
      case Rule::ExtensionOrder:
        ok = need(6) && d[0] >= 0 && d[0] <= 1 && d[1] >= 0 && d[1] <= 1 && d[2] == ((d[0] || d[1]) ? 1 : 0);
        if (ok && d[3] > 0 && d[4] > 0 && d[5] > 0)
          ok = d[5] == d[3] * d[4] && d[0] == (d[3] > 1 ? 1 : 0) && d[1] == (d[4] > 1 ? 1 : 0) &&
               d[2] == (d[5] > 1 ? 1 : 0);
        break;
      case Rule::PrimeRestriction: {
        auto sep = std::find(d.begin(), d.end(), -1);
        if (d.empty() || sep == d.end()) return false;
        std::set<long> allowed(d.begin() + 1, sep);
        bool bad = false;
        for (auto it = sep + 1; it != d.end(); ++it)
          if (*it == 0 ? allowed.empty() : !allowed.count(*it)) bad = true;
        ok = d[0] == (bad ? 1 : 0);
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

bool cokernel_realizable(const CokernelOrigin& o, const FgAbelianGroup& torsion, int entry_bound) {
  if (!o.source.is_free()) throw std::invalid_argument("cokernel source must be free");
  if (!torsion.is_finite()) throw std::invalid_argument("cokernel torsion must be finite");
  const unsigned b = o.source.rank(), c = o.target.rank(), r = o.image_rank;
  if (r > std::min(b, c)) return false;
  const auto& tf = o.target.invariant_factors();
  const std::size_t m = tf.size();
  const FgAbelianGroup want = direct_sum(FgAbelianGroup::free(c - r), torsion);

  // Free block in Smith form diag(d_1 <= ... <= d_r); every column may also
  // hit the torsion summands.
  double count = 1;
  for (unsigned i = 0; i < r; ++i) count *= entry_bound;
  for (const auto& t : tf) count *= std::pow(t.get_d(), b);
  if (count > 2e6) throw std::domain_error("cokernel realizability search exceeds its bound");

  std::vector<int> d(r, 1);
  std::vector<long> e(b * m, 0);
  while (true) {
    IntMatrix rel(b + m, c + m);
    for (unsigned i = 0; i < r; ++i) rel(i, i) = d[i];
    for (unsigned i = 0; i < b; ++i)
      for (std::size_t j = 0; j < m; ++j) rel(i, c + j) = e[i * m + j];
    for (std::size_t j = 0; j < m; ++j) rel(b + j, c + j) = tf[j];
    if (cokernel_presentation(rel) == want) return true;

    std::size_t k = 0;
    for (; k < e.size(); ++k) {
      if (++e[k] < tf[k % m].get_si()) break;
      e[k] = 0;
    }
    if (k < e.size()) continue;
    // next nondecreasing d
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && d[i] == entry_bound) --i;
    if (i < 0) return false;
    ++d[i];
    for (unsigned j = i + 1; j < r; ++j) d[j] = d[i];
  }
}

namespace {

struct Matcher {
  const std::map<std::string, FiniteUnknown>& symbols;
  const Integer& bound;
  std::string failure;

  const FiniteUnknown* info(const std::string& s) const {
    auto it = symbols.find(s);
    return it == symbols.end() ? nullptr : &it->second;
  }

  static bool bind(const TorsionTerm& t, const FgAbelianGroup& g, std::map<std::string, FgAbelianGroup>& env) {
    if (t.is_concrete()) return *t.value == g;
    auto [it, fresh] = env.emplace(t.symbol, g);
    return fresh || it->second == g;
  }

  // Checks one bound symbol after its extension parts are bound; children first.
  bool check(const std::string& s, const std::map<std::string, FgAbelianGroup>& env, std::set<std::string>& done) {
    if (!done.insert(s).second) return true;
    const FiniteUnknown* u = info(s);
    auto it = env.find(s);
    if (!u || it == env.end()) return true;
    const FgAbelianGroup& g = it->second;
    if (u->extension_of) {
      for (const auto* part : {&u->extension_of->first, &u->extension_of->second})
        if (!part->is_concrete() && !check(part->symbol, env, done)) return false;
    }
    if (u->nonzero && g.is_trivial()) return fail(s + " must be nonzero");
    if (u->subgroup_of) {
      bool found = false;
      for (const auto& [sub, q] : subgroup_quotient_pairs(*u->subgroup_of, bound)) found = found || sub == g;
      if (!found) return fail(s + " = " + g.to_string() + " is not a subgroup of " + u->subgroup_of->to_string());
    }
    if (u->cokernel_of && !cokernel_realizable(*u->cokernel_of, g))
      return fail(s + " = " + g.to_string() + " is not a realizable cokernel torsion");
    if (u->extension_of && !u->approximate) {
      auto value = [&](const TorsionTerm& t) -> std::optional<FgAbelianGroup> {
        if (t.is_concrete()) return t.value;
        auto f = env.find(t.symbol);
        if (f == env.end()) return std::nullopt;
        return f->second;
      };
      auto sub = value(u->extension_of->first), quot = value(u->extension_of->second);
      if (sub && quot) {
        auto ext = enumerate_extensions(*sub, *quot, bound);
        if (std::find(ext.begin(), ext.end(), g) == ext.end())
          return fail(s + " = " + g.to_string() + " is not an extension of " + quot->to_string() + " by " +
                      sub->to_string());
      }
    }
    return true;
  }

  bool fail(const std::string& why) {
    failure = why;
    return false;
  }

  // Bind extension parts of bound symbols by running over subgroup/quotient splits.
  bool solve(std::map<std::string, FgAbelianGroup> env, std::map<std::string, FgAbelianGroup>& out) {
    for (const auto& [s, g] : env) {
      const FiniteUnknown* u = info(s);
      if (!u || !u->extension_of || u->approximate) continue;
      const auto& [sub, quot] = *u->extension_of;
      bool open = (!sub.is_concrete() && !env.count(sub.symbol)) || (!quot.is_concrete() && !env.count(quot.symbol));
      if (!open) continue;
      for (const auto& [a, q] : subgroup_quotient_pairs(g, bound)) {
        auto next = env;
        if (!bind(sub, a, next) || !bind(quot, q, next)) continue;
        if (solve(next, out)) return true;
      }
      if (failure.empty()) failure = "no split of " + s + " = " + g.to_string() + " fits its extension";
      return false;
    }
    std::set<std::string> done;
    for (const auto& [s, g] : env)
      if (!check(s, env, done)) return false;
    out = env;
    return true;
  }
};

}  // namespace

VerifyResult verify_solution(const TrianglePuzzle& p, const GradedGroup& candidate) {
  if (candidate.modulus() != 2) throw std::invalid_argument("candidate must be Z/2-graded");
  VerifyResult out;
  SolveResult r;
  try {
    r = apply_rules(p);
  } catch (const std::domain_error& e) {
    out.reason = e.what();
    return out;
  }
  if (p.allowed_primes)
    for (int h = 0; h < 2; ++h)
      for (const auto& q : candidate.at(h).torsion_primes())
        if (!p.allowed_primes->count(q.get_ui())) {
          out.reason = "torsion prime " + q.get_str() + " is not allowed";
          return out;
        }
  if (r.concrete) {
    out.ok = std::find(r.concrete->begin(), r.concrete->end(), candidate) != r.concrete->end();
    out.reason = out.ok ? "listed solution" : "not among the realizable groups";
    return out;
  }

  std::string reason = "no solution family matches";
  for (const auto& fam : r.families) {
    std::map<std::string, FgAbelianGroup> env;
    bool match = true;
    for (int h = 0; h < 2 && match; ++h) {
      const auto& comp = fam.group.at[h];
      const auto& g = candidate.at(h);
      if (g.rank() != comp.rank) {
        match = false;
        reason = "rank in grading " + grade_str(h) + " is " + std::to_string(g.rank()) + ", expected " +
                 std::to_string(comp.rank);
      } else if (!Matcher::bind(comp.torsion, g.torsion(), env)) {
        match = false;
        reason = "torsion in grading " + grade_str(h) + " differs from " + comp.torsion.to_string();
      }
    }
    if (!match) continue;
    Matcher m{fam.symbols, p.order_bound, {}};
    std::map<std::string, FgAbelianGroup> witness;
    if (m.solve(env, witness)) {
      out.ok = true;
      out.reason = "realized by " + fam.group.to_string();
      out.witness = witness;
      return out;
    }
    reason = m.failure;
  }
  out.reason = reason;
  return out;
}

CorollaryStatement corollary_check(const TrianglePuzzle& p) {
  CorollaryStatement st;
  SolveResult r;
  try {
    r = apply_rules(p);
  } catch (const std::domain_error& e) {
    st.text = std::string("no statement: ") + e.what();
    return st;
  }
  std::set<int> grades;
  for (const auto& f : r.families)
    for (int h = 0; h < 2; ++h)
      if (!f.group.at[h].torsion.is_trivial()) grades.insert(h);
  const std::string& x = p.unknown_name;
  if (grades.empty()) {
    st.text = x + " is free; no torsion statement applies";
    st.vacuous = true;
    st.verified = true;
    return st;
  }
  std::string kind = p.allowed_primes ? primes_word(p.allowed_primes) + "torsion" : "finite";
  std::string where = grades.size() == 2 ? "may lie in either grading"
                      : *grades.begin() == 1 ? "lies in odd grading"
                                             : "lies in even grading";
  st.text = "any torsion of " + x + " is " + kind + " and " + where;

  // Check the statement against every family independently.
  st.verified = true;
  for (const auto& f : r.families)
    for (int h = 0; h < 2; ++h) {
      const auto& t = f.group.at[h].torsion;
      if (t.is_trivial()) continue;
      if (!grades.count(h)) st.verified = false;
      if (!p.allowed_primes) continue;
      if (t.is_concrete()) {
        for (const auto& q : t.value->torsion_primes())
          if (!p.allowed_primes->count(q.get_ui())) st.verified = false;
      } else if (!f.torsion_primes || !std::includes(p.allowed_primes->begin(), p.allowed_primes->end(),
                                                     f.torsion_primes->begin(), f.torsion_primes->end())) {
        st.verified = false;
      }
    }
  return st;
}

std::optional<bool> family_is_l_space(const SolutionFamily& f, Field k) {
  if (f.group.is_concrete()) return is_l_space(f.group.to_graded(), k);
  unsigned r0 = f.group.at[0].rank, r1 = f.group.at[1].rank;
  GradedGroup free(2);
  free.set(0, FgAbelianGroup::free(r0));
  free.set(1, FgAbelianGroup::free(r1));
  if (!is_l_space(free, k)) return false;
  if (k.characteristic == 0) return true;
  // Over F_p any nonzero p-torsion adds to the dimension but not to chi.
  for (const auto& comp : f.group.at) {
    const auto& t = comp.torsion;
    if (t.is_concrete()) {
      if (t.value->p_rank(k.characteristic) > 0) return false;
      continue;
    }
    auto it = f.symbols.find(t.symbol);
    bool nonzero = it != f.symbols.end() && it->second.nonzero;
    if (nonzero && f.torsion_primes && *f.torsion_primes == std::set<std::uint64_t>{k.characteristic}) return false;
    if (f.torsion_primes && !f.torsion_primes->count(k.characteristic)) continue;
    return std::nullopt;
  }
  return true;
}

PoincareInputs PoincareInputs::standard() {
  PoincareInputs in;
  in.lens_space = GradedGroup(2);
  in.lens_space.set(0, FgAbelianGroup::free(5));
  in.knot = GradedGroup(2);
  in.knot.set(0, FgAbelianGroup(3, {Integer(2)}));
  in.knot.set(1, FgAbelianGroup::free(1));
  return in;
}

namespace {

std::string torsion_statement(const SolutionFamily& f) {
  std::vector<std::string> parts;
  for (const auto& comp : f.group.at) {
    const auto& t = comp.torsion;
    if (t.is_concrete()) continue;
    auto it = f.symbols.find(t.symbol);
    if (it == f.symbols.end()) continue;
    const auto& u = it->second;
    parts.push_back(u.name + " is a " + (u.nonzero ? "nontrivial " : "possibly trivial ") +
                    primes_word(f.torsion_primes) + "group");
    if (u.extension_of) {
      std::string ses = "0 -> " + u.extension_of->first.to_string() + " -> " + u.name + " -> " +
                        u.extension_of->second.to_string() + " -> 0";
      std::vector<std::string> nz;
      for (const auto* part : {&u.extension_of->first, &u.extension_of->second})
        if (!part->is_concrete() && term_nonzero(*part, f.symbols)) nz.push_back(part->symbol + " != 0");
      for (std::size_t i = 0; i < nz.size(); ++i) ses += (i ? ", " : " with ") + nz[i];
      parts.push_back(ses);
    }
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
  return s.empty() ? "no torsion" : s;
}

const SolutionFamily& single_family(const SolveResult& r, const std::string& what) {
  if (r.families.size() != 1) throw std::domain_error(what + " does not pin a single family");
  return r.families.front();
}

}  // namespace

PoincareReport poincare_pipeline(const PoincareInputs& in) {
  PoincareReport rep;
  TrianglePuzzle first;
  first.corners = {std::nullopt, SymbolicGroup::from_graded(in.lens_space), SymbolicGroup::from_graded(in.knot)};
  first.degrees = in.degrees;
  first.unknown_name = "A3";
  first.rank_constraint = in.rank_n3;
  rep.step1 = apply_rules(first);
  const auto& a3 = single_family(rep.step1, "first triangle");
  rep.a3 = a3.group.to_string();

  TrianglePuzzle second;
  second.corners = {std::nullopt, a3.group, SymbolicGroup::from_graded(in.knot)};
  second.degrees = in.degrees;
  second.unknown_name = "A1";
  second.rank_constraint = in.rank_n1;
  second.allowed_primes = in.allowed_primes;
  second.symbols = a3.symbols;
  rep.step2 = apply_rules(second);
  const auto& a1 = single_family(rep.step2, "second triangle");
  rep.a1 = a1.group.to_string();
  rep.torsion_statement = torsion_statement(a1);
  auto l = family_is_l_space(a1, Field::prime(2));
  rep.f2_l_space = l.value_or(false);
  rep.verdict = !l ? "undecided over F2" : *l ? "an F2 L-space" : "not an F2 L-space";
  return rep;
}

}  // namespace extri
