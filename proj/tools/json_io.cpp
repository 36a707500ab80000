#include "json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace extri::io {

namespace {

bool integer_key(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool key_less(const std::string& a, const std::string& b) {
  bool ia = integer_key(a), ib = integer_key(b);
  if (ia && ib) return Integer(a) < Integer(b);
  if (ia != ib) return ia;
  return a < b;
}

void dump(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end(), key_less);
    out += "{\n";
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out += pad + json(keys[i]).dump() + ": ";
      dump(j.at(keys[i]), indent + 2, out);
      out += i + 1 < keys.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    // Short scalar rows stay on one line.
    bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

int int_key(const std::string& k) {
  if (!integer_key(k)) throw std::invalid_argument("grade key is not an integer: " + k);
  return std::stoi(k);
}

int small_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw std::invalid_argument(what + " must be an integer");
  return j.get<int>();
}

unsigned small_unsigned(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw std::invalid_argument(what + " must be a nonnegative integer");
  return j.get<unsigned>();
}

template <class M, class F>
std::array<M, 3> triple(const json& j, const std::string& key, F read) {
  json a = field(j, key);
  if (!a.is_array() || a.size() != 3) throw std::invalid_argument(key + " must list three matrices");
  return {read(a[0]), read(a[1]), read(a[2])};
}

template <class M>
json triple_json(const std::array<M, 3>& a) {
  return json::array({to_json(a[0]), to_json(a[1]), to_json(a[2])});
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump(j, 0, out);
  out += "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json field(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw std::invalid_argument("expected an object holding \"" + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument("missing field \"" + key + "\"");
  return *it;
}

json to_json(const Integer& x) { return x.get_str(); }

json to_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not an integer: " + j.dump());
    return x;
  }
  throw std::invalid_argument("not an integer: " + j.dump());
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(integer_from(j));
  if (!j.is_string()) throw std::invalid_argument("not a rational: " + j.dump());
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  Integer num, den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0)
    throw std::invalid_argument("not a rational: " + s);
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

template <class R, class F>
Matrix<R> matrix_from(const json& j, F entry) {
  std::size_t rows = small_unsigned(field(j, "rows"), "rows");
  std::size_t cols = small_unsigned(field(j, "cols"), "cols");
  json e = field(j, "entries");
  if (!e.is_array() || e.size() != rows) throw std::invalid_argument("entries must have one array per row");
  Matrix<R> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols) throw std::invalid_argument("row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = entry(e[i][k]);
  }
  return m;
}

template <class R, class F>
json matrix_json(const Matrix<R>& m, F entry) {
  json e = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(entry(m(i, k)));
    e.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

LaurentPoly laurent_from(const json& j) {
  if (j.is_number_integer() || j.is_string()) return LaurentPoly(integer_from(j));
  if (!j.is_object()) throw std::invalid_argument("Laurent entry must be an {exponent: coefficient} map");
  LaurentPoly p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!integer_key(it.key())) throw std::invalid_argument("Laurent exponent is not an integer: " + it.key());
    p += LaurentPoly::monomial(std::stol(it.key()), integer_from(it.value()));
  }
  return p;
}

}  // namespace

json to_json(const IntMatrix& m) {
  return matrix_json(m, [](const Integer& x) { return to_json(x); });
}

json to_json(const LaurentPoly& p) {
  json o = json::object();
  for (const auto& [e, c] : p.terms()) o[std::to_string(e)] = c.get_str();
  return o;
}

json to_json(const LaurentMatrix& m) {
  return matrix_json(m, [](const LaurentPoly& p) { return to_json(p); });
}

IntMatrix int_matrix_from(const json& j) { return matrix_from<Integer>(j, integer_from); }
LaurentMatrix laurent_matrix_from(const json& j) { return matrix_from<LaurentPoly>(j, laurent_from); }

json to_json(const FgAbelianGroup& g) {
  json t = json::array();
  for (const auto& d : g.invariant_factors()) t.push_back(d.get_str());
  return {{"rank", g.rank()}, {"torsion", t}};
}

FgAbelianGroup group_from(const json& j) {
  unsigned r = small_unsigned(field(j, "rank"), "rank");
  std::vector<Integer> orders;
  if (j.contains("torsion")) {
    json t = j.at("torsion");
    if (!t.is_array()) throw std::invalid_argument("torsion must be an array");
    for (const auto& x : t) {
      Integer d = integer_from(x);
      if (d <= 0) throw std::invalid_argument("torsion orders must be positive");
      orders.push_back(d);
    }
  }
  return FgAbelianGroup(r, orders);
}

json to_json(const GradedGroup& g) {
  json c = json::object();
  for (const auto& [k, x] : g.components()) c[std::to_string(k)] = to_json(x);
  return {{"mod", g.modulus()}, {"components", c}};
}

GradedGroup graded_from(const json& j) {
  GradedGroup g(small_int(field(j, "mod"), "mod"));
  json c = field(j, "components");
  if (!c.is_object()) throw std::invalid_argument("components must be an object");
  for (auto it = c.begin(); it != c.end(); ++it) {
    int k = int_key(it.key());
    g.set(k, direct_sum(g.at(k), group_from(it.value())));
  }
  return g;
}

json to_json(const ZComplex& c) {
  json ranks = json::object(), d = json::object();
  for (const auto& [g, n] : c.ranks()) ranks[std::to_string(g)] = n;
  for (const auto& [g, m] : c.differentials()) d[std::to_string(g)] = to_json(m);
  return {{"ring", "Z"}, {"modulus", c.modulus()}, {"ranks", ranks}, {"differentials", d}};
}

ZComplex complex_from(const json& j) {
  if (j.contains("ring") && j.at("ring") != "Z")
    throw std::domain_error("only complexes over Z are accepted here; Laurent homology is not computed");
  int modulus = small_int(field(j, "modulus"), "modulus");
  std::map<int, std::size_t> ranks;
  std::map<int, IntMatrix> d;
  json r = field(j, "ranks");
  for (auto it = r.begin(); it != r.end(); ++it) ranks[int_key(it.key())] += small_unsigned(it.value(), "rank");
  if (j.contains("differentials")) {
    json dj = j.at("differentials");
    for (auto it = dj.begin(); it != dj.end(); ++it) d[int_key(it.key())] = int_matrix_from(it.value());
  }
  return ZComplex::checked(modulus, ranks, d);
}

json to_json(const ZChainMap& f) {
  json b = json::object();
  for (const auto& [g, m] : f.blocks) b[std::to_string(g)] = to_json(m);
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"degree", f.degree}, {"blocks", b}};
}

ZChainMap chain_map_from(const json& j) {
  ZChainMap f;
  f.source = complex_from(field(j, "source"));
  f.target = complex_from(field(j, "target"));
  f.degree = j.contains("degree") ? small_int(j.at("degree"), "degree") : 0;
  json b = field(j, "blocks");
  for (auto it = b.begin(); it != b.end(); ++it) f.blocks[f.source.normalize(int_key(it.key()))] = int_matrix_from(it.value());
  f.validate();
  return f;
}

json to_json(const Filtration& f) {
  json lv = json::object();
  for (const auto& [g, v] : f.level) lv[std::to_string(g)] = v;
  return {{"complex", to_json(f.complex)}, {"levels", lv}};
}

Filtration filtration_from(const json& j) {
  Filtration f;
  f.complex = complex_from(field(j, "complex"));
  json lv = field(j, "levels");
  for (auto it = lv.begin(); it != lv.end(); ++it) {
    std::vector<int> v;
    for (const auto& x : it.value()) v.push_back(small_int(x, "level"));
    f.level[f.complex.normalize(int_key(it.key()))] = v;
  }
  f.validate();
  return f;
}

json to_json(const TriangleHypotheses& h) {
  json j = {{"d", triple_json(h.d)}, {"f", triple_json(h.f)}, {"g", triple_json(h.g)},
            {"H", triple_json(h.H)}, {"F", triple_json(h.F)}, {"G", triple_json(h.G)}};
  if (h.parity) j["parity"] = triple_json(*h.parity);
  return j;
}

TriangleHypotheses hypotheses_from(const json& j) {
  TriangleHypotheses h;
  h.d = triple<IntMatrix>(j, "d", int_matrix_from);
  h.f = triple<IntMatrix>(j, "f", int_matrix_from);
  h.g = triple<IntMatrix>(j, "g", int_matrix_from);
  h.H = triple<IntMatrix>(j, "H", int_matrix_from);
  h.F = triple<IntMatrix>(j, "F", int_matrix_from);
  h.G = triple<IntMatrix>(j, "G", int_matrix_from);
  if (j.contains("parity") && !j.at("parity").is_null()) h.parity = triple<IntMatrix>(j, "parity", int_matrix_from);
  h.validate_shapes();
  return h;
}

json to_json(const PiAlgebraDatum& d) {
  json basis = {{"labels", d.basis.labels}, {"grades", d.basis.order.grade}, {"positions", d.basis.order.position}};
  return {{"basis", basis},          {"d", to_json(d.d)},           {"pi_plus", to_json(d.pi_plus)},
          {"pi_minus", to_json(d.pi_minus)}, {"n_plus", to_json(d.n_plus)}, {"n_minus", to_json(d.n_minus)},
          {"k_sum", to_json(d.k_sum)},   {"k_plus", to_json(d.k_plus)}, {"k_minus", to_json(d.k_minus)}};
}

PiAlgebraDatum pi_datum_from(const json& j) {
  PiAlgebraDatum d;
  json b = field(j, "basis");
  d.basis.labels = field(b, "labels").get<std::vector<std::string>>();
  d.basis.order.grade = field(b, "grades").get<std::vector<int>>();
  d.basis.order.position = field(b, "positions").get<std::vector<std::size_t>>();
  d.d = laurent_matrix_from(field(j, "d"));
  d.pi_plus = laurent_matrix_from(field(j, "pi_plus"));
  d.pi_minus = laurent_matrix_from(field(j, "pi_minus"));
  d.n_plus = laurent_matrix_from(field(j, "n_plus"));
  d.n_minus = laurent_matrix_from(field(j, "n_minus"));
  d.k_sum = laurent_matrix_from(field(j, "k_sum"));
  d.k_plus = laurent_matrix_from(field(j, "k_plus"));
  d.k_minus = laurent_matrix_from(field(j, "k_minus"));
  d.validate_shapes();
  return d;
}

json to_json(const TorsionTerm& t) {
  if (!t.is_concrete()) return {{"symbol", t.symbol}};
  return to_json(*t.value);
}

TorsionTerm torsion_term_from(const json& j) {
  if (j.is_object() && j.contains("symbol")) {
    std::string s = j.at("symbol").get<std::string>();
    if (s.empty()) throw std::invalid_argument("empty symbol name");
    return TorsionTerm::named(s);
  }
  FgAbelianGroup g = group_from(j);
  if (!g.is_finite()) throw std::invalid_argument("torsion term must be finite");
  return TorsionTerm::concrete(g);
}

namespace {

json component_json(const SymbolicComponent& c) {
  if (!c.torsion.is_concrete()) return {{"rank", c.rank}, {"symbol", c.torsion.symbol}};
  return to_json(direct_sum(FgAbelianGroup::free(c.rank), *c.torsion.value));
}

SymbolicComponent component_from(const json& j) {
  SymbolicComponent c;
  c.rank = small_unsigned(field(j, "rank"), "rank");
  if (j.contains("symbol")) {
    c.torsion = TorsionTerm::named(j.at("symbol").get<std::string>());
  } else {
    c.torsion = TorsionTerm::concrete(group_from(j).torsion());
  }
  return c;
}

std::optional<std::set<std::uint64_t>> primes_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  std::set<std::uint64_t> s;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || !is_prime(x.get<std::uint64_t>())) throw std::invalid_argument("allowed primes must be primes");
    s.insert(x.get<std::uint64_t>());
  }
  return s;
}

json primes_json(const std::optional<std::set<std::uint64_t>>& p) {
  if (!p) return nullptr;
  return json(std::vector<std::uint64_t>(p->begin(), p->end()));
}

json step_json(const RuleApplication& s) {
  return {{"rule", rule_name(s.rule)},
          {"grade", s.grade},
          {"premises", s.premises},
          {"conclusion", s.conclusion},
          {"data", s.data}};
}

}  // namespace

json to_json(const SymbolicGroup& g) {
  json c = json::object();
  for (int h = 0; h < 2; ++h) {
    const auto& comp = g.at[h];
    if (comp.rank == 0 && comp.torsion.is_trivial()) continue;
    c[std::to_string(h)] = component_json(comp);
  }
  return {{"mod", 2}, {"components", c}};
}

SymbolicGroup symbolic_from(const json& j) {
  if (small_int(field(j, "mod"), "mod") != 2) throw std::invalid_argument("triangle corners must be Z/2-graded");
  SymbolicGroup g;
  json c = field(j, "components");
  for (auto it = c.begin(); it != c.end(); ++it) {
    int h = int_key(it.key());
    if (h != 0 && h != 1) throw std::invalid_argument("Z/2 grades are 0 and 1");
    g.at[h] = component_from(it.value());
  }
  return g;
}

json to_json(const FiniteUnknown& u) {
  json j = {{"nonzero", u.nonzero}, {"approximate", u.approximate}, {"origin", u.origin}};
  if (u.extension_of) j["extension_of"] = json::array({to_json(u.extension_of->first), to_json(u.extension_of->second)});
  if (u.cokernel_of)
    j["cokernel_of"] = {{"source", to_json(u.cokernel_of->source)},
                        {"target", to_json(u.cokernel_of->target)},
                        {"image_rank", u.cokernel_of->image_rank}};
  if (u.subgroup_of) j["subgroup_of"] = to_json(*u.subgroup_of);
  return j;
}

FiniteUnknown unknown_from(const std::string& name, const json& j) {
  FiniteUnknown u;
  u.name = name;
  u.nonzero = j.value("nonzero", false);
  u.approximate = j.value("approximate", false);
  u.origin = j.value("origin", std::string());
  if (j.contains("extension_of")) {
    json e = j.at("extension_of");
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("extension_of needs [sub, quotient]");
    u.extension_of = std::make_pair(torsion_term_from(e[0]), torsion_term_from(e[1]));
  }
  if (j.contains("cokernel_of")) {
    json c = j.at("cokernel_of");
    u.cokernel_of = CokernelOrigin{group_from(field(c, "source")), group_from(field(c, "target")),
                                   small_unsigned(field(c, "image_rank"), "image_rank")};
  }
  if (j.contains("subgroup_of")) u.subgroup_of = group_from(j.at("subgroup_of"));
  return u;
}

json to_json(const TrianglePuzzle& p) {
  json corners = json::array();
  for (const auto& c : p.corners) corners.push_back(c ? to_json(*c) : json(nullptr));
  json symbols = json::object();
  for (const auto& [k, u] : p.symbols) symbols[k] = to_json(u);
  json j = {{"corners", corners},
            {"degrees", p.degrees},
            {"unknown", p.unknown_name},
            {"primes", primes_json(p.allowed_primes)},
            {"symbols", symbols},
            {"fresh_names", p.fresh_names},
            {"bound", to_json(p.order_bound)}};
  j["rank"] = p.rank_constraint ? json(*p.rank_constraint) : json(nullptr);
  return j;
}

TrianglePuzzle puzzle_from(const json& j) {
  TrianglePuzzle p;
  json c = field(j, "corners");
  if (!c.is_array() || c.size() != 3) throw std::invalid_argument("corners must list three entries");
  for (std::size_t i = 0; i < 3; ++i)
    if (!c[i].is_null()) p.corners[i] = symbolic_from(c[i]);
  if (j.contains("degrees")) {
    json d = j.at("degrees");
    if (!d.is_array() || d.size() != 3) throw std::invalid_argument("degrees must list three integers");
    for (std::size_t i = 0; i < 3; ++i) p.degrees[i] = small_int(d[i], "degree");
  }
  p.unknown_name = j.value("unknown", p.unknown_name);
  if (j.contains("rank") && !j.at("rank").is_null()) {
    json r = j.at("rank");
    if (!r.is_array() || r.size() != 2) throw std::invalid_argument("rank must list two integers");
    p.rank_constraint = std::array<unsigned, 2>{small_unsigned(r[0], "rank"), small_unsigned(r[1], "rank")};
  }
  if (j.contains("primes")) p.allowed_primes = primes_from(j.at("primes"));
  if (j.contains("symbols"))
    for (auto it = j.at("symbols").begin(); it != j.at("symbols").end(); ++it)
      p.symbols[it.key()] = unknown_from(it.key(), it.value());
  if (j.contains("fresh_names")) p.fresh_names = j.at("fresh_names").get<std::vector<std::string>>();
  if (j.contains("bound")) p.order_bound = integer_from(j.at("bound"));
  return p;
}

json to_json(const SolveResult& r) {
  json trace = json::array(), text = json::array(), fams = json::array();
  for (const auto& s : r.trace.steps) {
    trace.push_back(step_json(s));
    std::string premises;
    for (std::size_t i = 0; i < s.premises.size(); ++i) premises += (i ? "; " : "") + s.premises[i];
    text.push_back(rule_name(s.rule) + ": " + premises + " => " + s.conclusion);
  }
  for (const auto& f : r.families) {
    json symbols = json::object();
    for (const auto& [k, u] : f.symbols) symbols[k] = to_json(u);
    json kernel = json::array(), cokernel = json::array();
    for (int i = 0; i < 2; ++i) {
      kernel.push_back(component_json(f.kernel[i]));
      cokernel.push_back(component_json(f.cokernel[i]));
    }
    fams.push_back({{"group", to_json(f.group)},
                    {"text", f.group.to_string()},
                    {"description", f.describe()},
                    {"image_rank", f.image_rank},
                    {"kernel", kernel},
                    {"cokernel", cokernel},
                    {"symbols", symbols},
                    {"torsion_primes", primes_json(f.torsion_primes)}});
  }
  const auto& sc = r.schema;
  json j = {{"schema",
             {{"unknown_corner", sc.unknown_corner},
              {"source_corner", sc.source_corner},
              {"target_corner", sc.target_corner},
              {"map_degree", sc.map_degree},
              {"coker_shift", sc.coker_shift},
              {"ker_shift", sc.ker_shift}}},
            {"trace", trace},
            {"trace_text", text},
            {"families", fams}};
  if (r.concrete) {
    json c = json::array();
    for (const auto& g : *r.concrete) c.push_back(to_json(g));
    j["concrete"] = c;
  }
  return j;
}

json to_json(const LatticeProblem& p) {
  json c = json::array();
  for (const auto& x : p.offsets) c.push_back(to_json(x));
  return {{"offsets", c}, {"target", to_json(p.target)}};
}

LatticeProblem lattice_problem_from(const json& j) {
  LatticeProblem p;
  for (const auto& x : field(j, "offsets")) p.offsets.push_back(rational_from(x));
  p.target = rational_from(field(j, "target"));
  p.validate();
  return p;
}

json to_json(const ChargeFrame& f) {
  json s = json::array(), t = json::array();
  for (const auto& x : f.s) s.push_back(to_json(x));
  for (const auto& x : f.t) t.push_back(to_json(x));
  return {{"s", s}, {"t", t}};
}

ChargeFrame frame_from(const json& j) {
  ChargeFrame f;
  for (const auto& x : field(j, "s")) f.s.push_back(integer_from(x));
  for (const auto& x : field(j, "t")) f.t.push_back(integer_from(x));
  if (f.s.size() != f.t.size()) throw std::invalid_argument("frame vectors differ in length");
  return f;
}

json to_json(const ReducibleSolution& s) {
  json a = json::array();
  for (const auto& x : s.a) a.push_back(to_json(x));
  return {{"a", a},
          {"frame", to_json(s.frame)},
          {"kappa", to_json(s.kappa)},
          {"k", to_json(s.k)},
          {"l", to_json(s.l)},
          {"boundary_limit", s.boundary_limit()}};
}

}  // namespace extri::io
