#include "commands.hpp"

#include <stdexcept>

#include "extri/index_calc.hpp"
#include "extri/snf.hpp"

namespace extri::cli {

namespace {

using io::field;
using io::to_json;

// A report fed back as input carries its input under "input".
json unwrap(const json& in) {
  if (in.is_object() && in.contains("input")) return in.at("input");
  return in;
}

json need_input(const std::optional<json>& in, const std::string& what) {
  if (!in) throw std::invalid_argument("this command needs " + what + " as input");
  return unwrap(*in);
}

json dims_json(const std::map<int, std::uint64_t>& d) {
  json o = json::object();
  for (const auto& [g, n] : d) o[std::to_string(g)] = n;
  return o;
}

Integer bound_or(const Options& opt, const Integer& fallback) {
  if (!opt.bound) return fallback;
  Integer b;
  if (b.set_str(*opt.bound, 10) != 0 || b <= 0) throw std::invalid_argument("--bound must be a positive integer");
  return b;
}

// --- snf -------------------------------------------------------------------

json cmd_snf(const std::optional<json>& in, const Options&) {
  json src = need_input(in, "a matrix");
  if (src.contains("matrix")) src = src.at("matrix");
  IntMatrix m = io::int_matrix_from(src);
  auto s = smith_normal_form(m);
  json diag = json::array();
  for (const auto& d : s.diagonal()) diag.push_back(to_json(d));
  IntMatrix relations = m.transpose();
  return {{"input", {{"matrix", to_json(m)}}},
          {"U", to_json(s.U)},
          {"D", to_json(s.D)},
          {"V", to_json(s.V)},
          {"diagonal", diag},
          {"rank", s.rank()},
          {"cokernel", to_json(cokernel_presentation(relations))}};
}

// --- homology --------------------------------------------------------------

json cmd_homology(const std::optional<json>& in, const Options& opt) {
  json src = need_input(in, "a complex");
  if (src.contains("complex")) src = src.at("complex");
  if (!src.contains("modulus") && opt.modulus) src["modulus"] = *opt.modulus;
  ZComplex c = io::complex_from(src);
  GradedGroup h = homology(c);
  json out = {{"input", {{"complex", to_json(c)}}},
              {"homology", to_json(h)},
              {"text", h.to_string()},
              {"dims", {{"Q", dims_json(homology_dims(c, Field::rationals()))},
                        {"F" + std::to_string(opt.prime), dims_json(homology_dims(c, Field::prime(opt.prime)))}}}};
  if (c.modulus() == 0 || c.modulus() % 2 == 0) {
    long chain_chi = 0;
    for (const auto& [g, n] : c.ranks()) chain_chi += (g % 2 == 0 ? 1 : -1) * static_cast<long>(n);
    out["euler_characteristic"] = {{"chains", chain_chi}, {"homology", h.euler_characteristic()}};
  }
  return out;
}

// --- cone ------------------------------------------------------------------

json cmd_cone(const std::optional<json>& in, const Options&) {
  json src = need_input(in, "a chain map");
  if (src.contains("map")) src = src.at("map");
  ZChainMap f = io::chain_map_from(src);
  Cone cone = mapping_cone(f);
  GradedGroup h = homology(cone.complex);
  return {{"input", {{"map", to_json(f)}}},
          {"cone", to_json(cone.complex)},
          {"homology", to_json(h)},
          {"text", h.to_string()},
          {"quasi_isomorphism", h.is_trivial()}};
}

// --- ss --------------------------------------------------------------------

json pages_json(const SpectralSequence& ss) {
  json pages = json::array();
  for (const auto& p : ss.pages) {
    json entries = json::array();
    for (const auto& [key, n] : p.dims) {
      if (n == 0) continue;
      entries.push_back({{"level", key.first}, {"grade", key.second}, {"dim", n},
                         {"d_rank", p.d_rank(key.first, key.second)}});
    }
    pages.push_back({{"r", p.r}, {"total", p.total()}, {"entries", entries}});
  }
  return {{"pages", pages},
          {"collapse_page", ss.collapse_page},
          {"homology", dims_json(ss.homology)},
          {"abutment_ok", ss.abutment_ok}};
}

json six_step_json(const SixStepReport& r, std::uint64_t p) {
  return {{"prime", p},
          {"d1_cross_zero", r.d1_cross_zero},
          {"d2_columns_zero", r.d2_columns_zero},
          {"d3_isomorphisms", r.d3_isomorphisms},
          {"e4_zero", r.e4_zero},
          {"collapse_page", r.ss.collapse_page},
          {"ok", r.ok()}};
}

TriangleHypotheses seeded_or_given(const std::optional<json>& in, const Options& opt, json& echo) {
  if (opt.seed && !in) {
    TriangleHypotheses h = generate_valid_instance(*opt.seed);
    echo = {{"hypotheses", to_json(h)}};
    return h;
  }
  json src = need_input(in, "triangle hypotheses or --seed");
  if (src.contains("hypotheses")) src = src.at("hypotheses");
  TriangleHypotheses h = io::hypotheses_from(src);
  echo = {{"hypotheses", to_json(h)}};
  return h;
}

json cmd_ss(const std::optional<json>& in, const Options& opt) {
  bool lin = (opt.seed && !in) || (in && unwrap(*in).contains("hypotheses"));
  if (lin) {
    json echo;
    TriangleHypotheses h = seeded_or_given(in, opt, echo);
    PhiCone cone = build_phi_cone(h);
    SixStepReport rep = run_six_step_ss(cone, opt.prime);
    json out = pages_json(rep.ss);
    out["input"] = echo;
    out["prime"] = opt.prime;
    out["six_step"] = six_step_json(rep, opt.prime);
    return out;
  }
  json src = need_input(in, "a filtration");
  if (src.contains("filtration")) src = src.at("filtration");
  Filtration f = io::filtration_from(src);
  json out = pages_json(spectral_sequence(f, opt.prime));
  out["input"] = {{"filtration", to_json(f)}};
  out["prime"] = opt.prime;
  return out;
}

// --- lin-check -------------------------------------------------------------

json cmd_pi_certificate(const std::optional<json>& in, const Options& opt) {
  PiAlgebraDatum d;
  if (opt.seed && !in) {
    d = synthetic_pi_datum(*opt.seed);
  } else {
    json src = need_input(in, "a Pi-algebra datum or --seed");
    if (src.contains("datum")) src = src.at("datum");
    d = io::pi_datum_from(src);
  }
  PiCertificate c = pi_combination_certificate(d);
  json log = json::array();
  for (const auto& s : c.log) {
    json e = {{"relation", s.relation}, {"holds", s.holds}};
    if (!s.holds) e["residual"] = to_json(s.residual);
    log.push_back(e);
  }
  json cert = {{"ok", c.ok}, {"failure", c.failure}, {"log", log}};
  bool replay = false, special = false;
  if (c.ok) {
    cert["n"] = to_json(c.n);
    cert["nilpotency_exponent"] = c.nilpotency_exponent;
    cert["inverse"] = to_json(c.inverse);
    cert["k_total"] = to_json(c.k_total);
    replay = replay_certificate(d, c);
    special = specialization_commutes(d, c);
  }
  return {{"input", {{"datum", to_json(d)}, {"pi", true}}},
          {"certificate", cert},
          {"replay", replay},
          {"specialization_commutes", special},
          {"ok", c.ok && replay && special}};
}

json cmd_lin_check(const std::optional<json>& in, const Options& opt) {
  bool pi = opt.pi || (in && unwrap(*in).value("pi", false));
  if (pi) return cmd_pi_certificate(in, opt);
  json echo;
  TriangleHypotheses h = seeded_or_given(in, opt, echo);
  auto mode = opt.certificate ? QuasiIsoMode::Certificate : QuasiIsoMode::Homology;
  HypothesisReport rep = verify_hypotheses(h, mode);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    if (!c.passed) e["residual"] = to_json(c.residual);
    checks.push_back(e);
  }
  json out = {{"input", echo},
              {"mode", opt.certificate ? "certificate" : "homology"},
              {"checks", checks},
              {"failing", rep.failing()},
              {"passed", rep.all_passed()}};
  bool ok = rep.all_passed();
  if (ok) {
    bool acyclic = is_acyclic(build_total(h));
    DeltaReport delta = build_delta(h);
    SixStepReport ss = run_six_step_ss(build_phi_cone(h), opt.prime);
    out["total_acyclic"] = acyclic;
    out["delta"] = {{"anti_chain", delta.anti_chain}, {"quasi_iso", delta.quasi_iso}};
    out["six_step"] = six_step_json(ss, opt.prime);
    ok = acyclic && delta.anti_chain && delta.quasi_iso && ss.ok();
  }
  out["ok"] = ok;
  return out;
}

// --- triangle-solve --------------------------------------------------------

json cmd_triangle_solve(const std::optional<json>& in, const Options& opt) {
  json src = need_input(in, "a triangle puzzle");
  json pj = src.contains("puzzle") ? src.at("puzzle") : src;
  TrianglePuzzle p = io::puzzle_from(pj);
  p.order_bound = bound_or(opt, p.order_bound);
  json echo = {{"puzzle", to_json(p)}};
  SolveResult r = apply_rules(p);
  CorollaryStatement cor = corollary_check(p);
  json out = {{"result", to_json(r)},
              {"replay", replay_trace(r.trace)},
              {"corollary", {{"text", cor.text}, {"verified", cor.verified}, {"vacuous", cor.vacuous}}}};
  if (src.contains("candidate") && !src.at("candidate").is_null()) {
    GradedGroup cand = io::graded_from(src.at("candidate"));
    echo["candidate"] = to_json(cand);
    VerifyResult v = verify_solution(p, cand);
    json w = json::object();
    for (const auto& [k, g] : v.witness) w[k] = to_json(g);
    out["verify"] = {{"ok", v.ok}, {"reason", v.reason}, {"witness", w}};
  }
  out["input"] = echo;
  return out;
}

// --- poincare --------------------------------------------------------------

std::string family_summary(const SolutionFamily& f) {
  std::string s = f.group.to_string();
  for (const auto& comp : f.group.at) {
    if (comp.torsion.is_concrete()) continue;
    auto it = f.symbols.find(comp.torsion.symbol);
    bool nonzero = it != f.symbols.end() && it->second.nonzero;
    std::string kind = "finite group";
    if (f.torsion_primes && f.torsion_primes->size() == 1)
      kind = std::to_string(*f.torsion_primes->begin()) + "-group";
    s += ", " + comp.torsion.symbol + " a " + (nonzero ? "nontrivial " : "") + kind;
  }
  return s;
}

json cmd_poincare(const std::optional<json>& in, const Options&) {
  PoincareInputs pin = PoincareInputs::standard();
  if (in) {
    json src = unwrap(*in);
    if (src.contains("lens_space")) pin.lens_space = io::graded_from(src.at("lens_space"));
    if (src.contains("knot")) pin.knot = io::graded_from(src.at("knot"));
    auto pair = [](const json& j) {
      if (!j.is_array() || j.size() != 2) throw std::invalid_argument("rank constraints list two integers");
      return std::array<unsigned, 2>{j[0].get<unsigned>(), j[1].get<unsigned>()};
    };
    if (src.contains("rank_n3")) pin.rank_n3 = pair(src.at("rank_n3"));
    if (src.contains("rank_n1")) pin.rank_n1 = pair(src.at("rank_n1"));
    if (src.contains("degrees")) pin.degrees = src.at("degrees").get<std::array<int, 3>>();
    if (src.contains("primes")) {
      if (src.at("primes").is_null())
        pin.allowed_primes.reset();
      else
        pin.allowed_primes = src.at("primes").get<std::set<std::uint64_t>>();
    }
  }
  PoincareReport rep = poincare_pipeline(pin);
  json primes = pin.allowed_primes ? json(std::vector<std::uint64_t>(pin.allowed_primes->begin(), pin.allowed_primes->end()))
                                   : json(nullptr);
  json echo = {{"lens_space", to_json(pin.lens_space)}, {"knot", to_json(pin.knot)}, {"rank_n3", pin.rank_n3},
               {"rank_n1", pin.rank_n1},                {"degrees", pin.degrees},      {"primes", primes}};
  return {{"input", echo},
          {"A3", rep.a3},
          {"A1", rep.a1},
          {"torsion", rep.torsion_statement},
          {"verdict", rep.verdict},
          {"f2_l_space", rep.f2_l_space},
          {"report", "I^#(P;Z) = " + family_summary(rep.step2.families.front()) + "; " + rep.verdict},
          {"step1", to_json(rep.step1)},
          {"step2", to_json(rep.step2)}};
}

// --- index -----------------------------------------------------------------

ClosedPairTopology topology_from(const json& j) {
  ClosedPairTopology t;
  auto opt_int = [&](const char* k) -> std::optional<Integer> {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return io::integer_from(j.at(k));
  };
  t.chi = opt_int("chi");
  t.sigma = opt_int("sigma");
  t.b1 = opt_int("b1");
  t.b_plus = opt_int("b_plus");
  if (t.chi.has_value() != t.sigma.has_value()) throw std::invalid_argument("chi and sigma come together");
  if (t.b1.has_value() != t.b_plus.has_value()) throw std::invalid_argument("b1 and b_plus come together");
  t.chi_surface = opt_int("chi_surface").value_or(0);
  t.self_intersection = opt_int("self_intersection").value_or(0);
  return t;
}

FlatLimit limit_from(const json& j) {
  FlatLimit b{j.value("name", std::string("b")), j.at("h0").get<unsigned>(), j.at("h1").get<unsigned>()};
  b.validate();
  return b;
}

IndexConvention convention_from(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "plain") return IndexConvention::Plain;
  if (s == "plus") return IndexConvention::Plus;
  throw std::invalid_argument("index convention is plain or plus");
}

json rp3_json(const Rp3IndexSet& s) {
  json idx = json::array(), kap = json::array();
  for (std::size_t i = 0; i < s.indices.size(); ++i) {
    idx.push_back(to_json(s.indices[i]));
    kap.push_back(to_json(s.kappas[i]));
  }
  return {{"modulus", to_json(s.modulus)}, {"residue", to_json(s.residue)}, {"minimum", to_json(s.minimum)},
          {"indices", idx},                {"kappas", kap},                  {"contains_one", s.contains_one}};
}

json charge_json(const ChargePoint& p) {
  return {{"k0", to_json(p.k0)}, {"l0", to_json(p.l0)}, {"kappa", to_json(p.kappa)}, {"index", to_json(p.index)}};
}

json claim(const std::string& name, const json& value, bool holds) {
  return {{"claim", name}, {"value", value}, {"holds", holds}};
}

json index_claims() {
  json out = json::array();
  Rational s2s2 = index_closed(ClosedPairTopology::from_chi_sigma(4, 0), 0);
  out.push_back(claim("S2xS2 flat index", to_json(s2s2), s2s2 == -6));

  auto same = rp3_cylinder_indices(true, false, 10);
  bool affine = true;
  for (std::size_t i = 0; i < same.indices.size(); ++i) affine = affine && same.indices[i] == 8 * same.kappas[i] - 3;
  out.push_back(claim("RP3 equal limits: Ind = 8 kappa - 3", rp3_json(same), affine && !same.contains_one));
  auto pos = rp3_cylinder_indices(true, true, 10);
  out.push_back(claim("RP3 equal limits, kappa > 0: Ind >= 5", to_json(pos.minimum), pos.minimum == 5));
  auto diff = rp3_cylinder_indices(false, false, 10);
  out.push_back(claim("RP3 unequal limits: Ind = 3 mod 8", rp3_json(diff),
                      diff.modulus == 8 && diff.residue == 3 && !diff.contains_one));

  FlatLimit c{"c", 1, 0};
  Integer total = glue_index(0, -1, c);
  out.push_back(claim("0 = 1 + Ind(A) + Ind(B) at (Ind(A), Ind(B)) = (0, -1)", to_json(total), total == 0));

  auto flat = s2xs1_breaking_bound(true), nonflat = s2xs1_breaking_bound(false);
  out.push_back(claim("S2xS1: 8 kappa = Ind + 2, flat", {{"index", to_json(flat.index)}, {"offset", to_json(flat.offset)}},
                      flat.offset == 2 && flat.index == -2 && 8 * flat.kappa == flat.index + flat.offset));
  out.push_back(claim("S2xS1: non-flat Ind >= 6",
                      {{"index", to_json(nonflat.index)}, {"bound", nonflat.bound ? to_json(*nonflat.bound) : json()}},
                      nonflat.bound && *nonflat.bound == 6 && nonflat.index == 6));

  auto scan = charge_index_scan(2);
  bool formula = !scan.empty();
  for (const auto& p : scan) formula = formula && p.index == 8 * p.k0 + 4 * p.l0 - 1 && p.index >= -1;
  out.push_back(claim("Ind = 8 k0 + 4 l0 - 1 >= -1", to_json(Integer(static_cast<long>(scan.size()))), formula));
  ChargePoint m = charge_point(0, 0);
  out.push_back(claim("minimal pair (0, 0) -> (Ind, kappa) = (-1, 1/8)", charge_json(m),
                      m.index == -1 && m.kappa == Rational(1, 8) && scan.front().index == m.index));
  return out;
}

json cmd_index(const std::optional<json>& in, const Options& opt) {
  json q = in ? unwrap(*in) : json{{"op", "claims"}};
  std::string op = field(q, "op").get<std::string>();
  json result;
  bool ok = true;
  if (op == "claims") {
    result = index_claims();
    for (const auto& c : result) ok = ok && c.at("holds").get<bool>();
  } else if (op == "closed") {
    Rational ind = index_closed(topology_from(field(q, "topology")), io::rational_from(field(q, "kappa")));
    result = {{"index", to_json(ind)}, {"integral", is_integral(ind)}};
  } else if (op == "glue") {
    result = to_json(glue_index(io::integer_from(field(q, "i1")), io::integer_from(field(q, "i2")),
                                limit_from(field(q, "limit"))));
  } else if (op == "close_up") {
    result = to_json(close_up_index(io::integer_from(field(q, "index")), limit_from(field(q, "limit"))));
  } else if (op == "convert") {
    result = to_json(convert_index(io::integer_from(field(q, "index")), limit_from(field(q, "limit")),
                                   convention_from(field(q, "from")), convention_from(field(q, "to"))));
  } else if (op == "rp3") {
    Integer kb = q.contains("kappa_bound") ? io::integer_from(q.at("kappa_bound")) : Integer(100);
    result = rp3_json(rp3_cylinder_indices(field(q, "same_limits").get<bool>(), q.value("kappa_positive", false),
                                           bound_or(opt, kb)));
  } else if (op == "s2xs1") {
    auto b = s2xs1_breaking_bound(field(q, "flat").get<bool>());
    result = {{"offset", to_json(b.offset)}, {"index", to_json(b.index)}, {"kappa", to_json(b.kappa)},
              {"bound", b.bound ? to_json(*b.bound) : json(nullptr)}};
  } else if (op == "central") {
    result = to_json(central_limit_index(io::integer_from(field(q, "index")), limit_from(field(q, "generic")),
                                         limit_from(field(q, "central"))));
  } else if (op == "charge_point") {
    result = charge_json(charge_point(io::rational_from(field(q, "k0")), io::rational_from(field(q, "l0"))));
  } else if (op == "charge_scan") {
    Rational b = q.contains("bound") ? io::rational_from(q.at("bound")) : Rational(2);
    if (opt.bound) b = Rational(bound_or(opt, 1));
    result = json::array();
    for (const auto& p : charge_index_scan(b)) result.push_back(charge_json(p));
  } else if (op == "expected_dimension") {
    result = to_json(expected_dimension(io::integer_from(field(q, "b1")), io::integer_from(field(q, "b_plus")),
                                        io::integer_from(field(q, "chi_surface")),
                                        io::integer_from(field(q, "self_intersection"))));
  } else {
    throw std::invalid_argument("unknown index op: " + op);
  }
  json out = {{"input", q}, {"result", result}};
  if (op == "claims") out["ok"] = ok;
  return out;
}

// --- moduli ----------------------------------------------------------------

json frame_problem(const ChargeFrame& f, const Rational& kappa, const std::optional<std::vector<Integer>>& twist) {
  json sols = json::array(), twisted = json::array();
  auto found = reducibles_with_charges(f, kappa);
  for (const auto& s : found) {
    sols.push_back(to_json(s));
    if (twist) twisted.push_back(to_json(xi_twist(s, *twist)));
  }
  json q = {{"frame", to_json(f)}, {"kappa", to_json(kappa)}};
  json out = {{"problem", to_json(f.problem(kappa))}, {"solutions", sols}, {"count", found.size()}};
  if (twist) {
    json t = json::array();
    for (const auto& x : *twist) t.push_back(to_json(x));
    q["twist"] = t;
    out["twisted"] = twisted;
  }
  out["query"] = q;
  return out;
}

json one_moduli(const json& q) {
  if (q.contains("frame")) {
    std::optional<std::vector<Integer>> twist;
    if (q.contains("twist") && !q.at("twist").is_null()) {
      twist.emplace();
      for (const auto& x : q.at("twist")) twist->push_back(io::integer_from(x));
    }
    return frame_problem(io::frame_from(q.at("frame")), io::rational_from(field(q, "kappa")), twist);
  }
  LatticeProblem p = io::lattice_problem_from(q);
  json pts = json::array();
  auto found = enumerate_reducibles(p);
  for (const auto& a : found) {
    json v = json::array();
    for (const auto& x : a) v.push_back(to_json(x));
    pts.push_back(v);
  }
  return {{"query", to_json(p)}, {"points", pts}, {"count", found.size()}};
}

json cmd_moduli(const std::optional<json>& in, const Options&) {
  json queries;
  if (in) {
    json src = unwrap(*in);
    queries = src.contains("problems") ? src.at("problems") : json::array({src});
  } else {
    // The two blow-up problems: trivial and nontrivial boundary limit.
    json s = json::array({"-1", "-1"}), twist = json::array({"-1", "1"});
    queries = json::array({{{"frame", {{"s", s}, {"t", json::array({"0", "0"})}}}, {"kappa", "1/8"}, {"twist", twist}},
                           {{"frame", {{"s", s}, {"t", json::array({"-1", "1"})}}}, {"kappa", "1/8"}, {"twist", twist}}});
  }
  if (!queries.is_array()) throw std::invalid_argument("problems must be an array");
  json results = json::array(), echo = json::array();
  for (const auto& q : queries) {
    json r = one_moduli(q);
    echo.push_back(r.at("query"));
    results.push_back(r);
  }
  return {{"input", {{"problems", echo}}}, {"results", results}};
}

}  // namespace

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"snf", cmd_snf},
      {"homology", cmd_homology},
      {"lin-check", cmd_lin_check},
      {"cone", cmd_cone},
      {"ss", cmd_ss},
      {"triangle-solve", cmd_triangle_solve},
      {"poincare", cmd_poincare},
      {"index", cmd_index},
      {"moduli", cmd_moduli},
  };
  return table;
}

Outcome run(const std::string& name, const std::optional<json>& input, const Options& opt) {
  Outcome o;
  auto it = commands().find(name);
  if (it == commands().end()) {
    o.exit_code = 2;
    o.output = {{"error", "unknown subcommand: " + name}, {"kind", "usage"}};
    return o;
  }
  try {
    if (opt.prime != 0 && !is_prime(opt.prime)) throw std::invalid_argument("--prime must be a prime");
    o.output = it->second(input, opt);
    o.input = o.output.value("input", json(nullptr));
    if (!o.output.value("ok", true)) o.exit_code = 1;
  } catch (const std::domain_error& e) {
    o.exit_code = 1;
    o.output = {{"error", e.what()}, {"kind", "domain"}};
  } catch (const json::exception& e) {
    o.exit_code = 2;
    o.output = {{"error", e.what()}, {"kind", "input"}};
  } catch (const std::invalid_argument& e) {
    o.exit_code = 2;
    o.output = {{"error", e.what()}, {"kind", "input"}};
  } catch (const std::out_of_range& e) {
    o.exit_code = 2;
    o.output = {{"error", e.what()}, {"kind", "input"}};
  }
  return o;
}

}  // namespace extri::cli
