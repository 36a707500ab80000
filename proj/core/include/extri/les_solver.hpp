#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "extri/abgroup.hpp"

namespace extri {

// Torsion of one grade: a concrete finite group or a named unknown finite group.
struct TorsionTerm {
  std::optional<FgAbelianGroup> value;
  std::string symbol;

  static TorsionTerm concrete(const FgAbelianGroup& g);
  static TorsionTerm named(const std::string& s) { return {std::nullopt, s}; }
  bool is_concrete() const { return value.has_value(); }
  bool is_trivial() const { return value && value->is_trivial(); }
  std::string to_string() const;
  friend bool operator==(const TorsionTerm& a, const TorsionTerm& b) {
    return a.value == b.value && a.symbol == b.symbol;
  }
};

struct SymbolicComponent {
  unsigned rank = 0;
  TorsionTerm torsion = TorsionTerm::concrete(FgAbelianGroup());
  friend bool operator==(const SymbolicComponent& a, const SymbolicComponent& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
};

// Z/2-graded group whose torsion may be symbolic.
struct SymbolicGroup {
  std::array<SymbolicComponent, 2> at;

  static SymbolicGroup from_graded(const GradedGroup& g);
  bool is_concrete() const;
  GradedGroup to_graded() const;  // requires is_concrete()
  SymbolicGroup shift(int n) const;
  std::string to_string() const;
  friend bool operator==(const SymbolicGroup& a, const SymbolicGroup& b) { return a.at == b.at; }
};

// Where a symbolic finite group came from; used to decide realizability.
struct CokernelOrigin {
  FgAbelianGroup source;  // free part only is used: source must be free
  FgAbelianGroup target;
  unsigned image_rank = 0;
};

struct FiniteUnknown {
  std::string name;
  bool nonzero = false;
  // 0 -> sub -> name -> quotient -> 0
  std::optional<std::pair<TorsionTerm, TorsionTerm>> extension_of;
  std::optional<CokernelOrigin> cokernel_of;
  // Subgroup of this concrete group.
  std::optional<FgAbelianGroup> subgroup_of;
  // True when the unknown only bounds the torsion (a free part was involved).
  bool approximate = false;
  std::string origin;
};

struct TrianglePuzzle {
  // corners[0] -> corners[1] -> corners[2] -> corners[0]; exactly one unknown.
  std::array<std::optional<SymbolicGroup>, 3> corners;
  std::array<int, 3> degrees{0, 0, 1};  // degree of the map leaving corner i, mod 2
  std::string unknown_name = "X";
  // Free rank of the unknown per grade, e.g. from rational dimensions.
  std::optional<std::array<unsigned, 2>> rank_constraint;
  // Allowed torsion primes (axiom); nothing means unrestricted.
  std::optional<std::set<std::uint64_t>> allowed_primes;
  // Known facts about symbols already appearing in the corners.
  std::map<std::string, FiniteUnknown> symbols;
  // Names handed out to new unknown finite groups, in order.
  std::vector<std::string> fresh_names{"K", "H", "G", "L", "M", "N", "P", "Q"};
  Integer order_bound = 4096;
};

// 0 -> coker(f)[coker_shift] -> X -> ker(f)[ker_shift] -> 0 for the map f
// between the two known corners.
struct SesSchema {
  std::size_t unknown_corner = 0;
  std::size_t source_corner = 1;  // domain of f
  std::size_t target_corner = 2;  // codomain of f
  int map_degree = 0;
  int coker_shift = 0;
  int ker_shift = 0;
  std::string to_string(const std::string& x) const;
};

SesSchema split_les(const TrianglePuzzle& p);

enum class Rule {
  SplitLes,
  RankAdditivity,
  GradingRankBound,
  TorsionToFree,
  FreeKernel,
  NonSplitDetect,
  SplitOnFreeQuotient,
  TorsionTransfer,
  ExtensionOrder,
  PrimeRestriction,
};

std::string rule_name(Rule r);

struct RuleApplication {
  Rule rule;
  int grade = 0;
  std::vector<std::string> premises;
  std::string conclusion;
  // Numeric witnesses re-checked by replay; layout depends on the rule.
  std::vector<long> data;
};

struct DeductionTrace {
  std::vector<RuleApplication> steps;
};

// One consistent branch: the unknown as a symbolic group plus the symbols it uses.
struct SolutionFamily {
  SymbolicGroup group;
  std::array<unsigned, 2> image_rank{};            // rank of f per source grade
  std::array<SymbolicComponent, 2> kernel;         // per source grade
  std::array<SymbolicComponent, 2> cokernel;       // per target grade
  std::map<std::string, FiniteUnknown> symbols;
  std::optional<std::set<std::uint64_t>> torsion_primes;
  std::string describe() const;
};

struct SolveResult {
  SesSchema schema;
  DeductionTrace trace;
  std::vector<SolutionFamily> families;
  // Filled when both known corners are finite: every solution explicitly.
  std::optional<std::vector<GradedGroup>> concrete;
  bool consistent() const { return !families.empty() || (concrete && !concrete->empty()); }
};

// Throws std::domain_error when the constraints admit nothing, naming the
// first rule that eliminated the last branch.
SolveResult apply_rules(const TrianglePuzzle& p);

bool replay_trace(const DeductionTrace& t);

struct VerifyResult {
  bool ok = false;
  std::string reason;
  std::map<std::string, FgAbelianGroup> witness;  // symbol -> concrete value
};

VerifyResult verify_solution(const TrianglePuzzle& p, const GradedGroup& candidate);

// Concrete cokernel torsion of a map Z^b -> target with the given image rank,
// found by a bounded search over diagonal maps with torsion components.
bool cokernel_realizable(const CokernelOrigin& o, const FgAbelianGroup& torsion, int entry_bound = 4);

struct CorollaryStatement {
  std::string text;
  bool verified = false;
  bool vacuous = false;
};

CorollaryStatement corollary_check(const TrianglePuzzle& p);

// Some field dimension comparison decided from a family; nothing when undecided.
std::optional<bool> family_is_l_space(const SolutionFamily& f, Field k);

struct PoincareInputs {
  GradedGroup lens_space;   // I# of the +5 surgery
  GradedGroup knot;         // knot group of the trefoil
  std::array<unsigned, 2> rank_n3{3, 0};
  std::array<unsigned, 2> rank_n1{1, 0};
  std::array<int, 3> degrees{0, 0, 1};
  std::optional<std::set<std::uint64_t>> allowed_primes = std::set<std::uint64_t>{2};

  static PoincareInputs standard();
};

struct PoincareReport {
  SolveResult step1;
  SolveResult step2;
  std::string a3;
  std::string a1;
  std::string torsion_statement;
  std::string verdict;
  bool f2_l_space = true;
};

PoincareReport poincare_pipeline(const PoincareInputs& in);

}  // namespace extri
