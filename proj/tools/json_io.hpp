#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "extri/abgroup.hpp"
#include "extri/chain.hpp"
#include "extri/energy_order.hpp"
#include "extri/laurent.hpp"
#include "extri/les_solver.hpp"
#include "extri/lin_triangle.hpp"
#include "extri/matrix.hpp"
#include "extri/moduli_enum.hpp"

namespace extri::io {

using json = nlohmann::json;

// Sorted keys (integer-looking keys numerically, before the others), two-space
// indent, trailing newline.
std::string canonical_dump(const json& j);
std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

// Malformed documents raise std::invalid_argument with a path-like message.
json field(const json& obj, const std::string& key);

json to_json(const Integer& x);
json to_json(const Rational& q);
Integer integer_from(const json& j);
Rational rational_from(const json& j);

json to_json(const IntMatrix& m);
json to_json(const LaurentMatrix& m);
json to_json(const LaurentPoly& p);
IntMatrix int_matrix_from(const json& j);
LaurentMatrix laurent_matrix_from(const json& j);

json to_json(const FgAbelianGroup& g);
json to_json(const GradedGroup& g);
FgAbelianGroup group_from(const json& j);
GradedGroup graded_from(const json& j);

json to_json(const ZComplex& c);
ZComplex complex_from(const json& j);
json to_json(const ZChainMap& f);
ZChainMap chain_map_from(const json& j);
json to_json(const Filtration& f);
Filtration filtration_from(const json& j);

json to_json(const TriangleHypotheses& h);
TriangleHypotheses hypotheses_from(const json& j);

json to_json(const PiAlgebraDatum& d);
PiAlgebraDatum pi_datum_from(const json& j);

json to_json(const TorsionTerm& t);
json to_json(const SymbolicGroup& g);
json to_json(const FiniteUnknown& u);
json to_json(const TrianglePuzzle& p);
json to_json(const SolveResult& r);
TorsionTerm torsion_term_from(const json& j);
SymbolicGroup symbolic_from(const json& j);
FiniteUnknown unknown_from(const std::string& name, const json& j);
TrianglePuzzle puzzle_from(const json& j);

json to_json(const LatticeProblem& p);
LatticeProblem lattice_problem_from(const json& j);
json to_json(const ChargeFrame& f);
ChargeFrame frame_from(const json& j);
json to_json(const ReducibleSolution& s);

}  // namespace extri::io
