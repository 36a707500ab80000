#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extri/laurent.hpp"
#include "extri/nilpotent.hpp"

namespace extri {

struct OrderedBasis {
  std::vector<std::string> labels;
  BasisOrder order;  // grading class in Z/4 and position inside the class

  std::size_t size() const { return labels.size(); }
  void validate() const;
  // Labels e0, e1, ... ordered by index inside each grading class.
  static OrderedBasis by_index(const std::vector<int>& grades);
};

struct EnergyOrderCheck {
  bool ok = false;
  std::optional<std::pair<std::size_t, std::size_t>> offending;
  std::string reason;
};

// Entries may only connect equal gradings and must sit on or above the
// diagonal of the order (strictly above when strict).
EnergyOrderCheck check_energy_ordered(const LaurentMatrix& l, const OrderedBasis& basis, bool strict);

// Projector data on a complex (d, basis) with homotopy witnesses:
//   pi_plus + pi_minus - Id = [k_sum]
//   pi_plus^2 - (pi_plus - n_plus) = [k_plus]
//   pi_minus^2 - (pi_minus - n_minus) = [k_minus]
// where [K] = d K + K d.
struct PiAlgebraDatum {
  OrderedBasis basis;
  LaurentMatrix d;
  LaurentMatrix pi_plus, pi_minus, n_plus, n_minus;
  LaurentMatrix k_sum, k_plus, k_minus;

  std::size_t size() const { return d.rows(); }
  void validate_shapes() const;
};

LaurentMatrix homotopy_bracket(const LaurentMatrix& d, const LaurentMatrix& k);

struct CertificateStep {
  std::string relation;
  bool holds = false;
  LaurentMatrix residual;
};

struct PiCertificate {
  bool ok = false;
  std::string failure;              // first failing step, if any
  LaurentMatrix n;                  // -n_minus + n_plus (T + T^-1 - 1)
  unsigned nilpotency_exponent = 0;
  LaurentMatrix inverse;            // (Id + n)^-1
  LaurentMatrix k_total;            // product - (Id + n) = [k_total]
  std::vector<CertificateStep> log;
};

// Checks every witness, forms n, proves it nilpotent, and replays
//   (pi_plus + T^-1 pi_minus)(pi_plus + T pi_minus)(Id + n)^-1 - Id = [k_total (Id + n)^-1].
PiCertificate pi_combination_certificate(const PiAlgebraDatum& datum);

// Re-runs each logged identity from the datum and certificate.
bool replay_certificate(const PiAlgebraDatum& datum, const PiCertificate& cert);

// Certificate computed at T = 1 agrees with the specialization of the
// Laurent certificate.
bool specialization_commutes(const PiAlgebraDatum& datum, const PiCertificate& cert);

// Seeded datum with every witness exact and n_plus = n_minus strictly upper
// triangular for the by-index order. pairs: number of acyclic pairs x -> y;
// singles: generators with zero differential.
PiAlgebraDatum synthetic_pi_datum(std::uint64_t seed, std::size_t pairs = 2, std::size_t singles = 2);

}  // namespace extri
