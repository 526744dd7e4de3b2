#pragma once

#include <optional>

#include "couplingkit/distribution.hpp"

namespace couplingkit {

struct EpsilonAuditInput {
  Pmf pk;                      // real key distribution
  std::optional<Rat> epsilon;  // claimed bound with v(P_K,P_U) <= d <= epsilon

  /// Throws InvalidDistribution if epsilon lies outside [0, 1].
  EpsilonAuditInput(Pmf pk, std::optional<Rat> epsilon = std::nullopt);
};

/// Classical side of the trace-distance criterion for a key distribution P_K
/// against the uniform ideal key P_U over the same alphabet.
///
/// Every flag is backed by an exact quantity computed here:
///  - correlation_required: the maximal coupling attains v and differs from
///    the product coupling, so attaining v needs real/ideal correlation.
///  - lower_bound_all: the certified LP minimum of Pr{k != u} over all
///    couplings equals v, so v bounds every coupling from below.
///  - strict_when_independent: v < Pr{k != u} for independent keys.
struct EpsilonAuditReport {
  std::size_t n = 0;
  Rat v;
  Rat independent_mismatch;
  Rat maximal_mismatch;
  Rat oracle_min_mismatch;
  bool certificate_verified = false;
  bool hypothesis_holds = false;  // some k with 0 < P_K(k) < 1 and 0 < P_U(k) < 1
  bool strict_gap_holds = false;  // hypothesis_holds and v < independent_mismatch
  bool degenerate_key = false;    // some P_K(k) in {0, 1}

  bool correlation_required = false;
  bool lower_bound_all = false;
  bool strict_when_independent = false;

  std::optional<Rat> epsilon;
  bool epsilon_consistent = true;  // epsilon absent, or v <= epsilon
};

EpsilonAuditReport epsilon_audit(const EpsilonAuditInput& input);

/// Uniform real key against uniform ideal key over N symbols. Throws
/// InvalidDistribution for N < 2.
EpsilonAuditReport uniform_key_report(std::size_t n);

}  // namespace couplingkit
