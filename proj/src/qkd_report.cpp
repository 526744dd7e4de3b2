#include "couplingkit/qkd_report.hpp"

#include "couplingkit/coupling.hpp"
#include "couplingkit/errors.hpp"
#include "couplingkit/metrics.hpp"
#include "couplingkit/transport.hpp"

namespace couplingkit {

EpsilonAuditInput::EpsilonAuditInput(Pmf pk_, std::optional<Rat> epsilon_)
    : pk(std::move(pk_)), epsilon(std::move(epsilon_)) {
  if (epsilon && (epsilon->sign() < 0 || *epsilon > Rat(1))) {
    throw InvalidDistribution("epsilon must lie in [0, 1], got " + epsilon->str());
  }
}

EpsilonAuditReport epsilon_audit(const EpsilonAuditInput& input) {
  const Pmf& pk = input.pk;
  const Pmf pu = Pmf::uniform(pk.alphabet());

  EpsilonAuditReport r;
  r.n = pk.size();
  r.v = vdist_halfsum(pk, pu);

  const Coupling independent = coupling_independent(pk, pu);
  const Coupling maximal = coupling_maximal(pk, pu);
  r.independent_mismatch = mismatch_prob(independent);
  r.maximal_mismatch = mismatch_prob(maximal);

  const OracleResult oracle = lp_min_mismatch(pk, pu);
  r.oracle_min_mismatch = oracle.certificate.objective;
  r.certificate_verified = certify(oracle.coupling, oracle.certificate, TransportProblem::mismatch(pk, pu));

  const Rat one(1);
  for (std::size_t k = 0; k < pk.size(); ++k) {
    const bool pk_inside = pk[k].sign() > 0 && pk[k] < one;
    const bool pu_inside = pu[k].sign() > 0 && pu[k] < one;
    if (pk_inside && pu_inside) r.hypothesis_holds = true;
    if (!pk_inside) r.degenerate_key = true;
  }
  r.strict_gap_holds = r.hypothesis_holds && r.v < r.independent_mismatch;

  r.correlation_required = r.maximal_mismatch == r.v && !(maximal.matrix() == independent.matrix());
  r.lower_bound_all = r.certificate_verified && r.oracle_min_mismatch == r.v;
  r.strict_when_independent = r.v < r.independent_mismatch;

  r.epsilon = input.epsilon;
  r.epsilon_consistent = !input.epsilon || r.v <= *input.epsilon;
  return r;
}

EpsilonAuditReport uniform_key_report(std::size_t n) {
  if (n < 2) throw InvalidDistribution("uniform key report needs N >= 2, got " + std::to_string(n));
  return epsilon_audit(EpsilonAuditInput(Pmf::uniform(Alphabet::numbered(n))));
}

}  // namespace couplingkit
