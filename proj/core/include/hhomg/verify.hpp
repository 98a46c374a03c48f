// Executable numeric checks of the framework assumptions and of the
// discretization quality, runnable against any assembled hierarchy.
//
// HM4/HM7 and IA2 are exact identities (checked at 1e-10 relative); HM1,
// HM6 and IA1 are stability-across-levels monitors, since the underlying
// constants are not pinned quantitatively.

#pragma once

#include <string>
#include <vector>

#include "hhomg/system.hpp"
#include "hhomg/transfer.hpp"

namespace hhomg {

struct AssumptionEntry {
  std::string id;      // HM1, HM4, HM6, HM7, IA1, IA2, SPD, RATE
  int level = 0;       // level, or the fine level of a pair
  double measured = 0.0;
  double threshold = 0.0;  // pass iff measured <= threshold (see note)
  bool pass = false;
  std::string note;
};

struct AssumptionReport {
  std::vector<AssumptionEntry> entries;

  bool all_pass() const;
  void append(const AssumptionReport& other);
  std::string to_text() const;
  std::string to_csv() const;
};

/// U gamma w = w and theta(U gamma w, gamma w) = w (hence Q gamma w =
/// -grad w) for random continuous piecewise-linear w vanishing on the
/// boundary; per level.
AssumptionReport check_hm4(const DiscreteHierarchy& h, int samples = 20);

/// I gamma_{l-1} w = gamma_l w per level pair.
AssumptionReport check_ia2(const DiscreteHierarchy& h, const std::vector<TransferPair>& transfers,
                           int samples = 20);

/// Combined HM4 + IA2 suite for one injection operator.
AssumptionReport check_hm4_ia2(const DiscreteHierarchy& h,
                               const std::vector<TransferPair>& transfers, int samples = 20);

/// s_l(gamma w, mu) = 0 against random mu.
AssumptionReport check_hm7(const DiscreteHierarchy& h, int samples = 20);

/// lambda_max(A_l) h_l^2 stability, consecutive-level lambda_max ratio in
/// [2,8] (asserted in 2D), and the sampled lower bound ||mu||_l^2 <= C a(mu,mu).
AssumptionReport check_hm6(const DiscreteHierarchy& h, int power_iterations = 200,
                           int samples = 20);

/// max_mu ||U mu - mu||_l / (h_l ||mu||_a), non-increase beyond factor 2
/// across levels.
AssumptionReport check_hm1(const DiscreteHierarchy& h, int samples = 20);

/// max_rho ||I rho||_l / ||rho||_{l-1}, growth <= 10% per added level.
AssumptionReport check_ia1(const DiscreteHierarchy& h, const std::vector<TransferPair>& transfers,
                           int samples = 20);

/// Matrix symmetry, positive definiteness on random vectors, and the
/// restriction adjoint identity <P rho, mu>_{l-1} = <rho, I mu>_l at 1e-12.
AssumptionReport check_spd_adjoint(const DiscreteHierarchy& h,
                                   const std::vector<TransferPair>& transfers, int samples = 20);

/// Energy and L2 errors of the discrete solution against the manufactured
/// solution on `levels` successive meshes (direct solves), with the observed
/// orders log2(e_{l-1}/e_l).
AssumptionReport measure_rate(const std::string& domain, int p, int levels);

}  // namespace hhomg
