#pragma once

#include <string>
#include <vector>

namespace ck {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double worst = 0.0;      // worst observed residual / margin
  double tolerance = 0.0;  // the bound it was checked against
  double seconds = 0.0;
  std::string detail;
};

CriterionResult accept_uncertainty_saturation();   // 1
CriterionResult accept_spread_formulas();          // 2
CriterionResult accept_characterizations();        // 3
CriterionResult accept_displacement_group_law();   // 4
CriterionResult accept_segal_bargmann();           // 5
CriterionResult accept_optical_coherence();        // 6
CriterionResult accept_bloch_states();             // 7
CriterionResult accept_heat_kernel();              // 8
CriterionResult accept_spin_networks();            // 9
CriterionResult accept_polyhedra();                // 10

std::vector<CriterionResult> run_acceptance();

}  // namespace ck
