#pragma once

#include <ostream>
#include <string>
#include <vector>

// The eight-criterion verification suite.  Each criterion prints one
// PASS/FAIL line (plus indented measurement detail) and they are runnable
// individually; `fdkp verify-all` and the acceptance test binary share this
// implementation.  Tolerances are pinned here, not configurable.

namespace fdkp::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> detail;
};

CriterionResult criterion1_bessel_identities(bool quick);
CriterionResult criterion2_bessel_decay(bool quick);
CriterionResult criterion3_kernel_cross_validation(bool quick);
CriterionResult criterion4_dispersive_decay(bool quick);
CriterionResult criterion5_strichartz(bool quick);
CriterionResult criterion6_symbol_bounds(bool quick);
CriterionResult criterion7_solver_correctness(bool quick);
CriterionResult criterion8_wellposedness(bool quick);

// Runs all eight in order, streaming one summary line each; returns the
// results.  quick uses reduced grids (documented per criterion) so the full
// sweep fits in ~10 minutes on a laptop.
std::vector<CriterionResult> run_all(bool quick, std::ostream& out);

} // namespace fdkp::acceptance
