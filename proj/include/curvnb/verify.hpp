#ifndef CURVNB_VERIFY_HPP
#define CURVNB_VERIFY_HPP

#include <string>
#include <vector>

// Quantitative checks behind `curvnb verify` and the acceptance suite.  Each
// check reruns the relevant constructions and integrations from scratch and
// reports pass/fail together with the measured evidence.

namespace curvnb {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::vector<std::string> evidence;
};

// Canonical check ids, in suite order.
std::vector<std::string> verify_ids();

// Resolves theorem-style aliases (fix, nofixS, nofixH, rengon, equil,
// lagranS, lagranH, noreH, ngonS, ngonH, equilateralS, equilateralH, regeo3,
// regeo3H, hyp, thpar, singularity, saari, ...) onto the canonical ids.
std::string resolve_check_id(const std::string& name_or_alias);

CheckResult run_check(const std::string& id, unsigned seed = 1234);

}  // namespace curvnb

#endif
