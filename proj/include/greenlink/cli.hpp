#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace greenlink::cli {

enum ExitCode : int {
    kOk = 0,
    kInfeasible = 1,  // infeasible configuration or a violated bound
    kConfigError = 2,
    kNumericalFailure = 3,
};

// greenlink energy|sweep|mmax|verify [scenario] [--json] [--out PATH]
//           [--seed N] [--samples N]
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greenlink::cli
