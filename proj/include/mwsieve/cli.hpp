#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwsieve {

// Exit codes: 0 nominal; 1 mathematical outcome contrary to the demand
// (--expect mismatch, table inconsistency); 2 usage or data errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Built-in N=53 model source (exact bytes of the shipped data file).
std::string_view builtin_model_53();

}  // namespace mwsieve
