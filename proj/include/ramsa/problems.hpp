#ifndef RAMSA_PROBLEMS_HPP
#define RAMSA_PROBLEMS_HPP

#include <string>
#include <vector>

#include "ramsa/blackbox.hpp"

namespace ramsa {

// Built-in benchmark problems: SCD (steel column), WBD (welded beam),
// VSI (vehicle side impact), SRD (speed reducer), plus the two VSI
// variants with epistemic means on the eighth and ninth noise components.
Problem builtin_problem(const std::string& name);

const std::vector<std::string>& builtin_problem_names();

// Reference solution point reported for the SORA solver on each base
// problem, in original units. Used for comparison rows and the epistemic
// counter-example; not a target of the optimizer.
std::vector<double> sora_reference_point(const std::string& name);

}  // namespace ramsa

#endif
