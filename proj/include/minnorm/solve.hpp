#pragma once

#include "minnorm/conjugate_gradient.hpp"
#include "minnorm/relaxation.hpp"
#include "minnorm/solver.hpp"

namespace minnorm {

inline SolveReport solve(const LinearSystem& system, const SolverConfig& config) {
  return config.method == Method::Relaxation ? solve_relaxation(system, config)
                                             : solve_cg(system, config);
}

}  // namespace minnorm
