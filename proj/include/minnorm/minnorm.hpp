#pragma once

// Minimum-norm solutions of dense real linear systems. The system is
// reduced to a symmetric problem in multiplier space through the row Gram
// matrix and solved by coordinate relaxation (Gauss-Seidel) or
// Fletcher-Reeves conjugate gradient; an eigendecomposition-based
// pseudoinverse provides an independent cross-check.

#include "minnorm/builtin_suite.hpp"
#include "minnorm/conjugate_gradient.hpp"
#include "minnorm/core.hpp"
#include "minnorm/eigen_jacobi.hpp"
#include "minnorm/generate.hpp"
#include "minnorm/lagrange.hpp"
#include "minnorm/pinv.hpp"
#include "minnorm/relaxation.hpp"
#include "minnorm/solve.hpp"
#include "minnorm/solver.hpp"
#include "minnorm/text_format.hpp"
