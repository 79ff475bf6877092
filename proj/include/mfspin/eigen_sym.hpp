#pragma once

#include <vector>

namespace mfspin {

// Eigenvalues of a dense real symmetric matrix (row-major n x n):
// Householder tridiagonalization followed by implicit-shift QL.
// Returns the spectrum sorted ascending. Throws std::runtime_error if the
// QL iteration fails to converge.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace mfspin
