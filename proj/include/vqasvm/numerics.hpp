#pragma once

#include <cstddef>
#include <vector>

namespace vqasvm {

double mean(const std::vector<double>& values);

/// Unbiased sample standard deviation; needs at least two values.
double sample_stddev(const std::vector<double>& values);

double median(std::vector<double> values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Eigenvalues of a symmetric matrix (row-major, size n*n) via cyclic Jacobi
/// sweeps, ascending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n);

/// Euclidean projection onto the probability simplex (sort-and-threshold).
std::vector<double> project_to_simplex(const std::vector<double>& v);

} // namespace vqasvm
