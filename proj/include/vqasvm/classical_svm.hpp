#pragma once

#include <span>
#include <vector>

#include "vqasvm/estimator.hpp"
#include "vqasvm/feature_map.hpp"
#include "vqasvm/training_set.hpp"

namespace vqasvm {

/// M x M matrix of squared feature-state fidelities; symmetric, unit
/// diagonal, PSD up to tolerance.
struct KernelMatrix {
    std::size_t size = 0;
    std::vector<double> entries; // row-major

    double at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * size + j]; }

    double min_eigenvalue() const;
    void validate() const;
};

KernelMatrix kernel_matrix(const TrainingSet& set, const FeatureMapSpec& fmap);

struct SolverOptions {
    std::size_t max_iterations = 100000;
    double relative_tolerance = 1e-10;
};

/// Simplex-constrained quadratic program
///   minimize sum_ij a_i a_j y_i y_j [K_ij + 1/lambda] + (1/C) sum_i a_i^2
/// solved by projected gradient descent (Nesterov-accelerated, restarting,
/// backtracking step). B and beta recover the unnormalized dual variables;
/// bias = (1/lambda) sum_i alpha_i y_i.
struct SolverResult {
    std::vector<double> alpha;
    double objective = 0.0; // the reformulated optimum
    std::vector<double> beta;
    double B = 0.0;
    double bias = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

SolverResult solve_probability_simplex_qp(const KernelMatrix& kernel, const std::vector<int>& labels,
                                          const Hyperparams& hp, const SolverOptions& options = {});

/// Nonnegative dual ascent
///   maximize sum_i b_i - 1/2 sum_ij b_i b_j y_i y_j [K_ij + 1/lambda]
///            - (1/2C) sum_i b_i^2
struct DualResult {
    std::vector<double> beta;
    double objective = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

DualResult solve_dual_svm(const KernelMatrix& kernel, const std::vector<int>& labels,
                          const Hyperparams& hp, const SolverOptions& options = {});

/// Kernel-sum decision value for weights on the simplex.
double classical_decision(std::span<const double> x_hat, const std::vector<double>& alpha,
                          const TrainingSet& set, const FeatureMapSpec& fmap, double lambda);

/// Direct evaluation of the simplex objective at a given alpha.
double simplex_objective(const KernelMatrix& kernel, const std::vector<int>& labels,
                         const Hyperparams& hp, const std::vector<double>& alpha);

/// Exhaustive grid search over the simplex (M <= 4), refined around the
/// incumbent down to the requested resolution. Independent of the gradient
/// solvers; used as their ground truth.
struct GridResult {
    std::vector<double> alpha;
    double objective = 0.0;
};

GridResult brute_force_simplex_oracle(const KernelMatrix& kernel, const std::vector<int>& labels,
                                      const Hyperparams& hp, double grid_resolution);

/// Bias recovery from an unnormalized dual solution: support-vector rule when
/// some beta_q clears the threshold, otherwise the median of y_i - margin_i.
double recover_dual_bias(const KernelMatrix& kernel, const std::vector<int>& labels,
                         const std::vector<double>& beta, double C,
                         double support_threshold = 1e-8);

/// Utility kernels for classical baseline tests.
double poly_kernel(std::span<const double> x, std::span<const double> z, double c, int degree);
double rbf_kernel(std::span<const double> x, std::span<const double> z, double gamma);

} // namespace vqasvm
