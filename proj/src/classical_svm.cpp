#include "vqasvm/classical_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vqasvm/numerics.hpp"

namespace vqasvm {

namespace {

// Quadratic-form plumbing shared by both solvers: Q_ij = y_i y_j (K_ij + 1/lambda).
struct QuadraticForm {
    const KernelMatrix& kernel;
    const std::vector<int>& labels;
    double inv_lambda;
    double inv_C;

    std::size_t size() const { return kernel.size; }

    double q(std::size_t i, std::size_t j) const {
        return static_cast<double>(labels[i] * labels[j]) * (kernel.at(i, j) + inv_lambda);
    }

    void multiply(const std::vector<double>& v, std::vector<double>& out) const {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += q(i, j) * v[j];
            out[i] = acc;
        }
    }

    double lipschitz_bound() const {
        const std::size_t n = size();
        double rowmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += std::abs(q(i, j));
            rowmax = std::max(rowmax, row);
        }
        return 2.0 * (rowmax + inv_C) + 1e-12;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

void check_inputs(const KernelMatrix& kernel, const std::vector<int>& labels,
                  const Hyperparams& hp) {
    hp.validate();
    if (kernel.size == 0 || kernel.entries.size() != kernel.size * kernel.size)
        throw std::invalid_argument("malformed kernel matrix");
    if (labels.size() != kernel.size)
        throw std::invalid_argument("label count must match kernel size");
    for (int y : labels)
        if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");
    if (kernel.min_eigenvalue() < -1e-8)
        throw std::invalid_argument("kernel matrix is not PSD within tolerance");
}

// Accelerated projected gradient on f(x) = <x,Qx> + inv_C <x,x> + <lin,x>
// over a convex set given by `project`. Descent is enforced by backtracking
// and the momentum sequence restarts whenever it stops paying off.
template <typename Projector>
std::pair<std::vector<double>, double> accelerated_pg(const QuadraticForm& form,
                                                      const std::vector<double>& linear,
                                                      std::vector<double> x,
                                                      const Projector& project,
                                                      const SolverOptions& options,
                                                      bool& converged, std::size_t& iterations) {
    const std::size_t n = form.size();
    std::vector<double> qx(n);
    auto value = [&](const std::vector<double>& v) {
        form.multiply(v, qx);
        return dot(v, qx) + form.inv_C * dot(v, v) + dot(linear, v);
    };
    auto gradient = [&](const std::vector<double>& v, std::vector<double>& out) {
        form.multiply(v, out);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = 2.0 * out[k] + 2.0 * form.inv_C * v[k] + linear[k];
    };

    double step = 1.0 / form.lipschitz_bound();
    std::vector<double> grad(n);
    std::vector<double> z(n);
    auto take_step = [&](const std::vector<double>& from) {
        gradient(from, grad);
        const double f_from = value(from);
        double fz = f_from;
        for (int attempt = 0; attempt < 60; ++attempt) {
            for (std::size_t k = 0; k < n; ++k) z[k] = from[k] - step * grad[k];
            z = project(z);
            double model = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double d = z[k] - from[k];
                model += grad[k] * d + d * d / (2.0 * step);
            }
            fz = value(z);
            if (fz <= f_from + model + 1e-15) break;
            step *= 0.5;
        }
        return fz;
    };

    std::vector<double> y = x;
    double fx = value(x);
    double t = 1.0;
    converged = false;

    for (iterations = 1; iterations <= options.max_iterations; ++iterations) {
        double fz = take_step(y);
        if (fz > fx) {
            // Momentum overshoot: restart from the best iterate.
            y = x;
            t = 1.0;
            fz = take_step(x);
            if (fz >= fx) {
                converged = true; // projected step cannot improve: stationary
                break;
            }
        }
        const double rel_change = std::abs(fx - fz) / std::max(1.0, std::abs(fx));
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t k = 0; k < n; ++k) y[k] = z[k] + ((t - 1.0) / t_next) * (z[k] - x[k]);
        x = z;
        fx = fz;
        t = t_next;
        if (rel_change < options.relative_tolerance) {
            converged = true;
            break;
        }
    }
    if (iterations > options.max_iterations) iterations = options.max_iterations;
    return {x, fx};
}

} // namespace

double KernelMatrix::min_eigenvalue() const {
    return symmetric_eigenvalues(entries, size).front();
}

void KernelMatrix::validate() const {
    if (entries.size() != size * size) throw std::invalid_argument("kernel size mismatch");
    for (std::size_t i = 0; i < size; ++i) {
        if (std::abs(at(i, i) - 1.0) > 1e-10)
            throw std::invalid_argument("kernel diagonal must be 1");
        for (std::size_t j = i + 1; j < size; ++j)
            if (std::abs(at(i, j) - at(j, i)) > 1e-10)
                throw std::invalid_argument("kernel must be symmetric");
    }
    if (min_eigenvalue() < -1e-8) throw std::invalid_argument("kernel must be PSD");
}

KernelMatrix kernel_matrix(const TrainingSet& set, const FeatureMapSpec& fmap) {
    set.validate();
    fmap.validate();
    const std::size_t m = set.size();
    std::vector<StateVector> states;
    states.reserve(m);
    for (const auto& point : set.points) states.push_back(feature_state(fmap, point));

    KernelMatrix kernel;
    kernel.size = m;
    kernel.entries.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        kernel.at(i, i) = std::norm(states[i].inner_product(states[i]));
        for (std::size_t j = i + 1; j < m; ++j) {
            const double value = std::norm(states[i].inner_product(states[j]));
            kernel.at(i, j) = value;
            kernel.at(j, i) = value;
        }
    }
    return kernel;
}

double simplex_objective(const KernelMatrix& kernel, const std::vector<int>& labels,
                         const Hyperparams& hp, const std::vector<double>& alpha) {
    const std::size_t n = kernel.size;
    if (alpha.size() != n) throw std::invalid_argument("alpha size mismatch");
    const double inv_lambda = 1.0 / hp.lambda;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc += alpha[i] * alpha[j] * labels[i] * labels[j] * (kernel.at(i, j) + inv_lambda);
    acc += hp.inv_C() * dot(alpha, alpha);
    return acc;
}

SolverResult solve_probability_simplex_qp(const KernelMatrix& kernel,
                                          const std::vector<int>& labels, const Hyperparams& hp,
                                          const SolverOptions& options) {
    check_inputs(kernel, labels, hp);
    const std::size_t n = kernel.size;
    const QuadraticForm form{kernel, labels, 1.0 / hp.lambda, hp.inv_C()};
    const std::vector<double> linear(n, 0.0);
    std::vector<double> start(n, 1.0 / static_cast<double>(n));

    SolverResult result;
    auto [alpha, objective] =
        accelerated_pg(form, linear, std::move(start),
                       [](const std::vector<double>& v) { return project_to_simplex(v); },
                       options, result.converged, result.iterations);

    result.alpha = std::move(alpha);
    result.objective = objective;
    result.B = 1.0 / objective;
    result.beta.resize(n);
    for (std::size_t k = 0; k < n; ++k) result.beta[k] = result.alpha[k] * result.B;
    double balance = 0.0;
    for (std::size_t k = 0; k < n; ++k) balance += result.alpha[k] * labels[k];
    result.bias = balance / hp.lambda;
    return result;
}

DualResult solve_dual_svm(const KernelMatrix& kernel, const std::vector<int>& labels,
                          const Hyperparams& hp, const SolverOptions& options) {
    check_inputs(kernel, labels, hp);
    const std::size_t n = kernel.size;
    // Minimize -g(beta) = 1/2 beta'(Q + I/C)beta - sum(beta) over beta >= 0.
    // Substituting beta = 2u gives 2 [ u'Qu + (1/C)|u|^2 - sum(u) ], which is
    // the form accelerated_pg expects.
    const QuadraticForm form{kernel, labels, 1.0 / hp.lambda, hp.inv_C()};
    const std::vector<double> linear(n, -1.0);
    std::vector<double> start(n, 0.0);

    DualResult result;
    auto [u, scaled_value] =
        accelerated_pg(form, linear, std::move(start),
                       [](const std::vector<double>& v) {
                           std::vector<double> out(v.size());
                           for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(0.0, v[k]);
                           return out;
                       },
                       options, result.converged, result.iterations);

    result.beta.resize(n);
    for (std::size_t k = 0; k < n; ++k) result.beta[k] = 2.0 * u[k];
    result.objective = -2.0 * scaled_value;
    return result;
}

double classical_decision(std::span<const double> x_hat, const std::vector<double>& alpha,
                          const TrainingSet& set, const FeatureMapSpec& fmap, double lambda) {
    set.validate();
    if (alpha.size() != set.size()) throw std::invalid_argument("alpha size mismatch");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const double inv_lambda = 1.0 / lambda;
    double acc = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
        acc += alpha[i] * set.labels[i] * (quantum_kernel(fmap, set.points[i], x_hat) + inv_lambda);
    return acc;
}

GridResult brute_force_simplex_oracle(const KernelMatrix& kernel, const std::vector<int>& labels,
                                      const Hyperparams& hp, double grid_resolution) {
    check_inputs(kernel, labels, hp);
    const std::size_t n = kernel.size;
    if (n > 4) throw std::invalid_argument("grid oracle supports M <= 4 only");
    if (!(grid_resolution > 0.0) || grid_resolution > 1.0)
        throw std::invalid_argument("grid resolution must lie in (0, 1]");
    const std::size_t steps = static_cast<std::size_t>(std::lround(1.0 / grid_resolution));

    GridResult best;
    best.objective = std::numeric_limits<double>::infinity();
    std::vector<double> alpha(n, 0.0);
    const double unit = 1.0 / static_cast<double>(steps);

    auto consider = [&](const std::vector<double>& candidate) {
        const double value = simplex_objective(kernel, labels, hp, candidate);
        if (value < best.objective) {
            best.objective = value;
            best.alpha = candidate;
        }
    };

    if (n == 1) {
        alpha[0] = 1.0;
        consider(alpha);
        return best;
    }
    for (std::size_t k0 = 0; k0 <= steps; ++k0) {
        alpha[0] = static_cast<double>(k0) * unit;
        if (n == 2) {
            alpha[1] = static_cast<double>(steps - k0) * unit;
            consider(alpha);
            continue;
        }
        for (std::size_t k1 = 0; k0 + k1 <= steps; ++k1) {
            alpha[1] = static_cast<double>(k1) * unit;
            if (n == 3) {
                alpha[2] = static_cast<double>(steps - k0 - k1) * unit;
                consider(alpha);
                continue;
            }
            for (std::size_t k2 = 0; k0 + k1 + k2 <= steps; ++k2) {
                alpha[2] = static_cast<double>(k2) * unit;
                alpha[3] = static_cast<double>(steps - k0 - k1 - k2) * unit;
                consider(alpha);
            }
        }
    }
    return best;
}

double recover_dual_bias(const KernelMatrix& kernel, const std::vector<int>& labels,
                         const std::vector<double>& beta, double C, double support_threshold) {
    const std::size_t n = kernel.size;
    if (beta.size() != n || labels.size() != n)
        throw std::invalid_argument("bias recovery size mismatch");

    std::vector<double> margin(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) margin[i] += beta[j] * labels[j] * kernel.at(i, j);

    std::size_t q = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (beta[k] > beta[q]) q = k;
    if (beta[q] > support_threshold)
        return labels[q] * (1.0 - beta[q] / C) - margin[q];

    std::vector<double> differences(n);
    for (std::size_t i = 0; i < n; ++i) differences[i] = labels[i] - margin[i];
    return median(std::move(differences));
}

double poly_kernel(std::span<const double> x, std::span<const double> z, double c, int degree) {
    if (x.size() != z.size()) throw std::invalid_argument("dimension mismatch");
    double inner = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) inner += x[k] * z[k];
    return std::pow(inner + c, degree);
}

double rbf_kernel(std::span<const double> x, std::span<const double> z, double gamma) {
    if (x.size() != z.size()) throw std::invalid_argument("dimension mismatch");
    double dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) dist2 += (x[k] - z[k]) * (x[k] - z[k]);
    return std::exp(-0.5 * gamma * dist2);
}

} // namespace vqasvm
