#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vqasvm/ansatz.hpp"

namespace vqasvm {

/// Objective callback: (theta, evaluation index) -> value. The evaluation
/// index is assigned deterministically by the optimizer so that stochastic
/// objectives reproduce bit-for-bit under a fixed seed.
using Objective = std::function<double(const ParameterVector&, std::uint64_t)>;

/// Gain sequences a_t = a / (t + 1 + A)^alpha_gain and c_t = c / (t + 1)^gamma_gain.
/// Zero (or negative, for A) fields select the automatic calibration: A =
/// max_iter / 10, c = sigma (0.1 when sigma is zero) and a chosen so the
/// first step moves about 0.1 rad per parameter.
struct SPSAConfig {
    double a = 0.0;
    double c = 0.0;
    double A = -1.0;
    double alpha_gain = 0.602;
    double gamma_gain = 0.101;
    std::size_t max_iter = 1024;
    bool blocking = true;
    int sigma_estimation_samples = 25;
    std::size_t early_stop_window_short = 16;
    std::size_t early_stop_window_long = 32;
    std::size_t averaging_window = 16;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceRecord {
    std::size_t iteration = 0; // 1-based
    double objective = 0.0;
    bool accepted = true;
    std::uint64_t theta_hash = 0;
};

struct OptimizationTrace {
    std::vector<TraceRecord> records;
    std::vector<double> recorded_losses; // accepted iterations only
    double initial_objective = 0.0;
    double sigma = 0.0;
    std::uint64_t evaluations = 0;
    bool early_stopped = false;
    std::size_t iterations_run = 0;
};

struct SPSAResult {
    ParameterVector theta_star;
    OptimizationTrace trace;
};

/// Sample standard deviation of repeated objective evaluations at theta0.
double estimate_sigma(const Objective& objective, const ParameterVector& theta0, int samples,
                      std::uint64_t seed);

SPSAResult spsa_minimize(const Objective& objective, const ParameterVector& theta0,
                         const SPSAConfig& config);

/// Runs the first `handoff_iterations` (plus the sigma estimation and gain
/// calibration) on the cheap objective, then continues the same trace on the
/// expensive one.
SPSAResult warm_start(const Objective& objective_cheap, const Objective& objective_expensive,
                      const ParameterVector& theta0, const SPSAConfig& config,
                      std::size_t handoff_iterations = 32);

/// FNV-1a over the raw parameter bytes; identifies theta snapshots in traces.
std::uint64_t hash_parameters(const ParameterVector& theta);

} // namespace vqasvm
