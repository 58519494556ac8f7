#pragma once

#include <cstdint>
#include <span>

#include "vqasvm/ansatz.hpp"
#include "vqasvm/feature_map.hpp"
#include "vqasvm/training_set.hpp"

namespace vqasvm {

enum class EstimatorMode { EXACT, SHOTS };

/// How the dataset embedding is realized inside the simulated circuits.
/// GATES runs the full multiplexed-rotation construction; DIRECT writes the
/// embedded state down in closed form and only simulates the SWAP-test tail.
/// Both paths produce the same measurement statistics; DIRECT is the fast
/// default for training loops, GATES backs the circuit-level claims.
enum class OraclePath { GATES, DIRECT };

struct EstimatorConfig {
    EstimatorMode mode = EstimatorMode::EXACT;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
    OraclePath path = OraclePath::DIRECT;

    static EstimatorConfig exact(OraclePath path = OraclePath::DIRECT) {
        return EstimatorConfig{EstimatorMode::EXACT, 0, 0, path};
    }
    static EstimatorConfig with_shots(std::uint64_t shots, std::uint64_t seed,
                                      OraclePath path = OraclePath::DIRECT) {
        return EstimatorConfig{EstimatorMode::SHOTS, shots, seed, path};
    }
    void validate() const;
};

struct Hyperparams {
    double lambda = 1e4;
    double C = 1e4; // INFINITY selects the hard-margin objective

    void validate() const;
    double inv_C() const { return 1.0 / C; } // 0 when C is infinite
    bool hard_margin() const;
};

/// Circuit-execution counters for run reports.
struct EvalStats {
    std::uint64_t loss_evals = 0;
    std::uint64_t decision_evals = 0;
    std::uint64_t regularizer_evals = 0;
};

double estimate_loss(const ParameterVector& theta, const TrainingSet& set,
                     const FeatureMapSpec& fmap, const AnsatzSpec& ansatz, const Hyperparams& hp,
                     const EstimatorConfig& est, std::uint64_t stream = 0,
                     EvalStats* stats = nullptr);

/// loss + (1/C) * regularizer; the regularization circuit is never built when
/// C is infinite.
double estimate_objective(const ParameterVector& theta, const TrainingSet& set,
                          const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
                          const Hyperparams& hp, const EstimatorConfig& est,
                          std::uint64_t stream = 0, EvalStats* stats = nullptr);

double estimate_decision(std::span<const double> x_hat, const ParameterVector& theta,
                         const TrainingSet& set, const FeatureMapSpec& fmap,
                         const AnsatzSpec& ansatz, double lambda, const EstimatorConfig& est,
                         std::uint64_t stream = 0, EvalStats* stats = nullptr);

double estimate_regularizer(const ParameterVector& theta, const AnsatzSpec& ansatz,
                            const EstimatorConfig& est, std::uint64_t stream = 0,
                            EvalStats* stats = nullptr);

} // namespace vqasvm
