#pragma once

#include <string>
#include <vector>

#include "vqasvm/ansatz.hpp"
#include "vqasvm/classical_svm.hpp"
#include "vqasvm/estimator.hpp"
#include "vqasvm/feature_map.hpp"
#include "vqasvm/spsa.hpp"
#include "vqasvm/training_set.hpp"

namespace vqasvm {

/// Everything inference needs, detached from training: the optimized
/// parameters travel to standalone decision circuits, so classifying new
/// points never rebuilds the loss or regularization circuits.
struct Model {
    ParameterVector theta_star;
    AnsatzSpec ansatz;
    FeatureMapSpec fmap;
    Hyperparams hp;
    TrainingSet training_set;
    OptimizationTrace trace;
    std::vector<double> alpha_star; // exact readout of alpha(theta_star)

    void validate() const;

    std::string to_json() const;
    static Model from_json(const std::string& text);
};

Model train(const TrainingSet& set, const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
            const Hyperparams& hp, const EstimatorConfig& est, const SPSAConfig& spsa,
            EvalStats* stats = nullptr);

struct InferenceResult {
    std::vector<int> labels;
    std::vector<double> decision_values;
};

/// Batch classification with the stored parameters; per-point evaluation
/// streams keep results independent of batch order and thread count.
/// sign(0) is classified as -1.
InferenceResult infer(const Model& model, const std::vector<std::vector<double>>& points,
                      const EstimatorConfig& est, int threads = 1, EvalStats* stats = nullptr);

/// Exact-mode objective at theta_star minus the convex-optimization optimum.
double residual_loss(const Model& model, const TrainingSet& set, const Hyperparams& hp);

double accuracy(const Model& model, const TrainingSet& test_set, const EstimatorConfig& est,
                int threads = 1);

} // namespace vqasvm
