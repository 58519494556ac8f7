#pragma once

#include <span>
#include <vector>

#include "vqasvm/ansatz.hpp"
#include "vqasvm/circuit.hpp"
#include "vqasvm/feature_map.hpp"
#include "vqasvm/training_set.hpp"

namespace vqasvm {

/// Loss circuit over 2m + 2n + 3 qubits, registers i, x0, y0, j, x1, y1, a
/// from qubit 0 upward. Measured observables: Z_a Z_y0 Z_y1 and Z_y0 Z_y1.
Circuit build_loss_circuit(const TrainingSet& set, const FeatureMapSpec& fmap,
                           const AnsatzSpec& ansatz, const ParameterVector& theta);

/// Decision circuit over m + 2n + 2 qubits, registers i, x, y, xhat, a.
/// Measured observables: Z_a Z_y and Z_y.
Circuit build_decision_circuit(std::span<const double> x_hat, const TrainingSet& set,
                               const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
                               const ParameterVector& theta);

/// Regularization circuit over 2m qubits, registers i and j; the measured
/// quantity is the probability that register j reads all zeros, which equals
/// sum_i alpha_i(theta)^2.
Circuit build_regularization_circuit(const AnsatzSpec& ansatz, const ParameterVector& theta);

} // namespace vqasvm
