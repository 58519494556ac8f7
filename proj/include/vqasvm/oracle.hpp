#pragma once

#include <vector>

#include "vqasvm/ansatz.hpp"
#include "vqasvm/circuit.hpp"
#include "vqasvm/feature_map.hpp"
#include "vqasvm/statevector.hpp"
#include "vqasvm/training_set.hpp"

namespace vqasvm {

/// Appends the dataset-embedding unitary: |i>|0..0>|0> -> |i>|phi(x_i)>|y_i>
/// for every index branch i (branch-wise phases permitted). Every rotation of
/// the feature-map template becomes a uniformly controlled rotation over the
/// index register; positive labels are written by a multiplexed RX with
/// angle pi (|1> encodes y = +1).
void append_dataset_oracle(Circuit& circuit, const TrainingSet& set, const FeatureMapSpec& fmap,
                           const std::vector<int>& index_qubits,
                           const std::vector<int>& data_qubits, int label_qubit);

/// Standalone oracle over registers i(m), x(n), y(1), laid out in that order
/// from qubit 0.
Circuit build_dataset_oracle(const TrainingSet& set, const FeatureMapSpec& fmap);

/// Directly constructed sum_i amp_i |i>|phi(x_i)>|y_i> over m + n + 1 qubits
/// (index low bits, data middle, label top). `index_amplitudes` is typically
/// the ansatz output; pass uniform amplitudes for the bare oracle state.
StateVector direct_embedded_state(const TrainingSet& set, const FeatureMapSpec& fmap,
                                  const std::vector<cdouble>& index_amplitudes);

/// Uniform-superposition convenience: amp_i = 1/sqrt(M).
StateVector direct_embedded_state_uniform(const TrainingSet& set, const FeatureMapSpec& fmap);

} // namespace vqasvm
