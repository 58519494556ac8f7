#pragma once

#include <cstddef>
#include <vector>

namespace vqasvm {

/// M labeled feature vectors with labels in {-1, +1}. M must be a power of
/// two when the set is fed to the index-register circuits; plain containers
/// (test splits, batches) may have any size, so the power-of-two rule is
/// checked where it matters and exposed here as a query.
struct TrainingSet {
    std::vector<std::vector<double>> points;
    std::vector<int> labels;

    std::size_t size() const { return points.size(); }
    std::size_t feature_dim() const { return points.empty() ? 0 : points.front().size(); }
    bool size_is_power_of_two() const;

    /// Throws unless sizes line up, labels are +-1 and features are finite.
    void validate() const;
    /// validate() plus the power-of-two requirement.
    void validate_for_training() const;
};

} // namespace vqasvm
