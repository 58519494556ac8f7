#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "vqasvm/training_set.hpp"

namespace vqasvm {

enum class ToyBalance { BALANCED, UNBALANCED };

/// Bloch-sphere toy problem: a random meridian great circle, two antipodal
/// class centers on it, four training points jittered around the centers and
/// `num_test` test points spaced evenly along the circle, labeled by the sign
/// of the Bloch inner product with the centers.
struct ToyDatasetConfig {
    std::uint64_t seed = 0;
    ToyBalance balance = ToyBalance::UNBALANCED;
    int num_test = 30;
    double cluster_spread = 0.15;
    double min_separation = 0.05; // rejection radius against test points
};

struct ToyDataset {
    TrainingSet train;
    TrainingSet test;
    std::vector<double> center_positive; // (x0, x1) of the +1 class center
    std::vector<double> center_negative;
    double meridian_longitude = 0.0;
};

ToyDataset generate_bloch_toy(const ToyDatasetConfig& config);

/// Raw CSV table: a header row plus string cells. Feature parsing happens in
/// preprocess so label columns may hold arbitrary text.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;
};

/// Reads and validates that the label column exists.
Table load_csv(const std::string& path, const std::string& label_column);

/// Header-plus-rows parse with no column requirements.
Table parse_csv(const std::string& text);

/// Per-feature affine scaling fitted on the training split.
struct FeatureScaling {
    std::vector<double> min;
    std::vector<double> max;
};

struct PreprocessRules {
    std::string label_column = "label";
    std::set<std::string> positive_labels; // value set mapped to +1
    std::size_t train_size = 0;            // power of two
    std::uint64_t seed = 0;
};

struct PreprocessResult {
    TrainingSet train;
    TrainingSet test;
    FeatureScaling scaling;
};

/// Seeded subsample of `rules.train_size` rows as the training split (the
/// rest is the test split), label mapping by value set, then an affine map of
/// every feature to [-pi, pi] fitted on the training split and applied to
/// both. Constant features map to 0.
PreprocessResult preprocess(const Table& table, const PreprocessRules& rules);

std::string dataset_to_json(const TrainingSet& set, const FeatureScaling& scaling);
TrainingSet dataset_from_json(const std::string& text);

std::string training_set_to_csv(const TrainingSet& set);
TrainingSet training_set_from_csv_text(const std::string& text);

} // namespace vqasvm
