#include "vqasvm/training_set.hpp"

#include <cmath>
#include <stdexcept>

namespace vqasvm {

bool TrainingSet::size_is_power_of_two() const {
    const std::size_t m = points.size();
    return m != 0 && (m & (m - 1)) == 0;
}

void TrainingSet::validate() const {
    if (points.empty()) throw std::invalid_argument("training set is empty");
    if (labels.size() != points.size())
        throw std::invalid_argument("label count must match point count");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("points need at least one feature");
    for (const auto& p : points) {
        if (p.size() != dim) throw std::invalid_argument("ragged feature rows");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
    for (int y : labels)
        if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");
}

void TrainingSet::validate_for_training() const {
    validate();
    if (!size_is_power_of_two())
        throw std::invalid_argument("training set size must be a power of two");
}

} // namespace vqasvm
