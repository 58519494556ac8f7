#include "vqasvm/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vqasvm/multiplexer.hpp"

namespace vqasvm {

void append_dataset_oracle(Circuit& circuit, const TrainingSet& set, const FeatureMapSpec& fmap,
                           const std::vector<int>& index_qubits,
                           const std::vector<int>& data_qubits, int label_qubit) {
    set.validate_for_training();
    fmap.validate();
    if (set.feature_dim() != static_cast<std::size_t>(fmap.feature_dim))
        throw std::invalid_argument("feature dimension does not match the feature map");
    if (data_qubits.size() != static_cast<std::size_t>(fmap.n))
        throw std::invalid_argument("data register width must be n");
    const std::size_t m_points = set.size();
    if (m_points != (std::size_t{1} << index_qubits.size()))
        throw std::invalid_argument("index register width must be log2(M)");

    std::vector<double> angles(m_points);
    for (const TemplateOp& op : feature_map_template(fmap)) {
        if (op.type == TemplateOp::Type::FIXED) {
            Gate g = op.fixed;
            for (auto& q : g.qubits) q = data_qubits[static_cast<std::size_t>(q)];
            circuit.append(std::move(g));
            continue;
        }
        for (std::size_t i = 0; i < m_points; ++i) angles[i] = op.angle(set.points[i]);
        append_multiplexed_rotation(circuit, angles, op.axis, index_qubits,
                                    data_qubits[static_cast<std::size_t>(op.target)]);
    }

    for (std::size_t i = 0; i < m_points; ++i)
        angles[i] = set.labels[i] > 0 ? std::numbers::pi : 0.0;
    append_multiplexed_rotation(circuit, angles, Axis::X, index_qubits, label_qubit);
}

Circuit build_dataset_oracle(const TrainingSet& set, const FeatureMapSpec& fmap) {
    set.validate_for_training();
    int m = 0;
    while ((std::size_t{1} << m) < set.size()) ++m;
    Circuit c(m + fmap.n + 1);
    std::vector<int> index_qubits;
    if (m > 0) {
        c.add_register("i", 0, m);
        index_qubits = c.register_range("i").qubit_list();
    }
    c.add_register("x", m, fmap.n);
    c.add_register("y", m + fmap.n, 1);
    append_dataset_oracle(c, set, fmap, index_qubits, c.register_range("x").qubit_list(),
                          m + fmap.n);
    return c;
}

StateVector direct_embedded_state(const TrainingSet& set, const FeatureMapSpec& fmap,
                                  const std::vector<cdouble>& index_amplitudes) {
    set.validate_for_training();
    fmap.validate();
    const std::size_t m_points = set.size();
    if (index_amplitudes.size() != m_points)
        throw std::invalid_argument("index amplitude count must be M");
    int m = 0;
    while ((std::size_t{1} << m) < m_points) ++m;
    const int n = fmap.n;
    const int width = m + n + 1;
    const std::uint64_t feature_dim = std::uint64_t{1} << n;

    std::vector<cdouble> amps(std::uint64_t{1} << width, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < m_points; ++i) {
        const StateVector phi = feature_state(fmap, set.points[i]);
        const std::uint64_t label_bit = set.labels[i] > 0 ? 1 : 0;
        const std::uint64_t base = i | (label_bit << (m + n));
        for (std::uint64_t k = 0; k < feature_dim; ++k)
            amps[base | (k << m)] = index_amplitudes[i] * phi.amplitudes()[k];
    }
    return StateVector::from_amplitudes(width, std::move(amps));
}

StateVector direct_embedded_state_uniform(const TrainingSet& set, const FeatureMapSpec& fmap) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(set.size()));
    return direct_embedded_state(set, fmap, std::vector<cdouble>(set.size(), cdouble{amp, 0.0}));
}

} // namespace vqasvm
