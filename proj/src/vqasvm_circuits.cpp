#include "vqasvm/vqasvm_circuits.hpp"

#include <stdexcept>

#include "vqasvm/oracle.hpp"

namespace vqasvm {

namespace {

void check_shapes(const TrainingSet& set, const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
                  const ParameterVector& theta) {
    set.validate_for_training();
    fmap.validate();
    ansatz.validate();
    if (set.size() != ansatz.num_states())
        throw std::invalid_argument("ansatz width must satisfy M = 2^m");
    if (theta.size() != ansatz.num_params())
        throw std::invalid_argument("parameter vector length must be layers * m");
    if (set.feature_dim() != static_cast<std::size_t>(fmap.feature_dim))
        throw std::invalid_argument("feature dimension does not match the feature map");
}

void append_plus_state_ansatz(Circuit& c, const AnsatzSpec& ansatz, const ParameterVector& theta,
                              const std::vector<int>& qubits) {
    for (int q : qubits) c.append(Gate::h(q));
    append_ansatz(c, ansatz, theta, qubits);
}

} // namespace

Circuit build_loss_circuit(const TrainingSet& set, const FeatureMapSpec& fmap,
                           const AnsatzSpec& ansatz, const ParameterVector& theta) {
    check_shapes(set, fmap, ansatz, theta);
    const int m = ansatz.m;
    const int n = fmap.n;
    const int block = m + n + 1;
    Circuit c(2 * block + 1);
    c.add_register("i", 0, m);
    c.add_register("x0", m, n);
    c.add_register("y0", m + n, 1);
    c.add_register("j", block, m);
    c.add_register("x1", block + m, n);
    c.add_register("y1", block + m + n, 1);
    c.add_register("a", 2 * block, 1);

    const int a = 2 * block;
    c.append(Gate::h(a));
    append_plus_state_ansatz(c, ansatz, theta, c.register_range("i").qubit_list());
    append_plus_state_ansatz(c, ansatz, theta, c.register_range("j").qubit_list());
    append_dataset_oracle(c, set, fmap, c.register_range("i").qubit_list(),
                          c.register_range("x0").qubit_list(), m + n);
    append_dataset_oracle(c, set, fmap, c.register_range("j").qubit_list(),
                          c.register_range("x1").qubit_list(), block + m + n);
    for (int k = 0; k < n; ++k) c.append(Gate::cswap(a, m + k, block + m + k));
    c.append(Gate::h(a));
    return c;
}

Circuit build_decision_circuit(std::span<const double> x_hat, const TrainingSet& set,
                               const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
                               const ParameterVector& theta) {
    check_shapes(set, fmap, ansatz, theta);
    const int m = ansatz.m;
    const int n = fmap.n;
    Circuit c(m + 2 * n + 2);
    c.add_register("i", 0, m);
    c.add_register("x", m, n);
    c.add_register("y", m + n, 1);
    c.add_register("xhat", m + n + 1, n);
    c.add_register("a", m + 2 * n + 1, 1);

    const int a = m + 2 * n + 1;
    c.append(Gate::h(a));
    append_plus_state_ansatz(c, ansatz, theta, c.register_range("i").qubit_list());
    append_dataset_oracle(c, set, fmap, c.register_range("i").qubit_list(),
                          c.register_range("x").qubit_list(), m + n);
    c.append(feature_map_circuit(fmap, x_hat), c.register_range("xhat").qubit_list());
    for (int k = 0; k < n; ++k) c.append(Gate::cswap(a, m + k, m + n + 1 + k));
    c.append(Gate::h(a));
    return c;
}

Circuit build_regularization_circuit(const AnsatzSpec& ansatz, const ParameterVector& theta) {
    ansatz.validate();
    if (theta.size() != ansatz.num_params())
        throw std::invalid_argument("parameter vector length must be layers * m");
    const int m = ansatz.m;
    Circuit c(2 * m);
    c.add_register("i", 0, m);
    c.add_register("j", m, m);
    append_plus_state_ansatz(c, ansatz, theta, c.register_range("i").qubit_list());
    append_plus_state_ansatz(c, ansatz, theta, c.register_range("j").qubit_list());
    for (int q = 0; q < m; ++q) c.append(Gate::cnot(q, m + q));
    return c;
}

} // namespace vqasvm
