#include "vqasvm/ansatz.hpp"

#include <stdexcept>

#include "vqasvm/statevector.hpp"

namespace vqasvm {

void AnsatzSpec::validate() const {
    if (m < 1) throw std::invalid_argument("ansatz needs at least one qubit");
    if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
}

void append_ansatz(Circuit& circuit, const AnsatzSpec& spec, const ParameterVector& theta,
                   const std::vector<int>& qubits) {
    spec.validate();
    if (theta.size() != spec.num_params())
        throw std::invalid_argument("parameter vector length must be layers * m");
    if (qubits.size() != static_cast<std::size_t>(spec.m))
        throw std::invalid_argument("qubit list must have m entries");
    for (int layer = 0; layer < spec.layers; ++layer) {
        const std::size_t base = static_cast<std::size_t>(layer) * static_cast<std::size_t>(spec.m);
        for (int q = 0; q < spec.m; ++q)
            circuit.append(Gate::ry(theta[base + static_cast<std::size_t>(q)],
                                    qubits[static_cast<std::size_t>(q)]));
        for (int q = 0; q + 1 < spec.m; ++q)
            circuit.append(Gate::cz(qubits[static_cast<std::size_t>(q)],
                                    qubits[static_cast<std::size_t>(q + 1)]));
    }
}

Circuit build_ansatz(const AnsatzSpec& spec, const ParameterVector& theta) {
    spec.validate();
    Circuit c(spec.m);
    std::vector<int> qubits(static_cast<std::size_t>(spec.m));
    for (int q = 0; q < spec.m; ++q) qubits[static_cast<std::size_t>(q)] = q;
    append_ansatz(c, spec, theta, qubits);
    return c;
}

std::vector<cdouble> index_state_amplitudes(const AnsatzSpec& spec, const ParameterVector& theta) {
    spec.validate();
    Circuit c(spec.m);
    for (int q = 0; q < spec.m; ++q) c.append(Gate::h(q));
    std::vector<int> qubits(static_cast<std::size_t>(spec.m));
    for (int q = 0; q < spec.m; ++q) qubits[static_cast<std::size_t>(q)] = q;
    append_ansatz(c, spec, theta, qubits);
    return run_circuit(c, StateVector(spec.m)).amplitudes();
}

std::vector<double> alpha_distribution(const AnsatzSpec& spec, const ParameterVector& theta) {
    const std::vector<cdouble> amps = index_state_amplitudes(spec, theta);
    std::vector<double> alpha(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) alpha[i] = std::norm(amps[i]);
    return alpha;
}

} // namespace vqasvm
