#pragma once

#include <vector>

#include "vqasvm/circuit.hpp"

namespace vqasvm {

using ParameterVector = std::vector<double>;

/// Hardware-efficient ansatz over the m-qubit index register: each layer is
/// an RY rotation on every qubit followed by a linear CZ chain. Parameter
/// count is layers * m. The |+...+> preparation is not part of the ansatz;
/// circuit assembly owns the initial Hadamards.
struct AnsatzSpec {
    int m = 1;
    int layers = 1;

    std::size_t num_params() const {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(layers);
    }
    std::size_t num_states() const { return std::size_t{1} << m; }
    void validate() const;
};

Circuit build_ansatz(const AnsatzSpec& spec, const ParameterVector& theta);

/// Appends the ansatz acting on the given qubits (qubits[0] = register LSB).
void append_ansatz(Circuit& circuit, const AnsatzSpec& spec, const ParameterVector& theta,
                   const std::vector<int>& qubits);

/// alpha_i = |<i| V(theta) |+...+>|^2.
std::vector<double> alpha_distribution(const AnsatzSpec& spec, const ParameterVector& theta);

/// Complex amplitudes <i| V(theta) |+...+>; alpha_distribution is their
/// squared moduli.
std::vector<cdouble> index_state_amplitudes(const AnsatzSpec& spec, const ParameterVector& theta);

} // namespace vqasvm
