#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vqasvm/circuit.hpp"
#include "vqasvm/gates.hpp"

namespace vqasvm {

/// Dense state over 2^num_qubits computational basis states. Amplitude
/// ordering is little-endian: qubit 0 is the least significant bit of the
/// basis index. States are normalized at construction and every gate is
/// unitary, so the norm stays 1 throughout.
///
/// Practical width cap is 26 qubits (a 1 GiB amplitude buffer).
class StateVector {
  public:
    /// |00...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis_state(int num_qubits, std::uint64_t index);
    static StateVector from_amplitudes(int num_qubits, std::vector<cdouble> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return static_cast<std::uint64_t>(amplitudes_.size()); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    std::vector<cdouble>& mutable_amplitudes() { return amplitudes_; }

    double probability(std::uint64_t basis_index) const;
    double norm() const;

    /// <state|other>.
    cdouble inner_product(const StateVector& other) const;

  private:
    int num_qubits_;
    std::vector<cdouble> amplitudes_;
};

/// Returns U|state> for the gate's unitary U.
StateVector apply_gate(const StateVector& state, const Gate& gate);

/// In-place variant used by the hot simulation paths.
void apply_gate_inplace(StateVector& state, const Gate& gate);

StateVector run_circuit(const Circuit& circuit, const StateVector& initial);

/// Product of Z eigenvalues over `qubits`; the empty set gives 1.
double expectation_pauli_z(const StateVector& state, const std::vector<int>& qubits);

/// Probability that the register's qubits read `bits`, where bits[j]
/// corresponds to the register's (start + j)-th qubit.
double projector_probability(const StateVector& state, const RegisterRange& reg,
                             const std::vector<int>& bits);
double projector_probability(const StateVector& state, const Circuit& circuit,
                             const std::string& register_name, const std::vector<int>& bits);

/// Marginal probability distribution over the listed qubits; entry k uses
/// bit j of k for qubits[j].
std::vector<double> marginal_probabilities(const StateVector& state, const std::vector<int>& qubits);

/// Multinomial sample of the marginal on `qubits`. Keys are bit strings with
/// character j holding the value of qubits[j]. Identical seeds give identical
/// histograms.
std::map<std::string, std::uint64_t> sample_bits(const StateVector& state,
                                                 const std::vector<int>& qubits,
                                                 std::uint64_t shots, std::uint64_t seed);

} // namespace vqasvm
