#include "vqasvm/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vqasvm/rng.hpp"

namespace vqasvm {

namespace {

constexpr int kMaxQubits = 26;

void check_width(int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("state needs at least one qubit");
    if (num_qubits > kMaxQubits) throw std::invalid_argument("state exceeds the 26-qubit cap");
}

// Applies a 2x2 matrix {{a,b},{c,d}} to the target qubit, in place.
void apply_single(std::vector<cdouble>& amps, int target, cdouble a, cdouble b, cdouble c,
                  cdouble d) {
    const std::uint64_t tmask = std::uint64_t{1} << target;
    const std::uint64_t dim = amps.size();
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        const cdouble lo = amps[base];
        const cdouble hi = amps[base | tmask];
        amps[base] = a * lo + b * hi;
        amps[base | tmask] = c * lo + d * hi;
    }
}

std::uint64_t gate_mask(const std::vector<int>& qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= std::uint64_t{1} << q;
    return mask;
}

} // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits);
    amplitudes_.assign(std::uint64_t{1} << num_qubits, cdouble{0.0, 0.0});
    amplitudes_[0] = cdouble{1.0, 0.0};
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
    check_width(num_qubits);
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::out_of_range("basis index out of range");
    s.amplitudes_[0] = cdouble{0.0, 0.0};
    s.amplitudes_[index] = cdouble{1.0, 0.0};
    return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cdouble> amplitudes) {
    check_width(num_qubits);
    if (amplitudes.size() != (std::uint64_t{1} << num_qubits))
        throw std::invalid_argument("amplitude count must be 2^num_qubits");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("amplitudes must be normalized");
    StateVector s(num_qubits);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double StateVector::probability(std::uint64_t basis_index) const {
    if (basis_index >= dim()) throw std::out_of_range("basis index out of range");
    return std::norm(amplitudes_[basis_index]);
}

double StateVector::norm() const {
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    return std::sqrt(norm2);
}

cdouble StateVector::inner_product(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_)
        throw std::invalid_argument("inner product needs equal widths");
    cdouble acc{0.0, 0.0};
    for (std::uint64_t k = 0; k < dim(); ++k)
        acc += std::conj(amplitudes_[k]) * other.amplitudes_[k];
    return acc;
}

void apply_gate_inplace(StateVector& state, const Gate& gate) {
    for (int q : gate.qubits) {
        if (q < 0 || q >= state.num_qubits()) throw std::out_of_range("gate qubit out of range");
    }
    auto& amps = state.mutable_amplitudes();
    const std::uint64_t dim = amps.size();
    const double half = gate.parameter / 2.0;

    switch (gate.kind) {
        case GateKind::RX:
            apply_single(amps, gate.qubits[0], {std::cos(half), 0.0}, {0.0, -std::sin(half)},
                         {0.0, -std::sin(half)}, {std::cos(half), 0.0});
            return;
        case GateKind::RY:
            apply_single(amps, gate.qubits[0], {std::cos(half), 0.0}, {-std::sin(half), 0.0},
                         {std::sin(half), 0.0}, {std::cos(half), 0.0});
            return;
        case GateKind::RZ: {
            const cdouble lo = std::polar(1.0, -half);
            const cdouble hi = std::polar(1.0, half);
            const std::uint64_t tmask = std::uint64_t{1} << gate.qubits[0];
            for (std::uint64_t k = 0; k < dim; ++k) amps[k] *= (k & tmask) ? hi : lo;
            return;
        }
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            apply_single(amps, gate.qubits[0], {r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0});
            return;
        }
        case GateKind::X:
            apply_single(amps, gate.qubits[0], {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0});
            return;
        case GateKind::SX:
            apply_single(amps, gate.qubits[0], {0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5});
            return;
        case GateKind::CNOT: {
            const std::uint64_t cmask = std::uint64_t{1} << gate.qubits[0];
            const std::uint64_t tmask = std::uint64_t{1} << gate.qubits[1];
            for (std::uint64_t k = 0; k < dim; ++k)
                if ((k & cmask) && !(k & tmask)) std::swap(amps[k], amps[k | tmask]);
            return;
        }
        case GateKind::CZ: {
            const std::uint64_t mask =
                (std::uint64_t{1} << gate.qubits[0]) | (std::uint64_t{1} << gate.qubits[1]);
            for (std::uint64_t k = 0; k < dim; ++k)
                if ((k & mask) == mask) amps[k] = -amps[k];
            return;
        }
        case GateKind::SWAP: {
            const std::uint64_t amask = std::uint64_t{1} << gate.qubits[0];
            const std::uint64_t bmask = std::uint64_t{1} << gate.qubits[1];
            for (std::uint64_t k = 0; k < dim; ++k)
                if ((k & amask) && !(k & bmask)) std::swap(amps[k], amps[(k ^ amask) | bmask]);
            return;
        }
        case GateKind::CSWAP: {
            const std::uint64_t cmask = std::uint64_t{1} << gate.qubits[0];
            const std::uint64_t amask = std::uint64_t{1} << gate.qubits[1];
            const std::uint64_t bmask = std::uint64_t{1} << gate.qubits[2];
            for (std::uint64_t k = 0; k < dim; ++k)
                if ((k & cmask) && (k & amask) && !(k & bmask))
                    std::swap(amps[k], amps[(k ^ amask) | bmask]);
            return;
        }
        case GateKind::DIAGONAL: {
            const std::size_t width = gate.qubits.size();
            for (std::uint64_t k = 0; k < dim; ++k) {
                std::uint64_t local = 0;
                for (std::size_t j = 0; j < width; ++j)
                    local |= ((k >> gate.qubits[j]) & 1ULL) << j;
                amps[k] *= gate.diag_entries[local];
            }
            return;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

StateVector run_circuit(const Circuit& circuit, const StateVector& initial) {
    if (circuit.num_qubits() != initial.num_qubits())
        throw std::invalid_argument("circuit and state widths differ");
    StateVector out = initial;
    for (const Gate& g : circuit.gates()) apply_gate_inplace(out, g);
    return out;
}

double expectation_pauli_z(const StateVector& state, const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 0 || q >= state.num_qubits()) throw std::out_of_range("qubit out of range");
    const std::uint64_t mask = gate_mask(qubits);
    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        const double p = std::norm(amps[k]);
        acc += (std::popcount(k & mask) & 1) ? -p : p;
    }
    return acc;
}

double projector_probability(const StateVector& state, const RegisterRange& reg,
                             const std::vector<int>& bits) {
    if (bits.size() != static_cast<std::size_t>(reg.width))
        throw std::invalid_argument("bitstring length must match register width");
    if (reg.start < 0 || reg.start + reg.width > state.num_qubits())
        throw std::out_of_range("register outside the state");
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] != 0 && bits[j] != 1) throw std::invalid_argument("bits must be 0 or 1");
        value |= static_cast<std::uint64_t>(bits[j]) << j;
    }
    const std::uint64_t mask = ((std::uint64_t{1} << reg.width) - 1) << reg.start;
    const std::uint64_t want = value << reg.start;
    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (std::uint64_t k = 0; k < state.dim(); ++k)
        if ((k & mask) == want) acc += std::norm(amps[k]);
    return acc;
}

double projector_probability(const StateVector& state, const Circuit& circuit,
                             const std::string& register_name, const std::vector<int>& bits) {
    return projector_probability(state, circuit.register_range(register_name), bits);
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 0 || q >= state.num_qubits()) throw std::out_of_range("qubit out of range");
    if (qubits.size() > 24) throw std::invalid_argument("marginal over too many qubits");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto& amps = state.amplitudes();
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        std::uint64_t local = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            local |= ((k >> qubits[j]) & 1ULL) << j;
        probs[local] += std::norm(amps[k]);
    }
    return probs;
}

std::map<std::string, std::uint64_t> sample_bits(const StateVector& state,
                                                 const std::vector<int>& qubits,
                                                 std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (qubits.empty()) throw std::invalid_argument("sample_bits needs at least one qubit");
    const std::vector<double> probs = marginal_probabilities(state, qubits);

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0;

    std::vector<std::uint64_t> counts(probs.size(), 0);
    KeyedRng rng(seed, 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        counts[static_cast<std::size_t>(it - cdf.begin())]++;
    }

    std::map<std::string, std::uint64_t> histogram;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) continue;
        std::string key(qubits.size(), '0');
        for (std::size_t j = 0; j < qubits.size(); ++j)
            if ((k >> j) & 1) key[j] = '1';
        histogram[key] = counts[k];
    }
    return histogram;
}

} // namespace vqasvm
