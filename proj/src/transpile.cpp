#include "vqasvm/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vqasvm/multiplexer.hpp"

namespace vqasvm {

namespace {

constexpr double kPi = std::numbers::pi;

void emit_h(Circuit& out, int q) {
    // H = RY(pi/2) RZ(pi) up to global phase.
    out.append(Gate::rz(kPi, q));
    out.append(Gate::ry(kPi / 2.0, q));
}

void emit_cz(Circuit& out, int a, int b) {
    emit_h(out, b);
    out.append(Gate::cnot(a, b));
    emit_h(out, b);
}

void emit_toffoli(Circuit& out, int a, int b, int c) {
    // Standard 6-CNOT Toffoli with T = RZ(pi/4) up to global phase.
    const double t = kPi / 4.0;
    emit_h(out, c);
    out.append(Gate::cnot(b, c));
    out.append(Gate::rz(-t, c));
    out.append(Gate::cnot(a, c));
    out.append(Gate::rz(t, c));
    out.append(Gate::cnot(b, c));
    out.append(Gate::rz(-t, c));
    out.append(Gate::cnot(a, c));
    out.append(Gate::rz(t, b));
    out.append(Gate::rz(t, c));
    emit_h(out, c);
    out.append(Gate::cnot(a, b));
    out.append(Gate::rz(t, a));
    out.append(Gate::rz(-t, b));
    out.append(Gate::cnot(a, b));
}

// Exact cyclic Gray-code cascade for a multiplexed RZ: diag over (controls,
// target) applying RZ(angles[i]) on the target for control value i. Uses
// 2^m CNOTs and 2^m rotations; only the basis rewrite of DIAGONAL needs it.
void emit_cyclic_ucrz(Circuit& out, const std::vector<double>& angles,
                      const std::vector<int>& controls, int target) {
    if (controls.empty()) {
        out.append(Gate::rz(angles[0], target));
        return;
    }
    const std::vector<double> theta = multiplexed_rotation_angles(angles);
    const std::size_t m_size = angles.size();
    for (std::size_t k = 0; k < m_size; ++k) {
        out.append(Gate::rz(theta[k], target));
        // Gray transition bit; the wrap transition flips the top bit.
        int ctrl = static_cast<int>(controls.size()) - 1;
        if (k + 1 < m_size) {
            ctrl = 0;
            while (!(((k + 1) >> ctrl) & 1)) ++ctrl;
        }
        out.append(Gate::cnot(controls[static_cast<std::size_t>(ctrl)], target));
    }
}

// Synthesizes an arbitrary diagonal via recursive multiplexed-RZ peeling:
// split the phase table on the top qubit into a mean part (recursed) and a
// difference part (one multiplexed RZ).
void emit_diagonal(Circuit& out, const std::vector<double>& phases,
                   const std::vector<int>& qubits) {
    if (qubits.size() == 1) {
        out.append(Gate::rz(phases[1] - phases[0], qubits[0]));
        return;
    }
    const std::size_t half = phases.size() >> 1;
    std::vector<double> mean(half);
    std::vector<double> diff(half);
    for (std::size_t x = 0; x < half; ++x) {
        diff[x] = phases[x + half] - phases[x];
        mean[x] = phases[x] + 0.5 * diff[x];
    }
    std::vector<int> lower(qubits.begin(), qubits.end() - 1);
    emit_cyclic_ucrz(out, diff, lower, qubits.back());
    emit_diagonal(out, mean, lower);
}

} // namespace

Circuit decompose_to_basis(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    for (const auto& [name, range] : circuit.registers())
        out.add_register(name, range.start, range.width);
    for (const Gate& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RY:
            case GateKind::RZ:
            case GateKind::CNOT:
                out.append(g);
                break;
            case GateKind::H:
                emit_h(out, g.qubits[0]);
                break;
            case GateKind::X:
                out.append(Gate::rx(kPi, g.qubits[0]));
                break;
            case GateKind::SX:
                out.append(Gate::rx(kPi / 2.0, g.qubits[0]));
                break;
            case GateKind::CZ:
                emit_cz(out, g.qubits[0], g.qubits[1]);
                break;
            case GateKind::SWAP:
                out.append(Gate::cnot(g.qubits[0], g.qubits[1]));
                out.append(Gate::cnot(g.qubits[1], g.qubits[0]));
                out.append(Gate::cnot(g.qubits[0], g.qubits[1]));
                break;
            case GateKind::CSWAP:
                out.append(Gate::cnot(g.qubits[2], g.qubits[1]));
                emit_toffoli(out, g.qubits[0], g.qubits[1], g.qubits[2]);
                out.append(Gate::cnot(g.qubits[2], g.qubits[1]));
                break;
            case GateKind::DIAGONAL: {
                std::vector<double> phases(g.diag_entries.size());
                for (std::size_t k = 0; k < phases.size(); ++k)
                    phases[k] = std::arg(g.diag_entries[k]);
                emit_diagonal(out, phases, g.qubits);
                break;
            }
        }
    }
    return out;
}

int circuit_depth(const Circuit& circuit, bool decompose_to_basis_first) {
    if (decompose_to_basis_first) return circuit_depth(decompose_to_basis(circuit), false);
    std::vector<int> level(static_cast<std::size_t>(circuit.num_qubits()), 0);
    int depth = 0;
    for (const Gate& g : circuit.gates()) {
        int layer = 0;
        for (int q : g.qubits) layer = std::max(layer, level[static_cast<std::size_t>(q)]);
        ++layer;
        for (int q : g.qubits) level[static_cast<std::size_t>(q)] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

std::map<GateKind, std::size_t> gate_counts(const Circuit& circuit) {
    std::map<GateKind, std::size_t> counts;
    for (const Gate& g : circuit.gates()) counts[g.kind]++;
    return counts;
}

} // namespace vqasvm
