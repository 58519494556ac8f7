#include "vqasvm/circuit.hpp"

#include <set>
#include <stdexcept>

namespace vqasvm {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

void Circuit::add_register(const std::string& name, int start, int width) {
    if (width < 1 || start < 0 || start + width > num_qubits_)
        throw std::invalid_argument("register '" + name + "' out of bounds");
    if (registers_.count(name)) throw std::invalid_argument("duplicate register '" + name + "'");
    for (const auto& [other, range] : registers_) {
        const bool disjoint = start + width <= range.start || range.start + range.width <= start;
        if (!disjoint)
            throw std::invalid_argument("register '" + name + "' overlaps '" + other + "'");
    }
    registers_[name] = RegisterRange{start, width};
}

const RegisterRange& Circuit::register_range(const std::string& name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) throw std::out_of_range("unknown register '" + name + "'");
    return it->second;
}

bool Circuit::has_register(const std::string& name) const { return registers_.count(name) > 0; }

void Circuit::validate_gate(const Gate& gate) const {
    std::set<int> seen;
    for (int q : gate.qubits) {
        if (q < 0 || q >= num_qubits_) throw std::out_of_range("gate qubit index out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("gate qubits must be distinct");
        if (!registers_.empty()) {
            bool inside = false;
            for (const auto& [name, range] : registers_) {
                if (q >= range.start && q < range.start + range.width) {
                    inside = true;
                    break;
                }
            }
            if (!inside) throw std::invalid_argument("gate touches a qubit outside all registers");
        }
    }
}

void Circuit::append(Gate gate) {
    validate_gate(gate);
    gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& sub, const std::vector<int>& qubit_map) {
    if (qubit_map.size() != static_cast<std::size_t>(sub.num_qubits()))
        throw std::invalid_argument("qubit map size must match sub-circuit width");
    for (const Gate& g : sub.gates()) {
        Gate mapped = g;
        for (std::size_t j = 0; j < mapped.qubits.size(); ++j)
            mapped.qubits[j] = qubit_map[static_cast<std::size_t>(g.qubits[j])];
        append(std::move(mapped));
    }
}

} // namespace vqasvm
