#pragma once

#include <map>
#include <string>
#include <vector>

#include "vqasvm/gates.hpp"

namespace vqasvm {

/// Contiguous block of qubit indices, [start, start + width).
struct RegisterRange {
    int start = 0;
    int width = 0;

    std::vector<int> qubit_list() const {
        std::vector<int> q(static_cast<std::size_t>(width));
        for (int j = 0; j < width; ++j) q[static_cast<std::size_t>(j)] = start + j;
        return q;
    }
};

/// Ordered gate list over a fixed number of qubits with named registers.
/// Registers must be disjoint; once any register is declared, every appended
/// gate has to stay inside the declared ranges.
class Circuit {
  public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::map<std::string, RegisterRange>& registers() const { return registers_; }

    void add_register(const std::string& name, int start, int width);
    const RegisterRange& register_range(const std::string& name) const;
    bool has_register(const std::string& name) const;

    void append(Gate gate);

    /// Appends a sub-circuit, mapping its qubit q to qubit_map[q].
    void append(const Circuit& sub, const std::vector<int>& qubit_map);

    std::size_t size() const { return gates_.size(); }

  private:
    void validate_gate(const Gate& gate) const;

    int num_qubits_;
    std::vector<Gate> gates_;
    std::map<std::string, RegisterRange> registers_;
};

} // namespace vqasvm
