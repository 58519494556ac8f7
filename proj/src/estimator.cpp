#include "vqasvm/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "vqasvm/oracle.hpp"
#include "vqasvm/rng.hpp"
#include "vqasvm/statevector.hpp"
#include "vqasvm/vqasvm_circuits.hpp"

namespace vqasvm {

namespace {

// Sub-stream tags so loss, decision and regularizer draws never share a key.
constexpr std::uint64_t kLossTag = 1;
constexpr std::uint64_t kDecisionTag = 2;
constexpr std::uint64_t kRegularizerTag = 3;

std::uint64_t sample_seed(const EstimatorConfig& est, std::uint64_t stream, std::uint64_t tag) {
    return derive_seed(est.seed, (stream << 2) | tag);
}

// sum of sign-weighted frequencies: mean over shots of prod_q (-1)^bit_q.
struct JointSigns {
    double first = 0.0;  // includes the ancilla bit
    double second = 0.0; // label bits only
};

JointSigns sampled_signs(const StateVector& state, const std::vector<int>& qubits,
                         std::size_t num_label_bits, std::uint64_t shots, std::uint64_t seed) {
    // qubits = {a, labels...}; both observables come from one histogram.
    const auto histogram = sample_bits(state, qubits, shots, seed);
    double first = 0.0;
    double second = 0.0;
    for (const auto& [key, count] : histogram) {
        int ones_all = 0;
        int ones_labels = 0;
        for (std::size_t j = 0; j < key.size(); ++j) {
            if (key[j] == '1') {
                ++ones_all;
                if (j >= key.size() - num_label_bits) ++ones_labels;
            }
        }
        const double weight = static_cast<double>(count);
        first += (ones_all & 1) ? -weight : weight;
        second += (ones_labels & 1) ? -weight : weight;
    }
    const double total = static_cast<double>(shots);
    return JointSigns{first / total, second / total};
}

StateVector loss_state_direct(const ParameterVector& theta, const TrainingSet& set,
                              const FeatureMapSpec& fmap, const AnsatzSpec& ansatz) {
    const StateVector phi =
        direct_embedded_state(set, fmap, index_state_amplitudes(ansatz, theta));
    const int block = ansatz.m + fmap.n + 1;
    const int width = 2 * block + 1;
    const std::uint64_t block_dim = phi.dim();

    std::vector<cdouble> amps(std::uint64_t{1} << width, cdouble{0.0, 0.0});
    const auto& small = phi.amplitudes();
    for (std::uint64_t k2 = 0; k2 < block_dim; ++k2) {
        if (small[k2] == cdouble{0.0, 0.0}) continue;
        const std::uint64_t base = k2 << block;
        for (std::uint64_t k1 = 0; k1 < block_dim; ++k1) amps[base | k1] = small[k2] * small[k1];
    }
    StateVector state = StateVector::from_amplitudes(width, std::move(amps));

    const int a = 2 * block;
    apply_gate_inplace(state, Gate::h(a));
    for (int k = 0; k < fmap.n; ++k)
        apply_gate_inplace(state, Gate::cswap(a, ansatz.m + k, block + ansatz.m + k));
    apply_gate_inplace(state, Gate::h(a));
    return state;
}

StateVector decision_state_direct(std::span<const double> x_hat, const ParameterVector& theta,
                                  const TrainingSet& set, const FeatureMapSpec& fmap,
                                  const AnsatzSpec& ansatz) {
    const StateVector phi =
        direct_embedded_state(set, fmap, index_state_amplitudes(ansatz, theta));
    const StateVector phi_hat = feature_state(fmap, x_hat);
    const int block = ansatz.m + fmap.n + 1;
    const int width = block + fmap.n + 1;

    std::vector<cdouble> amps(std::uint64_t{1} << width, cdouble{0.0, 0.0});
    const auto& small = phi.amplitudes();
    const auto& hat = phi_hat.amplitudes();
    for (std::uint64_t k2 = 0; k2 < hat.size(); ++k2) {
        if (hat[k2] == cdouble{0.0, 0.0}) continue;
        const std::uint64_t base = k2 << block;
        for (std::uint64_t k1 = 0; k1 < small.size(); ++k1) amps[base | k1] = hat[k2] * small[k1];
    }
    StateVector state = StateVector::from_amplitudes(width, std::move(amps));

    const int a = block + fmap.n;
    apply_gate_inplace(state, Gate::h(a));
    for (int k = 0; k < fmap.n; ++k)
        apply_gate_inplace(state, Gate::cswap(a, ansatz.m + k, block + k));
    apply_gate_inplace(state, Gate::h(a));
    return state;
}

} // namespace

void EstimatorConfig::validate() const {
    if (mode == EstimatorMode::SHOTS && shots < 1)
        throw std::invalid_argument("SHOTS mode needs at least one shot");
}

void Hyperparams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
    if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
}

bool Hyperparams::hard_margin() const { return std::isinf(C); }

double estimate_loss(const ParameterVector& theta, const TrainingSet& set,
                     const FeatureMapSpec& fmap, const AnsatzSpec& ansatz, const Hyperparams& hp,
                     const EstimatorConfig& est, std::uint64_t stream, EvalStats* stats) {
    est.validate();
    hp.validate();
    if (stats) stats->loss_evals++;

    StateVector state = est.path == OraclePath::GATES
                            ? run_circuit(build_loss_circuit(set, fmap, ansatz, theta),
                                          StateVector(2 * (ansatz.m + fmap.n + 1) + 1))
                            : loss_state_direct(theta, set, fmap, ansatz);

    const int block = ansatz.m + fmap.n + 1;
    const int y0 = ansatz.m + fmap.n;
    const int y1 = block + ansatz.m + fmap.n;
    const int a = 2 * block;

    if (est.mode == EstimatorMode::EXACT) {
        const double term_swap = expectation_pauli_z(state, {a, y0, y1});
        const double term_bias = expectation_pauli_z(state, {y0, y1});
        return term_swap + term_bias / hp.lambda;
    }
    const JointSigns signs = sampled_signs(state, {a, y0, y1}, 2, est.shots,
                                           sample_seed(est, stream, kLossTag));
    return signs.first + signs.second / hp.lambda;
}

double estimate_regularizer(const ParameterVector& theta, const AnsatzSpec& ansatz,
                            const EstimatorConfig& est, std::uint64_t stream, EvalStats* stats) {
    est.validate();
    if (stats) stats->regularizer_evals++;

    const Circuit circuit = build_regularization_circuit(ansatz, theta);
    const StateVector state = run_circuit(circuit, StateVector(circuit.num_qubits()));
    const RegisterRange j = circuit.register_range("j");

    if (est.mode == EstimatorMode::EXACT) {
        return projector_probability(state, j, std::vector<int>(j.width, 0));
    }
    const auto histogram =
        sample_bits(state, j.qubit_list(), est.shots, sample_seed(est, stream, kRegularizerTag));
    const std::string zeros(static_cast<std::size_t>(j.width), '0');
    const auto it = histogram.find(zeros);
    const std::uint64_t hits = it == histogram.end() ? 0 : it->second;
    return static_cast<double>(hits) / static_cast<double>(est.shots);
}

double estimate_objective(const ParameterVector& theta, const TrainingSet& set,
                          const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
                          const Hyperparams& hp, const EstimatorConfig& est, std::uint64_t stream,
                          EvalStats* stats) {
    double value = estimate_loss(theta, set, fmap, ansatz, hp, est, stream, stats);
    if (!hp.hard_margin())
        value += hp.inv_C() * estimate_regularizer(theta, ansatz, est, stream, stats);
    return value;
}

double estimate_decision(std::span<const double> x_hat, const ParameterVector& theta,
                         const TrainingSet& set, const FeatureMapSpec& fmap,
                         const AnsatzSpec& ansatz, double lambda, const EstimatorConfig& est,
                         std::uint64_t stream, EvalStats* stats) {
    est.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (stats) stats->decision_evals++;

    StateVector state = est.path == OraclePath::GATES
                            ? run_circuit(build_decision_circuit(x_hat, set, fmap, ansatz, theta),
                                          StateVector(ansatz.m + 2 * fmap.n + 2))
                            : decision_state_direct(x_hat, theta, set, fmap, ansatz);

    const int y = ansatz.m + fmap.n;
    const int a = ansatz.m + 2 * fmap.n + 1;

    // The label qubit stores y = +1 as |1>, whose Z eigenvalue is -1, so both
    // raw expectations carry a sign relative to the decision value.
    if (est.mode == EstimatorMode::EXACT) {
        const double term_swap = expectation_pauli_z(state, {a, y});
        const double term_bias = expectation_pauli_z(state, {y});
        return -(term_swap + term_bias / lambda);
    }
    const JointSigns signs =
        sampled_signs(state, {a, y}, 1, est.shots, sample_seed(est, stream, kDecisionTag));
    return -(signs.first + signs.second / lambda);
}

} // namespace vqasvm
