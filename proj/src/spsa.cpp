#include "vqasvm/spsa.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>
#include <string>

#include "vqasvm/rng.hpp"

namespace vqasvm {

namespace {

// Perturbation streams live in their own key region so they never collide
// with estimator sampling streams derived from the same master seed.
constexpr std::uint64_t kSpsaStreamBase = std::uint64_t{1} << 62;

double checked(double value, std::size_t iteration, const char* what) {
    if (std::isnan(value))
        throw std::runtime_error("objective returned NaN (" + std::string(what) + " at iteration " +
                                 std::to_string(iteration) + ")");
    return value;
}

double window_mean(const std::vector<double>& values, std::size_t window) {
    double acc = 0.0;
    for (std::size_t k = values.size() - window; k < values.size(); ++k) acc += values[k];
    return acc / static_cast<double>(window);
}

struct RunState {
    ParameterVector theta;
    double f_current = 0.0;
    double sigma = 0.0;
    double gain_a = 0.0;
    double gain_c = 0.0;
    double stability = 0.0; // the A offset
    std::uint64_t eval_index = 0;
    OptimizationTrace trace;
    std::deque<ParameterVector> recent_thetas;
    bool stopped = false;
};

// Sigma estimate plus gain calibration; consumes evaluation indices from the
// shared counter so warm starts stay reproducible.
void initialize(const Objective& objective, const SPSAConfig& config, RunState& state) {
    const std::size_t dim = state.theta.size();

    std::vector<double> samples(static_cast<std::size_t>(config.sigma_estimation_samples));
    for (auto& s : samples)
        s = checked(objective(state.theta, state.eval_index++), 0, "sigma estimation");
    state.trace.evaluations += samples.size();
    double mu = 0.0;
    for (double s : samples) mu += s;
    mu /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double s : samples) var += (s - mu) * (s - mu);
    state.sigma = std::sqrt(var / static_cast<double>(samples.size() - 1));
    if (state.sigma < 1e-12) state.sigma = 0.0;

    state.stability = config.A >= 0.0 ? config.A
                                      : static_cast<double>(config.max_iter) / 10.0;
    state.gain_c = config.c > 0.0 ? config.c : (state.sigma == 0.0 ? 0.1 : state.sigma);

    if (config.a > 0.0) {
        state.gain_a = config.a;
        state.f_current = mu;
        return;
    }

    // Probe the gradient magnitude at theta0 to aim the first step at about
    // 0.1 rad per parameter.
    KeyedRng rng(config.seed, kSpsaStreamBase);
    const int probes = 5;
    double magnitude = 0.0;
    for (int p = 0; p < probes; ++p) {
        std::vector<int> delta(dim);
        for (auto& d : delta) d = rng.next_sign();
        ParameterVector plus = state.theta;
        ParameterVector minus = state.theta;
        for (std::size_t k = 0; k < dim; ++k) {
            plus[k] += state.gain_c * delta[k];
            minus[k] -= state.gain_c * delta[k];
        }
        const double fp = checked(objective(plus, state.eval_index++), 0, "calibration");
        const double fm = checked(objective(minus, state.eval_index++), 0, "calibration");
        state.trace.evaluations += 2;
        magnitude += std::abs(fp - fm) / (2.0 * state.gain_c);
    }
    magnitude /= probes;
    const double target_step = 0.1;
    state.gain_a = magnitude > 1e-12
                       ? target_step * std::pow(state.stability + 1.0, config.alpha_gain) / magnitude
                       : target_step * std::pow(state.stability + 1.0, config.alpha_gain);
    state.f_current = mu;
}

void run_iterations(const Objective& objective, const SPSAConfig& config, RunState& state,
                    std::size_t t_begin, std::size_t t_end) {
    const std::size_t dim = state.theta.size();
    for (std::size_t t = t_begin; t < t_end && !state.stopped; ++t) {
        const double a_t =
            state.gain_a / std::pow(static_cast<double>(t) + 1.0 + state.stability, config.alpha_gain);
        const double c_t = state.gain_c / std::pow(static_cast<double>(t) + 1.0, config.gamma_gain);

        KeyedRng rng(config.seed, kSpsaStreamBase + t + 1);
        std::vector<int> delta(dim);
        for (auto& d : delta) d = rng.next_sign();

        ParameterVector plus = state.theta;
        ParameterVector minus = state.theta;
        for (std::size_t k = 0; k < dim; ++k) {
            plus[k] += c_t * delta[k];
            minus[k] -= c_t * delta[k];
        }
        const double f_plus = checked(objective(plus, state.eval_index++), t + 1, "forward");
        const double f_minus = checked(objective(minus, state.eval_index++), t + 1, "backward");
        state.trace.evaluations += 2;

        ParameterVector candidate = state.theta;
        const double scale = (f_plus - f_minus) / (2.0 * c_t);
        for (std::size_t k = 0; k < dim; ++k)
            candidate[k] -= a_t * scale / static_cast<double>(delta[k]);

        const double f_candidate =
            checked(objective(candidate, state.eval_index++), t + 1, "candidate");
        state.trace.evaluations += 1;

        const bool rejected =
            config.blocking && f_candidate >= state.f_current + 2.0 * state.sigma;
        TraceRecord record;
        record.iteration = t + 1;
        record.objective = f_candidate;
        record.accepted = !rejected;
        record.theta_hash = hash_parameters(rejected ? state.theta : candidate);
        state.trace.records.push_back(record);

        if (rejected) continue;

        state.theta = candidate;
        state.f_current = f_candidate;
        state.trace.recorded_losses.push_back(f_candidate);
        state.recent_thetas.push_back(state.theta);
        if (state.recent_thetas.size() > config.averaging_window) state.recent_thetas.pop_front();

        if (state.trace.recorded_losses.size() >= config.early_stop_window_long) {
            const double short_mean =
                window_mean(state.trace.recorded_losses, config.early_stop_window_short);
            const double long_mean =
                window_mean(state.trace.recorded_losses, config.early_stop_window_long);
            if (short_mean >= long_mean) {
                state.trace.early_stopped = true;
                state.stopped = true;
            }
        }
    }
}

SPSAResult finish(RunState& state) {
    SPSAResult result;
    if (state.recent_thetas.empty()) {
        result.theta_star = state.theta;
    } else {
        const std::size_t dim = state.theta.size();
        result.theta_star.assign(dim, 0.0);
        for (const auto& snapshot : state.recent_thetas)
            for (std::size_t k = 0; k < dim; ++k) result.theta_star[k] += snapshot[k];
        for (auto& v : result.theta_star) v /= static_cast<double>(state.recent_thetas.size());
    }
    state.trace.iterations_run =
        state.trace.records.empty() ? 0 : state.trace.records.back().iteration;
    result.trace = std::move(state.trace);
    return result;
}

} // namespace

void SPSAConfig::validate() const {
    if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
    if (sigma_estimation_samples < 2)
        throw std::invalid_argument("sigma estimation needs at least two samples");
    if (early_stop_window_short >= early_stop_window_long)
        throw std::invalid_argument("short window must be smaller than the long window");
    if (early_stop_window_long > max_iter)
        throw std::invalid_argument("long window cannot exceed max_iter");
    if (averaging_window == 0) throw std::invalid_argument("averaging window must be positive");
    if (alpha_gain <= 0.0 || gamma_gain <= 0.0)
        throw std::invalid_argument("gain exponents must be positive");
}

std::uint64_t hash_parameters(const ParameterVector& theta) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (double v : theta) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (bits >> (8 * byte)) & 0xffULL;
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

double estimate_sigma(const Objective& objective, const ParameterVector& theta0, int samples,
                      std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("sigma estimation needs at least two samples");
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = checked(objective(theta0, derive_seed(seed, k)), 0, "sigma estimation");
    double mu = 0.0;
    for (double v : values) mu += v;
    mu /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mu) * (v - mu);
    return std::sqrt(var / static_cast<double>(values.size() - 1));
}

SPSAResult spsa_minimize(const Objective& objective, const ParameterVector& theta0,
                         const SPSAConfig& config) {
    return warm_start(objective, objective, theta0, config, 0);
}

SPSAResult warm_start(const Objective& objective_cheap, const Objective& objective_expensive,
                      const ParameterVector& theta0, const SPSAConfig& config,
                      std::size_t handoff_iterations) {
    config.validate();
    if (theta0.empty()) throw std::invalid_argument("theta0 must not be empty");

    RunState state;
    state.theta = theta0;

    const std::size_t handoff = std::min(handoff_iterations, config.max_iter);
    initialize(handoff > 0 ? objective_cheap : objective_expensive, config, state);
    state.trace.initial_objective = state.f_current;
    run_iterations(objective_cheap, config, state, 0, handoff);
    if (!state.stopped)
        run_iterations(objective_expensive, config, state, handoff, config.max_iter);
    return finish(state);
}

} // namespace vqasvm
