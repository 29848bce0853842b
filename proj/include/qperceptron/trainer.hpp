#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperceptron/encoding.hpp"
#include "qperceptron/perceptron.hpp"
#include "qperceptron/rng.hpp"

namespace qp {

enum class UpdateCase { none, case1, case2, case3 };

inline const char* to_string(UpdateCase c) {
    switch (c) {
        case UpdateCase::none: return "none";
        case UpdateCase::case1: return "case1";
        case UpdateCase::case2: return "case2";
        case UpdateCase::case3: return "case3";
    }
    return "none";
}

struct TrainingConfig {
    PatternCode target;
    std::uint64_t shots = 1024;
    double tolerance_floor = 0.02;
    double z_sigma = 3.0;
    std::size_t cycle_length = 0;  // 0 -> min(m^n, 64)
    std::size_t max_steps = 10000;
    std::uint64_t seed = 0;
    bool exact_measure = false;     // bypass shot sampling, measured = exact
    bool estimate_fidelity = false; // shot-estimate the fidelity trace as well
};

struct TrainingStep {
    std::size_t step;
    PatternCode input;
    PatternCode weight_before;
    double measured;
    double expected;
    UpdateCase case_applied;
    PatternCode weight_after;
    double fidelity;
};

struct TrainingTrace {
    std::vector<TrainingStep> steps;
    bool converged = false;
    std::size_t total_steps = 0;
};

// Analytic overlap of the input state with the target state: the classical
// side of the hybrid scheme, prod cos^2((t_i - j_i) * pi / m).
inline double expected_output(const PatternCode& input, const PatternCode& target) {
    if (input.size() != target.size() || input.m != target.m)
        throw std::domain_error("input and target must share length and alphabet");
    double p = 1.0;
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double c = std::cos(digit_to_angle(target.digits[i], target.m) -
                                  digit_to_angle(input.digits[i], input.m));
        p *= c * c;
    }
    return p;
}

// Squared overlap |<w_t|w>|^2 between the weight and target states.
inline double fidelity(const PatternCode& weight, const PatternCode& target) {
    return expected_output(weight, target);
}

// Decides whether a measured estimate agrees with the expected value within
// the binomial tolerance band tau = max(floor, z * sigma), and if not, which
// update case applies. Case 1 fires when exactly one side is compatible with
// zero overlap; otherwise the sign of (measured - expected) picks case 2 or 3.
inline UpdateCase classify_mismatch(double measured, double expected, std::uint64_t shots,
                                    const TrainingConfig& cfg) {
    const double sigma = std::sqrt(measured * (1.0 - measured) / static_cast<double>(shots));
    const double tau = std::max(cfg.tolerance_floor, cfg.z_sigma * sigma);
    if (std::abs(measured - expected) <= tau) return UpdateCase::none;
    const bool measured_zero = measured <= tau;
    const bool expected_zero = expected <= tau;
    if (measured_zero != expected_zero) return UpdateCase::case1;
    return measured > expected ? UpdateCase::case2 : UpdateCase::case3;
}

// Applies one discrete weight update; exactly one digit changes.
//   case1: random index among positions where the weight and input states are
//          orthogonal (digit difference m/2); incrementing one removes the
//          spurious orthogonality. When no such position exists (the overlap
//          was too high rather than missing), any index qualifies.
//   case2: random index among {w_k == i_k}, increment mod m.
//   case3: random index among {w_k != i_k}, set to i_k.
// Empty index sets fall back to an unrestricted random increment.
inline PatternCode apply_update(const PatternCode& weight, const PatternCode& input,
                                UpdateCase which, Rng& rng) {
    if (which == UpdateCase::none) throw std::domain_error("apply_update requires a mismatch case");
    if (weight.size() != input.size() || weight.m != input.m)
        throw std::domain_error("weight and input must share length and alphabet");
    const int m = weight.m;
    std::vector<std::size_t> candidates;
    if (which == UpdateCase::case1) {
        for (std::size_t k = 0; k < weight.size(); ++k)
            if (((weight.digits[k] - input.digits[k]) % m + m) % m == m / 2)
                candidates.push_back(k);
    } else if (which == UpdateCase::case2) {
        for (std::size_t k = 0; k < weight.size(); ++k)
            if (weight.digits[k] == input.digits[k]) candidates.push_back(k);
    } else if (which == UpdateCase::case3) {
        for (std::size_t k = 0; k < weight.size(); ++k)
            if (weight.digits[k] != input.digits[k]) candidates.push_back(k);
    }
    PatternCode out = weight;
    if (candidates.empty()) {
        const std::size_t k = rng.uniform_below(weight.size());
        out.digits[k] = (out.digits[k] + 1) % m;
    } else {
        const std::size_t k = candidates[rng.uniform_below(candidates.size())];
        if (which == UpdateCase::case3)
            out.digits[k] = input.digits[k];
        else
            out.digits[k] = (out.digits[k] + 1) % m;
    }
    return out;
}

namespace detail {

inline std::size_t pattern_space_size(std::size_t n, int m) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > (std::size_t{1} << 56)) return std::size_t{1} << 56;
        total *= static_cast<std::size_t>(m);
    }
    return total;
}

inline PatternCode random_code(std::size_t n, int m, Rng& rng) {
    std::vector<int> digits(n);
    for (auto& d : digits) d = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m)));
    return PatternCode(std::move(digits), m);
}

}  // namespace detail

inline std::size_t effective_cycle_length(const TrainingConfig& cfg) {
    if (cfg.cycle_length > 0) return cfg.cycle_length;
    return std::min<std::size_t>(detail::pattern_space_size(cfg.target.size(), cfg.target.m), 64);
}

// One hybrid training session: random initial weight, uniformly random inputs,
// shot-estimated measurement, case-based updates, until cycle_length
// consecutive mismatch-free steps or max_steps.
inline TrainingTrace run_session(const TrainingConfig& cfg) {
    if (cfg.shots < 1) throw std::domain_error("shots must be >= 1");
    if (cfg.max_steps < 1) throw std::domain_error("max_steps must be >= 1");
    const std::size_t n = cfg.target.size();
    const int m = cfg.target.m;
    const std::size_t cycle = effective_cycle_length(cfg);
    Rng rng(cfg.seed);
    PatternCode weight = detail::random_code(n, m, rng);

    TrainingTrace trace;
    std::size_t clean_streak = 0;
    while (trace.total_steps < cfg.max_steps) {
        const std::size_t step = trace.total_steps++;
        const PatternCode input = detail::random_code(n, m, rng);
        const double exact = exact_match_probability(PerceptronCircuit(input, weight));
        double measured = exact;
        if (!cfg.exact_measure) {
            const std::uint64_t shot_seed = rng.raw();
            measured = sample_ancilla(exact, cfg.shots, shot_seed).estimate();
        }
        const double expected = expected_output(input, cfg.target);
        const UpdateCase which = classify_mismatch(measured, expected, cfg.shots, cfg);
        const PatternCode before = weight;
        if (which != UpdateCase::none) {
            weight = apply_update(weight, input, which, rng);
            clean_streak = 0;
        } else {
            ++clean_streak;
        }
        double f = fidelity(weight, cfg.target);
        if (cfg.estimate_fidelity) {
            const std::uint64_t shot_seed = rng.raw();
            f = sample_ancilla(f, cfg.shots, shot_seed).estimate();
        }
        trace.steps.push_back({step, input, before, measured, expected, which, weight, f});
        if (clean_streak >= cycle) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

struct BatchSummary {
    std::size_t sessions = 0;
    double convergence_rate = 0.0;
    double mean_steps = 0.0;
    double median_steps = 0.0;
    std::size_t max_steps_observed = 0;
    std::vector<double> mean_fidelity_curve;
};

// Independent sessions with per-session seeds derived from the master seed.
// Mean fidelity curve pads converged tails with 1.0.
inline BatchSummary run_batch(const TrainingConfig& cfg, std::size_t sessions) {
    if (sessions < 1) throw std::domain_error("sessions must be >= 1");
    std::vector<TrainingTrace> traces;
    traces.reserve(sessions);
    for (std::size_t s = 0; s < sessions; ++s) {
        TrainingConfig local = cfg;
        local.seed = mix_seed(cfg.seed, s);
        traces.push_back(run_session(local));
    }

    BatchSummary out;
    out.sessions = sessions;
    std::vector<std::size_t> counts;
    counts.reserve(sessions);
    std::size_t converged = 0;
    std::size_t longest = 0;
    for (const auto& t : traces) {
        counts.push_back(t.total_steps);
        longest = std::max(longest, t.total_steps);
        if (t.converged) ++converged;
        out.max_steps_observed = std::max(out.max_steps_observed, t.total_steps);
    }
    out.convergence_rate = static_cast<double>(converged) / static_cast<double>(sessions);
    double sum = 0.0;
    for (std::size_t c : counts) sum += static_cast<double>(c);
    out.mean_steps = sum / static_cast<double>(sessions);
    std::sort(counts.begin(), counts.end());
    out.median_steps = sessions % 2 == 1
                           ? static_cast<double>(counts[sessions / 2])
                           : 0.5 * static_cast<double>(counts[sessions / 2 - 1] +
                                                       counts[sessions / 2]);
    out.mean_fidelity_curve.assign(longest, 0.0);
    for (const auto& t : traces) {
        const double tail = t.steps.empty() ? 1.0 : t.steps.back().fidelity;
        for (std::size_t i = 0; i < longest; ++i) {
            const double f = i < t.steps.size() ? t.steps[i].fidelity
                                                : (t.converged ? 1.0 : tail);
            out.mean_fidelity_curve[i] += f;
        }
    }
    for (double& f : out.mean_fidelity_curve) f /= static_cast<double>(sessions);
    return out;
}

}  // namespace qp
