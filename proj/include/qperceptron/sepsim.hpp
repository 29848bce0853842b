#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qperceptron/rng.hpp"

namespace qp {

// Single qubit with real amplitudes a|0> + b|1>. Every gate in the circuit
// (rotation, X) has a real matrix, so complex arithmetic is omitted.
struct QubitState {
    double a;
    double b;
};

// Tensor-product register, one factor per qubit.
using SeparableState = std::vector<QubitState>;

// cos(theta)|0> + sin(theta)|1>. Takes the encoding angle directly; the QASM
// emitter converts to hardware convention with ry(2*theta).
inline QubitState prepare(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Orthogonal rotation [[cos, -sin], [sin, cos]].
inline QubitState apply_rotation(const QubitState& s, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    return {s.a * c - s.b * sn, s.a * sn + s.b * c};
}

inline QubitState apply_x(const QubitState& s) { return {s.b, s.a}; }

// P(all qubits measure 1) = prod b_i^2; equals the ancilla |1> probability of
// the multi-controlled NOT circuit without ever building the joint state.
inline double all_ones_probability(const SeparableState& reg) {
    double p = 1.0;
    for (const auto& q : reg) p *= q.b * q.b;
    return p;
}

struct ShotResult {
    std::uint64_t ones;
    std::uint64_t shots;

    double estimate() const { return static_cast<double>(ones) / static_cast<double>(shots); }
};

// Binomial(shots, p) by explicit Bernoulli draws from a seeded mt19937_64.
// Small floating-point excursions outside [0,1] are clamped.
inline ShotResult sample_ancilla(double p, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::domain_error("shots must be >= 1");
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::domain_error("probability out of range: " + std::to_string(p));
    p = p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
    Rng rng(seed);
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < shots; ++i)
        if (rng.uniform01() < p) ++ones;
    return {ones, shots};
}

}  // namespace qp
