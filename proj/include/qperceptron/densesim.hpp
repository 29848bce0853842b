#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qperceptron/encoding.hpp"

namespace qp {

// Brute-force statevector over n+1 qubits used as a verification oracle for
// the separable-state path. Basis ordering: qubit 0 is the most significant
// bit of the index, the ancilla (qubit n) the least significant.
struct DenseState {
    std::vector<double> amplitudes;
    std::size_t qubit_count;  // n + 1, ancilla included

    explicit DenseState(std::size_t qubits)
        : amplitudes(std::size_t{1} << qubits, 0.0), qubit_count(qubits) {
        amplitudes[0] = 1.0;
    }
};

namespace dense {

inline std::size_t bit_of(const DenseState& s, std::size_t qubit) {
    return s.qubit_count - 1 - qubit;  // qubit 0 is MSB
}

inline void apply_rotation(DenseState& s, std::size_t qubit, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const std::size_t stride = std::size_t{1} << bit_of(s, qubit);
    for (std::size_t base = 0; base < s.amplitudes.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            double& a0 = s.amplitudes[base + off];
            double& a1 = s.amplitudes[base + off + stride];
            const double n0 = c * a0 - sn * a1;
            const double n1 = sn * a0 + c * a1;
            a0 = n0;
            a1 = n1;
        }
    }
}

inline void apply_x(DenseState& s, std::size_t qubit) {
    const std::size_t stride = std::size_t{1} << bit_of(s, qubit);
    for (std::size_t base = 0; base < s.amplitudes.size(); base += 2 * stride)
        for (std::size_t off = 0; off < stride; ++off)
            std::swap(s.amplitudes[base + off], s.amplitudes[base + off + stride]);
}

// Multi-controlled NOT, controls = qubits 0..n-1, target = ancilla (LSB):
// the basis permutation swapping |1...1,0> and |1...1,1>.
inline void apply_mcx(DenseState& s) {
    const std::size_t dim = s.amplitudes.size();
    std::swap(s.amplitudes[dim - 2], s.amplitudes[dim - 1]);
}

inline double norm_squared(const DenseState& s) {
    double n = 0.0;
    for (double a : s.amplitudes) n += a * a;
    return n;
}

// P(ancilla = 1): squared amplitudes of odd-index basis states.
inline double ancilla_one_probability(const DenseState& s) {
    double p = 0.0;
    for (std::size_t i = 1; i < s.amplitudes.size(); i += 2) p += s.amplitudes[i] * s.amplitudes[i];
    return p;
}

}  // namespace dense

// Runs the full circuit verbatim: input rotations, adjoint weight rotations,
// X on all non-ancilla qubits, explicit multi-controlled NOT, then reads off
// P(ancilla = 1).
inline double dense_run(const PatternCode& input, const PatternCode& weight) {
    if (input.size() != weight.size() || input.m != weight.m)
        throw std::domain_error("input and weight must share length and alphabet");
    const std::size_t n = input.size();
    DenseState s(n + 1);
    for (std::size_t q = 0; q < n; ++q) dense::apply_rotation(s, q, digit_to_angle(input.digits[q], input.m));
    for (std::size_t q = 0; q < n; ++q) dense::apply_rotation(s, q, -digit_to_angle(weight.digits[q], weight.m));
    for (std::size_t q = 0; q < n; ++q) dense::apply_x(s, q);
    dense::apply_mcx(s);
    return dense::ancilla_one_probability(s);
}

}  // namespace qp
