#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "qperceptron/encoding.hpp"
#include "qperceptron/sepsim.hpp"

namespace qp {

// The recognition circuit: input layer, adjoint weight layer, X layer, one
// multi-controlled NOT onto the ancilla, ancilla measurement.
struct PerceptronCircuit {
    PatternCode input;
    PatternCode weight;
    int m;
    std::size_t n;

    PerceptronCircuit(PatternCode in, PatternCode w)
        : input(std::move(in)), weight(std::move(w)), m(input.m), n(input.size()) {
        if (input.size() != weight.size() || input.m != weight.m)
            throw std::domain_error("input and weight must share length and alphabet");
    }
};

// Exact ancilla |1> probability, computed by executing the separable pipeline
// (prepare, adjoint rotation, X, product of |1> probabilities). Equals
// prod cos^2((w_i - j_i) * pi / m).
inline double exact_match_probability(const PerceptronCircuit& c) {
    SeparableState reg;
    reg.reserve(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        QubitState q = prepare(digit_to_angle(c.input.digits[i], c.m));
        q = apply_rotation(q, -digit_to_angle(c.weight.digits[i], c.m));
        reg.push_back(apply_x(q));
    }
    return all_ones_probability(reg);
}

struct MatchEstimate {
    double exact;
    std::optional<double> estimated;
    std::optional<std::uint64_t> shots;
};

inline MatchEstimate estimate_match(const PerceptronCircuit& c, std::uint64_t shots,
                                    std::uint64_t seed) {
    const double p = exact_match_probability(c);
    const ShotResult r = sample_ancilla(p, shots, seed);
    return {p, r.estimate(), shots};
}

namespace detail {

inline std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// OPENQASM 2.0 program for the circuit. Registers are q[n+1] and c[1]; the
// ancilla is q[n]. ry(2*theta) realizes prepare(theta); the weight layer is
// ry(-2*theta_w). Exactly one multi-qubit gate appears: the multi-controlled
// NOT, emitted as cx/ccx/c3x/c4x from the standard header.
inline std::string emit_qasm(const PerceptronCircuit& c) {
    if (c.n > 4)
        throw std::domain_error(
            "emit_qasm supports at most 4 control qubits; larger multi-controlled "
            "gates need a decomposition that is not implemented");
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n + 1) + "];\n";
    out += "creg c[1];\n";
    for (std::size_t i = 0; i < c.n; ++i)
        out += "ry(" + detail::format_angle(2.0 * digit_to_angle(c.input.digits[i], c.m)) +
               ") q[" + std::to_string(i) + "];\n";
    for (std::size_t i = 0; i < c.n; ++i)
        out += "ry(" + detail::format_angle(-2.0 * digit_to_angle(c.weight.digits[i], c.m)) +
               ") q[" + std::to_string(i) + "];\n";
    for (std::size_t i = 0; i < c.n; ++i) out += "x q[" + std::to_string(i) + "];\n";
    static const char* kMcx[] = {"cx", "ccx", "c3x", "c4x"};
    out += kMcx[c.n - 1];
    out += " ";
    for (std::size_t i = 0; i < c.n; ++i) out += "q[" + std::to_string(i) + "],";
    out += "q[" + std::to_string(c.n) + "];\n";
    out += "measure q[" + std::to_string(c.n) + "] -> c[0];\n";
    return out;
}

}  // namespace qp
