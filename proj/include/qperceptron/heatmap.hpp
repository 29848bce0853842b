#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperceptron/encoding.hpp"
#include "qperceptron/perceptron.hpp"
#include "qperceptron/rng.hpp"

namespace qp {

// Match probability over all (input, weight) pairs of length-n codes, rows
// indexed by the input's decimal value k_i, columns by the weight's k_w.
struct HeatmapGrid {
    int m;
    std::size_t n;
    std::size_t dim;  // m^n
    std::vector<double> values;  // row-major, dim x dim

    double at(std::size_t ki, std::size_t kw) const { return values[ki * dim + kw]; }
};

struct ShotSpec {
    std::uint64_t shots;
    std::uint64_t seed;
};

// Exact grid when shots is absent; otherwise every cell is shot-estimated
// with a per-cell seed derived from the master seed, so the grid does not
// depend on evaluation order.
inline HeatmapGrid compute_heatmap(std::size_t n, int m, std::optional<ShotSpec> shots = {}) {
    if (n < 1) throw std::domain_error("qubit count must be >= 1");
    const int k = bits_per_digit(m);
    if (static_cast<std::size_t>(k) * n > 16)
        throw std::domain_error("heatmap grid too large");
    const std::size_t dim = std::size_t{1} << (static_cast<std::size_t>(k) * n);
    HeatmapGrid grid{m, n, dim, std::vector<double>(dim * dim, 0.0)};
    for (std::size_t ki = 0; ki < dim; ++ki) {
        const PatternCode input = code_from_decimal(ki, n, m);
        for (std::size_t kw = 0; kw < dim; ++kw) {
            const PatternCode weight = code_from_decimal(kw, n, m);
            double p = exact_match_probability(PerceptronCircuit(input, weight));
            if (shots)
                p = sample_ancilla(p, shots->shots, mix_seed(shots->seed, ki * dim + kw))
                        .estimate();
            grid.values[ki * dim + kw] = p;
        }
    }
    return grid;
}

namespace detail {

inline std::string format_prob(double p) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.6f", p);
    return buf;
}

}  // namespace detail

// CSV with a header row/column of decimal indices; probabilities to 6 places,
// '.' decimal separator, LF endings.
inline std::string heatmap_csv(const HeatmapGrid& grid) {
    std::string out = "ki\\kw";
    for (std::size_t kw = 0; kw < grid.dim; ++kw) out += "," + std::to_string(kw);
    out += "\n";
    for (std::size_t ki = 0; ki < grid.dim; ++ki) {
        out += std::to_string(ki);
        for (std::size_t kw = 0; kw < grid.dim; ++kw)
            out += "," + detail::format_prob(grid.at(ki, kw));
        out += "\n";
    }
    return out;
}

// ASCII P2 grayscale image, pixel = round(255 * P).
inline std::string heatmap_ppm(const HeatmapGrid& grid) {
    std::string out = "P2\n" + std::to_string(grid.dim) + " " + std::to_string(grid.dim) + "\n255\n";
    for (std::size_t ki = 0; ki < grid.dim; ++ki) {
        for (std::size_t kw = 0; kw < grid.dim; ++kw) {
            if (kw) out += " ";
            out += std::to_string(static_cast<int>(std::lround(255.0 * grid.at(ki, kw))));
        }
        out += "\n";
    }
    return out;
}

}  // namespace qp
