#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qp {

inline constexpr double kPi = std::numbers::pi;

// Number of bits packed into one digit. Throws unless m is a power of two >= 2.
inline int bits_per_digit(int m) {
    if (m < 2 || (m & (m - 1)) != 0)
        throw std::domain_error("alphabet size must be a power of two >= 2, got " +
                                std::to_string(m));
    int k = 0;
    for (int v = m; v > 1; v >>= 1) ++k;
    return k;
}

// A pattern as a string of base-m digits, one digit per qubit.
struct PatternCode {
    std::vector<int> digits;
    int m = 4;

    PatternCode() = default;
    PatternCode(std::vector<int> d, int alphabet) : digits(std::move(d)), m(alphabet) {
        if (digits.empty()) throw std::domain_error("pattern code must have at least one digit");
        for (int x : digits)
            if (x < 0 || x >= m)
                throw std::domain_error("digit " + std::to_string(x) + " out of range [0, " +
                                        std::to_string(m) + ")");
    }

    std::size_t size() const { return digits.size(); }

    friend bool operator==(const PatternCode& a, const PatternCode& b) {
        return a.m == b.m && a.digits == b.digits;
    }
};

// Elemental-pattern angle theta_j = j*pi/m.
inline double digit_to_angle(int j, int m) {
    if (m < 2) throw std::domain_error("alphabet size must be >= 2");
    if (j < 0 || j >= m)
        throw std::domain_error("digit " + std::to_string(j) + " out of range [0, " +
                                std::to_string(m) + ")");
    return static_cast<double>(j) * kPi / static_cast<double>(m);
}

// Groups bits left-to-right into blocks of k = log2(m); a short final block is
// right-padded with zeros. Each block is read as a big-endian k-bit digit.
inline PatternCode binary_to_code(const std::string& bits, int m) {
    const int k = bits_per_digit(m);
    if (bits.empty()) throw std::domain_error("binary pattern must be nonempty");
    for (char c : bits)
        if (c != '0' && c != '1') throw std::domain_error("binary pattern may contain only 0/1");
    std::vector<int> digits;
    digits.reserve((bits.size() + k - 1) / k);
    for (std::size_t pos = 0; pos < bits.size(); pos += k) {
        int d = 0;
        for (int b = 0; b < k; ++b) {
            const std::size_t idx = pos + b;
            const int bit = idx < bits.size() ? bits[idx] - '0' : 0;
            d = (d << 1) | bit;
        }
        digits.push_back(d);
    }
    return PatternCode(std::move(digits), m);
}

// Big-endian k-bit expansion of each digit, concatenated.
inline std::string code_to_binary(const PatternCode& c) {
    const int k = bits_per_digit(c.m);
    std::string bits;
    bits.reserve(c.size() * k);
    for (int d : c.digits)
        for (int b = k - 1; b >= 0; --b) bits.push_back((d >> b) & 1 ? '1' : '0');
    return bits;
}

// Decimal value of the code's binary expansion; the heatmap axis index.
inline std::uint64_t code_to_decimal(const PatternCode& c) {
    const int k = bits_per_digit(c.m);
    if (static_cast<std::size_t>(k) * c.size() > 63)
        throw std::domain_error("code too long for a 64-bit decimal index");
    std::uint64_t v = 0;
    for (int d : c.digits) v = (v << k) | static_cast<std::uint64_t>(d);
    return v;
}

// Code at decimal index v among all length-n codes (inverse of code_to_decimal).
inline PatternCode code_from_decimal(std::uint64_t v, std::size_t n, int m) {
    const int k = bits_per_digit(m);
    std::vector<int> digits(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        digits[i] = static_cast<int>(v & ((1u << k) - 1));
        v >>= k;
    }
    if (v != 0) throw std::domain_error("decimal index out of range for code length");
    return PatternCode(std::move(digits), m);
}

// CLI syntax: contiguous digit characters for m <= 10 ("1122"), comma-separated
// integers otherwise ("11,3,0").
inline PatternCode parse_code(const std::string& text, int m) {
    if (text.empty()) throw std::domain_error("empty pattern code");
    std::vector<int> digits;
    if (text.find(',') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            const std::string tok = text.substr(pos, next - pos);
            if (tok.empty()) throw std::domain_error("empty digit in code '" + text + "'");
            digits.push_back(std::stoi(tok));
            pos = next + 1;
        }
    } else {
        if (m > 10)
            throw std::domain_error("codes for m > 10 must be comma-separated");
        for (char c : text) {
            if (c < '0' || c > '9') throw std::domain_error("invalid digit character in code");
            digits.push_back(c - '0');
        }
    }
    return PatternCode(std::move(digits), m);
}

inline std::string code_to_string(const PatternCode& c) {
    std::string s;
    if (c.m <= 10) {
        for (int d : c.digits) s.push_back(static_cast<char>('0' + d));
    } else {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s.push_back(',');
            s += std::to_string(c.digits[i]);
        }
    }
    return s;
}

}  // namespace qp
