// Fixed-point LLR grid and the saturating decoder arithmetic on it.
//
// A fixed-point value is held in a double whose payload is the signed grid
// integer (the "step count"); one step is 2^-frac_bits natural LLR units.
// Float mode bypasses the grid entirely.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gncoset {

struct QuantSpec {
    int total_bits = 0; // 0 in float mode
    int frac_bits = 0;
    bool float_mode = true;

    static QuantSpec floating() { return QuantSpec{}; }

    // Fraction split per width, chosen by the BLER sweep in tools/quant_sweep.
    static int default_frac_bits(int total_bits) {
        switch (total_bits) {
            case 4: return 1;
            case 5: return 1;
            case 6: return 2;
            case 7: return 3;
            case 8: return 3;
            default:
                throw std::invalid_argument("quant width must be in [4, 8] bits");
        }
    }

    static QuantSpec fixed(int total_bits, int frac_bits = -1) {
        if (total_bits < 4 || total_bits > 8)
            throw std::invalid_argument("quant width must be in [4, 8] bits");
        if (frac_bits < 0) frac_bits = default_frac_bits(total_bits);
        if (frac_bits > total_bits - 2)
            throw std::invalid_argument("quant needs at least two integer bits (sign + magnitude)");
        return QuantSpec{total_bits, frac_bits, false};
    }

    // Accepts "float", "Q6", or "Q6F2" (case-insensitive).
    static QuantSpec parse(const std::string& text);

    std::string to_string() const;

    // Largest representable grid magnitude, 2^(Q-1)-1 steps.
    double clip() const {
        return float_mode ? std::numeric_limits<double>::infinity()
                          : double((1 << (total_bits - 1)) - 1);
    }
    // Grid steps per natural LLR unit.
    double scale() const { return float_mode ? 1.0 : double(1 << frac_bits); }

    bool operator==(const QuantSpec&) const = default;
};

// Nearest grid point, ties away from zero, then symmetric clip.
inline double quantize(double x, const QuantSpec& qs) {
    if (qs.float_mode) return x;
    const double g = std::round(x * qs.scale());
    return std::clamp(g, -qs.clip(), qs.clip());
}

inline double sat_add(double a, double b, const QuantSpec& qs) {
    const double s = a + b;
    if (qs.float_mode) return s;
    return std::clamp(s, -qs.clip(), qs.clip());
}

// Min-sum check-node update: sign(a)sign(b)min(|a|,|b|).
inline double f_min(double a, double b) {
    const double m = std::min(std::abs(a), std::abs(b));
    return ((a < 0.0) != (b < 0.0)) ? -m : m;
}

// Exact check-node update, float reference only.
inline double f_boxplus(double a, double b) {
    double v = f_min(a, b);
    const double s = std::abs(a + b);
    const double d = std::abs(a - b);
    if (s < 40.0) v += std::log1p(std::exp(-s));
    if (d < 40.0) v -= std::log1p(std::exp(-d));
    return v;
}

// Variable-node update with a known upper bit: b + (1-2*bit)*a, saturated.
inline double g_comb(double a, double b, int bit, const QuantSpec& qs) {
    return sat_add(b, bit ? -a : a, qs);
}

// Hard decision: negative LLR means 1, ties (exact zero) go to 0.
inline int hard_bit(double llr) { return llr < 0.0 ? 1 : 0; }

inline QuantSpec QuantSpec::parse(const std::string& text) {
    std::string t;
    t.reserve(text.size());
    for (char c : text) t.push_back(char(std::toupper(static_cast<unsigned char>(c))));
    if (t == "FLOAT") return floating();
    if (t.empty() || t[0] != 'Q')
        throw std::invalid_argument("quant spec '" + text + "' must be \"float\", \"Q<bits>\" or \"Q<bits>F<frac>\"");
    const auto fpos = t.find('F');
    int q = 0, f = -1;
    try {
        q = std::stoi(t.substr(1, fpos == std::string::npos ? std::string::npos : fpos - 1));
        if (fpos != std::string::npos) f = std::stoi(t.substr(fpos + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("quant spec '" + text + "' is malformed");
    }
    return fixed(q, f);
}

inline std::string QuantSpec::to_string() const {
    if (float_mode) return "float";
    return "Q" + std::to_string(total_bits) + "F" + std::to_string(frac_bits);
}

} // namespace gncoset
