#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sipsim/core.hpp"

namespace sipsim {

/// Gray-labelled square QAM with unit average power.
///
/// Labelling convention (fixed for the whole project):
///   - a symbol carries bits b0..b(M-1); the in-phase axis is driven by the
///     even-indexed bits (b0, b2, ...), quadrature by the odd-indexed ones;
///   - per axis the bits form a binary-reflected Gray code; the all-zero
///     label sits at the most positive amplitude.
///
/// Resulting QPSK table: 00 -> (+1+j)/sqrt(2), 01 -> (+1-j)/sqrt(2),
/// 10 -> (-1+j)/sqrt(2), 11 -> (-1-j)/sqrt(2).
class Constellation {
public:
    static const Constellation& get(int bits_per_symbol) {
        static const Constellation q2(2), q4(4), q6(6);
        switch (bits_per_symbol) {
            case 2: return q2;
            case 4: return q4;
            case 6: return q6;
            default: throw std::invalid_argument("Constellation: M must be 2, 4 or 6");
        }
    }

    explicit Constellation(int m) : M_(m) {
        if (m <= 0 || m % 2 != 0 || m > 16)
            throw std::invalid_argument("Constellation: M must be a small even integer");
        const int half = m / 2;
        const int levels = 1 << half;
        // Unit average power: 2 * mean(level^2) * scale^2 = 1.
        scale_ = std::sqrt(3.0 / (2.0 * (static_cast<double>(levels) * levels - 1)));
        points_.resize(static_cast<size_t>(1) << m);
        for (int label = 0; label < (1 << m); ++label) {
            int gi = 0, gq = 0;
            for (int b = 0; b < half; ++b) {
                gi = (gi << 1) | ((label >> (M_ - 1 - 2 * b)) & 1);
                gq = (gq << 1) | ((label >> (M_ - 1 - (2 * b + 1))) & 1);
            }
            points_[label] = {axis_level(gi, levels), axis_level(gq, levels)};
        }
    }

    int bits_per_symbol() const { return M_; }
    const std::vector<cplx>& points() const { return points_; }
    const cplx& point(int label) const { return points_[label]; }

    /// Nearest-point hard decision, returns the label.
    int hard_demap(cplx y) const {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int q = 0; q < static_cast<int>(points_.size()); ++q) {
            const double d = std::norm(y - points_[q]);
            if (d < best_d) {
                best_d = d;
                best = q;
            }
        }
        return best;
    }

private:
    double axis_level(int gray, int levels) const {
        // binary-reflected Gray decode, then map index 0 -> most positive
        int bin = gray;
        for (int shift = 1; shift < 16; shift <<= 1) bin ^= bin >> shift;
        return (levels - 1 - 2 * bin) * scale_;
    }

    int M_;
    double scale_;
    std::vector<cplx> points_;
};

/// Bit label of a symbol index, bit b0 first.
inline void label_to_bits(int label, int m, std::uint8_t* out) {
    for (int b = 0; b < m; ++b) out[b] = static_cast<std::uint8_t>((label >> (m - 1 - b)) & 1);
}

inline int bits_to_label(const std::uint8_t* bits, int m) {
    int label = 0;
    for (int b = 0; b < m; ++b) label = (label << 1) | (bits[b] & 1);
    return label;
}

/// Maps M*N bits onto N unit-average-power QAM symbols.
inline std::vector<cplx> qam_modulate(std::span<const std::uint8_t> bits, int m) {
    if (bits.size() % static_cast<size_t>(m) != 0)
        throw std::invalid_argument("qam_modulate: bit count not divisible by M");
    const Constellation& c = Constellation::get(m);
    std::vector<cplx> out(bits.size() / m);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = c.point(bits_to_label(bits.data() + i * m, m));
    return out;
}

/// Max-log LLRs for one received symbol:
///   LLR_b = (min_{q: b=1} |y - h q|^2 - min_{q: b=0} |y - h q|^2) / sigma2.
/// Positive LLR means bit 0, matching the decoder's convention.
inline void maxlog_demap(cplx y, cplx h_eff, double sigma2_eff, int m, double* llrs) {
    if (!(sigma2_eff > 0.0)) throw std::invalid_argument("maxlog_demap: sigma2_eff must be > 0");
    const Constellation& c = Constellation::get(m);
    std::array<double, 16> min0{}, min1{};
    for (int b = 0; b < m; ++b) {
        min0[b] = std::numeric_limits<double>::infinity();
        min1[b] = std::numeric_limits<double>::infinity();
    }
    const int n = 1 << m;
    for (int q = 0; q < n; ++q) {
        const double d = std::norm(y - h_eff * c.point(q));
        for (int b = 0; b < m; ++b) {
            if ((q >> (m - 1 - b)) & 1) {
                if (d < min1[b]) min1[b] = d;
            } else {
                if (d < min0[b]) min0[b] = d;
            }
        }
    }
    for (int b = 0; b < m; ++b) llrs[b] = (min1[b] - min0[b]) / sigma2_eff;
}

}  // namespace sipsim
