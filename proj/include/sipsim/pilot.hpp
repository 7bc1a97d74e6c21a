#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sipsim/core.hpp"
#include "sipsim/rng.hpp"

namespace sipsim {

/// Power split between data and pilot on every resource element.
/// alpha = 0 is allowed (pilotless ablation).
struct SipConfig {
    double alpha = 0.05;
    std::uint64_t seed = 7;

    void validate() const {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("SipConfig: alpha must lie in [0,1)");
    }
};

/// DFT orthogonal mask code for layer l (1-based):
///   c_l[n] = exp(-j 2 pi n (l-1) / L),  n = 0..L-1.
inline std::vector<cplx> dft_omc(int L, int l) {
    if (l < 1 || l > L) throw std::invalid_argument("dft_omc: layer index out of range");
    std::vector<cplx> c(L);
    for (int n = 0; n < L; ++n) {
        const double phase = -2.0 * M_PI * static_cast<double>(n) * (l - 1) / L;
        c[n] = {std::cos(phase), std::sin(phase)};
    }
    return c;
}

/// Per-layer superimposed pilots. The S*T resource elements are split into
/// G = S*T/L CDM groups of L elements taken frequency-first (consecutive
/// subcarriers within one OFDM symbol); each group g carries the seed
/// p_hat_g spread by the layer's DFT mask code, giving per-RE pilot power
/// exactly 1/L and group-wise cross-layer orthogonality.
struct PilotBook {
    int S = 0, T = 0, L = 0, G = 0;
    std::uint64_t seed = 0;
    std::vector<cplx> seeds;              ///< G seeds, |p_hat_g|^2 = 1/L
    std::vector<std::vector<cplx>> codes; ///< L mask codes of length L
    std::vector<ResourceGrid> grids;      ///< materialized P_l per layer

    /// Linear RE index with the subcarrier axis fastest.
    int linear_index(int s, int t) const { return t * S + s; }
    int group_of(int s, int t) const { return linear_index(s, t) / L; }
    int pos_in_group(int s, int t) const { return linear_index(s, t) % L; }
    /// Inverse of linear_index: (s, t) of the n-th RE of group g.
    std::pair<int, int> group_re(int g, int n) const {
        const int idx = g * L + n;
        return {idx % S, idx / S};
    }
};

inline PilotBook build_pilot_book(int S, int T, int L, std::uint64_t seed) {
    if (S <= 0 || T <= 0 || L <= 0 || (S * T) % L != 0)
        throw std::invalid_argument("build_pilot_book: S*T must be divisible by L");
    PilotBook book;
    book.S = S;
    book.T = T;
    book.L = L;
    book.G = S * T / L;
    book.seed = seed;

    Rng rng = Rng(seed).derive(0x5eed);
    const double amp = 1.0 / std::sqrt(2.0 * L);  // QPSK seed, |p_hat|^2 = 1/L
    book.seeds.resize(book.G);
    for (auto& p : book.seeds)
        p = {rng.bit() ? -amp : amp, rng.bit() ? -amp : amp};

    book.codes.resize(L);
    for (int l = 1; l <= L; ++l) book.codes[l - 1] = dft_omc(L, l);

    book.grids.assign(L, ResourceGrid(S, T));
    for (int g = 0; g < book.G; ++g) {
        for (int n = 0; n < L; ++n) {
            const auto [s, t] = book.group_re(g, n);
            for (int l = 0; l < L; ++l)
                book.grids[l].at(s, t) = book.seeds[g] * book.codes[l][n];
        }
    }
    return book;
}

/// X_l = sqrt(1-alpha) D_l + sqrt(alpha) P_l. Data symbols must already be
/// scaled to per-RE power 1/L so the assembled grid has unit total power.
inline MultiLayerGrid superimpose(const MultiLayerGrid& data, const PilotBook& book,
                                  double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("superimpose: alpha must lie in [0,1)");
    if (data.S() != book.S || data.T() != book.T || data.L() != book.L)
        throw std::invalid_argument("superimpose: dimension mismatch");
    const double wd = std::sqrt(1.0 - alpha), wp = std::sqrt(alpha);
    MultiLayerGrid x(data.S(), data.T(), data.L());
    for (int s = 0; s < data.S(); ++s)
        for (int t = 0; t < data.T(); ++t)
            for (int l = 0; l < data.L(); ++l)
                x.at(s, t, l) = wd * data.at(s, t, l) + wp * book.grids[l].at(s, t);
    return x;
}

/// Single-layer form of the superposition, used by the receiver to rebuild
/// X_hat from reconstructed data.
inline ResourceGrid reconstruct_sip(const ResourceGrid& data_hat, const ResourceGrid& pilot,
                                    double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("reconstruct_sip: alpha must lie in [0,1)");
    if (!data_hat.same_dims(pilot))
        throw std::invalid_argument("reconstruct_sip: dimension mismatch");
    const double wd = std::sqrt(1.0 - alpha), wp = std::sqrt(alpha);
    ResourceGrid x(data_hat.S(), data_hat.T());
    for (size_t i = 0; i < x.size(); ++i) x[i] = wd * data_hat[i] + wp * pilot[i];
    return x;
}

// ---------------------------------------------------------------------------
// Orthogonal DMRS patterns (Baseline I)
// ---------------------------------------------------------------------------

/// Comb-2 / CDM-2 pattern: layer pairs (0,1) and (2,3) occupy even and odd
/// subcarriers of the pilot symbols; within a pair the two layers are
/// separated by a +/-1 cover over adjacent comb REs. Np = 1 targets low
/// speed, Np = 4 high speed.
struct DmrsPattern {
    int Np = 1;
    std::vector<int> symbol_indices;

    static DmrsPattern make(int np, int T) {
        if (np != 1 && np != 4) throw std::invalid_argument("DmrsPattern: Np must be 1 or 4");
        if (np >= T) throw std::invalid_argument("DmrsPattern: Np must be < T");
        DmrsPattern p;
        p.Np = np;
        if (np == 1) {
            p.symbol_indices = {T > 2 ? 2 : 0};
        } else {
            if (T >= 12) {
                p.symbol_indices = {2, 5, 8, 11};
            } else {
                for (int i = 0; i < np; ++i)
                    p.symbol_indices.push_back(i * (T - 1) / (np - 1));
            }
        }
        return p;
    }

    bool is_pilot_symbol(int t) const {
        for (int ti : symbol_indices)
            if (ti == t) return true;
        return false;
    }

    static int comb_offset(int layer) { return (layer >> 1) & 1; }
    /// +/-1 cover over the two REs of a CDM pair.
    static double cover(int layer, int pos) { return (layer & 1) && (pos & 1) ? -1.0 : 1.0; }
};

struct DmrsGrids {
    MultiLayerGrid pilots;          ///< pilot symbols, zero elsewhere
    std::vector<std::uint8_t> data_mask;  ///< S*T flags, 1 = data RE (row-major s*T+t)
    int data_re_count = 0;
    long omega_num = 0, omega_den = 1;  ///< data-symbol ratio implied by the mask

    bool is_data(int s, int t, int T) const { return data_mask[static_cast<size_t>(s) * T + t]; }
};

/// Populates pilot REs with known QPSK symbols of per-RE power 2/L (the comb
/// leaves half of each pilot symbol empty, so the column-average transmit
/// power stays exactly 1). All REs in a pilot symbol are excluded from the
/// data mask.
inline DmrsGrids build_dmrs_grids(const DmrsPattern& pattern, const GridDims& dims,
                                  std::uint64_t seed) {
    if (pattern.Np >= dims.T) throw std::invalid_argument("build_dmrs_grids: Np must be < T");
    if (dims.L > 4) throw std::invalid_argument("build_dmrs_grids: pattern defined for L <= 4");
    if (dims.S % 4 != 0) throw std::invalid_argument("build_dmrs_grids: S must be divisible by 4");

    DmrsGrids out;
    out.pilots = MultiLayerGrid(dims.S, dims.T, dims.L);
    out.data_mask.assign(static_cast<size_t>(dims.S) * dims.T, 1);

    const double amp = std::sqrt(2.0 / dims.L);
    const double q_amp = amp / std::sqrt(2.0);
    Rng rng = Rng(seed).derive(0xd3b5);

    for (int t : pattern.symbol_indices) {
        for (int s = 0; s < dims.S; ++s) out.data_mask[static_cast<size_t>(s) * dims.T + t] = 0;
        // one QPSK base symbol per comb position, shared by the CDM pair
        for (int comb = 0; comb < 2; ++comb) {
            for (int pos = 0; pos * 2 + comb < dims.S; ++pos) {
                const int s = pos * 2 + comb;
                const cplx base{rng.bit() ? -q_amp : q_amp, rng.bit() ? -q_amp : q_amp};
                for (int l = 0; l < dims.L; ++l) {
                    if (DmrsPattern::comb_offset(l) != comb) continue;
                    out.pilots.at(s, t, l) = base * DmrsPattern::cover(l, pos);
                }
            }
        }
    }
    for (std::uint8_t f : out.data_mask) out.data_re_count += f;
    out.omega_num = dims.T - pattern.Np;
    out.omega_den = dims.T;
    return out;
}

}  // namespace sipsim
