#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sipsim {

using cplx = std::complex<double>;

/// Slot geometry. All tensors in the library are row-major over
/// (S, T, L, Nr) with the last listed dimension innermost.
struct GridDims {
    int S = 0;   ///< subcarriers
    int T = 0;   ///< OFDM symbols per slot
    int L = 0;   ///< transmission layers
    int Nr = 0;  ///< receive antennas
    int Nt = 0;  ///< transmit antennas

    GridDims() = default;
    GridDims(int s, int t, int l, int nr, int nt) : S(s), T(t), L(l), Nr(nr), Nt(nt) {
        validate();
    }

    void validate() const {
        if (S <= 0 || T <= 0 || L <= 0 || Nr <= 0 || Nt <= 0)
            throw std::invalid_argument("GridDims: all dimensions must be positive");
        if ((static_cast<long long>(S) * T) % L != 0)
            throw std::invalid_argument("GridDims: S*T must be divisible by L");
        if (L > Nr || L > Nt)
            throw std::invalid_argument("GridDims: L must not exceed min(Nt, Nr)");
    }

    int res() const { return S * T; }
    int groups() const { return S * T / L; }
};

/// Complex S x T matrix, one layer of the time-frequency grid.
class ResourceGrid {
public:
    ResourceGrid() = default;
    ResourceGrid(int s, int t) : S_(s), T_(t), d_(static_cast<size_t>(s) * t) {}

    int S() const { return S_; }
    int T() const { return T_; }
    size_t size() const { return d_.size(); }

    cplx& at(int s, int t) { return d_[static_cast<size_t>(s) * T_ + t]; }
    const cplx& at(int s, int t) const { return d_[static_cast<size_t>(s) * T_ + t]; }
    cplx& operator[](size_t i) { return d_[i]; }
    const cplx& operator[](size_t i) const { return d_[i]; }

    cplx* data() { return d_.data(); }
    const cplx* data() const { return d_.data(); }

    bool same_dims(const ResourceGrid& o) const { return S_ == o.S_ && T_ == o.T_; }

private:
    int S_ = 0, T_ = 0;
    std::vector<cplx> d_;
};

/// Complex S x T x L tensor of per-layer transmit symbols.
class MultiLayerGrid {
public:
    MultiLayerGrid() = default;
    MultiLayerGrid(int s, int t, int l)
        : S_(s), T_(t), L_(l), d_(static_cast<size_t>(s) * t * l) {}

    int S() const { return S_; }
    int T() const { return T_; }
    int L() const { return L_; }
    size_t size() const { return d_.size(); }

    cplx& at(int s, int t, int l) { return d_[(static_cast<size_t>(s) * T_ + t) * L_ + l]; }
    const cplx& at(int s, int t, int l) const {
        return d_[(static_cast<size_t>(s) * T_ + t) * L_ + l];
    }
    cplx& operator[](size_t i) { return d_[i]; }
    const cplx& operator[](size_t i) const { return d_[i]; }

    ResourceGrid layer(int l) const {
        ResourceGrid g(S_, T_);
        for (int s = 0; s < S_; ++s)
            for (int t = 0; t < T_; ++t) g.at(s, t) = at(s, t, l);
        return g;
    }
    void set_layer(int l, const ResourceGrid& g) {
        for (int s = 0; s < S_; ++s)
            for (int t = 0; t < T_; ++t) at(s, t, l) = g.at(s, t);
    }

private:
    int S_ = 0, T_ = 0, L_ = 0;
    std::vector<cplx> d_;
};

/// Complex S x T x Nr tensor. Carries the received signal Y and its
/// cancelled variants; the same shape also holds one layer's channel
/// slice, see LayerChannel below.
class RxTensor {
public:
    RxTensor() = default;
    RxTensor(int s, int t, int nr)
        : S_(s), T_(t), Nr_(nr), d_(static_cast<size_t>(s) * t * nr) {}

    int S() const { return S_; }
    int T() const { return T_; }
    int Nr() const { return Nr_; }
    size_t size() const { return d_.size(); }

    cplx& at(int s, int t, int r) { return d_[(static_cast<size_t>(s) * T_ + t) * Nr_ + r]; }
    const cplx& at(int s, int t, int r) const {
        return d_[(static_cast<size_t>(s) * T_ + t) * Nr_ + r];
    }
    cplx& operator[](size_t i) { return d_[i]; }
    const cplx& operator[](size_t i) const { return d_[i]; }

    bool same_dims(const RxTensor& o) const {
        return S_ == o.S_ && T_ == o.T_ && Nr_ == o.Nr_;
    }

private:
    int S_ = 0, T_ = 0, Nr_ = 0;
    std::vector<cplx> d_;
};

/// One layer's channel across receive antennas, same layout as RxTensor.
using LayerChannel = RxTensor;

/// Complex S x T x L x Nr equivalent channel after precoding.
class ChannelTensor {
public:
    ChannelTensor() = default;
    ChannelTensor(int s, int t, int l, int nr)
        : S_(s), T_(t), L_(l), Nr_(nr), d_(static_cast<size_t>(s) * t * l * nr) {}

    int S() const { return S_; }
    int T() const { return T_; }
    int L() const { return L_; }
    int Nr() const { return Nr_; }
    size_t size() const { return d_.size(); }

    cplx& at(int s, int t, int l, int r) {
        return d_[((static_cast<size_t>(s) * T_ + t) * L_ + l) * Nr_ + r];
    }
    const cplx& at(int s, int t, int l, int r) const {
        return d_[((static_cast<size_t>(s) * T_ + t) * L_ + l) * Nr_ + r];
    }
    cplx& operator[](size_t i) { return d_[i]; }
    const cplx& operator[](size_t i) const { return d_[i]; }

    /// S x T slice for one (layer, antenna) pair.
    ResourceGrid slice(int l, int r) const {
        ResourceGrid g(S_, T_);
        for (int s = 0; s < S_; ++s)
            for (int t = 0; t < T_; ++t) g.at(s, t) = at(s, t, l, r);
        return g;
    }

    /// S x T x Nr slice for one layer.
    LayerChannel layer(int l) const {
        LayerChannel g(S_, T_, Nr_);
        for (int s = 0; s < S_; ++s)
            for (int t = 0; t < T_; ++t)
                for (int r = 0; r < Nr_; ++r) g.at(s, t, r) = at(s, t, l, r);
        return g;
    }

private:
    int S_ = 0, T_ = 0, L_ = 0, Nr_ = 0;
    std::vector<cplx> d_;
};

/// sigma^2 = 10^(-snr_db/10); total transmit power is normalized to 1,
/// so the mapping from SNR to per-element noise variance is exact.
inline double snr_to_noise_variance(double snr_db) {
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
    return std::pow(10.0, -snr_db / 10.0);
}

/// Elementwise (Hadamard) product of a channel slice with a symbol grid.
inline ResourceGrid hadamard_apply(const ResourceGrid& h, const ResourceGrid& x) {
    if (!h.same_dims(x)) throw std::invalid_argument("hadamard_apply: dimension mismatch");
    ResourceGrid out(h.S(), h.T());
    for (size_t i = 0; i < h.size(); ++i) out[i] = h[i] * x[i];
    return out;
}

/// Mean per-RE transmit power summed across layers:
/// (1/(S*T)) * sum_{s,t} sum_l |x_{l,s,t}|^2.
inline double grid_power(const MultiLayerGrid& x) {
    if (x.size() == 0) return 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i]);
    return acc / (static_cast<double>(x.S()) * x.T());
}

template <typename TensorT>
bool all_finite(const TensorT& t) {
    for (size_t i = 0; i < t.size(); ++i)
        if (!std::isfinite(t[i].real()) || !std::isfinite(t[i].imag())) return false;
    return true;
}

}  // namespace sipsim
