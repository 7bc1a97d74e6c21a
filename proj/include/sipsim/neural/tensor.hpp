#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sipsim::nn {

/// Dense (batch, height, width, channels) tensor, channel innermost.
/// Grids map onto it as height = S, width = T.
template <typename T>
struct Tensor4 {
    int n = 0, h = 0, w = 0, c = 0;
    std::vector<T> v;

    Tensor4() = default;
    Tensor4(int n_, int h_, int w_, int c_)
        : n(n_), h(h_), w(w_), c(c_), v(static_cast<size_t>(n_) * h_ * w_ * c_) {}

    size_t size() const { return v.size(); }
    T* data() { return v.data(); }
    const T* data() const { return v.data(); }

    T& at(int in, int ih, int iw, int ic) {
        return v[((static_cast<size_t>(in) * h + ih) * w + iw) * c + ic];
    }
    const T& at(int in, int ih, int iw, int ic) const {
        return v[((static_cast<size_t>(in) * h + ih) * w + iw) * c + ic];
    }

    bool same_shape(const Tensor4& o) const {
        return n == o.n && h == o.h && w == o.w && c == o.c;
    }

    void fill(T x) { std::fill(v.begin(), v.end(), x); }

    template <typename U>
    Tensor4<U> cast() const {
        Tensor4<U> out(n, h, w, c);
        for (size_t i = 0; i < v.size(); ++i) out.v[i] = static_cast<U>(v[i]);
        return out;
    }
};

/// Trainable tensor plus its gradient accumulator.
template <typename T>
struct Param {
    Tensor4<T> value;
    Tensor4<T> grad;

    void init_shape(int n, int h, int w, int c) {
        value = Tensor4<T>(n, h, w, c);
        grad = Tensor4<T>(n, h, w, c);
    }
    void zero_grad() { grad.fill(T(0)); }
    size_t size() const { return value.size(); }
};

/// Batch-norm running statistics (not trained by the optimizer).
template <typename T>
struct RunningStats {
    std::vector<T> mean;
    std::vector<T> var;

    void init(int channels) {
        mean.assign(channels, T(0));
        var.assign(channels, T(1));
    }
};

}  // namespace sipsim::nn
