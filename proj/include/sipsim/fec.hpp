#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sipsim/rng.hpp"

namespace sipsim::fec {

// ---------------------------------------------------------------------------
// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF) over a bit sequence.
// ---------------------------------------------------------------------------

inline std::uint16_t crc16(std::span<const std::uint8_t> bits) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t b : bits) {
        crc ^= static_cast<std::uint16_t>((b & 1) << 15);
        crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                             : static_cast<std::uint16_t>(crc << 1);
    }
    return crc;
}

constexpr int kCrcBits = 16;

/// Payload + 16 CRC bits (MSB of the register first).
inline std::vector<std::uint8_t> crc16_attach(std::span<const std::uint8_t> payload) {
    if (payload.empty()) throw std::invalid_argument("crc16_attach: empty payload");
    std::vector<std::uint8_t> out(payload.begin(), payload.end());
    const std::uint16_t crc = crc16(payload);
    for (int i = kCrcBits - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((crc >> i) & 1));
    return out;
}

inline bool crc16_check(std::span<const std::uint8_t> bits) {
    if (bits.size() <= kCrcBits) return false;
    const size_t n = bits.size() - kCrcBits;
    const std::uint16_t crc = crc16(bits.subspan(0, n));
    for (int i = 0; i < kCrcBits; ++i)
        if (bits[n + i] != ((crc >> (kCrcBits - 1 - i)) & 1)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GF(2) bitset helpers
// ---------------------------------------------------------------------------

namespace detail {

using Words = std::vector<std::uint64_t>;

inline Words make_words(int nbits) { return Words((nbits + 63) / 64, 0); }
inline bool get_bit(const Words& w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void flip_bit(Words& w, int i) { w[i >> 6] ^= (1ULL << (i & 63)); }
inline void set_bit(Words& w, int i) { w[i >> 6] |= (1ULL << (i & 63)); }

inline void xor_into(Words& dst, const Words& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

inline int and_parity(const Words& a, const Words& b) {
    std::uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    return static_cast<int>(__builtin_parityll(acc));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// LDPC code
// ---------------------------------------------------------------------------

struct DecodeResult {
    std::vector<std::uint8_t> info_bits;
    bool converged = false;
    int iterations = 0;
};

/// Sparse binary parity-check matrix with a systematic encoder derived by
/// GF(2) elimination. Construction is deterministic in (n, k, seed).
class ParityCheckMatrix {
public:
    /// Pseudo-random near-regular code: every column has degree 3, check
    /// degrees are balanced greedily. Retries internally (derived seeds)
    /// until the matrix has full row rank.
    static ParityCheckMatrix construct(int n, int k, std::uint64_t seed) {
        if (k <= 0 || k >= n) throw std::invalid_argument("ldpc: need 0 < k < n");
        if (n - k < 3) throw std::invalid_argument("ldpc: need n - k >= 3");
        constexpr int kMaxAttempts = 50;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            ParityCheckMatrix h = build_random(n, k, Rng(seed).derive(attempt));
            if (h.preprocess()) return h;
        }
        throw std::runtime_error("ldpc: rank-deficient after bounded retries");
    }

    static ParityCheckMatrix from_rows(int n, int k, std::vector<std::vector<int>> rows) {
        ParityCheckMatrix h;
        h.n_ = n;
        h.k_ = k;
        h.m_ = n - k;
        if (static_cast<int>(rows.size()) != h.m_)
            throw std::invalid_argument("ldpc: row count must equal n - k");
        h.rows_ = std::move(rows);
        for (auto& r : h.rows_) std::sort(r.begin(), r.end());
        if (!h.preprocess()) throw std::runtime_error("ldpc: supplied matrix is rank deficient");
        return h;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int num_checks() const { return m_; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    const std::vector<int>& info_columns() const { return info_cols_; }

    int column_degree(int col) const {
        int d = 0;
        for (const auto& r : rows_) d += std::binary_search(r.begin(), r.end(), col) ? 1 : 0;
        return d;
    }

    /// Systematic encode: info bits are copied to the info columns, parity
    /// bits solve H c = 0.
    std::vector<std::uint8_t> encode(std::span<const std::uint8_t> info) const {
        if (static_cast<int>(info.size()) != k_)
            throw std::invalid_argument("ldpc encode: info length mismatch");
        detail::Words u = detail::make_words(k_);
        for (int i = 0; i < k_; ++i)
            if (info[i] & 1) detail::set_bit(u, i);
        std::vector<std::uint8_t> c(n_, 0);
        for (int i = 0; i < k_; ++i) c[info_cols_[i]] = info[i] & 1;
        for (int r = 0; r < m_; ++r)
            c[parity_col_of_row_[r]] =
                static_cast<std::uint8_t>(detail::and_parity(enc_rows_[r], u));
        return c;
    }

    bool syndrome_zero(std::span<const std::uint8_t> codeword) const {
        for (const auto& row : rows_) {
            int acc = 0;
            for (int col : row) acc ^= codeword[col] & 1;
            if (acc) return false;
        }
        return true;
    }

    /// Normalized min-sum decoding (scale 0.8) with early exit on zero
    /// syndrome. Positive LLR means bit 0. Always returns its best effort.
    DecodeResult decode(std::span<const double> llrs, int max_iters = 25) const {
        if (static_cast<int>(llrs.size()) != n_)
            throw std::invalid_argument("ldpc decode: LLR length mismatch");
        if (max_iters < 1) throw std::invalid_argument("ldpc decode: max_iters >= 1");
        constexpr double kNorm = 0.8;

        const int n_edges = static_cast<int>(edge_var_.size());
        std::vector<double> v2c(n_edges), c2v(n_edges, 0.0);
        std::vector<double> total(llrs.begin(), llrs.end());
        for (int e = 0; e < n_edges; ++e) v2c[e] = llrs[edge_var_[e]];

        DecodeResult res;
        for (int iter = 1; iter <= max_iters; ++iter) {
            // check-node update
            for (int c = 0; c < m_; ++c) {
                const int begin = check_ptr_[c], end = check_ptr_[c + 1];
                double min1 = 1e300, min2 = 1e300;
                int argmin = begin;
                int sign = 1;
                for (int e = begin; e < end; ++e) {
                    const double v = v2c[e];
                    const double mag = std::abs(v);
                    if (v < 0.0) sign = -sign;
                    if (mag < min1) {
                        min2 = min1;
                        min1 = mag;
                        argmin = e;
                    } else if (mag < min2) {
                        min2 = mag;
                    }
                }
                for (int e = begin; e < end; ++e) {
                    const double mag = (e == argmin) ? min2 : min1;
                    const int s = (v2c[e] < 0.0) ? -sign : sign;
                    c2v[e] = kNorm * s * mag;
                }
            }
            // variable-node update
            for (int v = 0; v < n_; ++v) total[v] = llrs[v];
            for (int e = 0; e < n_edges; ++e) total[edge_var_[e]] += c2v[e];
            for (int e = 0; e < n_edges; ++e) v2c[e] = total[edge_var_[e]] - c2v[e];

            res.iterations = iter;
            if (hard_syndrome_zero(total) && min_abs(total) > 0.0) {
                res.converged = true;
                break;
            }
        }
        res.info_bits.resize(k_);
        for (int i = 0; i < k_; ++i)
            res.info_bits[i] = total[info_cols_[i]] < 0.0 ? 1 : 0;
        return res;
    }

    // ---- alist text format ----

    void to_alist(std::ostream& os) const {
        std::vector<std::vector<int>> cols(n_);
        for (int r = 0; r < m_; ++r)
            for (int col : rows_[r]) cols[col].push_back(r);
        size_t max_col = 0, max_row = 0;
        for (const auto& c : cols) max_col = std::max(max_col, c.size());
        for (const auto& r : rows_) max_row = std::max(max_row, r.size());
        os << n_ << ' ' << m_ << '\n' << max_col << ' ' << max_row << '\n';
        for (int j = 0; j < n_; ++j) os << cols[j].size() << (j + 1 < n_ ? ' ' : '\n');
        for (int r = 0; r < m_; ++r) os << rows_[r].size() << (r + 1 < m_ ? ' ' : '\n');
        for (int j = 0; j < n_; ++j) {
            for (size_t i = 0; i < max_col; ++i)
                os << (i < cols[j].size() ? cols[j][i] + 1 : 0) << (i + 1 < max_col ? ' ' : '\n');
        }
        for (int r = 0; r < m_; ++r) {
            for (size_t i = 0; i < max_row; ++i)
                os << (i < rows_[r].size() ? rows_[r][i] + 1 : 0) << (i + 1 < max_row ? ' ' : '\n');
        }
    }

    static ParityCheckMatrix from_alist(std::istream& is) {
        int n = 0, m = 0, max_col = 0, max_row = 0;
        if (!(is >> n >> m >> max_col >> max_row))
            throw std::runtime_error("alist: malformed header");
        std::vector<int> col_deg(n), row_deg(m);
        for (auto& d : col_deg) is >> d;
        for (auto& d : row_deg) is >> d;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < max_col; ++i) {
                int dummy;
                is >> dummy;
            }
        std::vector<std::vector<int>> rows(m);
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < max_row; ++i) {
                int col;
                if (!(is >> col)) throw std::runtime_error("alist: truncated row list");
                if (col > 0) rows[r].push_back(col - 1);
            }
            if (static_cast<int>(rows[r].size()) != row_deg[r])
                throw std::runtime_error("alist: row degree mismatch");
        }
        return from_rows(n, n - m, std::move(rows));
    }

private:
    static ParityCheckMatrix build_random(int n, int k, Rng rng) {
        ParityCheckMatrix h;
        h.n_ = n;
        h.k_ = k;
        h.m_ = n - k;
        const int dc = std::min(3, h.m_);
        h.rows_.assign(h.m_, {});
        std::vector<int> degree(h.m_, 0);
        std::vector<int> candidates;
        for (int col = 0; col < n; ++col) {
            std::vector<int> chosen;
            for (int pick = 0; pick < dc; ++pick) {
                int min_deg = n + 1;
                for (int r = 0; r < h.m_; ++r) {
                    if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) continue;
                    min_deg = std::min(min_deg, degree[r]);
                }
                candidates.clear();
                for (int r = 0; r < h.m_; ++r) {
                    if (degree[r] != min_deg) continue;
                    if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) continue;
                    candidates.push_back(r);
                }
                const int r = candidates[rng.below(candidates.size())];
                chosen.push_back(r);
                degree[r]++;
            }
            for (int r : chosen) h.rows_[r].push_back(col);
        }
        for (auto& row : h.rows_) std::sort(row.begin(), row.end());
        return h;
    }

    /// Gaussian elimination over GF(2). Pivots are searched from the highest
    /// column down so the info set lands on the low-index columns. Returns
    /// false when the matrix is rank deficient.
    bool preprocess() {
        std::vector<detail::Words> work(m_, detail::make_words(n_));
        for (int r = 0; r < m_; ++r)
            for (int col : rows_[r]) detail::set_bit(work[r], col);

        std::vector<int> pivot_col(m_, -1);
        int rank = 0;
        for (int col = n_ - 1; col >= 0 && rank < m_; --col) {
            int pivot = -1;
            for (int r = rank; r < m_; ++r)
                if (detail::get_bit(work[r], col)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(work[rank], work[pivot]);
            for (int r = 0; r < m_; ++r)
                if (r != rank && detail::get_bit(work[r], col)) detail::xor_into(work[r], work[rank]);
            pivot_col[rank] = col;
            ++rank;
        }
        if (rank < m_) return false;

        std::vector<char> is_parity(n_, 0);
        for (int r = 0; r < m_; ++r) is_parity[pivot_col[r]] = 1;
        info_cols_.clear();
        for (int col = 0; col < n_; ++col)
            if (!is_parity[col]) info_cols_.push_back(col);

        std::vector<int> info_index(n_, -1);
        for (int i = 0; i < k_; ++i) info_index[info_cols_[i]] = i;

        parity_col_of_row_.assign(m_, 0);
        enc_rows_.assign(m_, detail::make_words(k_));
        for (int r = 0; r < m_; ++r) {
            parity_col_of_row_[r] = pivot_col[r];
            for (int col = 0; col < n_; ++col) {
                if (col == pivot_col[r]) continue;
                if (detail::get_bit(work[r], col)) {
                    // after full reduction only info columns can remain
                    detail::set_bit(enc_rows_[r], info_index[col]);
                }
            }
        }

        build_edges();
        return true;
    }

    void build_edges() {
        check_ptr_.assign(m_ + 1, 0);
        edge_var_.clear();
        for (int c = 0; c < m_; ++c) {
            check_ptr_[c + 1] = check_ptr_[c] + static_cast<int>(rows_[c].size());
            for (int v : rows_[c]) edge_var_.push_back(v);
        }
    }

    bool hard_syndrome_zero(const std::vector<double>& total) const {
        for (int c = 0; c < m_; ++c) {
            int acc = 0;
            for (int e = check_ptr_[c]; e < check_ptr_[c + 1]; ++e)
                acc ^= total[edge_var_[e]] < 0.0 ? 1 : 0;
            if (acc) return false;
        }
        return true;
    }

    static double min_abs(const std::vector<double>& v) {
        double m = 1e300;
        for (double x : v) m = std::min(m, std::abs(x));
        return m;
    }

    int n_ = 0, k_ = 0, m_ = 0;
    std::vector<std::vector<int>> rows_;  // check -> sorted variable indices

    std::vector<int> info_cols_;
    std::vector<int> parity_col_of_row_;
    std::vector<detail::Words> enc_rows_;  // reduced rows restricted to info columns

    std::vector<int> check_ptr_;  // CSR over edges
    std::vector<int> edge_var_;
};

}  // namespace sipsim::fec
