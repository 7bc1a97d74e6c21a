#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sipsim {

/// One modulation-and-coding-scheme entry. The coderate is kept as a
/// rational so throughput accounting stays exact.
struct McsEntry {
    int index = 0;            ///< MCS index m
    int bits_per_symbol = 0;  ///< M (2, 4 or 6)
    long gamma_num = 0;       ///< target coderate numerator
    long gamma_den = 1;       ///< target coderate denominator
    std::string label;

    double coderate() const { return static_cast<double>(gamma_num) / gamma_den; }

    void validate() const {
        if (bits_per_symbol <= 0 || bits_per_symbol % 2 != 0)
            throw std::invalid_argument("McsEntry: M must be a positive even integer");
        if (gamma_num <= 0 || gamma_num >= gamma_den)
            throw std::invalid_argument("McsEntry: coderate must lie in (0,1)");
    }
};

class McsTable {
public:
    /// The three entries used throughout: QPSK, 16QAM and 64QAM with the
    /// matching target coderates.
    static McsTable builtin() {
        McsTable t;
        t.entries_ = {
            {3, 2, 449, 1024, "qpsk-449/1024"},
            {7, 4, 490, 1024, "16qam-490/1024"},
            {14, 6, 719, 1024, "64qam-719/1024"},
        };
        return t;
    }

    const McsEntry& lookup(int m) const {
        for (const auto& e : entries_)
            if (e.index == m) return e;
        throw std::invalid_argument("McsTable: unknown MCS index " + std::to_string(m));
    }

    bool contains(int m) const {
        for (const auto& e : entries_)
            if (e.index == m) return true;
        return false;
    }

    void add(McsEntry e) {
        e.validate();
        for (auto& existing : entries_)
            if (existing.index == e.index) {
                existing = e;
                return;
            }
        entries_.push_back(e);
    }

    int max_index() const {
        int mx = 0;
        for (const auto& e : entries_) mx = std::max(mx, e.index);
        return mx;
    }

    int max_bits_per_symbol() const {
        int mx = 0;
        for (const auto& e : entries_) mx = std::max(mx, e.bits_per_symbol);
        return mx;
    }

    const std::vector<McsEntry>& entries() const { return entries_; }

private:
    std::vector<McsEntry> entries_;
};

}  // namespace sipsim
