#pragma once

#include <cstdint>
#include <vector>

#include "cutbell/rational.hpp"

namespace cutbell {

// Streaming exact rank of a set of integer vectors.
//
// Fast path: Gaussian elimination over Z_p with p = 2^31 - 1. For integer
// input vectors, independence mod p implies independence over Q (a rational
// dependence scales to a primitive integer one, which stays nontrivial
// mod p), so the mod-p rank certifies a lower bound exactly. Callers that
// need the exact rank when the tracker did not saturate re-feed the vectors
// into the exact rational tracker below.
class ModPRankTracker {
public:
    static constexpr std::int64_t P = 2147483647;

    explicit ModPRankTracker(int dim, int target = -1) : dim_(dim), target_(target) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    bool saturated() const { return target_ >= 0 && rank() >= target_; }

    // Returns true if the vector increased the mod-p rank.
    bool insert(const std::vector<std::int64_t>& v) {
        if (saturated()) return false;
        std::vector<std::int64_t> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = mod(v[i]);
        return insert_reduced(std::move(w));
    }

    bool insert_mod(std::vector<std::int64_t> w) {  // entries already in [0,P)
        if (saturated()) return false;
        return insert_reduced(std::move(w));
    }

private:
    int dim_;
    int target_;
    std::vector<std::vector<std::int64_t>> rows_;  // echelon rows
    std::vector<int> lead_;                        // leading column per row

    static std::int64_t mod(std::int64_t x) {
        x %= P;
        return x < 0 ? x + P : x;
    }
    static std::int64_t mulmod(std::int64_t a, std::int64_t b) {
        return static_cast<std::int64_t>((__int128)a * b % P);
    }
    static std::int64_t powmod(std::int64_t a, std::int64_t e) {
        std::int64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    }

    bool insert_reduced(std::vector<std::int64_t> w) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            std::int64_t c = w[static_cast<size_t>(lead_[r])];
            if (c == 0) continue;
            // w -= c * rows_[r]  (rows are normalized to leading 1)
            const auto& row = rows_[r];
            for (size_t i = static_cast<size_t>(lead_[r]); i < w.size(); ++i) {
                if (row[i] == 0) continue;
                w[i] = mod(w[i] - mulmod(c, row[i]));
            }
        }
        int lead = -1;
        for (int i = 0; i < dim_; ++i)
            if (w[static_cast<size_t>(i)] != 0) { lead = i; break; }
        if (lead < 0) return false;
        std::int64_t inv = powmod(w[static_cast<size_t>(lead)], P - 2);
        for (size_t i = static_cast<size_t>(lead); i < w.size(); ++i)
            if (w[i] != 0) w[i] = mulmod(w[i], inv);
        // keep rows sorted by leading column
        size_t pos = 0;
        while (pos < lead_.size() && lead_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
        lead_.insert(lead_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        return true;
    }
};

// Exact rank over Q by streaming echelon reduction.
class RationalRankTracker {
public:
    explicit RationalRankTracker(int dim, int target = -1) : dim_(dim), target_(target) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    bool saturated() const { return target_ >= 0 && rank() >= target_; }

    bool insert(const std::vector<Rat>& v) {
        if (saturated()) return false;
        std::vector<Rat> w = v;
        for (size_t r = 0; r < rows_.size(); ++r) {
            Rat c = w[static_cast<size_t>(lead_[r])];
            if (c == 0) continue;
            const auto& row = rows_[r];
            for (size_t i = static_cast<size_t>(lead_[r]); i < w.size(); ++i)
                if (row[i] != 0) w[i] -= c * row[i];
        }
        int lead = -1;
        for (int i = 0; i < dim_; ++i)
            if (w[static_cast<size_t>(i)] != 0) { lead = i; break; }
        if (lead < 0) return false;
        Rat pivot = w[static_cast<size_t>(lead)];
        for (size_t i = static_cast<size_t>(lead); i < w.size(); ++i)
            if (w[i] != 0) w[i] /= pivot;
        size_t pos = 0;
        while (pos < lead_.size() && lead_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
        lead_.insert(lead_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        return true;
    }

    bool insert_ints(const std::vector<std::int64_t>& v) {
        std::vector<Rat> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = v[i];
        return insert(w);
    }

private:
    int dim_;
    int target_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<int> lead_;
};

// Exact rank of a list of rational vectors.
inline int exact_rank(const std::vector<std::vector<Rat>>& vecs, int dim) {
    RationalRankTracker t(dim);
    for (const auto& v : vecs) t.insert(v);
    return t.rank();
}

}  // namespace cutbell
