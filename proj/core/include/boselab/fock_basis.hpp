#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace boselab {

/// Occupation-number basis of the bosonic Fock space over M modes, truncated
/// at total particle number n_max.  States are ordered graded-lexicographically:
/// by total occupation first, then lexicographically within each sector, so
/// serialized amplitudes are reproducible bit-for-bit.
class FockBasis {
public:
    /// Throws if the dimension C(n_max + M, M) exceeds `dimension_cap`.
    FockBasis(int mode_count, int particle_cutoff,
              std::int64_t dimension_cap = 2'000'000);

    int mode_count() const { return M_; }
    int particle_cutoff() const { return n_max_; }
    std::int64_t dimension() const { return dim_; }

    /// Occupation vector of basis state `idx` (length M, read-only view).
    const int* occupation(std::int64_t idx) const { return occ_.data() + idx * M_; }
    int total_occupation(std::int64_t idx) const { return totals_[idx]; }

    /// Index of an occupation vector; the total must be <= n_max.
    std::int64_t index_of(const int* occ) const;
    std::int64_t index_of(const std::vector<int>& occ) const {
        return index_of(occ.data());
    }

    /// First index / number of states in the fixed-total sector n.
    std::int64_t sector_offset(int n) const { return sector_offset_[n]; }
    std::int64_t sector_size(int n) const {
        return sector_offset_[n + 1] - sector_offset_[n];
    }

    /// Index reached from `idx` by removing one particle from mode p, or -1
    /// if that mode is empty.  lowering_index/raising_index are precomputed
    /// tables so operator application is table-driven.
    std::int64_t lower(std::int64_t idx, int p) const { return lower_[idx * M_ + p]; }
    /// Index reached by adding one particle to mode p, or -1 when the state
    /// sits in the top sector (amplitude is truncated away).
    std::int64_t raise(std::int64_t idx, int p) const { return raise_[idx * M_ + p]; }

    /// Number of states with total occupation exactly n over m modes.
    static std::int64_t compositions(int n, int m);

private:
    int M_;
    int n_max_;
    std::int64_t dim_;
    std::vector<int> occ_;       // dim * M, row per state
    std::vector<int> totals_;    // dim
    std::vector<std::int64_t> sector_offset_;  // n_max + 2 entries
    std::vector<std::int64_t> lower_;
    std::vector<std::int64_t> raise_;
};

} // namespace boselab
