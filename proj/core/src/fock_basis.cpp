#include "boselab/fock_basis.hpp"

#include <stdexcept>

namespace boselab {

std::int64_t FockBasis::compositions(int n, int m) {
    // C(n + m - 1, m - 1), computed multiplicatively.
    if (m == 0) return n == 0 ? 1 : 0;
    std::int64_t r = 1;
    for (int i = 1; i < m; ++i) {
        r = r * (n + i) / i;  // exact: product of i consecutive integers / i!
    }
    return r;
}

FockBasis::FockBasis(int mode_count, int particle_cutoff, std::int64_t dimension_cap)
    : M_(mode_count), n_max_(particle_cutoff) {
    if (M_ < 1) throw std::invalid_argument("FockBasis: need at least one mode");
    if (n_max_ < 0) throw std::invalid_argument("FockBasis: negative cutoff");

    sector_offset_.assign(n_max_ + 2, 0);
    dim_ = 0;
    for (int n = 0; n <= n_max_; ++n) {
        sector_offset_[n] = dim_;
        dim_ += compositions(n, M_);
        if (dim_ > dimension_cap)
            throw std::runtime_error("FockBasis: dimension exceeds the configured cap");
    }
    sector_offset_[n_max_ + 1] = dim_;

    occ_.resize(dim_ * M_);
    totals_.resize(dim_);

    // Enumerate each sector in lexicographic order.
    std::vector<int> state(M_);
    std::int64_t idx = 0;
    for (int n = 0; n <= n_max_; ++n) {
        // First composition in lex order: everything in the last mode.
        std::fill(state.begin(), state.end(), 0);
        state[M_ - 1] = n;
        while (true) {
            std::copy(state.begin(), state.end(), occ_.begin() + idx * M_);
            totals_[idx] = n;
            ++idx;
            // Next composition in lex order: move one unit of the suffix mass
            // one slot left of the rightmost occupied position, dump the rest
            // into the last mode.
            int pivot = -1;
            for (int t = M_ - 1; t >= 1; --t)
                if (state[t] > 0) { pivot = t; break; }
            if (pivot <= 0) break;  // all mass at position 0: last in lex order
            int tail = 0;
            for (int t = pivot; t < M_; ++t) { tail += state[t]; state[t] = 0; }
            state[pivot - 1] += 1;
            state[M_ - 1] = tail - 1;
        }
    }
    if (idx != dim_) throw std::logic_error("FockBasis: enumeration miscount");

    // Ladder tables.
    lower_.assign(dim_ * M_, -1);
    raise_.assign(dim_ * M_, -1);
    std::vector<int> tmp(M_);
    for (std::int64_t i = 0; i < dim_; ++i) {
        const int* s = occupation(i);
        for (int p = 0; p < M_; ++p) {
            if (s[p] > 0) {
                std::copy(s, s + M_, tmp.begin());
                tmp[p] -= 1;
                lower_[i * M_ + p] = index_of(tmp.data());
            }
            if (totals_[i] < n_max_) {
                std::copy(s, s + M_, tmp.begin());
                tmp[p] += 1;
                raise_[i * M_ + p] = index_of(tmp.data());
            }
        }
    }
}

std::int64_t FockBasis::index_of(const int* occ) const {
    int n = 0;
    for (int p = 0; p < M_; ++p) {
        if (occ[p] < 0) throw std::invalid_argument("FockBasis: negative occupation");
        n += occ[p];
    }
    if (n > n_max_) throw std::invalid_argument("FockBasis: occupation above cutoff");

    // Lexicographic rank within the sector: count compositions preceding occ.
    std::int64_t rank = 0;
    int remaining = n;
    for (int p = 0; p < M_ - 1; ++p) {
        for (int v = 0; v < occ[p]; ++v)
            rank += compositions(remaining - v, M_ - 1 - p);
        remaining -= occ[p];
    }
    return sector_offset_[n] + rank;
}

} // namespace boselab
