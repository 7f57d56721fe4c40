#include "boselab/fock_vector.hpp"

#include <stdexcept>

namespace boselab {

void FockVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("FockVector: cannot normalize zero state");
    amplitudes /= n;
}

double FockVector::sector_norm2(int n) const {
    if (n < 0 || n > basis->particle_cutoff()) return 0.0;
    return amplitudes.segment(basis->sector_offset(n), basis->sector_size(n))
        .squaredNorm();
}

FockVector FockVector::vacuum(std::shared_ptr<const FockBasis> b) {
    FockVector v(std::move(b));
    v.amplitudes[0] = 1.0;
    return v;
}

} // namespace boselab
