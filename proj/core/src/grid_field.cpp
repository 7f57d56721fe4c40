#include "boselab/grid_field.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace boselab {

namespace {
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

Eigen::VectorXcd run_fft(const Eigen::VectorXcd& in, int dim, int n, int sign) {
    Eigen::VectorXcd out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        if (dim == 1)
            plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        else
            plan = fftw_plan_dft_3d(n, n, n, src, dst, sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}
}  // namespace

Eigen::VectorXcd fft_forward(const Eigen::VectorXcd& values, int dim, int n) {
    Eigen::VectorXcd c = run_fft(values, dim, n, FFTW_FORWARD);
    c /= static_cast<double>(values.size());
    return c;
}

Eigen::VectorXcd fft_forward(const GridField& field) {
    return fft_forward(field.values, field.dimension, field.points_per_axis);
}

Eigen::VectorXcd fft_backward(const Eigen::VectorXcd& coeffs, int dim, int n) {
    return run_fft(coeffs, dim, n, FFTW_BACKWARD);
}

double fft_k2(Eigen::Index idx, int dim, int n, double box_length) {
    const double dk = 2.0 * M_PI / box_length;
    if (dim == 1) {
        const double k = dk * fft_mode(static_cast<int>(idx), n);
        return k * k;
    }
    const int iz = static_cast<int>(idx % n);
    const int iy = static_cast<int>((idx / n) % n);
    const int ix = static_cast<int>(idx / (static_cast<Eigen::Index>(n) * n));
    const double kx = dk * fft_mode(ix, n);
    const double ky = dk * fft_mode(iy, n);
    const double kz = dk * fft_mode(iz, n);
    return kx * kx + ky * ky + kz * kz;
}

} // namespace boselab
