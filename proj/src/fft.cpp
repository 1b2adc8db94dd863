#include "wce/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace wce {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}

struct RealFFT::Impl {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

RealFFT::RealFFT(std::size_t n) : n_(n), impl_(new Impl) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("RealFFT: size must be a power of two >= 2");
    std::lock_guard<std::mutex> lk(plan_mutex());
    impl_->real = fftw_alloc_real(n);
    impl_->cplx = fftw_alloc_complex(n / 2 + 1);
    impl_->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), impl_->real, impl_->cplx, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), impl_->cplx, impl_->real, FFTW_ESTIMATE);
}

RealFFT::~RealFFT() {
    std::lock_guard<std::mutex> lk(plan_mutex());
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->inv);
    fftw_free(impl_->real);
    fftw_free(impl_->cplx);
}

void RealFFT::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    std::memcpy(impl_->real, in.data(), n_ * sizeof(double));
    fftw_execute(impl_->fwd);
    std::memcpy(out.data(), impl_->cplx, (n_ / 2 + 1) * sizeof(fftw_complex));
}

void RealFFT::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    std::memcpy(impl_->cplx, in.data(), (n_ / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(impl_->inv);
    std::memcpy(out.data(), impl_->real, n_ * sizeof(double));
}

ToeplitzOp::ToeplitzOp(std::span<const double> rho, std::size_t n)
    : n_(n), len_(next_pow2(2 * n)), fft_(len_), spectrum_(len_ / 2 + 1),
      work_real_(len_), work_cplx_(len_ / 2 + 1) {
    if (rho.size() < n) throw std::invalid_argument("ToeplitzOp: need rho(0..n-1)");
    std::vector<double> emb(len_, 0.0);
    for (std::size_t k = 0; k < n; ++k) emb[k] = rho[k];
    for (std::size_t k = 1; k < n; ++k) emb[len_ - k] = rho[k];
    std::vector<std::complex<double>> spec(len_ / 2 + 1);
    fft_.forward(emb, spec);
    for (std::size_t k = 0; k <= len_ / 2; ++k) spectrum_[k] = spec[k].real();
}

void ToeplitzOp::apply(std::span<const double> x, std::span<double> y) {
    std::memcpy(work_real_.data(), x.data(), n_ * sizeof(double));
    std::memset(work_real_.data() + n_, 0, (len_ - n_) * sizeof(double));
    fft_.forward(work_real_, work_cplx_);
    const double scale = 1.0 / static_cast<double>(len_);
    for (std::size_t k = 0; k <= len_ / 2; ++k) work_cplx_[k] *= spectrum_[k] * scale;
    fft_.inverse(work_cplx_, work_real_);
    std::memcpy(y.data(), work_real_.data(), n_ * sizeof(double));
}

double ToeplitzOp::bilinear(std::span<const double> x, std::span<const double> y) {
    std::vector<double> ty(n_);
    apply(y, ty);
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double term = x[i] * ty[i];
        const double t = acc + term;
        if (std::abs(acc) >= std::abs(term))
            comp += (acc - t) + term;
        else
            comp += (term - t) + acc;
        acc = t;
    }
    return acc + comp;
}

}
