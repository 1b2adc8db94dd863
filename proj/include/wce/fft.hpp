#ifndef WCE_FFT_HPP
#define WCE_FFT_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace wce {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Thin RAII wrapper over FFTW real transforms of one fixed size.
// Plan creation is serialized internally; instances are not thread-safe,
// create one per worker thread.
class RealFFT {
public:
    explicit RealFFT(std::size_t n);
    ~RealFFT();
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    std::size_t size() const { return n_; }

    // Unnormalized forward transform; out has n/2+1 entries.
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    // Unnormalized Hermitian synthesis; in has n/2+1 entries, out has n.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

// Matrix-vector product with the symmetric Toeplitz matrix T_{ij} = rho(i-j)
// through a power-of-two circulant embedding; O(n log n) per apply and exact
// up to rounding for any covariance decay.
class ToeplitzOp {
public:
    ToeplitzOp(std::span<const double> rho, std::size_t n);

    std::size_t size() const { return n_; }

    void apply(std::span<const double> x, std::span<double> y);

    // x^T T y without materializing T.
    double bilinear(std::span<const double> x, std::span<const double> y);

private:
    std::size_t n_, len_;
    RealFFT fft_;
    std::vector<double> spectrum_;           // real eigenvalues of the embedding
    std::vector<double> work_real_;
    std::vector<std::complex<double>> work_cplx_;
};

}

#endif
