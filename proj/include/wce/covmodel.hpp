#ifndef WCE_COVMODEL_HPP
#define WCE_COVMODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wce::cov {

struct HurstParam {
    double h;
    explicit HurstParam(double value);
    // rho_H in l^2(Z), i.e. the quadratic-variation CLT regime
    bool square_summable() const { return h < 0.75; }
    // rho_H in l^{4/3}(Z), the regime the expansion needs
    bool expansion_regime() const { return h < 0.625; }
};

// Autocovariance of unit-variance fractional Gaussian noise,
//   rho_H(k) = ((|k|+1)^{2H} + (|k|-1)^{2H} - 2|k|^{2H}) / 2.
// Large |k| uses the asymptotic expansion in k^{-2} to avoid the
// three-way cancellation.
double fgn_rho(HurstParam h, std::int64_t k);

// Tail sum  sum_{|k| > K} rho_H(k)^2  (both signs), computed from the
// asymptotic expansion with Euler-Maclaurin corrections.
double fgn_rho_sq_tail(HurstParam h, std::int64_t K);

// Tail sum  sum_{|k| > K} |rho_H(k)|^p.
double fgn_rho_abs_pow_tail(HurstParam h, std::int64_t K, double p);

// Normalizing constant of the Mandelbrot-Van Ness increment kernel and the
// cross inner product <L_0^{H1}, L_0^{H2}>; evaluated by tanh-sinh
// quadrature split at the kernel singularities.
double d_constant(HurstParam h1, HurstParam h2, double rel_tol = 1e-8);

// Cross-covariance of increments of two fBms driven by one Wiener process:
//   D(H1,H2) * rho_{(H1+H2)/2}(k).
double cross_rho(HurstParam h1, HurstParam h2, std::int64_t k, double rel_tol = 1e-8);

class CovarianceModel {
public:
    enum class Kind { fgn, cross, table };

    static CovarianceModel fgn(double h);
    static CovarianceModel cross(double h1, double h2, double rel_tol = 1e-8);
    // values[k] for k = 0..K; rho beyond the table follows the power law
    // anchored at the last entry. values[0] must be 1.
    static CovarianceModel table(std::vector<double> values, double decay_exponent);

    double rho(std::int64_t k) const;
    std::vector<double> rho_row(std::size_t n) const;  // rho(0..n-1)

    Kind kind() const { return kind_; }
    double hurst() const { return h1_; }
    double hurst2() const { return h2_; }
    double cross_scale() const { return dconst_; }

    // Power-law tail: |rho(k)| ~ amplitude * |k|^exponent for large |k|.
    double decay_exponent() const;
    double tail_amplitude() const;

    // fgn/cross models are PSD by construction; table models are only
    // checked empirically by callers.
    bool assume_psd() const { return kind_ != Kind::table; }

    std::uint64_t hash() const;
    std::string describe() const;

private:
    CovarianceModel() = default;
    Kind kind_ = Kind::fgn;
    double h1_ = 0.5, h2_ = 0.5, dconst_ = 1.0;
    std::vector<double> values_;
    double decay_ = 0.0;
};

// CSV exchange for table models (columns: k,rho).
CovarianceModel load_table_csv(const std::string& path, double decay_exponent);
void save_table_csv(const CovarianceModel& model, std::size_t max_lag, const std::string& path);

}

#endif
