#ifndef WCE_SEQCALC_HPP
#define WCE_SEQCALC_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wce/covmodel.hpp"

namespace wce::seq {

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

// Even integer-indexed sequence stored one-sided: values[k] = u(k) = u(-k),
// k = 0..halfwidth. Beyond the table |u(k)| <= tail_amplitude * k^{tail_exponent}.
struct SummableSeq {
    std::vector<double> values;
    double tail_exponent = -50.0;
    double tail_amplitude = 0.0;

    std::int64_t halfwidth() const { return static_cast<std::int64_t>(values.size()) - 1; }
    double at(std::int64_t k) const {
        const std::int64_t a = k < 0 ? -k : k;
        return a < static_cast<std::int64_t>(values.size()) ? values[static_cast<std::size_t>(a)]
                                                            : 0.0;
    }
    // l1 mass of the envelope beyond the table
    double tail_mass() const;
    double sup_norm() const;
    double l1_norm() const;

    static SummableSeq delta();
    static SummableSeq from_model(const cov::CovarianceModel& model, std::int64_t halfwidth);
};

// Truncated convolution, exact on |j| <= out_halfwidth for the tabled parts;
// the error field bounds the mass lost to both operands' tails.
struct ConvResult {
    SummableSeq seq;
    double error = 0.0;
};
ConvResult convolve(const SummableSeq& u, const SummableSeq& v, std::int64_t out_halfwidth);

// (sum |u(k)|^p)^{1/p}; throws divergence_error when the envelope says the
// series diverges.
ValueWithError lp_norm(const SummableSeq& u, double p);

// sum_k u(k) v(k) over the shared support with an envelope tail bound.
ValueWithError inner(const SummableSeq& u, const SummableSeq& v);

struct LimitOptions {
    std::int64_t halfwidth = 100000;  // lag truncation of the convolution series
    double quad_rel_tol = 1e-8;       // tolerance for D(H1,H2)
};

// Limit constants of the two-component quadratic-variation example.
// cv_i = 2 sum rho_{H_i}^2; c12 the normalized cross variance limit; c0 the
// limit variance of the normalized off-diagonal bracket; cross_moments the
// seven covariance limits g11,g22,g12,g21,b11,b22,b12 plus the two
// bracket/off-diagonal covariances b1y,b2y needed to assemble the full
// 5x5 limit covariance.
struct LimitConstants {
    double h1 = 0, h2 = 0;
    double d = 1.0;
    double cv1 = 0, cv2 = 0;
    double c12 = 0;
    double c0 = 0;
    std::map<std::string, double> cross_moments;
    std::map<std::string, double> raw_series;    // unnormalized inner products
    std::map<std::string, double> error_bounds;  // envelope bounds on the series
    std::int64_t halfwidth = 0;

    // limit correlation of (F, standardized bracket) per component
    double rho_limit(int component) const;

    // covariance matrix of (Z1_1, Z1_2, Z2_11, Z2_22, Z2_12), row-major
    std::array<double, 25> limit_cov_5x5() const;

    std::string to_json() const;
};

// Requires h1 + h2 < 3/2 for c12 and max(h1,h2) < 5/8 for the rest.
LimitConstants limit_constants(double h1, double h2, const LimitOptions& opts = {});

void save_seq_csv(const SummableSeq& u, const std::string& path);

}

#endif
