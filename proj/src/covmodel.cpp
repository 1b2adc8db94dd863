#include "wce/covmodel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wce/errors.hpp"
#include "wce/quadrature.hpp"

namespace wce::cov {

namespace {

constexpr int kExpansionOrder = 6;   // terms of the k^{-2} expansion
constexpr std::int64_t kExpansionCutoff = 64;

// Generalized binomial coefficient C(a, m) for real a.
double binom_real(double a, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= (a - i) / (m - i);
    return r;
}

// Coefficients of rho_H(k) = sum_m coef[m] k^{2H-2m}, m = 1..order.
void expansion_coeffs(double h, double* coef, int order) {
    for (int m = 1; m <= order; ++m) coef[m - 1] = binom_real(2.0 * h, 2 * m);
}

double rho_expansion(double h, double k) {
    double coef[kExpansionOrder];
    expansion_coeffs(h, coef, kExpansionOrder);
    const double k2h = std::pow(k, 2.0 * h);
    double acc = 0.0;
    double kpow = 1.0 / (k * k);
    for (int m = 1; m <= kExpansionOrder; ++m) {
        acc += coef[m - 1] * kpow;
        kpow /= k * k;
    }
    return k2h * acc;
}

// sum_{k > K} k^s by Euler-Maclaurin, s < -1.
double power_tail(double s, double K) {
    const double a = K + 1.0;
    const double integral = std::pow(a, s + 1.0) / (-s - 1.0);
    const double f = std::pow(a, s);
    const double fp = s * std::pow(a, s - 1.0);
    const double fppp = s * (s - 1.0) * (s - 2.0) * std::pow(a, s - 3.0);
    return integral + 0.5 * f - fp / 12.0 + fppp / 720.0;
}

struct KernelIntegrals {
    // I(H1,H2) = integral of the product of unnormalized increment kernels
    //   g^H(u) = (1-u)_+^{H-1/2} - (-u)_+^{H-1/2}
    // over the real line: 1/(H1+H2) on (0,1) plus the half-line part.
    static double unnormalized(double h1, double h2, double rel_tol) {
        const double a1 = h1 - 0.5, a2 = h2 - 0.5;
        auto tail = [&](double v) {
            // ((1+v)^a - v^a) without cancellation for large v
            auto diff = [&](double a) {
                return std::pow(v, a) * std::expm1(a * std::log1p(1.0 / v));
            };
            return diff(a1) * diff(a2);
        };
        const QuadResult t = tanh_sinh_halfline(tail, 0.0, rel_tol);
        return 1.0 / (h1 + h2) + t.value;
    }
};

}  // namespace

HurstParam::HurstParam(double value) : h(value) {
    if (!(value > 0.0) || !(value < 1.0))
        throw std::invalid_argument("HurstParam: h must lie in (0,1)");
}

double fgn_rho(HurstParam h, std::int64_t k) {
    const double H = h.h;
    const std::int64_t a = k < 0 ? -k : k;
    if (a == 0) return 1.0;
    if (a < kExpansionCutoff) {
        const double kk = static_cast<double>(a);
        return 0.5 * (std::pow(kk + 1.0, 2.0 * H) + std::pow(kk - 1.0, 2.0 * H) -
                      2.0 * std::pow(kk, 2.0 * H));
    }
    return rho_expansion(H, static_cast<double>(a));
}

double fgn_rho_sq_tail(HurstParam h, std::int64_t K) {
    const double H = h.h;
    if (4.0 * H - 4.0 >= -1.0)
        throw divergence_error("fgn_rho_sq_tail: rho^2 not summable for h >= 3/4");
    double coef[kExpansionOrder];
    expansion_coeffs(H, coef, kExpansionOrder);
    const double Kd = static_cast<double>(std::max<std::int64_t>(K, kExpansionCutoff));
    double one_sided = 0.0;
    for (int m = 1; m <= kExpansionOrder; ++m)
        for (int l = 1; l <= kExpansionOrder; ++l) {
            const double s = 4.0 * H - 2.0 * (m + l);
            one_sided += coef[m - 1] * coef[l - 1] * power_tail(s, Kd);
        }
    // if caller truncated below the expansion cutoff, add the exact bridge
    double bridge = 0.0;
    for (std::int64_t k = K + 1; k <= kExpansionCutoff; ++k) {
        const double r = fgn_rho(h, k);
        bridge += r * r;
    }
    return 2.0 * (one_sided + bridge);
}

double fgn_rho_abs_pow_tail(HurstParam h, std::int64_t K, double p) {
    const double H = h.h;
    const double lead = (2.0 * H - 2.0) * p;
    if (lead >= -1.0)
        throw divergence_error("fgn_rho_abs_pow_tail: |rho|^p not summable");
    const double A = std::abs(H * (2.0 * H - 1.0));
    if (A == 0.0) return 0.0;  // h = 1/2, rho is a delta
    double coef[kExpansionOrder];
    expansion_coeffs(H, coef, kExpansionOrder);
    // |rho(k)|^p = A^p k^{(2H-2)p} (1+r)^p with r = sum_{m>=2} (coef_m/coef_1) k^{-2(m-1)}
    const double c1 = coef[0];
    const double r1 = coef[1] / c1;  // k^{-2} coefficient of r
    const double r2 = coef[2] / c1;  // k^{-4}
    const double Kd = static_cast<double>(std::max<std::int64_t>(K, kExpansionCutoff));
    const double Ap = std::pow(A, p);
    double one_sided = Ap * (power_tail(lead, Kd) + p * r1 * power_tail(lead - 2.0, Kd) +
                             (p * r2 + 0.5 * p * (p - 1.0) * r1 * r1) * power_tail(lead - 4.0, Kd));
    double bridge = 0.0;
    for (std::int64_t k = K + 1; k <= kExpansionCutoff; ++k)
        bridge += std::pow(std::abs(fgn_rho(h, k)), p);
    return 2.0 * (one_sided + bridge);
}

double d_constant(HurstParam h1, HurstParam h2, double rel_tol) {
    if (h1.h == h2.h) return 1.0;
    const double i12 = KernelIntegrals::unnormalized(h1.h, h2.h, rel_tol);
    const double i11 = KernelIntegrals::unnormalized(h1.h, h1.h, rel_tol);
    const double i22 = KernelIntegrals::unnormalized(h2.h, h2.h, rel_tol);
    return i12 / std::sqrt(i11 * i22);
}

double cross_rho(HurstParam h1, HurstParam h2, std::int64_t k, double rel_tol) {
    const HurstParam avg(0.5 * (h1.h + h2.h));
    return d_constant(h1, h2, rel_tol) * fgn_rho(avg, k);
}

CovarianceModel CovarianceModel::fgn(double h) {
    HurstParam check(h);
    CovarianceModel m;
    m.kind_ = Kind::fgn;
    m.h1_ = m.h2_ = h;
    m.dconst_ = 1.0;
    return m;
}

CovarianceModel CovarianceModel::cross(double h1, double h2, double rel_tol) {
    CovarianceModel m;
    m.kind_ = Kind::cross;
    m.h1_ = h1;
    m.h2_ = h2;
    m.dconst_ = d_constant(HurstParam(h1), HurstParam(h2), rel_tol);
    return m;
}

CovarianceModel CovarianceModel::table(std::vector<double> values, double decay_exponent) {
    if (values.empty()) throw std::invalid_argument("table model: empty values");
    if (std::abs(values[0] - 1.0) > 1e-12)
        throw std::invalid_argument("table model: rho(0) must be 1 (unit variance)");
    for (double v : values)
        if (!(std::abs(v) <= 1.0 + 1e-12))
            throw std::invalid_argument("table model: |rho(k)| <= 1 violated");
    if (decay_exponent >= 0.0)
        throw std::invalid_argument("table model: decay exponent must be negative");
    CovarianceModel m;
    m.kind_ = Kind::table;
    m.values_ = std::move(values);
    m.decay_ = decay_exponent;
    return m;
}

double CovarianceModel::rho(std::int64_t k) const {
    const std::int64_t a = k < 0 ? -k : k;
    switch (kind_) {
        case Kind::fgn:
            return fgn_rho(HurstParam(h1_), a);
        case Kind::cross:
            return dconst_ * fgn_rho(HurstParam(0.5 * (h1_ + h2_)), a);
        case Kind::table: {
            const std::size_t idx = static_cast<std::size_t>(a);
            if (idx < values_.size()) return values_[idx];
            const double k0 = static_cast<double>(values_.size() - 1);
            if (k0 == 0.0) return 0.0;
            return values_.back() * std::pow(static_cast<double>(a) / k0, decay_);
        }
    }
    return 0.0;
}

std::vector<double> CovarianceModel::rho_row(std::size_t n) const {
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = rho(static_cast<std::int64_t>(k));
    return row;
}

double CovarianceModel::decay_exponent() const {
    switch (kind_) {
        case Kind::fgn:
            return 2.0 * h1_ - 2.0;
        case Kind::cross:
            return h1_ + h2_ - 2.0;
        case Kind::table:
            return decay_;
    }
    return 0.0;
}

double CovarianceModel::tail_amplitude() const {
    switch (kind_) {
        case Kind::fgn:
            return std::abs(h1_ * (2.0 * h1_ - 1.0));
        case Kind::cross: {
            const double ha = 0.5 * (h1_ + h2_);
            return std::abs(dconst_) * std::abs(ha * (2.0 * ha - 1.0));
        }
        case Kind::table: {
            const double k0 = static_cast<double>(values_.size() - 1);
            return k0 > 0.0 ? std::abs(values_.back()) * std::pow(k0, -decay_) : 0.0;
        }
    }
    return 0.0;
}

std::uint64_t CovarianceModel::hash() const {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return h;
    };
    auto dbl = [](double x) {
        std::uint64_t u;
        static_assert(sizeof(u) == sizeof(x));
        std::memcpy(&u, &x, sizeof(u));
        return u;
    };
    std::uint64_t h = static_cast<std::uint64_t>(kind_) + 1;
    h = mix(h, dbl(h1_));
    h = mix(h, dbl(h2_));
    h = mix(h, dbl(dconst_));
    h = mix(h, dbl(decay_));
    for (double v : values_) h = mix(h, dbl(v));
    return h;
}

std::string CovarianceModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::fgn:
            os << "fgn(h=" << h1_ << ")";
            break;
        case Kind::cross:
            os << "cross(h1=" << h1_ << ",h2=" << h2_ << ",D=" << dconst_ << ")";
            break;
        case Kind::table:
            os << "table(K=" << values_.size() - 1 << ",decay=" << decay_ << ")";
            break;
    }
    return os.str();
}

CovarianceModel load_table_csv(const std::string& path, double decay_exponent) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open covariance table: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
        std::istringstream ls(line);
        std::string kf, rf;
        if (!std::getline(ls, kf, ',') || !std::getline(ls, rf))
            throw io_error("malformed covariance table line: " + line);
        const std::size_t k = static_cast<std::size_t>(std::stoll(kf));
        if (k != values.size())
            throw io_error("covariance table lags must be consecutive from 0");
        values.push_back(std::stod(rf));
    }
    return CovarianceModel::table(std::move(values), decay_exponent);
}

void save_table_csv(const CovarianceModel& model, std::size_t max_lag, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write covariance table: " + path);
    out << "k,rho\n";
    out.precision(17);
    for (std::size_t k = 0; k <= max_lag; ++k)
        out << k << ',' << model.rho(static_cast<std::int64_t>(k)) << '\n';
}

}
