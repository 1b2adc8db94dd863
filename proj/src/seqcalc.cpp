#include "wce/seqcalc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wce/errors.hpp"
#include "wce/fft.hpp"
#include "wce/parallel.hpp"

namespace wce::seq {

namespace {

// integral bound for sum_{k>K} k^e, e < -1
double tail_integral(double e, double K) {
    if (e >= -1.0) return std::numeric_limits<double>::infinity();
    return std::pow(K, e + 1.0) / (-e - 1.0);
}

double fit_amplitude(const std::vector<double>& values, double exponent) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double amp = 0.0;
    const std::size_t lo = n > 16 ? n - n / 8 : 1;
    for (std::size_t k = lo; k < n; ++k) {
        const double kk = static_cast<double>(k);
        amp = std::max(amp, std::abs(values[k]) / std::pow(kk, exponent));
    }
    return amp;
}

std::vector<double> two_sided(const SummableSeq& u) {
    const std::int64_t K = u.halfwidth();
    std::vector<double> full(2 * K + 1);
    for (std::int64_t k = -K; k <= K; ++k) full[static_cast<std::size_t>(k + K)] = u.at(k);
    return full;
}

}  // namespace

double SummableSeq::tail_mass() const {
    if (tail_amplitude == 0.0) return 0.0;
    const double K = static_cast<double>(std::max<std::int64_t>(halfwidth(), 1));
    return 2.0 * tail_amplitude * tail_integral(tail_exponent, K);
}

double SummableSeq::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SummableSeq::l1_norm() const {
    Kahan acc;
    acc.add(std::abs(values[0]));
    for (std::size_t k = 1; k < values.size(); ++k) acc.add(2.0 * std::abs(values[k]));
    return acc.value() + tail_mass();
}

SummableSeq SummableSeq::delta() {
    SummableSeq s;
    s.values = {1.0};
    s.tail_exponent = -50.0;
    s.tail_amplitude = 0.0;
    return s;
}

SummableSeq SummableSeq::from_model(const cov::CovarianceModel& model, std::int64_t halfwidth) {
    SummableSeq s;
    s.values.resize(static_cast<std::size_t>(halfwidth) + 1);
    for (std::int64_t k = 0; k <= halfwidth; ++k)
        s.values[static_cast<std::size_t>(k)] = model.rho(k);
    s.tail_exponent = model.decay_exponent();
    const double fitted = fit_amplitude(s.values, s.tail_exponent);
    s.tail_amplitude = std::max(model.tail_amplitude(), fitted) * 1.1;
    if (model.tail_amplitude() == 0.0 && fitted < 1e-300) {
        s.tail_amplitude = 0.0;  // delta-like model
        s.tail_exponent = -50.0;
    }
    return s;
}

ConvResult convolve(const SummableSeq& u, const SummableSeq& v, std::int64_t out_halfwidth) {
    const std::int64_t Ku = u.halfwidth(), Kv = v.halfwidth();
    const auto uf = two_sided(u);
    const auto vf = two_sided(v);
    const std::size_t nu = uf.size(), nv = vf.size();
    const std::size_t nw = nu + nv - 1;
    std::vector<double> wf(nw, 0.0);

    if (nu * nv <= 1u << 22) {
        for (std::size_t i = 0; i < nu; ++i) {
            const double ui = uf[i];
            if (ui == 0.0) continue;
            for (std::size_t j = 0; j < nv; ++j) wf[i + j] += ui * vf[j];
        }
    } else {
        const std::size_t len = next_pow2(nw);
        RealFFT fft(len);
        std::vector<double> a(len, 0.0), b(len, 0.0);
        std::copy(uf.begin(), uf.end(), a.begin());
        std::copy(vf.begin(), vf.end(), b.begin());
        std::vector<std::complex<double>> fa(len / 2 + 1), fb(len / 2 + 1);
        fft.forward(a, fa);
        fft.forward(b, fb);
        for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k] / static_cast<double>(len);
        std::vector<double> out(len);
        fft.inverse(fa, out);
        std::copy(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(nw), wf.begin());
    }

    // center of wf sits at index Ku+Kv
    const std::int64_t mid = Ku + Kv;
    const std::int64_t Kw = std::min<std::int64_t>(out_halfwidth, mid);
    SummableSeq w;
    w.values.resize(static_cast<std::size_t>(Kw) + 1);
    for (std::int64_t j = 0; j <= Kw; ++j) {
        const double a = wf[static_cast<std::size_t>(mid + j)];
        const double b = wf[static_cast<std::size_t>(mid - j)];
        w.values[static_cast<std::size_t>(j)] = 0.5 * (a + b);
    }
    const double eu = u.tail_exponent, ev = v.tail_exponent;
    w.tail_exponent = std::max({eu, ev, eu + ev + 1.0});
    w.tail_amplitude = fit_amplitude(w.values, w.tail_exponent) * 1.2;
    const double err = u.tail_mass() * v.sup_norm() + v.tail_mass() * u.sup_norm();
    return {std::move(w), err};
}

ValueWithError lp_norm(const SummableSeq& u, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double ep = u.tail_exponent * p;
    if (u.tail_amplitude != 0.0 && ep >= -1.0)
        throw divergence_error("lp_norm: envelope exponent*p >= -1, series diverges");
    Kahan acc;
    acc.add(std::pow(std::abs(u.values[0]), p));
    for (std::size_t k = 1; k < u.values.size(); ++k)
        acc.add(2.0 * std::pow(std::abs(u.values[k]), p));
    const double S = acc.value();
    double T = 0.0;
    if (u.tail_amplitude != 0.0) {
        const double K = static_cast<double>(std::max<std::int64_t>(u.halfwidth(), 1));
        T = 2.0 * std::pow(u.tail_amplitude, p) * tail_integral(ep, K);
    }
    const double value = std::pow(S, 1.0 / p);
    const double with_tail = std::pow(S + T, 1.0 / p);
    return {value, with_tail - value};
}

ValueWithError inner(const SummableSeq& u, const SummableSeq& v) {
    const std::int64_t K = std::min(u.halfwidth(), v.halfwidth());
    Kahan acc;
    acc.add(u.at(0) * v.at(0));
    for (std::int64_t k = 1; k <= K; ++k) acc.add(2.0 * u.at(k) * v.at(k));
    // beyond the shared support: the longer table against the other envelope,
    // then both envelopes
    double err = 0.0;
    const SummableSeq& longer = u.halfwidth() > v.halfwidth() ? u : v;
    const SummableSeq& shorter = u.halfwidth() > v.halfwidth() ? v : u;
    for (std::int64_t k = K + 1; k <= longer.halfwidth(); ++k)
        err += 2.0 * std::abs(longer.at(k)) * shorter.tail_amplitude *
               std::pow(static_cast<double>(k), shorter.tail_exponent);
    const double e2 = u.tail_exponent + v.tail_exponent;
    if (u.tail_amplitude != 0.0 && v.tail_amplitude != 0.0) {
        if (e2 >= -1.0)
            err = std::numeric_limits<double>::infinity();
        else
            err += 2.0 * u.tail_amplitude * v.tail_amplitude *
                   tail_integral(e2, static_cast<double>(longer.halfwidth()));
    }
    return {acc.value(), err};
}

double LimitConstants::rho_limit(int component) const {
    const double g = cross_moments.at(component == 1 ? "g11" : "g22");
    const double b = cross_moments.at(component == 1 ? "b11" : "b22");
    return g / std::sqrt(b);
}

std::array<double, 25> LimitConstants::limit_cov_5x5() const {
    const auto& m = cross_moments;
    const double g11 = m.at("g11"), g22 = m.at("g22"), g12 = m.at("g12"), g21 = m.at("g21");
    const double b11 = m.at("b11"), b22 = m.at("b22"), b12 = m.at("b12");
    const double b1y = m.at("b1y"), b2y = m.at("b2y");
    return {1.0, c12, g11, g12, g21,
            c12, 1.0, g21, g22, g12,
            g11, g21, b11, b12, b1y,
            g12, g22, b12, b22, b2y,
            g21, g12, b1y, b2y, c0};
}

std::string LimitConstants::to_json() const {
    nlohmann::json j;
    j["h1"] = h1;
    j["h2"] = h2;
    j["d"] = d;
    j["cv1"] = cv1;
    j["cv2"] = cv2;
    j["c12"] = c12;
    j["c0"] = c0;
    j["halfwidth"] = halfwidth;
    j["cross_moments"] = cross_moments;
    j["raw_series"] = raw_series;
    j["error_bounds"] = error_bounds;
    return j.dump(2);
}

LimitConstants limit_constants(double h1, double h2, const LimitOptions& opts) {
    if (h1 + h2 >= 1.5)
        throw divergence_error("limit_constants: need h1 + h2 < 3/2");
    if (std::max(h1, h2) >= 0.625)
        throw divergence_error("limit_constants: bracket series need h < 5/8");
    const cov::HurstParam H1(h1), H2(h2), Ha(0.5 * (h1 + h2));
    const std::int64_t K = opts.halfwidth;

    LimitConstants out;
    out.h1 = h1;
    out.h2 = h2;
    out.halfwidth = K;
    out.d = cov::d_constant(H1, H2, opts.quad_rel_tol);

    // rho^2 series with analytic tails (sub 1e-10 for all h < 3/4)
    auto sq_series = [&](cov::HurstParam H) {
        Kahan acc;
        acc.add(1.0);
        for (std::int64_t k = 1; k <= K; ++k) {
            const double r = cov::fgn_rho(H, k);
            acc.add(2.0 * r * r);
        }
        return acc.value() + cov::fgn_rho_sq_tail(H, K);
    };
    const double s2_1 = sq_series(H1);
    const double s2_2 = h2 == h1 ? s2_1 : sq_series(H2);
    const double s2_a = (h1 == h2) ? s2_1 : sq_series(Ha);
    out.cv1 = 2.0 * s2_1;
    out.cv2 = 2.0 * s2_2;
    out.c12 = 2.0 * out.d * out.d * s2_a / std::sqrt(out.cv1 * out.cv2);

    const auto r1 = SummableSeq::from_model(cov::CovarianceModel::fgn(h1), K);
    const auto r2 = h1 == h2 ? r1 : SummableSeq::from_model(cov::CovarianceModel::fgn(h2), K);
    const auto ra = h1 == h2 ? r1 : SummableSeq::from_model(cov::CovarianceModel::fgn(Ha.h), K);

    const auto c11 = convolve(r1, r1, K);
    const auto c22 = h1 == h2 ? c11 : convolve(r2, r2, K);
    const auto ca1 = h1 == h2 ? c11 : convolve(ra, r1, K);
    const auto ca2 = h1 == h2 ? c11 : convolve(ra, r2, K);
    const auto caa = h1 == h2 ? c11 : convolve(ra, ra, K);
    const auto ca12 = h1 == h2 ? convolve(c11, r1, K) : convolve(ca1, r2, K);

    struct Series {
        const char* name;
        ValueWithError v;
        double conv_err;
    };
    const Series series[] = {
        {"g11", inner(c11.seq, r1), c11.error},
        {"g22", inner(c22.seq, r2), c22.error},
        {"g12", inner(ca2.seq, ra), ca2.error},
        {"g21", inner(ca1.seq, ra), ca1.error},
        {"b11", inner(c11.seq, c11.seq), c11.error},
        {"b22", inner(c22.seq, c22.seq), c22.error},
        {"b12", inner(ca1.seq, ca2.seq), ca1.error + ca2.error},
        {"b1y", inner(ca1.seq, ca1.seq), ca1.error},
        {"b2y", inner(ca2.seq, ca2.seq), ca2.error},
        {"c0a", inner(ca12.seq, ra), ca12.error + ca1.error},
        {"c0b", inner(caa.seq, caa.seq), caa.error},
    };
    std::map<std::string, double> T, E;
    for (const auto& s : series) {
        T[s.name] = s.v.value;
        E[s.name] = s.v.error + s.conv_err;
    }
    out.raw_series = T;

    const double D2 = out.d * out.d;
    const double cv1 = out.cv1, cv2 = out.cv2;
    auto& cm = out.cross_moments;
    cm["g11"] = 4.0 * T["g11"] / std::pow(cv1, 1.5);
    cm["g22"] = 4.0 * T["g22"] / std::pow(cv2, 1.5);
    cm["g12"] = 4.0 * D2 * T["g12"] / (std::sqrt(cv1) * cv2);
    cm["g21"] = 4.0 * D2 * T["g21"] / (std::sqrt(cv2) * cv1);
    cm["b11"] = 8.0 * T["b11"] / (cv1 * cv1);
    cm["b22"] = 8.0 * T["b22"] / (cv2 * cv2);
    cm["b12"] = 8.0 * D2 * T["b12"] / (cv1 * cv2);
    cm["b1y"] = 8.0 * D2 * T["b1y"] / (std::pow(cv1, 1.5) * std::sqrt(cv2));
    cm["b2y"] = 8.0 * D2 * T["b2y"] / (std::pow(cv2, 1.5) * std::sqrt(cv1));
    out.c0 = 4.0 * D2 / (cv1 * cv2) * (T["c0a"] + D2 * T["c0b"]);

    for (const auto& [k, e] : E) out.error_bounds[k] = e;
    return out;
}

void save_seq_csv(const SummableSeq& u, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw io_error("cannot write sequence csv: " + path);
    outf << "k,value\n";
    outf.precision(17);
    for (std::size_t k = 0; k < u.values.size(); ++k) outf << k << ',' << u.values[k] << '\n';
}

}
