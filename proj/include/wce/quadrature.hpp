#ifndef WCE_QUADRATURE_HPP
#define WCE_QUADRATURE_HPP

#include <cmath>
#include <limits>

#include "wce/errors.hpp"

namespace wce {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Double-exponential (tanh-sinh) quadrature on a finite interval.
// Handles integrable power singularities at either endpoint; abscissas
// are generated as offsets from the endpoints so f can be evaluated
// arbitrarily close to them without cancellation.
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, double rel_tol, int max_level = 12) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    const double t_max = 6.115;  // weights underflow past this point

    auto node = [&](double t, double& x, double& w) -> bool {
        const double s = 1.5707963267948966 * std::sinh(t);
        if (std::abs(s) > 350.0) return false;
        const double ch = std::cosh(s);
        w = d * 1.5707963267948966 * std::cosh(t) / (ch * ch);
        if (!(w > 0.0) || w < 1e-320) return false;
        if (t < 0.0) {
            const double off = 2.0 * d / (1.0 + std::exp(-2.0 * s));  // d*(1+tanh s)
            if (off == 0.0) return false;
            x = a + off;
        } else {
            const double off = 2.0 * d / (1.0 + std::exp(2.0 * s));   // d*(1-tanh s)
            if (off == 0.0) return false;
            x = b - off;
        }
        return true;
    };

    double h = 1.0;
    double sum = 0.0;
    {
        double x, w;
        if (node(0.0, x, w)) sum = f(x) * w;
        for (int k = 1; k * h <= t_max; ++k) {
            if (node(k * h, x, w)) sum += f(x) * w;
            if (node(-k * h, x, w)) sum += f(x) * w;
        }
    }
    double integral = sum * h;
    double prev_err = std::numeric_limits<double>::infinity();

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        double x, w;
        for (int k = 1; k * h <= t_max; k += 2) {
            if (node(k * h, x, w)) add += f(x) * w;
            if (node(-k * h, x, w)) add += f(x) * w;
        }
        const double next = 0.5 * integral + add * h;
        const double err = std::abs(next - integral);
        integral = next;
        const double scale = std::max(std::abs(integral), 1e-300);
        if (level >= 3 && err <= rel_tol * scale && prev_err <= 8.0 * rel_tol * scale)
            return {integral, err};
        prev_err = err;
    }
    const double scale = std::max(std::abs(integral), 1e-300);
    if (prev_err <= rel_tol * scale) return {integral, prev_err};
    throw quadrature_error("tanh_sinh: requested tolerance not reached");
}

// Integral over (a, +inf) via the rational substitution v = a + t/(1-t).
template <class F>
QuadResult tanh_sinh_halfline(F&& f, double a, double rel_tol, int max_level = 12) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double v = a + t / om;
        return f(v) / (om * om);
    };
    return tanh_sinh(g, 0.0, 1.0, rel_tol, max_level);
}

}

#endif
