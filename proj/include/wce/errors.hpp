#ifndef WCE_ERRORS_HPP
#define WCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wce {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A series or norm does not converge for the requested parameters.
struct divergence_error : error {
    explicit divergence_error(const std::string& msg) : error(msg) {}
};

// Adaptive quadrature could not reach the requested tolerance.
struct quadrature_error : error {
    explicit quadrature_error(const std::string& msg) : error(msg) {}
};

// A covariance matrix fails positive semidefiniteness.
struct psd_error : error {
    explicit psd_error(const std::string& msg) : error(msg) {}
};

// Dense fallback paths refuse inputs beyond their size limit.
struct size_limit_error : error {
    explicit size_limit_error(const std::string& msg) : error(msg) {}
};

// Hurst parameters outside the regime a formula is valid in.
struct regime_error : error {
    explicit regime_error(const std::string& msg) : error(msg) {}
};

struct singular_matrix_error : error {
    explicit singular_matrix_error(const std::string& msg) : error(msg) {}
};

struct insufficient_sample_error : error {
    explicit insufficient_sample_error(const std::string& msg) : error(msg) {}
};

// Circulant embedding spectrum came out negative beyond tolerance.
struct embedding_error : error {
    explicit embedding_error(const std::string& msg) : error(msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

}

#endif
