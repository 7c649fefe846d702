#ifndef OPSIS_TYPES_HPP
#define OPSIS_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opsis {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Residue of k modulo L in [0, L).
inline int mod(long long k, int L) {
    long long r = k % L;
    return static_cast<int>(r < 0 ? r + L : r);
}

/// e^{2 pi i k / L}, with k reduced first so large phases stay exact.
inline cplx unit_root(long long k, int L) {
    return std::polar(1.0, kTwoPi * static_cast<double>(mod(k, L)) / static_cast<double>(L));
}

/// Invalid input shape or parameters (bad descriptor, size mismatch, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidDescriptor : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Operation requires an odd modulus (Weyl side, cross-Wigner).
class UnsupportedModulus : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Problem exceeds the dense desk-scale limits.
class SizeOverflow : public std::length_error {
public:
    using std::length_error::length_error;
};

class NotAFrame : public std::runtime_error {
public:
    NotAFrame(const std::string& what, double alpha, double beta)
        : std::runtime_error(what), alpha_(alpha), beta_(beta) {}
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

class NotRiesz : public std::runtime_error {
public:
    NotRiesz(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

/// Non-finite values produced during a computation.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace opsis

#endif  // OPSIS_TYPES_HPP
