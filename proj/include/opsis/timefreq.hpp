#ifndef OPSIS_TIMEFREQ_HPP
#define OPSIS_TIMEFREQ_HPP

#include <Eigen/Dense>

#include "opsis/phase_space.hpp"
#include "opsis/types.hpp"

namespace opsis {

/// Complex signal on Z_L.
class Signal {
public:
    explicit Signal(int length) : v_(Eigen::VectorXcd::Zero(length)) {}
    explicit Signal(Eigen::VectorXcd samples) : v_(std::move(samples)) {}

    static Signal delta(int length, int at);

    int size() const noexcept { return static_cast<int>(v_.size()); }
    cplx& operator()(int t) { return v_(t); }
    const cplx& operator()(int t) const { return v_(t); }

    const Eigen::VectorXcd& vec() const noexcept { return v_; }
    Eigen::VectorXcd& vec() noexcept { return v_; }

    double norm() const { return v_.norm(); }

private:
    Eigen::VectorXcd v_;
};

/// <f, g> = sum_t f(t) conj(g(t)); linear in the first slot.
cplx inner(const Signal& f, const Signal& g);

/// Function on Z_L x Z_L, indexed (x, w).
class PhaseFn {
public:
    explicit PhaseFn(int modulus) : v_(Eigen::MatrixXcd::Zero(modulus, modulus)) {}
    explicit PhaseFn(Eigen::MatrixXcd values);

    int modulus() const noexcept { return static_cast<int>(v_.rows()); }
    cplx& operator()(int x, int w) { return v_(x, w); }
    const cplx& operator()(int x, int w) const { return v_(x, w); }
    cplx operator()(PhasePoint z) const { return v_(z.x, z.w); }

    const Eigen::MatrixXcd& mat() const noexcept { return v_; }
    Eigen::MatrixXcd& mat() noexcept { return v_; }

private:
    Eigen::MatrixXcd v_;
};

/// <F, G> = sum_z F(z) conj(G(z)).
cplx inner(const PhaseFn& f, const PhaseFn& g);

/// Cyclic translate (T_z F)(x, w) = F(x - z.x, w - z.w).
PhaseFn translate(const PhaseFn& f, PhasePoint z);

/// Group convolution on Z_L x Z_L: (g * f)(y) = sum_z g(z) f(y - z).
PhaseFn convolve(const PhaseFn& g, const PhaseFn& f);

/// Unitary DFT: f^(w) = L^{-1/2} sum_t f(t) e^{-2 pi i w t / L}.
Signal dft(const Signal& f);
Signal idft(const Signal& f);

/// (pi(z) f)(t) = e^{2 pi i w t / L} f(t - x).
Signal tf_shift(PhasePoint z, const Signal& f);

/// pi(z)^* f = e^{-2 pi i x w / L} pi(-z) f.
Signal tf_shift_adjoint(PhasePoint z, const Signal& f);

/// Dense L x L matrix of pi(z).
Eigen::MatrixXcd tf_shift_matrix(PhasePoint z, int L);

/// Phase exponent theta with pi(z) pi(z') = e^{2 pi i theta / L} pi(z + z');
/// in this model theta = -z'.w * z.x.
int composition_phase(PhasePoint z, PhasePoint zp, int L);

/// V_psi phi(z) = <phi, pi(z) psi> for every z.
PhaseFn stft(const Signal& phi, const Signal& psi);

/// R(psi, phi)(x, w) = psi(x) conj(phi^(w)) e^{-2 pi i x w / L}.
PhaseFn rihaczek(const Signal& psi, const Signal& phi);

/// Multiplicative inverse of 2 modulo an odd L.
int half_mod(int L);

/// W(psi, phi)(x, w) = sum_t psi(x + t/2) conj(phi(x - t/2)) e^{-2 pi i w t / L}
/// with t/2 = t * 2^{-1} mod L. Odd L only.
PhaseFn cross_wigner(const Signal& psi, const Signal& phi);

/// Periodized Gaussian e^{-pi t^2 / L} (|k| <= 3 periods), unit norm.
Signal gaussian_window(const PhaseSpace& space);

}  // namespace opsis

#endif  // OPSIS_TIMEFREQ_HPP
