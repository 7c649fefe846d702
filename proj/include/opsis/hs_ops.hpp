#ifndef OPSIS_HS_OPS_HPP
#define OPSIS_HS_OPS_HPP

/*
 * Hilbert-Schmidt operators on C^L as dense kernels kappa(t, s), with
 * (S f)(t) = sum_s kappa(t, s) f(s).
 *
 * Symbol conventions (all unitary onto functions on Z_L x Z_L):
 *   Kohn-Nirenberg  sigma_S(t, v) = L^{-1/2} sum_s kappa(t, s) e^{-2 pi i v (t - s) / L}
 *   Weyl (odd L)    a_S(x, w)     = L^{-1/2} sum_t kappa(x + t/2, x - t/2) e^{-2 pi i w t / L}
 * The Fourier-Wigner transform is kept raw, F(S)(z) = tr[pi(-z) S], without
 * the e^{-pi i x w} half phase; every consumer uses products taken at the
 * same z, where that phase cancels.
 */

#include <Eigen/Dense>

#include "opsis/phase_space.hpp"
#include "opsis/timefreq.hpp"
#include "opsis/types.hpp"

namespace opsis {

class HsOperator {
public:
    explicit HsOperator(int size) : k_(Eigen::MatrixXcd::Zero(size, size)) {}
    explicit HsOperator(Eigen::MatrixXcd kernel);

    static HsOperator identity(int size) { return HsOperator(Eigen::MatrixXcd::Identity(size, size)); }

    int size() const noexcept { return static_cast<int>(k_.rows()); }
    const Eigen::MatrixXcd& kernel() const noexcept { return k_; }
    Eigen::MatrixXcd& kernel() noexcept { return k_; }
    cplx operator()(int t, int s) const { return k_(t, s); }

    Signal apply(const Signal& f) const;
    cplx trace() const { return k_.trace(); }
    double hs_norm() const { return k_.norm(); }

    HsOperator& operator+=(const HsOperator& other);
    HsOperator& operator-=(const HsOperator& other);
    HsOperator& operator*=(cplx s) {
        k_ *= s;
        return *this;
    }
    friend HsOperator operator+(HsOperator a, const HsOperator& b) { return a += b; }
    friend HsOperator operator-(HsOperator a, const HsOperator& b) { return a -= b; }
    friend HsOperator operator*(cplx s, HsOperator a) { return a *= s; }

private:
    Eigen::MatrixXcd k_;
};

/// <S, T>_HS = tr(S T^*).
cplx hs_inner(const HsOperator& S, const HsOperator& T);

/// (phi (x) psi) e = <e, psi> phi.
HsOperator rank_one(const Signal& phi, const Signal& psi);

/// alpha_z(S) = pi(z) S pi(z)^*.
HsOperator op_translate(PhasePoint z, const HsOperator& S);

PhaseFn kn_symbol(const HsOperator& S);
HsOperator kn_operator(const PhaseFn& symbol);

/// Odd L only; throws UnsupportedModulus otherwise.
PhaseFn weyl_symbol(const HsOperator& S);
HsOperator weyl_operator(const PhaseFn& symbol);

/// Raw Fourier-Wigner transform tr[pi(-z) S] for every z.
PhaseFn fourier_wigner(const HsOperator& S);

/// sum_lambda mask(lambda) alpha_lambda(phi (x) psi), i.e. the operator
/// eta -> sum_lambda mask(lambda) V_psi eta(lambda) pi(lambda) phi.
HsOperator gabor_multiplier(const LatticeSeq& mask, const Signal& psi, const Signal& phi);

/// g * S = sum_z g(z) alpha_z(S) over all of Z_L x Z_L.
HsOperator fn_op_convolve(const PhaseFn& g, const HsOperator& S);

}  // namespace opsis

#endif  // OPSIS_HS_OPS_HPP
