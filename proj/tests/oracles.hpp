#ifndef OPSIS_TESTS_ORACLES_HPP
#define OPSIS_TESTS_ORACLES_HPP

// Brute-force reference computations. They use dense matrices and plain
// loops straight from the defining formulas, and share no code with the
// library beyond the value types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "opsis/hs_ops.hpp"
#include "opsis/phase_space.hpp"
#include "opsis/timefreq.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using opsis::PhasePoint;

inline int md(long long k, int L) { return static_cast<int>(((k % L) + L) % L); }

inline cplx expi(long long k, int L) {
    const double a = 2.0 * M_PI * static_cast<double>(md(k, L)) / L;
    return {std::cos(a), std::sin(a)};
}

inline int symp(PhasePoint a, PhasePoint b, int L) {
    return md(static_cast<long long>(a.w) * b.x - static_cast<long long>(b.w) * a.x, L);
}

/// Dense matrix of pi(z) f(t) = e^{2 pi i w t / L} f(t - x).
inline MatrixXcd pi(PhasePoint z, int L) {
    MatrixXcd P = MatrixXcd::Zero(L, L);
    for (int t = 0; t < L; ++t) P(t, md(t - z.x, L)) = expi(static_cast<long long>(z.w) * t, L);
    return P;
}

/// alpha_z(S) = pi(z) S pi(z)^*.
inline MatrixXcd alpha(PhasePoint z, const MatrixXcd& S) {
    const MatrixXcd P = pi(z, S.rows());
    return P * S * P.adjoint();
}

inline cplx dot(const VectorXcd& f, const VectorXcd& g) {
    cplx s = 0;
    for (Eigen::Index t = 0; t < f.size(); ++t) s += f(t) * std::conj(g(t));
    return s;
}

inline cplx hs(const MatrixXcd& S, const MatrixXcd& T) {
    cplx s = 0;
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        for (Eigen::Index j = 0; j < S.cols(); ++j) s += S(i, j) * std::conj(T(i, j));
    }
    return s;
}

/// phi (x) psi : eta -> <eta, psi> phi.
inline MatrixXcd outer(const VectorXcd& phi, const VectorXcd& psi) {
    MatrixXcd K(phi.size(), psi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
        for (Eigen::Index j = 0; j < psi.size(); ++j) K(i, j) = phi(i) * std::conj(psi(j));
    }
    return K;
}

/// V_psi phi(z) = <phi, pi(z) psi>.
inline cplx stft(const VectorXcd& phi, const VectorXcd& psi, PhasePoint z) {
    return dot(phi, pi(z, static_cast<int>(phi.size())) * psi);
}

/// Subgroup generated by the given points, by iterating sums to a fixed point.
inline std::set<PhasePoint> closure(const std::vector<PhasePoint>& gens, int L) {
    std::set<PhasePoint> s{{0, 0}};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<PhasePoint> cur(s.begin(), s.end());
        for (const auto& a : cur) {
            for (const auto& g : gens) {
                if (s.insert({md(a.x + g.x, L), md(a.w + g.w, L)}).second) grew = true;
            }
        }
    }
    return s;
}

inline std::set<PhasePoint> separable(int a, int b, int L) {
    std::set<PhasePoint> s;
    for (int x = 0; x < L; x += a) {
        for (int w = 0; w < L; w += b) s.insert({x, w});
    }
    return s;
}

inline std::set<PhasePoint> annihilator(const std::set<PhasePoint>& lat, int L) {
    std::set<PhasePoint> out;
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            bool ok = true;
            for (const auto& l : lat) ok = ok && symp({x, w}, l, L) == 0;
            if (ok) out.insert({x, w});
        }
    }
    return out;
}

inline std::set<PhasePoint> as_set(const opsis::Lattice& lat) {
    return {lat.elements().begin(), lat.elements().end()};
}

/// Kohn-Nirenberg symbol by its weak definition: sigma(t, nu) is the
/// coefficient of S against L^{-1/2} e^{2 pi i nu (t - s)/L} delta_t (x) delta_s summed over s.
inline MatrixXcd kn(const MatrixXcd& K) {
    const int L = static_cast<int>(K.rows());
    MatrixXcd sig = MatrixXcd::Zero(L, L);
    for (int t = 0; t < L; ++t) {
        for (int nu = 0; nu < L; ++nu) {
            for (int s = 0; s < L; ++s) sig(t, nu) += K(t, s) * expi(-static_cast<long long>(nu) * (t - s), L);
            sig(t, nu) /= std::sqrt(static_cast<double>(L));
        }
    }
    return sig;
}

/// Ordinary convolution on Z_L x Z_L.
inline MatrixXcd conv2(const MatrixXcd& g, const MatrixXcd& f) {
    const int L = static_cast<int>(g.rows());
    MatrixXcd out = MatrixXcd::Zero(L, L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            for (int y = 0; y < L; ++y) {
                for (int v = 0; v < L; ++v) out(x, w) += g(y, v) * f(md(x - y, L), md(w - v, L));
            }
        }
    }
    return out;
}

/// Columns vec(alpha_lambda(S_n)), ordered n-major then lattice order.
inline MatrixXcd translate_columns(const std::vector<MatrixXcd>& gens, const std::vector<PhasePoint>& lat) {
    const Eigen::Index L = gens.front().rows();
    MatrixXcd V(L * L, static_cast<Eigen::Index>(gens.size() * lat.size()));
    Eigen::Index col = 0;
    for (const auto& S : gens) {
        for (const auto& l : lat) {
            const MatrixXcd A = alpha(l, S);
            for (Eigen::Index j = 0; j < L; ++j) {
                for (Eigen::Index i = 0; i < L; ++i) V(j * L + i, col) = A(i, j);
            }
            ++col;
        }
    }
    return V;
}

/// Sorted eigenvalues of V^* V.
inline std::vector<double> gram_spectrum(const MatrixXcd& V) {
    const MatrixXcd G = V.adjoint() * V;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
    std::vector<double> ev(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Sum over the lattice of c(lambda) alpha_lambda(S).
inline MatrixXcd synth(const std::vector<MatrixXcd>& gens, const std::vector<PhasePoint>& lat,
                       const std::vector<std::vector<cplx>>& c) {
    MatrixXcd T = MatrixXcd::Zero(gens.front().rows(), gens.front().cols());
    for (size_t n = 0; n < gens.size(); ++n) {
        for (size_t i = 0; i < lat.size(); ++i) T += c[n][i] * alpha(lat[i], gens[n]);
    }
    return T;
}

/// <T pi(lambda) g, pi(lambda) g~>.
inline cplx window_sample(const MatrixXcd& T, const VectorXcd& g, const VectorXcd& gt, PhasePoint l) {
    const MatrixXcd P = pi(l, static_cast<int>(g.size()));
    return dot(T * (P * g), P * gt);
}

/// (c *_Lambda d)(lambda) = sum_mu c(mu) d(lambda - mu).
inline std::vector<cplx> lattice_conv(const std::vector<cplx>& c, const std::vector<cplx>& d,
                                      const std::vector<PhasePoint>& lat, int L) {
    std::vector<cplx> out(lat.size(), 0.0);
    for (size_t i = 0; i < lat.size(); ++i) {
        for (size_t j = 0; j < lat.size(); ++j) {
            const PhasePoint diff{md(lat[i].x - lat[j].x, L), md(lat[i].w - lat[j].w, L)};
            const auto k = static_cast<size_t>(std::find(lat.begin(), lat.end(), diff) - lat.begin());
            out[i] += c[j] * d[k];
        }
    }
    return out;
}

inline double max_abs(const MatrixXcd& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle

#endif  // OPSIS_TESTS_ORACLES_HPP
