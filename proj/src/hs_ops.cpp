#include "opsis/hs_ops.hpp"

#include <cmath>

namespace opsis {

namespace {

void require_same_size(const HsOperator& a, const HsOperator& b, const char* op) {
    if (a.size() != b.size()) throw ConfigError(std::string(op) + ": operator sizes differ");
}

}  // namespace

HsOperator::HsOperator(Eigen::MatrixXcd kernel) : k_(std::move(kernel)) {
    if (k_.rows() != k_.cols()) throw ConfigError("operator kernel must be square");
}

Signal HsOperator::apply(const Signal& f) const {
    if (f.size() != size()) throw ConfigError("apply: signal length does not match operator size");
    return Signal(Eigen::VectorXcd(k_ * f.vec()));
}

HsOperator& HsOperator::operator+=(const HsOperator& other) {
    require_same_size(*this, other, "operator+");
    k_ += other.k_;
    return *this;
}

HsOperator& HsOperator::operator-=(const HsOperator& other) {
    require_same_size(*this, other, "operator-");
    k_ -= other.k_;
    return *this;
}

cplx hs_inner(const HsOperator& S, const HsOperator& T) {
    require_same_size(S, T, "hs_inner");
    return (S.kernel().array() * T.kernel().array().conjugate()).sum();
}

HsOperator rank_one(const Signal& phi, const Signal& psi) {
    if (phi.size() != psi.size()) throw ConfigError("rank_one: signal lengths differ");
    return HsOperator(Eigen::MatrixXcd(phi.vec() * psi.vec().adjoint()));
}

HsOperator op_translate(PhasePoint z, const HsOperator& S) {
    const int L = S.size();
    const int x = mod(z.x, L);
    const int w = mod(z.w, L);
    HsOperator out(L);
    for (int u = 0; u < L; ++u) {
        const int us = mod(u - x, L);
        for (int t = 0; t < L; ++t) {
            out.kernel()(t, u) = unit_root(static_cast<long long>(w) * (t - u), L) * S(mod(t - x, L), us);
        }
    }
    return out;
}

PhaseFn kn_symbol(const HsOperator& S) {
    const int L = S.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    PhaseFn out(L);
    for (int t = 0; t < L; ++t) {
        for (int v = 0; v < L; ++v) {
            cplx acc{0.0, 0.0};
            for (int s = 0; s < L; ++s) acc += S(t, s) * unit_root(-static_cast<long long>(v) * (t - s), L);
            out(t, v) = acc * scale;
        }
    }
    return out;
}

HsOperator kn_operator(const PhaseFn& symbol) {
    const int L = symbol.modulus();
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    HsOperator out(L);
    for (int t = 0; t < L; ++t) {
        for (int s = 0; s < L; ++s) {
            cplx acc{0.0, 0.0};
            for (int v = 0; v < L; ++v) acc += symbol(t, v) * unit_root(static_cast<long long>(v) * (t - s), L);
            out.kernel()(t, s) = acc * scale;
        }
    }
    return out;
}

PhaseFn weyl_symbol(const HsOperator& S) {
    const int L = S.size();
    const int h = half_mod(L);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    PhaseFn out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            cplx acc{0.0, 0.0};
            for (int t = 0; t < L; ++t) {
                const long long th = static_cast<long long>(t) * h;
                acc += S(mod(x + th, L), mod(x - th, L)) * unit_root(-static_cast<long long>(w) * t, L);
            }
            out(x, w) = acc * scale;
        }
    }
    return out;
}

HsOperator weyl_operator(const PhaseFn& symbol) {
    const int L = symbol.modulus();
    const int h = half_mod(L);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    HsOperator out(L);
    // (p, q) = (x + t/2, x - t/2)  <=>  x = (p + q)/2, t = p - q
    for (int p = 0; p < L; ++p) {
        for (int q = 0; q < L; ++q) {
            const int x = mod(static_cast<long long>(p + q) * h, L);
            const int t = mod(p - q, L);
            cplx acc{0.0, 0.0};
            for (int w = 0; w < L; ++w) acc += symbol(x, w) * unit_root(static_cast<long long>(w) * t, L);
            out.kernel()(p, q) = acc * scale;
        }
    }
    return out;
}

PhaseFn fourier_wigner(const HsOperator& S) {
    const int L = S.size();
    PhaseFn out(L);
    // tr[pi(-z) S] = sum_t e^{-2 pi i w t / L} kappa(t + x, t)
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            cplx acc{0.0, 0.0};
            for (int t = 0; t < L; ++t) acc += unit_root(-static_cast<long long>(w) * t, L) * S(mod(t + x, L), t);
            out(x, w) = acc;
        }
    }
    return out;
}

HsOperator gabor_multiplier(const LatticeSeq& mask, const Signal& psi, const Signal& phi) {
    const Lattice& lat = mask.lattice();
    if (psi.size() != lat.modulus() || phi.size() != lat.modulus()) {
        throw ConfigError("gabor_multiplier: window length does not match the lattice modulus");
    }
    HsOperator out(lat.modulus());
    for (int i = 0; i < lat.size(); ++i) {
        if (mask[i] == cplx{}) continue;
        const Signal a = tf_shift(lat[i], phi);
        const Signal b = tf_shift(lat[i], psi);
        out.kernel().noalias() += mask[i] * (a.vec() * b.vec().adjoint());
    }
    return out;
}

HsOperator fn_op_convolve(const PhaseFn& g, const HsOperator& S) {
    const int L = S.size();
    if (g.modulus() != L) throw ConfigError("fn_op_convolve: sizes differ");
    HsOperator out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            if (g(x, w) == cplx{}) continue;
            out.kernel() += g(x, w) * op_translate({x, w}, S).kernel();
        }
    }
    return out;
}

}  // namespace opsis
