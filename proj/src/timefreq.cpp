#include "opsis/timefreq.hpp"

#include <cmath>

namespace opsis {

namespace {

void require_same_length(const Signal& a, const Signal& b, const char* op) {
    if (a.size() != b.size()) {
        throw ConfigError(std::string(op) + ": signal lengths differ");
    }
}

}  // namespace

Signal Signal::delta(int length, int at) {
    Signal s(length);
    s(mod(at, length)) = 1.0;
    return s;
}

cplx inner(const Signal& f, const Signal& g) {
    require_same_length(f, g, "inner");
    // Eigen's dot conjugates the first argument.
    return g.vec().dot(f.vec());
}

PhaseFn::PhaseFn(Eigen::MatrixXcd values) : v_(std::move(values)) {
    if (v_.rows() != v_.cols()) throw ConfigError("phase-space function must be square");
}

cplx inner(const PhaseFn& f, const PhaseFn& g) {
    if (f.modulus() != g.modulus()) throw ConfigError("inner: phase-space sizes differ");
    return (f.mat().array() * g.mat().array().conjugate()).sum();
}

PhaseFn translate(const PhaseFn& f, PhasePoint z) {
    const int L = f.modulus();
    PhaseFn out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) out(x, w) = f(mod(x - z.x, L), mod(w - z.w, L));
    }
    return out;
}

PhaseFn convolve(const PhaseFn& g, const PhaseFn& f) {
    const int L = g.modulus();
    if (f.modulus() != L) throw ConfigError("convolve: phase-space sizes differ");
    PhaseFn out(L);
    for (int zx = 0; zx < L; ++zx) {
        for (int zw = 0; zw < L; ++zw) {
            const cplx gz = g(zx, zw);
            if (gz == cplx{}) continue;
            for (int x = 0; x < L; ++x) {
                for (int w = 0; w < L; ++w) out(x, w) += gz * f(mod(x - zx, L), mod(w - zw, L));
            }
        }
    }
    return out;
}

Signal dft(const Signal& f) {
    const int L = f.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    Signal out(L);
    for (int w = 0; w < L; ++w) {
        cplx acc{0.0, 0.0};
        for (int t = 0; t < L; ++t) acc += f(t) * unit_root(-static_cast<long long>(w) * t, L);
        out(w) = acc * scale;
    }
    return out;
}

Signal idft(const Signal& f) {
    const int L = f.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    Signal out(L);
    for (int t = 0; t < L; ++t) {
        cplx acc{0.0, 0.0};
        for (int w = 0; w < L; ++w) acc += f(w) * unit_root(static_cast<long long>(w) * t, L);
        out(t) = acc * scale;
    }
    return out;
}

Signal tf_shift(PhasePoint z, const Signal& f) {
    const int L = f.size();
    Signal out(L);
    for (int t = 0; t < L; ++t) out(t) = unit_root(static_cast<long long>(z.w) * t, L) * f(mod(t - z.x, L));
    return out;
}

Signal tf_shift_adjoint(PhasePoint z, const Signal& f) {
    const int L = f.size();
    Signal shifted = tf_shift({-z.x, -z.w}, f);
    shifted.vec() *= unit_root(-static_cast<long long>(z.x) * z.w, L);
    return shifted;
}

Eigen::MatrixXcd tf_shift_matrix(PhasePoint z, int L) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(L, L);
    for (int t = 0; t < L; ++t) P(t, mod(t - z.x, L)) = unit_root(static_cast<long long>(z.w) * t, L);
    return P;
}

int composition_phase(PhasePoint z, PhasePoint zp, int L) {
    return mod(-static_cast<long long>(zp.w) * z.x, L);
}

PhaseFn stft(const Signal& phi, const Signal& psi) {
    require_same_length(phi, psi, "stft");
    const int L = phi.size();
    PhaseFn out(L);
    Eigen::VectorXcd h(L);
    for (int x = 0; x < L; ++x) {
        for (int t = 0; t < L; ++t) h(t) = phi(t) * std::conj(psi(mod(t - x, L)));
        for (int w = 0; w < L; ++w) {
            cplx acc{0.0, 0.0};
            for (int t = 0; t < L; ++t) acc += h(t) * unit_root(-static_cast<long long>(w) * t, L);
            out(x, w) = acc;
        }
    }
    return out;
}

PhaseFn rihaczek(const Signal& psi, const Signal& phi) {
    require_same_length(psi, phi, "rihaczek");
    const int L = psi.size();
    const Signal phi_hat = dft(phi);
    PhaseFn out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            out(x, w) = psi(x) * std::conj(phi_hat(w)) * unit_root(-static_cast<long long>(x) * w, L);
        }
    }
    return out;
}

int half_mod(int L) {
    if (L % 2 == 0) {
        throw UnsupportedModulus("half-shifts need an odd modulus, got L = " + std::to_string(L));
    }
    return (L + 1) / 2;
}

PhaseFn cross_wigner(const Signal& psi, const Signal& phi) {
    require_same_length(psi, phi, "cross_wigner");
    const int L = psi.size();
    const int h = half_mod(L);
    PhaseFn out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            cplx acc{0.0, 0.0};
            for (int t = 0; t < L; ++t) {
                const long long th = static_cast<long long>(t) * h;
                acc += psi(mod(x + th, L)) * std::conj(phi(mod(x - th, L))) *
                       unit_root(-static_cast<long long>(w) * t, L);
            }
            out(x, w) = acc;
        }
    }
    return out;
}

Signal gaussian_window(const PhaseSpace& space) {
    const int L = space.modulus();
    Signal g(L);
    for (int t = 0; t < L; ++t) {
        // centered representative in [-L/2, L/2)
        const int centered = (2 * t < L) ? t : t - L;
        double acc = 0.0;
        for (int k = -3; k <= 3; ++k) {
            const double u = static_cast<double>(centered + k * L);
            acc += std::exp(-std::numbers::pi * u * u / static_cast<double>(L));
        }
        g(t) = acc;
    }
    g.vec() /= g.norm();
    return g;
}

}  // namespace opsis
