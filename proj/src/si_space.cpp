#include "opsis/si_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace opsis {

GeneratorSystem::GeneratorSystem(LatticePtr lattice, std::vector<HsOperator> generators)
    : lattice_(std::move(lattice)), generators_(std::move(generators)) {
    if (generators_.empty()) throw ConfigError("a generator system needs at least one generator");
    for (const auto& S : generators_) {
        if (S.size() != lattice_->modulus()) {
            throw ConfigError("generator size does not match the lattice modulus");
        }
    }
}

const char* route_name(RieszRoute route) {
    return route == RieszRoute::GramFibers ? "gram_fibers" : "fourier_wigner";
}

CoefArray zero_coefficients(const GeneratorSystem& system) {
    return CoefArray(static_cast<size_t>(system.count()), LatticeSeq(system.lattice_ptr()));
}

HsOperator synthesize(const GeneratorSystem& system, const CoefArray& c) {
    if (static_cast<int>(c.size()) != system.count()) {
        throw ConfigError("synthesize: need one coefficient sequence per generator");
    }
    const Lattice& lat = system.lattice();
    HsOperator out(system.modulus());
    for (int n = 0; n < system.count(); ++n) {
        if (!c[static_cast<size_t>(n)].lattice().same_elements(lat)) {
            throw ConfigError("synthesize: coefficients are not on the system lattice");
        }
        for (int i = 0; i < lat.size(); ++i) {
            const cplx cn = c[static_cast<size_t>(n)][i];
            if (cn == cplx{}) continue;
            out.kernel() += cn * op_translate(lat[i], system[n]).kernel();
        }
    }
    return out;
}

std::vector<LatticeSeq> correlations(const GeneratorSystem& system) {
    const Lattice& lat = system.lattice();
    const int N = system.count();
    std::vector<LatticeSeq> r(static_cast<size_t>(N * N), LatticeSeq(system.lattice_ptr()));
    for (int np = 0; np < N; ++np) {
        for (int i = 0; i < lat.size(); ++i) {
            const HsOperator moved = op_translate(lat[i], system[np]);
            for (int n = 0; n < N; ++n) r[static_cast<size_t>(n * N + np)][i] = hs_inner(system[n], moved);
        }
    }
    return r;
}

FiberMatrices gram_fibers(const GeneratorSystem& system) {
    const int N = system.count();
    FiberMatrices out{dual_transversal(system.lattice_ptr()), {}};
    const auto r = correlations(system);
    out.fibers.assign(static_cast<size_t>(out.transversal.size()), Eigen::MatrixXcd::Zero(N, N));
    for (int n = 0; n < N; ++n) {
        for (int np = 0; np < N; ++np) {
            const auto hat = symp_fourier(r[static_cast<size_t>(n * N + np)], out.transversal);
            for (size_t k = 0; k < hat.size(); ++k) out.fibers[k](n, np) = hat[k];
        }
    }
    return out;
}

BruteGram brute_gram(const GeneratorSystem& system) {
    const Lattice& lat = system.lattice();
    const int cols = system.count() * lat.size();
    if (cols > kBruteGramLimit) {
        throw SizeOverflow("brute_gram: " + std::to_string(cols) + " translates exceed the limit of " +
                           std::to_string(kBruteGramLimit));
    }
    const int L = system.modulus();
    Eigen::MatrixXcd V(L * L, cols);
    for (int n = 0; n < system.count(); ++n) {
        for (int i = 0; i < lat.size(); ++i) {
            const HsOperator moved = op_translate(lat[i], system[n]);
            V.col(n * lat.size() + i) = moved.kernel().reshaped();
        }
    }
    BruteGram out;
    out.gram = V.adjoint() * V;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.gram, Eigen::EigenvaluesOnly);
    out.eigenvalues = eig.eigenvalues();
    out.lambda_min = out.eigenvalues(0);
    out.lambda_max = out.eigenvalues(out.eigenvalues.size() - 1);
    return out;
}

Eigen::MatrixXcd gw_matrix(const GeneratorSystem& system, PhasePoint xi) {
    const int N = system.count();
    const PhaseSpace& space = system.lattice().space();
    const LatticePtr ann = annihilator(system.lattice());
    std::vector<PhaseFn> fw;
    fw.reserve(static_cast<size_t>(N));
    for (const auto& S : system.generators()) fw.push_back(fourier_wigner(S));

    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
    Eigen::VectorXcd v(N);
    for (const auto& u : ann->elements()) {
        const PhasePoint z = space.add(space.point(xi.x, xi.w), u);
        for (int n = 0; n < N; ++n) v(n) = fw[static_cast<size_t>(n)](z);
        G.noalias() += v * v.adjoint();
    }
    return G;
}

namespace {

struct FiberSpectrum {
    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
};

FiberSpectrum spectrum_bounds(const std::vector<Eigen::MatrixXcd>& fibers) {
    FiberSpectrum out;
    for (const auto& G : fibers) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        out.lower = std::min(out.lower, ev(0));
        out.upper = std::max(out.upper, ev(ev.size() - 1));
    }
    return out;
}

}  // namespace

RieszReport riesz_check(const GeneratorSystem& system, std::optional<double> tol, RieszRoute route) {
    RieszReport report;
    report.route = route;

    std::vector<Eigen::MatrixXcd> fibers;
    if (route == RieszRoute::GramFibers) {
        fibers = gram_fibers(system).fibers;
    } else {
        const DualTransversal tr = dual_transversal(system.lattice_ptr());
        const double scale =
            static_cast<double>(system.lattice().size()) / static_cast<double>(system.modulus());
        for (const auto& xi : tr.points()) fibers.push_back(scale * gw_matrix(system, xi));
    }
    const FiberSpectrum sp = spectrum_bounds(fibers);
    report.upper = sp.upper;
    const double threshold = tol.value_or(1e-10 * sp.upper);

    if (!std::isfinite(sp.lower) || !std::isfinite(sp.upper)) {
        report.diagnostic = "non-finite values in the fiber matrices";
        report.lower = sp.lower;
        return report;
    }
    if (system.overdetermined()) {
        std::ostringstream msg;
        msg << "dimension count: N * |Lambda| = " << system.count() * system.lattice().size()
            << " exceeds L^2 = " << system.lattice().space().size();
        report.diagnostic = msg.str();
        report.lower = 0.0;
        report.is_riesz = false;
        return report;
    }
    if (!(sp.lower > threshold)) {
        report.lower = 0.0;
        report.is_riesz = false;
        report.diagnostic = "a fiber matrix is singular: translates are linearly dependent";
        return report;
    }
    report.lower = sp.lower;
    report.is_riesz = true;
    return report;
}

CoefArray coefficients(const GeneratorSystem& system, const HsOperator& T) {
    const RieszReport rr = riesz_check(system);
    if (!rr.is_riesz) {
        throw NotRiesz("coefficients: generator translates are not a Riesz sequence (" + rr.diagnostic + ")",
                       rr.lower, rr.upper);
    }
    const Lattice& lat = system.lattice();
    const int N = system.count();
    const FiberMatrices gf = gram_fibers(system);
    const DualTransversal& tr = gf.transversal;

    // Analysis y_n(lambda) = <T, alpha_lambda(S_n)>; then y^ = G^T c^ per fiber.
    std::vector<std::vector<cplx>> y_hat;
    for (int n = 0; n < N; ++n) {
        LatticeSeq y(system.lattice_ptr());
        for (int i = 0; i < lat.size(); ++i) y[i] = hs_inner(T, op_translate(lat[i], system[n]));
        y_hat.push_back(symp_fourier(y, tr));
    }
    std::vector<std::vector<cplx>> c_hat(static_cast<size_t>(N), std::vector<cplx>(static_cast<size_t>(tr.size())));
    Eigen::VectorXcd rhs(N);
    for (int k = 0; k < tr.size(); ++k) {
        for (int n = 0; n < N; ++n) rhs(n) = y_hat[static_cast<size_t>(n)][static_cast<size_t>(k)];
        const Eigen::VectorXcd sol = gf.fibers[static_cast<size_t>(k)].transpose().partialPivLu().solve(rhs);
        for (int n = 0; n < N; ++n) c_hat[static_cast<size_t>(n)][static_cast<size_t>(k)] = sol(n);
    }
    CoefArray out;
    out.reserve(static_cast<size_t>(N));
    for (int n = 0; n < N; ++n) out.push_back(inv_symp_fourier(c_hat[static_cast<size_t>(n)], tr));
    return out;
}

}  // namespace opsis
