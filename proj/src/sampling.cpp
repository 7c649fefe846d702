#include "opsis/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace opsis {

// --- SamplingScheme ------------------------------------------------------

SamplingScheme SamplingScheme::windows(std::vector<WindowPair> pairs) {
    if (pairs.empty()) throw ConfigError("sampling scheme needs at least one window pair");
    const int L = pairs.front().g.size();
    for (const auto& p : pairs) {
        if (p.g.size() != L || p.g_tilde.size() != L) throw ConfigError("window lengths differ");
    }
    return SamplingScheme(std::move(pairs));
}

SamplingScheme SamplingScheme::average(std::vector<HsOperator> operators) {
    if (operators.empty()) throw ConfigError("sampling scheme needs at least one average operator");
    const int L = operators.front().size();
    for (const auto& Q : operators) {
        if (Q.size() != L) throw ConfigError("average operator sizes differ");
    }
    return SamplingScheme(std::move(operators));
}

int SamplingScheme::count() const noexcept {
    return std::visit([](const auto& v) { return static_cast<int>(v.size()); }, data_);
}

int SamplingScheme::modulus() const noexcept {
    if (const auto* p = std::get_if<std::vector<WindowPair>>(&data_)) return p->front().g.size();
    return std::get<std::vector<HsOperator>>(data_).front().size();
}

const std::vector<WindowPair>& SamplingScheme::pairs() const {
    if (const auto* p = std::get_if<std::vector<WindowPair>>(&data_)) return *p;
    throw ConfigError("average-only sampling scheme has no window pairs; use avg_samples");
}

std::vector<HsOperator> SamplingScheme::average_operators() const {
    if (const auto* q = std::get_if<std::vector<HsOperator>>(&data_)) return *q;
    std::vector<HsOperator> out;
    for (const auto& p : std::get<std::vector<WindowPair>>(data_)) out.push_back(rank_one(p.g_tilde, p.g));
    return out;
}

// --- samples ---------------------------------------------------------------

namespace {

void require_modulus(int got, const Lattice& lattice, const char* op) {
    if (got != lattice.modulus()) throw ConfigError(std::string(op) + ": size does not match the lattice modulus");
}

}  // namespace

SampleSet diag_channel_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice) {
    const auto& pairs = scheme.pairs();
    require_modulus(T.size(), *lattice, "diag_channel_samples");
    require_modulus(scheme.modulus(), *lattice, "diag_channel_samples");
    const PhaseSpace& space = lattice->space();
    SampleSet out(pairs.size(), LatticeSeq(lattice));
    for (int i = 0; i < lattice->size(); ++i) {
        const HsOperator moved = op_translate(space.neg((*lattice)[i]), T);
        for (size_t m = 0; m < pairs.size(); ++m) {
            out[m][i] = inner(moved.apply(pairs[m].g), pairs[m].g_tilde);
        }
    }
    return out;
}

SampleSet avg_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice) {
    require_modulus(T.size(), *lattice, "avg_samples");
    require_modulus(scheme.modulus(), *lattice, "avg_samples");
    const auto Q = scheme.average_operators();
    SampleSet out(Q.size(), LatticeSeq(lattice));
    for (size_t m = 0; m < Q.size(); ++m) {
        for (int i = 0; i < lattice->size(); ++i) out[m][i] = hs_inner(T, op_translate((*lattice)[i], Q[m]));
    }
    return out;
}

SampleSet take_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice) {
    return scheme.has_windows() ? diag_channel_samples(T, scheme, lattice) : avg_samples(T, scheme, lattice);
}

Eigen::MatrixXcd channel_matrix(const HsOperator& H, const Signal& g, const Signal& g_tilde,
                                const Lattice& lattice) {
    require_modulus(H.size(), lattice, "channel_matrix");
    const int n = lattice.size();
    std::vector<Signal> received;
    std::vector<Signal> probes;
    received.reserve(static_cast<size_t>(n));
    probes.reserve(static_cast<size_t>(n));
    for (const auto& mu : lattice.elements()) {
        received.push_back(H.apply(tf_shift(mu, g)));
        probes.push_back(tf_shift(mu, g_tilde));
    }
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = inner(received[static_cast<size_t>(j)], probes[static_cast<size_t>(i)]);
    }
    return A;
}

// --- cross sequences and transfer matrix -----------------------------------

CrossSequences::CrossSequences(int rows, int cols, const LatticePtr& lattice)
    : rows_(rows), cols_(cols), lattice_(lattice), entries_(static_cast<size_t>(rows * cols), LatticeSeq(lattice)) {}

CrossSequences cross_seq(const GeneratorSystem& system, const SamplingScheme& scheme) {
    const int M = scheme.count();
    const int N = system.count();
    CrossSequences A(M, N, system.lattice_ptr());
    for (int n = 0; n < N; ++n) {
        const SampleSet s = take_samples(system[n], scheme, system.lattice_ptr());
        for (int m = 0; m < M; ++m) A(m, n) = s[static_cast<size_t>(m)];
    }
    return A;
}

TransferMatrix transfer_matrix(const CrossSequences& A) {
    TransferMatrix out{dual_transversal(A.lattice_ptr()), {}, A.rows(), A.cols()};
    out.fibers.assign(static_cast<size_t>(out.transversal.size()), Eigen::MatrixXcd::Zero(A.rows(), A.cols()));
    for (int m = 0; m < A.rows(); ++m) {
        for (int n = 0; n < A.cols(); ++n) {
            const auto hat = symp_fourier(A(m, n), out.transversal);
            for (size_t k = 0; k < hat.size(); ++k) out.fibers[k](m, n) = hat[k];
        }
    }
    return out;
}

Eigen::MatrixXcd transfer_fiber_at(const CrossSequences& A, PhasePoint xi) {
    Eigen::MatrixXcd out(A.rows(), A.cols());
    for (int m = 0; m < A.rows(); ++m) {
        for (int n = 0; n < A.cols(); ++n) out(m, n) = symp_fourier_at(A(m, n), xi);
    }
    return out;
}

// --- frame bounds and duals --------------------------------------------------

FrameBounds frame_bounds(const TransferMatrix& A) {
    FrameBounds out;
    std::vector<double> smallest;
    double largest = 0.0;
    for (const auto& F : A.fibers) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(F);
        const auto& sv = svd.singularValues();
        largest = std::max(largest, sv.size() > 0 ? sv(0) : 0.0);
        // Fewer rows than columns: A^* A has N - M zero eigenvalues.
        smallest.push_back(A.rows < A.cols || sv.size() == 0 ? 0.0 : sv(sv.size() - 1));
    }
    out.beta = largest * largest;
    double lo = smallest.empty() ? 0.0 : *std::min_element(smallest.begin(), smallest.end());
    if (lo <= kRankTolerance * largest) lo = 0.0;
    out.alpha = lo * lo;

    if (!std::isfinite(out.alpha) || !std::isfinite(out.beta)) {
        out.diagnostic = "non-finite values in the transfer matrix";
        out.alpha = std::numeric_limits<double>::quiet_NaN();
    } else if (A.rows < A.cols) {
        std::ostringstream msg;
        msg << "rank deficient: M<N (M = " << A.rows << ", N = " << A.cols << ")";
        out.diagnostic = msg.str();
        out.alpha = 0.0;
    } else if (out.alpha == 0.0) {
        out.diagnostic = "transfer matrix loses rank on at least one fiber";
    }
    return out;
}

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& A, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

DualFibers dual_left_inverse(const TransferMatrix& A, const std::vector<Eigen::MatrixXcd>* C) {
    const FrameBounds fb = frame_bounds(A);
    if (!fb.is_frame()) {
        throw NotAFrame("dual_left_inverse: " + fb.diagnostic, fb.alpha, fb.beta);
    }
    if (C && C->size() != A.fibers.size()) {
        throw ConfigError("dual_left_inverse: need one C matrix per fiber");
    }
    DualFibers out;
    out.reserve(A.fibers.size());
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(A.rows, A.rows);
    for (size_t k = 0; k < A.fibers.size(); ++k) {
        Eigen::MatrixXcd B = pseudo_inverse(A.fibers[k]);
        if (C) {
            const auto& Ck = (*C)[k];
            if (Ck.rows() != A.cols || Ck.cols() != A.rows) {
                throw ConfigError("dual_left_inverse: C fibers must be N x M");
            }
            B += Ck * (I - A.fibers[k] * B);
        }
        out.push_back(std::move(B));
    }
    return out;
}

// --- reconstruction ----------------------------------------------------------

ReconstructionKit assemble_kit(const GeneratorSystem& system, const TransferMatrix& A, const FrameBounds& bounds,
                               DualFibers dual) {
    if (dual.size() != A.fibers.size()) throw ConfigError("assemble_kit: dual fiber count mismatch");
    ReconstructionKit kit;
    kit.lattice = system.lattice_ptr();
    kit.alpha = bounds.alpha;
    kit.beta = bounds.beta;
    kit.N = A.cols;
    kit.M = A.rows;
    kit.dual = std::move(dual);

    std::vector<cplx> column(kit.dual.size());
    for (int n = 0; n < kit.N; ++n) {
        for (int m = 0; m < kit.M; ++m) {
            for (size_t k = 0; k < kit.dual.size(); ++k) column[k] = kit.dual[k](n, m);
            kit.b.push_back(inv_symp_fourier(column, A.transversal));
        }
    }
    for (int m = 0; m < kit.M; ++m) {
        CoefArray bm;
        for (int n = 0; n < kit.N; ++n) bm.push_back(kit.b_at(n, m));
        kit.recon_ops.push_back(synthesize(system, bm));
    }
    return kit;
}

ReconstructionKit reconstruction_kit(const GeneratorSystem& system, const SamplingScheme& scheme,
                                     const std::vector<Eigen::MatrixXcd>* C) {
    const RieszReport rr = riesz_check(system);
    if (!rr.is_riesz) {
        throw NotRiesz("reconstruction_kit: generator system is not Riesz (" + rr.diagnostic + ")", rr.lower,
                       rr.upper);
    }
    const TransferMatrix A = transfer_matrix(cross_seq(system, scheme));
    const FrameBounds fb = frame_bounds(A);
    if (!fb.is_frame()) throw NotAFrame("reconstruction_kit: " + fb.diagnostic, fb.alpha, fb.beta);
    return assemble_kit(system, A, fb, dual_left_inverse(A, C));
}

HsOperator reconstruct(const SampleSet& samples, const ReconstructionKit& kit) {
    if (static_cast<int>(samples.size()) != kit.M) throw ConfigError("reconstruct: channel count mismatch");
    const Lattice& lat = *kit.lattice;
    HsOperator out(lat.modulus());
    for (int m = 0; m < kit.M; ++m) {
        const LatticeSeq& s = samples[static_cast<size_t>(m)];
        if (!s.lattice().same_elements(lat)) throw ConfigError("reconstruct: samples are not on the kit lattice");
        for (int i = 0; i < lat.size(); ++i) {
            if (s[i] == cplx{}) continue;
            out.kernel() += s[i] * op_translate(lat[i], kit.recon_ops[static_cast<size_t>(m)]).kernel();
        }
    }
    return out;
}

CoefArray coefficient_frame_expansion(const SampleSet& samples, const ReconstructionKit& kit) {
    if (static_cast<int>(samples.size()) != kit.M) {
        throw ConfigError("coefficient_frame_expansion: channel count mismatch");
    }
    CoefArray c;
    for (int n = 0; n < kit.N; ++n) {
        LatticeSeq cn(kit.lattice);
        for (int m = 0; m < kit.M; ++m) cn += lattice_convolve(samples[static_cast<size_t>(m)], kit.b_at(n, m));
        c.push_back(std::move(cn));
    }
    return c;
}

// --- sub-lattices --------------------------------------------------------------

InflatedSystem sublattice_inflate(const GeneratorSystem& system, const LatticePtr& sublattice) {
    const Lattice& lat = system.lattice();
    if (!sublattice->is_subgroup_of(lat)) {
        throw ConfigError("sublattice_inflate: the sub-lattice is not contained in the system lattice");
    }
    const PhaseSpace& space = lat.space();
    // Canonical transversal of Lambda' in Lambda: smallest member of each coset.
    std::vector<char> covered(static_cast<size_t>(lat.size()), 0);
    std::vector<PhasePoint> reps;
    for (int i = 0; i < lat.size(); ++i) {
        if (covered[static_cast<size_t>(i)]) continue;
        reps.push_back(lat[i]);
        for (const auto& mu : sublattice->elements()) {
            covered[static_cast<size_t>(lat.require_index(space.add(lat[i], mu)))] = 1;
        }
    }
    std::vector<HsOperator> gens;
    for (const auto& S : system.generators()) {
        for (const auto& r : reps) gens.push_back(op_translate(r, S));
    }
    return InflatedSystem{GeneratorSystem(sublattice, std::move(gens)), std::move(reps), system.count()};
}

CoefArray inflate_coefficients(const CoefArray& c, const InflatedSystem& inflated) {
    if (static_cast<int>(c.size()) != inflated.base_count) {
        throw ConfigError("inflate_coefficients: need one sequence per original generator");
    }
    const Lattice& sub = inflated.system.lattice();
    const PhaseSpace& space = sub.space();
    CoefArray out;
    for (const auto& cn : c) {
        for (const auto& r : inflated.representatives) {
            LatticeSeq cnl(inflated.system.lattice_ptr());
            for (int j = 0; j < sub.size(); ++j) cnl[j] = cn.at(space.add(r, sub[j]));
            out.push_back(std::move(cnl));
        }
    }
    return out;
}

PhaseFn berezin(const HsOperator& T, const Signal& g, const Signal& g_tilde) {
    const int L = T.size();
    PhaseFn out(L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            const PhasePoint z{x, w};
            out(x, w) = inner(T.apply(tf_shift(z, g)), tf_shift(z, g_tilde));
        }
    }
    return out;
}

}  // namespace opsis
