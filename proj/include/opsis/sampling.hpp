#ifndef OPSIS_SAMPLING_HPP
#define OPSIS_SAMPLING_HPP

/*
 * Diagonal channel sampling and average sampling of operators in a
 * shift-invariant operator space, and the reconstruction machinery built on
 * the transfer matrix A^(xi) = [F(a_{m,n})(xi)].
 *
 * Pipeline: cross_seq -> transfer_matrix -> frame_bounds -> dual_left_inverse
 * -> reconstruction_kit -> reconstruct.
 */

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "opsis/hs_ops.hpp"
#include "opsis/phase_space.hpp"
#include "opsis/si_space.hpp"
#include "opsis/timefreq.hpp"

namespace opsis {

struct WindowPair {
    Signal g;
    Signal g_tilde;
};

/// Either M window pairs (g_m, g~_m) or M average operators Q_m.
class SamplingScheme {
public:
    static SamplingScheme windows(std::vector<WindowPair> pairs);
    static SamplingScheme average(std::vector<HsOperator> operators);

    bool has_windows() const noexcept { return std::holds_alternative<std::vector<WindowPair>>(data_); }
    int count() const noexcept;
    int modulus() const noexcept;

    /// Throws ConfigError for an average-only scheme.
    const std::vector<WindowPair>& pairs() const;
    /// Q_m, converting window pairs through Q_m = g~_m (x) g_m.
    std::vector<HsOperator> average_operators() const;
    SamplingScheme as_average() const { return average(average_operators()); }

private:
    explicit SamplingScheme(std::variant<std::vector<WindowPair>, std::vector<HsOperator>> data)
        : data_(std::move(data)) {}

    std::variant<std::vector<WindowPair>, std::vector<HsOperator>> data_;
};

/// One lattice sequence per channel m.
using SampleSet = std::vector<LatticeSeq>;

/// s_{T,m}(lambda) = <alpha_{-lambda}(T) g_m, g~_m>. Window schemes only.
SampleSet diag_channel_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice);

/// s_{T,m}(lambda) = <T, alpha_lambda(Q_m)>_HS.
SampleSet avg_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice);

/// Diagonal channel samples for window schemes, average samples otherwise.
SampleSet take_samples(const HsOperator& T, const SamplingScheme& scheme, const LatticePtr& lattice);

/// a_{lambda,mu} = <H pi(mu) g, pi(lambda) g~>, rows and columns in lattice order.
Eigen::MatrixXcd channel_matrix(const HsOperator& H, const Signal& g, const Signal& g_tilde,
                                const Lattice& lattice);

/// M x N matrix of lattice sequences.
class CrossSequences {
public:
    CrossSequences(int rows, int cols, const LatticePtr& lattice);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
    LatticeSeq& operator()(int m, int n) { return entries_[static_cast<size_t>(m * cols_ + n)]; }
    const LatticeSeq& operator()(int m, int n) const { return entries_[static_cast<size_t>(m * cols_ + n)]; }

private:
    int rows_;
    int cols_;
    LatticePtr lattice_;
    std::vector<LatticeSeq> entries_;
};

/// a_{m,n} = samples of generator S_n in channel m (window scheme), or
/// <S_n, alpha_lambda(Q_m)>_HS (average scheme).
CrossSequences cross_seq(const GeneratorSystem& system, const SamplingScheme& scheme);

/// M x N fibers A^(xi) over the dual transversal.
struct TransferMatrix {
    DualTransversal transversal;
    std::vector<Eigen::MatrixXcd> fibers;
    int rows = 0;  // M
    int cols = 0;  // N
};

TransferMatrix transfer_matrix(const CrossSequences& A);

/// A^(xi) at an arbitrary point of Z_L x Z_L, straight from the sequences.
Eigen::MatrixXcd transfer_fiber_at(const CrossSequences& A, PhasePoint xi);

struct FrameBounds {
    double alpha = 0.0;
    double beta = 0.0;
    std::string diagnostic;
    bool is_frame() const noexcept { return alpha > 0.0; }
};

inline constexpr double kRankTolerance = 1e-10;

/// alpha = min_xi lambda_min(A^* A), beta = max_xi lambda_max(A^* A).
/// Singular values at or below kRankTolerance * (largest singular value)
/// count as zero; M < N always yields alpha = 0.
FrameBounds frame_bounds(const TransferMatrix& A);

/// Moore-Penrose pseudoinverse by SVD, truncating singular values at or
/// below rel_tol * (largest singular value).
Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& A, double rel_tol = kRankTolerance);

using DualFibers = std::vector<Eigen::MatrixXcd>;

/// B^(xi) = A^(xi)^+ + C(xi) [I_M - A^(xi) A^(xi)^+]; C absent means C = 0.
/// Throws NotAFrame when the frame bounds fail.
DualFibers dual_left_inverse(const TransferMatrix& A, const std::vector<Eigen::MatrixXcd>* C = nullptr);

struct ReconstructionKit {
    LatticePtr lattice;
    double alpha = 0.0;
    double beta = 0.0;
    int N = 0;
    int M = 0;
    DualFibers dual;
    std::vector<LatticeSeq> b;          // b_{n,m}, index n * M + m
    std::vector<HsOperator> recon_ops;  // H_1..H_M

    const LatticeSeq& b_at(int n, int m) const { return b[static_cast<size_t>(n * M + m)]; }
};

/// Builds the kit from given dual fibers: b_{n,m} = inverse symplectic
/// Fourier series of B^_{n,m}; H_m = sum_n sum_lambda b_{n,m}(lambda) alpha_lambda(S_n).
ReconstructionKit assemble_kit(const GeneratorSystem& system, const TransferMatrix& A, const FrameBounds& bounds,
                               DualFibers dual);

/// Full construction. Throws NotRiesz or NotAFrame.
ReconstructionKit reconstruction_kit(const GeneratorSystem& system, const SamplingScheme& scheme,
                                     const std::vector<Eigen::MatrixXcd>* C = nullptr);

/// T = sum_m sum_lambda s_m(lambda) alpha_lambda(H_m).
HsOperator reconstruct(const SampleSet& samples, const ReconstructionKit& kit);

/// c_n = sum_m s_m * b_{n,m} (lattice convolution).
CoefArray coefficient_frame_expansion(const SampleSet& samples, const ReconstructionKit& kit);

/// System on a sub-lattice Lambda' with generators alpha_{lambda_l}(S_n),
/// stored at index n * index + l, lambda_l the canonical coset representatives.
struct InflatedSystem {
    GeneratorSystem system;
    std::vector<PhasePoint> representatives;
    int base_count = 0;
};

InflatedSystem sublattice_inflate(const GeneratorSystem& system, const LatticePtr& sublattice);

/// c_{nl}(mu) = c_n(lambda_l + mu).
CoefArray inflate_coefficients(const CoefArray& c, const InflatedSystem& inflated);

/// B(z) = <T pi(z) g, pi(z) g~> for every z.
PhaseFn berezin(const HsOperator& T, const Signal& g, const Signal& g_tilde);

}  // namespace opsis

#endif  // OPSIS_SAMPLING_HPP
