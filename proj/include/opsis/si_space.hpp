#ifndef OPSIS_SI_SPACE_HPP
#define OPSIS_SI_SPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "opsis/hs_ops.hpp"
#include "opsis/phase_space.hpp"

namespace opsis {

/// Lattice plus ordered generators S_1..S_N spanning
/// V = span{ alpha_lambda(S_n) : lambda in Lambda, n = 1..N }.
class GeneratorSystem {
public:
    GeneratorSystem(LatticePtr lattice, std::vector<HsOperator> generators);

    const Lattice& lattice() const noexcept { return *lattice_; }
    const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
    const std::vector<HsOperator>& generators() const noexcept { return generators_; }
    const HsOperator& operator[](int n) const { return generators_[static_cast<size_t>(n)]; }
    int count() const noexcept { return static_cast<int>(generators_.size()); }
    int modulus() const noexcept { return lattice_->modulus(); }

    /// N * |Lambda| > L^2: the translates cannot be independent.
    bool overdetermined() const noexcept {
        return count() * lattice_->size() > lattice_->space().size();
    }

private:
    LatticePtr lattice_;
    std::vector<HsOperator> generators_;
};

/// One lattice sequence per generator.
using CoefArray = std::vector<LatticeSeq>;

CoefArray zero_coefficients(const GeneratorSystem& system);

enum class RieszRoute { GramFibers, FourierWigner };

struct RieszReport {
    bool is_riesz = false;
    double lower = 0.0;
    double upper = 0.0;
    RieszRoute route = RieszRoute::GramFibers;
    std::string diagnostic;
};

const char* route_name(RieszRoute route);

/// sum_n sum_lambda c_n(lambda) alpha_lambda(S_n).
HsOperator synthesize(const GeneratorSystem& system, const CoefArray& c);

/// r_{n,n'}(lambda) = <S_n, alpha_lambda(S_n')>_HS, row-major n * N + n'.
std::vector<LatticeSeq> correlations(const GeneratorSystem& system);

/// N x N matrices, one per transversal point.
struct FiberMatrices {
    DualTransversal transversal;
    std::vector<Eigen::MatrixXcd> fibers;
};

/// G(xi)_{n,n'} = sum_lambda r_{n,n'}(lambda) e^{2 pi i sigma(lambda, xi) / L}.
FiberMatrices gram_fibers(const GeneratorSystem& system);

struct BruteGram {
    Eigen::MatrixXcd gram;
    Eigen::VectorXd eigenvalues;  // ascending
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

inline constexpr int kBruteGramLimit = 4096;

/// Dense Gram matrix of {alpha_lambda(S_n)}, column index n * |Lambda| + i.
/// Throws SizeOverflow above kBruteGramLimit columns.
BruteGram brute_gram(const GeneratorSystem& system);

/// sum over the annihilator of F(S)(xi + u) F(S)(xi + u)^*, raw Fourier-Wigner
/// vectors F(S) = (F(S_1), ..., F(S_N)). Equals (L / |Lambda|) gram fiber at xi.
Eigen::MatrixXcd gw_matrix(const GeneratorSystem& system, PhasePoint xi);

/// Bounds m, M over the fibers. Without `tol` the relative default
/// 1e-10 * M applies; a lower bound at or under tol is reported as 0.
/// The Fourier-Wigner route is rescaled by |Lambda| / L so both routes agree.
RieszReport riesz_check(const GeneratorSystem& system, std::optional<double> tol = std::nullopt,
                        RieszRoute route = RieszRoute::GramFibers);

/// Coefficients of the orthogonal projection of T onto V, by fiber-wise
/// solves of the Gram system. Throws NotRiesz when the system is not Riesz.
CoefArray coefficients(const GeneratorSystem& system, const HsOperator& T);

}  // namespace opsis

#endif  // OPSIS_SI_SPACE_HPP
