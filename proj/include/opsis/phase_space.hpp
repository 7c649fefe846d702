#ifndef OPSIS_PHASE_SPACE_HPP
#define OPSIS_PHASE_SPACE_HPP

/*
 * Finite phase space Z_L x Z_L: lattices (subgroups), annihilators under the
 * symplectic pairing, dual transversals, symplectic Fourier series and
 * lattice convolution.
 *
 * Every point set is kept in lexicographic (x, w) order so results are
 * reproducible bit for bit.
 */

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "opsis/types.hpp"

namespace opsis {

/// A point z = (x, w) of Z_L x Z_L: x is the time shift, w the frequency shift.
struct PhasePoint {
    int x = 0;
    int w = 0;

    auto operator<=>(const PhasePoint&) const = default;
};

class PhaseSpace {
public:
    explicit PhaseSpace(int modulus);

    int modulus() const noexcept { return modulus_; }
    /// Number of points, L^2.
    int size() const noexcept { return modulus_ * modulus_; }

    PhasePoint point(long long x, long long w) const { return {mod(x, modulus_), mod(w, modulus_)}; }
    PhasePoint add(PhasePoint a, PhasePoint b) const { return point(a.x + b.x, a.w + b.w); }
    PhasePoint sub(PhasePoint a, PhasePoint b) const { return point(a.x - b.x, a.w - b.w); }
    PhasePoint neg(PhasePoint a) const { return point(-a.x, -a.w); }

    bool contains(PhasePoint z) const noexcept {
        return z.x >= 0 && z.x < modulus_ && z.w >= 0 && z.w < modulus_;
    }
    /// Row-major linear index x * L + w.
    int linear(PhasePoint z) const noexcept { return z.x * modulus_ + z.w; }
    PhasePoint from_linear(int k) const noexcept { return {k / modulus_, k % modulus_}; }

    bool operator==(const PhaseSpace&) const = default;

private:
    int modulus_;
};

/// sigma(z, z') = w * x' - w' * x (mod L). Throws ConfigError when either
/// point is not a residue pair mod L.
int symplectic_form(PhasePoint z, PhasePoint zp, int L);

/// Lambda = aZ_L x bZ_L.
struct SeparableDescriptor {
    int a = 1;
    int b = 1;
};

/// Subgroup generated by a finite list of points.
struct GeneratorDescriptor {
    std::vector<PhasePoint> generators;
};

using LatticeDescriptor = std::variant<SeparableDescriptor, GeneratorDescriptor>;

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Subgroup of Z_L x Z_L. Immutable; shared through LatticePtr.
class Lattice {
public:
    const PhaseSpace& space() const noexcept { return space_; }
    int modulus() const noexcept { return space_.modulus(); }
    int size() const noexcept { return static_cast<int>(elements_.size()); }
    const std::vector<PhasePoint>& elements() const noexcept { return elements_; }
    const PhasePoint& operator[](int i) const { return elements_[static_cast<size_t>(i)]; }
    const LatticeDescriptor& descriptor() const noexcept { return descriptor_; }

    bool contains(PhasePoint z) const;
    /// Position of z in the canonical element list.
    std::optional<int> index_of(PhasePoint z) const;
    /// Like index_of, but z must be an element.
    int require_index(PhasePoint z) const;

    /// True when both lattices hold the same element set.
    bool same_elements(const Lattice& other) const;
    /// True when every element of this lattice lies in `outer`.
    bool is_subgroup_of(const Lattice& other) const;

    /// Builds a lattice from an explicit, already closed point set.
    static LatticePtr from_points(PhaseSpace space, std::vector<PhasePoint> points,
                                  LatticeDescriptor descriptor);

private:
    Lattice(PhaseSpace space, std::vector<PhasePoint> elements, LatticeDescriptor descriptor);

    PhaseSpace space_;
    std::vector<PhasePoint> elements_;
    std::vector<int> index_;  // L^2 table, -1 when absent
    LatticeDescriptor descriptor_;
};

/// Enumerates the subgroup described by `descriptor`. Separable descriptors
/// need a | L and b | L; generators must lie in Z_L x Z_L.
LatticePtr build_lattice(const LatticeDescriptor& descriptor, PhaseSpace space);

/// Exhaustive pairing test over all L^2 candidates.
LatticePtr annihilator(const Lattice& lattice);

/// Finite sequence c in l^2(Lambda), stored in the lattice's canonical order.
class LatticeSeq {
public:
    explicit LatticeSeq(LatticePtr lattice);
    LatticeSeq(LatticePtr lattice, std::vector<cplx> values);

    static LatticeSeq delta(LatticePtr lattice, PhasePoint at);

    const Lattice& lattice() const noexcept { return *lattice_; }
    const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
    int size() const noexcept { return static_cast<int>(values_.size()); }

    cplx& operator[](int i) { return values_[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    cplx at(PhasePoint z) const { return values_[static_cast<size_t>(lattice_->require_index(z))]; }

    std::span<const cplx> values() const noexcept { return values_; }
    std::span<cplx> values() noexcept { return values_; }

    double norm_squared() const;

    LatticeSeq& operator+=(const LatticeSeq& other);
    LatticeSeq& operator*=(cplx s);
    friend LatticeSeq operator+(LatticeSeq a, const LatticeSeq& b) { return a += b; }
    friend LatticeSeq operator*(cplx s, LatticeSeq a) { return a *= s; }

private:
    LatticePtr lattice_;
    std::vector<cplx> values_;
};

/// One representative per coset of the annihilator, smallest in
/// lexicographic order. Finite stand-in for the dual group of Lambda.
class DualTransversal {
public:
    const Lattice& lattice() const noexcept { return *lattice_; }
    const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
    const Lattice& annihilator() const noexcept { return *annihilator_; }
    const LatticePtr& annihilator_ptr() const noexcept { return annihilator_; }
    const std::vector<PhasePoint>& points() const noexcept { return points_; }
    int size() const noexcept { return static_cast<int>(points_.size()); }
    const PhasePoint& operator[](int i) const { return points_[static_cast<size_t>(i)]; }

    /// Index of the representative whose coset contains z.
    int coset_of(PhasePoint z) const;

private:
    friend DualTransversal dual_transversal(LatticePtr lattice);

    LatticePtr lattice_;
    LatticePtr annihilator_;
    std::vector<PhasePoint> points_;
    std::vector<int> coset_;  // L^2 table: point -> representative index
};

DualTransversal dual_transversal(LatticePtr lattice);

/// F(c)(xi) = sum_lambda c(lambda) e^{2 pi i sigma(lambda, xi) / L}, evaluated
/// on every transversal point (same order as transversal.points()).
std::vector<cplx> symp_fourier(const LatticeSeq& c, const DualTransversal& transversal);

/// The same series evaluated at an arbitrary point of Z_L x Z_L.
cplx symp_fourier_at(const LatticeSeq& c, PhasePoint xi);

/// c(lambda) = |Lambda|^{-1} sum_xi F(xi) e^{-2 pi i sigma(lambda, xi) / L}.
LatticeSeq inv_symp_fourier(std::span<const cplx> values, const DualTransversal& transversal);

/// (c * d)(lambda) = sum_mu c(mu) d(lambda - mu), cyclic over Lambda.
LatticeSeq lattice_convolve(const LatticeSeq& c, const LatticeSeq& d);

}  // namespace opsis

#endif  // OPSIS_PHASE_SPACE_HPP
