#ifndef OPSIS_RANDOM_HPP
#define OPSIS_RANDOM_HPP

/*
 * Portable seeded draws. The engine is std::mt19937_64, whose output
 * sequence is fixed by the C++ standard; doubles are built from the top 53
 * bits ((x >> 11) * 2^-53), so every implementation reproduces the same
 * values. Complex draws take the real part first, then the imaginary part,
 * each uniform on [-1, 1). Containers are filled in storage order
 * (signals by t, kernels column-major, lattice sequences in lattice order).
 */

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "opsis/hs_ops.hpp"
#include "opsis/phase_space.hpp"
#include "opsis/si_space.hpp"
#include "opsis/timefreq.hpp"

namespace opsis {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Real and imaginary parts uniform on [-1, 1).
    cplx complex_uniform() {
        const double re = 2.0 * uniform() - 1.0;
        const double im = 2.0 * uniform() - 1.0;
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
};

Signal random_signal(int L, Rng& rng);
HsOperator random_operator(int L, Rng& rng);
LatticeSeq random_seq(const LatticePtr& lattice, Rng& rng);
CoefArray random_coefficients(const GeneratorSystem& system, Rng& rng);
Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng);

}  // namespace opsis

#endif  // OPSIS_RANDOM_HPP
