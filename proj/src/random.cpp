#include "opsis/random.hpp"

namespace opsis {

Signal random_signal(int L, Rng& rng) {
    Signal s(L);
    for (int t = 0; t < L; ++t) s(t) = rng.complex_uniform();
    return s;
}

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_uniform();
    }
    return m;
}

HsOperator random_operator(int L, Rng& rng) { return HsOperator(random_matrix(L, L, rng)); }

LatticeSeq random_seq(const LatticePtr& lattice, Rng& rng) {
    LatticeSeq c(lattice);
    for (int i = 0; i < c.size(); ++i) c[i] = rng.complex_uniform();
    return c;
}

CoefArray random_coefficients(const GeneratorSystem& system, Rng& rng) {
    CoefArray c;
    for (int n = 0; n < system.count(); ++n) c.push_back(random_seq(system.lattice_ptr(), rng));
    return c;
}

}  // namespace opsis
