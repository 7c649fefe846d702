#include "doctest.h"

#include "opsis/random.hpp"
#include "opsis/sampling.hpp"
#include "oracles.hpp"

using namespace opsis;

namespace {

struct Setup {
    GeneratorSystem system;
    SamplingScheme scheme;
};

Setup random_setup(int L, SeparableDescriptor d, int N, int M, Rng& rng) {
    std::vector<HsOperator> gens;
    for (int n = 0; n < N; ++n) gens.push_back(random_operator(L, rng));
    std::vector<WindowPair> pairs;
    for (int m = 0; m < M; ++m) pairs.push_back({random_signal(L, rng), random_signal(L, rng)});
    return {GeneratorSystem(build_lattice(d, PhaseSpace(L)), std::move(gens)), SamplingScheme::windows(pairs)};
}

double max_dev(const SampleSet& a, const SampleSet& b) {
    double d = 0;
    for (size_t m = 0; m < a.size(); ++m) {
        for (int i = 0; i < a[m].size(); ++i) d = std::max(d, std::abs(a[m][i] - b[m][i]));
    }
    return d;
}

double total_norm(const std::vector<LatticeSeq>& s) {
    double n = 0;
    for (const auto& x : s) n += x.norm_squared();
    return n;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("diagonal channel samples") {
    Rng rng(1);
    const int L = 6;
    auto lat = build_lattice(SeparableDescriptor{2, 3}, PhaseSpace(L));
    const auto g = random_signal(L, rng), gt = random_signal(L, rng);
    const auto scheme = SamplingScheme::windows({{g, gt}});
    const auto T = random_operator(L, rng);
    const auto s = diag_channel_samples(T, scheme, lat);
    CHECK(std::abs(s[0].at({0, 0}) - inner(T.apply(g), gt)) < 1e-13);

    for (int i = 0; i < lat->size(); ++i) {
        const PhasePoint l = (*lat)[i];
        const PhasePoint minus{oracle::md(-l.x, L), oracle::md(-l.w, L)};
        const cplx a = oracle::dot(oracle::alpha(minus, T.kernel()) * g.vec(), gt.vec());
        const cplx b = oracle::window_sample(T.kernel(), g.vec(), gt.vec(), l);
        const cplx c = oracle::hs(T.kernel(), oracle::alpha(l, oracle::outer(gt.vec(), g.vec())));
        CHECK(std::abs(s[0][i] - a) < 1e-12);
        CHECK(std::abs(s[0][i] - b) < 1e-12);
        CHECK(std::abs(s[0][i] - c) < 1e-12);
    }
}

TEST_CASE("samples of a translated generator are shifted cross sequences") {
    Rng rng(2);
    auto st = random_setup(6, {2, 3}, 1, 2, rng);
    const auto& lat = st.system.lattice();
    const auto A = cross_seq(st.system, st.scheme);
    const PhasePoint mu{2, 3};
    const auto s = diag_channel_samples(op_translate(mu, st.system[0]), st.scheme, st.system.lattice_ptr());
    for (int m = 0; m < 2; ++m) {
        for (int i = 0; i < lat.size(); ++i) {
            const PhasePoint back{oracle::md(lat[i].x - mu.x, 6), oracle::md(lat[i].w - mu.w, 6)};
            CHECK(std::abs(s[static_cast<size_t>(m)][i] - A(m, 0).at(back)) < 1e-12);
        }
    }
}

TEST_CASE("average sampling") {
    Rng rng(3);
    const int L = 5;
    auto lat = build_lattice(SeparableDescriptor{1, 5}, PhaseSpace(L));
    const auto g = random_signal(L, rng), gt = random_signal(L, rng);
    const auto win = SamplingScheme::windows({{g, gt}});
    const auto T = random_operator(L, rng);
    CHECK(max_dev(diag_channel_samples(T, win, lat), avg_samples(T, win.as_average(), lat)) < 1e-12);
    CHECK(max_dev(diag_channel_samples(T, win, lat), avg_samples(T, win, lat)) < 1e-12);

    const auto Q = random_operator(L, rng);
    auto origin = build_lattice(SeparableDescriptor{5, 5}, PhaseSpace(L));
    const auto s = avg_samples(Q, SamplingScheme::average({Q}), origin);
    CHECK(std::abs(s[0][0] - Q.hs_norm() * Q.hs_norm()) < 1e-12);

    const auto U = random_operator(L, rng);
    const auto avg = SamplingScheme::average({Q});
    const auto sT = avg_samples(T, avg, lat), sU = avg_samples(U, avg, lat);
    const auto sTU = avg_samples(T + cplx(0, 2) * U, avg, lat);
    for (int i = 0; i < lat->size(); ++i) CHECK(std::abs(sTU[0][i] - sT[0][i] - cplx(0, 2) * sU[0][i]) < 1e-12);

    CHECK_THROWS_AS(avg.pairs(), ConfigError);
    CHECK_THROWS_AS(diag_channel_samples(T, avg, lat), ConfigError);
}

TEST_CASE("channel matrix") {
    Rng rng(4);
    const int L = 6;
    auto lat = build_lattice(SeparableDescriptor{2, 2}, PhaseSpace(L));
    const auto g = random_signal(L, rng), gt = random_signal(L, rng);
    const auto I = channel_matrix(HsOperator::identity(L), g, gt, *lat);
    REQUIRE(I.rows() == lat->size());
    for (int i = 0; i < lat->size(); ++i) {
        for (int j = 0; j < lat->size(); ++j) {
            const cplx expect = oracle::dot(oracle::pi((*lat)[j], L) * g.vec(), oracle::pi((*lat)[i], L) * gt.vec());
            CHECK(std::abs(I(i, j) - expect) < 1e-12);
        }
    }

    const auto H = random_operator(L, rng);
    const auto A = channel_matrix(H, g, gt, *lat);
    const auto s = diag_channel_samples(H, SamplingScheme::windows({{g, gt}}), lat);
    for (int i = 0; i < lat->size(); ++i) CHECK(std::abs(A(i, i) - s[0][i]) < 1e-12);

    // Transmitting data through H and demodulating against the shifted g~.
    Eigen::VectorXcd d(lat->size());
    for (int i = 0; i < lat->size(); ++i) d(i) = rng.complex_uniform();
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(L);
    for (int i = 0; i < lat->size(); ++i) x += d(i) * (oracle::pi((*lat)[i], L) * g.vec());
    const Eigen::VectorXcd y = H.kernel() * x;
    const Eigen::VectorXcd pred = A * d;
    for (int i = 0; i < lat->size(); ++i) {
        CHECK(std::abs(oracle::dot(y, oracle::pi((*lat)[i], L) * gt.vec()) - pred(i)) < 1e-12);
    }
}

TEST_CASE("cross sequences for rank-one generators") {
    Rng rng(5);
    const int L = 8;
    auto lat = build_lattice(SeparableDescriptor{2, 4}, PhaseSpace(L));
    const auto phi = random_signal(L, rng), phit = random_signal(L, rng);
    const auto g = random_signal(L, rng), gt = random_signal(L, rng);
    const GeneratorSystem sys(lat, {rank_one(phi, phit)});
    const auto A = cross_seq(sys, SamplingScheme::windows({{g, gt}}));
    for (int i = 0; i < lat->size(); ++i) {
        const PhasePoint l = (*lat)[i];
        const cplx expect = std::conj(oracle::stft(phit.vec(), g.vec(), l)) * oracle::stft(phi.vec(), gt.vec(), l);
        CHECK(std::abs(A(0, 0)[i] - expect) < 1e-12);
    }

    // A generator orthogonal to every translate of the sampling operator.
    const auto d0 = Signal::delta(L, 0), d1 = Signal::delta(L, 1);
    auto xs = build_lattice(SeparableDescriptor{2, L}, PhaseSpace(L));
    const auto Z = cross_seq(GeneratorSystem(xs, {rank_one(d1, d1)}), SamplingScheme::windows({{d0, d0}}));
    for (int i = 0; i < xs->size(); ++i) CHECK(std::abs(Z(0, 0)[i]) < 1e-15);
}

TEST_CASE("samples are lattice convolutions of the coefficients") {
    Rng rng(6);
    for (int trial = 0; trial < 6; ++trial) {
        auto st = random_setup(trial % 2 ? 6 : 8, trial % 2 ? SeparableDescriptor{2, 3} : SeparableDescriptor{2, 4},
                               1 + trial % 3, 1 + trial % 4, rng);
        const auto A = cross_seq(st.system, st.scheme);
        const auto c = random_coefficients(st.system, rng);
        const auto s = diag_channel_samples(synthesize(st.system, c), st.scheme, st.system.lattice_ptr());
        for (int m = 0; m < A.rows(); ++m) {
            LatticeSeq acc(st.system.lattice_ptr());
            for (int n = 0; n < A.cols(); ++n) {
                std::vector<cplx> a(A(m, n).values().begin(), A(m, n).values().end());
                std::vector<cplx> cn(c[static_cast<size_t>(n)].values().begin(), c[static_cast<size_t>(n)].values().end());
                acc += LatticeSeq(st.system.lattice_ptr(),
                                  oracle::lattice_conv(a, cn, st.system.lattice().elements(), st.system.modulus()));
            }
            for (int i = 0; i < acc.size(); ++i) CHECK(std::abs(acc[i] - s[static_cast<size_t>(m)][i]) < 1e-11);
        }
    }
}

TEST_CASE("transfer matrix examples") {
    const int L = 4;
    auto full = build_lattice(SeparableDescriptor{1, 1}, PhaseSpace(L));
    const auto d0 = Signal::delta(L, 0);
    const GeneratorSystem sys(full, {rank_one(d0, d0)});
    const auto A = cross_seq(sys, SamplingScheme::windows({{d0, d0}}));
    for (int i = 0; i < full->size(); ++i) CHECK(std::abs(A(0, 0)[i] - ((*full)[i].x == 0 ? 1.0 : 0.0)) < 1e-14);
    const auto T = transfer_matrix(A);
    for (int k = 0; k < T.transversal.size(); ++k) {
        CHECK(std::abs(T.fibers[static_cast<size_t>(k)](0, 0) - (T.transversal[k].x == 0 ? 4.0 : 0.0)) < 1e-13);
    }
    const auto fb = frame_bounds(T);
    CHECK(fb.alpha == 0.0);
    CHECK_FALSE(fb.is_frame());

    auto lat = build_lattice(SeparableDescriptor{2, 2}, PhaseSpace(L));
    CrossSequences D(1, 1, lat);
    D(0, 0) = LatticeSeq::delta(lat, {0, 0});
    const auto TD = transfer_matrix(D);
    for (const auto& F : TD.fibers) CHECK(std::abs(F(0, 0) - 1.0) < 1e-14);
    const auto fd = frame_bounds(TD);
    CHECK(std::abs(fd.alpha - 1.0) < 1e-14);
    CHECK(std::abs(fd.beta - 1.0) < 1e-14);
}

TEST_CASE("transfer matrix is constant on annihilator cosets") {
    Rng rng(7);
    auto st = random_setup(6, {2, 3}, 2, 3, rng);
    const auto A = cross_seq(st.system, st.scheme);
    const auto T = transfer_matrix(A);
    const auto& tr = T.transversal;
    for (int x = 0; x < 6; ++x) {
        for (int w = 0; w < 6; ++w) {
            const auto F = transfer_fiber_at(A, {x, w});
            CHECK((F - T.fibers[static_cast<size_t>(tr.coset_of({x, w}))]).norm() < 1e-12);
        }
    }
}

TEST_CASE("frame sandwich and norm equivalence") {
    Rng rng(8);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const int N = 1 + trial % 2;
        auto st = random_setup(8, {2, 4}, N, N + trial % 3, rng);
        const auto A = transfer_matrix(cross_seq(st.system, st.scheme));
        const auto fb = frame_bounds(A);
        const auto rr = riesz_check(st.system);
        const auto c = random_coefficients(st.system, rng);
        const auto T = synthesize(st.system, c);
        const double sn = total_norm(diag_channel_samples(T, st.scheme, st.system.lattice_ptr()));
        const double cn = total_norm(c);
        CHECK(fb.alpha * cn <= sn + 1e-9 * sn);
        CHECK(sn <= fb.beta * cn + 1e-9 * sn);
        if (rr.is_riesz && fb.is_frame()) {
            const double tn = T.hs_norm() * T.hs_norm();
            CHECK(fb.alpha / rr.upper * tn <= sn + 1e-9 * sn);
            CHECK(sn <= fb.beta / rr.lower * tn + 1e-9 * sn);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("fewer channels than generators is never a frame") {
    Rng rng(9);
    for (int trial = 0; trial < 4; ++trial) {
        auto st = random_setup(6, {2, 3}, 2 + trial % 2, 1 + trial % 2, rng);
        const auto fb = frame_bounds(transfer_matrix(cross_seq(st.system, st.scheme)));
        CHECK(fb.alpha == 0.0);
        CHECK(fb.diagnostic.find("rank deficient: M<N") != std::string::npos);
        CHECK_THROWS_AS(reconstruction_kit(st.system, st.scheme), NotAFrame);
    }
}

TEST_CASE("pseudo-inverse and duals") {
    Rng rng(10);
    const auto A = random_matrix(3, 3, rng);
    CHECK((pseudo_inverse(A) - A.inverse()).norm() < 1e-10);
    const auto B = random_matrix(4, 2, rng);
    const Eigen::MatrixXcd Bp = pseudo_inverse(B);
    CHECK((Bp * B - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
    CHECK((B * Bp * B - B).norm() < 1e-12);

    auto st = random_setup(6, {2, 3}, 1, 1, rng);
    const auto T = transfer_matrix(cross_seq(st.system, st.scheme));
    const auto dual = dual_left_inverse(T);
    for (size_t k = 0; k < T.fibers.size(); ++k) CHECK(std::abs(dual[k](0, 0) - 1.0 / T.fibers[k](0, 0)) < 1e-10);

    auto st2 = random_setup(6, {2, 3}, 2, 4, rng);
    const auto T2 = transfer_matrix(cross_seq(st2.system, st2.scheme));
    std::vector<Eigen::MatrixXcd> C;
    for (size_t k = 0; k < T2.fibers.size(); ++k) C.push_back(random_matrix(2, 4, rng));
    for (const auto& D : {dual_left_inverse(T2), dual_left_inverse(T2, &C)}) {
        for (size_t k = 0; k < T2.fibers.size(); ++k) {
            CHECK((D[k] * T2.fibers[k] - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-10);
        }
    }
    std::vector<Eigen::MatrixXcd> wrong(T2.fibers.size(), Eigen::MatrixXcd::Zero(4, 2));
    CHECK_THROWS_AS(dual_left_inverse(T2, &wrong), ConfigError);
}

TEST_CASE("perfect reconstruction") {
    Rng rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        const int N = 1 + trial % 3;
        auto st = random_setup(trial % 2 ? 6 : 8, trial % 2 ? SeparableDescriptor{2, 3} : SeparableDescriptor{2, 4}, N,
                               N + trial % 2, rng);
        if (!riesz_check(st.system).is_riesz) continue;
        const auto kit = reconstruction_kit(st.system, st.scheme);
        const auto c = random_coefficients(st.system, rng);
        const auto T = synthesize(st.system, c);
        const auto s = take_samples(T, st.scheme, st.system.lattice_ptr());
        const auto Tr = reconstruct(s, kit);
        CHECK((T - Tr).hs_norm() / T.hs_norm() < 1e-9);

        const auto f = random_signal(T.size(), rng);
        CHECK((T.apply(f).vec() - Tr.apply(f).vec()).norm() < 1e-9 * T.apply(f).norm());

        const auto cf = coefficient_frame_expansion(s, kit);
        const auto cc = coefficients(st.system, T);
        for (size_t n = 0; n < c.size(); ++n) {
            for (int i = 0; i < c[n].size(); ++i) {
                CHECK(std::abs(cf[n][i] - c[n][i]) < 1e-9);
                CHECK(std::abs(cc[n][i] - c[n][i]) < 1e-9);
            }
        }

        const auto zero = reconstruct(SampleSet(s.size(), LatticeSeq(st.system.lattice_ptr())), kit);
        CHECK(zero.hs_norm() == 0.0);

        // Delta samples in channel m give column m of b.
        const int m = kit.M - 1;
        SampleSet delta(s.size(), LatticeSeq(st.system.lattice_ptr()));
        delta[static_cast<size_t>(m)] = LatticeSeq::delta(st.system.lattice_ptr(), {0, 0});
        const auto cd = coefficient_frame_expansion(delta, kit);
        for (int n = 0; n < kit.N; ++n) {
            for (int i = 0; i < cd[static_cast<size_t>(n)].size(); ++i) {
                CHECK(std::abs(cd[static_cast<size_t>(n)][i] - kit.b_at(n, m)[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("interpolation for square systems") {
    Rng rng(12);
    int done = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const int N = 1 + trial % 2;
        auto st = random_setup(8, {2, 4}, N, N, rng);
        if (!riesz_check(st.system).is_riesz) continue;
        const auto kit = reconstruction_kit(st.system, st.scheme);
        for (int m = 0; m < N; ++m) {
            const auto s = diag_channel_samples(kit.recon_ops[static_cast<size_t>(m)], st.scheme, st.system.lattice_ptr());
            for (int n = 0; n < N; ++n) {
                for (int i = 0; i < s[static_cast<size_t>(n)].size(); ++i) {
                    const double e = (m == n && st.system.lattice()[i] == PhasePoint{0, 0}) ? 1.0 : 0.0;
                    CHECK(std::abs(s[static_cast<size_t>(n)][i] - e) < 1e-10);
                }
            }
        }
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("biorthogonal scheme reproduces the generators") {
    // S_m = delta_m (x) delta_m on time shifts 2Z, windows g = g~ = delta_m.
    const int L = 4;
    auto lat = build_lattice(SeparableDescriptor{2, L}, PhaseSpace(L));
    std::vector<HsOperator> gens;
    std::vector<WindowPair> pairs;
    for (int m = 0; m < 2; ++m) {
        gens.push_back(rank_one(Signal::delta(L, m), Signal::delta(L, m)));
        pairs.push_back({Signal::delta(L, m), Signal::delta(L, m)});
    }
    const GeneratorSystem sys(lat, gens);
    const auto kit = reconstruction_kit(sys, SamplingScheme::windows(pairs));
    for (int m = 0; m < 2; ++m) CHECK((kit.recon_ops[static_cast<size_t>(m)] - gens[static_cast<size_t>(m)]).hs_norm() < 1e-12);
}

TEST_CASE("single-channel uniqueness") {
    Rng rng(13);
    auto st = random_setup(6, {2, 3}, 1, 1, rng);
    const auto A = transfer_matrix(cross_seq(st.system, st.scheme));
    const auto fb = frame_bounds(A);
    DualFibers recip;
    for (const auto& F : A.fibers) recip.push_back(Eigen::MatrixXcd::Constant(1, 1, 1.0 / F(0, 0)));
    const auto k1 = reconstruction_kit(st.system, st.scheme);
    const auto k2 = assemble_kit(st.system, A, fb, recip);
    CHECK((k1.recon_ops[0] - k2.recon_ops[0]).hs_norm() < 1e-10 * k1.recon_ops[0].hs_norm());
}

TEST_CASE("average scheme reproduces the window pipeline") {
    Rng rng(14);
    auto st = random_setup(8, {2, 4}, 2, 3, rng);
    const auto kw = reconstruction_kit(st.system, st.scheme);
    const auto avg = st.scheme.as_average();
    const auto ka = reconstruction_kit(st.system, avg);
    for (int m = 0; m < kw.M; ++m) {
        CHECK((kw.recon_ops[static_cast<size_t>(m)] - ka.recon_ops[static_cast<size_t>(m)]).hs_norm() < 1e-12);
    }
    const auto T = synthesize(st.system, random_coefficients(st.system, rng));
    const auto Tw = reconstruct(take_samples(T, st.scheme, st.system.lattice_ptr()), kw);
    const auto Ta = reconstruct(take_samples(T, avg, st.system.lattice_ptr()), ka);
    CHECK((Tw - Ta).hs_norm() < 1e-12 * T.hs_norm());
}

TEST_CASE("sub-lattice inflation") {
    const int L = 4;
    PhaseSpace sp(L);
    auto lat = build_lattice(SeparableDescriptor{2, 2}, sp);
    auto sub = Lattice::from_points(sp, {{0, 0}, {0, 2}}, GeneratorDescriptor{{{0, 2}}});
    Rng rng(15);
    const GeneratorSystem sys(lat, {random_operator(L, rng), random_operator(L, rng)});

    const auto same = sublattice_inflate(sys, lat);
    CHECK(same.representatives.size() == 1);
    CHECK(same.representatives[0] == PhasePoint{0, 0});
    CHECK(same.system.count() == sys.count());

    const auto inf = sublattice_inflate(sys, sub);
    CHECK(inf.system.count() == 2 * sys.count());
    CHECK(inf.base_count == sys.count());
    const auto c = random_coefficients(sys, rng);
    const auto ci = inflate_coefficients(c, inf);
    CHECK((synthesize(inf.system, ci) - synthesize(sys, c)).kernel().cwiseAbs().maxCoeff() < 1e-12);

    auto off = build_lattice(SeparableDescriptor{1, 4}, sp);
    CHECK_THROWS_AS(sublattice_inflate(sys, off), ConfigError);
}

TEST_CASE("Berezin transform") {
    Rng rng(16);
    const int L = 6;
    const auto g = random_signal(L, rng), gt = random_signal(L, rng);
    const auto B = berezin(HsOperator::identity(L), g, gt);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) CHECK(std::abs(B(x, w) - inner(g, gt)) < 1e-12);
    }
    const auto R = berezin(rank_one(gt, g), g, gt);
    CHECK(std::abs(R(0, 0) - inner(g, g) * inner(gt, gt)) < 1e-12);

    const auto T = random_operator(L, rng);
    auto lat = build_lattice(SeparableDescriptor{2, 3}, PhaseSpace(L));
    const auto BT = berezin(T, g, gt);
    const auto s = diag_channel_samples(T, SamplingScheme::windows({{g, gt}}), lat);
    for (int i = 0; i < lat->size(); ++i) CHECK(std::abs(BT((*lat)[i]) - s[0][i]) < 1e-12);
}

}  // TEST_SUITE
