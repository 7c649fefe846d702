#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opsis/experiment.hpp"
#include "opsis/hs_ops.hpp"
#include "opsis/sampling.hpp"
#include "opsis/si_space.hpp"
#include "opsis/timefreq.hpp"

namespace py = pybind11;
using namespace opsis;

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Point = std::pair<int, int>;

PhasePoint to_point(const Point& p) { return {p.first, p.second}; }

std::vector<Point> to_pairs(const Lattice& lat) {
    std::vector<Point> out;
    for (const auto& z : lat.elements()) out.emplace_back(z.x, z.w);
    return out;
}

// A lattice argument is either (a, b) for aZ x bZ or a list of [x, w] generators.
LatticePtr make_lattice(int L, const py::object& spec) {
    const PhaseSpace space(L);
    const auto seq = spec.cast<py::sequence>();
    if (py::len(seq) == 2 && py::isinstance<py::int_>(seq[0])) {
        return build_lattice(SeparableDescriptor{seq[0].cast<int>(), seq[1].cast<int>()}, space);
    }
    GeneratorDescriptor d;
    for (const auto& g : seq) d.generators.push_back(to_point(g.cast<Point>()));
    return build_lattice(d, space);
}

GeneratorSystem make_system(int L, const py::object& lattice, const std::vector<Mat>& generators) {
    std::vector<HsOperator> ops;
    for (const auto& k : generators) ops.emplace_back(k);
    return GeneratorSystem(make_lattice(L, lattice), std::move(ops));
}

SamplingScheme make_scheme(const std::vector<std::pair<Vec, Vec>>& windows) {
    std::vector<WindowPair> pairs;
    for (const auto& [g, gt] : windows) pairs.push_back({Signal(g), Signal(gt)});
    return SamplingScheme::windows(std::move(pairs));
}

py::tuple run_command(const std::string& command, const std::string& config, std::optional<std::uint64_t> seed) {
    const ExperimentConfig cfg = parse_config(nlohmann::json::parse(config), seed);
    MetricsReport rep;
    if (command == "riesz-check") {
        rep = run_riesz_check(cfg);
    } else if (command == "frame-check") {
        rep = run_frame_check(cfg);
    } else if (command == "reconstruct") {
        rep = run_reconstruct(cfg);
    } else if (command == "channel-demo") {
        rep = run_channel_demo(cfg);
    } else if (command == "sweep") {
        rep = run_sweep(cfg);
    } else {
        throw ConfigError("unknown command " + command);
    }
    if (!all_finite(rep.metrics)) rep.exit_code = kExitNumericalFailure;
    py::dict tables;
    for (const auto& t : rep.tables) tables[py::str(t.name)] = t.to_csv();
    return py::make_tuple(rep.metrics.dump(), tables, rep.exit_code);
}

}  // namespace

PYBIND11_MODULE(_opsis, m) {
    m.doc() = "Finite phase-space operator sampling (C++ core)";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NotAFrame>(m, "NotAFrame", PyExc_RuntimeError);
    py::register_exception<NotRiesz>(m, "NotRiesz", PyExc_RuntimeError);

    m.def("symplectic_form",
          [](const Point& z, const Point& zp, int L) { return symplectic_form(to_point(z), to_point(zp), L); },
          py::arg("z"), py::arg("zp"), py::arg("L"));

    m.def("lattice", [](int L, const py::object& spec) { return to_pairs(*make_lattice(L, spec)); },
          py::arg("L"), py::arg("spec"), "Elements of the lattice given by (a, b) or by generators.");
    m.def("annihilator", [](int L, const py::object& spec) { return to_pairs(*annihilator(*make_lattice(L, spec))); },
          py::arg("L"), py::arg("spec"));

    m.def("gaussian_window", [](int L) { return Vec(gaussian_window(PhaseSpace(L)).vec()); }, py::arg("L"));
    m.def("tf_shift", [](const Point& z, const Vec& f) { return Vec(tf_shift(to_point(z), Signal(f)).vec()); },
          py::arg("z"), py::arg("f"));
    m.def("stft", [](const Vec& phi, const Vec& psi) { return Mat(stft(Signal(phi), Signal(psi)).mat()); },
          py::arg("phi"), py::arg("psi"), "V_psi phi(x, w) = <phi, pi(x, w) psi>.");
    m.def("rihaczek", [](const Vec& psi, const Vec& phi) { return Mat(rihaczek(Signal(psi), Signal(phi)).mat()); },
          py::arg("psi"), py::arg("phi"));
    m.def("cross_wigner",
          [](const Vec& psi, const Vec& phi) { return Mat(cross_wigner(Signal(psi), Signal(phi)).mat()); },
          py::arg("psi"), py::arg("phi"));

    m.def("rank_one", [](const Vec& phi, const Vec& psi) { return Mat(rank_one(Signal(phi), Signal(psi)).kernel()); },
          py::arg("phi"), py::arg("psi"));
    m.def("op_translate",
          [](const Point& z, const Mat& S) { return Mat(op_translate(to_point(z), HsOperator(S)).kernel()); },
          py::arg("z"), py::arg("S"));
    m.def("kn_symbol", [](const Mat& S) { return Mat(kn_symbol(HsOperator(S)).mat()); }, py::arg("S"));
    m.def("kn_operator", [](const Mat& s) { return Mat(kn_operator(PhaseFn(s)).kernel()); }, py::arg("symbol"));
    m.def("weyl_symbol", [](const Mat& S) { return Mat(weyl_symbol(HsOperator(S)).mat()); }, py::arg("S"));
    m.def("weyl_operator", [](const Mat& s) { return Mat(weyl_operator(PhaseFn(s)).kernel()); }, py::arg("symbol"));
    m.def("fourier_wigner", [](const Mat& S) { return Mat(fourier_wigner(HsOperator(S)).mat()); }, py::arg("S"));

    m.def(
        "riesz_check",
        [](int L, const py::object& lattice, const std::vector<Mat>& generators, const std::string& route) {
            const auto r = riesz_check(make_system(L, lattice, generators), std::nullopt,
                                       route == "fourier_wigner" ? RieszRoute::FourierWigner : RieszRoute::GramFibers);
            py::dict d;
            d["is_riesz"] = r.is_riesz;
            d["m"] = r.lower;
            d["M"] = r.upper;
            d["diagnostic"] = r.diagnostic;
            return d;
        },
        py::arg("L"), py::arg("lattice"), py::arg("generators"), py::arg("route") = "gram_fibers");

    m.def(
        "frame_bounds",
        [](int L, const py::object& lattice, const std::vector<Mat>& generators,
           const std::vector<std::pair<Vec, Vec>>& windows) {
            const auto fb =
                frame_bounds(transfer_matrix(cross_seq(make_system(L, lattice, generators), make_scheme(windows))));
            py::dict d;
            d["alpha_A"] = fb.alpha;
            d["beta_A"] = fb.beta;
            d["is_frame"] = fb.is_frame();
            d["diagnostic"] = fb.diagnostic;
            return d;
        },
        py::arg("L"), py::arg("lattice"), py::arg("generators"), py::arg("windows"));

    m.def(
        "reconstruct",
        [](int L, const py::object& lattice, const std::vector<Mat>& generators,
           const std::vector<std::pair<Vec, Vec>>& windows, const Mat& T) {
            const auto sys = make_system(L, lattice, generators);
            const auto scheme = make_scheme(windows);
            const auto kit = reconstruction_kit(sys, scheme);
            return Mat(reconstruct(take_samples(HsOperator(T), scheme, sys.lattice_ptr()), kit).kernel());
        },
        py::arg("L"), py::arg("lattice"), py::arg("generators"), py::arg("windows"), py::arg("T"),
        "Samples T with the window pairs and rebuilds it from the samples.");

    m.def("run", &run_command, py::arg("command"), py::arg("config"), py::arg("seed") = py::none());
    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            return run_cli(static_cast<int>(argv.size()), argv.data());
        },
        py::arg("argv"));
}
