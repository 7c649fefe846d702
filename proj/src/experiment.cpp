#include "opsis/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "opsis/hs_ops.hpp"
#include "opsis/random.hpp"
#include "opsis/timefreq.hpp"

namespace opsis {

using nlohmann::json;

// --- config parsing ------------------------------------------------------

namespace {

[[noreturn]] void bad_config(const std::string& msg) { throw ConfigError("config: " + msg); }

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) bad_config(where + " is missing \"" + key + "\"");
    return obj.at(key);
}

LatticeDescriptor parse_lattice(const json& j, const std::string& where) {
    if (!j.is_object()) bad_config(where + " must be an object");
    if (j.contains("generators")) {
        GeneratorDescriptor d;
        for (const auto& g : j.at("generators")) {
            if (!g.is_array() || g.size() != 2) bad_config(where + ".generators entries must be [x, w] pairs");
            d.generators.push_back({g.at(0).get<int>(), g.at(1).get<int>()});
        }
        return d;
    }
    return SeparableDescriptor{require(j, "a", where).get<int>(), require(j, "b", where).get<int>()};
}

Eigen::VectorXcd parse_vector(const json& j, int L, const std::string& where) {
    const auto& re = require(j, "real", where);
    if (!re.is_array() || static_cast<int>(re.size()) != L) bad_config(where + ".real must have L entries");
    Eigen::VectorXcd v(L);
    for (int t = 0; t < L; ++t) v(t) = re.at(static_cast<size_t>(t)).get<double>();
    if (j.contains("imag")) {
        const auto& im = j.at("imag");
        if (!im.is_array() || static_cast<int>(im.size()) != L) bad_config(where + ".imag must have L entries");
        for (int t = 0; t < L; ++t) v(t) += cplx(0.0, im.at(static_cast<size_t>(t)).get<double>());
    }
    return v;
}

// Seeds not given explicitly derive from the run seed and the spec's position.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t slot) { return seed * 1000003ULL + slot; }

Signal parse_window(const json& j, int L, std::uint64_t seed, std::uint64_t slot, const std::string& where) {
    const std::string kind = require(j, "kind", where).get<std::string>();
    Signal s(L);
    if (kind == "gaussian") {
        s = gaussian_window(PhaseSpace(L));
    } else if (kind == "delta") {
        s = Signal::delta(L, j.value("at", 0));
    } else if (kind == "random") {
        Rng rng(j.contains("seed") ? j.at("seed").get<std::uint64_t>() : derived_seed(seed, slot));
        s = random_signal(L, rng);
    } else if (kind == "explicit") {
        s = Signal(parse_vector(j, L, where));
    } else {
        bad_config(where + ": unknown window kind \"" + kind + "\"");
    }
    if (j.contains("shift")) {
        const auto& z = j.at("shift");
        if (!z.is_array() || z.size() != 2) bad_config(where + ".shift must be [x, w]");
        s = tf_shift(PhaseSpace(L).point(z.at(0).get<int>(), z.at(1).get<int>()), s);
    }
    return s;
}

HsOperator parse_operator(const json& j, int L, std::uint64_t seed, std::uint64_t slot, const std::string& where) {
    const std::string kind = require(j, "kind", where).get<std::string>();
    if (kind == "rank_one") {
        return rank_one(parse_window(require(j, "phi", where), L, seed, 2 * slot, where + ".phi"),
                        parse_window(require(j, "psi", where), L, seed, 2 * slot + 1, where + ".psi"));
    }
    if (kind == "random") {
        Rng rng(j.contains("seed") ? j.at("seed").get<std::uint64_t>() : derived_seed(seed, 500 + slot));
        return random_operator(L, rng);
    }
    if (kind == "identity") return HsOperator::identity(L);
    if (kind == "explicit_kernel") {
        const auto& re = require(j, "real", where);
        if (!re.is_array() || static_cast<int>(re.size()) != L) bad_config(where + ".real must be L x L");
        Eigen::MatrixXcd k(L, L);
        for (int t = 0; t < L; ++t) {
            const auto& row = re.at(static_cast<size_t>(t));
            if (!row.is_array() || static_cast<int>(row.size()) != L) bad_config(where + ".real must be L x L");
            for (int s = 0; s < L; ++s) k(t, s) = row.at(static_cast<size_t>(s)).get<double>();
        }
        if (j.contains("imag")) {
            const auto& im = j.at("imag");
            if (!im.is_array() || static_cast<int>(im.size()) != L) bad_config(where + ".imag must be L x L");
            for (int t = 0; t < L; ++t) {
                const auto& row = im.at(static_cast<size_t>(t));
                if (!row.is_array() || static_cast<int>(row.size()) != L) bad_config(where + ".imag must be L x L");
                for (int s = 0; s < L; ++s) k(t, s) += cplx(0.0, row.at(static_cast<size_t>(s)).get<double>());
            }
        }
        return HsOperator(std::move(k));
    }
    bad_config(where + ": unknown operator kind \"" + kind + "\"");
}

SamplingScheme parse_scheme(const json& j, int L, std::uint64_t seed) {
    const std::string type = require(j, "type", "scheme").get<std::string>();
    if (type == "windows") {
        std::vector<WindowPair> pairs;
        std::uint64_t slot = 100;
        for (const auto& p : require(j, "pairs", "scheme")) {
            const std::string where = "scheme.pairs[" + std::to_string(pairs.size()) + "]";
            Signal g = parse_window(require(p, "g", where), L, seed, slot++, where + ".g");
            Signal gt = parse_window(require(p, "g_tilde", where), L, seed, slot++, where + ".g_tilde");
            pairs.push_back({std::move(g), std::move(gt)});
        }
        if (pairs.empty()) bad_config("scheme.pairs must not be empty");
        return SamplingScheme::windows(std::move(pairs));
    }
    if (type == "average") {
        std::vector<HsOperator> ops;
        for (const auto& q : require(j, "operators", "scheme")) {
            const auto slot = static_cast<std::uint64_t>(200 + ops.size());
            ops.push_back(parse_operator(q, L, seed, slot, "scheme.operators[" + std::to_string(ops.size()) + "]"));
        }
        if (ops.empty()) bad_config("scheme.operators must not be empty");
        return SamplingScheme::average(std::move(ops));
    }
    bad_config("scheme.type must be \"windows\" or \"average\"");
}

std::vector<int> int_list(const json& j, const char* key, std::vector<int> fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<std::vector<int>>();
}

}  // namespace

ExperimentConfig parse_config(const json& doc, std::optional<std::uint64_t> seed_override) {
    if (!doc.is_object()) bad_config("top level must be an object");
    const int L = require(doc, "L", "config").get<int>();
    PhaseSpace space(L);  // validates L >= 2
    const std::uint64_t seed = seed_override.value_or(doc.value("seed", std::uint64_t{0}));

    LatticeDescriptor lattice = parse_lattice(require(doc, "lattice", "config"), "lattice");
    build_lattice(lattice, space);  // surfaces a bad descriptor before any computation
    std::optional<LatticeDescriptor> sublattice;
    if (doc.contains("sublattice")) {
        sublattice = parse_lattice(doc.at("sublattice"), "sublattice");
        if (!build_lattice(*sublattice, space)->is_subgroup_of(*build_lattice(lattice, space))) {
            bad_config("sublattice is not contained in the lattice");
        }
    }

    std::vector<HsOperator> generators;
    const auto& gens = require(doc, "generators", "config");
    if (!gens.is_array() || gens.empty()) bad_config("generators must be a non-empty array");
    for (size_t n = 0; n < gens.size(); ++n) {
        generators.push_back(parse_operator(gens[n], L, seed, n, "generators[" + std::to_string(n) + "]"));
    }
    SamplingScheme scheme = parse_scheme(require(doc, "scheme", "config"), L, seed);

    const json options = doc.value("options", json::object());
    std::optional<double> tol;
    if (options.contains("tol")) tol = options.at("tol").get<double>();
    std::optional<std::uint64_t> c_seed;
    if (options.contains("c_seed")) c_seed = options.at("c_seed").get<std::uint64_t>();
    RieszRoute route = RieszRoute::GramFibers;
    const std::string route_str = options.value("route", std::string("gram_fibers"));
    if (route_str == "fourier_wigner") {
        route = RieszRoute::FourierWigner;
    } else if (route_str != "gram_fibers") {
        bad_config("options.route must be gram_fibers or fourier_wigner");
    }
    const std::string channel = options.value("channel", std::string("synthesized"));
    if (channel != "identity" && channel != "synthesized" && channel != "random") {
        bad_config("options.channel must be identity, synthesized or random");
    }
    const int window_index = options.value("window_index", 0);
    if (scheme.has_windows() && (window_index < 0 || window_index >= scheme.count())) {
        bad_config("options.window_index out of range");
    }

    const json sweep = doc.value("sweep", json::object());
    std::vector<int> sweep_M = int_list(sweep, "M", {scheme.count()});
    for (int m : sweep_M) {
        if (m < 1 || m > scheme.count()) bad_config("sweep.M values must lie in [1, scheme size]");
    }

    return ExperimentConfig{
        .L = L,
        .seed = seed,
        .lattice = std::move(lattice),
        .sublattice = std::move(sublattice),
        .generators = std::move(generators),
        .scheme = std::move(scheme),
        .tol = tol,
        .c_seed = c_seed,
        .route = route,
        .channel = channel,
        .window_index = window_index,
        .sweep_a = int_list(sweep, "a", {1, 2, 4}),
        .sweep_b = int_list(sweep, "b", {1, 2, 4}),
        .sweep_M = std::move(sweep_M),
    };
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc, seed_override);
}

// --- output helpers ------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Table::to_csv() const {
    std::ostringstream out;
    auto emit = [&out](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out.str();
}

bool all_finite(const json& metrics) {
    if (metrics.is_number_float()) return std::isfinite(metrics.get<double>());
    if (metrics.is_structured()) {
        for (const auto& v : metrics) {
            if (!all_finite(v)) return false;
        }
    }
    return true;
}

void write_outputs(const MetricsReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir / "metrics.json") << report.metrics.dump(2) << '\n';
    for (const auto& t : report.tables) std::ofstream(out_dir / (t.name + ".csv")) << t.to_csv();
}

// --- shared pipeline pieces ----------------------------------------------

namespace {

struct Setup {
    PhaseSpace space;
    LatticePtr lattice;
    GeneratorSystem system;
};

Setup make_setup(const ExperimentConfig& cfg, const LatticeDescriptor& desc) {
    PhaseSpace space(cfg.L);
    LatticePtr lattice = build_lattice(desc, space);
    return Setup{space, lattice, GeneratorSystem(lattice, cfg.generators)};
}

json describe(const ExperimentConfig& cfg, const Setup& s, const char* command) {
    return json{{"command", command},
                {"L", cfg.L},
                {"seed", cfg.seed},
                {"lattice_size", s.lattice->size()},
                {"N", s.system.count()},
                {"M", cfg.scheme.count()}};
}

json riesz_json(const RieszReport& r) {
    return json{{"m", r.lower},
                {"M", r.upper},
                {"is_riesz", r.is_riesz},
                {"route", route_name(r.route)},
                {"diagnostic", r.diagnostic}};
}

json frame_json(const FrameBounds& fb, int M, int N) {
    return json{{"alpha_A", fb.alpha},
                {"beta_A", fb.beta},
                {"M", M},
                {"N", N},
                {"is_frame", fb.is_frame()},
                {"diagnostic", fb.diagnostic}};
}

std::vector<Eigen::MatrixXcd> seeded_c_family(const TransferMatrix& A, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::MatrixXcd> C;
    for (size_t k = 0; k < A.fibers.size(); ++k) C.push_back(random_matrix(A.cols, A.rows, rng));
    return C;
}

Table sample_table(const SampleSet& s) {
    Table t{"samples", {"channel", "lambda_x", "lambda_w", "re", "im"}, {}};
    for (size_t m = 0; m < s.size(); ++m) {
        const Lattice& lat = s[m].lattice();
        for (int i = 0; i < lat.size(); ++i) {
            t.rows.push_back({std::to_string(m), std::to_string(lat[i].x), std::to_string(lat[i].w),
                              format_double(s[m][i].real()), format_double(s[m][i].imag())});
        }
    }
    return t;
}

/// max |samples of H_m in channel n - delta_{mn} delta_{lambda,0}|.
double interpolation_deviation(const ReconstructionKit& kit, const SamplingScheme& scheme) {
    double dev = 0.0;
    const Lattice& lat = *kit.lattice;
    for (int m = 0; m < kit.M; ++m) {
        const SampleSet s = take_samples(kit.recon_ops[static_cast<size_t>(m)], scheme, kit.lattice);
        for (int n = 0; n < kit.M; ++n) {
            for (int i = 0; i < lat.size(); ++i) {
                const double target = (m == n && lat[i] == PhasePoint{0, 0}) ? 1.0 : 0.0;
                dev = std::max(dev, std::abs(s[static_cast<size_t>(n)][i] - target));
            }
        }
    }
    return dev;
}

}  // namespace

// --- commands --------------------------------------------------------------

MetricsReport run_riesz_check(const ExperimentConfig& cfg) {
    const Setup s = make_setup(cfg, cfg.lattice);
    MetricsReport rep;
    rep.metrics = describe(cfg, s, "riesz-check");
    const RieszReport rr = riesz_check(s.system, cfg.tol, cfg.route);
    rep.metrics["riesz"] = riesz_json(rr);

    Table fibers{"fibers", {"xi_x", "xi_w", "k", "eigenvalue"}, {}};
    const DualTransversal tr = dual_transversal(s.lattice);
    const double scale = static_cast<double>(s.lattice->size()) / cfg.L;
    const FiberMatrices gf = cfg.route == RieszRoute::GramFibers ? gram_fibers(s.system) : FiberMatrices{tr, {}};
    for (int k = 0; k < tr.size(); ++k) {
        const Eigen::MatrixXcd G = cfg.route == RieszRoute::GramFibers
                                       ? gf.fibers[static_cast<size_t>(k)]
                                       : Eigen::MatrixXcd(scale * gw_matrix(s.system, tr[k]));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
        for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j) {
            fibers.rows.push_back({std::to_string(tr[k].x), std::to_string(tr[k].w), std::to_string(j),
                                   format_double(eig.eigenvalues()(j))});
        }
    }
    rep.tables.push_back(std::move(fibers));
    return rep;
}

MetricsReport run_frame_check(const ExperimentConfig& cfg) {
    const Setup s = make_setup(cfg, cfg.lattice);
    MetricsReport rep;
    rep.metrics = describe(cfg, s, "frame-check");
    rep.metrics["riesz"] = riesz_json(riesz_check(s.system, cfg.tol, cfg.route));
    const TransferMatrix A = transfer_matrix(cross_seq(s.system, cfg.scheme));
    const FrameBounds fb = frame_bounds(A);
    rep.metrics["frame"] = frame_json(fb, A.rows, A.cols);

    Table fibers{"fibers", {"xi_x", "xi_w", "k", "singular_value"}, {}};
    for (int k = 0; k < A.transversal.size(); ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.fibers[static_cast<size_t>(k)]);
        for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j) {
            fibers.rows.push_back({std::to_string(A.transversal[k].x), std::to_string(A.transversal[k].w),
                                   std::to_string(j), format_double(svd.singularValues()(j))});
        }
    }
    rep.tables.push_back(std::move(fibers));
    return rep;
}

MetricsReport run_reconstruct(const ExperimentConfig& cfg) {
    const Setup s = make_setup(cfg, cfg.lattice);
    MetricsReport rep;
    rep.metrics = describe(cfg, s, "reconstruct");

    const RieszReport rr = riesz_check(s.system, cfg.tol, cfg.route);
    rep.metrics["riesz"] = riesz_json(rr);

    // Sampling runs on the sub-lattice when one is configured.
    std::optional<InflatedSystem> inflated;
    if (cfg.sublattice) {
        inflated = sublattice_inflate(s.system, build_lattice(*cfg.sublattice, s.space));
        rep.metrics["sublattice"] = json{{"size", inflated->system.lattice().size()},
                                         {"index", static_cast<int>(inflated->representatives.size())},
                                         {"N_inflated", inflated->system.count()}};
    }
    const GeneratorSystem& sampled = inflated ? inflated->system : s.system;

    const TransferMatrix A = transfer_matrix(cross_seq(sampled, cfg.scheme));
    const FrameBounds fb = frame_bounds(A);
    rep.metrics["frame"] = frame_json(fb, A.rows, A.cols);
    if (!rr.is_riesz || !fb.is_frame()) {
        rep.exit_code = kExitMathFailure;
        rep.metrics["status"] = rr.is_riesz ? "not_a_frame" : "not_riesz";
        return rep;
    }

    std::optional<std::vector<Eigen::MatrixXcd>> C;
    if (cfg.c_seed) C = seeded_c_family(A, *cfg.c_seed);
    const ReconstructionKit kit = assemble_kit(sampled, A, fb, dual_left_inverse(A, C ? &*C : nullptr));

    Rng rng(cfg.seed);
    const CoefArray c = random_coefficients(s.system, rng);
    const HsOperator T = synthesize(s.system, c);
    const SampleSet samples = take_samples(T, cfg.scheme, sampled.lattice_ptr());
    const HsOperator T_rec = reconstruct(samples, kit);

    const Signal f = random_signal(cfg.L, rng);
    json recon{{"rel_hs_error", (T - T_rec).hs_norm() / T.hs_norm()},
               {"pointwise_error", (T.apply(f).vec() - T_rec.apply(f).vec()).norm() / T.apply(f).norm()}};

    const CoefArray c_frame = coefficient_frame_expansion(samples, kit);
    recon["coef_synthesis_dev"] = (synthesize(sampled, c_frame) - T_rec).hs_norm() / T.hs_norm();
    if (kit.M == kit.N) recon["interp_max_dev"] = interpolation_deviation(kit, cfg.scheme);
    rep.metrics["reconstruction"] = recon;
    rep.metrics["status"] = "ok";
    rep.tables.push_back(sample_table(samples));
    return rep;
}

MetricsReport run_channel_demo(const ExperimentConfig& cfg) {
    const Setup s = make_setup(cfg, cfg.lattice);
    MetricsReport rep;
    rep.metrics = describe(cfg, s, "channel-demo");

    Rng rng(cfg.seed);
    HsOperator H = HsOperator::identity(cfg.L);
    if (cfg.channel == "synthesized") {
        H = synthesize(s.system, random_coefficients(s.system, rng));
    } else if (cfg.channel == "random") {
        H = random_operator(cfg.L, rng);
    }

    const auto& lat = *s.lattice;
    const WindowPair& wp = cfg.scheme.pairs().at(static_cast<size_t>(cfg.window_index));
    const Eigen::MatrixXcd A = channel_matrix(H, wp.g, wp.g_tilde, lat);
    const SampleSet samples =
        diag_channel_samples(H, SamplingScheme::windows({wp}), s.lattice);
    double diag_dev = 0.0;
    for (int i = 0; i < lat.size(); ++i) diag_dev = std::max(diag_dev, std::abs(A(i, i) - samples[0][i]));

    // Transmit seeded data through H and demodulate against the shifted g~.
    Eigen::VectorXcd data(lat.size());
    for (int i = 0; i < lat.size(); ++i) data(i) = rng.complex_uniform();
    Signal x(cfg.L);
    for (int i = 0; i < lat.size(); ++i) x.vec() += data(i) * tf_shift(lat[i], wp.g).vec();
    const Signal y = H.apply(x);
    const Eigen::VectorXcd predicted = A * data;
    double ofdm_dev = 0.0;
    for (int i = 0; i < lat.size(); ++i) {
        ofdm_dev = std::max(ofdm_dev, std::abs(inner(y, tf_shift(lat[i], wp.g_tilde)) - predicted(i)));
    }

    rep.metrics["channel"] = json{{"operator", cfg.channel},
                                  {"window_index", cfg.window_index},
                                  {"diag_max_dev", diag_dev},
                                  {"ofdm_max_dev", ofdm_dev}};

    Table cm{"channel_matrix", {"lambda_x", "lambda_w", "mu_x", "mu_w", "re", "im"}, {}};
    for (int i = 0; i < lat.size(); ++i) {
        for (int j = 0; j < lat.size(); ++j) {
            cm.rows.push_back({std::to_string(lat[i].x), std::to_string(lat[i].w), std::to_string(lat[j].x),
                               std::to_string(lat[j].w), format_double(A(i, j).real()),
                               format_double(A(i, j).imag())});
        }
    }
    rep.tables.push_back(std::move(cm));
    rep.tables.push_back(sample_table(samples));
    return rep;
}

MetricsReport run_sweep(const ExperimentConfig& cfg) {
    MetricsReport rep;
    rep.metrics = json{{"command", "sweep"}, {"L", cfg.L}, {"seed", cfg.seed}};
    Table t{"sweep", {"L", "a", "b", "N", "M", "m", "M_riesz", "alpha_A", "beta_A", "rel_err", "status"}, {}};
    int ok_rows = 0;
    for (int a : cfg.sweep_a) {
        for (int b : cfg.sweep_b) {
            for (int M : cfg.sweep_M) {
                std::vector<std::string> row{std::to_string(cfg.L), std::to_string(a), std::to_string(b),
                                             std::to_string(cfg.generators.size()), std::to_string(M)};
                std::string m_str, mr_str, alpha_str, beta_str, err_str, status;
                try {
                    const Setup s = make_setup(cfg, SeparableDescriptor{a, b});
                    std::vector<HsOperator> q = cfg.scheme.average_operators();
                    const SamplingScheme scheme =
                        cfg.scheme.has_windows()
                            ? SamplingScheme::windows(std::vector<WindowPair>(
                                  cfg.scheme.pairs().begin(), cfg.scheme.pairs().begin() + M))
                            : SamplingScheme::average(std::vector<HsOperator>(q.begin(), q.begin() + M));
                    const RieszReport rr = riesz_check(s.system, cfg.tol, cfg.route);
                    m_str = format_double(rr.lower);
                    mr_str = format_double(rr.upper);
                    const TransferMatrix A = transfer_matrix(cross_seq(s.system, scheme));
                    const FrameBounds fb = frame_bounds(A);
                    alpha_str = format_double(fb.alpha);
                    beta_str = format_double(fb.beta);
                    if (!rr.is_riesz) {
                        status = "not_riesz";
                    } else if (!fb.is_frame()) {
                        status = "not_a_frame";
                    } else {
                        const ReconstructionKit kit = assemble_kit(s.system, A, fb, dual_left_inverse(A));
                        Rng rng(cfg.seed);
                        const HsOperator T = synthesize(s.system, random_coefficients(s.system, rng));
                        const HsOperator T_rec = reconstruct(take_samples(T, scheme, s.lattice), kit);
                        err_str = format_double((T - T_rec).hs_norm() / T.hs_norm());
                        status = "ok";
                        ++ok_rows;
                    }
                } catch (const ConfigError& e) {
                    status = "invalid";
                }
                row.insert(row.end(), {m_str, mr_str, alpha_str, beta_str, err_str, status});
                t.rows.push_back(std::move(row));
            }
        }
    }
    rep.metrics["rows"] = t.rows.size();
    rep.metrics["ok_rows"] = ok_rows;
    rep.tables.push_back(std::move(t));
    return rep;
}

// --- command line ------------------------------------------------------------

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Sampling and reconstruction of operators in lattice shift-invariant spaces", "opsis"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool timing = false;

    const std::vector<std::pair<const char*, const char*>> commands{
        {"riesz-check", "Riesz bounds of the generator translates"},
        {"frame-check", "Transfer-matrix frame bounds"},
        {"reconstruct", "Sample a seeded operator and reconstruct it"},
        {"channel-demo", "Channel matrix and its diagonal samples"},
        {"sweep", "Grid study over separable lattices"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "overrides the config seed");
        sub->add_flag("--timing", timing, "record wall-clock time in metrics.json");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    MetricsReport rep;
    try {
        const ExperimentConfig cfg = load_config(config_path, seed);
        if (command == "riesz-check") {
            rep = run_riesz_check(cfg);
        } else if (command == "frame-check") {
            rep = run_frame_check(cfg);
        } else if (command == "reconstruct") {
            rep = run_reconstruct(cfg);
        } else if (command == "channel-demo") {
            rep = run_channel_demo(cfg);
        } else {
            rep = run_sweep(cfg);
        }
    } catch (const ConfigError& e) {
        std::cerr << "opsis: invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "opsis: invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const NotAFrame& e) {
        std::cerr << "opsis: " << e.what() << '\n';
        return kExitMathFailure;
    } catch (const NotRiesz& e) {
        std::cerr << "opsis: " << e.what() << '\n';
        return kExitMathFailure;
    } catch (const SizeOverflow& e) {
        std::cerr << "opsis: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    if (timing) {
        rep.metrics["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (!all_finite(rep.metrics)) {
        rep.metrics["status"] = "numerical_failure";
        rep.exit_code = kExitNumericalFailure;
    }
    write_outputs(rep, out_dir);
    std::cout << rep.metrics.dump() << '\n';
    return rep.exit_code;
}

}  // namespace opsis
