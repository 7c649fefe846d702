#include "opsis/phase_space.hpp"

#include <algorithm>
#include <sstream>

namespace opsis {

PhaseSpace::PhaseSpace(int modulus) : modulus_(modulus) {
    if (modulus < 2) {
        throw ConfigError("phase space modulus must be at least 2, got " + std::to_string(modulus));
    }
}

int symplectic_form(PhasePoint z, PhasePoint zp, int L) {
    auto in_range = [L](PhasePoint p) { return p.x >= 0 && p.x < L && p.w >= 0 && p.w < L; };
    if (L < 2 || !in_range(z) || !in_range(zp)) {
        throw ConfigError("symplectic_form: points are not residues modulo " + std::to_string(L));
    }
    return mod(static_cast<long long>(z.w) * zp.x - static_cast<long long>(zp.w) * z.x, L);
}

// --- Lattice -------------------------------------------------------------

Lattice::Lattice(PhaseSpace space, std::vector<PhasePoint> elements, LatticeDescriptor descriptor)
    : space_(space),
      elements_(std::move(elements)),
      index_(static_cast<size_t>(space.size()), -1),
      descriptor_(std::move(descriptor)) {
    for (size_t i = 0; i < elements_.size(); ++i) {
        index_[static_cast<size_t>(space_.linear(elements_[i]))] = static_cast<int>(i);
    }
}

LatticePtr Lattice::from_points(PhaseSpace space, std::vector<PhasePoint> points,
                                LatticeDescriptor descriptor) {
    for (const auto& p : points) {
        if (!space.contains(p)) {
            throw InvalidDescriptor("lattice point outside Z_L x Z_L");
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return LatticePtr(new Lattice(space, std::move(points), std::move(descriptor)));
}

bool Lattice::contains(PhasePoint z) const {
    return space_.contains(z) && index_[static_cast<size_t>(space_.linear(z))] >= 0;
}

std::optional<int> Lattice::index_of(PhasePoint z) const {
    if (!space_.contains(z)) return std::nullopt;
    int k = index_[static_cast<size_t>(space_.linear(z))];
    if (k < 0) return std::nullopt;
    return k;
}

int Lattice::require_index(PhasePoint z) const {
    auto k = index_of(z);
    if (!k) {
        std::ostringstream msg;
        msg << "point (" << z.x << ", " << z.w << ") is not a lattice element";
        throw ConfigError(msg.str());
    }
    return *k;
}

bool Lattice::same_elements(const Lattice& other) const {
    return space_ == other.space_ && elements_ == other.elements_;
}

bool Lattice::is_subgroup_of(const Lattice& other) const {
    if (!(space_ == other.space_)) return false;
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](PhasePoint p) { return other.contains(p); });
}

LatticePtr build_lattice(const LatticeDescriptor& descriptor, PhaseSpace space) {
    const int L = space.modulus();
    if (const auto* sep = std::get_if<SeparableDescriptor>(&descriptor)) {
        if (sep->a <= 0 || sep->b <= 0 || L % sep->a != 0 || L % sep->b != 0) {
            std::ostringstream msg;
            msg << "separable lattice (" << sep->a << ", " << sep->b << ") requires a | L and b | L for L = "
                << L;
            throw InvalidDescriptor(msg.str());
        }
        std::vector<PhasePoint> pts;
        pts.reserve(static_cast<size_t>((L / sep->a) * (L / sep->b)));
        for (int x = 0; x < L; x += sep->a) {
            for (int w = 0; w < L; w += sep->b) pts.push_back({x, w});
        }
        return Lattice::from_points(space, std::move(pts), descriptor);
    }

    const auto& gens = std::get<GeneratorDescriptor>(descriptor).generators;
    for (const auto& g : gens) {
        if (!space.contains(g)) {
            std::ostringstream msg;
            msg << "lattice generator (" << g.x << ", " << g.w << ") is not in Z_" << L << " x Z_" << L;
            throw InvalidDescriptor(msg.str());
        }
    }
    // Closure under addition; in a finite group this is the generated subgroup.
    std::vector<char> seen(static_cast<size_t>(space.size()), 0);
    std::vector<PhasePoint> pts{{0, 0}};
    seen[0] = 1;
    for (size_t head = 0; head < pts.size(); ++head) {
        for (const auto& g : gens) {
            PhasePoint q = space.add(pts[head], g);
            auto k = static_cast<size_t>(space.linear(q));
            if (!seen[k]) {
                seen[k] = 1;
                pts.push_back(q);
            }
        }
    }
    return Lattice::from_points(space, std::move(pts), descriptor);
}

LatticePtr annihilator(const Lattice& lattice) {
    const PhaseSpace& space = lattice.space();
    const int L = space.modulus();
    std::vector<PhasePoint> pts;
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            PhasePoint mu{x, w};
            bool pairs_trivially = std::all_of(lattice.elements().begin(), lattice.elements().end(),
                                               [&](PhasePoint l) { return symplectic_form(mu, l, L) == 0; });
            if (pairs_trivially) pts.push_back(mu);
        }
    }
    GeneratorDescriptor desc{pts};
    return Lattice::from_points(space, std::move(pts), std::move(desc));
}

// --- LatticeSeq ----------------------------------------------------------

LatticeSeq::LatticeSeq(LatticePtr lattice)
    : lattice_(std::move(lattice)), values_(static_cast<size_t>(lattice_->size()), cplx{0.0, 0.0}) {}

LatticeSeq::LatticeSeq(LatticePtr lattice, std::vector<cplx> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != lattice_->size()) {
        throw ConfigError("lattice sequence length does not match the lattice size");
    }
}

LatticeSeq LatticeSeq::delta(LatticePtr lattice, PhasePoint at) {
    LatticeSeq out(std::move(lattice));
    out[out.lattice().require_index(at)] = 1.0;
    return out;
}

double LatticeSeq::norm_squared() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s;
}

LatticeSeq& LatticeSeq::operator+=(const LatticeSeq& other) {
    if (!lattice_->same_elements(other.lattice())) {
        throw ConfigError("lattice sequences live on different lattices");
    }
    for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

LatticeSeq& LatticeSeq::operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
}

// --- Dual transversal and symplectic Fourier series ---------------------

int DualTransversal::coset_of(PhasePoint z) const {
    const PhaseSpace& space = lattice_->space();
    return coset_[static_cast<size_t>(space.linear(space.point(z.x, z.w)))];
}

DualTransversal dual_transversal(LatticePtr lattice) {
    DualTransversal out;
    out.annihilator_ = annihilator(*lattice);
    const PhaseSpace& space = lattice->space();
    out.coset_.assign(static_cast<size_t>(space.size()), -1);
    // Lexicographic scan: the first unseen point of each coset is its smallest member.
    for (int k = 0; k < space.size(); ++k) {
        if (out.coset_[static_cast<size_t>(k)] >= 0) continue;
        PhasePoint xi = space.from_linear(k);
        int rep = static_cast<int>(out.points_.size());
        out.points_.push_back(xi);
        for (const auto& u : out.annihilator_->elements()) {
            out.coset_[static_cast<size_t>(space.linear(space.add(xi, u)))] = rep;
        }
    }
    out.lattice_ = std::move(lattice);
    return out;
}

cplx symp_fourier_at(const LatticeSeq& c, PhasePoint xi) {
    const Lattice& lat = c.lattice();
    const int L = lat.modulus();
    xi = lat.space().point(xi.x, xi.w);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < lat.size(); ++i) acc += c[i] * unit_root(symplectic_form(lat[i], xi, L), L);
    return acc;
}

std::vector<cplx> symp_fourier(const LatticeSeq& c, const DualTransversal& transversal) {
    if (!c.lattice().same_elements(transversal.lattice())) {
        throw ConfigError("symp_fourier: sequence and transversal belong to different lattices");
    }
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(transversal.size()));
    for (const auto& xi : transversal.points()) out.push_back(symp_fourier_at(c, xi));
    return out;
}

LatticeSeq inv_symp_fourier(std::span<const cplx> values, const DualTransversal& transversal) {
    if (static_cast<int>(values.size()) != transversal.size()) {
        throw ConfigError("inv_symp_fourier: value count does not match the transversal");
    }
    const Lattice& lat = transversal.lattice();
    const int L = lat.modulus();
    LatticeSeq out(transversal.lattice_ptr());
    const double scale = 1.0 / static_cast<double>(lat.size());
    for (int i = 0; i < lat.size(); ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < transversal.size(); ++j) {
            acc += values[static_cast<size_t>(j)] * unit_root(-symplectic_form(lat[i], transversal[j], L), L);
        }
        out[i] = acc * scale;
    }
    return out;
}

LatticeSeq lattice_convolve(const LatticeSeq& c, const LatticeSeq& d) {
    const Lattice& lat = c.lattice();
    if (!lat.same_elements(d.lattice())) {
        throw ConfigError("lattice_convolve: sequences live on different lattices");
    }
    const PhaseSpace& space = lat.space();
    LatticeSeq out(c.lattice_ptr());
    for (int i = 0; i < lat.size(); ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < lat.size(); ++j) {
            acc += c[j] * d[lat.require_index(space.sub(lat[i], lat[j]))];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace opsis
