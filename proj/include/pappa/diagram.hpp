#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace pappa {

// Exact-ish prefactor: epsilon^eps * d^{quarter/4} * residual, or zero.
struct Scalar {
    bool zero = false;
    long eps = 0;
    long quarter = 0;
    cplx residual = 1.0;

    cplx value(const PhaseRing& r) const {
        if (zero) return 0.0;
        return r.eps_pow(eps) * r.d_quarter_pow(quarter) * residual;
    }
    Scalar& operator*=(const Scalar& o) {
        zero = zero || o.zero;
        eps += o.eps;
        quarter += o.quarter;
        residual *= o.residual;
        return *this;
    }
    void reduce(int d) { eps = mod(eps, 2L * d); }
    bool operator==(const Scalar& o) const = default;
};

enum class SliceKind { strand, cap, cup, braid_pos, braid_neg, sym, box };

struct ChargeMark {
    long k = 0;
    long tier = 0;
    bool operator==(const ChargeMark&) const = default;
};

// One column of a layer. A strand carries charges; a sym spans the four strands of two qudits;
// a box spans `width` strands and may carry a charge.
struct Slice {
    SliceKind kind = SliceKind::strand;
    std::vector<ChargeMark> charges;
    long m = 0;
    std::string name;
    int width = 0;
    long charge = 0;
    long tier = 0;
    bool dagger = false;

    int top() const {
        switch (kind) {
            case SliceKind::strand: return 1;
            case SliceKind::cap: return 0;
            case SliceKind::cup: return 2;
            case SliceKind::braid_pos:
            case SliceKind::braid_neg: return 2;
            case SliceKind::sym: return 4;
            case SliceKind::box: return width;
        }
        return 0;
    }
    int bottom() const {
        switch (kind) {
            case SliceKind::cap: return 2;
            case SliceKind::cup: return 0;
            default: return top();
        }
    }
    bool is_bare_strand() const { return kind == SliceKind::strand && charges.empty(); }
    bool operator==(const Slice&) const = default;

    static Slice strand(std::vector<ChargeMark> c = {}) { return {SliceKind::strand, std::move(c)}; }
    static Slice of(SliceKind k) { return {k}; }
    static Slice sym(long m) {
        Slice s{SliceKind::sym};
        s.m = m;
        return s;
    }
    static Slice box(std::string name, int width, long charge, long tier = 0) {
        Slice s{SliceKind::box};
        s.name = std::move(name);
        s.width = width;
        s.charge = charge;
        s.tier = tier;
        return s;
    }
};

struct Layer {
    std::vector<Slice> slices;

    int top_width() const {
        int w = 0;
        for (const auto& s : slices) w += s.top();
        return w;
    }
    int bottom_width() const {
        int w = 0;
        for (const auto& s : slices) w += s.bottom();
        return w;
    }
    bool is_identity() const {
        return std::all_of(slices.begin(), slices.end(), [](const Slice& s) { return s.is_bare_strand(); });
    }
    bool charges_only() const {
        return std::all_of(slices.begin(), slices.end(), [](const Slice& s) { return s.kind == SliceKind::strand; });
    }
    bool operator==(const Layer&) const = default;

    static Layer identity(int w) { return {std::vector<Slice>(w, Slice::strand())}; }
};

enum class GenKind { id_strand, charge, cap, cup, braid_pos, braid_neg, sym, box };

// Index-based view of a layer generator. `strand` is the position on the layer's top (input) side;
// for a cap it is the top position the new pair is inserted before.
struct Generator {
    GenKind kind = GenKind::id_strand;
    int strand = 0;
    long k = 0;
    long tier = 0;
    long m = 0;
    std::string name;
    int width = 0;
    long charge = 0;
    bool dagger = false;

    static Generator charge_at(int s, long k, long tier = 0) {
        Generator g{GenKind::charge, s};
        g.k = k;
        g.tier = tier;
        return g;
    }
    static Generator at(GenKind kind, int s) { return {kind, s}; }
    static Generator sym_at(int s, long m) {
        Generator g{GenKind::sym, s};
        g.m = m;
        return g;
    }
    static Generator box_at(std::string name, int s, int width, long charge, long tier = 0) {
        Generator g{GenKind::box, s};
        g.name = std::move(name);
        g.width = width;
        g.charge = charge;
        g.tier = tier;
        return g;
    }
};

inline Layer layer_from_generators(int top_width, std::vector<Generator> gens) {
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        if (a.strand != b.strand) return a.strand < b.strand;
        // caps sit before the strand at the same position
        return (a.kind == GenKind::cap) > (b.kind == GenKind::cap);
    });
    Layer L;
    std::size_t gi = 0;
    int p = 0;
    while (p <= top_width) {
        while (gi < gens.size() && gens[gi].strand == p && gens[gi].kind == GenKind::cap) {
            L.slices.push_back(Slice::of(SliceKind::cap));
            ++gi;
        }
        if (p == top_width) break;
        if (gi < gens.size() && gens[gi].strand < p)
            throw Error("overlapping generators at strand " + std::to_string(gens[gi].strand));
        if (gi >= gens.size() || gens[gi].strand != p) {
            L.slices.push_back(Slice::strand());
            ++p;
            continue;
        }
        const Generator& g = gens[gi];
        switch (g.kind) {
            case GenKind::id_strand:
            case GenKind::charge: {
                Slice s = Slice::strand();
                while (gi < gens.size() && gens[gi].strand == p &&
                       (gens[gi].kind == GenKind::charge || gens[gi].kind == GenKind::id_strand)) {
                    if (gens[gi].kind == GenKind::charge) s.charges.push_back({gens[gi].k, gens[gi].tier});
                    ++gi;
                }
                L.slices.push_back(s);
                break;
            }
            case GenKind::cup: L.slices.push_back(Slice::of(SliceKind::cup)); ++gi; break;
            case GenKind::braid_pos: L.slices.push_back(Slice::of(SliceKind::braid_pos)); ++gi; break;
            case GenKind::braid_neg: L.slices.push_back(Slice::of(SliceKind::braid_neg)); ++gi; break;
            case GenKind::sym: L.slices.push_back(Slice::sym(g.m)); ++gi; break;
            case GenKind::box: {
                if (g.width <= 0 || g.width % 2 != 0) throw Error("box strand count must be even and positive");
                Slice s = Slice::box(g.name, g.width, g.charge, g.tier);
                s.dagger = g.dagger;
                L.slices.push_back(s);
                ++gi;
                break;
            }
            case GenKind::cap: break;
        }
        p += L.slices.back().top();
        if (p > top_width) throw Error("generator runs past the layer width");
    }
    if (gi != gens.size()) throw Error("generator index beyond layer width");
    return L;
}

inline std::vector<Generator> generators_of(const Layer& L) {
    std::vector<Generator> out;
    int p = 0;
    for (const auto& s : L.slices) {
        switch (s.kind) {
            case SliceKind::strand:
                for (const auto& c : s.charges) out.push_back(Generator::charge_at(p, c.k, c.tier));
                break;
            case SliceKind::cap: out.push_back(Generator::at(GenKind::cap, p)); break;
            case SliceKind::cup: out.push_back(Generator::at(GenKind::cup, p)); break;
            case SliceKind::braid_pos: out.push_back(Generator::at(GenKind::braid_pos, p)); break;
            case SliceKind::braid_neg: out.push_back(Generator::at(GenKind::braid_neg, p)); break;
            case SliceKind::sym: out.push_back(Generator::sym_at(p, s.m)); break;
            case SliceKind::box: {
                auto g = Generator::box_at(s.name, p, s.width, s.charge, s.tier);
                g.dagger = s.dagger;
                out.push_back(g);
                break;
            }
        }
        p += s.top();
    }
    return out;
}

// layers[0] is the top (input side); evaluation runs top to bottom.
struct Diagram {
    int d = 2;
    int in_points = 0;
    int out_points = 0;
    std::vector<Layer> layers;
    Scalar scalar;

    bool is_zero() const { return scalar.zero; }
    bool operator==(const Diagram&) const = default;

    void validate() const {
        if (scalar.zero && layers.empty()) return;
        int w = in_points;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            if (layers[i].top_width() != w)
                throw Error("layer " + std::to_string(i) + " expects " + std::to_string(layers[i].top_width()) +
                            " strands, has " + std::to_string(w));
            w = layers[i].bottom_width();
        }
        if (w != out_points) throw Error("diagram bottom width does not match out_points");
    }

    static Diagram identity(int d, int strands) { return {d, strands, strands, {}, {}}; }
    static Diagram zero(int d, int in, int out) {
        Diagram D{d, in, out, {}, {}};
        D.scalar.zero = true;
        return D;
    }
    static Diagram from_layer(int d, Layer L) {
        Diagram D{d, L.top_width(), L.bottom_width(), {std::move(L)}, {}};
        return D;
    }
};

// ---- builders

inline Diagram strand_with_charge(int d, long k, long tier = 0) {
    return Diagram::from_layer(d, {{Slice::strand({{k, tier}})}});
}

inline Diagram strand_pair_with_left_charge(int d, long k, long tier = 0) {
    return Diagram::from_layer(d, {{Slice::strand({{k, tier}}), Slice::strand()}});
}

// cap with charge k on its right strand
inline Diagram cap_diagram(int d, long k = 0, long tier = 0) {
    Diagram D = Diagram::from_layer(d, {{Slice::of(SliceKind::cap)}});
    if (k != 0) D.layers.push_back({{Slice::strand(), Slice::strand({{k, tier}})}});
    D.out_points = 2;
    return D;
}

// cup with charge k on its right strand, placed above the cup
inline Diagram cup_diagram(int d, long k = 0, long tier = 0) {
    Diagram D{d, 2, 0, {}, {}};
    if (k != 0) D.layers.push_back({{Slice::strand(), Slice::strand({{k, tier}})}});
    D.layers.push_back({{Slice::of(SliceKind::cup)}});
    return D;
}

inline Diagram braid_diagram(int d, bool positive) {
    return Diagram::from_layer(d, {{Slice::of(positive ? SliceKind::braid_pos : SliceKind::braid_neg)}});
}

inline Diagram compose(const Diagram& upper, const Diagram& lower) {
    if (upper.d != lower.d) throw Error("diagrams of different degree");
    if (lower.in_points != upper.out_points)
        throw Error("width mismatch: upper has " + std::to_string(upper.out_points) + " outputs, lower has " +
                    std::to_string(lower.in_points) + " inputs");
    Diagram D{upper.d, upper.in_points, lower.out_points, upper.layers, upper.scalar};
    D.layers.insert(D.layers.end(), lower.layers.begin(), lower.layers.end());
    D.scalar *= lower.scalar;
    D.scalar.reduce(D.d);
    return D;
}

// Layers are aligned at the top; the shorter diagram is padded with identity layers below.
inline Diagram tensor(const Diagram& left, const Diagram& right) {
    if (left.d != right.d) throw Error("diagrams of different degree");
    Diagram D{left.d, left.in_points + right.in_points, left.out_points + right.out_points, {}, left.scalar};
    D.scalar *= right.scalar;
    D.scalar.reduce(D.d);
    const std::size_t depth = std::max(left.layers.size(), right.layers.size());
    for (std::size_t i = 0; i < depth; ++i) {
        Layer a = i < left.layers.size() ? left.layers[i] : Layer::identity(left.out_points);
        const Layer b = i < right.layers.size() ? right.layers[i] : Layer::identity(right.out_points);
        a.slices.insert(a.slices.end(), b.slices.begin(), b.slices.end());
        D.layers.push_back(std::move(a));
    }
    return D;
}

inline Diagram tensor_all(const std::vector<Diagram>& ds) {
    Diagram D = Diagram::identity(ds.at(0).d, 0);
    for (const auto& x : ds) D = tensor(D, x);
    return D;
}

inline Slice reflect(Slice s) {
    switch (s.kind) {
        case SliceKind::strand:
            for (auto& c : s.charges) c = {-c.k, -c.tier};
            break;
        case SliceKind::cap: s.kind = SliceKind::cup; break;
        case SliceKind::cup: s.kind = SliceKind::cap; break;
        case SliceKind::braid_pos: s.kind = SliceKind::braid_neg; break;
        case SliceKind::braid_neg: s.kind = SliceKind::braid_pos; break;
        case SliceKind::sym: s.m = -s.m; break;
        case SliceKind::box:
            s.dagger = !s.dagger;
            s.charge = -s.charge;
            s.tier = -s.tier;
            break;
    }
    return s;
}

inline Diagram adjoint(const Diagram& D) {
    Diagram A{D.d, D.out_points, D.in_points, {}, D.scalar};
    A.scalar.eps = mod(-A.scalar.eps, 2L * D.d);
    A.scalar.residual = std::conj(A.scalar.residual);
    for (auto it = D.layers.rbegin(); it != D.layers.rend(); ++it) {
        Layer L;
        for (const auto& s : it->slices) L.slices.push_back(reflect(s));
        A.layers.push_back(std::move(L));
    }
    return A;
}

// zeta^{-k l}: converts a same-tier pair (k left, l right) into k-below-l-above order.
inline cplx twisted_tensor_scalar(const PhaseRing& r, long k, long l) { return r.zeta_pow(-k * l); }

// Shifts every slice of D right by `left` bare strands and pads with `right` bare strands.
inline Diagram pad(const Diagram& D, int left, int right) {
    return tensor(tensor(Diagram::identity(D.d, left), D), Diagram::identity(D.d, right));
}

// One-click clockwise rotation of the boundary. For a state diagram the leftmost output is carried
// over the top to become the rightmost output; for a transformation the leftmost output turns up to
// become the leftmost input and the rightmost input turns down to become the rightmost output.
inline Diagram sft_rotate(const Diagram& D) {
    if ((D.in_points + D.out_points) % 2 != 0) throw Error("odd number of boundary points");
    if (D.out_points == 0) throw Error("nothing to rotate: no output points");
    // with no inputs the cap's left leg plays the role of the new input strand
    Diagram top{D.d, D.in_points, D.in_points + 2, {}, {}};
    Layer capl = D.in_points == 0 ? Layer{} : Layer::identity(D.in_points);
    capl.slices.push_back(Slice::of(SliceKind::cap));
    top.layers.push_back(capl);
    Diagram mid = pad(D, 1, 1);
    Layer cup_layer;
    cup_layer.slices.push_back(Slice::of(SliceKind::cup));
    for (int i = 0; i < D.out_points; ++i) cup_layer.slices.push_back(Slice::strand());
    return compose(compose(top, mid), Diagram::from_layer(D.d, cup_layer));
}

// The n-qudit state |k> in the decreasing basis, drawn as caps (qudit 1 highest); scaled so that it
// evaluates to the unit basis vector.
inline Diagram basis_diagram(int d, const std::vector<int>& k) {
    const int n = int(k.size());
    Diagram D = Diagram::identity(d, 0);
    Layer caps;
    for (int j = 0; j < n; ++j) caps.slices.push_back(Slice::of(SliceKind::cap));
    D.layers.push_back(caps);
    Layer charges;
    for (int j = 0; j < n; ++j) {
        charges.slices.push_back(Slice::strand());
        if (k[j] != 0) charges.slices.push_back(Slice::strand({{k[j], n - j}}));
        else charges.slices.push_back(Slice::strand());
    }
    D.layers.push_back(charges);
    D.out_points = 2 * n;
    D.scalar.quarter = -n;
    return D;
}

// omega^{1/2} b_{2n-1,2n,-} ... b_{1,2,-} as a diagram
inline Diagram sft_diagram(const PhaseRing& r, int n) {
    Diagram D = Diagram::identity(r.d, 2 * n);
    for (int s = 0; s + 1 < 2 * n; ++s) {
        Layer L = Layer::identity(s);
        L.slices.push_back(Slice::of(SliceKind::braid_neg));
        for (int t = s + 2; t < 2 * n; ++t) L.slices.push_back(Slice::strand());
        D.layers.push_back(L);
    }
    D.scalar.residual = r.omega_sqrt;
    return D;
}

}  // namespace pappa
