#pragma once

#include <map>

#include "diagram.hpp"

namespace pappa {

namespace detail {

struct Place {
    int top = 0;
    int bottom = 0;
};

inline std::vector<Place> places(const Layer& L) {
    std::vector<Place> out;
    Place p;
    for (const auto& s : L.slices) {
        out.push_back(p);
        p.top += s.top();
        p.bottom += s.bottom();
    }
    return out;
}

inline long zeta_step(int d) { return d % 2 == 0 ? 1 : d + 1; }

inline bool has_box(const Layer& L) {
    for (const auto& s : L.slices)
        if (s.kind == SliceKind::box) return true;
    return false;
}

inline bool has_charges(const Layer& L) {
    for (const auto& s : L.slices)
        if (s.kind == SliceKind::strand && !s.charges.empty()) return true;
    return false;
}

// Charges-only layer -> strand-ordered monomial c_1^{a_1} c_2^{a_2} ... with a_j in [0, d),
// tiers 0, 1, 2, ... from left to right. Returns the zeta exponent picked up.
inline long canonical_charges(Layer& L, int d) {
    struct F {
        int strand;
        long k;
    };
    // operator order: lowest tier first (leftmost factor)
    std::map<long, std::vector<F>> tiers;
    for (int s = 0; s < int(L.slices.size()); ++s) {
        std::map<long, long> merged;
        for (const auto& c : L.slices[s].charges) merged[c.tier] += c.k;
        for (auto [t, k] : merged) tiers[t].push_back({s, k});
    }
    long zeta_exp = 0;
    std::vector<F> prod;
    for (auto& [t, group] : tiers) {
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) zeta_exp -= group[i].k * group[j].k;
        prod.insert(prod.end(), group.begin(), group.end());
    }
    // bubble into strand order; c_s^a c_t^b = q^{-ab} c_t^b c_s^a for t < s
    for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j + 1 < prod.size() - i; ++j)
            if (prod[j].strand > prod[j + 1].strand) {
                zeta_exp -= 2 * prod[j].k * prod[j + 1].k;
                std::swap(prod[j], prod[j + 1]);
            }
    std::vector<long> total(L.slices.size(), 0);
    for (const auto& f : prod) total[f.strand] += f.k;
    long tier = 0;
    for (std::size_t s = 0; s < L.slices.size(); ++s) {
        L.slices[s].charges.clear();
        long k = mod(total[s], d);
        if (k != 0) L.slices[s].charges.push_back({k, tier++});
    }
    return zeta_exp;
}

inline long charge_on(const Layer& L, int s) { return L.slices[s].charges.empty() ? 0 : L.slices[s].charges[0].k; }

class Normalizer {
public:
    explicit Normalizer(Diagram D) : D_(std::move(D)) {}

    Diagram run() {
        if (D_.is_zero()) return Diagram::zero(D_.d, D_.in_points, D_.out_points);
        for (int guard = 0; guard < 10000; ++guard) {
            bool changed = false;
            changed |= split_mixed();
            changed |= drop_identity();
            changed |= merge_charge_layers();
            changed |= canonicalize();
            changed |= slide_over_caps();
            changed |= slide_under_cups();
            changed |= remove_loops();
            if (D_.is_zero()) return Diagram::zero(D_.d, D_.in_points, D_.out_points);
            changed |= straighten_zigzags();
            changed |= cancel_inverse_pairs();
            if (!changed) break;
        }
        D_.scalar.reduce(D_.d);
        return D_;
    }

private:
    // keeps the strand order of tiers, so recanonicalising adds no phase
    static void merge_right(Layer& C, int p, long total) {
        long tier = C.slices[p + 1].charges.empty() ? C.slices[p].charges[0].tier : C.slices[p + 1].charges[0].tier;
        C.slices[p].charges.clear();
        C.slices[p + 1].charges = {{total, tier}};
    }

    void add_zeta(long e) { D_.scalar.eps += e * zeta_step(D_.d); }

    bool split_mixed() {
        bool changed = false;
        for (std::size_t i = 0; i < D_.layers.size(); ++i) {
            Layer& L = D_.layers[i];
            if (L.charges_only() || has_box(L) || !has_charges(L)) continue;
            Layer C;
            for (auto& s : L.slices) {
                if (s.kind == SliceKind::strand) {
                    C.slices.push_back(s);
                    s.charges.clear();
                } else {
                    for (int t = 0; t < s.top(); ++t) C.slices.push_back(Slice::strand());
                }
            }
            D_.layers.insert(D_.layers.begin() + long(i), C);
            ++i;
            changed = true;
        }
        return changed;
    }

    bool drop_identity() {
        auto before = D_.layers.size();
        std::erase_if(D_.layers, [](const Layer& L) { return L.is_identity(); });
        return before != D_.layers.size();
    }

    bool merge_charge_layers() {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < D_.layers.size();) {
            Layer& U = D_.layers[i];
            Layer& W = D_.layers[i + 1];
            if (!U.charges_only() || !W.charges_only()) {
                ++i;
                continue;
            }
            long top = std::numeric_limits<long>::min();
            for (const auto& s : W.slices)
                for (const auto& c : s.charges) top = std::max(top, c.tier);
            long low = std::numeric_limits<long>::max();
            for (const auto& s : U.slices)
                for (const auto& c : s.charges) low = std::min(low, c.tier);
            const long shift = (top == std::numeric_limits<long>::min() || low == std::numeric_limits<long>::max()) ? 0 : top + 1 - low;
            for (std::size_t s = 0; s < W.slices.size(); ++s)
                for (auto c : U.slices[s].charges) W.slices[s].charges.push_back({c.k, c.tier + shift});
            D_.layers.erase(D_.layers.begin() + long(i));
            changed = true;
        }
        return changed;
    }

    bool canonicalize() {
        bool changed = false;
        for (auto& L : D_.layers) {
            if (!L.charges_only()) continue;
            Layer before = L;
            add_zeta(canonical_charges(L, D_.d));
            if (!(before == L)) changed = true;
        }
        return changed;
    }

    // charge a on the left leg of a cap, b on its right leg: a moves over with zeta^{a^2} q^{ab}
    bool slide_over_caps() {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < D_.layers.size(); ++i) {
            const Layer& L = D_.layers[i];
            Layer& C = D_.layers[i + 1];
            if (L.charges_only() || !C.charges_only()) continue;
            auto pl = places(L);
            for (std::size_t j = 0; j < L.slices.size(); ++j) {
                if (L.slices[j].kind != SliceKind::cap) continue;
                const int p = pl[j].bottom;
                const long a = charge_on(C, p);
                if (a == 0) continue;
                const long b = charge_on(C, p + 1);
                add_zeta(a * a + 2 * a * b);
                merge_right(C, p, a + b);
                add_zeta(canonical_charges(C, D_.d));
                changed = true;
            }
        }
        return changed;
    }

    bool slide_under_cups() {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < D_.layers.size(); ++i) {
            Layer& C = D_.layers[i];
            const Layer& L = D_.layers[i + 1];
            if (!C.charges_only() || L.charges_only()) continue;
            auto pl = places(L);
            for (std::size_t j = 0; j < L.slices.size(); ++j) {
                if (L.slices[j].kind != SliceKind::cup) continue;
                const int p = pl[j].top;
                const long a = charge_on(C, p);
                if (a == 0) continue;
                const long b = charge_on(C, p + 1);
                add_zeta(-a * a);
                merge_right(C, p, a + b);
                add_zeta(canonical_charges(C, D_.d));
                changed = true;
            }
        }
        return changed;
    }

    // cap in layer i, optional charges layer, cup in the next structural layer on the same pair
    bool remove_loops() {
        for (std::size_t i = 0; i + 1 < D_.layers.size(); ++i) {
            const Layer& L = D_.layers[i];
            if (L.charges_only()) continue;
            std::size_t mid = i + 1;
            const bool has_mid = D_.layers[mid].charges_only();
            std::size_t low = has_mid ? mid + 1 : mid;
            if (low >= D_.layers.size() || D_.layers[low].charges_only()) continue;
            auto pl = places(L);
            auto pw = places(D_.layers[low]);
            for (std::size_t j = 0; j < L.slices.size(); ++j) {
                if (L.slices[j].kind != SliceKind::cap) continue;
                const int p = pl[j].bottom;
                for (std::size_t t = 0; t < D_.layers[low].slices.size(); ++t) {
                    if (D_.layers[low].slices[t].kind != SliceKind::cup || pw[t].top != p) continue;
                    if (has_mid) {
                        Layer& M = D_.layers[mid];
                        if (charge_on(M, p) != 0) continue;  // wait for the slide rule
                        if (mod(charge_on(M, p + 1), D_.d) != 0) {
                            D_.scalar.zero = true;
                            return true;
                        }
                        M.slices.erase(M.slices.begin() + p, M.slices.begin() + p + 2);
                    }
                    D_.layers[low].slices.erase(D_.layers[low].slices.begin() + long(t));
                    D_.layers[i].slices.erase(D_.layers[i].slices.begin() + long(j));
                    D_.scalar.quarter += 2;
                    return true;
                }
            }
        }
        return false;
    }

    bool straighten_zigzags() {
        for (std::size_t i = 0; i + 1 < D_.layers.size(); ++i) {
            Layer& U = D_.layers[i];
            Layer& W = D_.layers[i + 1];
            if (U.charges_only() || W.charges_only()) continue;
            auto pu = places(U);
            auto pw = places(W);
            for (std::size_t j = 0; j + 1 < U.slices.size(); ++j) {
                const Slice& a = U.slices[j];
                const Slice& b = U.slices[j + 1];
                // strand then cap above, cup then strand below
                if (a.is_bare_strand() && b.kind == SliceKind::cap) {
                    const int p = pu[j].bottom;
                    for (std::size_t t = 0; t + 1 < W.slices.size(); ++t)
                        if (pw[t].top == p && W.slices[t].kind == SliceKind::cup && W.slices[t + 1].is_bare_strand()) {
                            U.slices.erase(U.slices.begin() + long(j) + 1);
                            W.slices.erase(W.slices.begin() + long(t));
                            return true;
                        }
                }
                // cap then strand above, strand then cup below
                if (a.kind == SliceKind::cap && b.is_bare_strand()) {
                    const int p = pu[j].bottom;
                    for (std::size_t t = 0; t + 1 < W.slices.size(); ++t)
                        if (pw[t].top == p && W.slices[t].is_bare_strand() && W.slices[t + 1].kind == SliceKind::cup) {
                            U.slices.erase(U.slices.begin() + long(j));
                            W.slices.erase(W.slices.begin() + long(t) + 1);
                            return true;
                        }
                }
            }
        }
        return false;
    }

    bool cancel_inverse_pairs() {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < D_.layers.size(); ++i) {
            Layer& U = D_.layers[i];
            Layer& W = D_.layers[i + 1];
            auto pu = places(U);
            auto pw = places(W);
            for (std::size_t j = 0; j < U.slices.size(); ++j) {
                for (std::size_t t = 0; t < W.slices.size(); ++t) {
                    if (pw[t].top != pu[j].bottom) continue;
                    const Slice& a = U.slices[j];
                    const Slice& b = W.slices[t];
                    const bool braids = (a.kind == SliceKind::braid_pos && b.kind == SliceKind::braid_neg) ||
                                        (a.kind == SliceKind::braid_neg && b.kind == SliceKind::braid_pos);
                    const bool syms = a.kind == SliceKind::sym && b.kind == SliceKind::sym && mod(a.m + b.m, D_.d) == 0;
                    if (!braids && !syms) continue;
                    const int w = a.top();
                    U.slices.erase(U.slices.begin() + long(j));
                    U.slices.insert(U.slices.begin() + long(j), std::size_t(w), Slice::strand());
                    W.slices.erase(W.slices.begin() + long(t));
                    W.slices.insert(W.slices.begin() + long(t), std::size_t(w), Slice::strand());
                    changed = true;
                    pu = places(U);
                    pw = places(W);
                }
            }
        }
        return changed;
    }

    Diagram D_;
};

}  // namespace detail

inline Diagram normalize(const Diagram& D) { return detail::Normalizer(D).run(); }

}  // namespace pappa
