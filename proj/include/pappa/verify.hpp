#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "clifford.hpp"
#include "diagram_dsl.hpp"
#include "evaluator.hpp"
#include "jordan_wigner.hpp"
#include "protocols.hpp"
#include "tricks.hpp"

namespace pappa {

// asserted: must hold. literal: a claim checked exactly as printed. info: reported only.
enum class CheckRole { asserted, literal, info };

struct Check {
    std::string name;
    double value = 0;
    double limit = 0;
    CheckRole role = CheckRole::asserted;
    std::string note;
    bool passed() const { return value <= limit; }
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool ok(bool with_literal = false) const {
        for (auto& c : checks)
            if (!c.passed() && (c.role == CheckRole::asserted || (with_literal && c.role == CheckRole::literal)))
                return false;
        return true;
    }
    void add(std::string name, double value, double limit, CheckRole role = CheckRole::asserted, std::string note = {}) {
        checks.push_back({std::move(name), value, limit, role, std::move(note)});
    }
    // counts are compared exactly
    void add_count(std::string name, int observed, int expected, CheckRole role = CheckRole::asserted) {
        add(std::move(name), std::abs(observed - expected), 0, role,
            "observed=" + std::to_string(observed) + " expected=" + std::to_string(expected));
    }
    void append(const SuiteReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

inline std::string format_check(const Check& c) {
    static const char* roles[] = {"asserted", "literal", "info"};
    char buf[96];
    std::snprintf(buf, sizeof buf, " value=%.3e limit=%.1e status=", c.value, c.limit);
    std::string line = "check=" + c.name + buf + (c.passed() ? "ok" : "FAIL") + " role=" + roles[int(c.role)];
    if (!c.note.empty()) line += " " + c.note;
    return line;
}

struct VerifyOptions {
    std::vector<int> degrees;  // empty: the suite's default set
    std::vector<int> sizes;
    double tol = default_tolerance;
    std::uint64_t seed = 1;

    std::vector<int> degrees_or(std::vector<int> fallback) const { return degrees.empty() ? fallback : degrees; }
    std::vector<int> sizes_or(std::vector<int> fallback) const { return sizes.empty() ? fallback : sizes; }
};

namespace detail {
inline std::string tag(const std::string& name, int d) { return name + ".d" + std::to_string(d); }
inline std::string tag(const std::string& name, int d, int n) { return tag(name, d) + ".n" + std::to_string(n); }

// worst 1 - fidelity of the output over all branches, together with |1 - total probability|
inline double protocol_error(const ProtocolScript& sc, const QState& in, const QState& target) {
    double worst = 0, total = 0;
    for (auto& t : run_branches(sc, in)) {
        total += t.probability;
        worst = std::max(worst, 1.0 - fidelity(output_of(sc, t), target));
    }
    return std::max(worst, std::abs(1.0 - total));
}

inline QState no_input(int d) { return {d, 0, Vec::Ones(1)}; }

inline std::vector<std::vector<int>> compositions(int total, int max_total) {
    std::vector<std::vector<int>> out;
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int left) {
        if (left == 0) {
            if (cur.size() >= 2) out.push_back(cur);
            return;
        }
        for (int s = 1; s <= left; ++s) {
            cur.push_back(s);
            rec(cur, left - s);
            cur.pop_back();
        }
    };
    for (int t = 2; t <= std::min(total, max_total); ++t) {
        std::vector<int> cur;
        rec(cur, t);
    }
    return out;
}

struct Relations {
    const PhaseRing& r;
    int d;
    std::map<std::string, double> worst;

    explicit Relations(const PhaseRing& ring) : r(ring), d(ring.d) {}

    Mat ev(const std::string& body, int in, int out) const {
        return evaluate(r, parse_diagram("diagram d=" + std::to_string(d) + " in=" + std::to_string(in) +
                                         " out=" + std::to_string(out) + "\n" + body))
            .matrix;
    }
    void note(const std::string& name, double v) { worst[name] = std::max(worst[name], v); }
    static std::string chg(int s, long k) { return "chg@" + std::to_string(s) + ":" + std::to_string(k); }
    static std::string chg(int s, long k, int tier) { return chg(s, k) + ":" + std::to_string(tier); }

    void planar() {
        note("circle", std::abs(ev("cap@0\ncup@0\n", 0, 0)(0, 0) - r.sqrt_d));
        for (int k = 1; k < d; ++k) note("charged_loop", std::abs(ev("cap@0\n" + chg(1, k) + "\ncup@0\n", 0, 0)(0, 0)));
        for (int s : {0, 1}) {
            for (int k = -2; k <= 3; ++k)
                for (int l = -1; l <= 2; ++l)
                    note("add_charge", residual(ev(chg(s, k) + "\n" + chg(s, l) + "\n", 2, 2), ev(chg(s, k + l) + "\n", 2, 2)));
            note("add_charge", residual(ev(chg(s, d) + "\n", 2, 2), Mat::Identity(d, d)));
        }
        for (auto [s, t] : {std::pair{0, 1}, {0, 3}, {1, 2}, {1, 3}})
            for (int k = 1; k <= d; ++k)
                for (int l = 1; l < d; ++l) {
                    Mat lower = ev(chg(s, k, 0) + " " + chg(t, l, 1) + "\n", 4, 4);
                    Mat upper = ev(chg(s, k, 1) + " " + chg(t, l, 0) + "\n", 4, 4);
                    note("para_isotopy", residual(lower, r.q_pow(long(k) * l) * upper));
                }
        for (int k = -2; k < 3; ++k)
            for (int l = 1; l < d + 2; ++l) {
                Mat same = ev(chg(0, k, 0) + " " + chg(1, l, 0) + "\n", 2, 2);
                Mat ordered = ev(chg(0, k, 0) + " " + chg(1, l, 1) + "\n", 2, 2);
                note("twisted_product", residual(same, r.zeta_pow(-long(k) * l) * ordered));
            }
        for (int k = -2; k <= d; ++k) {
            note("string_fourier_cap",
                 residual(ev("cap@0\n" + chg(0, k) + "\n", 0, 2), r.zeta_pow(long(k) * k) * ev("cap@0\n" + chg(1, k) + "\n", 0, 2)));
            note("string_fourier_cup",
                 residual(ev(chg(0, k) + "\ncup@0\n", 2, 0), r.zeta_pow(-long(k) * k) * ev(chg(1, k) + "\ncup@0\n", 2, 0)));
        }
        note("resolution_of_identity", resolution_of_identity_residual(r));
        const Mat id = Mat::Identity(d, d), id2 = Mat::Identity(d * d, d * d);
        note("zigzag", residual(ev("cap@2\ncup@1\n", 2, 2), id));
        note("zigzag", residual(ev("cap@0\ncup@1\n", 2, 2), id));
        note("zigzag", residual(ev("chg@1:1\ncap@2\ncup@1\n", 2, 2), ev("chg@1:1\n", 2, 2)));
        for (const char* zz : {"cap@1\ncup@2\n", "cap@3\ncup@2\n", "cap@1\ncup@0\n"}) note("zigzag", residual(ev(zz, 4, 4), id2));
        note("cross_pair_loop", residual(ev("cap@1\ncup@1\n", 2, 2), r.sqrt_d * id));
        note("cross_pair_loop", max_abs(ev("cap@1\nchg@2:1\ncup@1\n", 2, 2)));
    }

    void reidemeister() {
        const Mat id = Mat::Identity(d, d), id2 = Mat::Identity(d * d, d * d);
        note("reidemeister1", residual(ev("cap@2\nb+@1\ncup@2\n", 2, 2), r.omega_half_pow(-1) * id));
        note("reidemeister1", residual(ev("cap@2\nb-@1\ncup@2\n", 2, 2), r.omega_half_pow(1) * id));
        for (int s = 0; s < 3; ++s) {
            const std::string ss = std::to_string(s);
            note("reidemeister2", residual(ev("b+@" + ss + "\nb-@" + ss + "\n", 4, 4), id2));
            note("reidemeister2", residual(ev("b-@" + ss + "\nb+@" + ss + "\n", 4, 4), id2));
        }
        for (std::string b : {"b+", "b-"})
            for (int s = 0; s < 2; ++s) {
                std::string a = b + "@" + std::to_string(s) + "\n", c = b + "@" + std::to_string(s + 1) + "\n";
                note("reidemeister3", residual(ev(a + c + a, 4, 4), ev(c + a + c, 4, 4)));
            }
        note("reidemeister3", residual(ev("b+@0\nb+@1\nb-@0\n", 4, 4), ev("b-@1\nb+@0\nb+@1\n", 4, 4)));
    }

    void braids() {
        for (int s = 0; s < 3; ++s)
            for (int k = 1; k < d; ++k) {
                const std::string pos = "b+@" + std::to_string(s) + "\n", neg = "b-@" + std::to_string(s) + "\n";
                auto c = [&](int t) { return chg(t, k) + "\n"; };
                note("particle_braid", residual(ev(pos + c(s + 1), 4, 4), ev(c(s) + pos, 4, 4)));
                note("particle_braid", residual(ev(neg + c(s), 4, 4), ev(c(s + 1) + neg, 4, 4)));
            }
        note("braid_fourier", residual(evaluate(r, sft_rotate(braid_diagram(d, true))).matrix,
                                       evaluate(r, braid_diagram(d, false)).matrix));
    }
};
}  // namespace detail

inline SuiteReport verify_relations(const VerifyOptions& o) {
    SuiteReport rep{"relations", {}};
    for (int d : o.degrees_or({2, 3, 4, 5})) {
        auto r = make_phase_ring(d);
        detail::Relations rel(r);
        rel.planar();
        rel.reidemeister();
        rel.braids();
        for (auto& [name, v] : rel.worst) rep.add(detail::tag("relations." + name, d), v, o.tol);
    }
    return rep;
}

inline SuiteReport verify_parafermion(const VerifyOptions& o) {
    SuiteReport rep{"parafermion", {}};
    for (int d : o.degrees_or({2, 3, 5}))
        for (int n : o.sizes_or({1, 2, 3})) {
            auto rr = parafermion_relations_check(make_phase_ring(d), n);
            rep.add(detail::tag("parafermion.relations", d, n), rr.residual, o.tol, CheckRole::asserted,
                    "checks=" + std::to_string(rr.checks));
        }
    return rep;
}

inline SuiteReport verify_sft(const VerifyOptions& o) {
    SuiteReport rep{"sft", {}};
    for (int d : o.degrees_or({2, 3, 5}))
        for (int n : o.sizes_or({1, 2, 3})) {
            auto r = make_phase_ring(d);
            const Mat B = sft_gate(r, n, SftMethod::braid_product).matrix;
            const Mat M = sft_gate(r, n, SftMethod::matrix_formula).matrix;
            rep.add(detail::tag("sft.braid_vs_closed_form", d, n), residual(B, M), o.tol);
            rep.add(detail::tag("sft.unitary", d, n), unitarity_residual(M), o.tol);
            const Mat P = mat_pow(B, 2 * n);
            Mat expect = Mat::Zero(P.rows(), P.cols());
            for (Eigen::Index j = 0; j < P.cols(); ++j) {
                long K = total_charge(digits_of(j, d, n));
                expect(j, j) = r.q_pow(K * K);
            }
            rep.add(detail::tag("sft.full_turn", d, n), residual(P, expect), o.tol);
        }
    return rep;
}

inline SuiteReport verify_states(const VerifyOptions& o) {
    SuiteReport rep{"states", {}};
    for (int d : o.degrees_or({2, 3, 5}))
        for (int n : o.sizes_or({2, 3})) {
            auto r = make_phase_ring(d);
            const Mat S = sft_gate(r, n).matrix;
            const std::size_t dim = checked_dim(d, n);
            Vec zero = Vec::Zero(dim);
            zero(0) = 1.0;
            const QState mx = max_state(r, n), gh = ghz_state(r, n);
            rep.add(detail::tag("states.max_is_sft_zero", d, n), residual(S * zero, mx.amp), o.tol);
            rep.add(detail::tag("states.fourier_max_is_ghz", d, n), residual(fourier_all(r, n, 1) * mx.amp, gh.amp), o.tol);
            rep.add(detail::tag("states.inverse_fourier_max_is_ghz", d, n), residual(fourier_all(r, n, -1) * mx.amp, gh.amp),
                    o.tol);
            // GHZ from F on the first qudit and a fan of controlled X
            QState circ{d, n, zero};
            circ = apply(circ, fourier_gate(r), {0});
            for (int j = 1; j < n; ++j) circ = apply(circ, controlled_gate(r, 2, 0, 1, pauli_gate(r, Pauli::X)), {0, j});
            rep.add(detail::tag("states.ghz_circuit", d, n), residual(circ.amp, gh.amp), o.tol);
            double mb = 0, gb = 0;
            const Mat Fi = fourier_all(r, n, -1);
            for (std::size_t i = 0; i < dim; ++i) {
                auto k = digits_of(i, d, n);
                mb = std::max(mb, residual(max_basis(r, k).amp, S.col(i)));
                gb = std::max(gb, residual(ghz_basis(r, k).amp, Fi * S.col(i)));
            }
            rep.add(detail::tag("states.max_basis_closed_form", d, n), mb, o.tol);
            rep.add(detail::tag("states.ghz_basis_closed_form", d, n), gb, o.tol);
        }
    return rep;
}

inline SuiteReport verify_entropy(const VerifyOptions& o) {
    SuiteReport rep{"entropy", {}};
    const double limit = 10 * o.tol;
    for (int d : o.degrees_or({2, 3, 5}))
        for (int n : o.sizes_or({2, 3})) {
            auto r = make_phase_ring(d);
            const Mat S = sft_gate(r, n).matrix;
            double worst = 0;
            int cuts = 0;
            for (std::size_t i = 0; i < checked_dim(d, n); ++i) {
                auto k = digits_of(i, d, n);
                if (mod(total_charge(k), d) != 0) continue;
                QState s{d, n, S.col(i)};
                for (int j = 0; j < n; ++j, ++cuts) worst = std::max(worst, std::abs(cut_entropy(s, {j}) - std::log(double(d))));
            }
            rep.add(detail::tag("entropy.singleton_cuts", d, n), worst, limit, CheckRole::asserted,
                    "cuts=" + std::to_string(cuts));
        }
    return rep;
}

inline SuiteReport verify_clifford(const VerifyOptions& o) {
    SuiteReport rep{"clifford", {}};
    for (int d : o.degrees_or({2, 3, 5})) {
        auto r = make_phase_ring(d);
        auto fs = verify_fsclifford1(r);
        rep.add(detail::tag("clifford.cz_from_sft.literal", d), fs.literal, o.tol, CheckRole::literal);
        rep.add(detail::tag("clifford.cz_from_sft", d), fs.corrected, o.tol);
        auto s2 = verify_sft2(r);
        rep.add(detail::tag("clifford.sft2_first", d), s2.first, o.tol);
        rep.add(detail::tag("clifford.sft2_second", d), s2.second, o.tol);
        rep.add(detail::tag("clifford.sft2_bell", d), s2.bell, o.tol);
        auto b = verify_braid_clifford(r);
        rep.add(detail::tag("clifford.b23.literal", d), b.literal, o.tol, CheckRole::literal);
        rep.add(detail::tag("clifford.b23", d), b.corrected, o.tol);
        for (int n : {1, 2})
            rep.add(detail::tag("clifford.sft_is_clifford", d, n), is_clifford(r, sft_gate(r, n)) ? 0 : 1, 0);
    }
    auto r2 = make_phase_ring(2);
    rep.add("clifford.pi8_not_clifford.d2", is_clifford(r2, QOperator{2, 1, 1, pi8_gate()}) ? 1 : 0, 0);
    return rep;
}

inline SuiteReport verify_tricks(const VerifyOptions& o) {
    SuiteReport rep{"tricks", {}};
    for (int d : o.degrees_or({2, 3})) {
        auto r = make_phase_ring(d);
        auto t = circuit_tricks_check(r, o.seed);
        rep.add(detail::tag("tricks.trick1", d), t.trick1, o.tol);
        rep.add(detail::tag("tricks.trick2", d), t.trick2, o.tol);
        rep.add(detail::tag("tricks.trick3", d), t.trick3, o.tol);
        rep.add(detail::tag("tricks.trick4", d), t.trick4, o.tol);
        rep.add(detail::tag("tricks.trick4_phase", d), t.phase4, o.tol);
    }
    return rep;
}

inline SuiteReport verify_teleport(const VerifyOptions& o) {
    SuiteReport rep{"protocols", {}};
    for (int d : o.degrees_or({2, 3, 5})) {
        auto r = make_phase_ring(d);
        auto sc = teleportation_script(r);
        Rng rng(o.seed + d);
        double worst = 0;
        for (int t = 0; t < 4; ++t) {
            QState in = random_state(d, 1, rng);
            worst = std::max(worst, detail::protocol_error(sc, in, in));
        }
        rep.add(detail::tag("protocols.teleport_all_branches", d), worst, o.tol);
        rep.add_count(detail::tag("protocols.teleport_edits", d), sc.edits(), 1);
        rep.add_count(detail::tag("protocols.teleport_cdits", d), sc.cdits(), 2);
    }
    return rep;
}

inline SuiteReport verify_build_max(const VerifyOptions& o) {
    SuiteReport rep{"protocols", {}};
    std::vector<std::pair<int, int>> chains = {{3, 2}, {3, 3}, {4, 2}};
    if (!o.degrees.empty() || !o.sizes.empty()) {
        chains.clear();
        for (int d : o.degrees_or({2, 3}))
            for (int n : o.sizes_or({3, 4})) chains.push_back({n, d});
    }
    for (auto [n, d] : chains) {
        auto r = make_phase_ring(d);
        auto sc = build_max_script(r, n);
        rep.add(detail::tag("protocols.build_max_all_branches", d, n), detail::protocol_error(sc, detail::no_input(d), max_state(r, n)),
                o.tol);
        rep.add_count(detail::tag("protocols.build_max_edits", d, n), sc.edits(), n - 1);
        rep.add_count(detail::tag("protocols.build_max_cdits.literal", d, n), sc.cdits(), n - 1, CheckRole::literal);
        rep.add_count(detail::tag("protocols.build_max_cdits", d, n), sc.cdits(), n - 2);
    }
    return rep;
}

// party sizes up to four qudits in total
inline SuiteReport verify_bvk(const VerifyOptions& o) {
    SuiteReport rep{"protocols", {}};
    for (int d : o.degrees_or({2, 3})) {
        auto r = make_phase_ring(d);
        double local = 0, drawn = 0;
        int local_cdits = 0, drawn_cdits_off = 0, edits_off = 0;
        for (auto& sizes : detail::compositions(4, 4)) {
            int total = 0, groups = 0;
            for (int s : sizes) {
                total += s;
                groups += s >= 2;
            }
            auto sc = bvk_merge_script(r, sizes);
            local = std::max(local, detail::protocol_error(sc, detail::no_input(d), max_state(r, total)));
            local_cdits += sc.cdits();
            edits_off += std::abs(sc.edits() - (groups + 1));
            auto as_drawn = bvk_merge_script(r, sizes, BvkRouting::as_drawn);
            drawn = std::max(drawn, detail::protocol_error(as_drawn, detail::no_input(d), max_state(r, total)));
            drawn_cdits_off += std::abs(as_drawn.cdits() - int(sizes.size()));
        }
        rep.add(detail::tag("protocols.bvk_all_branches", d), local, o.tol);
        rep.add_count(detail::tag("protocols.bvk_cdits", d), local_cdits, 0);
        rep.add_count(detail::tag("protocols.bvk_resources_consumed", d), edits_off, 0);
        rep.add(detail::tag("protocols.bvk_as_drawn_all_branches", d), drawn, o.tol, CheckRole::info);
        rep.add_count(detail::tag("protocols.bvk_as_drawn_cdits_one_per_party", d), drawn_cdits_off, 0, CheckRole::info);
    }
    return rep;
}

inline SuiteReport verify_protocols(const VerifyOptions& o) {
    SuiteReport rep = verify_teleport(o);
    rep.append(verify_build_max(o));
    rep.append(verify_bvk(o));
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"relations", "parafermion", "sft",    "states",
                                                   "entropy",   "clifford",    "tricks", "protocols"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& o) {
    if (name == "relations") return verify_relations(o);
    if (name == "parafermion") return verify_parafermion(o);
    if (name == "sft") return verify_sft(o);
    if (name == "states") return verify_states(o);
    if (name == "entropy") return verify_entropy(o);
    if (name == "clifford") return verify_clifford(o);
    if (name == "tricks") return verify_tricks(o);
    if (name == "protocols") return verify_protocols(o);
    throw Error("unknown suite '" + name + "'");
}

}  // namespace pappa
