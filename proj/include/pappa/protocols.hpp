#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "entangle.hpp"

namespace pappa {

struct Party {
    std::string name;
    std::vector<int> sites;
};

// A pre-shared |Max>_k (or GHZ) prepared on `sites` before any step runs.
struct Resource {
    enum class Kind { max, ghz } kind = Kind::max;
    std::vector<int> sites;
};

struct GateStep {
    std::string label;
    Mat matrix;
    std::vector<int> sites;
};

struct MeterStep {
    int site = 0;
    std::string reg;
};

struct SendStep {
    std::string from, to, reg;
};

// Applies base^{coef * value(reg)} on `site`.
struct CondStep {
    std::string reg;
    std::string label;
    Mat base;
    int coef = 1;
    int site = 0;
};

using Step = std::variant<GateStep, MeterStep, SendStep, CondStep>;

struct ProtocolScript {
    int d = 2;
    int n = 0;
    std::vector<Party> parties;
    std::vector<Resource> resources;
    std::vector<Step> steps;
    std::vector<int> input_sites;   // where the input state is loaded
    std::vector<int> output_sites;  // where the result is read

    int owner(int site) const {
        for (std::size_t p = 0; p < parties.size(); ++p)
            for (int s : parties[p].sites)
                if (s == site) return int(p);
        throw LocalityError("site " + std::to_string(site) + " belongs to no party");
    }
    int party_index(const std::string& name) const {
        for (std::size_t p = 0; p < parties.size(); ++p)
            if (parties[p].name == name) return int(p);
        throw Error("unknown party '" + name + "'");
    }

    // edits: shared |Max> resources on two or more qudits; cdits: classical messages
    int edits() const {
        int e = 0;
        for (auto& r : resources)
            if (r.kind == Resource::Kind::max && r.sites.size() >= 2) ++e;
        return e;
    }
    int cdits() const {
        int c = 0;
        for (auto& s : steps) c += std::holds_alternative<SendStep>(s);
        return c;
    }

    ProtocolScript& gate(const std::string& label, const Mat& m, std::vector<int> sites) {
        steps.emplace_back(GateStep{label, m, std::move(sites)});
        return *this;
    }
    ProtocolScript& meter(int site, const std::string& reg) {
        steps.emplace_back(MeterStep{site, reg});
        return *this;
    }
    ProtocolScript& send(const std::string& from, const std::string& to, const std::string& reg) {
        steps.emplace_back(SendStep{from, to, reg});
        return *this;
    }
    ProtocolScript& cond(const std::string& reg, const std::string& label, const Mat& base, int coef, int site) {
        steps.emplace_back(CondStep{reg, label, base, coef, site});
        return *this;
    }

    // Structural checks: parties partition the register, gates are local, registers are known where used.
    void validate() const {
        std::vector<int> seen(n, 0);
        for (auto& p : parties)
            for (int s : p.sites) {
                if (s < 0 || s >= n) throw DimensionError("party site out of range");
                if (seen[s]++) throw LocalityError("site " + std::to_string(s) + " is owned twice");
            }
        for (int s = 0; s < n; ++s)
            if (!seen[s]) throw LocalityError("site " + std::to_string(s) + " belongs to no party");
        std::vector<int> used(n, 0);
        for (auto& r : resources)
            for (int s : r.sites)
                if (used[s]++) throw Error("two resources share a site");
        for (int s : input_sites)
            if (used[s]) throw Error("input site overlaps a resource");

        std::map<std::string, int> measured_by;
        std::map<std::string, std::set<int>> known;
        for (auto& st : steps) {
            if (auto* g = std::get_if<GateStep>(&st)) {
                if (g->sites.empty()) throw Error("gate without sites");
                int p = owner(g->sites[0]);
                for (int s : g->sites)
                    if (owner(s) != p)
                        throw LocalityError("gate '" + g->label + "' crosses parties " + parties[p].name + " and " +
                                            parties[owner(s)].name);
                if (g->matrix.rows() != Eigen::Index(ipow(d, int(g->sites.size()))))
                    throw DimensionError("gate '" + g->label + "' has the wrong size");
            } else if (auto* m = std::get_if<MeterStep>(&st)) {
                if (measured_by.count(m->reg)) throw Error("register '" + m->reg + "' written twice");
                measured_by[m->reg] = owner(m->site);
                known[m->reg].insert(owner(m->site));
            } else if (auto* c = std::get_if<SendStep>(&st)) {
                if (!measured_by.count(c->reg)) throw Error("unknown register '" + c->reg + "'");
                int from = party_index(c->from), to = party_index(c->to);
                if (!known[c->reg].count(from)) throw LocalityError(c->from + " does not hold register '" + c->reg + "'");
                known[c->reg].insert(to);
            } else if (auto* c = std::get_if<CondStep>(&st)) {
                if (!measured_by.count(c->reg)) throw Error("unknown register '" + c->reg + "'");
                if (!known[c->reg].count(owner(c->site)))
                    throw LocalityError("register '" + c->reg + "' has not been sent to " + parties[owner(c->site)].name);
            }
        }
    }
};

struct Transcript {
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, int>> outcomes;
    double probability = 1.0;
    QState final_state;
    int edits = 0;
    int cdits = 0;
    std::vector<QState> snapshots;

    int value(const std::string& reg) const {
        for (auto& [r, v] : outcomes)
            if (r == reg) return v;
        throw Error("unknown register '" + reg + "'");
    }
};

namespace detail {
inline QState prepare(const ProtocolScript& sc, const QState& input) {
    if (input.d != sc.d || input.n != int(sc.input_sites.size())) throw DimensionError("input does not fit the script");
    QState s{sc.d, sc.n, Vec::Zero(checked_dim(sc.d, sc.n))};
    for (Eigen::Index i = 0; i < input.amp.size(); ++i) {
        std::vector<int> k(sc.n, 0);
        auto in = digits_of(i, sc.d, input.n);
        for (std::size_t j = 0; j < in.size(); ++j) k[sc.input_sites[j]] = in[j];
        s.amp(index_of(k, sc.d)) = input.amp(i);
    }
    auto ring = make_phase_ring(sc.d);
    for (auto& r : sc.resources) {
        const int k = int(r.sites.size());
        Mat prep = r.kind == Resource::Kind::max ? sft_gate(ring, k).matrix
                                                 : Mat(fourier_all(ring, k, -1) * sft_gate(ring, k).matrix);
        s = apply(s, prep, r.sites);
    }
    return s;
}

using Chooser = std::function<void(const QState&, int site, const std::function<void(const Measurement&)>&)>;

inline void execute(const ProtocolScript& sc, std::size_t i, QState s, Transcript t, bool snapshots,
                    const Chooser& choose, const std::function<void(Transcript&&)>& done) {
    for (; i < sc.steps.size(); ++i) {
        const Step& st = sc.steps[i];
        if (auto* m = std::get_if<MeterStep>(&st)) {
            choose(s, m->site, [&](const Measurement& res) {
                Transcript u = t;
                u.outcomes.emplace_back(m->reg, res.outcome);
                u.probability *= res.probability;
                if (snapshots) u.snapshots.push_back(res.post);
                execute(sc, i + 1, res.post, std::move(u), snapshots, choose, done);
            });
            return;
        }
        if (auto* g = std::get_if<GateStep>(&st)) {
            s = apply(s, g->matrix, g->sites);
        } else if (auto* c = std::get_if<CondStep>(&st)) {
            s = apply(s, mat_pow(c->base, long(c->coef) * t.value(c->reg)), {c->site});
        }
        if (snapshots) t.snapshots.push_back(s);
    }
    t.final_state = s;
    done(std::move(t));
}
}  // namespace detail

// Samples each meter from its distribution; identical seeds give identical transcripts.
inline Transcript run(const ProtocolScript& sc, const QState& input, std::uint64_t seed, bool snapshots = false) {
    sc.validate();
    Rng rng(seed);
    Transcript t;
    t.seed = seed;
    t.edits = sc.edits();
    t.cdits = sc.cdits();
    Transcript out;
    QState s = detail::prepare(sc, input);
    detail::execute(
        sc, 0, s, t, snapshots,
        [&](const QState& st, int site, const std::function<void(const Measurement&)>& k) { k(measure(st, site, rng)); },
        [&](Transcript&& r) { out = std::move(r); });
    return out;
}

// Every outcome branch with nonzero probability.
inline std::vector<Transcript> run_branches(const ProtocolScript& sc, const QState& input, double cutoff = 1e-14) {
    sc.validate();
    Transcript t;
    t.edits = sc.edits();
    t.cdits = sc.cdits();
    std::vector<Transcript> out;
    QState s = detail::prepare(sc, input);
    detail::execute(
        sc, 0, s, t, false,
        [&](const QState& st, int site, const std::function<void(const Measurement&)>& k) {
            for (int v = 0; v < sc.d; ++v) {
                Measurement m = measure_outcome(st, site, v);
                if (m.probability > cutoff) k(m);
            }
        },
        [&](Transcript&& r) { out.push_back(std::move(r)); });
    return out;
}

// The state on `keep` once every other site has collapsed to a basis state.
inline QState restrict_to(const QState& s, const std::vector<int>& keep) {
    Eigen::Index peak = 0;
    s.amp.cwiseAbs().maxCoeff(&peak);
    auto fixed = digits_of(std::size_t(peak), s.d, s.n);
    QState out{s.d, int(keep.size()), Vec::Zero(checked_dim(s.d, int(keep.size())))};
    for (Eigen::Index i = 0; i < out.amp.size(); ++i) {
        auto k = fixed;
        auto part = digits_of(i, s.d, out.n);
        for (std::size_t j = 0; j < keep.size(); ++j) k[keep[j]] = part[j];
        out.amp(i) = s.amp(index_of(k, s.d));
    }
    double total = s.amp.squaredNorm(), kept = out.amp.squaredNorm();
    if (std::abs(total - kept) > 1e-9 * std::max(total, 1.0))
        throw Error("the discarded sites are not in a product basis state");
    return out;
}

inline QState output_of(const ProtocolScript& sc, const Transcript& t) { return restrict_to(t.final_state, sc.output_sites); }

inline std::string report(const ProtocolScript& sc, const Transcript& t) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(12);
    os << "seed=" << t.seed << "\n";
    for (auto& [r, v] : t.outcomes) os << "outcome." << r << "=" << v << "\n";
    os << "probability=" << t.probability << "\n";
    os << "edits=" << t.edits << "\ncdits=" << t.cdits << "\n";
    QState out = output_of(sc, t);
    for (Eigen::Index i = 0; i < out.amp.size(); ++i) {
        cplx a = out.amp(i) / out.amp.norm();
        if (std::abs(a) < 1e-12) continue;
        os << "amp[";
        auto k = digits_of(i, out.d, out.n);
        for (std::size_t j = 0; j < k.size(); ++j) os << (j ? "," : "") << k[j];
        os << "]=" << (std::abs(a.real()) < 5e-13 ? 0.0 : a.real()) << (a.imag() < -5e-13 ? "-" : "+")
           << std::abs(std::abs(a.imag()) < 5e-13 ? 0.0 : a.imag()) << "i\n";
    }
    return os.str();
}

// Alice: input q0 and her half q1 of Max_2; Bob: q2.
inline ProtocolScript teleportation_script(const PhaseRing& r) {
    ProtocolScript sc;
    sc.d = r.d;
    sc.n = 3;
    sc.parties = {{"A", {0, 1}}, {"B", {2}}};
    sc.resources = {{Resource::Kind::max, {1, 2}}};
    sc.input_sites = {0};
    sc.output_sites = {2};
    const Mat X = pauli_gate(r, Pauli::X), Z = pauli_gate(r, Pauli::Z), F = fourier_gate(r);
    sc.gate("CX", controlled_gate(r, 2, 0, 1, X), {0, 1})
        .gate("F^-1", F.adjoint(), {0})
        .meter(0, "m1")
        .meter(1, "m2")
        .send("A", "B", "m1")
        .send("A", "B", "m2")
        .cond("m2", "X", X, 1, 2)
        .cond("m1", "Z", Z, 1, 2);
    return sc;
}

namespace detail {
// Merges Max_2 (control, partner) into a Max state through its qudit `target`; control and target share a party.
inline void merge_step(ProtocolScript& sc, const PhaseRing& r, int target, int control, int partner,
                       const std::string& reg, const std::string& from, const std::string& to) {
    const Mat X = pauli_gate(r, Pauli::X), Y = pauli_gate(r, Pauli::Y), F = fourier_gate(r);
    sc.gate("CX", controlled_gate(r, 2, 0, 1, X), {control, target})
        .gate("F", F, {control})
        .gate("CX^-1", controlled_gate(r, 2, 0, 1, X.adjoint()), {control, target})
        .meter(control, reg)
        .send(from, to, reg)
        .cond(reg, "Y", Y, -1, partner);
}
}  // namespace detail

// n parties in a chain: Max_2 on (2i, 2i+1); party j > 0 holds 2j-1 and 2j and merges the next pair.
inline ProtocolScript build_max_script(const PhaseRing& r, int n) {
    if (n < 2) throw Error("build_max needs n >= 2");
    ProtocolScript sc;
    sc.d = r.d;
    sc.n = 2 * (n - 1);
    for (int j = 0; j < n; ++j) {
        Party p{"P" + std::to_string(j + 1), {}};
        if (j > 0) p.sites.push_back(2 * j - 1);
        if (j < n - 1 && j > 0) p.sites.push_back(2 * j);
        if (j == 0) p.sites.push_back(0);
        sc.parties.push_back(p);
    }
    for (int i = 0; i + 1 < n; ++i) sc.resources.push_back({Resource::Kind::max, {2 * i, 2 * i + 1}});
    for (int j = 1; j + 1 < n; ++j)
        detail::merge_step(sc, r, 2 * j - 1, 2 * j, 2 * j + 1, "m" + std::to_string(j), sc.parties[j].name,
                           sc.parties[j + 1].name);
    sc.output_sites.push_back(0);
    for (int j = 1; j < n; ++j) sc.output_sites.push_back(2 * j - 1);
    return sc;
}

enum class BvkRouting { local, as_drawn };

// Party j holds n_j member qudits sharing Max_{n_j}; its leader (last member) also holds one qudit of the
// leaders' Max_p, and merges the two. With local routing each party undoes its own byproduct
// (X^m on the leader's member, Z^{-m} on every member). As drawn, each reading is sent to the next
// party in cyclic order, which applies Y^{-m} on its leader's member.
inline ProtocolScript bvk_merge_script(const PhaseRing& r, const std::vector<int>& sizes,
                                       BvkRouting routing = BvkRouting::local) {
    const int p = int(sizes.size());
    if (p < 2) throw Error("bvk_merge needs at least two parties");
    for (int s : sizes)
        if (s < 1) throw Error("every party needs at least one member");
    ProtocolScript sc;
    sc.d = r.d;
    std::vector<int> last(p), leader(p);
    std::vector<std::vector<int>> members(p);
    int site = 0;
    for (int j = 0; j < p; ++j) {
        Party party{"P" + std::to_string(j + 1), {}};
        for (int m = 0; m < sizes[j]; ++m) {
            members[j].push_back(site);
            party.sites.push_back(site);
            sc.output_sites.push_back(site++);
        }
        last[j] = site - 1;
        leader[j] = site;
        party.sites.push_back(site++);
        sc.parties.push_back(party);
        if (sizes[j] >= 2) sc.resources.push_back({Resource::Kind::max, members[j]});
    }
    sc.n = site;
    sc.resources.push_back({Resource::Kind::max, leader});
    const Mat X = pauli_gate(r, Pauli::X), Y = pauli_gate(r, Pauli::Y), Z = pauli_gate(r, Pauli::Z);
    const Mat F = fourier_gate(r);
    for (int j = 0; j < p; ++j)
        sc.gate("CX", controlled_gate(r, 2, 0, 1, X), {leader[j], last[j]})
            .gate("F", F, {leader[j]})
            .gate("CX^-1", controlled_gate(r, 2, 0, 1, X.adjoint()), {leader[j], last[j]})
            .meter(leader[j], "m" + std::to_string(j + 1));
    for (int j = 0; j < p; ++j) {
        const std::string reg = "m" + std::to_string(j + 1);
        if (routing == BvkRouting::local) {
            sc.cond(reg, "X", X, 1, last[j]);
            for (int s : members[j]) sc.cond(reg, "Z", Z, -1, s);
        } else {
            const int to = (j + 1) % p;
            sc.send(sc.parties[j].name, sc.parties[to].name, reg);
            sc.cond(reg, "Y", Y, -1, last[to]);
        }
    }
    return sc;
}

// Two qudits of one party measured in phase space (control on the first qudit).
inline ProtocolScript phase_space_measurement(const PhaseRing& r) {
    ProtocolScript sc;
    sc.d = r.d;
    sc.n = 2;
    sc.parties = {{"A", {0, 1}}};
    sc.input_sites = {0, 1};
    sc.output_sites = {};
    const Mat X = pauli_gate(r, Pauli::X), F = fourier_gate(r);
    sc.gate("CX", controlled_gate(r, 2, 0, 1, X), {0, 1}).gate("F^-1", F.adjoint(), {0}).meter(0, "l1").meter(1, "l2");
    return sc;
}

}  // namespace pappa
