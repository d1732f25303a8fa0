#pragma once

#include <optional>

#include "diagram_dsl.hpp"
#include "protocols.hpp"

namespace pappa {

struct InputSpec {
    enum class Kind { basis, plus, random } kind = Kind::basis;
    std::vector<int> digits;  // basis only; empty means all zero
};

enum class Expectation { none, input, max, ghz };

// A parsed .pc or .pp file, lowered to a protocol script.
struct ScriptFile {
    ProtocolScript script;
    InputSpec input;
    Expectation expect = Expectation::none;
    bool circuit = false;
};

namespace detail {

inline std::string join(const std::vector<std::string>& ws, std::size_t from, const std::string& sep = "") {
    std::string s;
    for (std::size_t i = from; i < ws.size(); ++i) s += (i > from ? sep : "") + ws[i];
    return s;
}

class ScriptCompiler {
public:
    ScriptCompiler(ScriptFile& f, const PhaseRing& r) : f_(f), r_(r) {}

    int line = 0;

    // q3 or 3, 1-based
    int site(std::string s) const {
        if (!s.empty() && s[0] == 'q') s = s.substr(1);
        long v = parse_long(s, line, "qudit");
        if (v < 1 || v > f_.script.n) throw ParseError(line, "qudit " + std::to_string(v) + " out of range 1.." + std::to_string(f_.script.n));
        return int(v - 1);
    }

    // NAME or NAME^p
    std::pair<std::string, Mat> gate(const std::string& token) const {
        auto hat = token.find('^');
        std::string name = token.substr(0, hat);
        long p = hat == std::string::npos ? 1 : parse_long(token.substr(hat + 1), line, "gate power");
        Mat base;
        try {
            base = named_gate(r_, name);
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
        return {token, mat_pow(base, p)};
    }

    std::map<std::string, std::string> fields(const std::vector<std::string>& ws, std::size_t from) const {
        std::map<std::string, std::string> out;
        for (std::size_t i = from; i < ws.size(); ++i) {
            auto eq = ws[i].find('=');
            if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + ws[i] + "'");
            out[ws[i].substr(0, eq)] = ws[i].substr(eq + 1);
        }
        return out;
    }

    std::pair<int, int> control_target(const std::vector<std::string>& ws, std::size_t from) const {
        auto kv = fields(ws, from);
        if (!kv.count("c") || !kv.count("t") || kv.size() != 2) throw ParseError(line, "expected c=<qudit> t=<qudit>");
        int c = site(kv["c"]), t = site(kv["t"]);
        if (c == t) throw ParseError(line, "control and target coincide");
        return {c, t};
    }

    // gate, ctrl, cz, sft, measure/meter, cond; false if the keyword is not a step
    bool step(const std::vector<std::string>& ws) {
        auto& sc = f_.script;
        const std::string& kw = ws[0];
        if (kw == "gate") {
            auto body = join(ws, 1);
            auto at = body.find('@');
            if (at == std::string::npos) throw ParseError(line, "expected gate NAME@<qudit>");
            auto [label, m] = gate(body.substr(0, at));
            sc.gate(label, m, {site(body.substr(at + 1))});
        } else if (kw == "ctrl") {
            if (ws.size() < 2) throw ParseError(line, "expected ctrl NAME c=<qudit> t=<qudit>");
            auto [label, m] = gate(ws[1]);
            auto [c, t] = control_target(ws, 2);
            sc.gate("C" + label, controlled_gate(r_, 2, 0, 1, m), {c, t});
        } else if (kw == "cz") {
            auto [c, t] = control_target(ws, 1);
            sc.gate("CZ", cz_gate(r_), {c, t});
        } else if (kw.rfind("sft", 0) == 0) {
            auto body = join(ws, 0);
            std::vector<int> sites;
            auto at = body.find('@');
            if (body.substr(0, at) != "sft") throw ParseError(line, "expected sft or sft@<qudits>");
            if (at == std::string::npos) {
                for (int s = 0; s < sc.n; ++s) sites.push_back(s);
            } else {
                for (auto& q : split(body.substr(at + 1), ',')) sites.push_back(site(q));
            }
            sc.gate("SFT", sft_gate(r_, int(sites.size())).matrix, sites);
        } else if (kw == "meter" || kw.rfind("measure", 0) == 0) {
            // meter q2 -> m1 | measure@2 -> m1
            auto body = join(ws, 0, " ");
            auto arrow = body.find("->");
            if (arrow == std::string::npos) throw ParseError(line, "expected '-> <register>'");
            std::string lhs = trim(body.substr(0, arrow)), reg = trim(body.substr(arrow + 2));
            std::string where = kw == "meter" ? trim(lhs.substr(5)) : lhs.substr(lhs.find('@') == std::string::npos ? lhs.size() : lhs.find('@') + 1);
            if (where.empty() || reg.empty() || reg.find(' ') != std::string::npos) throw ParseError(line, "malformed meter statement");
            sc.meter(site(where), reg);
        } else if (kw == "cond") {
            // cond m1 apply Z^-m1 @3
            if (ws.size() < 4 || ws[2] != "apply") throw ParseError(line, "expected cond <register> apply NAME^[-][k]<register> @<qudit>");
            const std::string& reg = ws[1];
            auto body = join(ws, 3);
            auto at = body.find('@');
            if (at == std::string::npos) throw ParseError(line, "missing @<qudit>");
            std::string op = body.substr(0, at);
            auto hat = op.find('^');
            if (hat == std::string::npos) throw ParseError(line, "expected NAME^" + reg);
            std::string name = op.substr(0, hat), ex = op.substr(hat + 1);
            if (ex.size() < reg.size() || ex.substr(ex.size() - reg.size()) != reg)
                throw ParseError(line, "exponent must end with the register '" + reg + "'");
            std::string k = ex.substr(0, ex.size() - reg.size());
            int coef = k.empty() || k == "+" ? 1 : k == "-" ? -1 : int(parse_long(k, line, "coefficient"));
            auto [label, m] = gate(name);
            sc.cond(reg, label, m, coef, site(body.substr(at + 1)));
        } else {
            return false;
        }
        return true;
    }

    void input(const std::vector<std::string>& ws, std::size_t from) {
        if (from >= ws.size()) throw ParseError(line, "missing input state");
        const std::string& kind = ws[from];
        auto& in = f_.input;
        in.digits.clear();
        if (kind == "random") {
            in.kind = InputSpec::Kind::random;
        } else if (kind == "plus") {
            in.kind = InputSpec::Kind::plus;
        } else {
            in.kind = InputSpec::Kind::basis;
            std::size_t i = kind == "basis" ? from + 1 : from;
            for (; i < ws.size(); ++i) in.digits.push_back(int(mod(parse_long(ws[i], line, "basis digit"), r_.d)));
            if (int(in.digits.size()) != int(f_.script.input_sites.size()))
                throw ParseError(line, "basis input needs one digit per input qudit");
        }
        if (from + 1 < ws.size() && in.kind != InputSpec::Kind::basis) throw ParseError(line, "unexpected tokens after '" + kind + "'");
    }

private:
    ScriptFile& f_;
    const PhaseRing& r_;
};

struct Source {
    std::vector<std::pair<int, std::string>> lines;  // line number, comment-free text
};

inline Source read_source(const std::string& text) {
    Source s;
    std::istringstream is(text);
    std::string raw;
    int no = 0;
    while (std::getline(is, raw)) {
        ++no;
        auto t = strip_comment(raw);
        if (!t.empty()) s.lines.push_back({no, t});
    }
    return s;
}

inline int header_int(const std::map<std::string, std::string>& f, const std::string& key, std::optional<int> over, int line,
                      std::optional<int> fallback = std::nullopt) {
    if (over) return *over;
    auto it = f.find(key);
    if (it == f.end()) {
        if (fallback) return *fallback;
        throw ParseError(line, "header needs " + key + "=<int>");
    }
    return int(parse_long(it->second, line, key));
}

inline void check_d(int d, int line) {
    if (d < 2) throw ParseError(line, "d must be at least 2");
}

}  // namespace detail

// circuit d=<int> n=<int>; one statement per line, qudits 1-based
inline ScriptFile parse_circuit(const std::string& text, std::optional<int> d_override = std::nullopt,
                                std::optional<int> n_override = std::nullopt) {
    auto src = detail::read_source(text);
    if (src.lines.empty()) throw ParseError(1, "empty circuit");
    auto [hl, head] = src.lines[0];
    auto hf = detail::header_fields(head, "circuit", hl);
    ScriptFile f;
    f.circuit = true;
    auto& sc = f.script;
    sc.d = detail::header_int(hf, "d", d_override, hl);
    sc.n = detail::header_int(hf, "n", n_override, hl);
    detail::check_d(sc.d, hl);
    if (sc.n < 1) throw ParseError(hl, "n must be at least 1");
    checked_dim(sc.d, sc.n);
    auto r = make_phase_ring(sc.d);
    Party all{"circuit", {}};
    for (int s = 0; s < sc.n; ++s) {
        all.sites.push_back(s);
        sc.input_sites.push_back(s);
        sc.output_sites.push_back(s);
    }
    sc.parties = {all};
    detail::ScriptCompiler c(f, r);
    for (std::size_t i = 1; i < src.lines.size(); ++i) {
        c.line = src.lines[i].first;
        auto ws = detail::words(src.lines[i].second);
        if (ws[0] == "init") {
            c.input(ws, 1);
        } else if (!c.step(ws)) {
            throw ParseError(c.line, "unknown statement '" + ws[0] + "'");
        }
    }
    try {
        sc.validate();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(src.lines.back().first, e.what());
    }
    return f;
}

// protocol d=<int> [n=<int>]; parties, resources, input, steps, output, expect
inline ScriptFile parse_protocol(const std::string& text, std::optional<int> d_override = std::nullopt,
                                 std::optional<int> n_override = std::nullopt) {
    auto src = detail::read_source(text);
    if (src.lines.empty()) throw ParseError(1, "empty protocol");
    auto [hl, head] = src.lines[0];
    auto hf = detail::header_fields(head, "protocol", hl);
    ScriptFile f;
    auto& sc = f.script;
    sc.d = detail::header_int(hf, "d", d_override, hl);
    detail::check_d(sc.d, hl);

    // the register size is the largest qudit named by a party unless given
    int top = 0;
    for (std::size_t i = 1; i < src.lines.size(); ++i) {
        auto ws = detail::words(src.lines[i].second);
        auto colon = src.lines[i].second.find(':');
        if (ws[0] != "party" || colon == std::string::npos) continue;
        for (auto& w : detail::words(src.lines[i].second.substr(colon + 1))) {
            std::string q = w[0] == 'q' ? w.substr(1) : w;
            top = std::max(top, int(detail::parse_long(q, src.lines[i].first, "qudit")));
        }
    }
    sc.n = detail::header_int(hf, "n", n_override, hl, top);
    if (sc.n < 1) throw ParseError(hl, "protocol has no qudits");
    checked_dim(sc.d, sc.n);
    auto r = make_phase_ring(sc.d);
    detail::ScriptCompiler c(f, r);
    bool have_input = false, have_output = false;
    for (std::size_t i = 1; i < src.lines.size(); ++i) {
        c.line = src.lines[i].first;
        const std::string& text_line = src.lines[i].second;
        auto colon = text_line.find(':');
        auto ws = detail::words(text_line);
        const std::string kw = ws[0];
        if (kw == "party" || kw == "resource" || kw == "input" || kw == "output" || kw == "output:" || kw == "input:") {
            if (colon == std::string::npos) throw ParseError(c.line, "expected ':' in '" + kw + "' statement");
            auto before = detail::words(text_line.substr(0, colon));
            auto after = detail::words(text_line.substr(colon + 1));
            if (kw == "party") {
                if (before.size() != 2) throw ParseError(c.line, "expected party NAME: <qudits>");
                Party p{before[1], {}};
                for (auto& q : after) p.sites.push_back(c.site(q));
                sc.parties.push_back(p);
            } else if (kw == "resource") {
                if (before.size() != 2) throw ParseError(c.line, "expected resource maxK: <qudits> or ghzK: <qudits>");
                const std::string& kind = before[1];
                Resource res;
                std::string count;
                if (kind.rfind("max", 0) == 0) {
                    res.kind = Resource::Kind::max;
                    count = kind.substr(3);
                } else if (kind.rfind("ghz", 0) == 0) {
                    res.kind = Resource::Kind::ghz;
                    count = kind.substr(3);
                } else {
                    throw ParseError(c.line, "unknown resource '" + kind + "'");
                }
                for (auto& q : after) res.sites.push_back(c.site(q));
                if (!count.empty() && detail::parse_long(count, c.line, "resource size") != long(res.sites.size()))
                    throw ParseError(c.line, "resource " + kind + " lists " + std::to_string(res.sites.size()) + " qudits");
                sc.resources.push_back(res);
            } else if (kw == "input" || kw == "input:") {
                if (have_input) throw ParseError(c.line, "second input statement");
                have_input = true;
                for (std::size_t j = 1; j < before.size(); ++j) sc.input_sites.push_back(c.site(before[j]));
                if (sc.input_sites.empty()) {
                    if (after.empty() || after[0] != "none") throw ParseError(c.line, "input needs qudits or 'none'");
                } else {
                    c.input(after, 0);
                }
            } else {
                if (have_output) throw ParseError(c.line, "second output statement");
                have_output = true;
                for (auto& q : after) sc.output_sites.push_back(c.site(q));
            }
        } else if (kw == "send") {
            // send A->B m1
            auto body = detail::join(ws, 1, " ");
            auto arrow = body.find("->");
            if (arrow == std::string::npos) throw ParseError(c.line, "expected send FROM->TO <register>");
            auto from = detail::trim(body.substr(0, arrow));
            auto rest = detail::words(body.substr(arrow + 2));
            if (from.empty() || rest.size() != 2) throw ParseError(c.line, "expected send FROM->TO <register>");
            sc.send(from, rest[0], rest[1]);
        } else if (kw == "expect") {
            if (ws.size() != 2) throw ParseError(c.line, "expected expect input|max|ghz|none");
            if (ws[1] == "input") f.expect = Expectation::input;
            else if (ws[1] == "max") f.expect = Expectation::max;
            else if (ws[1] == "ghz") f.expect = Expectation::ghz;
            else if (ws[1] == "none") f.expect = Expectation::none;
            else throw ParseError(c.line, "unknown expectation '" + ws[1] + "'");
        } else if (!c.step(ws)) {
            throw ParseError(c.line, "unknown statement '" + kw + "'");
        }
    }
    if (sc.parties.empty()) throw ParseError(hl, "protocol declares no parties");
    if (f.expect == Expectation::input && sc.input_sites.size() != sc.output_sites.size())
        throw ParseError(src.lines.back().first, "expect input needs as many output as input qudits");
    try {
        sc.validate();
        for (auto& st : sc.steps)
            if (auto* s = std::get_if<SendStep>(&st)) sc.party_index(s->to);
    } catch (const Error& e) {
        throw ParseError(src.lines.back().first, e.what());
    }
    return f;
}

inline QState make_input(const ScriptFile& f, std::uint64_t seed) {
    const int d = f.script.d, n = int(f.script.input_sites.size());
    QState s{d, n, Vec::Zero(checked_dim(d, n))};
    switch (f.input.kind) {
        case InputSpec::Kind::basis:
            s.amp(f.input.digits.empty() ? 0 : index_of(f.input.digits, d)) = 1.0;
            break;
        case InputSpec::Kind::plus:
            s.amp.setConstant(1.0 / std::sqrt(double(s.amp.size())));
            break;
        case InputSpec::Kind::random: {
            // a stream separate from the meters
            Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
            s = random_state(d, n, rng);
            break;
        }
    }
    return s;
}

inline std::optional<QState> expected_output(const ScriptFile& f, const QState& input) {
    auto r = make_phase_ring(f.script.d);
    const int m = int(f.script.output_sites.size());
    switch (f.expect) {
        case Expectation::input: return input;
        case Expectation::max: return max_state(r, m);
        case Expectation::ghz: return ghz_state(r, m);
        case Expectation::none: break;
    }
    return std::nullopt;
}

// The unitary of a measurement-free circuit.
inline Mat circuit_matrix(const ScriptFile& f) {
    const auto& sc = f.script;
    const std::size_t dim = checked_dim(sc.d, sc.n);
    Mat U = Mat::Identity(dim, dim);
    for (auto& st : sc.steps) {
        auto* g = std::get_if<GateStep>(&st);
        if (!g) throw Error("the circuit measures, so it has no unitary");
        U = apply_on_sites(U, sc.d, sc.n, g->sites, g->matrix);
    }
    return U;
}

}  // namespace pappa
