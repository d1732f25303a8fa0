#pragma once

#include <sstream>
#include <string>

#include "diagram.hpp"

namespace pappa {

namespace detail {

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& s) {
    auto h = s.find('#');
    return trim(h == std::string::npos ? s : s.substr(0, h));
}

inline long parse_long(const std::string& s, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad " + what + " '" + s + "'");
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// key=value pairs of a header line, after the leading keyword
inline std::map<std::string, std::string> header_fields(const std::string& line, const std::string& keyword, int lineno) {
    auto ws = words(line);
    if (ws.empty() || ws[0] != keyword) throw ParseError(lineno, "expected header '" + keyword + " ...'");
    std::map<std::string, std::string> f;
    for (std::size_t i = 1; i < ws.size(); ++i) {
        auto eq = ws[i].find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value, got '" + ws[i] + "'");
        f[ws[i].substr(0, eq)] = ws[i].substr(eq + 1);
    }
    return f;
}

}  // namespace detail

// diagram d=<int> in=<int> out=<int>
// one layer per line: cap@i cup@i chg@i:k[:tier] b+@i b-@i sym@i:m box NAME@i:w[:c[:tier]] id
inline Diagram parse_diagram(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    bool have_header = false;
    Diagram D;
    int w = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        if (!have_header) {
            auto f = detail::header_fields(line, "diagram", lineno);
            for (const auto& key : {"d", "in", "out"})
                if (!f.count(key)) throw ParseError(lineno, std::string("header is missing ") + key + "=");
            D.d = int(detail::parse_long(f["d"], lineno, "degree"));
            if (D.d < 2) throw ParseError(lineno, "degree must be at least 2");
            D.in_points = int(detail::parse_long(f["in"], lineno, "input count"));
            D.out_points = int(detail::parse_long(f["out"], lineno, "output count"));
            if (D.in_points < 0 || D.out_points < 0) throw ParseError(lineno, "negative point count");
            w = D.in_points;
            have_header = true;
            continue;
        }
        auto toks = detail::words(line);
        if (toks[0] == "scalar") {
            auto f = detail::header_fields(line, "scalar", lineno);
            if (f.count("eps")) D.scalar.eps = detail::parse_long(f["eps"], lineno, "epsilon exponent");
            if (f.count("quarter")) D.scalar.quarter = detail::parse_long(f["quarter"], lineno, "quarter power");
            double re = f.count("re") ? std::stod(f["re"]) : 1.0, im = f.count("im") ? std::stod(f["im"]) : 0.0;
            D.scalar.residual = {re, im};
            D.scalar.zero = f.count("zero") && f["zero"] == "1";
            continue;
        }
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            if (t == "id") continue;
            if (t == "box") {
                if (i + 1 >= toks.size()) throw ParseError(lineno, "box needs NAME@i:w[:c]");
                const std::string& spec = toks[++i];
                auto at = spec.find('@');
                if (at == std::string::npos || at == 0) throw ParseError(lineno, "box needs NAME@i:w[:c]");
                auto parts = detail::split(spec.substr(at + 1), ':');
                if (parts.size() < 2 || parts.size() > 4) throw ParseError(lineno, "box needs NAME@i:w[:c[:tier]]");
                std::string name = spec.substr(0, at);
                bool dagger = false;
                if (name.size() > 1 && name.back() == '*') {
                    dagger = true;
                    name.pop_back();
                }
                auto g = Generator::box_at(name, int(detail::parse_long(parts[0], lineno, "strand")),
                                           int(detail::parse_long(parts[1], lineno, "width")),
                                           parts.size() > 2 ? detail::parse_long(parts[2], lineno, "charge") : 0,
                                           parts.size() > 3 ? detail::parse_long(parts[3], lineno, "tier") : 0);
                g.dagger = dagger;
                gens.push_back(g);
                continue;
            }
            auto at = t.find('@');
            if (at == std::string::npos) throw ParseError(lineno, "unknown generator '" + t + "'");
            std::string head = t.substr(0, at);
            auto parts = detail::split(t.substr(at + 1), ':');
            int s = int(detail::parse_long(parts[0], lineno, "strand"));
            if (s < 0) throw ParseError(lineno, "negative strand index");
            auto want = [&](std::size_t lo, std::size_t hi) {
                if (parts.size() < lo || parts.size() > hi) throw ParseError(lineno, "wrong argument count in '" + t + "'");
            };
            if (head == "cap") { want(1, 1); gens.push_back(Generator::at(GenKind::cap, s)); }
            else if (head == "cup") { want(1, 1); gens.push_back(Generator::at(GenKind::cup, s)); }
            else if (head == "b+") { want(1, 1); gens.push_back(Generator::at(GenKind::braid_pos, s)); }
            else if (head == "b-") { want(1, 1); gens.push_back(Generator::at(GenKind::braid_neg, s)); }
            else if (head == "sym") { want(2, 2); gens.push_back(Generator::sym_at(s, detail::parse_long(parts[1], lineno, "m"))); }
            else if (head == "chg") {
                want(2, 3);
                gens.push_back(Generator::charge_at(s, detail::parse_long(parts[1], lineno, "charge"),
                                                    parts.size() > 2 ? detail::parse_long(parts[2], lineno, "tier") : 0));
            } else {
                throw ParseError(lineno, "unknown generator '" + head + "'");
            }
        }
        try {
            Layer L = layer_from_generators(w, gens);
            w = L.bottom_width();
            D.layers.push_back(std::move(L));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!have_header) throw ParseError(lineno, "missing 'diagram' header");
    if (w != D.out_points)
        throw ParseError(lineno, "diagram ends with " + std::to_string(w) + " strands, header says out=" +
                                     std::to_string(D.out_points));
    return D;
}

inline std::string to_text(const Diagram& D) {
    std::ostringstream os;
    os << "diagram d=" << D.d << " in=" << D.in_points << " out=" << D.out_points << "\n";
    if (!(D.scalar == Scalar{})) {
        os.precision(17);
        os << "scalar eps=" << D.scalar.eps << " quarter=" << D.scalar.quarter << " re=" << D.scalar.residual.real()
           << " im=" << D.scalar.residual.imag() << (D.scalar.zero ? " zero=1" : "") << "\n";
    }
    for (const auto& L : D.layers) {
        auto gens = generators_of(L);
        if (gens.empty()) {
            os << "id\n";
            continue;
        }
        bool first = true;
        for (const auto& g : gens) {
            if (!first) os << ' ';
            first = false;
            switch (g.kind) {
                case GenKind::cap: os << "cap@" << g.strand; break;
                case GenKind::cup: os << "cup@" << g.strand; break;
                case GenKind::braid_pos: os << "b+@" << g.strand; break;
                case GenKind::braid_neg: os << "b-@" << g.strand; break;
                case GenKind::sym: os << "sym@" << g.strand << ':' << g.m; break;
                case GenKind::charge: os << "chg@" << g.strand << ':' << g.k << ':' << g.tier; break;
                case GenKind::box:
                    os << "box " << g.name << (g.dagger ? "*" : "") << '@' << g.strand << ':' << g.width << ':' << g.charge
                       << ':' << g.tier;
                    break;
                case GenKind::id_strand: break;
            }
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pappa
