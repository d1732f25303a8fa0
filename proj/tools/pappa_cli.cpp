#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>

#include "pappa/normalize.hpp"
#include "pappa/script_dsl.hpp"
#include "pappa/verify.hpp"

using namespace pappa;

namespace {

struct Config {
    int d = 0;  // 0: from the file header
    int n = 0;
    std::uint64_t seed = 1;
    double tol = default_tolerance;
    std::string emit;
    int jobs = 1;
    bool strict = false;
    std::string file;
    std::string suite;
    std::string gens = "X,Z,F,G";
    std::string member;
};

std::optional<int> opt(int v) { return v ? std::optional<int>(v) : std::nullopt; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string num(double x) {
    if (std::abs(x) < 5e-13) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

std::string cnum(cplx z) {
    if (std::abs(z.imag()) < 5e-13) return num(z.real());
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::string index_label(std::size_t i, int d, int n) {
    std::string s;
    auto k = digits_of(i, d, n);
    for (std::size_t j = 0; j < k.size(); ++j) s += (j ? "," : "") + std::to_string(k[j]);
    return s;
}

void print_matrix(const Mat& M, int d, int n_out, int n_in) {
    std::cout << "rows=" << M.rows() << "\ncols=" << M.cols() << "\n";
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (std::abs(M(i, j)) > 1e-12)
                std::cout << "m[" << index_label(i, d, n_out) << ";" << index_label(j, d, n_in) << "]=" << cnum(M(i, j)) << "\n";
}

void print_state(const QState& s, const std::string& prefix = "") {
    for (Eigen::Index i = 0; i < s.amp.size(); ++i)
        if (std::abs(s.amp(i)) > 1e-12) std::cout << prefix << "amp[" << index_label(i, s.d, s.n) << "]=" << cnum(s.amp(i)) << "\n";
}

int finish(bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

// replaces key=... on the header line, keeping the rest of the file
std::string override_header(const std::string& text, const std::string& key, int value) {
    if (!value) return text;
    std::istringstream is(text);
    std::string line, out;
    bool done = false;
    while (std::getline(is, line)) {
        if (!done && !detail::strip_comment(line).empty()) {
            done = true;
            auto ws = detail::words(detail::strip_comment(line));
            bool found = false;
            for (auto& w : ws)
                if (w.rfind(key + "=", 0) == 0) {
                    w = key + "=" + std::to_string(value);
                    found = true;
                }
            if (!found) ws.push_back(key + "=" + std::to_string(value));
            line = detail::join(ws, 0, " ");
        }
        out += line + "\n";
    }
    return out;
}

int diagram_eval(const Config& c) {
    Diagram D = parse_diagram(override_header(slurp(c.file), "d", c.d));
    auto r = make_phase_ring(D.d);
    QOperator op = evaluate(r, D);
    std::cout << "d=" << D.d << "\nin=" << D.in_points << "\nout=" << D.out_points << "\n";
    if (op.matrix.size() == 1 && c.emit != "matrix") {
        std::cout << "scalar=" << cnum(op.matrix(0, 0)) << "\n";
    } else if (op.matrix.cols() == 1 && c.emit != "matrix") {
        print_state(QState{D.d, op.n_out, op.matrix.col(0)});
    } else {
        print_matrix(op.matrix, D.d, op.n_out, op.n_in);
    }
    return finish(true);
}

int diagram_normalize(const Config& c) {
    Diagram D = parse_diagram(override_header(slurp(c.file), "d", c.d));
    Diagram N = normalize(D);
    auto r = make_phase_ring(D.d);
    double res = residual(evaluate(r, D).matrix, evaluate(r, N).matrix);
    std::cout << to_text(N);
    std::cout << "layers.before=" << D.layers.size() << "\nlayers.after=" << N.layers.size() << "\n";
    std::cout << "residual=" << num(res) << "\n";
    return finish(res <= c.tol);
}

int script_run(const ScriptFile& f, const Config& c) {
    QState in = make_input(f, c.seed);
    if (c.emit == "matrix") {
        if (!f.circuit) throw Error("--emit matrix applies to circuits only");
        const Mat U = circuit_matrix(f);
        print_matrix(U, f.script.d, f.script.n, f.script.n);
        return finish(true);
    }
    Transcript t = run(f.script, in, c.seed);
    if (c.emit == "state") {
        print_state(output_of(f.script, t));
        return finish(true);
    }
    std::cout << report(f.script, t);
    bool ok = true;
    if (auto want = expected_output(f, in)) {
        double fid = fidelity(output_of(f.script, t), *want);
        std::cout << "fidelity=" << num(fid) << "\n";
        ok = 1.0 - fid <= c.tol;
    }
    return finish(ok);
}

int protocol_branches(const ScriptFile& f, const Config& c) {
    QState in = make_input(f, c.seed);
    auto want = expected_output(f, in);
    auto all = run_branches(f.script, in);
    double total = 0, worst = 0;
    std::cout << "edits=" << f.script.edits() << "\ncdits=" << f.script.cdits() << "\nbranches=" << all.size() << "\n";
    for (std::size_t b = 0; b < all.size(); ++b) {
        const std::string p = "branch." + std::to_string(b) + ".";
        for (auto& [reg, v] : all[b].outcomes) std::cout << p << "outcome." << reg << "=" << v << "\n";
        std::cout << p << "probability=" << num(all[b].probability) << "\n";
        total += all[b].probability;
        QState out = output_of(f.script, all[b]);
        if (want) {
            double fid = fidelity(out, *want);
            worst = std::max(worst, 1.0 - fid);
            std::cout << p << "fidelity=" << num(fid) << "\n";
        }
        if (c.emit == "state") print_state(out, p);
    }
    std::cout << "probability.total=" << num(total) << "\n";
    if (want) std::cout << "fidelity.worst=" << num(1.0 - worst) << "\n";
    return finish(worst <= c.tol && std::abs(total - 1.0) <= c.tol);
}

int verify(const Config& c) {
    VerifyOptions o;
    if (c.d) o.degrees = {c.d};
    if (c.n) o.sizes = {c.n};
    o.tol = c.tol;
    o.seed = c.seed;
    std::vector<std::string> names;
    if (c.suite == "all") {
        names = suite_names();
    } else {
        if (std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
            throw CLI::ValidationError("unknown suite '" + c.suite + "'");
        names = {c.suite};
    }
    std::vector<SuiteReport> reports(names.size());
    if (c.jobs > 1) {
        std::vector<std::future<SuiteReport>> running;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (running.size() == std::size_t(c.jobs)) {
                for (std::size_t j = 0; j < running.size(); ++j) reports[i - running.size() + j] = running[j].get();
                running.clear();
            }
            running.push_back(std::async(std::launch::async, run_suite, names[i], o));
        }
        for (std::size_t j = 0; j < running.size(); ++j) reports[names.size() - running.size() + j] = running[j].get();
    } else {
        for (std::size_t i = 0; i < names.size(); ++i) reports[i] = run_suite(names[i], o);
    }
    bool ok = true;
    int failed = 0, literal_failed = 0, total = 0;
    double worst = 0;
    for (auto& rep : reports) {
        for (auto& ch : rep.checks) {
            std::cout << format_check(ch) << "\n";
            ++total;
            if (ch.role == CheckRole::asserted) worst = std::max(worst, ch.value);
            if (!ch.passed() && ch.role == CheckRole::asserted) ++failed;
            if (!ch.passed() && ch.role == CheckRole::literal) ++literal_failed;
        }
        std::cout << "suite." << rep.suite << "=" << (rep.ok(c.strict) ? "ok" : "FAIL") << "\n";
        ok = ok && rep.ok(c.strict);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", worst);
    std::cout << "checks=" << total << "\nfailed=" << failed << "\nliteral_failed=" << literal_failed << "\nmax_residual=" << buf
              << "\n";
    return finish(ok);
}

int group(const Config& c) {
    const int d = c.d ? c.d : 2, n = c.n ? c.n : 1;
    auto r = make_phase_ring(d);
    std::vector<std::string> local;
    std::vector<Mat> gens;
    for (auto& g : detail::split(c.gens, ',')) {
        if (g == "SFT") gens.push_back(sft_gate(r, n).matrix);
        else if (g == "CZ") {
            for (int a = 0; a + 1 < n; ++a) gens.push_back(embed(cz_gate(r), d, n, {a, a + 1}));
        } else local.push_back(g);
    }
    for (auto& m : local_generators(r, n, local)) gens.push_back(m);
    GroupReport rep = generate_group(r, n, gens);
    std::cout << "d=" << d << "\nn=" << n << "\ngenerators=" << rep.generators << "\norder=" << rep.order
              << "\ncap_hit=" << (rep.cap_hit ? 1 : 0) << "\n";
    bool ok = !rep.cap_hit;
    if (!c.member.empty()) {
        for (auto& m : detail::split(c.member, ',')) {
            Mat U;
            if (m == "SFT") U = sft_gate(r, n).matrix;
            else if (m == "CZ" && n == 2) U = cz_gate(r);
            else if (n == 1) U = named_gate(r, m);
            else throw CLI::ValidationError("unknown member '" + m + "' for n=" + std::to_string(n));
            bool in = rep.contains(U);
            bool cliff = is_clifford(r, QOperator{d, n, n, U});
            std::cout << "member." << m << "=" << (in ? 1 : 0) << "\nclifford." << m << "=" << (cliff ? 1 : 0) << "\n";
        }
    }
    return finish(ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pappa: charged-string diagrams, qudit circuits and entanglement protocols"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s, bool file) {
        s->add_option("--d", c.d, "qudit dimension, overrides the file header")->check(CLI::Range(2, 64));
        s->add_option("--n", c.n, "qudit count, overrides the file header")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--tol", c.tol, "tolerance")->envname("PAPPA_TOL")->check(CLI::PositiveNumber);
        s->add_option("--emit", c.emit, "output form")->check(CLI::IsMember({"matrix", "state", "report"}));
        if (file) s->add_option("file", c.file, "input file")->required()->check(CLI::ExistingFile);
    };

    auto* diagram = app.add_subcommand("diagram", "evaluate or normalize a .pd diagram");
    diagram->require_subcommand(1);
    auto* d_eval = diagram->add_subcommand("eval", "evaluate a diagram");
    auto* d_norm = diagram->add_subcommand("normalize", "rewrite a diagram to normal form");
    common(d_eval, true);
    common(d_norm, true);

    auto* circuit = app.add_subcommand("circuit", "run a .pc circuit");
    circuit->require_subcommand(1);
    auto* c_run = circuit->add_subcommand("run", "run a circuit once");
    common(c_run, true);

    auto* protocol = app.add_subcommand("protocol", "run a .pp protocol");
    protocol->require_subcommand(1);
    auto* p_run = protocol->add_subcommand("run", "sample one run");
    auto* p_branches = protocol->add_subcommand("branches", "enumerate every outcome branch");
    common(p_run, true);
    common(p_branches, true);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    common(ver, false);
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    ver->add_option("suite", c.suite, "suite name")->required()->check(CLI::IsMember(choices));
    ver->add_option("--jobs", c.jobs, "suites run in parallel")->check(CLI::Range(1, 64));
    ver->add_flag("--strict", c.strict, "also fail on claims checked exactly as printed");

    auto* grp = app.add_subcommand("group", "generate a small Clifford group");
    common(grp, false);
    grp->add_option("--gens", c.gens, "comma separated generators (X,Y,Z,F,G,SFT,CZ)");
    grp->add_option("--member", c.member, "comma separated gates to test for membership");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (d_eval->parsed()) return diagram_eval(c);
        if (d_norm->parsed()) return diagram_normalize(c);
        if (c_run->parsed()) return script_run(parse_circuit(slurp(c.file), opt(c.d), opt(c.n)), c);
        if (p_run->parsed()) return script_run(parse_protocol(slurp(c.file), opt(c.d), opt(c.n)), c);
        if (p_branches->parsed()) return protocol_branches(parse_protocol(slurp(c.file), opt(c.d), opt(c.n)), c);
        if (ver->parsed()) return verify(c);
        if (grp->parsed()) return group(c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << c.file << ": " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
