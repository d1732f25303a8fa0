#pragma once

#include "entangle.hpp"

namespace pappa {

// Each entry is a residual; zero means the trick holds.
struct TricksReport {
    double trick1 = 0;  // G^{+-1} on the control commutes with C_{1,A}
    double trick2 = 0;  // G^{+-1} before a meter changes neither the distribution nor the branches
    double trick3 = 0;  // C^{-1} before two meters becomes a T^{-m1} correction
    double trick4 = 0;  // Y^{-i} X^{-i} is Z^i up to a phase, branch by branch
    double phase4 = 0;  // Y^{-i} X^{-i} = zeta^{-i^2} Z^i exactly
    double max() const { return std::max({trick1, trick2, trick3, trick4, phase4}); }
};

namespace detail {
// The state of qudit `site` after all other qudits have collapsed to basis states.
inline Vec remaining_qudit(const QState& s, int site) {
    Vec v = Vec::Zero(s.d);
    for (Eigen::Index i = 0; i < s.amp.size(); ++i) v(digits_of(i, s.d, s.n)[site]) += s.amp(i);
    return v;
}

inline double branch_distance(const std::vector<Branch>& a, const std::vector<Branch>& b) {
    double e = 0;
    if (a.size() != b.size()) return 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].outcomes != b[i].outcomes) return 1.0;
        e = std::max(e, std::abs(a[i].probability - b[i].probability));
        e = std::max(e, 1.0 - fidelity(a[i].post, b[i].post));
    }
    return e;
}
}  // namespace detail

inline TricksReport circuit_tricks_check(const PhaseRing& r, std::uint64_t seed = 1, int samples = 8) {
    const int d = r.d;
    TricksReport rep;
    Rng rng(seed);
    const Mat G = gaussian_gate(r), I = Mat::Identity(d, d);
    const Mat X = pauli_gate(r, Pauli::X), Y = pauli_gate(r, Pauli::Y), Z = pauli_gate(r, Pauli::Z);
    for (int t = 0; t < samples; ++t) {
        const Mat A = random_unitary(d, rng);
        for (int p : {1, -1}) {
            Mat Gp = mat_pow(G, p);
            Mat C = controlled_gate(r, 2, 0, 1, A);
            rep.trick1 = std::max(rep.trick1, residual(C * kron(Gp, I), kron(Gp, I) * C));

            QState s = random_state(d, 2, rng);
            rep.trick2 = std::max(rep.trick2, detail::branch_distance(branches(apply(s, Gp, {0}), {0}), branches(s, {0})));
        }

        // trick 3 on three qudits, T acting on the last one; meter readings live in Z_d so T^d = 1
        const Mat V = random_unitary(d, rng);
        const Mat T = V * X * V.adjoint();
        QState s = random_state(d, 3, rng);
        QState lhs = apply(s, controlled_gate(r, 3, 0, 1, X.adjoint()), {0, 1, 2});
        auto bl = branches(lhs, {0, 1});
        auto br = branches(s, {0, 1});
        for (auto& b : br) {
            const int m1 = b.outcomes[0], m2 = b.outcomes[1];
            Vec right = mat_pow(T, -m1) * mat_pow(T, m2) * detail::remaining_qudit(b.post, 2);
            bool found = false;
            for (auto& a : bl) {
                if (a.outcomes[0] != m1 || a.outcomes[1] != int(mod(m2 - m1, d))) continue;
                found = true;
                Vec left = mat_pow(T, a.outcomes[1]) * detail::remaining_qudit(a.post, 2);
                rep.trick3 = std::max({rep.trick3, std::abs(a.probability - b.probability), 1.0 - overlap(left, right)});
            }
            if (!found) rep.trick3 = std::max(rep.trick3, b.probability);
        }

        // trick 4, meter on qudit 0 controls qudit 1
        QState s4 = random_state(d, 2, rng);
        for (auto& b : branches(s4, {0})) {
            const int i = b.outcomes[0];
            Vec v = detail::remaining_qudit(b.post, 1);
            Vec two = mat_pow(Y, -i) * (mat_pow(X, -i) * v);
            Vec one = mat_pow(Z, i) * v;
            rep.trick4 = std::max(rep.trick4, 1.0 - overlap(two, one));
        }
    }
    for (int i = 0; i < d; ++i)
        rep.phase4 = std::max(rep.phase4, residual(mat_pow(Y, -i) * mat_pow(X, -i), r.zeta_pow(-long(i) * i) * mat_pow(Z, i)));
    return rep;
}

// Two-qudit phase-space measurements. `full` is the translated circuit before simplification.
enum class PhaseSpaceVariant { control_first, control_second };

inline Mat phase_space_circuit(const PhaseRing& r, PhaseSpaceVariant v, bool full) {
    const Mat F = fourier_gate(r), G = gaussian_gate(r), X = pauli_gate(r, Pauli::X), I = Mat::Identity(r.d, r.d);
    const Mat Gi = G.adjoint(), Fi = F.adjoint();
    if (v == PhaseSpaceVariant::control_first) {
        Mat C = controlled_gate(r, 2, 0, 1, X), Ci = controlled_gate(r, 2, 0, 1, X.adjoint());
        return full ? Mat(Ci * kron(G * Fi * G, I) * C * kron(Gi, I)) : Mat(Ci * kron(Fi, I) * C);
    }
    Mat C = controlled_gate(r, 2, 1, 0, X), Ci = controlled_gate(r, 2, 1, 0, X.adjoint());
    return full ? Mat(Ci * kron(I, Gi * F * Gi) * C * kron(I, G)) : Mat(Ci * kron(I, F) * C);
}

// The further simplified protocol without the second controlled gate; outcomes are read through trick 3.
inline Mat phase_space_short(const PhaseRing& r, PhaseSpaceVariant v) {
    const Mat F = fourier_gate(r), X = pauli_gate(r, Pauli::X), I = Mat::Identity(r.d, r.d);
    if (v == PhaseSpaceVariant::control_first) return kron(F.adjoint(), I) * controlled_gate(r, 2, 0, 1, X);
    return kron(I, F) * controlled_gate(r, 2, 1, 0, X);
}

// Joint distribution P[m1 * d + m2] of the two meters.
inline std::vector<double> phase_space_distribution(const PhaseRing& r, const Vec& psi, PhaseSpaceVariant v, bool full) {
    Vec out = phase_space_circuit(r, v, full) * psi;
    std::vector<double> p(out.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) p[i] = std::norm(out(i));
    return p;
}

}  // namespace pappa
