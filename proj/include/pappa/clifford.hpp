#pragma once

#include <deque>
#include <map>
#include <unordered_map>

#include "gates.hpp"
#include "sft.hpp"
#include "weyl.hpp"

namespace pappa {

// Matrix modulo global phase: the first nonzero entry (column-major) is made positive real.
struct PhaselessUnitary {
    int d = 2;
    int n = 1;
    Mat matrix;

    static PhaselessUnitary of(int d, int n, const Mat& U) {
        PhaselessUnitary p{d, n, U};
        for (Eigen::Index j = 0; j < U.cols(); ++j)
            for (Eigen::Index i = 0; i < U.rows(); ++i)
                if (std::abs(U(i, j)) > 1e-9) {
                    p.matrix *= std::abs(U(i, j)) / U(i, j);
                    return p;
                }
        return p;
    }

    // entries rounded to a 1e-6 grid
    std::string key() const {
        std::string k;
        k.reserve(std::size_t(matrix.size()) * 16);
        for (Eigen::Index i = 0; i < matrix.size(); ++i) {
            long long re = std::llround(matrix.data()[i].real() * 1e6), im = std::llround(matrix.data()[i].imag() * 1e6);
            k.append(reinterpret_cast<const char*>(&re), sizeof re);
            k.append(reinterpret_cast<const char*>(&im), sizeof im);
        }
        return k;
    }
};

struct IdentityCheck {
    double literal = 0;    // the identity exactly as printed
    double corrected = 0;  // the form that holds
};

// C_Z against (G F^-1 (x) F G^-1) F_s (1 (x) F^-1 G^-1) and against
// omega (G^-1 F (x) F^-1 G^-1) F_s (G^-1 F^-1 (x) F G^-1)
inline IdentityCheck verify_fsclifford1(const PhaseRing& r) {
    const Mat F = fourier_gate(r), G = gaussian_gate(r), Fi = F.adjoint(), Gi = G.adjoint();
    const Mat I = Mat::Identity(r.d, r.d), S = sft_gate(r, 2).matrix, CZ = cz_gate(r);
    IdentityCheck c;
    c.literal = residual(CZ, kron(G * Fi, F * Gi) * S * kron(I, Fi * Gi));
    c.corrected = residual(CZ, r.omega * kron(Gi * F, Fi * Gi) * S * kron(Gi * Fi, F * Gi));
    return c;
}

struct Sft2Check {
    double first = 0;   // (G^-1 (x) G) C_{1,X}^-1 (F (x) 1) C_{1,X}
    double second = 0;  // C_{X,1}^-1 (1 (x) F) C_{X,1} (G (x) G^-1)
    double bell = 0;    // F_s|00> = C_{1,X}^-1 (F (x) 1)|00>
    double max() const { return std::max({first, second, bell}); }
};

inline Sft2Check verify_sft2(const PhaseRing& r) {
    const Mat F = fourier_gate(r), G = gaussian_gate(r), X = pauli_gate(r, Pauli::X);
    const Mat I = Mat::Identity(r.d, r.d), S = sft_gate(r, 2).matrix;
    const Mat C1X = controlled_gate(r, 2, 0, 1, X, ControlFlavor::first_controls);
    const Mat CX1 = controlled_gate(r, 2, 1, 0, X, ControlFlavor::second_controls);
    Sft2Check c;
    c.first = residual(S, kron(G.adjoint(), G) * C1X.adjoint() * kron(F, I) * C1X);
    c.second = residual(S, CX1.adjoint() * kron(I, F) * CX1 * kron(G, G.adjoint()));
    Vec zero = Vec::Zero(r.d * r.d);
    zero(0) = 1.0;
    c.bell = residual(S * zero, C1X.adjoint() * kron(F, I) * zero);
    return c;
}

// b_{2,3,-} against omega (1 (x) G^-1) F_s (G^-1 (x) 1) and against the same with omega^{1/2}
inline IdentityCheck verify_braid_clifford(const PhaseRing& r) {
    const Mat G = gaussian_gate(r), I = Mat::Identity(r.d, r.d), S = sft_gate(r, 2).matrix;
    const Mat b = braid_op(r, 2, 2, BraidSign::negative).matrix;
    const Mat rhs = kron(I, G.adjoint()) * S * kron(G.adjoint(), I);
    return {residual(b, r.omega * rhs), residual(b, r.omega_sqrt * rhs)};
}

// Every single-qudit gate in `names` on every site of an n-qudit register.
inline std::vector<Mat> local_generators(const PhaseRing& r, int n, const std::vector<std::string>& names) {
    std::vector<Mat> g;
    for (int j = 0; j < n; ++j)
        for (auto& nm : names) g.push_back(embed(named_gate(r, nm), r.d, n, {j}));
    return g;
}

struct GroupReport {
    std::size_t order = 0;
    bool cap_hit = false;
    std::size_t generators = 0;
    std::vector<PhaselessUnitary> elements;

    bool contains(const Mat& U) const {
        if (elements.empty()) return false;
        auto k = PhaselessUnitary::of(elements[0].d, elements[0].n, U).key();
        for (auto& e : elements)
            if (e.key() == k) return true;
        return false;
    }
};

// Breadth-first closure under right multiplication by the generators, modulo global phase.
inline GroupReport generate_group(const PhaseRing& r, int n, const std::vector<Mat>& gens, std::size_t cap = 200000) {
    if (ipow(r.d, n) > 81) throw DimensionError("group generation is limited to d^n <= 81");
    GroupReport rep;
    rep.generators = gens.size();
    const std::size_t dim = ipow(r.d, n);
    std::unordered_map<std::string, std::size_t> seen;
    std::deque<std::size_t> frontier;
    auto id = PhaselessUnitary::of(r.d, n, Mat::Identity(dim, dim));
    seen.emplace(id.key(), 0);
    rep.elements.push_back(id);
    frontier.push_back(0);
    while (!frontier.empty()) {
        const Mat cur = rep.elements[frontier.front()].matrix;
        frontier.pop_front();
        for (auto& g : gens) {
            auto p = PhaselessUnitary::of(r.d, n, g * cur);
            auto [it, fresh] = seen.emplace(p.key(), rep.elements.size());
            if (!fresh) continue;
            if (rep.elements.size() >= cap) {
                rep.cap_hit = true;
                rep.order = rep.elements.size();
                return rep;
            }
            rep.elements.push_back(std::move(p));
            frontier.push_back(rep.elements.size() - 1);
        }
    }
    rep.order = rep.elements.size();
    return rep;
}

namespace detail {
// true iff M = c * (X^a Z^b word) for some Weyl word and |c| = 1
inline bool is_pauli_multiple(const PhaseRing& r, int n, const Mat& M, double tol) {
    const std::size_t dim = ipow(r.d, n);
    const std::size_t words = ipow(r.d, 2 * n);
    for (std::size_t w = 0; w < words; ++w) {
        auto digits = digits_of(w, r.d, 2 * n);
        WeylWord word{r.d, 0, std::vector<int>(digits.begin(), digits.begin() + n),
                      std::vector<int>(digits.begin() + n, digits.end())};
        Mat W = weyl_matrix(r, word);
        cplx c = (W.adjoint() * M).trace() / double(dim);
        if (std::abs(std::abs(c) - 1.0) < tol && residual(M, c * W) < tol) return true;
    }
    return false;
}
}  // namespace detail

// U is Clifford iff it conjugates every X_j and Z_j to a phase times a Pauli word.
inline bool is_clifford(const PhaseRing& r, const QOperator& U, double tol = 1e-8) {
    if (U.n_in != U.n_out) throw DimensionError("is_clifford needs a square operator");
    if (unitarity_residual(U.matrix) > 1e-8) throw Error("is_clifford needs a unitary");
    const int n = U.n_in;
    for (int j = 0; j < n; ++j)
        for (Pauli p : {Pauli::X, Pauli::Z}) {
            Mat P = embed(pauli_gate(r, p), r.d, n, {j});
            if (!detail::is_pauli_multiple(r, n, U.matrix * P * U.matrix.adjoint(), tol)) return false;
        }
    return true;
}

}  // namespace pappa
