#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "gates.hpp"
#include "sft.hpp"
#include "state.hpp"

namespace pappa {

struct DensityMatrix {
    int d = 2;
    int n = 0;
    Mat matrix;

    static DensityMatrix of(const QState& s) {
        Vec v = s.amp / s.amp.norm();
        return {s.d, s.n, v * v.adjoint()};
    }

    // Hermitian, unit trace, no eigenvalue below -1e-9
    bool valid(double tol = 1e-10) const {
        if (residual(matrix, matrix.adjoint()) > tol) return false;
        if (std::abs(matrix.trace() - cplx(1.0)) > tol) return false;
        Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() > -1e-9;
    }
};

// d^{-(n-1)/2} sum over the zero-charge sector
inline QState max_state(const PhaseRing& r, int n) {
    const std::size_t dim = checked_dim(r.d, n);
    QState s{r.d, n, Vec::Zero(dim)};
    const double a = std::pow(double(r.d), -(n - 1) / 2.0);
    for (std::size_t i = 0; i < dim; ++i)
        if (mod(total_charge(digits_of(i, r.d, n)), r.d) == 0) s.amp(i) = a;
    return s;
}

inline QState ghz_state(const PhaseRing& r, int n) {
    QState s{r.d, n, Vec::Zero(checked_dim(r.d, n))};
    for (int k = 0; k < r.d; ++k) s.amp(index_of(std::vector<int>(n, k), r.d)) = 1.0 / std::sqrt(double(r.d));
    return s;
}

namespace detail {
inline void check_charges(const PhaseRing& r, const std::vector<int>& k) {
    if (k.empty()) throw DimensionError("empty charge vector");
    for (int v : k)
        if (v < 0 || v >= r.d) throw DimensionError("charge out of range 0..d-1");
}
}  // namespace detail

// F_s|k> = zeta^{-|k|^2} d^{-(n-1)/2} sum_{|l| = |k|} q^{sum_j (k_1+...+k_j) l_j} |l>
inline QState max_basis(const PhaseRing& r, const std::vector<int>& k) {
    detail::check_charges(r, k);
    const int n = int(k.size());
    const std::size_t dim = checked_dim(r.d, n);
    const long K = total_charge(k);
    QState s{r.d, n, Vec::Zero(dim)};
    const cplx pre = r.zeta_pow(-K * K) * std::pow(double(r.d), -(n - 1) / 2.0);
    for (std::size_t i = 0; i < dim; ++i) {
        auto l = digits_of(i, r.d, n);
        if (mod(total_charge(l) - K, r.d) != 0) continue;
        long e = 0, prefix = 0;
        for (int j = 0; j < n; ++j) {
            prefix += k[j];
            e += prefix * l[j];
        }
        s.amp(i) = pre * r.q_pow(e);
    }
    return s;
}

// zeta^{-|k|^2} d^{-1/2} sum_s q^{-s|k|} |k_1+s, k_1+k_2+s, ...>
inline QState ghz_basis(const PhaseRing& r, const std::vector<int>& k) {
    detail::check_charges(r, k);
    const int n = int(k.size());
    const long K = total_charge(k);
    QState st{r.d, n, Vec::Zero(checked_dim(r.d, n))};
    const cplx pre = r.zeta_pow(-K * K) / std::sqrt(double(r.d));
    for (int s = 0; s < r.d; ++s) {
        std::vector<int> idx(n);
        long prefix = 0;
        for (int j = 0; j < n; ++j) {
            prefix += k[j];
            idx[j] = int(mod(prefix + s, r.d));
        }
        st.amp(index_of(idx, r.d)) += pre * r.q_pow(-s * K);
    }
    return st;
}

inline Mat fourier_all(const PhaseRing& r, int n, int power) {
    return kron_all(std::vector<Mat>(n, mat_pow(fourier_gate(r), power)));
}

// Keeps the sites in `keep` (0-based, any order; result follows ascending site order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
    if (keep.empty()) throw DimensionError("partial trace needs a nonempty kept set");
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int s : keep)
        if (s < 0 || s >= rho.n) throw DimensionError("site out of range");
    const int m = int(keep.size());
    std::vector<int> rest;
    for (int s = 0; s < rho.n; ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s)) rest.push_back(s);
    const std::size_t dk = ipow(rho.d, m), dr = ipow(rho.d, int(rest.size()));
    auto full_index = [&](std::size_t a, std::size_t b) {
        std::vector<int> k(rho.n);
        auto ka = digits_of(a, rho.d, m), kb = digits_of(b, rho.d, int(rest.size()));
        for (int i = 0; i < m; ++i) k[keep[i]] = ka[i];
        for (std::size_t i = 0; i < rest.size(); ++i) k[rest[i]] = kb[i];
        return index_of(k, rho.d);
    };
    Mat out = Mat::Zero(dk, dk);
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t a2 = 0; a2 < dk; ++a2)
            for (std::size_t b = 0; b < dr; ++b) out(a, a2) += rho.matrix(full_index(a, b), full_index(a2, b));
    return {rho.d, m, out};
}

// von Neumann entropy in nats; eigenvalues at or below 1e-12 are dropped
inline double entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix, Eigen::EigenvaluesOnly);
    double e = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l > 1e-12) e -= l * std::log(l);
    }
    return e;
}

inline double cut_entropy(const QState& s, const std::vector<int>& keep) {
    return entropy(partial_trace(DensityMatrix::of(s), keep));
}

}  // namespace pappa
