#pragma once

#include <numeric>

#include "jordan_wigner.hpp"

namespace pappa {

enum class SftMethod { braid_product, matrix_formula };

inline long total_charge(const std::vector<int>& k) { return std::accumulate(k.begin(), k.end(), 0L); }

// <l|F_s|k> = d^{(1-n)/2} zeta^{|l|^2} prod_{j1<j2} q^{-l_{j1} k_{j2}}  when |l| = |k| mod d
inline cplx sft_entry(const PhaseRing& r, const std::vector<int>& l, const std::vector<int>& k) {
    const long L = total_charge(l), K = total_charge(k);
    if (mod(L - K, r.d) != 0) return 0.0;
    const int n = int(l.size());
    long qe = 0;
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2) qe -= long(l[j1]) * k[j2];
    return r.zeta_pow(L * L) * r.q_pow(qe) * std::pow(double(r.d), (1.0 - n) / 2.0);
}

inline QOperator sft_gate(const PhaseRing& r, int n, SftMethod method = SftMethod::matrix_formula) {
    const std::size_t dim = checked_dim(r.d, n);
    Mat m(dim, dim);
    if (method == SftMethod::matrix_formula) {
        for (std::size_t i = 0; i < dim; ++i) {
            auto l = digits_of(i, r.d, n);
            for (std::size_t j = 0; j < dim; ++j) m(i, j) = sft_entry(r, l, digits_of(j, r.d, n));
        }
    } else {
        m = Mat::Identity(dim, dim);
        for (int s = 0; s + 1 < 2 * n; ++s) m = apply_sum(r, braid_sum(r, n, s, BraidSign::negative), m);
        m *= r.omega_sqrt;
    }
    return {r.d, n, n, m};
}

// Conjugate coefficients: <k|F_s^*|l> = conj(<l|F_s|k>)
inline QOperator sft_adjoint_formula(const PhaseRing& r, int n) {
    const std::size_t dim = checked_dim(r.d, n);
    Mat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = std::conj(sft_entry(r, digits_of(j, r.d, n), digits_of(i, r.d, n)));
    return {r.d, n, n, m};
}

}  // namespace pappa
