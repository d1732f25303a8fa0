#pragma once

#include <string>
#include <vector>

#include "state.hpp"
#include "weyl.hpp"

namespace pappa {

enum class Side { left, right };

// Strand s in 1..2n, counted left to right; qudit j owns strands 2j-1 (left) and 2j (right).
struct StringSite {
    int s = 1;
    Side side() const { return s % 2 == 1 ? Side::left : Side::right; }
    int qudit() const { return (s - 1) / 2; }
    static StringSite of(int qudit, Side side) { return {2 * qudit + (side == Side::left ? 1 : 2)}; }
};

// Unit charge on 0-based strand s of an n-qudit register:
// right strand of qudit j -> X_j Z_{j+1} ... Z_{n-1}; left strand -> Y^{-1}_j Z_{j+1} ... Z_{n-1}.
inline WeylWord unit_charge_word(const PhaseRing& r, int n, int s) {
    if (s < 0 || s >= 2 * n) throw DimensionError("strand " + std::to_string(s) + " out of range");
    WeylWord w = WeylWord::identity(r.d, n);
    const int j = s / 2;
    w.x[j] = 1;
    if (s % 2 == 0) {
        // Y^{-1} = zeta X Z
        w.z[j] = 1;
        w.eps = r.zeta_eps(1);
    }
    for (int t = j + 1; t < n; ++t) w.z[t] = 1;
    return w;
}

inline WeylWord charge_word(const PhaseRing& r, int n, int s, long k) {
    return weyl_pow(unit_charge_word(r, n, s), k);
}

inline QOperator charge_op(const PhaseRing& r, int n, StringSite site, long k) {
    if (site.s < 1 || site.s > 2 * n) throw DimensionError("string site out of range");
    return {r.d, n, n, weyl_matrix(r, charge_word(r, n, site.s - 1, k))};
}

struct RelationReport {
    double residual = 0.0;
    int checks = 0;
};

inline RelationReport parafermion_relations_check(const PhaseRing& r, int n) {
    if (n > 4) throw DimensionError("parafermion check limited to n <= 4");
    RelationReport rep;
    std::vector<Mat> c;
    for (int s = 1; s <= 2 * n; ++s) c.push_back(charge_op(r, n, {s}, 1).matrix);
    const Mat id = Mat::Identity(c[0].rows(), c[0].cols());
    for (std::size_t s = 0; s < c.size(); ++s) {
        rep.residual = std::max(rep.residual, residual(mat_pow(c[s], r.d), id));
        ++rep.checks;
        for (std::size_t t = s + 1; t < c.size(); ++t) {
            rep.residual = std::max(rep.residual, residual(c[s] * c[t], r.q * c[t] * c[s]));
            ++rep.checks;
        }
    }
    return rep;
}

enum class BraidSign { positive, negative };

struct WeylSum {
    std::vector<std::pair<cplx, WeylWord>> terms;
};

// b_+ on 0-based strands (s, s+1): (omega d)^{-1/2} sum_k c_{s+1}^{-k} c_s^{k}
// b_- : omega^{1/2} d^{-1/2} sum_k c_s^{k} c_{s+1}^{-k}
inline WeylSum braid_sum(const PhaseRing& r, int n, int s, BraidSign sign) {
    if (s < 0 || s + 1 >= 2 * n) throw DimensionError("braid strands out of range");
    WeylSum out;
    const WeylWord a = unit_charge_word(r, n, s), b = unit_charge_word(r, n, s + 1);
    const cplx pre = sign == BraidSign::positive ? r.omega_half_pow(-1) / r.sqrt_d : r.omega_half_pow(1) / r.sqrt_d;
    for (long k = 0; k < r.d; ++k) {
        WeylWord w = sign == BraidSign::positive ? weyl_pow(b, -k) * weyl_pow(a, k) : weyl_pow(a, k) * weyl_pow(b, -k);
        out.terms.emplace_back(pre, w);
    }
    return out;
}

inline Mat apply_sum(const PhaseRing& r, const WeylSum& S, const Mat& M) {
    Mat out = Mat::Zero(M.rows(), M.cols());
    for (const auto& [c, w] : S.terms) out += c * apply_weyl(r, w, M);
    return out;
}

// s is 1-based: the braid acts on strands (s, s+1)
inline QOperator braid_op(const PhaseRing& r, int n, int s, BraidSign sign) {
    std::size_t dim = checked_dim(r.d, n);
    return {r.d, n, n, apply_sum(r, braid_sum(r, n, s - 1, sign), Mat::Identity(dim, dim))};
}

}  // namespace pappa
