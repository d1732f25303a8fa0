#pragma once

#include <vector>

#include "linalg.hpp"

namespace pappa {

// epsilon^eps * (X^x0 Z^z0) (x) (X^x1 Z^z1) (x) ...
struct WeylWord {
    int d = 2;
    long eps = 0;
    std::vector<int> x, z;

    static WeylWord identity(int d, int n) { return {d, 0, std::vector<int>(n, 0), std::vector<int>(n, 0)}; }
    int size() const { return int(x.size()); }
};

inline WeylWord operator*(const WeylWord& a, const WeylWord& b) {
    if (a.size() != b.size() || a.d != b.d) throw DimensionError("Weyl words of different shape");
    WeylWord r = a;
    long ph = a.eps + b.eps;
    for (int j = 0; j < a.size(); ++j) {
        // Z^b X^c = q^{bc} X^c Z^b
        ph += 2L * a.z[j] * b.x[j];
        r.x[j] = int(mod(a.x[j] + b.x[j], a.d));
        r.z[j] = int(mod(a.z[j] + b.z[j], a.d));
    }
    r.eps = mod(ph, 2L * a.d);
    return r;
}

inline WeylWord weyl_pow(const WeylWord& w, long k) {
    WeylWord r = WeylWord::identity(w.d, w.size());
    WeylWord base = w;
    // inverse via w^{-1} = w^{N-1} where N is the order dividing 2d
    long n = mod(k, 2L * w.d);
    for (long i = 0; i < n; ++i) r = r * base;
    return r;
}

inline bool operator==(const WeylWord& a, const WeylWord& b) {
    return a.d == b.d && mod(a.eps - b.eps, 2L * a.d) == 0 && a.x == b.x && a.z == b.z;
}

// Applies the word to the rows of M (row index = basis index of size() qudits).
inline Mat apply_weyl(const PhaseRing& ring, const WeylWord& w, const Mat& M) {
    const int d = w.d, n = w.size();
    Mat out(M.rows(), M.cols());
    std::vector<int> k(n, 0);
    for (Eigen::Index row = 0; row < M.rows(); ++row) {
        long ph = w.eps;
        std::vector<int> t(n);
        for (int j = 0; j < n; ++j) {
            ph += 2L * w.z[j] * k[j];
            t[j] = (k[j] + w.x[j]) % d;
        }
        out.row(index_of(t, d)) = ring.eps_pow(ph) * M.row(row);
        for (int j = n - 1; j >= 0; --j) {
            if (++k[j] < d) break;
            k[j] = 0;
        }
    }
    return out;
}

inline Mat weyl_matrix(const PhaseRing& ring, const WeylWord& w) {
    std::size_t dim = checked_dim(w.d, w.size());
    return apply_weyl(ring, w, Mat::Identity(dim, dim));
}

}  // namespace pappa
