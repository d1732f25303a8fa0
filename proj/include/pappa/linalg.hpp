#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "numerics.hpp"

namespace pappa {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr std::size_t max_state_entries = std::size_t(1) << 20;

inline std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > max_state_entries * max_state_entries) throw DimensionError("dimension overflow");
    }
    return r;
}

inline std::size_t checked_dim(int d, int n) {
    if (n < 0) throw DimensionError("negative qudit count");
    std::size_t dim = ipow(d, n);
    if (dim > max_state_entries)
        throw DimensionError("d^n = " + std::to_string(dim) + " exceeds the 2^20 entry cap");
    return dim;
}

// qudit 0 is the most significant digit
inline std::vector<int> digits_of(std::size_t index, int d, int n) {
    std::vector<int> k(n);
    for (int j = n - 1; j >= 0; --j) {
        k[j] = int(index % d);
        index /= d;
    }
    return k;
}

inline std::size_t index_of(const std::vector<int>& k, int d) {
    std::size_t idx = 0;
    for (int v : k) idx = idx * d + std::size_t(mod(v, d));
    return idx;
}

// Applies the local operator A (on sites[0] most significant) to the rows of M.
inline Mat apply_on_sites(const Mat& M, int d, int n, const std::vector<int>& sites, const Mat& A) {
    const int m = int(sites.size());
    const std::size_t block = ipow(d, m);
    if (std::size_t(A.rows()) != block || std::size_t(A.cols()) != block)
        throw DimensionError("local operator size does not match its sites");
    for (std::size_t a = 0; a < sites.size(); ++a) {
        if (sites[a] < 0 || sites[a] >= n) throw DimensionError("site out of range");
        for (std::size_t b = 0; b < a; ++b)
            if (sites[a] == sites[b]) throw DimensionError("repeated site");
    }
    std::vector<std::size_t> stride(n);
    for (int j = 0; j < n; ++j) stride[j] = ipow(d, n - 1 - j);
    std::vector<std::size_t> offs(block);
    for (std::size_t b = 0; b < block; ++b) {
        auto dig = digits_of(b, d, m);
        std::size_t o = 0;
        for (int a = 0; a < m; ++a) o += dig[a] * stride[sites[a]];
        offs[b] = o;
    }
    std::vector<bool> is_site(n, false);
    for (int s : sites) is_site[s] = true;
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
        if (!is_site[j]) rest.push_back(j);
    const std::size_t outer = ipow(d, int(rest.size()));
    Mat out = Mat::Zero(M.rows(), M.cols());
    Mat sub(block, M.cols());
    for (std::size_t r = 0; r < outer; ++r) {
        auto dig = digits_of(r, d, int(rest.size()));
        std::size_t base = 0;
        for (std::size_t a = 0; a < rest.size(); ++a) base += dig[a] * stride[rest[a]];
        for (std::size_t b = 0; b < block; ++b) sub.row(b) = M.row(base + offs[b]);
        Mat res = A * sub;
        for (std::size_t b = 0; b < block; ++b) out.row(base + offs[b]) = res.row(b);
    }
    return out;
}

inline Mat embed(const Mat& A, int d, int n, const std::vector<int>& sites) {
    std::size_t dim = checked_dim(d, n);
    return apply_on_sites(Mat::Identity(dim, dim), d, n, sites, A);
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat R(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            R.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return R;
}

inline Mat kron_all(const std::vector<Mat>& ms) {
    Mat R = Mat::Identity(1, 1);
    for (const auto& m : ms) R = kron(R, m);
    return R;
}

// Integer power; negative powers use the inverse.
inline Mat mat_pow(const Mat& A, long k) {
    Mat base = k >= 0 ? A : Mat(A.inverse());
    Mat r = Mat::Identity(A.rows(), A.cols());
    for (long i = 0; i < std::labs(k); ++i) r = r * base;
    return r;
}

inline double max_abs(const Mat& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }
inline double residual(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(A - B);
}

inline double unitarity_residual(const Mat& U) {
    return residual(U * U.adjoint(), Mat::Identity(U.rows(), U.rows()));
}

// Minimizes ||A - e^{it} B|| over t; returns that residual.
inline double residual_up_to_phase(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::numeric_limits<double>::infinity();
    cplx ip = (B.adjoint() * A).trace();
    cplx ph = std::abs(ip) > 1e-300 ? ip / std::abs(ip) : cplx(1.0);
    return residual(A, ph * B);
}

// |<a|b>| for normalised vectors
inline double overlap(const Vec& a, const Vec& b) { return std::abs(a.dot(b)); }

}  // namespace pappa
