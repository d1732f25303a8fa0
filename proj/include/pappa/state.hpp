#pragma once

#include <Eigen/QR>
#include <cstdint>
#include <random>
#include <vector>

#include "linalg.hpp"

namespace pappa {

struct QOperator {
    int d = 2;
    int n_in = 0, n_out = 0;
    Mat matrix;

    static QOperator identity(int d, int n) {
        std::size_t dim = checked_dim(d, n);
        return {d, n, n, Mat::Identity(dim, dim)};
    }
};

struct QState {
    int d = 2;
    int n = 0;
    Vec amp;
    bool normalized = true;

    static QState basis(int d, const std::vector<int>& k) {
        QState s{d, int(k.size()), Vec::Zero(checked_dim(d, int(k.size())))};
        s.amp(index_of(k, d)) = 1.0;
        return s;
    }
    static QState zeros(int d, int n) { return basis(d, std::vector<int>(n, 0)); }

    double norm() const { return amp.norm(); }
};

inline QState apply(const QState& s, const Mat& A, const std::vector<int>& sites) {
    QState r = s;
    r.amp = apply_on_sites(s.amp, s.d, s.n, sites, A);
    return r;
}

inline QState apply(const QState& s, const QOperator& U) {
    if (U.n_in != s.n) throw DimensionError("operator input size does not match the state");
    return {s.d, U.n_out, U.matrix * s.amp, s.normalized};
}

// Tensor product |a> (x) |b>
inline QState tensor(const QState& a, const QState& b) {
    if (a.d != b.d) throw DimensionError("states of different degree");
    Vec v(a.amp.size() * b.amp.size());
    for (Eigen::Index i = 0; i < a.amp.size(); ++i) v.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
    return {a.d, a.n + b.n, v, a.normalized && b.normalized};
}

inline double fidelity(const QState& a, const QState& b) {
    if (a.amp.size() != b.amp.size()) return 0.0;
    return overlap(a.amp.normalized(), b.amp.normalized());
}

inline std::vector<double> marginal(const QState& s, int site) {
    std::vector<double> p(s.d, 0.0);
    for (Eigen::Index i = 0; i < s.amp.size(); ++i) p[digits_of(i, s.d, s.n)[site]] += std::norm(s.amp(i));
    return p;
}

// Projects onto |k> at site and drops nothing; the qudit stays in the register.
inline QState project(const QState& s, int site, int k) {
    QState r = s;
    for (Eigen::Index i = 0; i < s.amp.size(); ++i)
        if (digits_of(i, s.d, s.n)[site] != k) r.amp(i) = 0.0;
    return r;
}

struct Measurement {
    int outcome = 0;
    QState post;
    double probability = 0.0;
};

// Deterministic generator: a 64-bit Mersenne twister seeded from splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}
    std::uint64_t seed() const { return seed_; }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    Rng split(std::uint64_t stream) const { return Rng(splitmix(seed_ ^ splitmix(stream + 0x9e3779b97f4a7c15ULL))); }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

inline Measurement measure_outcome(const QState& s, int site, int k) {
    Measurement m;
    m.outcome = k;
    m.post = project(s, site, k);
    double nrm = m.post.amp.norm();
    m.probability = nrm * nrm / std::max(s.amp.squaredNorm(), 1e-300);
    if (nrm > 0) m.post.amp /= nrm;
    return m;
}

inline Measurement measure(const QState& s, int site, Rng& rng) {
    if (site < 0 || site >= s.n) throw DimensionError("measurement site out of range");
    auto p = marginal(s, site);
    double total = 0;
    for (double v : p) total += v;
    double u = rng.uniform() * total, acc = 0;
    int k = 0;
    for (; k < s.d - 1; ++k) {
        acc += p[k];
        if (u < acc && p[k] > 0) break;
    }
    while (p[k] <= 0 && k > 0) --k;
    return measure_outcome(s, site, k);
}

inline QState random_state(int d, int n, Rng& rng) {
    QState s{d, n, Vec(checked_dim(d, n))};
    for (auto& a : s.amp) a = cplx(rng.normal(), rng.normal());
    s.amp.normalize();
    return s;
}

inline Mat random_unitary(int dim, Rng& rng) {
    Mat A(dim, dim);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = cplx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Mat> qr(A);
    return qr.householderQ() * Mat::Identity(dim, dim);
}

// Every joint outcome of measuring `sites` in order, with its probability and normalized post-state.
struct Branch {
    std::vector<int> outcomes;
    double probability = 0.0;
    QState post;
};

inline std::vector<Branch> branches(const QState& s, const std::vector<int>& sites, double cutoff = 1e-14) {
    std::vector<Branch> out;
    const std::size_t count = ipow(s.d, int(sites.size()));
    for (std::size_t c = 0; c < count; ++c) {
        Branch b{digits_of(c, s.d, int(sites.size())), 0.0, s};
        for (std::size_t j = 0; j < sites.size(); ++j) b.post = project(b.post, sites[j], b.outcomes[j]);
        const double nrm = b.post.amp.norm();
        b.probability = nrm * nrm / s.amp.squaredNorm();
        if (b.probability <= cutoff) continue;
        b.post.amp /= nrm;
        out.push_back(std::move(b));
    }
    return out;
}

inline Measurement measure(const QState& s, int site, std::uint64_t seed) {
    Rng rng(seed);
    return measure(s, site, rng);
}

}  // namespace pappa
