#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pappa {

using cplx = std::complex<double>;

inline constexpr double default_tolerance = 1e-9;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class LocalityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

enum class Base { q, zeta, epsilon, omega };

// All phases are stored as exponents of epsilon = e^{i pi / d}.
struct PhaseRing {
    int d = 2;
    cplx q, zeta, epsilon, omega, omega_sqrt;
    // zeta = epsilon^zeta_step
    int zeta_step = 1;
    double sqrt_d = 1.0;
    std::vector<cplx> eps_table;

    cplx eps_pow(long e) const { return eps_table[mod(e, 2L * d)]; }
    cplx q_pow(long e) const { return eps_pow(2 * mod(e, d)); }
    cplx zeta_pow(long e) const { return eps_pow(zeta_eps(e)); }
    // epsilon exponent of zeta^e, reduced mod 2d
    long zeta_eps(long e) const { return mod(mod(e, 2L * d) * zeta_step, 2L * d); }
    // omega^{h/2}
    cplx omega_half_pow(long h) const {
        cplx r = 1.0;
        cplx base = h >= 0 ? omega_sqrt : std::conj(omega_sqrt);
        for (long i = 0; i < std::labs(h); ++i) r *= base;
        return r;
    }
    double d_quarter_pow(long quarters) const { return std::pow(double(d), quarters / 4.0); }
};

inline PhaseRing make_phase_ring(int d) {
    if (d < 2) throw Error("qudit degree must be at least 2, got " + std::to_string(d));
    PhaseRing r;
    r.d = d;
    r.eps_table.resize(2 * d);
    for (int e = 0; e < 2 * d; ++e) r.eps_table[e] = std::polar(1.0, std::numbers::pi * e / d);
    r.epsilon = r.eps_table[1];
    r.q = r.eps_table[2 % (2 * d)];
    r.zeta_step = d % 2 == 0 ? 1 : d + 1;
    r.zeta = r.eps_pow(r.zeta_step);
    r.sqrt_d = std::sqrt(double(d));
    cplx s = 0;
    for (long j = 0; j < d; ++j) s += r.zeta_pow(j * j);
    r.omega = s / r.sqrt_d;
    r.omega_sqrt = std::polar(std::sqrt(std::abs(r.omega)), std::arg(r.omega) / 2);
    return r;
}

inline cplx phase_pow(const PhaseRing& r, Base b, long e) {
    switch (b) {
        case Base::q: return r.q_pow(e);
        case Base::zeta: return r.zeta_pow(e);
        case Base::epsilon: return r.eps_pow(e);
        case Base::omega: return r.omega_half_pow(2 * e);
    }
    return 1.0;
}

// |d^{-1/2} sum_k q^{kl} zeta^{k^2} - omega zeta^{-l^2}|
inline double gauss_identity_residual(const PhaseRing& r, long l) {
    cplx lhs = 0;
    for (long k = 0; k < r.d; ++k) lhs += r.q_pow(k * l) * r.zeta_pow(k * k);
    lhs /= r.sqrt_d;
    return std::abs(lhs - r.omega * r.zeta_pow(-l * l));
}

}  // namespace pappa
