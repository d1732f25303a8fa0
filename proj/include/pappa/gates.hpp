#pragma once

#include <string>

#include "linalg.hpp"

namespace pappa {

enum class Pauli { X, Y, Z };

inline Mat pauli_gate(const PhaseRing& r, Pauli which) {
    const int d = r.d;
    Mat m = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        switch (which) {
            case Pauli::X: m((k + 1) % d, k) = 1.0; break;
            case Pauli::Y: m((k + d - 1) % d, k) = r.zeta_pow(1 - 2L * k); break;
            case Pauli::Z: m(k, k) = r.q_pow(k); break;
        }
    }
    return m;
}

inline Mat fourier_gate(const PhaseRing& r) {
    Mat m(r.d, r.d);
    for (int l = 0; l < r.d; ++l)
        for (int k = 0; k < r.d; ++k) m(l, k) = r.q_pow(long(k) * l) / r.sqrt_d;
    return m;
}

inline Mat gaussian_gate(const PhaseRing& r) {
    Mat m = Mat::Zero(r.d, r.d);
    for (int k = 0; k < r.d; ++k) m(k, k) = r.zeta_pow(long(k) * k);
    return m;
}

inline Mat pi8_gate() {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    return m;
}

// Single-qudit gate by name: X, Y, Z, F, G, I, optionally with ^k.
inline Mat named_gate(const PhaseRing& r, const std::string& name) {
    if (name == "X") return pauli_gate(r, Pauli::X);
    if (name == "Y") return pauli_gate(r, Pauli::Y);
    if (name == "Z") return pauli_gate(r, Pauli::Z);
    if (name == "F") return fourier_gate(r);
    if (name == "G") return gaussian_gate(r);
    if (name == "I") return Mat::Identity(r.d, r.d);
    if (name == "T" && r.d == 2) return pi8_gate();
    throw Error("unknown gate '" + name + "'");
}

enum class ControlFlavor { first_controls, second_controls };

// first_controls:  C_{1,A}|k1,k2> = |k1, A^{k1} k2>
// second_controls: C_{A,1}|k1,k2> = |A^{k2} k1, k2>
// control/target are qudit indices (0-based) in an n-qudit register.
inline Mat controlled_gate(const PhaseRing& r, int n, int control, int target, const Mat& A,
                           ControlFlavor flavor = ControlFlavor::first_controls) {
    if (control == target) throw DimensionError("control and target coincide");
    const int d = r.d;
    Mat local = Mat::Zero(d * d, d * d);
    Mat p = Mat::Identity(d, d);
    for (int l = 0; l < d; ++l) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                // basis |c, t> with c most significant
                local(l * d + i, l * d + j) = p(i, j);
            }
        p = A * p;
    }
    (void)flavor;  // the flavour only fixes which qudit is written first in the picture
    return embed(local, d, n, {control, target});
}

inline Mat cz_gate(const PhaseRing& r) {
    Mat m = Mat::Zero(r.d * r.d, r.d * r.d);
    for (int a = 0; a < r.d; ++a)
        for (int b = 0; b < r.d; ++b) m(a * r.d + b, a * r.d + b) = r.q_pow(long(a) * b);
    return m;
}

// b_m|k,l> = q^{mkl}|l,k>
inline Mat sym_matrix(const PhaseRing& r, long m) {
    const int d = r.d;
    Mat s = Mat::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s(l * d + k, k * d + l) = r.q_pow(m * k * l);
    return s;
}

// strand: the left strand (0-based) of the first of the two qudits; must be even
inline Mat sym_gate(const PhaseRing& r, int n, int strand, long m) {
    if (strand < 0 || strand % 2 != 0 || strand / 2 + 1 >= n)
        throw DimensionError("sym gate must sit on a qudit boundary pairing two adjacent qudits");
    return embed(sym_matrix(r, m), r.d, n, {strand / 2, strand / 2 + 1});
}

}  // namespace pappa
