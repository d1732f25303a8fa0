#pragma once

#include <functional>
#include <map>

#include "diagram.hpp"
#include "gates.hpp"
#include "jordan_wigner.hpp"
#include "sft.hpp"

namespace pappa {

// Maps a box name to its local matrix (on width/2 qudits).
using BoxResolver = std::function<Mat(const PhaseRing&, const std::string&, int qudits)>;

inline Mat default_box(const PhaseRing& r, const std::string& name, int qudits) {
    if (qudits == 1) return named_gate(r, name);
    if (qudits == 2 && name == "CZ") return cz_gate(r);
    if (qudits == 2 && name == "CX") return controlled_gate(r, 2, 0, 1, pauli_gate(r, Pauli::X));
    if (qudits == 2 && name == "SFT") return sft_gate(r, 2).matrix;
    throw Error("unknown box '" + name + "' on " + std::to_string(qudits) + " qudits");
}

namespace detail {

struct Charged {
    int pos = 0;  // top-side strand position
    long k = 0;
    long tier = 0;
    const Slice* box = nullptr;
};

class Runner {
public:
    Runner(const PhaseRing& r, BoxResolver boxes) : r_(r), boxes_(std::move(boxes)) {}

    // M has d^{w/2} rows
    Mat charge(const Mat& M, int w, int s, long k) const {
        if (mod(k, r_.d) == 0) return M;
        return apply_weyl(r_, charge_word(r_, w / 2, s, k), M);
    }
    Mat braid(const Mat& M, int w, int s, bool positive) const {
        return apply_sum(r_, braid_sum(r_, w / 2, s, positive ? BraidSign::positive : BraidSign::negative), M);
    }
    Mat insert_cap(const Mat& M, int w, int p) const {
        if (p % 2 == 0) return insert_aligned(M, w, p / 2);
        // x at p-1 moves to p+1; carry it back across the new pair
        Mat A = insert_aligned(M, w, (p - 1) / 2);
        A = braid(A, w + 2, p, cap_sign_);
        return braid(A, w + 2, p - 1, cap_sign_);
    }
    Mat remove_cup(const Mat& M, int w, int p) const {
        if (p % 2 == 0) return project_aligned(M, w, p / 2);
        Mat A = braid(M, w, p - 1, !cap_sign_);
        A = braid(A, w, p, !cap_sign_);
        return project_aligned(A, w, (p - 1) / 2);
    }
    Mat box(const Mat& M, int w, int p, const Slice& b) const {
        if (p % 2 != 0) throw Error("box '" + b.name + "' must start on a qudit boundary");
        const int n = w / 2, first = p / 2, width = b.width / 2;
        Mat T = boxes_(r_, b.name, width);
        if (b.dagger) T = T.adjoint().eval();
        std::vector<int> sites;
        for (int j = 0; j < width; ++j) sites.push_back(first + j);
        Mat A = apply_on_sites(M, r_.d, n, sites, T);
        if (mod(b.charge, r_.d) != 0) {
            WeylWord z = WeylWord::identity(r_.d, n);
            for (int j = first + width; j < n; ++j) z.z[j] = int(mod(b.charge, r_.d));
            A = apply_weyl(r_, z, A);
        }
        return A;
    }
    Mat sym(const Mat& M, int w, int p, long m) const {
        if (p % 2 != 0) throw Error("sym must sit on a qudit boundary");
        return apply_on_sites(M, r_.d, w / 2, {p / 2, p / 2 + 1}, sym_matrix(r_, m));
    }

    Mat layer(const Mat& M0, int w, const Layer& L) const {
        Mat M = M0;
        // charged elements, by tier: highest applied first; a same-tier group is a twisted product
        std::vector<Charged> ch;
        int p = 0;
        for (const auto& s : L.slices) {
            if (s.kind == SliceKind::strand) {
                std::map<long, long> by_tier;
                for (const auto& c : s.charges) by_tier[c.tier] += c.k;
                for (auto [t, k] : by_tier) ch.push_back({p, k, t, nullptr});
            } else if (s.kind == SliceKind::box) {
                ch.push_back({p, s.charge, s.tier, &s});
            }
            p += s.top();
        }
        std::stable_sort(ch.begin(), ch.end(), [](const Charged& a, const Charged& b) {
            if (a.tier != b.tier) return a.tier > b.tier;
            return a.pos > b.pos;
        });
        std::size_t i = 0;
        while (i < ch.size()) {
            std::size_t j = i;
            long zeta_exp = 0;
            // group shares a tier; ordered right to left so the rightmost acts first
            while (j < ch.size() && ch[j].tier == ch[i].tier) {
                for (std::size_t t = i; t < j; ++t) zeta_exp -= ch[t].k * ch[j].k;
                ++j;
            }
            for (std::size_t t = i; t < j; ++t)
                M = ch[t].box ? box(M, w, ch[t].pos, *ch[t].box) : charge(M, w, ch[t].pos, ch[t].k);
            if (zeta_exp != 0) M *= r_.zeta_pow(zeta_exp);
            i = j;
        }
        // neutral width-preserving pieces
        p = 0;
        for (const auto& s : L.slices) {
            if (s.kind == SliceKind::braid_pos || s.kind == SliceKind::braid_neg)
                M = braid(M, w, p, s.kind == SliceKind::braid_pos);
            else if (s.kind == SliceKind::sym)
                M = sym(M, w, p, s.m);
            p += s.top();
        }
        // caps and cups, right to left so earlier positions stay valid
        std::vector<std::pair<int, SliceKind>> cc;
        p = 0;
        for (const auto& s : L.slices) {
            if (s.kind == SliceKind::cap || s.kind == SliceKind::cup) cc.push_back({p, s.kind});
            p += s.top();
        }
        for (auto it = cc.rbegin(); it != cc.rend(); ++it) {
            if (it->second == SliceKind::cap) {
                M = insert_cap(M, w, it->first);
                w += 2;
            } else {
                M = remove_cup(M, w, it->first);
                w -= 2;
            }
        }
        return M;
    }

private:
    Mat insert_aligned(const Mat& M, int w, int j) const {
        const int n = w / 2;
        const std::size_t after = checked_dim(r_.d, n - j);
        const std::size_t before = checked_dim(r_.d, j);
        const double f = r_.d_quarter_pow(1);
        Mat out = Mat::Zero(M.rows() * r_.d, M.cols());
        // new qudit at position j in state |0>
        for (std::size_t a = 0; a < before; ++a)
            out.middleRows(a * r_.d * after, after) = f * M.middleRows(a * after, after);
        return out;
    }
    Mat project_aligned(const Mat& M, int w, int j) const {
        const int n = w / 2;
        const std::size_t after = checked_dim(r_.d, n - j - 1);
        const std::size_t before = checked_dim(r_.d, j);
        const double f = r_.d_quarter_pow(1);
        Mat out(M.rows() / r_.d, M.cols());
        for (std::size_t a = 0; a < before; ++a)
            out.middleRows(a * after, after) = f * M.middleRows(a * r_.d * after, after);
        return out;
    }

    const PhaseRing& r_;
    BoxResolver boxes_;
    // sign of the braids that carry a strand across a freshly created pair
    bool cap_sign_ = true;
};

}  // namespace detail

inline QOperator evaluate(const PhaseRing& r, const Diagram& D, const BoxResolver& boxes = default_box) {
    if (D.d != r.d) throw Error("diagram degree does not match the phase ring");
    if (D.in_points % 2 != 0 || D.out_points % 2 != 0) throw Error("odd number of boundary points");
    const int n_in = D.in_points / 2, n_out = D.out_points / 2;
    if (D.is_zero()) return {r.d, n_in, n_out, Mat::Zero(checked_dim(r.d, n_out), checked_dim(r.d, n_in))};
    D.validate();
    detail::Runner run(r, boxes);
    std::size_t dim = checked_dim(r.d, n_in);
    Mat M = Mat::Identity(dim, dim);
    int w = D.in_points;
    for (const auto& L : D.layers) {
        checked_dim(r.d, std::max(w, L.bottom_width()) / 2 + 1);
        M = run.layer(M, w, L);
        w = L.bottom_width();
    }
    return {r.d, n_in, n_out, D.scalar.value(r) * M};
}

inline QOperator cap_op(const PhaseRing& r, int n_before, int position) {
    if (position < 0 || position > n_before) throw DimensionError("cap position out of range");
    Layer L = Layer::identity(2 * position);
    L.slices.push_back(Slice::of(SliceKind::cap));
    for (int i = 2 * position; i < 2 * n_before; ++i) L.slices.push_back(Slice::strand());
    return evaluate(r, Diagram::from_layer(r.d, L));
}

inline QOperator cup_op(const PhaseRing& r, int n_before, int position) {
    if (position < 0 || position >= n_before) throw DimensionError("cup position out of range");
    Layer L = Layer::identity(2 * position);
    L.slices.push_back(Slice::of(SliceKind::cup));
    for (int i = 2 * position + 2; i < 2 * n_before; ++i) L.slices.push_back(Slice::strand());
    return evaluate(r, Diagram::from_layer(r.d, L));
}

// d^{-1/2} sum_k cap_k over cup_{-k}, compared with the two-strand identity
inline double resolution_of_identity_residual(const PhaseRing& r) {
    Mat sum = Mat::Zero(r.d, r.d);
    for (long k = 0; k < r.d; ++k) sum += evaluate(r, compose(cup_diagram(r.d, -k), cap_diagram(r.d, k))).matrix;
    return residual(sum / r.sqrt_d, Mat::Identity(r.d, r.d));
}

// Applies T (on the qudits tagged `party`, in increasing order) by moving those qudits next to each
// other with swaps, placing T there in its Jordan-Wigner form, and moving them back.
inline QOperator local_conjugation_op(const PhaseRing& r, const std::vector<int>& owner_mask, int party,
                                      const QOperator& T, long charge = 0) {
    const int n = int(owner_mask.size());
    std::vector<int> mine;
    for (int j = 0; j < n; ++j)
        if (owner_mask[j] == party) mine.push_back(j);
    if (mine.empty() || T.n_in != int(mine.size()) || T.n_out != T.n_in)
        throw DimensionError("operator size does not match the party's qudits");
    const std::size_t dim = checked_dim(r.d, n);
    const Mat swap = sym_matrix(r, 0);
    // order of qudits after gathering: the party block starts at its first qudit
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = j;
    Mat P = Mat::Identity(dim, dim);
    int target = mine.front();
    for (int q : mine) {
        int at = int(std::find(order.begin(), order.end(), q) - order.begin());
        while (at > target) {
            P = apply_on_sites(P, r.d, n, {at - 1, at}, swap);
            std::swap(order[at - 1], order[at]);
            --at;
        }
        ++target;
    }
    std::vector<int> sites;
    for (int j = 0; j < int(mine.size()); ++j) sites.push_back(mine.front() + j);
    Mat A = apply_on_sites(P, r.d, n, sites, T.matrix);
    if (mod(charge, r.d) != 0) {
        WeylWord z = WeylWord::identity(r.d, n);
        for (int j = sites.back() + 1; j < n; ++j) z.z[j] = int(mod(charge, r.d));
        A = apply_weyl(r, z, A);
    }
    return {r.d, n, n, P.adjoint() * A};
}

}  // namespace pappa
