#pragma once

#include <random>

#include "pappa/diagram.hpp"

namespace testing_support {

using namespace pappa;

// Random well-formed diagram with every intermediate width in [0, max_width].
inline Diagram random_diagram(std::mt19937& g, int d, int in, int depth, int max_width = 6, bool allow_sym = true) {
    Diagram D = Diagram::identity(d, in);
    int w = in;
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); };
    for (int i = 0; i < depth; ++i) {
        std::vector<Generator> gens;
        int kind = pick(0, 5);
        if (kind == 0 || w == 0) {
            if (w + 2 <= max_width) gens.push_back(Generator::at(GenKind::cap, pick(0, w)));
        } else if (kind == 1) {
            int n = pick(1, std::min(w, 3));
            for (int c = 0; c < n; ++c) gens.push_back(Generator::charge_at(pick(0, w - 1), pick(-d, d), pick(-2, 2)));
        } else if (kind == 2 && w >= 2) {
            gens.push_back(Generator::at(pick(0, 1) ? GenKind::braid_pos : GenKind::braid_neg, pick(0, w - 2)));
        } else if (kind == 3 && w >= 2) {
            gens.push_back(Generator::at(GenKind::cup, pick(0, w - 2)));
        } else if (kind == 4 && w >= 4 && allow_sym) {
            gens.push_back(Generator::sym_at(2 * pick(0, w / 2 - 2), pick(0, d - 1)));
        } else if (w >= 2) {
            // a charge next to a structural piece in the same layer
            int s = pick(0, w - 2);
            gens.push_back(Generator::at(GenKind::braid_pos, s));
            if (w >= 4) gens.push_back(Generator::charge_at(s >= 2 ? 0 : w - 1, pick(1, d - 1), 0));
        }
        Layer L = layer_from_generators(w, gens);
        w = L.bottom_width();
        D.layers.push_back(L);
    }
    D.out_points = w;
    return D;
}

}  // namespace testing_support
