#pragma once

// Shared generators for property tests. Exact rational inputs only:
// random cells use small integer numerators, and no-signaling inputs are made
// by symmetrizing marginals and rejecting anything that goes negative. These
// generators are independent of the polytope machinery they are used to test.

#include "nlbox/correlation.hpp"
#include "nlbox/polytope.hpp"
#include "nlbox/rng.hpp"
#include "nlbox/vertices.hpp"

namespace test_support {

using nlbox::CorrelationArray;
using nlbox::Rational;

// One cell: four numerators in 0..16 (not all zero) over their sum.
inline std::array<Rational, 4> random_cell(nlbox::RngState& rng) {
    for (;;) {
        long n[4], total = 0;
        for (long& v : n) {
            v = static_cast<long>(rng.next() % 17);
            total += v;
        }
        if (total == 0) continue;
        std::array<Rational, 4> cell;
        for (int i = 0; i < 4; ++i) {
            cell[static_cast<std::size_t>(i)] = Rational(n[i]);
            cell[static_cast<std::size_t>(i)] /= total;
        }
        return cell;
    }
}

inline CorrelationArray random_valid_array(nlbox::RngState& rng) {
    std::array<Rational, CorrelationArray::kEntries> e;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            std::array<Rational, 4> cell = random_cell(rng);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    e[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] =
                        cell[static_cast<std::size_t>(a * 2 + b)];
        }
    return nlbox::make_array(std::move(e));
}

// Project a valid array onto the no-signaling subspace by replacing each
// party's marginals with their remote-input average:
//   p'(ab|xy) = p(ab|xy) + [avg_A(a|x) - p_A(a|x,y)]/2 + [avg_B(b|y) - p_B(b|x,y)]/2
// Cell sums stay 1 and both no-signaling constraints hold exactly; entries
// can go negative, in which case the draw is rejected.
inline CorrelationArray random_nosignaling_array(nlbox::RngState& rng) {
    for (;;) {
        CorrelationArray p = random_valid_array(rng);
        nlbox::MarginalTable t = nlbox::marginals(p);
        std::array<Rational, CorrelationArray::kEntries> e;
        bool ok = true;
        for (int x = 0; x < 2 && ok; ++x)
            for (int y = 0; y < 2 && ok; ++y)
                for (int a = 0; a < 2 && ok; ++a)
                    for (int b = 0; b < 2 && ok; ++b) {
                        Rational avg_a = (t.alice(a, x, 0) + t.alice(a, x, 1)) / 2;
                        Rational avg_b = (t.bob(b, 0, y) + t.bob(b, 1, y)) / 2;
                        Rational v = p.at(x, y, a, b) + (avg_a - t.alice(a, x, y)) / 2 +
                                     (avg_b - t.bob(b, x, y)) / 2;
                        if (v < 0) {
                            ok = false;
                            break;
                        }
                        e[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] = v;
                    }
        if (ok) return nlbox::make_array(std::move(e));
    }
}

// Random convex mixture of the 16 local vertices (numerators 0..8).
inline CorrelationArray random_local_mixture(nlbox::RngState& rng) {
    const nlbox::VertexSet& set = nlbox::local_vertex_set();
    for (;;) {
        long n[16], total = 0;
        for (long& v : n) {
            v = static_cast<long>(rng.next() % 9);
            total += v;
        }
        if (total == 0) continue;
        std::vector<std::pair<Rational, CorrelationArray>> mix;
        for (int i = 0; i < 16; ++i) {
            if (n[i] == 0) continue;
            Rational w(n[i]);
            w /= total;
            mix.push_back({w, set.arrays[static_cast<std::size_t>(i)]});
        }
        return nlbox::convex_mix(mix);
    }
}

}  // namespace test_support
