#pragma once

// Built-in named correlation arrays (the standard catalog of this scenario):
// deterministic signaling and no-signaling examples, the PR box and a locally
// relabeled variant, the uniform array, and two nonlocally-contextual
// deterministic arrays. table8 is shipped exactly as printed in its source;
// its printed entries coincide with table7 even though the accompanying
// description differs (see catalog note).

#include <string>
#include <vector>

#include "nlbox/correlation.hpp"

namespace nlbox::tables {

namespace detail {

// Deterministic array from output functions given as 4-entry tables over the
// cell index 2x+y.
inline CorrelationArray deterministic(const int a[4], const int b[4]) {
    std::array<Rational, CorrelationArray::kEntries> e{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            int c = x * 2 + y;
            e[static_cast<std::size_t>(CorrelationArray::index(x, y, a[c], b[c]))] = 1;
        }
    }
    return make_array(std::move(e));
}

// Arrays with uniform marginals concentrated on a fixed output parity per
// cell: p(a,b|x,y) = 1/2 when a+b = parity(x,y) (mod 2), else 0.
inline CorrelationArray parity_half(const int parity[4]) {
    std::array<Rational, CorrelationArray::kEntries> e{};
    Rational half = rational(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (((a ^ b) & 1) == parity[x * 2 + y])
                        e[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] = half;
    return make_array(std::move(e));
}

}  // namespace detail

// Extremal signaling deterministic array: a = y, b = x.
inline CorrelationArray table2() {
    const int a[4] = {0, 1, 0, 1};
    const int b[4] = {0, 0, 1, 1};
    return detail::deterministic(a, b);
}

// Extremal no-signaling deterministic array: all outputs 0.
inline CorrelationArray table3() {
    const int zeros[4] = {0, 0, 0, 0};
    return detail::deterministic(zeros, zeros);
}

// PR box: a+b = x*y (mod 2) with uniform marginals.
inline CorrelationArray table4() {
    const int parity[4] = {0, 0, 0, 1};
    return detail::parity_half(parity);
}
inline CorrelationArray pr_box() { return table4(); }

// PR box with Alice's output flipped: a+b = x*y + 1.
inline CorrelationArray table5() {
    const int parity[4] = {1, 1, 1, 0};
    return detail::parity_half(parity);
}

// Uniform array (everything 1/4); the common point of the two equal-weight
// four-vertex mixtures.
inline CorrelationArray table6() {
    std::array<Rational, CorrelationArray::kEntries> e;
    e.fill(rational(1, 4));
    return make_array(std::move(e));
}
inline CorrelationArray uniform() { return table6(); }

// Bob outputs 0 everywhere; Alice outputs x*y (her output depends on Bob's
// input as well as her own).
inline CorrelationArray table7() {
    const int a[4] = {0, 0, 0, 1};
    const int b[4] = {0, 0, 0, 0};
    return detail::deterministic(a, b);
}

// As printed: entry-identical to table7 (the printed source's caption
// describes different Bob behavior; entries are reproduced as printed).
inline CorrelationArray table8() { return table7(); }

inline const std::vector<std::string>& rational_table_names() {
    static const std::vector<std::string> names = {"table2", "table3", "table4", "table5",
                                                   "table6", "table7", "table8", "uniform", "pr"};
    return names;
}

inline CorrelationArray by_name(const std::string& name) {
    if (name == "table2") return table2();
    if (name == "table3") return table3();
    if (name == "table4") return table4();
    if (name == "table5") return table5();
    if (name == "table6") return table6();
    if (name == "table7") return table7();
    if (name == "table8") return table8();
    if (name == "uniform") return uniform();
    if (name == "pr") return pr_box();
    throw UnknownCatalogEntry("unknown table: '" + name + "'");
}

}  // namespace nlbox::tables
