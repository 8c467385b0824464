#pragma once

// The 256 extremal deterministic correlation arrays (one fixed output pair
// per input pair) and their local/signaling census.
//
// Vertex id convention: reading the output bits in the order
//   a(0,0), b(0,0), a(0,1), b(0,1), a(1,0), b(1,0), a(1,1), b(1,1)
// as a big-endian 8-bit integer gives the id, so id 0 is "all outputs 0" and
// ids ascending is the lexicographic order over the 8 output bits.

#include <cstdint>
#include <vector>

#include "nlbox/correlation.hpp"

namespace nlbox {

struct DeterministicVertex {
    std::uint8_t id = 0;

    int a(int x, int y) const { return (id >> (7 - 2 * (x * 2 + y))) & 1; }
    int b(int x, int y) const { return (id >> (6 - 2 * (x * 2 + y))) & 1; }

    static DeterministicVertex from_outputs(const int a[4], const int b[4]) {
        DeterministicVertex v;
        for (int c = 0; c < 4; ++c) {
            v.id = static_cast<std::uint8_t>(v.id | ((a[c] & 1) << (7 - 2 * c)));
            v.id = static_cast<std::uint8_t>(v.id | ((b[c] & 1) << (6 - 2 * c)));
        }
        return v;
    }

    CorrelationArray array() const {
        std::array<Rational, CorrelationArray::kEntries> e{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                e[static_cast<std::size_t>(CorrelationArray::index(x, y, a(x, y), b(x, y)))] = 1;
        return make_array(std::move(e));
    }

    bool operator==(const DeterministicVertex&) const = default;
};

// True iff the outputs factor as a = f(x), b = g(y), i.e. the induced joint
// probabilities are products of local marginals.
inline bool factors_as_product(const DeterministicVertex& v) {
    for (int x = 0; x < 2; ++x)
        if (v.a(x, 0) != v.a(x, 1)) return false;
    for (int y = 0; y < 2; ++y)
        if (v.b(0, y) != v.b(1, y)) return false;
    return true;
}

struct TaggedVertex {
    DeterministicVertex vertex;
    bool local;  // no-signaling iff true; the other 240 are signaling
};

// All 256 vertices in canonical (id) order, each tagged local or signaling.
// The tag is decided by the signaling report of the induced array.
inline std::vector<TaggedVertex> enumerate_vertices() {
    std::vector<TaggedVertex> out;
    out.reserve(256);
    for (int id = 0; id < 256; ++id) {
        DeterministicVertex v{static_cast<std::uint8_t>(id)};
        out.push_back({v, signaling_report(v.array()).no_signaling()});
    }
    return out;
}

inline std::vector<DeterministicVertex> local_vertices() {
    std::vector<DeterministicVertex> out;
    for (const TaggedVertex& t : enumerate_vertices())
        if (t.local) out.push_back(t.vertex);
    return out;
}

}  // namespace nlbox
