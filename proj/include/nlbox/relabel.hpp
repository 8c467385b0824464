#pragma once

// Local reversible relabelings of inputs and (input-conditionally) outputs.
//
// An element (s,t,u,v,w,z) of six bits acts on an array by relabeling
//   x -> x' = x + s,   a -> a' = a + u*x' + v      (Alice, mod 2)
//   y -> y' = y + t,   b -> b' = b + w*y' + z      (Bob, mod 2)
// with output relabelings applied after input relabelings and conditioned on
// the *new* input label. The 64 tuples are closed under composition and an
// action-level group (composition and inverse formulas below are pinned by
// tests against the pointwise action).

#include <array>
#include <set>
#include <vector>

#include "nlbox/correlation.hpp"
#include "nlbox/tables.hpp"

namespace nlbox {

struct LocalRelabeling {
    int s = 0, t = 0;  // input flips (Alice, Bob)
    int u = 0, v = 0;  // Alice output map a -> a + u*x' + v
    int w = 0, z = 0;  // Bob output map   b -> b + w*y' + z

    bool is_identity() const { return !s && !t && !u && !v && !w && !z; }
    bool operator==(const LocalRelabeling&) const = default;

    // Composition: apply *this first, then `g`. Per party (Alice shown; Bob
    // identical with (t,w,z)):
    //   s = s1+s2,  u = u1+u2,  v = v1+v2+u1*s2   (mod 2)
    LocalRelabeling then(const LocalRelabeling& g) const {
        LocalRelabeling r;
        r.s = s ^ g.s;
        r.u = u ^ g.u;
        r.v = v ^ g.v ^ (u & g.s);
        r.t = t ^ g.t;
        r.w = w ^ g.w;
        r.z = z ^ g.z ^ (w & g.t);
        return r;
    }

    LocalRelabeling inverse() const {
        LocalRelabeling r = *this;
        r.v = v ^ (u & s);
        r.z = z ^ (w & t);
        return r;
    }

    static const std::vector<LocalRelabeling>& all() {
        static const std::vector<LocalRelabeling> group = [] {
            std::vector<LocalRelabeling> g;
            g.reserve(64);
            for (int bits = 0; bits < 64; ++bits) {
                g.push_back({(bits >> 5) & 1, (bits >> 4) & 1, (bits >> 3) & 1,
                             (bits >> 2) & 1, (bits >> 1) & 1, bits & 1});
            }
            return g;
        }();
        return group;
    }
};

// Transformed array q with q(a,b|x,y) = p(a + u*x + v, b + w*y + z | x+s, y+t):
// the entry the relabeled experiment assigns to new labels (x,y,a,b) is the
// original entry at the pre-image labels.
inline CorrelationArray apply_relabeling(const CorrelationArray& arr, const LocalRelabeling& op) {
    std::array<Rational, CorrelationArray::kEntries> e{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    int xo = x ^ op.s;
                    int yo = y ^ op.t;
                    int ao = a ^ (op.u & x) ^ op.v;
                    int bo = b ^ (op.w & y) ^ op.z;
                    e[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] =
                        arr.at(xo, yo, ao, bo);
                }
            }
        }
    }
    return make_array(std::move(e));
}

// Orbit of an array under the full relabeling group, deduplicated and in
// canonical (entry-lexicographic) order.
inline std::vector<CorrelationArray> orbit(const CorrelationArray& base) {
    std::set<CorrelationArray> seen;
    for (const LocalRelabeling& op : LocalRelabeling::all()) seen.insert(apply_relabeling(base, op));
    return {seen.begin(), seen.end()};
}

// The 8 PR-box vertices: orbit of the standard PR box.
inline std::vector<CorrelationArray> pr_orbit() { return orbit(tables::pr_box()); }

// The 16 local deterministic vertices as the orbit of the all-outputs-0 array.
inline std::vector<CorrelationArray> local_orbit() { return orbit(tables::table3()); }

}  // namespace nlbox
