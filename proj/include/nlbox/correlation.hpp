#pragma once

// Correlation arrays for the bipartite two-input/two-output scenario and the
// exact statistics computed from them.
//
// Index conventions used everywhere in this library:
//   - inputs  x, y in {0,1} (Alice, Bob), outputs a, b in {0,1}
//   - an array holds the 16 joint conditional probabilities p(a,b|x,y)
//   - flat index = ((x*2 + y)*2 + a)*2 + b, i.e. (x,y,a,b) with x outermost;
//     serialization fixes this same order
//   - a "cell" is the 4-entry block for one input pair (x,y)

#include <array>
#include <compare>
#include <utility>
#include <vector>

#include "nlbox/errors.hpp"
#include "nlbox/rational.hpp"

namespace nlbox {

class CorrelationArray {
  public:
    static constexpr int kEntries = 16;

    static constexpr int index(int x, int y, int a, int b) {
        return ((x * 2 + y) * 2 + a) * 2 + b;
    }

    const Rational& at(int x, int y, int a, int b) const {
        return p_[static_cast<std::size_t>(index(x, y, a, b))];
    }
    const Rational& operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    const std::array<Rational, kEntries>& entries() const { return p_; }

    bool operator==(const CorrelationArray& o) const { return p_ == o.p_; }
    // Lexicographic over the 16 entries in canonical order; used for
    // deduplicating and ordering orbits.
    bool operator<(const CorrelationArray& o) const {
        for (int i = 0; i < kEntries; ++i) {
            if (p_[static_cast<std::size_t>(i)] != o.p_[static_cast<std::size_t>(i)])
                return p_[static_cast<std::size_t>(i)] < o.p_[static_cast<std::size_t>(i)];
        }
        return false;
    }

    friend CorrelationArray make_array(std::array<Rational, kEntries> entries);

  private:
    CorrelationArray() = default;
    std::array<Rational, kEntries> p_{};
};

// Validates and freezes an array. Entries must be nonnegative and each cell
// must sum to exactly 1 (which also bounds every entry by 1).
inline CorrelationArray make_array(std::array<Rational, CorrelationArray::kEntries> entries) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Rational sum = 0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const Rational& v =
                        entries[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))];
                    if (v < 0) {
                        throw NegativeProbability("negative probability " + to_string(v) +
                                                  " at (x,y,a,b)=(" + std::to_string(x) + "," +
                                                  std::to_string(y) + "," + std::to_string(a) +
                                                  "," + std::to_string(b) + ")");
                    }
                    sum += v;
                }
            }
            if (sum != 1) throw CellNotNormalized(x, y, to_string(sum));
        }
    }
    CorrelationArray arr;
    arr.p_ = std::move(entries);
    return arr;
}

// Exact convex mixture of arrays. Weights must be nonnegative and sum to 1.
inline CorrelationArray convex_mix(const std::vector<std::pair<Rational, CorrelationArray>>& terms) {
    std::array<Rational, CorrelationArray::kEntries> acc{};
    Rational total = 0;
    for (const auto& [w, arr] : terms) {
        if (w < 0) throw DomainError("negative mixture weight");
        total += w;
        for (int i = 0; i < CorrelationArray::kEntries; ++i)
            acc[static_cast<std::size_t>(i)] += w * arr[i];
    }
    if (total != 1) throw DomainError("mixture weights sum to " + to_string(total));
    return make_array(std::move(acc));
}

// ---------------------------------------------------------------------------
// Marginals and signaling detection

struct MarginalTable {
    // alice(a,x,y) = p(a|x,y), bob(b,x,y) = p(b|x,y)
    std::array<Rational, 8> alice_p{};
    std::array<Rational, 8> bob_p{};

    static constexpr int index(int outcome, int x, int y) { return (outcome * 2 + x) * 2 + y; }
    const Rational& alice(int a, int x, int y) const {
        return alice_p[static_cast<std::size_t>(index(a, x, y))];
    }
    const Rational& bob(int b, int x, int y) const {
        return bob_p[static_cast<std::size_t>(index(b, x, y))];
    }
};

inline MarginalTable marginals(const CorrelationArray& arr) {
    MarginalTable t;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int o = 0; o < 2; ++o) {
                t.alice_p[static_cast<std::size_t>(MarginalTable::index(o, x, y))] =
                    arr.at(x, y, o, 0) + arr.at(x, y, o, 1);
                t.bob_p[static_cast<std::size_t>(MarginalTable::index(o, x, y))] =
                    arr.at(x, y, 0, o) + arr.at(x, y, 1, o);
            }
        }
    }
    return t;
}

enum class Party { Alice, Bob };

// One exact witness of remote-input dependence: the named party's marginal
// for `outcome` given `local_input` differs between the two remote inputs.
struct SignalingWitness {
    Party party;
    int outcome;
    int local_input;
    Rational value_remote0;  // marginal with remote input 0
    Rational value_remote1;  // marginal with remote input 1
};

struct SignalingReport {
    bool bob_to_alice = false;  // Alice's marginal depends on y
    bool alice_to_bob = false;  // Bob's marginal depends on x
    std::vector<SignalingWitness> witnesses;

    bool no_signaling() const { return !bob_to_alice && !alice_to_bob; }
};

inline SignalingReport signaling_report(const CorrelationArray& arr) {
    MarginalTable t = marginals(arr);
    SignalingReport rep;
    for (int o = 0; o < 2; ++o) {
        for (int x = 0; x < 2; ++x) {
            const Rational& v0 = t.alice(o, x, 0);
            const Rational& v1 = t.alice(o, x, 1);
            if (v0 != v1) {
                rep.bob_to_alice = true;
                rep.witnesses.push_back({Party::Alice, o, x, v0, v1});
            }
        }
        for (int y = 0; y < 2; ++y) {
            const Rational& v0 = t.bob(o, 0, y);
            const Rational& v1 = t.bob(o, 1, y);
            if (v0 != v1) {
                rep.alice_to_bob = true;
                rep.witnesses.push_back({Party::Bob, o, y, v0, v1});
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// CHSH statistics

struct ChshStats {
    // expectation(x,y) = <xy> in +/-1 units = p(outputs same|xy) - p(outputs different|xy)
    std::array<Rational, 4> expectations{};
    Rational K;  // <00> + <01> + <10> - <11>
    Rational E;  // K/4

    const Rational& expectation(int x, int y) const {
        return expectations[static_cast<std::size_t>(x * 2 + y)];
    }
};

inline Rational p_outputs_same(const CorrelationArray& arr, int x, int y) {
    return arr.at(x, y, 0, 0) + arr.at(x, y, 1, 1);
}

inline Rational p_outputs_different(const CorrelationArray& arr, int x, int y) {
    return arr.at(x, y, 0, 1) + arr.at(x, y, 1, 0);
}

inline ChshStats chsh(const CorrelationArray& arr) {
    ChshStats s;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            s.expectations[static_cast<std::size_t>(x * 2 + y)] =
                p_outputs_same(arr, x, y) - p_outputs_different(arr, x, y);
    s.K = s.expectation(0, 0) + s.expectation(0, 1) + s.expectation(1, 0) - s.expectation(1, 1);
    s.E = s.K / 4;
    return s;
}

// Probability of perfectly simulating a PR box with this array, averaged over
// uniform inputs. Computed two ways (the four-term average and (1 + K/4)/2)
// and required to agree exactly before returning.
inline Rational sim_success_probability(const CorrelationArray& arr) {
    Rational direct = (p_outputs_same(arr, 0, 0) + p_outputs_same(arr, 0, 1) +
                       p_outputs_same(arr, 1, 0) + p_outputs_different(arr, 1, 1)) /
                      4;
    Rational via_k = (1 + chsh(arr).K / 4) / 2;
    if (direct != via_k) {
        throw FormulaMismatch("simulation probability routes disagree: " + to_string(direct) +
                              " vs " + to_string(via_k));
    }
    return direct;
}

}  // namespace nlbox
