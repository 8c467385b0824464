#include <catch2/catch_amalgamated.hpp>

#include "nlbox/correlation.hpp"
#include "nlbox/tables.hpp"
#include "nlbox/vertices.hpp"
#include "test_support.hpp"

using namespace nlbox;

namespace {
Rational r(long n, long d = 1) { return rational(n, d); }
}

TEST_CASE("make_array validates entries and cell sums") {
    CHECK_NOTHROW(tables::table4());
    CHECK_NOTHROW(tables::uniform());

    // cell (0,0) holding (1/2, 1/2, 1/2, 0) sums to 3/2
    std::array<Rational, 16> e;
    e.fill(r(1, 4));
    e[CorrelationArray::index(0, 0, 0, 0)] = r(1, 2);
    e[CorrelationArray::index(0, 0, 0, 1)] = r(1, 2);
    e[CorrelationArray::index(0, 0, 1, 0)] = r(1, 2);
    e[CorrelationArray::index(0, 0, 1, 1)] = r(0);
    try {
        make_array(e);
        FAIL("expected CellNotNormalized");
    } catch (const CellNotNormalized& err) {
        CHECK(err.x == 0);
        CHECK(err.y == 0);
        CHECK(err.sum == "3/2");
    }

    e.fill(r(1, 4));
    e[CorrelationArray::index(1, 0, 0, 0)] = r(-1, 4);
    e[CorrelationArray::index(1, 0, 1, 1)] = r(3, 4);
    CHECK_THROWS_AS(make_array(e), NegativeProbability);
}

TEST_CASE("cell normalization holds for every generated array") {
    RngState rng{101, 0};
    for (int trial = 0; trial < 50; ++trial) {
        CorrelationArray arr = test_support::random_valid_array(rng);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                Rational sum = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) sum += arr.at(x, y, a, b);
                REQUIRE(sum == 1);
            }
    }
}

TEST_CASE("marginals of the standard tables") {
    MarginalTable pr = marginals(tables::table4());
    for (int o = 0; o < 2; ++o)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                CHECK(pr.alice(o, x, y) == r(1, 2));
                CHECK(pr.bob(o, x, y) == r(1, 2));
            }

    MarginalTable t3 = marginals(tables::table3());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(t3.alice(0, x, y) == 1);

    // Bob's output equals Alice's input in table2
    MarginalTable t2 = marginals(tables::table2());
    for (int y = 0; y < 2; ++y) CHECK(t2.bob(1, 1, y) == 1);
}

TEST_CASE("signaling reports") {
    SignalingReport t2 = signaling_report(tables::table2());
    CHECK(t2.alice_to_bob);
    CHECK(t2.bob_to_alice);
    CHECK_FALSE(t2.witnesses.empty());

    SignalingReport t4 = signaling_report(tables::table4());
    CHECK(t4.no_signaling());
    CHECK(t4.witnesses.empty());

    SignalingReport t7 = signaling_report(tables::table7());
    CHECK(t7.bob_to_alice);
    CHECK_FALSE(t7.alice_to_bob);
    bool found = false;
    for (const SignalingWitness& w : t7.witnesses)
        if (w.party == Party::Alice && w.local_input == 1) found = true;
    CHECK(found);
}

TEST_CASE("signaling report is clean iff marginal equalities hold entrywise") {
    RngState rng{202, 0};
    auto direct_check = [](const CorrelationArray& arr) {
        MarginalTable t = marginals(arr);
        for (int o = 0; o < 2; ++o) {
            for (int x = 0; x < 2; ++x)
                if (t.alice(o, x, 0) != t.alice(o, x, 1)) return false;
            for (int y = 0; y < 2; ++y)
                if (t.bob(o, 0, y) != t.bob(o, 1, y)) return false;
        }
        return true;
    };
    for (int trial = 0; trial < 40; ++trial) {
        CorrelationArray arr = test_support::random_valid_array(rng);
        CHECK(signaling_report(arr).no_signaling() == direct_check(arr));
        CorrelationArray ns = test_support::random_nosignaling_array(rng);
        CHECK(signaling_report(ns).no_signaling());
    }
}

TEST_CASE("chsh statistics") {
    ChshStats pr = chsh(tables::table4());
    CHECK(pr.K == 4);
    CHECK(pr.E == 1);

    ChshStats uni = chsh(tables::uniform());
    CHECK(uni.K == 0);
    CHECK(uni.E == 0);

    ChshStats t3 = chsh(tables::table3());
    for (int c = 0; c < 4; ++c) CHECK(t3.expectations[static_cast<std::size_t>(c)] == 1);
    CHECK(t3.K == 2);
    CHECK(t3.E == r(1, 2));
}

TEST_CASE("simulation success probability") {
    CHECK(sim_success_probability(tables::table4()) == 1);
    CHECK(sim_success_probability(tables::uniform()) == r(1, 2));

    // best vertex: maximize over the 16 local vertices
    Rational best = 0;
    for (const DeterministicVertex& v : local_vertices())
        best = std::max(best, sim_success_probability(v.array()));
    CHECK(best == r(3, 4));
}

TEST_CASE("the two formulas for simulation success agree on random arrays") {
    RngState rng{303, 0};
    for (int trial = 0; trial < 60; ++trial) {
        CorrelationArray arr = test_support::random_valid_array(rng);
        Rational p = sim_success_probability(arr);  // throws FormulaMismatch on disagreement
        CHECK(p == (1 + chsh(arr).E) / 2);
    }
}

TEST_CASE("vertex census") {
    std::vector<TaggedVertex> verts = enumerate_vertices();
    REQUIRE(verts.size() == 256);
    int local = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        CHECK(verts[i].vertex.id == i);  // canonical order
        if (verts[i].local) ++local;
    }
    CHECK(local == 16);
    CHECK(verts[0].local);  // all-outputs-0
}

TEST_CASE("local tag coincides with product factorization on all 256 vertices") {
    for (const TaggedVertex& t : enumerate_vertices())
        CHECK(t.local == factors_as_product(t.vertex));
}

TEST_CASE("deterministic vertex arrays have exactly one unit entry per cell") {
    RngState rng{404, 0};
    for (int trial = 0; trial < 20; ++trial) {
        DeterministicVertex v{static_cast<std::uint8_t>(rng.next() % 256)};
        CorrelationArray arr = v.array();
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                int ones = 0, zeros = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        if (arr.at(x, y, a, b) == 1) ++ones;
                        if (arr.at(x, y, a, b) == 0) ++zeros;
                    }
                CHECK(ones == 1);
                CHECK(zeros == 3);
            }
    }
}
