#include <catch2/catch_amalgamated.hpp>

#include "nlbox/relabel.hpp"
#include "nlbox/tables.hpp"
#include "test_support.hpp"

using namespace nlbox;

TEST_CASE("identity relabeling leaves arrays unchanged") {
    LocalRelabeling id;
    CHECK(apply_relabeling(tables::table4(), id) == tables::table4());
    CHECK(apply_relabeling(tables::table7(), id) == tables::table7());
}

TEST_CASE("flipping Alice's output maps the PR box to its relabeled variant") {
    LocalRelabeling op{0, 0, 0, 1, 0, 0};
    CHECK(apply_relabeling(tables::table4(), op) == tables::table5());
}

TEST_CASE("some group element maps table4 to table5") {
    bool found = false;
    for (const LocalRelabeling& op : LocalRelabeling::all())
        if (apply_relabeling(tables::table4(), op) == tables::table5()) found = true;
    CHECK(found);
}

TEST_CASE("the relabeling tuples form a group of 64 distinct transformations") {
    const auto& all = LocalRelabeling::all();
    REQUIRE(all.size() == 64);

    // distinct as transformations: separate them on a generic array
    RngState rng{11, 0};
    CorrelationArray probe = test_support::random_valid_array(rng);
    std::set<CorrelationArray> images;
    for (const LocalRelabeling& op : all) images.insert(apply_relabeling(probe, op));
    CHECK(images.size() == 64);

    // closure of the tuple composition
    for (const LocalRelabeling& f : all)
        for (const LocalRelabeling& g : all) {
            LocalRelabeling h = f.then(g);
            bool member = false;
            for (const LocalRelabeling& e : all)
                if (e == h) member = true;
            REQUIRE(member);
        }
}

TEST_CASE("composition matches the pointwise action") {
    RngState rng{12, 0};
    const auto& all = LocalRelabeling::all();
    for (int trial = 0; trial < 30; ++trial) {
        CorrelationArray arr = test_support::random_valid_array(rng);
        const LocalRelabeling& f = all[rng.next() % 64];
        const LocalRelabeling& g = all[rng.next() % 64];
        CHECK(apply_relabeling(arr, f.then(g)) == apply_relabeling(apply_relabeling(arr, f), g));
    }
}

TEST_CASE("every element inverts: apply(op-1, apply(op, arr)) = arr") {
    RngState rng{13, 0};
    CorrelationArray arr = test_support::random_valid_array(rng);
    for (const LocalRelabeling& op : LocalRelabeling::all()) {
        CHECK(apply_relabeling(apply_relabeling(arr, op), op.inverse()) == arr);
        CHECK(apply_relabeling(apply_relabeling(tables::table4(), op), op.inverse()) ==
              tables::table4());
        CHECK(op.then(op.inverse()).is_identity());
        CHECK(op.inverse().then(op).is_identity());
    }
}

TEST_CASE("relabeling preserves normalization and the no-signaling property") {
    RngState rng{14, 0};
    const auto& all = LocalRelabeling::all();
    for (int trial = 0; trial < 30; ++trial) {
        CorrelationArray ns = test_support::random_nosignaling_array(rng);
        const LocalRelabeling& op = all[rng.next() % 64];
        CorrelationArray out = apply_relabeling(ns, op);  // make_array re-validates cells
        CHECK(signaling_report(out).no_signaling());
    }
}

TEST_CASE("orbits: 8 PR boxes and 16 local vertices") {
    std::vector<CorrelationArray> pr = pr_orbit();
    REQUIRE(pr.size() == 8);
    for (const CorrelationArray& arr : pr) {
        Rational k = chsh(arr).K;
        CHECK((k == 4 || k == -4));
        CHECK(signaling_report(arr).no_signaling());
    }
    CHECK(std::is_sorted(pr.begin(), pr.end()));

    std::vector<CorrelationArray> loc = local_orbit();
    REQUIRE(loc.size() == 16);
    // identical to the tagged local vertices
    std::set<CorrelationArray> from_census;
    for (const DeterministicVertex& v : local_vertices()) from_census.insert(v.array());
    CHECK(std::set<CorrelationArray>(loc.begin(), loc.end()) == from_census);
}

TEST_CASE("|K| is constant along the PR and local orbits") {
    for (const CorrelationArray& arr : pr_orbit()) {
        Rational k = chsh(arr).K;
        CHECK(abs(k) == 4);
    }
    for (const CorrelationArray& arr : local_orbit()) {
        Rational k = chsh(arr).K;
        CHECK(abs(k) == 2);
    }
}
