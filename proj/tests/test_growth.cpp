#include <doctest.h>

#include "grd/fixtures.hpp"
#include "grd/growth.hpp"

using namespace grd;

TEST_SUITE("growth") {

TEST_CASE("ball count tables are exact and monotone") {
    auto sys = std::make_shared<FullShiftSystem>(2);
    auto units = sys->base_points(2);
    auto table = ball_counts(units, 4, dr_fiber_counter(sys), sys->name(), "fiber");
    auto maxima = table.max_counts();
    CHECK(maxima == std::vector<long long>{1, 4, 10, 22, 46});
    CHECK(maxima[3] >= 15);  // (d^{N+1}-1)/(d-1) at N = 3
    for (const auto& row : table.rows) CHECK(row.exact);
    // Nondecreasing per unit, count >= 1 at radius 0.
    long long prev = 0;
    std::string unit;
    for (const auto& row : table.rows) {
        if (row.unit != unit) {
            unit = row.unit;
            prev = 0;
            CHECK(row.radius == 0);
            CHECK(row.count >= 1);
        }
        CHECK(row.count >= prev);
        prev = row.count;
    }
}

TEST_CASE("csv emission") {
    auto sys = make_af_chain_system(16);
    auto table = ball_counts({"a"}, 4, preimage_counter(sys), sys->name(), "preimage");
    auto csv = table.to_csv();
    CHECK(csv.rfind("unit_id,radius,count\n", 0) == 0);
    CHECK(csv.find("a,3,4\n") != std::string::npos);
}

TEST_CASE("classifier: exponential for the full 2-shift") {
    auto sys = std::make_shared<FullShiftSystem>(2);
    auto table = ball_counts(sys->base_points(1), 8, dr_fiber_counter(sys), sys->name(), "fiber");
    auto cls = classify_growth(table);
    CHECK(cls.kind == GrowthKind::Exponential);
    CHECK(cls.base > 1.8);
    CHECK(cls.base < 2.2);
    // Successive-ratio oracle: count(N+1)/count(N) within [d-0.5, d+0.5].
    auto maxima = table.max_counts();
    for (std::size_t n = 2; n + 1 < maxima.size(); ++n) {
        double ratio = static_cast<double>(maxima[n + 1]) / static_cast<double>(maxima[n]);
        CHECK(ratio > 1.5);
        CHECK(ratio < 2.5);
    }
}

TEST_CASE("classifier: the chain preimage table is linear") {
    auto sys = make_af_chain_system(32);
    auto table = ball_counts({"a"}, 8, preimage_counter(sys), sys->name(), "preimage");
    CHECK(table.max_counts() == std::vector<long long>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto cls = classify_growth(table);
    CHECK(cls.kind == GrowthKind::Polynomial);
    CHECK(cls.d_hat == 1);
    CHECK(cls.c_hat == doctest::Approx(1.0));
    CHECK(cls.certificate_ok);
}

TEST_CASE("classifier: the chain fiber table is quadratic") {
    // The full fiber at the fixed point carries the integer isotropy on top
    // of the preimage chain, so its balls grow like (R+1)^2.
    auto sys = make_af_chain_system(32);
    auto table = ball_counts({"a"}, 8, dr_fiber_counter(sys), sys->name(), "fiber");
    auto cls = classify_growth(table);
    CHECK(cls.kind == GrowthKind::Polynomial);
    CHECK(cls.d_hat == 2);
    CHECK(cls.certificate_ok);
}

TEST_CASE("classifier: bounded for compact fixtures") {
    auto v = pair_groupoid(5);
    auto table = ball_counts({v->unit_key(0)}, 5, view_fiber_counter(v), v->descriptor(), "view");
    CHECK(table.max_counts() == std::vector<long long>{1, 5, 5, 5, 5, 5});
    auto cls = classify_growth(table);
    CHECK(cls.kind == GrowthKind::Bounded);
    CHECK(cls.d_hat == 0);
    CHECK(cls.c_hat == doctest::Approx(5.0));
    CHECK(cls.certificate_ok);
}

TEST_CASE("classifier: single loop graph is linear") {
    auto sys = std::make_shared<GraphPathSystem>(loop_graph(1));
    auto table = ball_counts(sys->base_points(1), 8, dr_fiber_counter(sys), sys->name(), "fiber");
    CHECK(table.max_counts() == std::vector<long long>{1, 3, 5, 7, 9, 11, 13, 15, 17});
    auto cls = classify_growth(table);
    CHECK(cls.kind == GrowthKind::Polynomial);
    CHECK(cls.d_hat == 1);
}

TEST_CASE("certificate validity is absolute") {
    for (auto kind : {std::string("preimage"), std::string("fiber")}) {
        auto sys = make_af_chain_system(32);
        FiberCounter counter = kind == "preimage" ? preimage_counter(sys) : dr_fiber_counter(sys);
        auto table = ball_counts({"a", "b0"}, 8, counter, sys->name(), kind);
        auto cls = classify_growth(table);
        REQUIRE(cls.kind == GrowthKind::Polynomial);
        for (const auto& row : table.rows) {
            double bound = cls.c_hat * std::pow(1.0 + row.radius, cls.d_hat);
            CHECK(static_cast<double>(row.count) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("classification is stable under sample enlargement") {
    auto sys = std::make_shared<FullShiftSystem>(2);
    auto t1 = ball_counts(sys->base_points(1), 8, dr_fiber_counter(sys), sys->name(), "fiber");
    auto t3 = ball_counts(sys->base_points(3), 8, dr_fiber_counter(sys), sys->name(), "fiber");
    CHECK(classify_growth(t1).kind == classify_growth(t3).kind);
}

TEST_CASE("too few radii is an input error") {
    auto v = pair_groupoid(2);
    auto table = ball_counts({v->unit_key(0)}, 3, view_fiber_counter(v), v->descriptor(), "view");
    CHECK_THROWS_AS(classify_growth(table), InputError);
}

}  // TEST_SUITE
