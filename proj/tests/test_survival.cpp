#include <catch2/catch_amalgamated.hpp>

#include "coptail/archimedean.hpp"
#include "coptail/marshall_olkin.hpp"
#include "coptail/rng.hpp"
#include "coptail/survival.hpp"

using namespace coptail;

TEST_CASE("independence diagonal survives catastrophic cancellation", "[survival]") {
    const independence_model ind6{6};
    const survival_eval e = survival_diagonal_generic(ind6, index_subset::full(6), 1e-6);
    CHECK_THAT(e.value, Catch::Matchers::WithinRel(1e-36, 1e-6));
    CHECK(e.working_digits >= 66);

    // naive double-precision alternating sum has no hope here: the terms are
    // O(1) while the result is 1e-36
    double naive = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << 6); ++mask) {
        const int bits = std::popcount(mask);
        naive += ((bits % 2) ? -1.0 : 1.0) * std::pow(1.0 - 1e-6, bits);
    }
    naive += 1.0;
    CHECK(std::abs(naive - 1e-36) > 1e-20);
}

TEST_CASE("independence diagonal equals u^d across dimensions", "[survival]") {
    for (int d = 2; d <= 5; ++d) {
        const independence_model ind{d};
        for (double u : {0.3, 1e-2, 1e-4}) {
            const survival_eval e = survival_diagonal_generic(ind, index_subset::full(d), u);
            CHECK_THAT(e.value, Catch::Matchers::WithinRel(std::pow(u, d), 1e-10));
        }
    }
}

TEST_CASE("comonotone diagonal equals u and rectangular values hit min", "[survival]") {
    const comonotone_model co{4};
    for (double u : {0.5, 1e-2, 1e-5}) {
        const survival_eval e = survival_diagonal_generic(co, index_subset::full(4), u);
        CHECK_THAT(e.value, Catch::Matchers::WithinRel(u, 1e-10));
    }
    const survival_eval m =
        survival_via_inclusion_exclusion(co, index_subset{1, 2, 3}, {0.2, 0.05, 0.4});
    CHECK_THAT(m.value, Catch::Matchers::WithinRel(0.05, 1e-10));
}

TEST_CASE("survival values respect the universal bounds", "[survival]") {
    const mo_model mo(mo_proportional_rates(3));
    const archimedean_model arch{generator(generator_family::clayton, 2.0), 3};
    rng_stream g(5150, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> u(3);
        for (double& x : u) x = g.uniform01();
        const double mn = *std::min_element(u.begin(), u.end());
        const double vm =
            survival_via_inclusion_exclusion(mo, index_subset::full(3), u).value;
        const double va =
            survival_via_inclusion_exclusion(arch, index_subset::full(3), u).value;
        CHECK(vm >= -1e-15);
        CHECK(va >= -1e-15);
        CHECK(vm <= mn + 1e-12);
        CHECK(va <= mn + 1e-12);
    }
}

TEST_CASE("setting a survival argument to one marginalizes the coordinate", "[survival]") {
    const mo_model mo(mo_proportional_rates(3));
    const double full = survival_via_inclusion_exclusion(mo, index_subset::full(3),
                                                         {0.1, 1.0, 0.25}).value;
    const double marg =
        survival_via_inclusion_exclusion(mo, index_subset{1, 3}, {0.1, 0.25}).value;
    CHECK_THAT(full, Catch::Matchers::WithinRel(marg, 1e-13));

    // zero coordinate grounds the whole probability at zero
    CHECK(survival_via_inclusion_exclusion(mo, index_subset::full(3), {0.1, 0.0, 0.25}).value ==
          0.0);
}

TEST_CASE("marshall-olkin log-space survival agrees with inclusion-exclusion", "[survival]") {
    const mo_model mo(mo_proportional_rates(4));
    rng_stream g(321, 0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> u(4);
        for (double& x : u) x = 0.05 + 0.9 * g.uniform01();
        const double direct = mo.survival(u);
        const double ie = survival_via_inclusion_exclusion(mo, index_subset::full(4), u).value;
        CHECK_THAT(direct, Catch::Matchers::WithinRel(ie, 1e-13));
    }
}

TEST_CASE("precision ceiling turns into a structured error", "[survival]") {
    const independence_model ind{6};
    // 6 coordinates at 1e-70 would need ~450 working digits
    CHECK_THROWS_AS(survival_diagonal_generic(ind, index_subset::full(6), 1e-70),
                    precision_error);
    // a tighter caller-imposed cap trips earlier
    precision_request tight;
    tight.max_digits = 50;
    CHECK_THROWS_AS(survival_diagonal_generic(ind, index_subset::full(6), 1e-6, tight),
                    precision_error);
}

TEST_CASE("frank diagonal slope shows near-independence order d", "[survival]") {
    const archimedean_model frank{generator(generator_family::frank, 1.0), 3};
    const index_subset s = index_subset::full(3);
    const double u1 = 1e-6, u2 = 1e-3;
    const double v1 = survival_diagonal_generic(frank, s, u1).value;
    const double v2 = survival_diagonal_generic(frank, s, u2).value;
    const double slope = (std::log(v2) - std::log(v1)) / (std::log(u2) - std::log(u1));
    CHECK_THAT(slope, Catch::Matchers::WithinAbs(3.0, 0.1));
}

TEST_CASE("argument validation rejects malformed calls", "[survival]") {
    const independence_model ind{3};
    CHECK_THROWS_AS(
        survival_via_inclusion_exclusion(ind, index_subset::full(3), {0.1, 0.2}),
        validation_error);
    CHECK_THROWS_AS(
        survival_via_inclusion_exclusion(ind, index_subset::full(3), {0.1, 0.2, 1.5}),
        validation_error);
    CHECK_THROWS_AS(survival_diagonal_generic(ind, index_subset::full(3), -0.1),
                    validation_error);
}
