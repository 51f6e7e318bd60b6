#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "../support.hpp"
#include "epsrs/errors.hpp"
#include "epsrs/experiments.hpp"

using namespace epsrs;
using doctest::Approx;

TEST_CASE("log spacing") {
    const auto x = log_space(1e-4, 1.0, 25);
    CHECK(x.size() == 101);
    CHECK(x.front() == 1e-4);
    CHECK(x.back() == 1.0);
    CHECK(x[25] == Approx(1e-3).epsilon(1e-12));
    CHECK(log_space_count(1e-3, 1.0, 50).size() == 50);
    CHECK_THROWS_AS(log_space(0.0, 1.0), InputError);
    CHECK_THROWS_AS(log_space(1.0, 0.1), InputError);
}

TEST_CASE("fig2 table") {
    const auto t = fig2_table(Fig2Options{});
    CHECK(t.columns() == std::vector<std::string>{"detuning", "splitting", "bound_ep2", "bound_ep3"});
    CHECK(t.is_ordered());
    CHECK(std::isinf(t.rows()[0][2]));
    for (const auto& row : t.rows()) {
        CHECK(row[3] == Approx(2.154434690031884e-3).epsilon(1e-12));
        CHECK(row[1] <= std::max(row[2], row[3]));
        if (std::abs(row[0] - 0.1) < 1e-12) {
            CHECK(row[1] <= std::max(row[2], 1e-15));  // both at roundoff for large detuning
            CHECK(row[2] < 1e-3);
        }
    }
    Fig2Options bad;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(fig2_table(bad), InputError);
}

TEST_CASE("fig3 table") {
    const auto t = fig3_table(Fig3Options{});
    const auto eps = t.column("epsilon");
    const auto b2 = t.column("bound_ep2");
    const auto b3 = t.column("bound_ep3");
    CHECK(support::loglog_slope(eps, b2) == Approx(0.5).epsilon(1e-12));
    CHECK(support::loglog_slope(eps, b3) == Approx(1.0 / 3.0).epsilon(1e-12));
    // crossover where (eps xi2)^{1/2} = (eps xi3)^{1/3}: eps = xi3^2 / xi2^3
    const double xi2 = support::toy_xi2_ref(2e-3);
    const double cross = 1.0 / (xi2 * xi2 * xi2);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] < cross / 2) CHECK(b2[i] < b3[i]);
        if (eps[i] > cross * 2) CHECK(b2[i] > b3[i]);
    }
    CHECK(cross == Approx(8e-9).epsilon(1e-3));
    Fig3Options bad;
    bad.epsilon_lo = 0.0;
    CHECK_THROWS_AS(fig3_table(bad), InputError);
}

TEST_CASE("fig5 table is deterministic") {
    Fig5Options o;
    o.points = 12;
    const auto a = fig5_table(o).to_csv();
    const auto b = fig5_table(o).to_csv();
    CHECK(a == b);
    const auto t = fig5_table(o);
    for (const auto& row : t.rows()) {
        CHECK(row[1] <= 1e-12);
        CHECK(row[1] <= std::max(row[2], 1e-15));  // both at roundoff for large detuning
    }
    o.eta = 0.0;
    CHECK_THROWS_AS(fig5_table(o), InputError);
}

TEST_CASE("toy surface scan converges to |A||B|") {
    ToyScanOptions o;
    o.detuning_lo = 1e-4;
    o.detuning_hi = 1e-2;
    const auto t = toy_surface_scan(o);
    for (const auto& row : t.rows()) {
        const double d = row[0];
        const double comp = row[t.column_index("compensated")];
        // xi2 d = sqrt(d^2 + 1)
        CHECK(std::abs(comp - 1.0) <= 1e-4 * (d / 1e-2) * (d / 1e-2) * 1.0001);
        CHECK(row[t.column_index("foreign_distance")] == Approx(d));
    }
}

TEST_CASE("chirality surface scan approaches the EP4 strength") {
    ChiralityScanOptions o;
    o.gap_lo = 1e-3;
    o.gap_hi = 1e-1;
    o.per_decade = 4;
    const auto t = chirality_surface_scan(o);
    const auto comp = t.column("compensated");
    CHECK(std::abs(comp.front() / 1.125 - 1.0) < 1e-3);
    for (double f : t.column("flagged")) CHECK(f == 0.0);
    for (std::size_t i = 0; i < t.row_count(); ++i) CHECK(t.column("foreign_distance")[i] == Approx(t.column("parameter")[i]).epsilon(1e-6));
}

TEST_CASE("fig4 default run") {
    Fig4Options o;
    o.resolution = 201;
    const auto r = fig4_run(o);
    CHECK(r.separatrix_c == Approx(-8.9262).epsilon(0.01 / 8.9262));
    CHECK(r.grid.values.size() == 201u * 201u);
}
