#include "lrcone/lightcone.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace lrcone::lightcone;

TEST_SUITE("lightcone") {

TEST_CASE("closed-form exponents") {
    const auto p = exponents(1.0, 2.0);
    CHECK(p.kappa == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p.eta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p.gamma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.kappa_lt_one);

    const auto q = exponents(1.0, 3.0);
    CHECK(q.kappa == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.eta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.gamma == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(exponents(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(exponents(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(exponents(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("exponent identity across the admissible grid") {
    for (double d : {1.0, 2.0, 3.0})
        for (double delta = 0.5; delta <= 10.0; delta += 0.5) {
            const auto p = exponents(d, d + delta);
            CHECK(std::abs(1.0 / p.eta - (1.0 + p.gamma)) <= 1e-12);
            CHECK(p.kappa < 1.0);
        }
}

TEST_CASE("front radius and group velocity") {
    const double v = 3.52372;
    CHECK(r_max(1.0, 2.0, v, 1.0 / 3.0) == doctest::Approx(std::pow(2.0 * v, 3.0)).epsilon(1e-13));
    CHECK(r_max(1.0, 2.0, v, 1.0 / 3.0) == doctest::Approx(350.03).epsilon(1e-4));

    // log-log slope of the front equals 1/eta = 1 + gamma
    const auto p = exponents(1.0, 2.0);
    const double slope = (std::log(r_max(100.0, 4.0, v, p.eta)) -
                          std::log(r_max(1.0, 4.0, v, p.eta))) /
                         (std::log(100.0) - std::log(1.0));
    CHECK(std::abs(slope - (1.0 + p.gamma)) <= 1e-9);

    // v_g / r_max = (1 + gamma) / t for the exact derivative
    for (double t : {0.5, 2.0, 7.0}) {
        const double ratio = v_g(t, 4.0, v, p.eta, p.gamma) / r_max(t, 4.0, v, p.eta);
        CHECK(ratio == doctest::Approx((1.0 + p.gamma) / t).epsilon(1e-12));
        CHECK(v_g(t, 4.0, v, p.eta, p.gamma, VelocityForm::display) ==
              doctest::Approx(v_g(t, 4.0, v, p.eta, p.gamma) / (1.0 + p.gamma)).epsilon(1e-12));
    }

    // strictly increasing and convex for gamma > 0
    double prev = 0.0, prev_step = 0.0;
    for (double t = 1.0; t <= 10.0; t += 1.0) {
        const double cur = r_max(t, 4.0, v, p.eta);
        CHECK(cur > prev);
        if (prev_step > 0.0) CHECK(cur - prev > prev_step);
        prev_step = cur - prev;
        prev = cur;
    }

    CHECK_THROWS_AS(r_max(0.0, 4.0, v, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(r_max(1.0, 1.0, v, 0.5), std::invalid_argument);
}

TEST_CASE("substituted bound terms decay at rate (lambda-1) v") {
    const auto p = exponents(1.0, 2.0);
    const double lambda = 4.0;
    const double v = 3.52372;
    std::vector<double> grid;
    for (double t = 1.0; t <= 100.0; t += 1.0) grid.push_back(t);
    const auto table = asymptotic_check(p, lambda, v, 1.0, 1.0, 1, grid);

    CHECK(table.expected_decay_rate == doctest::Approx((lambda - 1.0) * v).epsilon(1e-15));
    CHECK(table.term2_constant == doctest::Approx(1.0 / (lambda * v)).epsilon(1e-15));

    for (size_t i = 1; i < table.rows.size(); ++i) {
        const double rate1 = table.rows[i - 1].log_term1 - table.rows[i].log_term1;
        CHECK(rate1 == doctest::Approx(table.expected_decay_rate).epsilon(1e-12));
        CHECK(table.rows[i].term2 == table.term2_constant);
        if (table.rows[i].t >= 10.0) {
            const double rate3 = table.rows[i - 1].log_term3 - table.rows[i].log_term3;
            CHECK(std::abs(rate3 - table.expected_decay_rate) <=
                  0.01 * table.expected_decay_rate);
        }
    }

    // larger lambda pushes the limiting constant down like 1/lambda
    const auto doubled = asymptotic_check(p, 2.0 * lambda, v, 1.0, 1.0, 1, grid);
    CHECK(doubled.term2_constant == doctest::Approx(0.5 * table.term2_constant).epsilon(1e-15));
}

TEST_CASE("empirical front extraction") {
    // all norms below threshold: the front sits at the smallest radius
    std::vector<NormRecord> quiet;
    for (double t = 1.0; t <= 3.0; t += 1.0)
        for (double r = 2.0; r <= 5.0; r += 1.0) quiet.push_back({t, r, 1e-6});
    const auto flat = empirical_front(quiet, 1e-3);
    CHECK(flat.size() == 3);
    for (const auto& rec : flat) CHECK(rec.r_star == 2.0);

    // a spreading signal: r_star grows with t and shrinks with epsilon
    std::vector<NormRecord> spreading;
    for (double t = 1.0; t <= 5.0; t += 1.0)
        for (double r = 1.0; r <= 10.0; r += 1.0)
            spreading.push_back({t, r, 2.0 * std::exp(t - r)});
    const auto front = empirical_front(spreading, 1e-2);
    for (size_t i = 1; i < front.size(); ++i) CHECK(front[i].r_star >= front[i - 1].r_star);
    const auto loose = empirical_front(spreading, 1e-1);
    for (size_t i = 0; i < front.size(); ++i) CHECK(loose[i].r_star <= front[i].r_star);

    // sentinel when even the largest radius stays loud
    std::vector<NormRecord> loud;
    for (double t = 1.0; t <= 2.0; t += 1.0)
        for (double r = 1.0; r <= 3.0; r += 1.0) loud.push_back({t, r, 1.0});
    const auto sentinel = empirical_front(loud, 1e-3);
    for (const auto& rec : sentinel) CHECK(std::isinf(rec.r_star));

    CHECK_THROWS_AS(empirical_front({}, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(empirical_front(quiet, 0.0), std::invalid_argument);
    std::vector<NormRecord> ragged = quiet;
    ragged.pop_back();
    CHECK_THROWS_AS(empirical_front(ragged, 1e-3), std::invalid_argument);
}

TEST_CASE("power-law fit") {
    // two-point slope is exact
    std::vector<FrontRecord> two{{1.0, 1.0, 1e-3, false}, {2.0, 4.0, 1e-3, false}};
    const auto fit = fit_power_law(two);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.points_used == 2);
    CHECK(fit.residual <= 1e-12);

    // saturated and sentinel rows are excluded
    std::vector<FrontRecord> mixed = two;
    mixed.push_back({3.0, 9.0, 1e-3, true});
    mixed.push_back({4.0, std::numeric_limits<double>::infinity(), 1e-3, false});
    const auto pruned = fit_power_law(mixed);
    CHECK(pruned.points_used == 2);
    CHECK(pruned.exponent == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_power_law(std::vector<FrontRecord>{two[0]}), std::invalid_argument);
}

} // TEST_SUITE
