#include "lrcone/bounds.hpp"
#include "lrcone/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

using namespace lrcone;
using namespace lrcone::bounds;

namespace {

std::shared_ptr<const geometry::MetricSpace> chain(int length) {
    return std::make_shared<const geometry::MetricSpace>(geometry::MetricSpace::chain(length));
}

model::Interaction power_law_chain(int length) {
    return model::build_power_law_two_body(chain(length), 1.0, 2.0, 1.0);
}

BoundInputs chain5_inputs() {
    BoundInputs in;
    const auto space = geometry::MetricSpace::chain(5);
    in.growth = geometry::fit_growth_constant(space, 1.0);
    in.annulus_growth = geometry::fit_annulus_constant(space, 1);
    return in;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("velocity") {
    CHECK(velocity(0.0) == 0.0);
    CHECK(velocity(1.0) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-15));
    CHECK(velocity(1.0) == doctest::Approx(5.43656).epsilon(1e-5));
    CHECK(velocity(35.0 / 54.0) == doctest::Approx(3.52372).epsilon(1e-5));
    CHECK_THROWS_AS(velocity(-0.1), std::invalid_argument);
}

TEST_CASE("finite-range bound") {
    CHECK(finite_range_bound(1.0, 1.0, 1, 0.0, 2.0, 3.0, 0.0) == doctest::Approx(2.0));
    CHECK(finite_range_bound(1.0, 1.0, 1, 4.0, 2.0, 3.52372, 0.5) ==
          doctest::Approx(2.0 * std::exp(-0.23814)).epsilon(1e-9));
    CHECK(finite_range_bound(1.0, 1.0, 1, 4.0, 2.0, 3.52372, 0.5) ==
          doctest::Approx(1.5761).epsilon(1e-4));

    // monotone in t, antitone in distance
    double previous = 0.0;
    for (double t = 0.0; t <= 2.0; t += 0.25) {
        const double value = finite_range_bound(1.0, 1.0, 1, 3.0, 1.5, 2.0, t);
        CHECK(value > previous);
        previous = value;
    }
    previous = std::numeric_limits<double>::infinity();
    for (double d = 0.0; d <= 6.0; d += 1.0) {
        const double value = finite_range_bound(1.0, 1.0, 1, d, 1.5, 2.0, 0.7);
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("iterated series on the worked 3-site example") {
    const auto interaction = power_law_chain(3);
    CHECK(series_a_n(interaction, 2.5, {0}, {2}, 1) == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
    CHECK(series_a_n(interaction, 1.5, {0}, {2}, 1) == 0.0);
    CHECK(series_a_n(interaction, 1.5, {0}, {2}, 2) == doctest::Approx(1.0 / 64.0).epsilon(1e-14));

    CHECK_THROWS_AS(series_a_n(interaction, 2.5, {0}, {2}, 0), std::invalid_argument);
    CHECK_THROWS_AS(series_a_n(interaction, 2.5, {}, {2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(series_a_n(interaction, 2.5, {0}, {2}, 3, 2), ResourceLimitError);
}

TEST_CASE("iterated series obeys the C0 and vanishing laws") {
    for (int length : {4, 5}) {
        const auto interaction = power_law_chain(length);
        const double c0 = model::compute_C0(interaction);
        for (const auto& x : std::vector<geometry::SiteSet>{{0}, {0, 1}}) {
            const geometry::SiteSet y{length - 1};
            const double d_xy = interaction.space().set_distance(x, y);
            for (double range : {1.5, 2.5, 3.5}) {
                for (int n = 1; n <= 3; ++n) {
                    const double a_n = series_a_n(interaction, range, x, y, n);
                    CHECK(a_n >= 0.0);
                    CHECK(a_n <= std::pow(c0, n) * static_cast<double>(x.size()) + 1e-12);
                    if (n * range < d_xy) CHECK(a_n == 0.0);
                }
            }
        }
    }
}

TEST_CASE("upper incomplete gamma closed form") {
    CHECK(upper_incomplete_gamma(0, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-15));
    CHECK(upper_incomplete_gamma(1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(upper_incomplete_gamma(1, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));

    // quadrature oracle for the defining integral
    for (int d : {0, 1, 2, 3}) {
        for (double a : {0.0, 0.5, 2.0}) {
            const double horizon = a + 60.0;
            const double numeric = adaptive_simpson(
                [d](double y) { return std::pow(y, d) * std::exp(-y); }, a, horizon, 1e-12);
            CHECK(upper_incomplete_gamma(d, a) == doctest::Approx(numeric).epsilon(1e-8));
        }
    }

    // the inequality behind the closed-form constants
    for (int d : {0, 1, 2, 4, 6}) {
        double factorial = 1.0;
        for (int k = 2; k <= d; ++k) factorial *= k;
        for (double a : {0.0, 0.3, 1.0, 4.0, 9.0})
            CHECK(upper_incomplete_gamma(d, a) <=
                  factorial * std::pow(1.0 + a, d) * std::exp(-a) * (1 + 1e-12));
    }

    CHECK_THROWS_AS(upper_incomplete_gamma(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(upper_incomplete_gamma(1, -1.0), std::invalid_argument);
}

TEST_CASE("shell sums") {
    const auto space = geometry::MetricSpace::chain(5);
    // balls saturate immediately at the center: 5 e^{-1} / (1 - e^{-1})
    const double expected = 5.0 / (std::exp(1.0) - 1.0);
    CHECK(shell_sum_numeric(space, std::vector<int>{2}, 1.0, 1.0) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(shell_sum_numeric(space, std::vector<int>{2}, 1.0, 1.0) ==
          doctest::Approx(2.9098).epsilon(1e-4));

    // the sup over all sites is attained at the center here
    CHECK(shell_sum_numeric(space, {}, 1.0, 1.0) == doctest::Approx(expected).epsilon(1e-13));

    // decreasing in r, and the closed form dominates in both variants
    const auto growth = geometry::fit_growth_constant(space, 1.0);
    const auto annulus = geometry::fit_annulus_constant(space, 1);
    double previous = std::numeric_limits<double>::infinity();
    for (double r = 0.0; r <= 12.0; r += 1.0) {
        const double numeric = shell_sum_numeric(space, {}, r, 1.5);
        CHECK(numeric < previous);
        previous = numeric;
        CHECK(numeric <= shell_sum_closed_form(growth, r, 1.5));
        CHECK(shell_sum_numeric(space, {}, r, 1.5, true) <=
              shell_sum_closed_form(annulus, r, 1.5));
    }
    CHECK_THROWS_AS(shell_sum_numeric(space, {}, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("closed form dominates on a 2D grid in both variants") {
    const auto grid = geometry::MetricSpace::grid(2, 4);
    const auto growth = geometry::fit_growth_constant(grid, 2.0);
    const auto annulus = geometry::fit_annulus_constant(grid, 2);
    for (double r : {0.0, 1.0, 2.5, 5.0})
        for (double range : {1.0, 2.0, 3.5}) {
            CHECK(shell_sum_numeric(grid, {}, r, range) <=
                  shell_sum_closed_form(growth, r, range));
            CHECK(shell_sum_numeric(grid, {}, r, range, true) <=
                  shell_sum_closed_form(annulus, r, range));
            // the refined numeric sum is never larger than the ball version
            CHECK(shell_sum_numeric(grid, {}, r, range, true) <=
                  shell_sum_numeric(grid, {}, r, range, false) + 1e-12);
        }
}

TEST_CASE("closed-form constant") {
    const double e3 = std::exp(3.0);
    CHECK(c3_constant(1.0, 0) == doctest::Approx(e3).epsilon(1e-15));
    CHECK(c3_constant(1.0, 1) == doctest::Approx(2.0 * e3).epsilon(1e-15));
    CHECK(c3_constant(1.0, 2) == doctest::Approx(8.0 * e3).epsilon(1e-15));
    CHECK(c3_constant(1.75, 1) == doctest::Approx(3.5 * e3).epsilon(1e-15));
    CHECK_THROWS_AS(c3_constant(0.0, 1), std::invalid_argument);
}

TEST_CASE("far-sum bound composition") {
    const auto interaction = power_law_chain(5);
    BoundInputs in = chain5_inputs();
    in.norm_a = 1.0;
    in.size_x = 1;
    in.t = 0.5;
    in.r = 1.0;
    in.range = 1.0;
    in.v = 3.52372;
    in.f_of_range = model::empirical_f(interaction, 1.0);
    in.shell_sum = shell_sum_numeric(interaction.space(), std::vector<int>{2}, 1.0, 1.0);

    const double expected =
        2.0 * in.f_of_range * std::exp(in.v * in.t) * (5.0 / (std::exp(1.0) - 1.0));
    CHECK(far_sum_bound(in, ConstantMode::numeric_tight) ==
          doctest::Approx(expected).epsilon(1e-12));

    // f = 0 kills the bound; numeric never exceeds paper form
    BoundInputs zero = in;
    zero.f_of_range = 0.0;
    CHECK(far_sum_bound(zero, ConstantMode::numeric_tight) == 0.0);
    CHECK(far_sum_bound(zero, ConstantMode::paper_form) == 0.0);

    for (double r : {0.0, 1.0, 3.0})
        for (double range : {1.0, 2.0}) {
            BoundInputs grid = in;
            grid.r = r;
            grid.range = range;
            grid.shell_sum = shell_sum_numeric(interaction.space(), {}, r, range);
            CHECK(far_sum_bound(grid, ConstantMode::numeric_tight) <=
                  far_sum_bound(grid, ConstantMode::paper_form));
        }
}

TEST_CASE("three-term bound") {
    BoundInputs in = chain5_inputs();
    in.t = 0.0;
    in.r = 3.0;
    in.range = 1.5;
    in.v = 3.0;
    in.f_of_range = 0.1;
    in.shell_sum = 1.0;

    // t = 0: only the finite-range term survives
    const auto at_zero = theorem_bound(in, ConstantMode::numeric_tight);
    CHECK(at_zero.term2 == 0.0);
    CHECK(at_zero.term3 == 0.0);
    CHECK(at_zero.total == doctest::Approx(2.0 * std::exp(-3.0 / 1.5)).epsilon(1e-13));

    // worked second term: 4 * 0.5 * 8.75 * (2/27)
    BoundInputs worked = chain5_inputs();
    worked.growth = geometry::GrowthCertificate{1.75, 1.0};
    worked.t = 0.5;
    worked.r = 4.0;
    worked.range = 2.0;
    worked.v = 3.52372;
    worked.f_of_range = 2.0 / 27.0;
    worked.shell_sum = 1.0;
    const auto breakdown = theorem_bound(worked, ConstantMode::numeric_tight);
    CHECK(breakdown.term2 == doctest::Approx(35.0 / 27.0).epsilon(1e-12));
    CHECK(breakdown.term2 == doctest::Approx(1.2963).epsilon(1e-4));
    CHECK(breakdown.total ==
          doctest::Approx(breakdown.term1 + breakdown.term2 + breakdown.term3).epsilon(1e-15));

    // hypothesis R >= 1
    BoundInputs bad = in;
    bad.range = 0.5;
    CHECK_THROWS_AS(theorem_bound(bad, ConstantMode::numeric_tight), std::invalid_argument);

    // r = 0 is evaluated as written
    BoundInputs origin = in;
    origin.r = 0.0;
    origin.shell_sum = 5.0;
    CHECK(theorem_bound(origin, ConstantMode::numeric_tight).term1 == doctest::Approx(2.0));

    // paper form records its constant, numeric stays below it
    BoundInputs live = chain5_inputs();
    live.t = 0.7;
    live.r = 2.0;
    live.range = 1.5;
    live.v = 3.52372;
    live.f_of_range = 0.05;
    live.shell_sum = shell_sum_numeric(geometry::MetricSpace::chain(5), {}, 2.0, 1.5);
    const auto paper = theorem_bound(live, ConstantMode::paper_form);
    const auto numeric = theorem_bound(live, ConstantMode::numeric_tight);
    CHECK(paper.constant_mode == ConstantMode::paper_form);
    CHECK(paper.c2_used == doctest::Approx(2.0 * c3_constant(live.growth.prefactor, 1)));
    CHECK(numeric.total <= paper.total);
    CHECK(numeric.term1 == paper.term1);
    CHECK(numeric.term2 == paper.term2);

    // refined exponent uses the annulus certificate (D-1 power)
    BoundInputs refined = live;
    refined.refined_exponent = true;
    refined.shell_sum = shell_sum_numeric(geometry::MetricSpace::chain(5), {}, 2.0, 1.5, true);
    const auto refined_paper = theorem_bound(refined, ConstantMode::paper_form);
    CHECK(refined_paper.c2_used ==
          doctest::Approx(2.0 * c3_constant(refined.annulus_growth.prefactor, 0)));
    CHECK(refined_paper.term3 < paper.term3);

    // a non-integer growth exponent falls back to the numeric form
    BoundInputs fractional = live;
    fractional.growth.exponent = 1.5;
    const auto fallback = theorem_bound(fractional, ConstantMode::paper_form);
    CHECK(fallback.constant_mode == ConstantMode::numeric_tight);

    // c2 override replaces the derived constant
    BoundInputs overridden = live;
    overridden.c2_override = 0.0;
    CHECK(theorem_bound(overridden, ConstantMode::paper_form).term3 == 0.0);

    // integrated time factor is tighter than t e^{vt}
    BoundInputs integrated = live;
    integrated.integrated_time_factor = true;
    CHECK(theorem_bound(integrated, ConstantMode::numeric_tight).term3 <= numeric.term3);
}

TEST_CASE("adaptive Simpson") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-10) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0, 1e-10) == 0.0);
    CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 0.0, 1.0, -1.0),
                    std::invalid_argument);
}

TEST_CASE("Duhamel right-hand side") {
    const auto interaction = power_law_chain(5);
    const quantum::HilbertSpace space(interaction.local_dims());
    const auto h_full = quantum::assemble_hamiltonian(interaction, space);
    const auto parts = model::decompose(interaction, 1.5);
    const auto h_short = quantum::assemble_hamiltonian(parts.first, space);
    const Eigen::MatrixXcd a = quantum::embed(quantum::Observable::pauli('x', 0), space);
    const Eigen::MatrixXcd b = quantum::embed(quantum::Observable::pauli('z', 4), space);

    // t = 0 collapses to |[A, B]| (here 0: disjoint supports)
    const auto at_zero = duhamel_rhs(h_short, parts.second, space, a, b, {0}, 1.0, 0.0);
    CHECK(at_zero.total == 0.0);

    // empty long part collapses to the truncated commutator norm
    const model::Interaction no_long(interaction.space_ptr(), interaction.local_dims(), {});
    const auto only_comm = duhamel_rhs(h_full, no_long, space, a, b, {0}, 1.0, 1.0);
    CHECK(only_comm.total ==
          doctest::Approx(quantum::commutator_norm(h_full.evolve(a, 1.0), b)).epsilon(1e-12));

    // full-dynamics norm is dominated at a sample of points
    const quantum::HeisenbergEvolution evolution(h_full, a);
    for (double t : {0.5, 1.0}) {
        const double measured = quantum::commutator_norm(evolution.at(t), b);
        const auto rhs = duhamel_rhs(h_short, parts.second, space, a, b, {0}, 2.0, t);
        CHECK(measured <= rhs.total + 1e-5);
        CHECK(rhs.near_integral >= 0.0);
        CHECK(rhs.far_integral >= 0.0);
    }

    CHECK_THROWS_AS(duhamel_rhs(h_short, parts.second, space, a, b, {0}, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("adaptive quadrature agrees with a dense fixed-step oracle") {
    const auto interaction = power_law_chain(5);
    const quantum::HilbertSpace space(interaction.local_dims());
    const auto parts = model::decompose(interaction, 1.5);
    const auto h_short = quantum::assemble_hamiltonian(parts.first, space);
    const Eigen::MatrixXcd a = quantum::embed(quantum::Observable::pauli('x', 0), space);
    const quantum::HeisenbergEvolution evolution(h_short, a);

    const double t = 1.2;
    std::vector<Eigen::MatrixXcd> far_terms;
    const auto x_r = interaction.space().neighborhood({0}, 1.0);
    for (const auto& term : parts.second.terms()) {
        const bool meets = std::any_of(term.support.begin(), term.support.end(), [&](int s) {
            return std::binary_search(x_r.begin(), x_r.end(), s);
        });
        if (!meets) far_terms.push_back(quantum::embed_term(term, space));
    }
    REQUIRE(!far_terms.empty());

    auto integrand = [&](double s) {
        const Eigen::MatrixXcd a_ts = evolution.at(t - s);
        double sum = 0.0;
        for (const auto& m : far_terms) sum += quantum::commutator_norm(a_ts, m);
        return sum;
    };

    // composite Simpson on a fixed fine grid, no shared code path
    const int intervals = 512;
    const double h = t / intervals;
    double fixed = integrand(0.0) + integrand(t);
    for (int k = 1; k < intervals; ++k)
        fixed += integrand(k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    fixed *= h / 3.0;

    const double adaptive = adaptive_simpson(integrand, 0.0, t, 1e-8);
    CHECK(adaptive == doctest::Approx(fixed).epsilon(1e-6));

    const Eigen::MatrixXcd b = quantum::embed(quantum::Observable::pauli('z', 4), space);
    const auto rhs = duhamel_rhs(h_short, parts.second, space, a, b, {0}, 1.0, t, 1e-8);
    CHECK(rhs.far_integral == doctest::Approx(fixed).epsilon(1e-6));
}

} // TEST_SUITE
