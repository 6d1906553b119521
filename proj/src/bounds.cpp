#include "lrcone/bounds.hpp"

#include "lrcone/errors.hpp"
#include "lrcone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace lrcone::bounds {

const char* to_string(ConstantMode mode) {
    return mode == ConstantMode::paper_form ? "paper_form" : "numeric_tight";
}

double velocity(double c0) {
    if (c0 < 0.0) throw std::invalid_argument("C0 must be nonnegative");
    return 2.0 * std::exp(1.0) * c0;
}

double finite_range_bound(double norm_a, double norm_b, int size_x, double d_xy, double range,
                          double v, double t) {
    if (range <= 0.0) throw std::invalid_argument("interaction range must be positive");
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    return 2.0 * norm_a * norm_b * static_cast<double>(size_x) * std::exp(v * t - d_xy / range);
}

double upper_incomplete_gamma(int d, double a) {
    if (d < 0) throw std::invalid_argument("incomplete gamma order must be >= 0");
    if (a < 0.0) throw std::invalid_argument("incomplete gamma argument must be >= 0");
    double factorial = 1.0;
    for (int k = 2; k <= d; ++k) factorial *= k;
    double partial = 1.0; // sum_{k<=d} a^k / k!
    double term = 1.0;
    for (int k = 1; k <= d; ++k) {
        term *= a / k;
        partial += term;
    }
    return factorial * std::exp(-a) * partial;
}

double c3_constant(double prefactor, int exponent) {
    if (prefactor <= 0.0) throw std::invalid_argument("certificate prefactor must be positive");
    if (exponent < 0) throw std::invalid_argument("certificate exponent must be >= 0");
    double factorial = 1.0;
    for (int k = 2; k <= exponent; ++k) factorial *= k;
    return prefactor * factorial * std::pow(2.0, exponent) * std::exp(3.0);
}

namespace {

double shell_sum_numeric_site(const geometry::MetricSpace& space, int site, double r, double range,
                              bool refined) {
    const double q = std::exp(-1.0 / range);
    const int n = space.size();
    double sum = 0.0;
    for (long k = 0;; ++k) {
        const double rk = r + static_cast<double>(k);
        const double weight = std::exp(-rk / range);
        if (refined) {
            // Unit shells empty out once rk passes the largest distance.
            if (rk >= space.max_distance()) break;
            sum += space.shell_count(site, rk) * weight;
        } else {
            const int count = space.ball_count(site, rk + 1.0);
            if (count == n) {
                // Saturated: the remaining tail is geometric.
                sum += static_cast<double>(n) * weight / (1.0 - q);
                break;
            }
            sum += count * weight;
        }
    }
    return sum;
}

} // namespace

double shell_sum_numeric(const geometry::MetricSpace& space, std::span<const int> sites, double r,
                         double range, bool refined) {
    if (range < 1.0) throw std::invalid_argument("shell sum requires range >= 1");
    if (r < 0.0) throw std::invalid_argument("shell sum requires r >= 0");
    double sup = 0.0;
    if (sites.empty()) {
        for (int x = 0; x < space.size(); ++x)
            sup = std::max(sup, shell_sum_numeric_site(space, x, r, range, refined));
    } else {
        for (int x : sites) sup = std::max(sup, shell_sum_numeric_site(space, x, r, range, refined));
    }
    return sup;
}

double shell_sum_closed_form(const geometry::GrowthCertificate& cert, double r, double range) {
    if (range < 1.0) throw std::invalid_argument("closed-form shell sum requires range >= 1");
    const double rounded = std::round(cert.exponent);
    if (std::abs(cert.exponent - rounded) > 1e-9)
        throw std::invalid_argument("closed-form shell sum requires an integer exponent");
    const int d = static_cast<int>(rounded);
    return c3_constant(cert.prefactor, d) * std::pow(std::max(r, range), d) * range *
           std::exp(-r / range);
}

double series_a_n(const model::Interaction& interaction, double range, const geometry::SiteSet& x,
                  const geometry::SiteSet& y, int n, long long max_chains) {
    if (n < 1) throw std::invalid_argument("series order must be >= 1");
    if (x.empty() || y.empty()) throw std::invalid_argument("series endpoints must be nonempty");
    const int sites = interaction.space().size();
    if (sites > 62) throw ResourceLimitError("series enumeration supports at most 62 sites");

    auto mask_of = [](const geometry::SiteSet& set) {
        std::uint64_t m = 0;
        for (int s : set) m |= std::uint64_t{1} << s;
        return m;
    };

    struct MaskedTerm {
        std::uint64_t mask;
        double norm;
    };
    std::vector<MaskedTerm> terms;
    for (const auto& term : interaction.terms())
        if (interaction.term_diameter(term) < range)
            terms.push_back({mask_of(term.support), term.norm});

    const std::uint64_t x_mask = mask_of(x);
    const std::uint64_t y_mask = mask_of(y);
    long long visited = 0;
    double total = 0.0;

    auto extend = [&](auto&& self, int depth, std::uint64_t prev, double product) -> void {
        for (const auto& term : terms) {
            if (!(term.mask & prev)) continue;
            if (++visited > max_chains)
                throw ResourceLimitError("series chain enumeration exceeded " +
                                         std::to_string(max_chains) + " extensions");
            const double p = product * term.norm;
            if (depth == n) {
                if (term.mask & y_mask) total += p;
            } else {
                self(self, depth + 1, term.mask, p);
            }
        }
    };
    extend(extend, 1, x_mask, 1.0);
    return total;
}

namespace {

double time_factor(const BoundInputs& in) {
    if (!in.integrated_time_factor) return in.t * std::exp(in.v * in.t);
    if (in.v == 0.0) return in.t;
    return std::expm1(in.v * in.t) / in.v;
}

const geometry::GrowthCertificate& far_certificate(const BoundInputs& in) {
    if (!in.refined_exponent) return in.growth;
    if (in.annulus_growth.prefactor <= 0.0)
        throw std::invalid_argument("refined exponent mode needs an annulus certificate");
    return in.annulus_growth;
}

bool integer_exponent(const geometry::GrowthCertificate& cert, int& out) {
    const double rounded = std::round(cert.exponent);
    if (std::abs(cert.exponent - rounded) > 1e-9) return false;
    out = static_cast<int>(rounded);
    return true;
}

double paper_c2(const BoundInputs& in) {
    if (in.c2_override) return *in.c2_override;
    const auto& cert = far_certificate(in);
    int d = 0;
    if (!integer_exponent(cert, d))
        throw std::invalid_argument("paper-form constants need an integer growth exponent");
    return 2.0 * c3_constant(cert.prefactor, d);
}

} // namespace

double far_sum_bound(const BoundInputs& in, ConstantMode mode) {
    if (in.range < 1.0) throw std::invalid_argument("far-sum bound requires range >= 1");
    const double x2 = static_cast<double>(in.size_x) * static_cast<double>(in.size_x);
    if (mode == ConstantMode::numeric_tight) {
        if (!std::isfinite(in.shell_sum) || in.shell_sum < 0.0)
            throw std::invalid_argument("numeric-tight mode needs a shell sum value");
        return 2.0 * in.norm_a * x2 * in.f_of_range * std::exp(in.v * in.t) * in.shell_sum;
    }
    const auto& cert = far_certificate(in);
    return paper_c2(in) * in.norm_a * x2 * std::pow(std::max(in.r, in.range), cert.exponent) *
           in.range * in.f_of_range * std::exp(in.v * in.t - in.r / in.range);
}

BoundBreakdown theorem_bound(const BoundInputs& in, ConstantMode mode) {
    if (in.range < 1.0) throw std::invalid_argument("the three-term bound requires range >= 1");
    if (in.t < 0.0) throw std::invalid_argument("time must be nonnegative");

    BoundBreakdown out;
    const double x1 = static_cast<double>(in.size_x);
    const double x2 = x1 * x1;
    out.term1 = 2.0 * in.norm_a * in.norm_b * x1 * std::exp(in.v * in.t - in.r / in.range);
    out.term2 = 4.0 * in.norm_a * in.norm_b * x1 * in.t * in.growth.g(in.r) * in.f_of_range;

    // Paper-form constants need an integer exponent for the incomplete-gamma
    // closed form; otherwise we fall back to the numeric-tight shell sum.
    ConstantMode effective = mode;
    if (mode == ConstantMode::paper_form && !in.c2_override) {
        int ignored = 0;
        if (!integer_exponent(far_certificate(in), ignored)) effective = ConstantMode::numeric_tight;
    }

    const double tf = time_factor(in);
    if (effective == ConstantMode::paper_form) {
        const auto& cert = far_certificate(in);
        out.c2_used = paper_c2(in);
        out.term3 = 2.0 * out.c2_used * in.norm_a * in.norm_b * x2 * in.range *
                    std::pow(std::max(in.r, in.range), cert.exponent) * in.f_of_range *
                    std::exp(-in.r / in.range) * tf;
    } else {
        if (!std::isfinite(in.shell_sum) || in.shell_sum < 0.0)
            throw std::invalid_argument("numeric-tight mode needs a shell sum value");
        out.term3 = 4.0 * in.norm_a * in.norm_b * x2 * in.f_of_range * in.shell_sum * tf;
    }
    out.constant_mode = effective;
    out.total = out.term1 + out.term2 + out.term3;
    return out;
}

namespace {

double simpson_slice(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double lo, double hi, double flo,
                       double fmid, double fhi, double whole, double eps, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(flo, flm, fmid, mid - lo);
    const double right = simpson_slice(fmid, frm, fhi, hi - mid);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth <= 0) throw NumericFailure("adaptive Simpson quadrature did not converge");
    return simpson_recurse(f, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1) +
           simpson_recurse(f, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (tol <= 0.0) throw std::invalid_argument("quadrature tolerance must be positive");
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_slice(fa, fm, fb, b - a);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

DuhamelTerms duhamel_rhs(const quantum::SpectralHamiltonian& h_short,
                         const model::Interaction& long_part, const quantum::HilbertSpace& space,
                         const Eigen::MatrixXcd& a_full, const Eigen::MatrixXcd& b_full,
                         const geometry::SiteSet& x, double r, double t, double quadrature_tol) {
    if (r <= 0.0) throw std::invalid_argument("neighborhood radius must be positive");
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");

    const geometry::SiteSet x_r = long_part.space().neighborhood(x, r);
    std::vector<Eigen::MatrixXcd> near_terms;
    std::vector<Eigen::MatrixXcd> far_terms;
    for (const auto& term : long_part.terms()) {
        const bool meets = std::any_of(term.support.begin(), term.support.end(), [&](int s) {
            return std::binary_search(x_r.begin(), x_r.end(), s);
        });
        (meets ? near_terms : far_terms).push_back(quantum::embed_term(term, space));
    }

    const quantum::HeisenbergEvolution evolution(h_short, a_full);
    auto integral_of = [&](const std::vector<Eigen::MatrixXcd>& terms) {
        if (terms.empty() || t == 0.0) return 0.0;
        auto integrand = [&](double s) {
            const Eigen::MatrixXcd a_ts = evolution.at(t - s);
            double sum = 0.0;
            for (const auto& m : terms) sum += quantum::commutator_norm(a_ts, m);
            return sum;
        };
        return adaptive_simpson(integrand, 0.0, t, quadrature_tol);
    };

    DuhamelTerms out;
    out.commutator_term = quantum::commutator_norm(evolution.at(t), b_full);
    out.near_integral = integral_of(near_terms);
    out.far_integral = integral_of(far_terms);
    out.total = out.commutator_term +
                2.0 * linalg::spectral_norm(b_full) * (out.near_integral + out.far_integral);
    return out;
}

} // namespace lrcone::bounds
