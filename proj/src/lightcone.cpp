#include "lrcone/lightcone.hpp"

#include "lrcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace lrcone::lightcone {

ConeParameters exponents(double dimension, double alpha) {
    if (dimension <= 0.0) throw std::invalid_argument("dimension must be positive");
    if (alpha <= dimension)
        throw std::invalid_argument("power-law light cone requires alpha > dimension");
    ConeParameters p;
    p.dimension = dimension;
    p.alpha = alpha;
    p.kappa = (dimension + 1.0) / (alpha + 1.0);
    p.eta = (alpha - dimension) / (alpha + 1.0);
    p.gamma = (dimension + 1.0) / (alpha - dimension);
    p.kappa_lt_one = p.kappa < 1.0;
    return p;
}

double r_max(double t, double lambda, double v, double eta) {
    if (t <= 0.0) throw std::invalid_argument("front time must be positive");
    if (lambda <= 1.0) throw std::invalid_argument("scale parameter must exceed 1");
    if (v <= 0.0) throw std::invalid_argument("velocity must be positive");
    if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
    return std::pow(lambda * v * t, 1.0 / eta);
}

double v_g(double t, double lambda, double v, double eta, double gamma, VelocityForm form) {
    if (t <= 0.0) throw std::invalid_argument("front time must be positive");
    if (lambda <= 1.0) throw std::invalid_argument("scale parameter must exceed 1");
    const double base = std::pow(lambda * v, 1.0 / eta) * std::pow(t, gamma);
    return form == VelocityForm::exact_derivative ? (1.0 + gamma) * base : base;
}

AsymptoticTable asymptotic_check(const ConeParameters& params, double lambda, double v,
                                 double norm_a, double norm_b, int size_x,
                                 std::span<const double> t_grid) {
    if (lambda <= 1.0) throw std::invalid_argument("scale parameter must exceed 1");
    if (v <= 0.0) throw std::invalid_argument("velocity must be positive");
    (void)params; // exponents fix r_max; after substitution only (lambda-1)v survives

    AsymptoticTable table;
    table.expected_decay_rate = (lambda - 1.0) * v;
    const double x1 = static_cast<double>(size_x);
    table.term2_constant = norm_a * norm_b * x1 / (lambda * v);

    for (double t : t_grid) {
        if (t <= 0.0) throw std::invalid_argument("asymptotic grid times must be positive");
        AsymptoticRow row;
        row.t = t;
        row.log_term1 = std::log(2.0 * norm_a * norm_b * x1) - (lambda - 1.0) * v * t;
        row.term2 = table.term2_constant;
        row.log_term3 = std::log(norm_a * norm_b * x1 * x1) - 2.0 * std::log(lambda * v) -
                        std::log(t) - (lambda - 1.0) * v * t;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<FrontRecord> empirical_front(std::span<const NormRecord> records, double epsilon) {
    if (records.empty()) throw std::invalid_argument("empirical front needs a nonempty grid");
    if (epsilon <= 0.0) throw std::invalid_argument("front threshold must be positive");

    std::map<double, std::map<double, double>> by_time; // t -> r -> norm
    for (const auto& rec : records) {
        auto [it, inserted] = by_time[rec.t].emplace(rec.r, rec.norm);
        if (!inserted) throw std::invalid_argument("duplicate (t, r) grid point");
    }
    const std::set<double> r_grid = [&] {
        std::set<double> rs;
        for (const auto& [r, norm] : by_time.begin()->second) rs.insert(r);
        return rs;
    }();
    for (const auto& [t, row] : by_time)
        for (const auto& [r, norm] : row)
            if (!r_grid.count(r)) throw std::invalid_argument("records do not form a rectangular grid");
    for (const auto& [t, row] : by_time)
        if (row.size() != r_grid.size())
            throw std::invalid_argument("records do not form a rectangular grid");

    std::vector<FrontRecord> front;
    double running = -std::numeric_limits<double>::infinity();
    for (const auto& [t, row] : by_time) {
        // Smallest r with all norms below threshold from r on.
        double r_star = std::numeric_limits<double>::infinity();
        for (auto it = row.rbegin(); it != row.rend(); ++it) {
            if (it->second < epsilon)
                r_star = it->first;
            else
                break;
        }
        running = std::max(running, r_star);
        FrontRecord rec;
        rec.t = t;
        rec.r_star = running;
        rec.epsilon = epsilon;
        rec.saturated = std::isfinite(running) && running == *r_grid.rbegin();
        front.push_back(rec);
    }
    return front;
}

PowerLawFit fit_power_law(std::span<const FrontRecord> front) {
    std::vector<std::pair<double, double>> points; // (log t, log r_star)
    for (const auto& rec : front) {
        if (!std::isfinite(rec.r_star) || rec.saturated) continue;
        if (rec.t <= 0.0 || rec.r_star <= 0.0) continue;
        points.emplace_back(std::log(rec.t), std::log(rec.r_star));
    }
    if (points.size() < 2)
        throw std::invalid_argument("power-law fit needs at least two usable front points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [lx, ly] : points) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("power-law fit needs at least two distinct times");

    PowerLawFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [lx, ly] : points) {
        const double resid = ly - (intercept + fit.exponent * lx);
        ss += resid * resid;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points_used = static_cast<int>(points.size());
    return fit;
}

} // namespace lrcone::lightcone
