#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace lrcone::geometry {

/// Sites are dense integer indices; a SiteSet is sorted and duplicate-free.
using SiteSet = std::vector<int>;

SiteSet make_site_set(std::vector<int> sites);

/**
 * A finite set of sites with a metric. Distances are stored as a dense
 * symmetric table; chains and hypercubic grids use the graph distance
 * (l1 on the grid), custom spaces accept any validated distance table.
 *
 * Immutable after construction. The site index order fixes the tensor
 * ordering used by the quantum module (site 0 = leftmost factor).
 */
class MetricSpace {
public:
    /// Open-boundary path graph on `length` sites.
    static MetricSpace chain(int length);

    /// Hypercubic grid of `side`^`dimension` sites with l1 graph distance.
    static MetricSpace grid(int dimension, int side);

    /// Arbitrary distance table. Validates symmetry, zero diagonal,
    /// positivity off the diagonal and the triangle inequality (O(n^3)).
    static MetricSpace custom(Eigen::MatrixXd distances, std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(dist_.rows()); }
    double dist(int x, int y) const;
    const std::string& label(int x) const { return labels_[static_cast<size_t>(x)]; }

    /// Exact cardinality of the closed ball {y | d(x,y) <= r}.
    int ball_count(int x, double r) const;

    /// Sites within the unit shell r < d(x, y) <= r + 1.
    int shell_count(int x, double r) const;

    /// {y | d(y, X) <= r}.
    SiteSet neighborhood(const SiteSet& x, double r) const;

    /// min over pairs; rejects empty sets.
    double set_distance(const SiteSet& x, const SiteSet& y) const;

    /// max over pairs; 0 for singletons; rejects empty sets.
    double set_diameter(const SiteSet& z) const;

    /// Sorted unique distances occurring in the table (always contains 0).
    const std::vector<double>& realized_distances() const { return realized_; }

    double max_distance() const { return realized_.back(); }

private:
    MetricSpace(Eigen::MatrixXd dist, std::vector<std::string> labels, bool validate_table);

    Eigen::MatrixXd dist_;
    std::vector<std::string> labels_;
    std::vector<double> realized_;
};

/// Polynomial ball-growth certificate g(r) = C (1+r)^D.
struct GrowthCertificate {
    double prefactor = 1.0; // C
    double exponent = 1.0;  // D

    double g(double r) const;
};

/**
 * Minimal C with ball_count(x, r) <= C (1+r)^D for every site and every
 * r >= 0. Ball counts are piecewise constant and the ratio is maximal at
 * realized distances, so scanning those attains the supremum.
 */
GrowthCertificate fit_growth_constant(const MetricSpace& space, double dimension);

/**
 * Unit-shell analogue with exponent D-1: minimal C with
 * shell_count(x, a) <= C (2+a)^(D-1) for every site and every real a >= 0.
 * Used by the refined closed-form shell bounds on integer lattices.
 */
GrowthCertificate fit_annulus_constant(const MetricSpace& space, int dimension);

} // namespace lrcone::geometry
