#include "lrcone/geometry.hpp"

#include "lrcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lrcone::geometry {

SiteSet make_site_set(std::vector<int> sites) {
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    return sites;
}

MetricSpace::MetricSpace(Eigen::MatrixXd dist, std::vector<std::string> labels, bool validate_table)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
    const int n = static_cast<int>(dist_.rows());
    if (n == 0) throw std::invalid_argument("metric space must contain at least one site");
    if (dist_.cols() != n) throw std::invalid_argument("distance table must be square");
    if (labels_.empty()) {
        labels_.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("label count does not match site count");

    if (validate_table) {
        for (int i = 0; i < n; ++i) {
            if (dist_(i, i) != 0.0) throw std::invalid_argument("dist(x,x) must be 0");
            for (int j = 0; j < n; ++j) {
                if (i != j && !(dist_(i, j) > 0.0))
                    throw std::invalid_argument("dist(x,y) must be positive for x != y");
                if (dist_(i, j) != dist_(j, i))
                    throw std::invalid_argument("distance table must be symmetric");
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (dist_(i, k) > dist_(i, j) + dist_(j, k) + 1e-12)
                        throw std::invalid_argument("distance table violates the triangle inequality");
    }

    std::set<double> seen;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) seen.insert(dist_(i, j));
    seen.insert(0.0);
    realized_.assign(seen.begin(), seen.end());
}

MetricSpace MetricSpace::chain(int length) {
    if (length < 1) throw std::invalid_argument("chain length must be >= 1");
    Eigen::MatrixXd d(length, length);
    for (int i = 0; i < length; ++i)
        for (int j = 0; j < length; ++j) d(i, j) = std::abs(i - j);
    return MetricSpace(std::move(d), {}, false);
}

MetricSpace MetricSpace::grid(int dimension, int side) {
    if (dimension < 1) throw std::invalid_argument("grid dimension must be >= 1");
    if (side < 1) throw std::invalid_argument("grid side must be >= 1");
    long n = 1;
    for (int k = 0; k < dimension; ++k) {
        n *= side;
        if (n > 1'000'000) throw std::invalid_argument("grid is too large");
    }
    const int sites = static_cast<int>(n);

    auto coords = [&](int idx) {
        std::vector<int> c(static_cast<size_t>(dimension));
        for (int k = dimension - 1; k >= 0; --k) {
            c[static_cast<size_t>(k)] = idx % side;
            idx /= side;
        }
        return c;
    };

    Eigen::MatrixXd d(sites, sites);
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(sites));
    for (int i = 0; i < sites; ++i) {
        const auto ci = coords(i);
        std::string lab = "(";
        for (int k = 0; k < dimension; ++k)
            lab += std::to_string(ci[static_cast<size_t>(k)]) + (k + 1 < dimension ? "," : ")");
        labels.push_back(std::move(lab));
        for (int j = 0; j < sites; ++j) {
            const auto cj = coords(j);
            int l1 = 0;
            for (int k = 0; k < dimension; ++k)
                l1 += std::abs(ci[static_cast<size_t>(k)] - cj[static_cast<size_t>(k)]);
            d(i, j) = l1;
        }
    }
    return MetricSpace(std::move(d), std::move(labels), false);
}

MetricSpace MetricSpace::custom(Eigen::MatrixXd distances, std::vector<std::string> labels) {
    return MetricSpace(std::move(distances), std::move(labels), true);
}

double MetricSpace::dist(int x, int y) const {
    if (x < 0 || x >= size() || y < 0 || y >= size())
        throw std::invalid_argument("site index out of range");
    return dist_(x, y);
}

int MetricSpace::ball_count(int x, double r) const {
    if (x < 0 || x >= size()) throw std::invalid_argument("site index out of range");
    if (r < 0.0) throw std::invalid_argument("ball radius must be nonnegative");
    int count = 0;
    for (int y = 0; y < size(); ++y)
        if (dist_(x, y) <= r) ++count;
    return count;
}

int MetricSpace::shell_count(int x, double r) const {
    if (x < 0 || x >= size()) throw std::invalid_argument("site index out of range");
    int count = 0;
    for (int y = 0; y < size(); ++y)
        if (dist_(x, y) > r && dist_(x, y) <= r + 1.0) ++count;
    return count;
}

SiteSet MetricSpace::neighborhood(const SiteSet& x, double r) const {
    if (x.empty()) throw std::invalid_argument("neighborhood of the empty set is undefined");
    if (r < 0.0) throw std::invalid_argument("neighborhood radius must be nonnegative");
    SiteSet out;
    for (int y = 0; y < size(); ++y) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int s : x) dmin = std::min(dmin, dist(s, y));
        if (dmin <= r) out.push_back(y);
    }
    return out;
}

double MetricSpace::set_distance(const SiteSet& x, const SiteSet& y) const {
    if (x.empty() || y.empty()) throw std::invalid_argument("set distance requires nonempty sets");
    double dmin = std::numeric_limits<double>::infinity();
    for (int a : x)
        for (int b : y) dmin = std::min(dmin, dist(a, b));
    return dmin;
}

double MetricSpace::set_diameter(const SiteSet& z) const {
    if (z.empty()) throw std::invalid_argument("diameter of the empty set is undefined");
    double dmax = 0.0;
    for (int a : z)
        for (int b : z) dmax = std::max(dmax, dist(a, b));
    return dmax;
}

double GrowthCertificate::g(double r) const {
    return prefactor * std::pow(1.0 + r, exponent);
}

GrowthCertificate fit_growth_constant(const MetricSpace& space, double dimension) {
    if (dimension <= 0.0) throw std::invalid_argument("growth dimension must be positive");
    // count/(1+r)^D is maximal at the left endpoint of each constancy
    // interval of the count, i.e. at realized distances.
    double c = 0.0;
    for (int x = 0; x < space.size(); ++x)
        for (double r : space.realized_distances())
            c = std::max(c, space.ball_count(x, r) / std::pow(1.0 + r, dimension));
    return GrowthCertificate{c, dimension};
}

GrowthCertificate fit_annulus_constant(const MetricSpace& space, int dimension) {
    if (dimension < 1) throw std::invalid_argument("annulus certificate requires integer dimension >= 1");
    // shell_count(x, a) jumps only where a crosses d or d-1 for a realized
    // distance d; between jumps the ratio peaks at the left endpoint.
    std::set<double> anchors{0.0};
    for (double d : space.realized_distances()) {
        anchors.insert(d);
        if (d >= 1.0) anchors.insert(d - 1.0);
    }
    double c = 0.0;
    for (int x = 0; x < space.size(); ++x)
        for (double a : anchors)
            c = std::max(c, space.shell_count(x, a) / std::pow(2.0 + a, dimension - 1));
    return GrowthCertificate{c, static_cast<double>(dimension - 1)};
}

} // namespace lrcone::geometry
