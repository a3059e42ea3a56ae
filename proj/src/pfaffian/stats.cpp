#include "hslpp/pfaffian/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hslpp/core/errors.hpp"

namespace hslpp::pfaffian {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw ParameterError("empirical distribution needs at least one sample");
    for (double v : sorted_)
        if (std::isnan(v)) throw ParameterError("empirical distribution: NaN sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::cdf(double s) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), s);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::mean() const {
    double m = 0.0;
    for (double v : sorted_) m += v;
    return m / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::variance() const {
    if (sorted_.size() < 2) return 0.0;
    const double m = mean();
    double s = 0.0;
    for (double v : sorted_) s += (v - m) * (v - m);
    return s / static_cast<double>(sorted_.size() - 1);
}

double ks_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf) {
    const auto& x = emp.sorted();
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < x.size()) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;  // ties form one jump
        const double F = cdf(x[i]);
        d = std::max({d, std::abs(static_cast<double>(j) / n - F), std::abs(static_cast<double>(i) / n - F)});
        i = j;
    }
    return d;
}

double ks_band_99(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

BinomialComparison binomial_compare(double s, double reference, double empirical, std::size_t n) {
    if (n == 0) throw ParameterError("binomial comparison needs n >= 1");
    const double p = std::clamp(reference, 0.0, 1.0);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    double z = 0.0;
    if (se > 0.0)
        z = (empirical - reference) / se;
    else if (std::abs(empirical - reference) > 0.0)
        z = std::numeric_limits<double>::infinity();
    return {s, reference, empirical, se, z};
}

}  // namespace hslpp::pfaffian
