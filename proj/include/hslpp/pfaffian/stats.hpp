#pragma once

#include <functional>
#include <vector>

namespace hslpp::pfaffian {

class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples);
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }
    // Fraction of samples <= s.
    double cdf(double s) const;
    double mean() const;
    double variance() const;  // unbiased; 0 for a single sample

private:
    std::vector<double> sorted_;
};

// sup_s |F_n(s) - F(s)|, evaluated on both sides of every jump; exact for continuous F.
double ks_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf);

// 1.63 / sqrt(n): asymptotic 99% Kolmogorov band.
double ks_band_99(std::size_t n);

struct BinomialComparison {
    double s;
    double reference;  // exact probability
    double empirical;
    double std_error;  // sqrt(p (1 - p) / n) at the reference p
    double z;          // (empirical - reference) / std_error, 0 when both are degenerate
};

BinomialComparison binomial_compare(double s, double reference, double empirical, std::size_t n);

}  // namespace hslpp::pfaffian
