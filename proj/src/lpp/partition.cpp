#include "hslpp/lpp/partition.hpp"

#include <algorithm>
#include <numeric>

#include "hslpp/core/errors.hpp"

namespace hslpp {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw ParameterError("partition parts must be nonnegative");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw ParameterError("partition parts must be weakly decreasing");
    }
}

long Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

bool interlaces(const Partition& lambda, const Partition& mu) {
    const std::size_t n = std::max(lambda.length(), mu.length()) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (lambda[i] < mu[i]) return false;
        if (mu[i] < lambda[i + 1]) return false;
    }
    return true;
}

}  // namespace hslpp
