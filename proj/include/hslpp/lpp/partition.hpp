#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace hslpp {

// Weakly decreasing list of positive parts, implicitly padded with zeros.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    // Part i (0-based), zero beyond the stored length.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    long weight() const;
    const std::vector<int>& parts() const { return parts_; }
    std::string str() const;

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...
bool interlaces(const Partition& lambda, const Partition& mu);

}  // namespace hslpp
