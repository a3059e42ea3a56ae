#pragma once

#include <vector>

#include "hslpp/lpp/model.hpp"
#include "hslpp/lpp/partition.hpp"

namespace hslpp::lpp {

// Largest weight of an up-right path (1,1) -> (m,n); m indexes the first coordinate.
long g1(const WeightMatrix& w, int m, int n);

// G_1(m, n) for m = 1..m_max in one sweep, weights drawn on the fly.
std::vector<long> g1_column(const WeightSampler& w, int m_max, int n);

// Exhaustive maximum over k pairwise vertex-disjoint paths (1,i) -> (m, n-k+i).
// Oracle only: refuses m*n > 25.
long gk_bruteforce(const WeightMatrix& w, int m, int n, int k);

class RowInsertionTableau {
public:
    void insert(int value);
    void insert(int value, int multiplicity);
    Partition shape() const;
    const std::vector<std::vector<int>>& rows() const { return rows_; }

private:
    std::vector<std::vector<int>> rows_;
};

// RSK shape of the m x n subarray: lambda_1 + ... + lambda_k = G_k(m, n).
Partition greene_shape(const WeightMatrix& w, int m, int n);

struct LambdaProfile {
    int N = 0;
    std::vector<Partition> lambdas;  // lambdas[m] = lambda(m, N), lambdas[0] empty
};

LambdaProfile lambda_profile(const WeightMatrix& w, int N);

// True when every consecutive pair of the profile interlaces.
bool profile_interlaces(const LambdaProfile& profile);

}  // namespace hslpp::lpp
