#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "stdperm/dist.hpp"
#include "stdperm/errors.hpp"
#include "stdperm/rational.hpp"
#include "stdperm/words.hpp"

namespace stdperm {

// P(D_{i_1} >= l_1, ..., D_{i_r} >= l_r) for pairwise distinct necklaces.
struct TypedTailQuery {
    std::vector<std::pair<Necklace, int>> pairs;
    int n = 0;
};

double joint_tail(const DiscreteDist& dist, const TypedTailQuery& query);
Rational joint_tail_exact(const DiscreteDist& dist, const TypedTailQuery& query);

// pmf of min(Geo_0(1 - p_i), floor(n/k)) on {0, ..., floor(n/k)}.
std::vector<double> marginal_pmf_D(const DiscreteDist& dist, const Necklace& nk, int n);
std::vector<Rational> marginal_pmf_D_exact(const DiscreteDist& dist, const Necklace& nk, int n);

// (1/k) sum over primitive words of length k of sum_{l=1}^{floor(n/k)} p^l,
// with the inner word sum collapsed through primitive_mass.
double expected_ck(const DiscreteDist& dist, int k, int n);
Rational expected_ck_exact(const DiscreteDist& dist, int k, int n);
// Direct enumeration of Q_k, as a cross-check (CapExceeded when too large).
double expected_ck_enumerated(const DiscreteDist& dist, int k, int n,
                              std::uint64_t cap = kDefaultEnumerationCap);

// E(prod_j D_{i_j}^{r_j}), exact finite sum over threshold vectors.
double joint_moment_D(const DiscreteDist& dist, const std::vector<std::pair<Necklace, int>>& spec, int n);
Rational joint_moment_D_exact(const DiscreteDist& dist, const std::vector<std::pair<Necklace, int>>& spec, int n);

std::uint64_t stirling2(int r, int m);
BigInt bell_number(int r);

// Partition of {1..r}; blocks sorted by least element, elements ascending.
struct SetPartition {
    std::vector<std::vector<int>> blocks;
    int ground = 0;

    void normalize();
    int size() const { return static_cast<int>(blocks.size()); }
    bool operator==(const SetPartition&) const = default;
};

inline constexpr int kPartitionCap = 12;

void enumerate_partitions(int r, const std::function<void(const SetPartition&)>& yield);
std::vector<SetPartition> list_partitions(int r);

SetPartition partition_join(const SetPartition& a, const SetPartition& b);

// Joint moment oracle: maps a sorted subset of {1..r} to E(prod_{j in S} X_j).
template <class T>
using MomentOracle = std::function<T(const std::vector<int>&)>;

// kappa(X_1,...,X_r) = sum_pi (|pi|-1)! (-1)^{|pi|-1} prod_B E(prod_{j in B} X_j).
template <class T>
T cumulant_from_moments(const MomentOracle<T>& moment, int r);

// Inverse transform: E(X_1...X_r) = sum_pi prod_B kappa(X_j, j in B).
template <class T>
T moment_from_cumulants(const MomentOracle<T>& cumulant, int r);

// Both sides of the product-cumulant identity for partition pi0:
// lhs = kappa(prod_{j in B_0} X_j, B_0 in pi0), rhs = sum over partitions
// joining with pi0 to the one-block partition.
template <class T>
std::pair<T, T> leonov_shiryaev_check(const MomentOracle<T>& moment, const SetPartition& pi0);

// E(C_{k_1}^{r_1} ... C_{k_s}^{r_s}) in the uniform model: Stirling sum with
// the indicator sum k_j m_j <= n. spec holds (cycle length, exponent) pairs
// with distinct lengths.
Rational uniform_joint_moment(const std::vector<std::pair<int, int>>& spec, int n);

inline constexpr int kPdMomentCap = 8;

// E(m_{t_1}(Z) ... m_{t_r}(Z)) for the Poisson-Dirichlet process, each t >= 2.
// Simplex integrals evaluated by the Dirichlet closed form.
Rational pd_joint_moment(const std::vector<int>& t);

// --- template implementations -------------------------------------------

namespace detail {

template <class T>
T block_product(const MomentOracle<T>& moment, const SetPartition& pi) {
    T prod{1};
    for (const auto& block : pi.blocks) prod *= moment(block);
    return prod;
}

}  // namespace detail

template <class T>
T cumulant_from_moments(const MomentOracle<T>& moment, int r) {
    T total{0};
    enumerate_partitions(r, [&](const SetPartition& pi) {
        T term = detail::block_product(moment, pi);
        // Moebius coefficient (|pi|-1)! (-1)^{|pi|-1}.
        std::int64_t coeff = 1;
        for (int j = 2; j < pi.size(); ++j) coeff *= j;
        if (pi.size() % 2 == 0) coeff = -coeff;
        total += term * T(coeff);
    });
    return total;
}

template <class T>
T moment_from_cumulants(const MomentOracle<T>& cumulant, int r) {
    T total{0};
    enumerate_partitions(r, [&](const SetPartition& pi) {
        total += detail::block_product(cumulant, pi);
    });
    return total;
}

template <class T>
std::pair<T, T> leonov_shiryaev_check(const MomentOracle<T>& moment, const SetPartition& pi0) {
    const int r = pi0.ground;
    const int m = pi0.size();

    // lhs: joint cumulant of the block products Y_B = prod_{j in B} X_j. A
    // moment of a subset of the Y's is the moment of the union of blocks.
    MomentOracle<T> block_moment = [&](const std::vector<int>& blocks_idx) {
        std::vector<int> merged;
        for (int bi : blocks_idx)
            merged.insert(merged.end(), pi0.blocks[bi - 1].begin(), pi0.blocks[bi - 1].end());
        std::sort(merged.begin(), merged.end());
        return moment(merged);
    };
    const T lhs = cumulant_from_moments(block_moment, m);

    // rhs: sum over partitions of {1..r} whose join with pi0 is one block.
    T rhs{0};
    enumerate_partitions(r, [&](const SetPartition& pi) {
        if (partition_join(pi, pi0).size() != 1) return;
        T prod{1};
        for (const auto& block : pi.blocks) {
            MomentOracle<T> restricted = [&](const std::vector<int>& idx) {
                std::vector<int> subset;
                subset.reserve(idx.size());
                for (int i : idx) subset.push_back(block[i - 1]);
                std::sort(subset.begin(), subset.end());
                return moment(subset);
            };
            prod *= cumulant_from_moments(restricted, static_cast<int>(block.size()));
        }
        rhs += prod;
    });
    return {lhs, rhs};
}

}  // namespace stdperm
