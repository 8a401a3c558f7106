#pragma once

#include <cstdint>
#include <vector>

#include "stdperm/core.hpp"
#include "stdperm/dist.hpp"

namespace stdperm {

// Deterministic 64-bit generator (xoshiro256** seeded through splitmix64 from
// (seed, stream_id)). Identical (seed, stream_id) reproduce identical output;
// distinct stream ids give statistically independent streams. The algorithm
// is part of the artifact contract: changing it invalidates seeded results.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();
    // Uniform in [0, 1) with 53 random bits.
    double uniform01();
    // Unbiased uniform in {0, ..., bound-1}.
    std::uint64_t uniform_below(std::uint64_t bound);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t state_[4];
    std::uint64_t seed_ = 0, stream_id_ = 0;
};

// Precomputed alias table for O(1) draws from a finite distribution.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& probs);
    int sample(RngStream& rng) const;

private:
    std::vector<double> accept_;
    std::vector<int> alias_;
};

Sequence sample_sequence(const DiscreteDist& dist, int n, RngStream& rng);

struct StdPermSample {
    Sequence sequence;
    Permutation permutation;
};

StdPermSample sample_std_perm(const DiscreteDist& dist, int n, RngStream& rng);

// Independent construction of the q-riffle-shuffle: each card gets an i.i.d.
// uniform subdeck label and cards are regrouped stably by label. Built
// without calling standardize, as a cross-check oracle.
Permutation sample_riffle_oracle(int q, int n, RngStream& rng);

// std(-G)^{-1} with G i.i.d. geometric(1-q); the pmf over S_n is
// proportional to q^maj.
Permutation sample_major_biased(double q, int n, RngStream& rng);

// Atomless surrogate: distinct random 64-bit keys (collisions resampled).
Permutation sample_uniform_surrogate(int n, RngStream& rng);

// Fisher-Yates control.
Permutation sample_uniform_fisher_yates(int n, RngStream& rng);

// Decreasing stick-breaking lengths with residual mass.
struct SimplexVector {
    std::vector<double> entries;  // non-increasing
    double remainder = 0.0;
};

SimplexVector sample_pd(RngStream& rng, double tol = 1e-12);

struct TruncatedValue {
    double value = 0.0;
    double truncation_bound = 0.0;
};

// sum entries^t; the dropped sticks contribute at most remainder^t.
TruncatedValue m_t(const SimplexVector& v, int t);

// m_t of the normalized cycle-length partition: sum_k c_k (k/n)^t.
double m_t_of_census(const std::vector<int>& cycle_counts_by_length, int n, int t);

}  // namespace stdperm
