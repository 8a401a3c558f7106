#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stdperm/dist.hpp"
#include "stdperm/sampling.hpp"

namespace stdperm {

struct EmpiricalDist {
    std::map<int, std::int64_t> counts;
    std::int64_t total = 0;

    void add(int outcome) {
        ++counts[outcome];
        ++total;
    }
};

struct TestReport {
    std::string name;
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool pass = false;
    std::map<std::string, double> details;
    std::string config;
    std::uint64_t config_hash = 0;

    void finish_config(const std::string& cfg);
};

inline constexpr double kDefaultAlpha = 1e-3;

// Pearson chi-square of emp against the pmf on {0,1,...}; expected_pmf[v] is
// the probability of outcome v and the leftover mass is a tail cell. Cells
// with expected count below min_cell are merged upward.
TestReport chi_square(const EmpiricalDist& emp, const std::vector<double>& expected_pmf,
                      int min_cell = 5, double alpha = kDefaultAlpha);

std::vector<double> poisson_pmf(double lambda, double tail_eps = 1e-12);

// Limit pmf of c_k for a fixed distribution: the convolution over necklaces
// of length k of Geo_0(1 - p_necklace), necklaces taken in decreasing
// probability order until the residual is negligible.
std::vector<double> limit_ck_pmf(const DiscreteDist& dist, int k, double residual = 1e-9);

// c_1..c_n of standardize(g).
std::vector<int> cycle_length_counts(const Sequence& g);

struct McConfig {
    std::uint64_t seed = 1;
    int reps = 10000;
    int threads = 1;
    double alpha = kDefaultAlpha;
};

std::vector<TestReport> verify_small_cycles_fixed(const DiscreteDist& dist, int n, int k_max,
                                                  const McConfig& cfg);

// Spreading regime: uniform alphabet of size q; c_k tested against
// Poisson(1/k), plus a 2-d independence check on (c_1, c_2).
std::vector<TestReport> verify_small_cycles_spreading(int q, int n, int k_max, const McConfig& cfg);

// One report per joint spec t: empirical mean of prod_j m_{t_j}(lambda/n)
// against the Poisson-Dirichlet moment, 4-standard-error bands. When
// fisher_yates_control is set the samples come from uniform permutations.
std::vector<TestReport> verify_pd(const DiscreteDist& dist, int n,
                                  const std::vector<std::vector<int>>& t_specs, const McConfig& cfg,
                                  bool fisher_yates_control = false, double max_prob_cap = 0.999);

// Mean/variance of K_n against log n, skewness trend, and KS distance of the
// studentized sample to N(0,1) at the largest n.
std::vector<TestReport> verify_clt(const DiscreteDist& dist, const std::vector<int>& n_grid,
                                   const McConfig& cfg);

// Plug-in joint cumulants kappa_1..kappa_r from raw empirical moments.
std::vector<double> empirical_cumulants(const std::vector<double>& samples, int r_max);

double ks_distance_to_std_normal(std::vector<double> z);

std::uint64_t fnv1a_hash(const std::string& s);

}  // namespace stdperm
