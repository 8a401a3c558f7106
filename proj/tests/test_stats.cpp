#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stdperm/errors.hpp"
#include "stdperm/stats.hpp"

using namespace stdperm;

namespace {

int sample_from_pmf(const std::vector<double>& pmf, RngStream& rng) {
    double u = rng.uniform01();
    for (size_t v = 0; v < pmf.size(); ++v) {
        u -= pmf[v];
        if (u < 0) return static_cast<int>(v);
    }
    return static_cast<int>(pmf.size());
}

double sample_normal(RngStream& rng) {
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

TEST_CASE("chi-square statistic fixture") {
    EmpiricalDist emp;
    for (int i = 0; i < 60; ++i) emp.add(0);
    for (int i = 0; i < 40; ++i) emp.add(1);
    const TestReport r = chi_square(emp, {0.5, 0.5});
    CHECK(r.statistic == doctest::Approx(4.0));
    CHECK(r.dof == 1);
    CHECK(r.p_value == doctest::Approx(0.0455).epsilon(0.01));
    CHECK(r.pass);  // alpha = 1e-3
    CHECK_FALSE(chi_square(emp, {0.5, 0.5}, 5, 0.05).pass);
}

TEST_CASE("chi-square merges sparse cells") {
    EmpiricalDist emp;
    RngStream rng(1);
    const std::vector<double> pmf{0.98, 0.01, 0.01};
    for (int i = 0; i < 300; ++i) emp.add(sample_from_pmf(pmf, rng));
    const TestReport r = chi_square(emp, pmf);
    CHECK(r.dof == 1);
}

TEST_CASE("chi-square is calibrated under the null") {
    const std::vector<double> pmf = poisson_pmf(1.0);
    int passes = 0;
    for (int trial = 0; trial < 200; ++trial) {
        EmpiricalDist emp;
        RngStream rng(500, static_cast<std::uint64_t>(trial));
        for (int i = 0; i < 2000; ++i) emp.add(sample_from_pmf(pmf, rng));
        passes += chi_square(emp, pmf).pass;
    }
    // alpha = 1e-3: false rejections should be very rare.
    CHECK(passes >= 198);
}

TEST_CASE("chi-square rejects a wrong model") {
    EmpiricalDist emp;
    RngStream rng(7);
    const std::vector<double> truth = poisson_pmf(2.0);
    for (int i = 0; i < 5000; ++i) emp.add(sample_from_pmf(truth, rng));
    const TestReport r = chi_square(emp, poisson_pmf(1.0));
    CHECK_FALSE(r.pass);
    CHECK(r.p_value < 1e-6);
}

TEST_CASE("chi-square needs at least two cells") {
    EmpiricalDist emp;
    for (int i = 0; i < 100; ++i) emp.add(0);
    CHECK_THROWS_AS(chi_square(emp, {1.0}), DegenerateTestError);
}

TEST_CASE("poisson pmf") {
    const auto pmf = poisson_pmf(1.5);
    double total = 0, factorial = 1;
    for (size_t k = 0; k < pmf.size(); ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        CHECK(pmf[k] == doctest::Approx(std::exp(-1.5) * std::pow(1.5, k) / factorial));
        total += pmf[k];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("limit pmf of c_k") {
    const auto uniform2 = DiscreteDist::uniform(2);
    SUBCASE("k=1 is a sum of two geometrics") {
        // Both length-1 necklaces have probability 1/2; the convolution is
        // negative binomial: P(m) = (m+1) (1/4) (1/2)^m.
        const auto pmf = limit_ck_pmf(uniform2, 1);
        for (int m = 0; m < 10; ++m)
            CHECK(pmf[m] == doctest::Approx((m + 1) * 0.25 * std::pow(0.5, m)).epsilon(1e-9));
    }
    SUBCASE("k=2 has a single necklace") {
        const auto pmf = limit_ck_pmf(uniform2, 2);
        for (int m = 0; m < 10; ++m)
            CHECK(pmf[m] == doctest::Approx(0.75 * std::pow(0.25, m)).epsilon(1e-9));
    }
    SUBCASE("mass is close to one") {
        for (int k = 1; k <= 5; ++k) {
            const auto pmf = limit_ck_pmf(uniform2, k);
            double total = 0;
            for (double p : pmf) total += p;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("cycle length counts") {
    CHECK(cycle_length_counts({6, 1, 5, 3, 3, 1, 2}) == std::vector<int>{2, 0, 0, 0, 1, 0, 0});
    CHECK(cycle_length_counts({1, 2, 3}) == std::vector<int>{3, 0, 0});
}

TEST_CASE("empirical cumulants") {
    SUBCASE("constant sample") {
        const std::vector<double> samples(100, 3.5);
        const auto kappa = empirical_cumulants(samples, 4);
        CHECK(kappa[0] == doctest::Approx(3.5));
        for (int r = 2; r <= 4; ++r) CHECK(kappa[r - 1] == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("normal sample") {
        RngStream rng(64);
        std::vector<double> samples(200000);
        for (auto& x : samples) x = sample_normal(rng);
        const auto kappa = empirical_cumulants(samples, 4);
        CHECK(std::abs(kappa[0]) < 0.02);
        CHECK(kappa[1] == doctest::Approx(1.0).epsilon(0.03));
        CHECK(std::abs(kappa[2]) < 0.05);
        CHECK(std::abs(kappa[3]) < 0.1);
    }
    SUBCASE("poisson sample has all cumulants equal to lambda") {
        RngStream rng(65);
        const auto pmf = poisson_pmf(1.5);
        std::vector<double> samples(200000);
        for (auto& x : samples) x = sample_from_pmf(pmf, rng);
        const auto kappa = empirical_cumulants(samples, 3);
        CHECK(kappa[0] == doctest::Approx(1.5).epsilon(0.02));
        CHECK(kappa[1] == doctest::Approx(1.5).epsilon(0.03));
        CHECK(kappa[2] == doctest::Approx(1.5).epsilon(0.1));
    }
    SUBCASE("order cap") {
        CHECK_THROWS(empirical_cumulants(std::vector<double>(10, 1.0), 7));
    }
}

TEST_CASE("ks distance") {
    RngStream rng(12);
    std::vector<double> normal(10000), uniform(10000);
    for (auto& x : normal) x = sample_normal(rng);
    for (auto& x : uniform) x = rng.uniform01();
    CHECK(ks_distance_to_std_normal(normal) < 0.02);
    CHECK(ks_distance_to_std_normal(uniform) > 0.2);
}

TEST_CASE("fixed-alphabet small cycle verification passes") {
    McConfig cfg;
    cfg.seed = 2;
    cfg.reps = 4000;
    const auto reports = verify_small_cycles_fixed(DiscreteDist::uniform(2), 400, 3, cfg);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        INFO(r.name, " p=", r.p_value);
        CHECK(r.pass);
        CHECK(r.config_hash == fnv1a_hash(r.config));
    }
}

TEST_CASE("spreading-alphabet small cycle verification passes") {
    McConfig cfg;
    cfg.seed = 3;
    cfg.reps = 4000;
    const auto reports = verify_small_cycles_spreading(100000, 500, 2, cfg);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        INFO(r.name, " p=", r.p_value);
        CHECK(r.pass);
    }
}

TEST_CASE("poisson-dirichlet verification") {
    McConfig cfg;
    cfg.seed = 4;
    cfg.reps = 2000;
    const std::vector<std::vector<int>> specs{{2}, {3}, {2, 2}};
    SUBCASE("uniform alphabet") {
        const auto reports = verify_pd(DiscreteDist::uniform(2), 2000, specs, cfg);
        REQUIRE(reports.size() == 3);
        for (const auto& r : reports) {
            INFO(r.name, " mean=", r.details.at("mean"), " target=", r.details.at("target"));
            CHECK(r.pass);
        }
    }
    SUBCASE("fisher-yates control") {
        const auto reports = verify_pd(DiscreteDist::uniform(2), 1000, specs, cfg, true);
        for (const auto& r : reports) CHECK(r.pass);
    }
    SUBCASE("near-degenerate distribution is rejected") {
        CHECK_THROWS(verify_pd(DiscreteDist::finite({0.9999, 0.0001}), 500, specs, cfg));
    }
}

TEST_CASE("clt verification") {
    McConfig cfg;
    cfg.seed = 5;
    cfg.reps = 3000;
    const std::vector<int> grid{500, 5000};
    const auto reports = verify_clt(DiscreteDist::uniform(2), grid, cfg);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        INFO(r.name, " ks=", r.statistic);
        CHECK(r.pass);
    }
    CHECK(reports[1].details.at("mean_over_logn") > 0.8);
    CHECK(reports[1].details.at("mean_over_logn") < 1.2);
    CHECK(reports[2].name == "clt |skewness| non-increasing");
}
