#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "stdperm/core.hpp"
#include "stdperm/sampling.hpp"
#include "stdperm/surgery.hpp"

using namespace stdperm;

namespace {

// Independent rank oracle: sort (value, position) pairs.
std::vector<int> rank_oracle(const Sequence& g) {
    const int n = static_cast<int>(g.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return g[a] != g[b] ? g[a] < g[b] : a < b;
    });
    std::vector<int> sigma(n);
    for (int r = 0; r < n; ++r) sigma[idx[r]] = r + 1;
    return sigma;
}

Sequence random_sequence(RngStream& rng, int n, int q) {
    Sequence g(n);
    for (auto& v : g) v = static_cast<Symbol>(rng.uniform_below(q));
    return g;
}

}  // namespace

TEST_CASE("standardize reference fixture") {
    CHECK(standardize({6, 1, 5, 3, 3, 1, 2}).one_line() == std::vector<int>{7, 1, 6, 4, 5, 2, 3});
    CHECK(standardize({7, 5, 2, 4, 4, 2}).one_line() == std::vector<int>{6, 5, 1, 3, 4, 2});
}

TEST_CASE("standardize basics") {
    CHECK(standardize({}).size() == 0);
    CHECK(standardize({1, 2, 5, 9}) == Permutation::identity(4));
    // Large value range exercises the comparison-sort path.
    CHECK(standardize({1000000000, 5, 999999999}).one_line() == std::vector<int>{3, 1, 2});
}

TEST_CASE("standardize matches the rank oracle on random inputs") {
    RngStream rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng.uniform_below(40));
        const int q = 1 + static_cast<int>(rng.uniform_below(8));
        const Sequence g = random_sequence(rng, n, q);
        CHECK(standardize(g).one_line() == rank_oracle(g));
    }
}

TEST_CASE("standardize is idempotent on its own output") {
    RngStream rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Sequence g = random_sequence(rng, 20, 4);
        const Permutation sigma = standardize(g);
        Sequence as_seq(sigma.one_line().begin(), sigma.one_line().end());
        CHECK(standardize(as_seq) == sigma);
    }
}

TEST_CASE("cycle decomposition") {
    const auto dec = cycle_decomposition(standardize({6, 1, 5, 3, 3, 1, 2}));
    REQUIRE(dec.cycles.size() == 3);
    CHECK(dec.cycles[0] == Cycle{1, 7, 3, 6, 2});
    CHECK(dec.cycles[1] == Cycle{4});
    CHECK(dec.cycles[2] == Cycle{5});

    const auto id = cycle_decomposition(Permutation::identity(3));
    CHECK(id.cycles == std::vector<Cycle>{{1}, {2}, {3}});

    const auto six = cycle_decomposition(standardize({7, 5, 2, 4, 4, 2}));
    REQUIRE(six.cycles.size() == 1);
    CHECK(six.cycles[0].size() == 6);
    CHECK(six.cycles[0][0] == 1);
}

TEST_CASE("cycle_count agrees with the decomposition") {
    RngStream rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Sequence g = random_sequence(rng, 30, 3);
        CHECK(cycle_count(g) == static_cast<int>(cycle_decomposition(standardize(g)).cycles.size()));
    }
}

TEST_CASE("run function fixture") {
    const Sequence g{6, 1, 5, 3, 3, 1, 2};
    CHECK(run_function(g, 1).table == std::vector<int>{0, 0, 1, 1, 1, 1, 2, 2});
    // Symbol above everything: constant n.
    CHECK(run_function(g, 9).table == std::vector<int>(8, 7));
}

TEST_CASE("run function fixed-point pairs count typed fixed points") {
    // D_3 = 2 for this sequence: fixed-point pairs at x = 4, 5.
    const Sequence g{1, 6, 5, 3, 3, 1, 2};
    const RunFunction rf = run_function(g, 3);
    int pairs = 0;
    for (int x = 1; x <= 7; ++x)
        if (rf(x) == x && rf(x - 1) == x - 1) ++pairs;
    CHECK(pairs == 2);
    CHECK(census_by_type(g).d(Necklace({3})) == 2);
    CHECK(census_by_type(g).d(Necklace({1})) == 1);
}

TEST_CASE("run function invariants on random inputs") {
    RngStream rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Sequence g = random_sequence(rng, 25, 4);
        const Permutation sigma = standardize(g);
        for (Symbol i = 0; i < 4; ++i) {
            const RunFunction rf = run_function(g, i);
            for (int k = 1; k <= 25; ++k) {
                const int step = rf(k) - rf(k - 1);
                CHECK((step == 0 || step == 1));
                CHECK(step == (g[k - 1] == i ? 1 : 0));
                if (g[k - 1] == i) CHECK(rf(k) == sigma(k));
            }
        }
    }
}

TEST_CASE("compose_runs") {
    const Sequence g{6, 1, 5, 3, 3, 1, 2};
    SUBCASE("length-1 word equals run_function") {
        CHECK(compose_runs(g, {3}) == run_function(g, 3).table);
    }
    SUBCASE("fixture word is constant 5") {
        const auto table = compose_runs(g, {4, 2, 7, 2, 5, 4});
        CHECK(table == std::vector<int>(8, 5));
    }
    SUBCASE("steps in {0,1} and at least one fixed point") {
        RngStream rng(3);
        for (int trial = 0; trial < 60; ++trial) {
            const Sequence h = random_sequence(rng, 20, 3);
            Word w;
            const int k = 1 + static_cast<int>(rng.uniform_below(4));
            for (int j = 0; j < k; ++j) w.push_back(static_cast<Symbol>(rng.uniform_below(3)));
            const auto table = compose_runs(h, w);
            bool fixed = false;
            for (int x = 0; x <= 20; ++x) {
                if (x > 0) {
                    const int step = table[x] - table[x - 1];
                    CHECK((step == 0 || step == 1));
                }
                if (table[x] == x) fixed = true;
            }
            CHECK(fixed);
        }
    }
}

TEST_CASE("compose_runs fixed-point pairs equal the typed census count") {
    RngStream rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_below(12));
        const Sequence g = random_sequence(rng, n, 3);
        const CycleCensus census = census_by_type(g);
        for (const auto& [nk, d] : census.by_type) {
            const auto table = compose_runs(g, nk.canonical());
            int pairs = 0;
            for (int x = 1; x <= n; ++x)
                if (table[x] == x && table[x - 1] == x - 1) ++pairs;
            CHECK(pairs == d);
        }
    }
}

TEST_CASE("major index") {
    CHECK(major_index(Permutation::identity(5)) == 0);
    CHECK(major_index(Permutation({5, 4, 3, 2, 1})) == 10);
    CHECK(major_index(standardize({6, 1, 5, 3, 3, 1, 2})) == 9);
}

TEST_CASE("permutation validation and inverse") {
    CHECK_THROWS(Permutation({1, 1, 3}));
    CHECK_THROWS(Permutation({0, 1}));
    const Permutation p({3, 1, 2});
    CHECK(p.inverse().one_line() == std::vector<int>{2, 3, 1});
}
