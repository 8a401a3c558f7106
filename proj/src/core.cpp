#include "stdperm/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stdperm {

Permutation::Permutation(std::vector<int> one_line) : one_line_(std::move(one_line)) {
    const int n = static_cast<int>(one_line_.size());
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : one_line_) {
        if (v < 1 || v > n || seen[v]) throw std::invalid_argument("one-line vector is not a bijection of 1..n");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(one_line_.size());
    for (int j = 1; j <= size(); ++j) inv[one_line_[j - 1] - 1] = j;
    return Permutation(std::move(inv));
}

namespace {

// Ranks positions by (value, position). Counting sort when the value range is
// small, otherwise a stable index sort.
std::vector<int> standardize_ranks(const Sequence& g) {
    const int n = static_cast<int>(g.size());
    std::vector<int> sigma(n);
    if (n == 0) return sigma;

    auto [lo_it, hi_it] = std::minmax_element(g.begin(), g.end());
    const Symbol lo = *lo_it, hi = *hi_it;
    const std::int64_t range = hi - lo + 1;
    if (range <= 4 * static_cast<std::int64_t>(n) + 1024) {
        std::vector<int> next_rank(static_cast<size_t>(range) + 1, 0);
        for (Symbol v : g) ++next_rank[v - lo + 1];
        for (std::int64_t i = 1; i <= range; ++i) next_rank[i] += next_rank[i - 1];
        for (int j = 0; j < n; ++j) sigma[j] = ++next_rank[g[j] - lo];
    } else {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return g[a] < g[b]; });
        for (int r = 0; r < n; ++r) sigma[idx[r]] = r + 1;
    }
    return sigma;
}

}  // namespace

Permutation standardize(const Sequence& g) {
    return Permutation(standardize_ranks(g));
}

int cycle_count(const Sequence& g) {
    const std::vector<int> sigma = standardize_ranks(g);
    const int n = static_cast<int>(sigma.size());
    std::vector<char> visited(n, 0);
    int count = 0;
    for (int j = 0; j < n; ++j) {
        if (visited[j]) continue;
        ++count;
        for (int x = j; !visited[x]; x = sigma[x] - 1) visited[x] = 1;
    }
    return count;
}

CycleDecomposition cycle_decomposition(const Permutation& sigma) {
    const int n = sigma.size();
    std::vector<char> visited(n + 1, 0);
    CycleDecomposition out;
    for (int start = 1; start <= n; ++start) {
        if (visited[start]) continue;
        Cycle cyc;
        int x = start;
        do {
            visited[x] = 1;
            cyc.push_back(x);
            x = sigma(x);
        } while (x != start);
        out.cycles.push_back(std::move(cyc));
    }
    return out;
}

RunFunction run_function(const Sequence& g, Symbol i) {
    const int n = static_cast<int>(g.size());
    RunFunction rf;
    rf.symbol = i;
    rf.table.resize(n + 1);
    int below = 0;
    for (Symbol v : g)
        if (v < i) ++below;
    rf.table[0] = below;
    for (int k = 1; k <= n; ++k) rf.table[k] = rf.table[k - 1] + (g[k - 1] == i ? 1 : 0);
    return rf;
}

std::vector<int> compose_runs(const Sequence& g, const std::vector<Symbol>& word) {
    if (word.empty()) throw std::invalid_argument("compose_runs: empty word");
    const int n = static_cast<int>(g.size());
    std::vector<int> table(n + 1);
    std::iota(table.begin(), table.end(), 0);
    for (Symbol letter : word) {
        const RunFunction rf = run_function(g, letter);
        for (int x = 0; x <= n; ++x) table[x] = rf(table[x]);
    }
    return table;
}

int major_index(const Permutation& sigma) {
    int maj = 0;
    for (int i = 1; i < sigma.size(); ++i)
        if (sigma(i) > sigma(i + 1)) maj += i;
    return maj;
}

}  // namespace stdperm
