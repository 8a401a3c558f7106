#pragma once

#include <cstdint>
#include <vector>

namespace stdperm {

// Alphabet symbols are integers ordered as integers. The public contract is
// value >= 0; internal callers may use negative values to reverse the order.
using Symbol = std::int64_t;

// g = (g_1, ..., g_n), stored 0-based.
using Sequence = std::vector<Symbol>;

// One-line notation, 1-based values: one_line()[j-1] = sigma(j).
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(one_line_.size()); }
    int operator()(int j) const { return one_line_[j - 1]; }
    const std::vector<int>& one_line() const { return one_line_; }
    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> one_line_;
};

// Each cycle rotated so its smallest element is first; cycles sorted by
// smallest element. Positions are 1-based.
using Cycle = std::vector<int>;

struct CycleDecomposition {
    std::vector<Cycle> cycles;
};

// L_i evaluated at 0..n; table[x] = L_i(x).
struct RunFunction {
    Symbol symbol = 0;
    std::vector<int> table;

    int operator()(int x) const { return table[x]; }
};

// sigma(j) < sigma(k) iff g_j < g_k, or g_j = g_k and j < k.
Permutation standardize(const Sequence& g);

// Total number of cycles of standardize(g), without materializing the
// permutation (O(n) for small alphabets).
int cycle_count(const Sequence& g);

CycleDecomposition cycle_decomposition(const Permutation& sigma);

RunFunction run_function(const Sequence& g, Symbol i);

// Table of L_{i_k} o ... o L_{i_1} at 0..n. Word must be nonempty.
std::vector<int> compose_runs(const Sequence& g, const std::vector<Symbol>& word);

int major_index(const Permutation& sigma);

}  // namespace stdperm
