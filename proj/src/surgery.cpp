#include "stdperm/surgery.hpp"

#include <algorithm>
#include <numeric>

#include "stdperm/errors.hpp"

namespace stdperm {

CycleTypeWitness unique_cycle_generator(const Word& word) {
    if (!is_primitive(word)) throw NonPrimitiveError("cycle type must be a primitive word");
    const int k = static_cast<int>(word.size());

    // Conjugates of the reverse word ending with i_j:
    // i_{j-1} ... i_1 i_k ... i_j, for j = 1..k.
    std::vector<Word> conj(k);
    for (int j = 1; j <= k; ++j) {
        Word& c = conj[j - 1];
        c.reserve(k);
        for (int m = j - 1; m >= 1; --m) c.push_back(word[m - 1]);
        for (int m = k; m >= j; --m) c.push_back(word[m - 1]);
    }

    // x_j = lexicographic rank of the j-th conjugate.
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return conj[a] < conj[b]; });
    std::vector<int> rank(k);
    for (int r = 0; r < k; ++r) rank[order[r]] = r + 1;

    CycleTypeWitness w;
    w.word = word;
    w.generator.resize(k);
    w.support_order = rank;
    for (int j = 0; j < k; ++j) w.generator[rank[j] - 1] = word[j];
    return w;
}

CycleCensus census_by_type(const Sequence& g) {
    const Permutation sigma = standardize(g);
    const CycleDecomposition cycles = cycle_decomposition(sigma);

    CycleCensus census;
    census.by_length.assign(g.size(), 0);
    for (const Cycle& cyc : cycles.cycles) {
        Word value_word;
        value_word.reserve(cyc.size());
        for (int pos : cyc) value_word.push_back(g[pos - 1]);
        if (!is_primitive(value_word))
            throw InternalInvariantError("cycle value-word is not primitive");
        ++census.by_type[Necklace(value_word)];
        ++census.by_length[cyc.size() - 1];
        ++census.total;
    }
    return census;
}

namespace {

// Insertion slots a_1..a_k (0-based counts of g-elements preceding each
// inserted letter), from the smallest fixed point of the composed run.
std::vector<int> insertion_slots(const Sequence& g, const Word& word) {
    const std::vector<int> composed = compose_runs(g, std::vector<Symbol>(word.begin(), word.end()));
    int a = -1;
    for (int x = 0; x < static_cast<int>(composed.size()); ++x) {
        if (composed[x] == x) {
            a = x;
            break;
        }
    }
    if (a < 0) throw InternalInvariantError("composed run has no fixed point");

    const int k = static_cast<int>(word.size());
    std::vector<int> slots(k);
    slots[0] = a;
    for (int j = 1; j < k; ++j) {
        const RunFunction rf = run_function(g, word[j - 1]);
        slots[j] = rf(slots[j - 1]);
    }
    return slots;
}

}  // namespace

Sequence insert_cycle(const Sequence& g, const Word& word) {
    const CycleTypeWitness witness = unique_cycle_generator(word);
    const int n = static_cast<int>(g.size());
    const int k = static_cast<int>(word.size());

    std::vector<int> slots = insertion_slots(g, word);
    std::vector<int> count_at(n + 1, 0);
    for (int s : slots) ++count_at[s];

    // Collided slots take their letters in generator order; since the slots
    // sorted ascending pair up with the generator read left to right, the
    // inserted letters spell the generator in the output.
    Sequence out;
    out.reserve(n + k);
    int next_letter = 0;
    for (int pos = 0; pos <= n; ++pos) {
        if (pos > 0) out.push_back(g[pos - 1]);
        for (int c = 0; c < count_at[pos]; ++c) out.push_back(witness.generator[next_letter++]);
    }
    return out;
}

Sequence remove_cycle(const Sequence& g_prime, const Word& word) {
    if (!is_primitive(word)) throw NonPrimitiveError("cycle type must be a primitive word");
    const int n = static_cast<int>(g_prime.size());
    const int k = static_cast<int>(word.size());
    if (n < k) throw NoSuchCycleError("sequence shorter than the cycle type");

    const std::vector<int> composed = compose_runs(g_prime, std::vector<Symbol>(word.begin(), word.end()));
    // The target cycle starts at x_1 where both x_1 - 1 and x_1 are fixed
    // points; the fixed points of a composed run are consecutive, so the two
    // smallest ones identify it.
    int x1 = -1;
    for (int x = 1; x <= n; ++x) {
        if (composed[x] == x && composed[x - 1] == x - 1) {
            x1 = x;
            break;
        }
    }
    if (x1 < 0) throw NoSuchCycleError("no cycle of the requested type");

    std::vector<char> drop(n + 1, 0);
    int x = x1;
    drop[x] = 1;
    for (int j = 1; j < k; ++j) {
        const RunFunction rf = run_function(g_prime, word[j - 1]);
        x = rf(x);
        drop[x] = 1;
    }
    Sequence out;
    out.reserve(n - k);
    for (int pos = 1; pos <= n; ++pos)
        if (!drop[pos]) out.push_back(g_prime[pos - 1]);
    return out;
}

}  // namespace stdperm
