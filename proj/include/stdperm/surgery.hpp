#pragma once

#include <map>
#include <vector>

#include "stdperm/core.hpp"
#include "stdperm/words.hpp"

namespace stdperm {

// The unique length-k sequence whose standardization is a single cycle whose
// value-word spells the given primitive word.
struct CycleTypeWitness {
    Word word;               // the requested type, letters i_1..i_k
    Sequence generator;      // g with g[x_j - 1] = i_j
    std::vector<int> support_order;  // (x_1, ..., x_k), 1-based
};

CycleTypeWitness unique_cycle_generator(const Word& word);

// Typed cycle census of standardize(g): counts D per necklace, counts c_k per
// length, and the total K.
struct CycleCensus {
    std::map<Necklace, int> by_type;
    std::vector<int> by_length;  // by_length[k-1] = c_k
    int total = 0;               // K = sum c_k

    int d(const Necklace& nk) const {
        auto it = by_type.find(nk);
        return it == by_type.end() ? 0 : it->second;
    }
    int c(int k) const { return by_length[k - 1]; }
};

CycleCensus census_by_type(const Sequence& g);

// Adds one cycle of the word's type: D_word goes up by one, every other
// necklace count is unchanged, and the old permutation survives isomorphically
// on the untouched positions.
Sequence insert_cycle(const Sequence& g, const Word& word);

// Inverse of insert_cycle. Throws NoSuchCycleError when no cycle of that type
// is present.
Sequence remove_cycle(const Sequence& g_prime, const Word& word);

}  // namespace stdperm
