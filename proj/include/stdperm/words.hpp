#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stdperm/core.hpp"
#include "stdperm/rational.hpp"

namespace stdperm {

// A nonempty tuple of symbols.
using Word = std::vector<Symbol>;

// Canonical representative (lexicographically least rotation) of the
// conjugacy class of a primitive word.
class Necklace {
public:
    // Canonicalizes; throws NonPrimitiveError if w is a proper power.
    explicit Necklace(const Word& w);

    const Word& canonical() const { return canonical_; }
    int length() const { return static_cast<int>(canonical_.size()); }

    bool operator==(const Necklace&) const = default;
    auto operator<=>(const Necklace&) const = default;

private:
    Word canonical_;
};

struct NecklaceHash {
    std::size_t operator()(const Necklace& nk) const;
};

// Smallest period via the KMP border table; w is a power of its length-p
// prefix iff p divides |w|.
int smallest_period(const Word& w);

bool is_primitive(const Word& w);

// (root r, multiplicity m) with w = r^m and r primitive.
std::pair<Word, int> root(const Word& w);

// Booth's least-rotation algorithm.
Word canonical_rotation(const Word& w);

Necklace necklace_of(const Word& w);

Word reverse(const Word& w);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 22;

// All primitive words of length k over {0..q-1}, lexicographic order.
void enumerate_primitive(int q, int k, const std::function<void(const Word&)>& yield,
                         std::uint64_t cap = kDefaultEnumerationCap);

// One representative per aperiodic necklace (the Lyndon words of length k),
// generated by the FKM recursion.
void enumerate_necklaces(int q, int k, const std::function<void(const Word&)>& yield,
                         std::uint64_t cap = kDefaultEnumerationCap);

std::vector<Word> list_primitive(int q, int k, std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Word> list_necklaces(int q, int k, std::uint64_t cap = kDefaultEnumerationCap);

// (1/k) sum_{d|k} mu(d) q^{k/d}.
std::int64_t necklace_count(int q, int k);

int moebius(int d);

// sum over primitive words of length k of (p_{i_1}...p_{i_k})^l, by Moebius
// inversion over the divisors of k: sum_{d|k} mu(d) (sum_i p_i^{dl})^{k/d}.
double primitive_mass(const std::vector<double>& probs, int k, int l);
Rational primitive_mass(const std::vector<Rational>& probs, int k, int l);

// Brute-force counterpart, for cross-checks.
double primitive_mass_enumerated(const std::vector<double>& probs, int k, int l,
                                 std::uint64_t cap = kDefaultEnumerationCap);
Rational primitive_mass_enumerated(const std::vector<Rational>& probs, int k, int l,
                                   std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace stdperm
