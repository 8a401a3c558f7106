#include "stdperm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace stdperm {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed ^ (0x6a09e667f3bcc909ull + stream_id * 0xd1342543de82ef95ull);
    for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

AliasTable::AliasTable(const std::vector<double>& probs) {
    const int n = static_cast<int>(probs.size());
    if (n == 0) throw std::invalid_argument("empty distribution");
    accept_.resize(n);
    alias_.resize(n);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::vector<double> scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = probs[i] * n / total;

    std::vector<int> small, large;
    for (int i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        const int s = small.back();
        const int l = large.back();
        small.pop_back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (int i : large) {
        accept_[i] = 1.0;
        alias_[i] = i;
    }
    for (int i : small) {
        accept_[i] = 1.0;
        alias_[i] = i;
    }
}

int AliasTable::sample(RngStream& rng) const {
    const int i = static_cast<int>(rng.uniform_below(accept_.size()));
    return rng.uniform01() < accept_[i] ? i : alias_[i];
}

Sequence sample_sequence(const DiscreteDist& dist, int n, RngStream& rng) {
    Sequence g(n);
    if (dist.is_geometric()) {
        const double q = dist.geometric_q();
        const double log_q = std::log(q);
        // Resample past the cutoff instead of clamping; the mass there is
        // below 1e-15 by construction.
        const int cutoff = 64 * static_cast<int>(std::ceil(-1.0 / std::log2(q)));
        for (int j = 0; j < n; ++j) {
            for (;;) {
                const double u = rng.uniform01();
                const int v = static_cast<int>(std::log1p(-u) / log_q);
                if (v <= cutoff) {
                    g[j] = v;
                    break;
                }
            }
        }
    } else {
        const AliasTable table(dist.probs());
        for (int j = 0; j < n; ++j) g[j] = table.sample(rng);
    }
    return g;
}

StdPermSample sample_std_perm(const DiscreteDist& dist, int n, RngStream& rng) {
    Sequence g = sample_sequence(dist, n, rng);
    Permutation sigma = standardize(g);
    return {std::move(g), std::move(sigma)};
}

Permutation sample_riffle_oracle(int q, int n, RngStream& rng) {
    if (q < 1) throw std::invalid_argument("q >= 1 required");
    // Inverse GSR: card j gets label l_j; cards are regrouped by label with
    // original order kept within a subdeck. sigma(j) is the new rank of card j.
    std::vector<int> labels(n);
    std::vector<int> bucket_sizes(q, 0);
    for (int j = 0; j < n; ++j) {
        labels[j] = static_cast<int>(rng.uniform_below(q));
        ++bucket_sizes[labels[j]];
    }
    std::vector<int> next_rank(q, 0);
    for (int b = 1; b < q; ++b) next_rank[b] = next_rank[b - 1] + bucket_sizes[b - 1];
    std::vector<int> one_line(n);
    for (int j = 0; j < n; ++j) one_line[j] = ++next_rank[labels[j]];
    return Permutation(std::move(one_line));
}

Permutation sample_major_biased(double q, int n, RngStream& rng) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q in (0,1) required");
    const DiscreteDist geo = DiscreteDist::geometric(q);
    Sequence g = sample_sequence(geo, n, rng);
    for (Symbol& v : g) v = -v;
    return standardize(g).inverse();
}

Permutation sample_uniform_surrogate(int n, RngStream& rng) {
    Sequence keys(n);
    for (;;) {
        std::unordered_set<std::uint64_t> seen;
        bool collision = false;
        for (int j = 0; j < n; ++j) {
            // Keep keys positive so they are valid symbols.
            const std::uint64_t k = rng.next_u64() >> 1;
            if (!seen.insert(k).second) {
                collision = true;
                break;
            }
            keys[j] = static_cast<Symbol>(k);
        }
        if (!collision) break;
    }
    return standardize(keys);
}

Permutation sample_uniform_fisher_yates(int n, RngStream& rng) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    for (int j = n - 1; j > 0; --j)
        std::swap(v[j], v[rng.uniform_below(static_cast<std::uint64_t>(j) + 1)]);
    return Permutation(std::move(v));
}

SimplexVector sample_pd(RngStream& rng, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol in (0,1) required");
    SimplexVector out;
    double rest = 1.0;
    while (rest >= tol) {
        const double u = rng.uniform01();
        out.entries.push_back(rest * u);
        rest *= 1.0 - u;
    }
    out.remainder = rest;
    std::sort(out.entries.begin(), out.entries.end(), std::greater<>());
    return out;
}

TruncatedValue m_t(const SimplexVector& v, int t) {
    if (t < 2) throw std::invalid_argument("t >= 2 required");
    TruncatedValue out;
    for (double y : v.entries) out.value += std::pow(y, t);
    out.truncation_bound = std::pow(v.remainder, t);
    return out;
}

double m_t_of_census(const std::vector<int>& cycle_counts_by_length, int n, int t) {
    double total = 0.0;
    for (size_t k = 1; k <= cycle_counts_by_length.size(); ++k) {
        const int c = cycle_counts_by_length[k - 1];
        if (c) total += c * std::pow(static_cast<double>(k) / n, t);
    }
    return total;
}

}  // namespace stdperm
