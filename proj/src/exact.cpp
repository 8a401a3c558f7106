#include "stdperm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stdperm {

namespace {

void check_distinct(const std::vector<std::pair<Necklace, int>>& pairs) {
    std::set<Necklace> seen;
    for (const auto& [nk, l] : pairs) {
        (void)l;
        if (!seen.insert(nk).second)
            throw std::invalid_argument("query necklaces must be pairwise distinct");
    }
}

template <class T, class ProbOf>
T joint_tail_impl(const std::vector<std::pair<Necklace, int>>& pairs, int n, ProbOf prob_of) {
    std::int64_t weight = 0;
    for (const auto& [nk, l] : pairs) weight += static_cast<std::int64_t>(nk.length()) * l;
    if (weight > n) return T{0};
    T prod{1};
    for (const auto& [nk, l] : pairs) {
        const T p = prob_of(nk.canonical());
        for (int j = 0; j < l; ++j) prod *= p;
    }
    return prod;
}

}  // namespace

double joint_tail(const DiscreteDist& dist, const TypedTailQuery& query) {
    check_distinct(query.pairs);
    return joint_tail_impl<double>(query.pairs, query.n, [&](const Word& w) { return dist.p_word(w); });
}

Rational joint_tail_exact(const DiscreteDist& dist, const TypedTailQuery& query) {
    check_distinct(query.pairs);
    return joint_tail_impl<Rational>(query.pairs, query.n,
                                     [&](const Word& w) { return dist.exact_p_word(w); });
}

namespace {

template <class T>
std::vector<T> marginal_pmf_impl(const T& p, int cap) {
    std::vector<T> pmf(static_cast<size_t>(cap) + 1);
    T pl{1};
    for (int l = 0; l < cap; ++l) {
        pmf[l] = (T{1} - p) * pl;
        pl *= p;
    }
    pmf[cap] = pl;
    return pmf;
}

}  // namespace

std::vector<double> marginal_pmf_D(const DiscreteDist& dist, const Necklace& nk, int n) {
    return marginal_pmf_impl<double>(dist.p_word(nk.canonical()), n / nk.length());
}

std::vector<Rational> marginal_pmf_D_exact(const DiscreteDist& dist, const Necklace& nk, int n) {
    return marginal_pmf_impl<Rational>(dist.exact_p_word(nk.canonical()), n / nk.length());
}

double expected_ck(const DiscreteDist& dist, int k, int n) {
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    double total = 0;
    for (int l = 1; l <= n / k; ++l) total += primitive_mass(dist.probs(), k, l);
    return total / k;
}

Rational expected_ck_exact(const DiscreteDist& dist, int k, int n) {
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    Rational total{0};
    for (int l = 1; l <= n / k; ++l) total += primitive_mass(dist.exact_probs(), k, l);
    return total / k;
}

double expected_ck_enumerated(const DiscreteDist& dist, int k, int n, std::uint64_t cap) {
    double total = 0;
    enumerate_primitive(dist.support_size(), k, [&](const Word& w) {
        const double p = dist.p_word(w);
        double pl = p;
        for (int l = 1; l <= n / k; ++l) {
            total += pl;
            pl *= p;
        }
    }, cap);
    return total / k;
}

namespace {

template <class T>
T joint_moment_impl(const std::vector<std::pair<T, int>>& terms, const std::vector<int>& lengths,
                    int n) {
    // Recursive sum over threshold vectors l_j >= 1 with sum k_j l_j <= n of
    // prod [l^r - (l-1)^r] p^l.
    const auto rec = [&](auto&& self, size_t j, int budget) -> T {
        if (j == terms.size()) return T{1};
        const auto& [p, r] = terms[j];
        if (p == T{0}) return T{0};
        T total{0};
        T pl{1};
        for (int l = 1; l * lengths[j] <= budget; ++l) {
            pl *= p;
            T lr{1}, lm{1};
            for (int e = 0; e < r; ++e) {
                lr *= T(l);
                lm *= T(l - 1);
            }
            const T rest = self(self, j + 1, budget - l * lengths[j]);
            total += (lr - lm) * pl * rest;
        }
        return total;
    };
    return rec(rec, 0, n);
}

}  // namespace

double joint_moment_D(const DiscreteDist& dist, const std::vector<std::pair<Necklace, int>>& spec, int n) {
    std::vector<std::pair<double, int>> terms;
    std::vector<int> lengths;
    for (const auto& [nk, r] : spec) {
        terms.emplace_back(dist.p_word(nk.canonical()), r);
        lengths.push_back(nk.length());
    }
    return joint_moment_impl<double>(terms, lengths, n);
}

Rational joint_moment_D_exact(const DiscreteDist& dist, const std::vector<std::pair<Necklace, int>>& spec, int n) {
    std::vector<std::pair<Rational, int>> terms;
    std::vector<int> lengths;
    for (const auto& [nk, r] : spec) {
        terms.emplace_back(dist.exact_p_word(nk.canonical()), r);
        lengths.push_back(nk.length());
    }
    return joint_moment_impl<Rational>(terms, lengths, n);
}

std::uint64_t stirling2(int r, int m) {
    if (m < 0 || m > r) throw std::invalid_argument("need 0 <= m <= r");
    std::vector<std::vector<std::uint64_t>> s(r + 1, std::vector<std::uint64_t>(r + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= i; ++j)
            s[i][j] = s[i - 1][j - 1] + static_cast<std::uint64_t>(j) * s[i - 1][j];
    return s[r][m];
}

BigInt bell_number(int r) {
    std::vector<BigInt> prev{1}, cur;
    for (int i = 1; i <= r; ++i) {
        cur.assign(i + 1, 0);
        for (int j = 1; j <= i; ++j)
            cur[j] = prev[j - 1] + j * (j < static_cast<int>(prev.size()) ? prev[j] : BigInt{0});
        prev = cur;
    }
    BigInt total = 0;
    for (const BigInt& v : prev) total += v;
    return total;
}

void SetPartition::normalize() {
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

void enumerate_partitions(int r, const std::function<void(const SetPartition&)>& yield) {
    if (r < 1) throw std::invalid_argument("r >= 1 required");
    if (r > kPartitionCap) throw CapExceededError("partition ground set exceeds cap");
    // Restricted growth strings: element j joins an existing block or opens a
    // new one; blocks come out sorted by least element automatically.
    SetPartition pi;
    pi.ground = r;
    const auto rec = [&](auto&& self, int j) -> void {
        if (j > r) {
            yield(pi);
            return;
        }
        // Index-based: recursion appends to pi.blocks, so references into it
        // would dangle across the call.
        const size_t existing = pi.blocks.size();
        for (size_t b = 0; b < existing; ++b) {
            pi.blocks[b].push_back(j);
            self(self, j + 1);
            pi.blocks[b].pop_back();
        }
        pi.blocks.push_back({j});
        self(self, j + 1);
        pi.blocks.pop_back();
    };
    rec(rec, 1);
}

std::vector<SetPartition> list_partitions(int r) {
    std::vector<SetPartition> out;
    enumerate_partitions(r, [&](const SetPartition& pi) { out.push_back(pi); });
    return out;
}

SetPartition partition_join(const SetPartition& a, const SetPartition& b) {
    if (a.ground != b.ground) throw GroundSetMismatchError("partition ground sets differ");
    const int r = a.ground;
    std::vector<int> parent(r + 1);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (const auto* pi : {&a, &b})
        for (const auto& block : pi->blocks)
            for (size_t i = 1; i < block.size(); ++i) unite(block[0], block[i]);

    std::vector<std::vector<int>> groups(r + 1);
    for (int j = 1; j <= r; ++j) groups[find(j)].push_back(j);
    SetPartition out;
    out.ground = r;
    for (auto& g : groups)
        if (!g.empty()) out.blocks.push_back(std::move(g));
    out.normalize();
    return out;
}

Rational uniform_joint_moment(const std::vector<std::pair<int, int>>& spec, int n) {
    std::set<int> lengths;
    for (const auto& [k, r] : spec) {
        if (k < 1 || r < 1) throw std::invalid_argument("lengths and exponents must be >= 1");
        if (!lengths.insert(k).second) throw std::invalid_argument("cycle lengths must be distinct");
    }
    Rational total{0};
    const auto rec = [&](auto&& self, size_t j, int used, const Rational& acc) -> void {
        if (j == spec.size()) {
            total += acc;
            return;
        }
        const auto& [k, r] = spec[j];
        Rational km{1};
        for (int m = 1; m <= r; ++m) {
            km *= k;
            if (used + k * m > n) break;
            self(self, j + 1, used + k * m, acc * Rational(stirling2(r, m)) / km);
        }
    };
    rec(rec, 0, 0, Rational{1});
    return total;
}

Rational pd_joint_moment(const std::vector<int>& t) {
    const int r = static_cast<int>(t.size());
    if (r < 1 || r > kPdMomentCap) throw CapExceededError("pd_joint_moment: 1 <= r <= 8 required");
    for (int tj : t)
        if (tj < 2) throw std::invalid_argument("each exponent must be >= 2");

    const auto factorial = [](int m) {
        BigInt f = 1;
        for (int j = 2; j <= m; ++j) f *= j;
        return f;
    };
    Rational total{0};
    enumerate_partitions(r, [&](const SetPartition& pi) {
        // Dirichlet integral: prod Gamma(t_A) / Gamma(1 + sum t_A).
        BigInt numer = 1;
        int t_total = 0;
        for (const auto& block : pi.blocks) {
            int ta = 0;
            for (int j : block) ta += t[j - 1];
            numer *= factorial(ta - 1);
            t_total += ta;
        }
        total += Rational(numer, factorial(t_total));
    });
    return total;
}

}  // namespace stdperm
