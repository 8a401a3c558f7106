#include "stdperm/words.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stdperm/errors.hpp"

namespace stdperm {

int smallest_period(const Word& w) {
    const int k = static_cast<int>(w.size());
    if (k == 0) throw std::invalid_argument("empty word");
    std::vector<int> border(k + 1, 0);
    border[0] = -1;
    int b = -1;
    for (int i = 1; i <= k; ++i) {
        while (b >= 0 && w[b] != w[i - 1]) b = border[b];
        border[i] = ++b;
    }
    const int p = k - border[k];
    return (k % p == 0) ? p : k;
}

bool is_primitive(const Word& w) {
    return smallest_period(w) == static_cast<int>(w.size());
}

std::pair<Word, int> root(const Word& w) {
    const int p = smallest_period(w);
    return {Word(w.begin(), w.begin() + p), static_cast<int>(w.size()) / p};
}

Word canonical_rotation(const Word& w) {
    const int k = static_cast<int>(w.size());
    if (k == 0) throw std::invalid_argument("empty word");
    // Booth's algorithm on w concatenated with itself.
    std::vector<int> f(2 * k, -1);
    int least = 0;
    for (int j = 1; j < 2 * k; ++j) {
        const Symbol sj = w[j % k];
        int i = f[j - least - 1];
        while (i != -1 && sj != w[(least + i + 1) % k]) {
            if (sj < w[(least + i + 1) % k]) least = j - i - 1;
            i = f[i];
        }
        if (sj != w[(least + i + 1) % k]) {
            if (sj < w[(least + i + 1) % k]) least = j;
            f[j - least] = -1;
        } else {
            f[j - least] = i + 1;
        }
    }
    Word out(k);
    for (int i = 0; i < k; ++i) out[i] = w[(least + i) % k];
    return out;
}

Necklace::Necklace(const Word& w) {
    if (!is_primitive(w)) throw NonPrimitiveError("necklace requires a primitive word");
    canonical_ = canonical_rotation(w);
}

std::size_t NecklaceHash::operator()(const Necklace& nk) const {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : nk.canonical()) {
        h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

Necklace necklace_of(const Word& w) {
    return Necklace(w);
}

Word reverse(const Word& w) {
    return Word(w.rbegin(), w.rend());
}

namespace {

void check_cap(int q, int k, std::uint64_t cap) {
    if (q < 1 || k < 1) throw std::invalid_argument("need q >= 1 and k >= 1");
    double words = std::pow(static_cast<double>(q), k);
    if (words > static_cast<double>(cap))
        throw CapExceededError("q^k exceeds the enumeration cap");
}

}  // namespace

void enumerate_primitive(int q, int k, const std::function<void(const Word&)>& yield, std::uint64_t cap) {
    check_cap(q, k, cap);
    Word w(k, 0);
    while (true) {
        if (is_primitive(w)) yield(w);
        int pos = k - 1;
        while (pos >= 0 && w[pos] == q - 1) w[pos--] = 0;
        if (pos < 0) break;
        ++w[pos];
    }
}

void enumerate_necklaces(int q, int k, const std::function<void(const Word&)>& yield, std::uint64_t cap) {
    check_cap(q, k, cap);
    // FKM pre-necklace recursion; aperiodic exactly when the emitted period
    // equals k (Lyndon words, which are the least rotations of their class).
    Word a(static_cast<size_t>(k) + 1, 0);
    Word buf(k);
    auto gen = [&](auto&& self, int t, int p) -> void {
        if (t > k) {
            if (p == k) {
                std::copy(a.begin() + 1, a.end(), buf.begin());
                yield(buf);
            }
            return;
        }
        a[t] = a[t - p];
        self(self, t + 1, p);
        for (Symbol j = a[t - p] + 1; j < q; ++j) {
            a[t] = j;
            self(self, t + 1, t);
        }
    };
    gen(gen, 1, 1);
}

std::vector<Word> list_primitive(int q, int k, std::uint64_t cap) {
    std::vector<Word> out;
    enumerate_primitive(q, k, [&](const Word& w) { out.push_back(w); }, cap);
    return out;
}

std::vector<Word> list_necklaces(int q, int k, std::uint64_t cap) {
    std::vector<Word> out;
    enumerate_necklaces(q, k, [&](const Word& w) { out.push_back(w); }, cap);
    return out;
}

int moebius(int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) return 0;
            result = -result;
        }
    }
    if (d > 1) result = -result;
    return result;
}

std::int64_t necklace_count(int q, int k) {
    std::int64_t total = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        std::int64_t pw = 1;
        for (int e = 0; e < k / d; ++e) pw *= q;
        total += moebius(d) * pw;
    }
    return total / k;
}

namespace {

template <class T>
T power_sum(const std::vector<T>& probs, int e) {
    T s{0};
    for (const T& p : probs) {
        T pe{1};
        for (int j = 0; j < e; ++j) pe *= p;
        s += pe;
    }
    return s;
}

template <class T>
T primitive_mass_impl(const std::vector<T>& probs, int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("need k >= 1 and l >= 1");
    T total{0};
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        const int mu = moebius(d);
        if (mu == 0) continue;
        const T s = power_sum(probs, d * l);
        T term{1};
        for (int j = 0; j < k / d; ++j) term *= s;
        if (mu > 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

template <class T>
T primitive_mass_enum_impl(const std::vector<T>& probs, int k, int l, std::uint64_t cap) {
    const int q = static_cast<int>(probs.size());
    T total{0};
    enumerate_primitive(q, k, [&](const Word& w) {
        T pw{1};
        for (Symbol s : w) pw *= probs[static_cast<size_t>(s)];
        T pl{1};
        for (int j = 0; j < l; ++j) pl *= pw;
        total += pl;
    }, cap);
    return total;
}

}  // namespace

double primitive_mass(const std::vector<double>& probs, int k, int l) {
    return primitive_mass_impl(probs, k, l);
}

Rational primitive_mass(const std::vector<Rational>& probs, int k, int l) {
    return primitive_mass_impl(probs, k, l);
}

double primitive_mass_enumerated(const std::vector<double>& probs, int k, int l, std::uint64_t cap) {
    return primitive_mass_enum_impl(probs, k, l, cap);
}

Rational primitive_mass_enumerated(const std::vector<Rational>& probs, int k, int l, std::uint64_t cap) {
    return primitive_mass_enum_impl(probs, k, l, cap);
}

}  // namespace stdperm
