#include "stdperm/dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stdperm {

DiscreteDist DiscreteDist::finite(std::vector<double> probs) {
    if (probs.empty()) throw std::invalid_argument("finite dist needs a nonempty support");
    double sum = 0;
    for (double p : probs) {
        if (p < 0 || p > 1) throw std::invalid_argument("probability out of [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
    DiscreteDist d;
    d.probs_ = std::move(probs);
    return d;
}

DiscreteDist DiscreteDist::finite_exact(std::vector<Rational> probs) {
    if (probs.empty()) throw std::invalid_argument("finite dist needs a nonempty support");
    Rational sum{0};
    for (const Rational& p : probs) {
        if (p < 0 || p > 1) throw std::invalid_argument("probability out of [0,1]");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("exact probabilities must sum to 1");
    DiscreteDist d;
    d.probs_.reserve(probs.size());
    for (const Rational& p : probs) d.probs_.push_back(to_double(p));
    d.exact_probs_ = std::move(probs);
    return d;
}

DiscreteDist DiscreteDist::uniform(int q) {
    if (q < 1) throw std::invalid_argument("uniform dist needs q >= 1");
    return finite_exact(std::vector<Rational>(q, Rational(1, q)));
}

DiscreteDist DiscreteDist::geometric(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("geometric parameter must be in (0,1)");
    DiscreteDist d;
    d.geometric_q_ = q;
    // Tail mass beyond symbol m-1 is q^m.
    const int m = std::max(1, static_cast<int>(std::ceil(std::log(kGeometricTailEps) / std::log(q))));
    d.probs_.resize(m);
    double pk = 1.0 - q;
    for (int i = 0; i < m; ++i) {
        d.probs_[i] = pk;
        pk *= q;
    }
    d.truncation_error_ = std::pow(q, m);
    return d;
}

DiscreteDist DiscreteDist::parse(const std::string& spec) {
    if (spec.rfind("uniform:", 0) == 0) return uniform(std::stoi(spec.substr(8)));
    if (spec.rfind("geom:", 0) == 0) return geometric(std::stod(spec.substr(5)));
    std::vector<double> probs;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
    return finite(std::move(probs));
}

double DiscreteDist::p(Symbol i) const {
    if (i < 0) throw std::invalid_argument("negative symbol");
    if (i >= static_cast<Symbol>(probs_.size())) {
        if (is_geometric()) return (1.0 - *geometric_q_) * std::pow(*geometric_q_, static_cast<double>(i));
        return 0.0;
    }
    return probs_[static_cast<size_t>(i)];
}

const std::vector<Rational>& DiscreteDist::exact_probs() const {
    if (exact_probs_.empty()) throw std::logic_error("dist has no exact rational representation");
    return exact_probs_;
}

double DiscreteDist::max_prob() const {
    return *std::max_element(probs_.begin(), probs_.end());
}

double DiscreteDist::p_word(const Word& w) const {
    double prod = 1.0;
    for (Symbol s : w) prod *= p(s);
    return prod;
}

Rational DiscreteDist::exact_p_word(const Word& w) const {
    const auto& ps = exact_probs();
    Rational prod{1};
    for (Symbol s : w) {
        if (s < 0 || s >= static_cast<Symbol>(ps.size())) return Rational{0};
        prod *= ps[static_cast<size_t>(s)];
    }
    return prod;
}

std::string DiscreteDist::describe() const {
    std::ostringstream os;
    if (is_geometric()) {
        os << "geom:" << *geometric_q_;
    } else {
        os << "finite[";
        for (size_t i = 0; i < probs_.size(); ++i) os << (i ? "," : "") << probs_[i];
        os << "]";
    }
    return os.str();
}

}  // namespace stdperm
