#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stdperm/core.hpp"
#include "stdperm/rational.hpp"
#include "stdperm/words.hpp"

namespace stdperm {

// Probability vector over 0-based integer symbols: finite support, or the
// geometric family p_i = (1-q) q^i. Geometric support is truncated for exact
// formulas where the residual tail mass drops below kGeometricTailEps.
class DiscreteDist {
public:
    inline static constexpr double kGeometricTailEps = 1e-15;

    static DiscreteDist finite(std::vector<double> probs);
    static DiscreteDist finite_exact(std::vector<Rational> probs);
    static DiscreteDist uniform(int q);
    static DiscreteDist geometric(double q);

    // Grammar: "uniform:<q>" | "geom:<q>" | comma-separated probabilities.
    static DiscreteDist parse(const std::string& spec);

    bool is_geometric() const { return geometric_q_.has_value(); }
    double geometric_q() const { return *geometric_q_; }

    // Truncated support size for the geometric family.
    int support_size() const { return static_cast<int>(probs_.size()); }
    double p(Symbol i) const;
    const std::vector<double>& probs() const { return probs_; }

    bool has_exact() const { return !exact_probs_.empty(); }
    const std::vector<Rational>& exact_probs() const;

    double max_prob() const;
    // Mass dropped by geometric truncation (0 for finite support).
    double truncation_error() const { return truncation_error_; }

    double p_word(const Word& w) const;
    Rational exact_p_word(const Word& w) const;

    std::string describe() const;

private:
    DiscreteDist() = default;

    std::vector<double> probs_;
    std::vector<Rational> exact_probs_;
    std::optional<double> geometric_q_;
    double truncation_error_ = 0.0;
};

}  // namespace stdperm
