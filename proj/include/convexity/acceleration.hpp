#pragma once

/**
 * @file acceleration.hpp
 * @brief Euler transformation for alternating series
 *
 * Sums S = Σ_{n ≥ start} (-1)^n a_n by direct summation of the first
 * `direct_terms` terms followed by the Euler transform of the tail,
 *
 *   Σ_{n ≥ m} (-1)^n a_n = (-1)^m Σ_k (-1)^k Δ^k a_m / 2^{k+1},
 *
 * where Δ is the forward difference. For sequences that are smooth in n
 * (rational functions of n, moment sequences, t^n times either) the
 * transformed terms decay geometrically. Sequences that tend to a nonzero
 * constant or grow polynomially are summed in the Abel sense.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace convexity {

struct AlternatingSum {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms_used = 0;
};

struct EulerOptions {
    std::size_t direct_terms = 64;
    std::size_t max_differences = 96;
    double relative_tol = 1e-17;
};

/// Σ_{n ≥ start} (-1)^n a(n). `a` is called with increasing n only.
template<typename Term>
AlternatingSum euler_alternating_sum(Term&& a, std::size_t start, EulerOptions options = {}) {
    const double eps = std::numeric_limits<double>::epsilon();
    double direct = 0.0;
    double scale = 0.0;
    std::size_t n = start;
    for (std::size_t i = 0; i < options.direct_terms; ++i, ++n) {
        const double an = a(n);
        scale = std::max(scale, std::abs(an));
        direct += (n % 2 == 0) ? an : -an;
    }

    std::vector<double> table(options.max_differences + 1);
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = a(n + i);
        scale = std::max(scale, std::abs(table[i]));
    }

    // tail = Σ_k (-1)^k Δ^k a_m / 2^{k+1}
    double tail = 0.0;
    double last = 0.0;
    double weight = 0.5;
    std::size_t k = 0;
    std::size_t quiet = 0;
    for (; k <= options.max_differences; ++k) {
        const double term = ((k % 2 == 0) ? 1.0 : -1.0) * table[0] * weight;
        tail += term;
        last = std::abs(term);
        if (last <= options.relative_tol * std::abs(tail) + eps * eps * scale) {
            if (++quiet == 2) break;
        } else {
            quiet = 0;
        }
        for (std::size_t i = 0; i + k < options.max_differences; ++i) {
            table[i] = table[i + 1] - table[i];
        }
        weight *= 0.5;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double value = direct + sign * tail;
    const double roundoff = 4.0 * eps * (static_cast<double>(options.direct_terms + k) * scale +
                                         std::abs(value));
    return {value, last + roundoff, options.direct_terms + k + 1};
}

}  // namespace convexity
