#pragma once

// Literal multinomial sums for the reciprocal coefficients B_k and the map
// coefficients mu_l, used as an oracle independent of the series arithmetic.

#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Calls visit(mult) for every multiplicity vector with sum_p p * mult[p] = total
// (parts p = 1..total).
inline void partitions(int total, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> mult(static_cast<std::size_t>(total + 1), 0);
    std::function<void(int, int)> rec = [&](int part, int remaining) {
        if (remaining == 0) {
            visit(mult);
            return;
        }
        if (part > remaining) return;
        for (int s = 0; s * part <= remaining; ++s) {
            mult[static_cast<std::size_t>(part)] = s;
            rec(part + 1, remaining - s * part);
        }
        mult[static_cast<std::size_t>(part)] = 0;
    };
    rec(1, total);
}

// Multinomial coefficient (sum s)! / prod s! and the part count.
inline double multinomial(const std::vector<int>& mult, int& parts) {
    parts = 0;
    double denom = 1.0;
    for (int s : mult) {
        parts += s;
        denom *= factorial(s);
    }
    return factorial(parts) / denom;
}

// B_k = (1/c) sum over s_1 k_1 + ... = k - 1 of (-1/c)^{sum s} multinomial
// prod mu_{k_i - 1}^{s_i}.
inline Complex reciprocal_coefficient(double c, const std::vector<Complex>& mu, int k) {
    if (k == 1) return 1.0 / c;
    Complex total{};
    partitions(k - 1, [&](const std::vector<int>& mult) {
        int parts = 0;
        const double coef = multinomial(mult, parts);
        Complex term = coef * std::pow(-1.0 / c, parts);
        for (std::size_t p = 1; p < mult.size(); ++p)
            if (mult[p] > 0) term *= std::pow(mu[p - 1], mult[p]);
        total += term;
    });
    return total / c;
}

// mu_l = sum over s_1 n_1 + ... = l of g(sum s) multinomial prod B_{n_i}^{s_i},
// where g(m) is the first gamma column entry for row m.
inline Complex map_coefficient(const std::function<Complex(int)>& g, const std::vector<Complex>& B, int l) {
    Complex total{};
    partitions(l, [&](const std::vector<int>& mult) {
        int parts = 0;
        const double coef = multinomial(mult, parts);
        Complex term = coef * g(parts);
        for (std::size_t p = 1; p < mult.size(); ++p)
            if (mult[p] > 0) term *= std::pow(B[p - 1], mult[p]);
        total += term;
    });
    return total;
}

} // namespace oracle
