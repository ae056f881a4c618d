#pragma once

#include <complex>
#include <vector>

namespace gptmap {

/// Truncated Laurent series sum_{e = -order}^{lead} a_e zeta^e. Coefficients
/// at exponents below -order are unknown, not zero; arithmetic propagates
/// that so no result claims more accuracy than its inputs support.
class LaurentSeries {
public:
    using Complex = std::complex<double>;

    LaurentSeries(int lead, int order);

    static LaurentSeries monomial(Complex coeff, int exponent, int order);
    /// coeffs[k] multiplies zeta^{lead - k}.
    static LaurentSeries from_coefficients(int lead, const std::vector<Complex>& coeffs, int order);

    int lead() const { return lead_; }
    int order() const { return order_; }
    bool empty() const { return lead_ < -order_; }

    /// Coefficient of zeta^exponent: zero above lead, throws below -order.
    Complex operator[](int exponent) const;
    void set(int exponent, Complex value);

    LaurentSeries truncated(int order) const;
    LaurentSeries scaled(Complex s) const;

private:
    int lead_;
    int order_;
    std::vector<Complex> coeffs_;  // coeffs_[k] <-> zeta^{lead_ - k}
};

/// Cauchy product. The result is valid down to
/// -min(a.order - b.lead, b.order - a.lead), capped at max(a.order, b.order).
LaurentSeries series_multiply(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);

/// 1/f through exponent -order, as 1/(a zeta^L) times the geometric series
/// sum_j (-w)^j with f = a zeta^L (1 + w). Throws if the leading coefficient
/// vanishes.
LaurentSeries series_reciprocal(const LaurentSeries& f, int order);

} // namespace gptmap
