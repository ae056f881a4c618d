#include "gptmap/series.hpp"

#include "gptmap/error.hpp"

#include <algorithm>
#include <string>

namespace gptmap {

LaurentSeries::LaurentSeries(int lead, int order) : lead_(lead), order_(order) {
    coeffs_.assign(static_cast<std::size_t>(std::max(0, lead + order + 1)), Complex{});
}

LaurentSeries LaurentSeries::monomial(Complex coeff, int exponent, int order) {
    LaurentSeries s(exponent, order);
    if (!s.empty()) s.coeffs_[0] = coeff;
    return s;
}

LaurentSeries LaurentSeries::from_coefficients(int lead, const std::vector<Complex>& coeffs, int order) {
    LaurentSeries s(lead, order);
    for (std::size_t k = 0; k < coeffs.size() && k < s.coeffs_.size(); ++k) s.coeffs_[k] = coeffs[k];
    return s;
}

LaurentSeries::Complex LaurentSeries::operator[](int exponent) const {
    if (exponent > lead_) return {};
    if (exponent < -order_)
        throw Error(ErrorCode::InvalidArgument,
                    "coefficient of zeta^" + std::to_string(exponent) + " is beyond the truncation order");
    return coeffs_[static_cast<std::size_t>(lead_ - exponent)];
}

void LaurentSeries::set(int exponent, Complex value) {
    if (exponent > lead_ || exponent < -order_)
        throw Error(ErrorCode::InvalidArgument, "exponent outside the stored range");
    coeffs_[static_cast<std::size_t>(lead_ - exponent)] = value;
}

LaurentSeries LaurentSeries::truncated(int order) const {
    LaurentSeries s(lead_, std::min(order, order_));
    for (std::size_t k = 0; k < s.coeffs_.size(); ++k) s.coeffs_[k] = coeffs_[k];
    return s;
}

LaurentSeries LaurentSeries::scaled(Complex f) const {
    LaurentSeries s = *this;
    for (auto& c : s.coeffs_) c *= f;
    return s;
}

LaurentSeries series_multiply(const LaurentSeries& a, const LaurentSeries& b) {
    const int order = std::min({a.order() - b.lead(), b.order() - a.lead(), std::max(a.order(), b.order())});
    LaurentSeries out(a.lead() + b.lead(), order);
    if (out.empty() || a.empty() || b.empty()) return out;
    for (int e = out.lead(); e >= -order; --e) {
        std::complex<double> s{};
        // exponents ea + eb = e with both in range
        const int lo = std::max(-a.order(), e - b.lead());
        const int hi = std::min(a.lead(), e + b.order());
        for (int ea = hi; ea >= lo; --ea) s += a[ea] * b[e - ea];
        out.set(e, s);
    }
    return out;
}

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries out(std::max(a.lead(), b.lead()), std::min(a.order(), b.order()));
    for (int e = out.lead(); e >= -out.order(); --e) {
        std::complex<double> s{};
        if (e <= a.lead()) s += a[e];
        if (e <= b.lead()) s += b[e];
        out.set(e, s);
    }
    return out;
}

LaurentSeries series_reciprocal(const LaurentSeries& f, int order) {
    if (f.empty() || f[f.lead()] == std::complex<double>{})
        throw Error(ErrorCode::DegenerateDomain, "series has a vanishing leading coefficient");
    const int lead = f.lead();
    const std::complex<double> a = f[lead];
    // Known exponents of 1/f reach -(f.order + 2 lead) at most.
    const int target = std::min(order, f.order() + 2 * lead);
    const int depth = target - lead;  // terms of the geometric series needed
    LaurentSeries out(-lead, target);
    if (depth < 0) return out;

    // w = (f / (a zeta^lead)) - 1, supported on exponents -1 .. -depth.
    LaurentSeries w(-1, depth);
    for (int e = -1; e >= -depth; --e) w.set(e, lead + e >= -f.order() ? f[lead + e] / a : 0.0);
    const LaurentSeries minus_w = w.scaled(-1.0);

    LaurentSeries sum = LaurentSeries::monomial(1.0, 0, depth);
    LaurentSeries term = sum;
    for (int j = 1; j <= depth; ++j) {
        term = series_multiply(term, minus_w).truncated(depth);
        sum = series_add(sum, term);
    }
    for (int e = -lead; e >= -target; --e) out.set(e, sum[e + lead] / a);
    return out;
}

} // namespace gptmap
