// SPDX-License-Identifier: Apache-2.0
#include "bellmono/rational.hpp"

#include <cmath>

#include "bellmono/errors.hpp"

namespace bellmono {

std::string rational_to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rational_from_string(std::string_view text) {
    if (text.empty()) throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    try {
        using boost::multiprecision::cpp_int;
        if (slash == std::string_view::npos) {
            return Rational(cpp_int(std::string(text)));
        }
        cpp_int num{std::string(text.substr(0, slash))};
        cpp_int den{std::string(text.substr(slash + 1))};
        if (den == 0) throw parse_error("zero denominator in rational literal");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw parse_error("malformed rational literal: '" + std::string(text) + "'");
    }
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

std::optional<Rational> snap_to_rational(double x, int max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    for (int den = 1; den <= max_den; ++den) {
        const double scaled = x * den;
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) <= tol * den) {
            return Rational(static_cast<long long>(rounded), den);
        }
    }
    return std::nullopt;
}

}  // namespace bellmono
