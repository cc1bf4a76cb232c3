// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_RATIONAL_HPP
#define BELLMONO_RATIONAL_HPP

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bellmono {

// Exact rational arithmetic for relation bounds, averaging weights and the cover LP.
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form: "3" for integers, "1/2" otherwise. Parsing accepts both.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(std::string_view text);

double rational_to_double(const Rational& r);

// Smallest-denominator rational within tol of x, denominators 1..max_den.
// Used to snap numerically observed tight bounds before they enter the catalog.
std::optional<Rational> snap_to_rational(double x, int max_den, double tol);

}  // namespace bellmono

#endif
