// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_ERRORS_HPP
#define BELLMONO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bellmono {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
    domain,        // invalid argument values (arity, range, region, ...)
    size,          // desk-scale cap or enumeration budget exceeded
    coverage,      // some network edge cannot be covered by any catalog pattern
    verification,  // a certificate or relation failed its consistency check
    parse,         // malformed text/JSON input
    io,            // file system trouble
    internal,      // broken invariant inside the library itself
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::domain, what); }
inline Error size_error(const std::string& what) { return Error(ErrorKind::size, what); }
inline Error coverage_error(const std::string& what) { return Error(ErrorKind::coverage, what); }
inline Error verification_error(const std::string& what) { return Error(ErrorKind::verification, what); }
inline Error parse_error(const std::string& what) { return Error(ErrorKind::parse, what); }
inline Error io_error(const std::string& what) { return Error(ErrorKind::io, what); }
inline Error internal_error(const std::string& what) { return Error(ErrorKind::internal, what); }

}  // namespace bellmono

#endif
