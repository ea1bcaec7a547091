#pragma once

#include <string>

namespace jumpcode {

// Shortest round-trip decimal for a double (printf %.17g).
std::string fmt_g17(double x);

// Strict double parse: whole string must be consumed. DomainError otherwise.
double parse_double_strict(const std::string& s);

// Strict signed integer parse.
long long parse_int_strict(const std::string& s);

}  // namespace jumpcode
