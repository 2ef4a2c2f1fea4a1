#ifndef PARACYC_RATIONAL_HPP
#define PARACYC_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace paracyc {

// Exact rational scalar. All arithmetic in the library is exact; there is
// no floating point anywhere.
using Rat = boost::multiprecision::mpq_rational;

inline Rat frac(long num, long den) {
    return Rat(num) / Rat(den);
}

// Parses "p", "-p", "p/q".  GMP's string constructor does not canonicalize,
// so we rebuild through an exact division.
Rat rat_parse(const std::string& s);

std::string rat_str(const Rat& x);

} // namespace paracyc

#endif
