#include "paracyc/rational.hpp"

#include <stdexcept>

namespace paracyc {

Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(boost::multiprecision::mpz_int(s));
        boost::multiprecision::mpz_int num(s.substr(0, slash));
        boost::multiprecision::mpz_int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(num) / Rat(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

std::string rat_str(const Rat& x) {
    return x.str();
}

} // namespace paracyc
