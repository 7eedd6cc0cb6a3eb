#include "sw/rational.hpp"

namespace sw {

std::string decimal_string(const Rational& q, int digits) {
    BigInt scale = pow_int(BigInt(10), static_cast<unsigned long>(digits));
    BigInt scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), BigInt(q.get_num() * scale).get_mpz_t(),
               q.get_den_mpz_t());
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.get_str();
    if (static_cast<int>(s.size()) <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    if (negative) s.insert(0, "-");
    return s;
}

}  // namespace sw
