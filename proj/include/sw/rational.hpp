#pragma once

#include <gmpxx.h>

#include <string>

namespace sw {

using BigInt = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) {
    return mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0;
}

inline BigInt floor_rational(const Rational& q) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

/// Largest integer strictly below q. For integral q this is q - 1.
inline BigInt floor_strict(const Rational& q) {
    if (is_integer(q)) return BigInt(q.get_num()) - 1;
    return floor_rational(q);
}

inline BigInt binomial(const BigInt& n, unsigned long k) {
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
    return out;
}

inline BigInt factorial(unsigned long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// Fixed-point decimal rendering of a rational, e.g. 4096/13 -> "315.0769".
std::string decimal_string(const Rational& q, int digits = 4);

}  // namespace sw
