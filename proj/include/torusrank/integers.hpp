#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace torusrank {

inline mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const mpz_class& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor division (round toward -infinity), q may be negative but not zero.
inline mpz_class fdiv(const mpz_class& n, const mpz_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    return r;
}

// Trial division; strips each prime factor once and rejects on a repeat.
inline bool is_square_free(mpz_class n) {
    if (n < 1) return false;
    mpz_class f = 2;
    while (f * f <= n) {
        if (n % f == 0) {
            n /= f;
            if (n % f == 0) return false;
        }
        ++f;
    }
    return true;
}

// flags[i] == true iff lo + i is square-free, for lo + i in [lo, hi).
inline std::vector<bool> square_free_flags(unsigned long lo, unsigned long hi) {
    std::vector<bool> flags(hi > lo ? hi - lo : 0, true);
    for (unsigned long q = 2; q * q < hi; ++q) {
        unsigned long qq = q * q;
        unsigned long first = ((lo + qq - 1) / qq) * qq;
        for (unsigned long m = first; m < hi; m += qq) flags[m - lo] = false;
    }
    return flags;
}

inline bool fits_int64(const mpz_class& n) {
    return n.fits_slong_p() || (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63);
}

inline bool is_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

}  // namespace torusrank
