#pragma once

#include <compare>
#include <tuple>

#include "torusrank/errors.hpp"
#include "torusrank/integers.hpp"

namespace torusrank {

// Exact value (a + b*sqrt(d)) / c in canonical form:
//   c > 0, b > 0, gcd(a, b, c) = 1, d square-free and >= 2.
struct quadratic_irrational {
    mpz_class a, b, c, d;

    mpz_class big_d() const { return b * b * d; }  // radicand of (a + sqrt(b^2 d)) / c
    bool is_pure_surd() const { return a == 0 && b == 1 && c == 1; }

    friend bool operator==(const quadratic_irrational& x, const quadratic_irrational& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const quadratic_irrational& x, const quadratic_irrational& y) { return !(x == y); }
    friend bool operator<(const quadratic_irrational& x, const quadratic_irrational& y) {
        return std::tie(x.d, x.c, x.a, x.b) < std::tie(y.d, y.c, y.a, y.b);
    }
};

inline quadratic_irrational canonicalize(mpz_class a, mpz_class b, mpz_class c, mpz_class d) {
    if (c == 0) throw zero_denominator();
    if (b == 0) throw std::invalid_argument("irrational part b must be nonzero");
    if (d < 2) throw not_square_free(d.get_str() + " is below 2");
    if (!is_square_free(d)) throw not_square_free(d.get_str() + " has a square factor");
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    mpz_class g = gcd(gcd(abs(a), abs(b)), c);
    a /= g;
    b /= g;
    c /= g;
    if (b < 0) throw negative_irrational_part();
    return quadratic_irrational{a, b, c, d};
}

// Canonical representative of 1 - theta. With the positive-branch convention
// (b > 0 in every canonical form) the value 1 - (a+b*sqrt(d))/c itself is not
// representable; its algebraic conjugate ((c-a) + b*sqrt(d))/c is, and that is
// the representative used throughout.
inline quadratic_irrational complement_involution(const quadratic_irrational& t) {
    return canonicalize(t.c - t.a, t.b, t.c, t.d);
}

// Torus isomorphism test: theta' = theta, or theta' = 1 - theta up to the
// conjugate-aware representation above.
inline bool isomorphic_tori(const quadratic_irrational& t1, const quadratic_irrational& t2) {
    return t1 == t2 || t2 == complement_involution(t1);
}

// Exact equality of (P1 + sqrt(D1))/Q1 and (P2 + sqrt(D2))/Q2 where D1, D2 are
// positive non-squares (not necessarily square-free). Two quadratic surds are
// equal iff they share a primitive minimal polynomial and the same root branch;
// the branch of (P + sqrt(D))/Q is the sign of Q.
inline bool same_surd_value(const mpz_class& p1, const mpz_class& q1, const mpz_class& d1,
                            const mpz_class& p2, const mpz_class& q2, const mpz_class& d2) {
    auto primitive = [](const mpz_class& p, const mpz_class& q, const mpz_class& d) {
        mpz_class a2 = q * q;
        mpz_class a1 = -2 * p * q;
        mpz_class a0 = p * p - d;
        mpz_class g = gcd(gcd(a2, abs(a1)), abs(a0));
        return std::tuple<mpz_class, mpz_class, mpz_class>{a2 / g, a1 / g, a0 / g};
    };
    if ((q1 > 0) != (q2 > 0)) return false;
    return primitive(p1, q1, d1) == primitive(p2, q2, d2);
}

}  // namespace torusrank
