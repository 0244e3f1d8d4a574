#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace torusrank {

// Sparse multivariate polynomial with arbitrary-precision integer
// coefficients. Terms map exponent vectors (one slot per variable) to nonzero
// coefficients; all arithmetic is exact.
class integer_polynomial {
public:
    using exponents = std::vector<std::uint32_t>;

    integer_polynomial() = default;
    explicit integer_polynomial(size_t nvars) : nvars_(nvars) {}

    static integer_polynomial constant(size_t nvars, const mpz_class& value) {
        integer_polynomial p(nvars);
        if (value != 0) p.terms_.emplace(exponents(nvars, 0), value);
        return p;
    }

    static integer_polynomial variable(size_t nvars, size_t index) {
        if (index >= nvars) throw std::out_of_range("variable index");
        integer_polynomial p(nvars);
        exponents e(nvars, 0);
        e[index] = 1;
        p.terms_.emplace(std::move(e), 1);
        return p;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<exponents, mpz_class>& terms() const { return terms_; }

    integer_polynomial& operator+=(const integer_polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    integer_polynomial& operator-=(const integer_polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend integer_polynomial operator+(integer_polynomial a, const integer_polynomial& b) { return a += b; }
    friend integer_polynomial operator-(integer_polynomial a, const integer_polynomial& b) { return a -= b; }

    friend integer_polynomial operator*(const integer_polynomial& a, const integer_polynomial& b) {
        a.check(b);
        integer_polynomial out(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                exponents e(a.nvars_);
                for (size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend integer_polynomial operator*(const mpz_class& s, integer_polynomial p) {
        if (s == 0) return integer_polynomial(p.nvars_);
        for (auto& [e, c] : p.terms_) c *= s;
        return p;
    }

    friend integer_polynomial operator-(integer_polynomial p) {
        for (auto& [e, c] : p.terms_) c = -c;
        return p;
    }

    integer_polynomial derivative(size_t index) const {
        integer_polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[index] == 0) continue;
            exponents d = e;
            d[index] -= 1;
            out.add_term(d, c * e[index]);
        }
        return out;
    }

    mpz_class evaluate(std::span<const mpz_class> point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation point arity mismatch");
        mpz_class total = 0;
        for (const auto& [e, c] : terms_) {
            mpz_class t = c;
            for (size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t j = 0; j < e[i]; ++j) t *= point[i];
            total += t;
        }
        return total;
    }

    unsigned total_degree() const {
        unsigned deg = 0;
        for (const auto& [e, c] : terms_) {
            unsigned d = 0;
            for (auto x : e) d += x;
            if (d > deg) deg = d;
        }
        return deg;
    }

    friend bool operator==(const integer_polynomial& a, const integer_polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check(const integer_polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }
    void add_term(const exponents& e, const mpz_class& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    size_t nvars_ = 0;
    std::map<exponents, mpz_class> terms_;
};

}  // namespace torusrank
