/*
   Copyright 2026 The recon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RECON_RATIONAL_HPP
#define RECON_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <utility>

#include "recon/errors.hpp"

namespace recon {

/// Arbitrary-precision integer. The row types of the whole library; we keep
/// gmpxx as the backend and expose only value semantics.
using Int = mpz_class;

inline Int int_from_string(const std::string& s) { return Int(s); }

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// n! / (a_0! ... a_m!) for a partition (a_i) of n.
template <class Seq>
Int multinomial(unsigned long n, const Seq& parts) {
    Int r = factorial(n);
    for (auto p : parts) r /= factorial(static_cast<unsigned long>(p));
    return r;
}

/// Floor square root plus exactness flag.
inline std::pair<Int, bool> isqrt(const Int& a) {
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t());
    return {root, rem == 0};
}

inline bool is_perfect_square(const Int& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

inline bool is_probab_prime(const Int& a) { return mpz_probab_prime_p(a.get_mpz_t(), 32) != 0; }

inline Int next_prime(const Int& a) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Exact rational scalar. Canonical form (gcd(|num|, den) = 1, den > 0,
/// zero as 0/1) is maintained by the mpq backend.
class Rational {
   public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw division_by_zero("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Int(s));
        return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }

    const Int& num() const { return v_.get_num(); }
    const Int& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return mpq_sgn(v_.get_mpq_t()); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw division_by_zero();
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational inv() const {
        if (is_zero()) throw division_by_zero("inv(0)");
        return Rational(mpq_class(1 / v_));
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) return inv().pow(-e);
        Rational base = *this, acc(1);
        long k = e;
        while (k > 0) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// Text form "a/b", or "a" for integers.
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

   private:
    mpq_class v_;
};

inline Rational rational_factorial(unsigned long n) { return Rational(factorial(n)); }

}  // namespace recon

#endif
