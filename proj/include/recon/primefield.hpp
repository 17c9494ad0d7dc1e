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

#ifndef RECON_PRIMEFIELD_HPP
#define RECON_PRIMEFIELD_HPP

#include <cstdint>
#include <string>

#include "recon/rational.hpp"

namespace recon {

/// Default modulus for probabilistic screens: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kDefaultScreenPrime = 2305843009213693951ULL;

/// Element of F_p for a word-sized prime p. Used as a fast randomized
/// backend for rank and vanishing screens; every verdict that drives a
/// reconstruction is reconfirmed exactly.
class Fp {
   public:
    Fp() : v_(0), p_(kDefaultScreenPrime) {}
    Fp(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

    static Fp from_int(const Int& n, std::uint64_t p) {
        Int m = n % Int(p);
        if (m < 0) m += Int(p);
        return Fp(m.get_ui(), p);
    }

    static Fp from_rational(const Rational& q, std::uint64_t p) {
        Fp num = from_int(q.num(), p);
        Fp den = from_int(q.den(), p);
        return num / den;
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t p = merge(a, b);
        std::uint64_t s = a.v_ + b.v_;
        if (s >= p || s < a.v_) s -= p;
        return Fp(s, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t p = merge(a, b);
        unsigned __int128 prod = static_cast<unsigned __int128>(a.v_) * b.v_;
        return Fp(static_cast<std::uint64_t>(prod % p), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.v_ == 0 && b.v_ == 0) return true;
        return a.p_ == b.p_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp pow(std::uint64_t e) const {
        Fp base = *this;
        Fp acc(1, p_);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Fp inv() const {
        if (v_ == 0) throw division_by_zero("inv(0) in F_p");
        return pow(p_ - 2);
    }

    /// Square root by Tonelli-Shanks; empty result when not a residue.
    bool sqrt(Fp& out) const {
        if (v_ == 0) {
            out = Fp(0, p_);
            return true;
        }
        if (pow((p_ - 1) / 2).value() != 1) return false;
        if (p_ % 4 == 3) {
            out = pow((p_ + 1) / 4);
            return true;
        }
        std::uint64_t q = p_ - 1, s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        Fp z(2, p_);
        while (z.pow((p_ - 1) / 2).value() == 1) z = Fp(z.value() + 1, p_);
        Fp m_pow = pow(q);
        Fp c = z.pow(q);
        Fp t = m_pow;
        Fp r = pow((q + 1) / 2);
        std::uint64_t m = s;
        while (t.value() != 1) {
            std::uint64_t i = 0;
            Fp t2 = t;
            while (t2.value() != 1) {
                t2 *= t2;
                ++i;
                if (i == m) return false;
            }
            Fp b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b *= b;
            r *= b;
            c = b * b;
            t *= c;
            m = i;
        }
        out = r;
        return true;
    }

    std::string str() const { return std::to_string(v_) + " mod " + std::to_string(p_); }

   private:
    // a zero value acts as the universal zero and adopts the other modulus
    static std::uint64_t merge(const Fp& a, const Fp& b) {
        if (a.p_ == b.p_) return a.p_;
        if (a.v_ == 0) return b.p_;
        if (b.v_ == 0) return a.p_;
        throw mixed_field("distinct moduli " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

/// Deterministic list of screening primes: the default prime followed by
/// next_prime iterates above 2^61.
inline std::uint64_t screen_prime(int index) {
    if (index <= 0) return kDefaultScreenPrime;
    Int p = Int(1) << 61;
    for (int i = 0; i < index; ++i) p = next_prime(p);
    return p.get_ui();
}

}  // namespace recon

#endif
