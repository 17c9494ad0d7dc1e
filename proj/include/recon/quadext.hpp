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

#ifndef RECON_QUADEXT_HPP
#define RECON_QUADEXT_HPP

#include <optional>
#include <string>
#include <utility>

#include "recon/rational.hpp"

namespace recon {

/// Largest square divisor we can strip from n by trial division up to the
/// given bound, plus a perfect-square / prime test on the leftover cofactor.
/// Returns (squarefree_part, root) with n = squarefree_part * root^2 when the
/// second member of the pair is true ("certified squarefree"); when false the
/// first component may still contain a large square factor we could not see.
struct squarefree_decomposition {
    Int squarefree;
    Int root;
    bool certified;
};

inline squarefree_decomposition squarefree_part(Int n, unsigned long trial_bound = 100000) {
    if (n == 0) return {Int(0), Int(1), true};
    Int sf = 1, root = 1;
    Int m = abs(n);
    int sg = sgn(n);
    for (Int p = 2; p <= Int(trial_bound) && p * p <= m; p = (p == 2 ? Int(3) : p + 2)) {
        if (m % p != 0) continue;
        unsigned long e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        root *= pow(p, e / 2);
        if (e % 2 == 1) sf *= p;
    }
    // m is now the cofactor with no prime factor below the trial bound.
    bool certified = true;
    if (m > 1) {
        if (is_perfect_square(m)) {
            root *= isqrt(m).first;
        } else if (is_probab_prime(m)) {
            sf *= m;
        } else {
            // Composite cofactor, all factors above the bound. It is a product
            // of exactly two distinct primes (hence squarefree) when below
            // bound^3; beyond that it may hide a square factor we cannot see.
            sf *= m;
            certified = m < pow(Int(trial_bound), 3);
        }
    }
    return {sg < 0 ? Int(-sf) : sf, root, certified};
}

/// Element a + b*sqrt(m) of a quadratic extension of Q. The radicand m is a
/// non-square integer kept squarefree whenever the decomposition above can
/// certify it. Plain rationals carry the sentinel radicand 0 and unify with
/// any extension; two distinct non-zero radicands do not mix.
class QuadExt {
   public:
    QuadExt() : a_(0), b_(0), m_(0) {}
    QuadExt(const Rational& a) : a_(a), b_(0), m_(0) {}  // NOLINT: implicit embedding of Q
    QuadExt(long a) : a_(a), b_(0), m_(0) {}             // NOLINT
    QuadExt(Rational a, Rational b, Int m) : a_(std::move(a)), b_(std::move(b)), m_(std::move(m)) {
        if (b_.is_zero()) m_ = 0;
        if (!b_.is_zero() && (m_ == 0 || m_ == 1)) throw mixed_field("radicand must be a non-square integer");
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Int& radicand() const { return m_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_.is_one(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadExt conj() const { return QuadExt(a_, -b_, m_); }
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(m_); }

    QuadExt operator-() const { return QuadExt(-a_, -b_, m_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        Int m = merge(x, y);
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, m);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Int m = merge(x, y);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(m), x.a_ * y.b_ + x.b_ * y.a_, m);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inv(); }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        if (!x.b_.is_zero() && !y.b_.is_zero() && x.m_ != y.m_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    QuadExt inv() const {
        if (is_zero()) throw division_by_zero("inv(0) in quadratic extension");
        Rational n = norm();
        if (n.is_zero()) throw division_by_zero("zero norm: radicand is a square");
        return QuadExt(a_ / n, -b_ / n, m_);
    }

    QuadExt pow(long e) const {
        if (e == 0) return QuadExt(Rational(1));
        if (e < 0) return inv().pow(-e);
        QuadExt base = *this, acc{Rational(1)};
        long k = e;
        while (k > 0) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s;
        if (!a_.is_zero()) s = a_.str() + (b_.sign() < 0 ? " - " : " + ");
        else if (b_.sign() < 0) s = "-";
        Rational babs = b_.abs();
        if (!babs.is_one()) s += babs.str() + "*";
        s += "sqrt(" + m_.get_str() + ")";
        return s;
    }

   private:
    static Int merge(const QuadExt& x, const QuadExt& y) {
        if (x.m_ == 0) return y.m_;
        if (y.m_ == 0 || x.m_ == y.m_) return x.m_;
        throw mixed_field("distinct radicands " + x.m_.get_str() + " and " + y.m_.get_str());
    }

    Rational a_, b_;
    Int m_;
};

/// Record of the quadratic extension a pipeline step introduced, if any.
struct ExtensionRecord {
    std::optional<Int> radicand;  // empty: stayed in Q
    bool certified_minimal = true;

    bool trivial() const { return !radicand.has_value(); }
    std::string str() const { return trivial() ? std::string("none") : "sqrt(" + radicand->get_str() + ")"; }
};

/// Exact square root of a nonzero rational: a rational when possible,
/// otherwise an element of Q(sqrt(m)) for the squarefree part m, together
/// with the extension record.
inline std::pair<QuadExt, ExtensionRecord> sqrt_or_extend(const Rational& a) {
    if (a.is_zero()) throw division_by_zero("sqrt_or_extend(0)");
    // sqrt(p/q) = sqrt(p*q)/q.
    Int n = a.num() * a.den();
    auto dec = squarefree_part(n);
    Rational outside(dec.root, a.den());
    if (dec.squarefree == 1) return {QuadExt(outside), ExtensionRecord{}};
    ExtensionRecord rec;
    rec.radicand = dec.squarefree;
    rec.certified_minimal = dec.certified;
    return {QuadExt(Rational(0), outside, dec.squarefree), rec};
}

}  // namespace recon

#endif
