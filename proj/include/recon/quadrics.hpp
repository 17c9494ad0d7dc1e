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

#ifndef RECON_QUADRICS_HPP
#define RECON_QUADRICS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "recon/linalg.hpp"
#include "recon/primefield.hpp"
#include "recon/quadext.hpp"

namespace recon {

/// Symmetric Gram matrix of a quadratic form (off-diagonal entries are half
/// the mixed coefficients).
template <class K>
Matrix<K> gram_matrix(const Form<K>& q) {
    if (q.space().nfactors() != 1 || q.degree() != 2) throw degree_mismatch("gram matrix needs a quadratic form");
    const int n = q.space().factor(0).dim;
    Matrix<K> m(n, n);
    K half = FieldOps<K>::from_rational(Rational(1, 2), q.is_zero() ? K{} : q.lead_coefficient());
    for (const auto& [e, c] : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < n; ++v) {
            if (e[static_cast<std::size_t>(v)] == 2) i = j = v;
            if (e[static_cast<std::size_t>(v)] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) {
            m(i, i) = c;
        } else {
            m(i, j) = c * half;
            m(j, i) = c * half;
        }
    }
    return m;
}

template <class K>
Form<K> gram_to_form(const Matrix<K>& m, const Space& space) {
    const int n = m.rows();
    Form<K> q(space, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            K c = (i == j) ? m(i, j) : m(i, j) + m(j, i);
            ExpVec e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] += 1;
            e[static_cast<std::size_t>(j)] += 1;
            q.add_term(e, c);
        }
    }
    return q;
}

template <class K>
K evaluate_quadric(const Matrix<K>& m, const std::vector<K>& v) {
    K acc{};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) acc = acc + m(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    return acc;
}

template <class K>
K bilinear(const Matrix<K>& m, const std::vector<K>& v, const std::vector<K>& w) {
    K acc{};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) acc = acc + m(i, j) * v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
    return acc;
}

/// Congruence diagonalization: returns P and the diagonal d with
/// P^t M P = diag(d). Zero diagonal blocks are repaired with row+column
/// additions before each pivot step.
template <class K>
struct Diagonalization {
    Matrix<K> transform;
    std::vector<K> diag;
    int rank = 0;
};

template <class K>
Diagonalization<K> diagonalize_symmetric(const Matrix<K>& m0) {
    const int n = m0.rows();
    Matrix<K> m = m0;
    K like{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!FieldOps<K>::is_zero(m(i, j))) like = m(i, j);
    Matrix<K> p = Matrix<K>::identity(n, like);
    auto add_col = [&](int dst, int src, const K& t) {
        // x_src += t x_dst in the quadric; columns of P track the substitution
        for (int r = 0; r < n; ++r) {
            m(r, dst) = m(r, dst) + t * m(r, src);
        }
        for (int cidx = 0; cidx < n; ++cidx) {
            m(dst, cidx) = m(dst, cidx) + t * m(src, cidx);
        }
        for (int r = 0; r < n; ++r) p(r, dst) = p(r, dst) + t * p(r, src);
    };
    auto swap_vars = [&](int a, int b) {
        for (int r = 0; r < n; ++r) std::swap(m(r, a), m(r, b));
        for (int c = 0; c < n; ++c) std::swap(m(a, c), m(b, c));
        for (int r = 0; r < n; ++r) std::swap(p(r, a), p(r, b));
    };
    K one = FieldOps<K>::one(like);
    for (int k = 0; k < n; ++k) {
        if (FieldOps<K>::is_zero(m(k, k))) {
            int d = -1;
            for (int i = k + 1; i < n; ++i) {
                if (!FieldOps<K>::is_zero(m(i, i))) {
                    d = i;
                    break;
                }
            }
            if (d >= 0) {
                swap_vars(k, d);
            } else {
                int a = -1, b = -1;
                for (int i = k; i < n && a < 0; ++i)
                    for (int j = i + 1; j < n && a < 0; ++j)
                        if (!FieldOps<K>::is_zero(m(i, j))) {
                            a = i;
                            b = j;
                        }
                if (a < 0) break;  // remaining block is zero
                add_col(a, b, one);
                if (a != k) swap_vars(k, a);
            }
        }
        K pinv = FieldOps<K>::inverse(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (FieldOps<K>::is_zero(m(i, k))) continue;
            add_col(i, k, FieldOps<K>::neg(m(i, k) * pinv));
        }
    }
    Diagonalization<K> out;
    out.transform = p;
    out.diag.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.diag[static_cast<std::size_t>(i)] = m(i, i);
        if (!FieldOps<K>::is_zero(m(i, i))) ++out.rank;
    }
    return out;
}

/// Complete factorization into primes by trial division; empty when a
/// composite cofactor above the bound remains.
inline std::optional<std::vector<Int>> factor_squarefree(Int n, unsigned long bound = 100000) {
    n = abs(n);
    std::vector<Int> primes;
    for (Int p = 2; p <= Int(bound) && p * p <= n; p = (p == 2 ? Int(3) : p + 2)) {
        if (n % p == 0) {
            primes.push_back(p);
            n /= p;
            if (n % p == 0) return std::nullopt;  // not squarefree after all
        }
    }
    if (n > 1) {
        if (is_probab_prime(n)) primes.push_back(n);
        else return std::nullopt;
    }
    return primes;
}

inline bool is_qr_mod_squarefree(const Int& a, const std::vector<Int>& prime_factors) {
    for (const Int& p : prime_factors) {
        if (p == 2) continue;
        Int r = a % p;
        if (r < 0) r += p;
        if (r == 0) continue;
        if (mpz_legendre(r.get_mpz_t(), p.get_mpz_t()) != 1) return false;
    }
    return true;
}

}  // namespace recon

#endif
