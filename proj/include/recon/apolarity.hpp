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

#ifndef RECON_APOLARITY_HPP
#define RECON_APOLARITY_HPP

#include <vector>

#include "recon/form.hpp"

namespace recon {

/// Apolarity pairing: `a` acts on `b` by partial differentiation, one
/// monomial at a time (w^alpha against P gives d^alpha P / dx^alpha),
/// extended bilinearly. The two arguments live over mutually dual spaces;
/// on multi-factor spaces the contraction acts independently per factor.
/// The result lives in b's space with per-factor degrees deg(b) - deg(a).
template <class K>
Form<K> apolar(const Form<K>& a, const Form<K>& b) {
    if (!(a.space() == b.space().opposite())) throw space_mismatch("apolar pairing needs mutually dual spaces");
    std::vector<int> degs(a.degrees().size());
    for (std::size_t i = 0; i < degs.size(); ++i) {
        degs[i] = b.degrees()[i] - a.degrees()[i];
        if (degs[i] < 0) throw degree_too_high("apolar pairing with deg(u) > deg(f)");
    }
    if (!b.is_zero()) {
        Int ch = FieldOps<K>::characteristic(b.terms().begin()->second);
        if (ch > 0 && ch <= b.degree()) throw characteristic_guard("prime backend needs p > deg(f)");
    }
    Form<K> r(b.space(), degs);
    const std::size_t n = static_cast<std::size_t>(b.space().total_dim());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (ea[i] > eb[i]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            Int ff = 1;
            ExpVec e(n);
            for (std::size_t i = 0; i < n; ++i) {
                e[i] = eb[i] - ea[i];
                for (int t = 0; t < ea[i]; ++t) ff *= (eb[i] - t);
            }
            r.add_term(e, ca * (cb * FieldOps<K>::from_int(ff, cb)));
        }
    }
    return r;
}

/// Fully contracted pairing (equal degrees) as a scalar.
template <class K>
K apolar_scalar(const Form<K>& a, const Form<K>& b) {
    return as_scalar(apolar(a, b));
}

/// Canonical dual basis of the degree-`degrees` monomial basis: the monomial
/// w^alpha scaled by 1/alpha!, so that pairing against the canonical basis
/// gives the identity matrix. Returned in canonical (LexDesc) order over the
/// opposite space.
template <class K>
std::vector<Form<K>> dual_monomial_basis(const Space& primal, const std::vector<int>& degrees, const K& like) {
    Space dual = primal.opposite();
    std::vector<Form<K>> out;
    for (const auto& e : canonical_exponents(primal, degrees)) {
        Int fact = 1;
        for (int x : e) fact *= factorial(static_cast<unsigned long>(x));
        K c = FieldOps<K>::from_rational(Rational(Int(1), fact), like);
        out.push_back(Form<K>::monomial(dual, e, c));
    }
    return out;
}

/// Canonical monomial basis of the space at the given degrees.
template <class K>
std::vector<Form<K>> monomial_basis(const Space& space, const std::vector<int>& degrees, const K& like) {
    std::vector<Form<K>> out;
    K one = FieldOps<K>::one(like);
    for (const auto& e : canonical_exponents(space, degrees)) out.push_back(Form<K>::monomial(space, e, one));
    return out;
}

/// Coefficients of `f` in the canonical monomial basis of its degree slice.
template <class K>
std::vector<K> coefficient_vector(const Form<K>& f) {
    std::vector<K> out;
    for (const auto& e : canonical_exponents(f.space(), f.degrees())) out.push_back(f.coefficient(e));
    return out;
}

namespace detail {

/// Sum over all k x (n+1) matrices with rows summing to d and columns
/// summing to alpha of the product of row multinomials.
inline Int j_alpha_sum(int k, int d, const std::vector<int>& alpha) {
    const int n1 = static_cast<int>(alpha.size());
    std::vector<ExpVec> rows;
    exponents_of_degree(n1, d, rows);
    std::vector<Int> row_mult;
    row_mult.reserve(rows.size());
    for (const auto& r : rows) row_mult.push_back(multinomial(static_cast<unsigned long>(d), r));
    Int total = 0;
    std::vector<int> budget = alpha;
    std::function<void(int, Int)> rec = [&](int row, Int acc) {
        if (row == k) {
            bool done = true;
            for (int b : budget) {
                if (b != 0) {
                    done = false;
                    break;
                }
            }
            if (done) total += acc;
            return;
        }
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            bool fits = true;
            for (int j = 0; j < n1; ++j) {
                if (rows[ri][static_cast<std::size_t>(j)] > budget[static_cast<std::size_t>(j)]) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            for (int j = 0; j < n1; ++j) budget[static_cast<std::size_t>(j)] -= rows[ri][static_cast<std::size_t>(j)];
            rec(row + 1, acc * row_mult[ri]);
            for (int j = 0; j < n1; ++j) budget[static_cast<std::size_t>(j)] += rows[ri][static_cast<std::size_t>(j)];
        }
    };
    rec(0, Int(1));
    return total;
}

}  // namespace detail

/// Brute-force check of the product-of-multinomials identity behind the
/// Taylor-like decomposition: for every alpha of total kd, the weighted
/// count of k x (n+1) exponent matrices equals the big multinomial. Used as
/// a self-test only.
inline bool multinomial_check(int k, int d, int n) {
    if (k * d > 10 || n > 3) throw input_error("Precondition", "multinomial_check limited to kd <= 10, n <= 3");
    std::vector<ExpVec> alphas;
    exponents_of_degree(n + 1, k * d, alphas);
    for (const auto& alpha : alphas) {
        Int lhs = detail::j_alpha_sum(k, d, alpha);
        Int rhs = multinomial(static_cast<unsigned long>(k * d), alpha);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace recon

#endif
