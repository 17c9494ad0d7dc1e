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

#ifndef RECON_RECONENGINE_HPP
#define RECON_RECONENGINE_HPP

#include <vector>

#include "recon/conic.hpp"
#include "recon/covariant.hpp"
#include "recon/normalform.hpp"
#include "recon/transvectants.hpp"

namespace recon {

/// Dual family of a basis (q_i) of a degree slice: write the change of basis
/// S from the canonical monomials, then combine the canonical dual monomials
/// with tS^{-1}. D(dual_i, q_j) = delta_ij exactly.
template <class K>
std::vector<Form<K>> dual_family(const std::vector<Form<K>>& q) {
    if (q.empty()) throw dependent_basis("empty family");
    Matrix<K> coeffs = coefficient_matrix(q);  // row i = q_i in monomial coordinates
    if (coeffs.rows() != coeffs.cols()) throw dependent_basis("family does not have full slice dimension");
    K like = FieldOps<K>::one(K{});
    for (const auto& f : q)
        if (!f.is_zero()) like = f.lead_coefficient();
    Matrix<K> s = coeffs.transposed();  // S: columns are the q_j
    Matrix<K> sinv;
    try {
        sinv = inverse(s);
    } catch (const singular_matrix&) {
        throw dependent_basis("family is linearly dependent");
    }
    auto duals_raw = dual_monomial_basis<K>(q[0].space(), q[0].degrees(), like);
    // dual_j = sum_i (S^{-T})_{ij} b_i^* = sum_i sinv(j, i) b_i^*
    std::vector<Form<K>> out;
    out.reserve(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
        Form<K> d(duals_raw[0].space(), duals_raw[0].degrees());
        for (std::size_t i = 0; i < q.size(); ++i) {
            d = d + duals_raw[i].scaled(sinv(static_cast<int>(j), static_cast<int>(i)));
        }
        out.push_back(std::move(d));
    }
    return out;
}

/// Multiset iteration for k-fold products of a family: canonical exponents
/// of the lift space of dimension family.size() at degree k.
template <class K>
Form<K> family_power(const std::vector<Form<K>>& family, const ExpVec& gamma) {
    Form<K> acc = Form<K>::constant(family[0].space(), FieldOps<K>::one(family[0].is_zero() ? K{} : family[0].lead_coefficient()));
    bool first = true;
    Form<K> out = acc;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        for (int t = 0; t < gamma[i]; ++t) {
            if (first) {
                out = family[i];
                first = false;
            } else {
                out = out * family[i];
            }
        }
    }
    if (first) return acc;
    return out;
}

/// Taylor-like identity: ((kd)!/d!^k) f equals the double sum of
/// D(dual-products, f) times basis products. Exact check used by the
/// acceptance gate; the dual basis is computed through the change-of-basis
/// matrix.
template <class K>
bool taylor_identity_check(const Form<K>& f, const std::vector<Form<K>>& basis, int k) {
    const int d = basis[0].degree();
    if (f.degree() != k * d) throw degree_mismatch("taylor identity needs deg f = k d");
    std::vector<Form<K>> duals = dual_family(basis);
    K like = FieldOps<K>::one(f.is_zero() ? K{} : f.lead_coefficient());
    Space lift = Space::lift(static_cast<int>(basis.size()));
    Form<K> sum(f.space(), f.degrees());
    for (const auto& gamma : canonical_exponents(lift, {k})) {
        Int mult = multinomial(static_cast<unsigned long>(k), gamma);
        Form<K> dual_prod = family_power(duals, gamma);
        Form<K> base_prod = family_power(basis, gamma);
        K coeff = apolar_scalar(dual_prod, f) * FieldOps<K>::from_int(mult, like);
        sum = sum + base_prod.scaled(coeff);
    }
    Rational factor(factorial(static_cast<unsigned long>(k * d)), pow(factorial(static_cast<unsigned long>(d)), static_cast<unsigned long>(k)));
    return sum == f.scaled(FieldOps<K>::from_rational(factor, like));
}

/// Lift through the apolarity pairing: coefficients D(p_{i_1}...p_{i_k}, f)
/// on X_{i_1}...X_{i_k}, assembled per multiset with multinomial counts.
template <class K>
Form<K> build_lift_apolar(const std::vector<Form<K>>& pvals, const Form<K>& target, int k) {
    Space lift = Space::lift(static_cast<int>(pvals.size()));
    K like = FieldOps<K>::one(target.is_zero() ? K{} : target.lead_coefficient());
    Form<K> out(lift, k);
    for (const auto& gamma : canonical_exponents(lift, {k})) {
        Int mult = multinomial(static_cast<unsigned long>(k), gamma);
        K c = apolar_scalar(family_power(pvals, gamma), target) * FieldOps<K>::from_int(mult, like);
        out.add_term(gamma, c);
    }
    return out;
}

/// Lift through full-level transvectants, the displayed form of the binary
/// pipelines: coefficients (q-products, f)_{deg f}.
template <class K>
Form<K> build_lift_transvectant(const std::vector<Form<K>>& qvals, const Form<K>& target, int k) {
    Space lift = Space::lift(static_cast<int>(qvals.size()));
    K like = FieldOps<K>::one(target.is_zero() ? K{} : target.lead_coefficient());
    Form<K> out(lift, k);
    for (const auto& gamma : canonical_exponents(lift, {k})) {
        Int mult = multinomial(static_cast<unsigned long>(k), gamma);
        Form<K> prod = family_power(qvals, gamma);
        K c = as_scalar(transvect(prod, target, target.degree())) * FieldOps<K>::from_int(mult, like);
        out.add_term(gamma, c);
    }
    return out;
}

/// Double-binary variant at full bi-level (deg, deg).
template <class K>
Form<K> build_lift_transvectant2(const std::vector<Form<K>>& qvals, const Form<K>& target, int k) {
    Space lift = Space::lift(static_cast<int>(qvals.size()));
    K like = FieldOps<K>::one(target.is_zero() ? K{} : target.lead_coefficient());
    Form<K> out(lift, k);
    for (const auto& gamma : canonical_exponents(lift, {k})) {
        Int mult = multinomial(static_cast<unsigned long>(k), gamma);
        Form<K> prod = family_power(qvals, gamma);
        K c = as_scalar(transvect2(prod, target, target.degree(0), target.degree(1))) * FieldOps<K>::from_int(mult, like);
        out.add_term(gamma, c);
    }
    return out;
}

/// Quadratic relations among the members of a parametrizing family, by the
/// right kernel of the Gram pairing matrix D(p_i p_j, q_l q_m). Rows and
/// columns run over unordered pairs; kernel vectors come back as primitive
/// quadrics in the lift variables.
template <class K>
std::vector<Form<K>> quadric_relations(const std::vector<Form<K>>& pvals, const std::vector<Form<K>>& qvals) {
    if (pvals.size() != qvals.size()) throw arity_mismatch("dual and primal families must have equal size");
    const int r1 = static_cast<int>(pvals.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r1; ++i)
        for (int j = i; j < r1; ++j) pairs.emplace_back(i, j);
    Matrix<K> gram(static_cast<int>(pairs.size()), static_cast<int>(pairs.size()));
    std::vector<Form<K>> pprod(pairs.size()), qprod(pairs.size());
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        pprod[a] = pvals[static_cast<std::size_t>(pairs[a].first)] * pvals[static_cast<std::size_t>(pairs[a].second)];
        qprod[a] = qvals[static_cast<std::size_t>(pairs[a].first)] * qvals[static_cast<std::size_t>(pairs[a].second)];
    }
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = 0; b < pairs.size(); ++b) gram(static_cast<int>(a), static_cast<int>(b)) = apolar_scalar(pprod[a], qprod[b]);
    auto kernel = right_kernel(gram);
    Space lift = Space::lift(r1);
    std::vector<Form<K>> out;
    for (const auto& v : kernel) {
        Form<K> qf(lift, 2);
        for (std::size_t a = 0; a < pairs.size(); ++a) {
            if (FieldOps<K>::is_zero(v[a])) continue;
            ExpVec e(static_cast<std::size_t>(r1), 0);
            e[static_cast<std::size_t>(pairs[a].first)] += 1;
            e[static_cast<std::size_t>(pairs[a].second)] += 1;
            qf.add_term(e, v[a]);
        }
        out.push_back(std::move(qf));
    }
    return out;
}

/// Routing stub of the general rebasing problem: the conic case and the
/// single rank-4 quadric case are implemented; everything larger is out of
/// scope by design.
struct VeroneseRebase {
    std::optional<ConicParam> conic;
    std::optional<QuadricSplit> quadric;
};

inline VeroneseRebase rebase_veronese(const std::vector<Form<Rational>>& quadrics) {
    if (quadrics.empty()) throw unsupported("no quadric relations supplied");
    const int dim = quadrics[0].space().factor(0).dim;
    if (dim == 3 && quadrics.size() == 1) {
        VeroneseRebase out;
        out.conic = parametrize_conic(quadrics[0]);
        return out;
    }
    if (dim == 4 && quadrics.size() == 1 && quadric_rank(quadrics[0]) == 4) {
        VeroneseRebase out;
        out.quadric = quadric_normal_form(quadrics[0]);
        return out;
    }
    throw unsupported("veronese rebasing beyond one conic or one rank-4 quadric (r = " + std::to_string(dim - 1) +
                      ") requires the general Noether-normalization solve, which is out of scope");
}

}  // namespace recon

#endif
