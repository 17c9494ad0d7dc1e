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

#ifndef RECON_CATALOGS_HPP
#define RECON_CATALOGS_HPP

#include <vector>

#include "recon/covariant.hpp"

namespace recon {

/// Contravariant chain for ternary quartics. The three order-1
/// contravariants p0, p1, p2 are generically linearly independent and drive
/// the plane-quartic reconstruction. Intermediate nodes keep the classical
/// names; degrees of the lift invariants D(p p p p, Id) then range over
/// 4*{14,17} + 1 = 57..69.
struct Genus3Catalog {
    CovExprPtr F;       // the quartic itself, order 4 degree 1
    CovExprPtr H;       // (F,F,F)_2, order 6 degree 3
    CovExprPtr sigma;   // I-transfer of F, order 4 degree 2
    CovExprPtr psi;     // J-transfer of F, order 6 degree 3
    CovExprPtr rho;     // D(F, psi), order 2 degree 4
    CovExprPtr C44;     // I-transfer of sigma, order 4 degree 4
    CovExprPtr C52;     // D(sigma, H), order 2 degree 5
    CovExprPtr C85;     // (F, H, C44)_3, order 5 degree 8
    CovExprPtr c54;     // D(F, sigma^2), order 4 degree 5
    CovExprPtr c105;    // (sigma, psi, c54)_3, order 5 degree 10
    CovExprPtr c123;    // D(C85, sigma^2), order 3 degree 12
    CovExprPtr C123;    // D(rho, C85), order 3 degree 12
    CovExprPtr p0;      // D(C44, c105), order 1 degree 14
    CovExprPtr p1;      // D(C123, c54), order 1 degree 17
    CovExprPtr p2;      // D(C52, c123), order 1 degree 17

    std::vector<CovExprPtr> p() const { return {p0, p1, p2}; }
};

inline Genus3Catalog genus3_catalog() {
    using E = CovExpr;
    Genus3Catalog c;
    c.F = E::leaf_form(0, {3}, {4}, "F");
    c.H = E::named(E::omega(c.F, c.F, c.F, 2), "H");
    c.sigma = E::named(E::transfer(c.F, BinaryQuarticInvariant::I), "sigma");
    c.psi = E::named(E::transfer(c.F, BinaryQuarticInvariant::J), "psi");
    c.rho = E::named(E::dpair(c.F, c.psi), "rho");
    c.C44 = E::named(E::transfer(c.sigma, BinaryQuarticInvariant::I), "C44");
    c.C52 = E::named(E::dpair(c.sigma, c.H), "C52");
    c.C85 = E::named(E::omega(c.F, c.H, c.C44, 3), "C85");
    auto sigma2 = E::power(c.sigma, 2);
    c.c54 = E::named(E::dpair(c.F, sigma2), "c54");
    c.c105 = E::named(E::omega(c.sigma, c.psi, c.c54, 3), "c105");
    c.c123 = E::named(E::dpair(c.C85, sigma2), "c123");
    c.C123 = E::named(E::dpair(c.rho, c.C85), "C123");
    c.p0 = E::named(E::dpair(c.C44, c.c105), "p0");
    c.p1 = E::named(E::dpair(c.C123, c.c54), "p1");
    c.p2 = E::named(E::dpair(c.C52, c.c123), "p2");
    return c;
}

/// Bi-order (1,1) covariants of bicubic forms together with the
/// intermediates of the published table.
struct Genus4Catalog {
    CovExprPtr f;
    CovExprPtr h, j;
    CovExprPtr c31;
    CovExprPtr c33_1, c33_2;
    CovExprPtr c42_1, c42_2, c42_3;
    CovExprPtr c44_1, c44_2;
    CovExprPtr c51_1, c51_2, c51_3;

    std::vector<CovExprPtr> q() const { return {c31, c51_1, c51_2, c51_3}; }
};

inline Genus4Catalog genus4_catalog() {
    using E = CovExpr;
    Genus4Catalog c;
    c.f = E::leaf_form(0, {2, 2}, {3, 3}, "f");
    c.h = E::named(E::transvectant2(c.f, c.f, 2, 2), "h");
    c.j = E::named(E::transvectant2(c.f, c.f, 1, 1), "j");
    c.c31 = E::named(E::transvectant2(c.h, c.f, 2, 2), "c31");
    c.c33_1 = E::named(E::transvectant2(c.j, c.f, 2, 2), "c33_1");
    c.c33_2 = E::named(E::transvectant2(c.h, c.f, 1, 1), "c33_2");
    c.c42_1 = E::named(E::transvectant2(c.h, c.h, 1, 1), "c42_1");
    c.c42_2 = E::named(E::transvectant2(c.c31, c.f, 1, 1), "c42_2");
    c.c42_3 = E::named(E::transvectant2(c.c33_2, c.f, 2, 2), "c42_3");
    c.c44_1 = E::named(E::transvectant2(c.c33_2, c.f, 1, 1), "c44_1");
    c.c44_2 = E::named(E::transvectant2(E::transvectant2(c.j, c.f, 1, 1), c.f, 2, 2), "c44_2");
    c.c51_1 = E::named(E::transvectant2(c.c42_2, c.f, 2, 2), "c51_1");
    c.c51_2 = E::named(E::transvectant2(c.c44_1, c.f, 3, 3), "c51_2");
    c.c51_3 = E::named(E::transvectant2(c.c44_2, c.f, 3, 3), "c51_3");
    return c;
}

/// Three order-2 covariants of Sym^6 + Sym^4 (slots: 0 = f6, 1 = f4):
/// q0 = (f6, f4)_4, q1 = (f6, f4^2)_6, q2 = (f6^2, f4^3)_11.
struct Sum64Catalog {
    CovExprPtr f6, f4;
    CovExprPtr q0, q1, q2;
    std::vector<CovExprPtr> q() const { return {q0, q1, q2}; }
};

inline Sum64Catalog sum64_catalog() {
    using E = CovExpr;
    Sum64Catalog c;
    c.f6 = E::leaf_form(0, {2}, {6}, "f6");
    c.f4 = E::leaf_form(1, {2}, {4}, "f4");
    c.q0 = E::named(E::transvectant(c.f6, c.f4, 4), "q0");
    c.q1 = E::named(E::transvectant(c.f6, E::power(c.f4, 2), 6), "q1");
    c.q2 = E::named(E::transvectant(E::power(c.f6, 2), E::power(c.f4, 3), 11), "q2");
    return c;
}

/// Mestre's classical triple of order-2 covariants for binary sextics.
inline std::vector<CovExprPtr> mestre_sextic_triple() {
    using E = CovExpr;
    auto f = E::leaf_form(0, {2}, {6}, "f");
    auto i = E::named(E::transvectant(f, f, 4), "i");
    auto y1 = E::named(E::transvectant(i, f, 4), "y1");
    auto y2 = E::named(E::transvectant(i, y1, 2), "y2");
    auto y3 = E::named(E::transvectant(i, y2, 2), "y3");
    return {y1, y2, y3};
}

struct CovariantSearchOptions {
    int max_depth = 4;
    int max_order_factor = 2;     // intermediate order cap = factor * k
    int max_degree = 12;          // cap on degree in the input coefficients
    std::size_t pool_cap = 2000;  // safety valve on the candidate pool
};

/// Search for `count` order-`target_order` covariants of a binary k-form
/// which are linearly independent at f. The pool is grown breadth first by
/// transvecting the previous generation against a fixed generator set (f and
/// its nonzero even self-transvectants); candidates whose value at f is
/// proportional to a pooled value are dropped, and the selection exits as
/// soon as `count` independent values are in hand. Throws search_exhausted
/// when the bounds run out without a candidate, and not_independent_at_f
/// when candidates exist but stay in a lower-dimensional slice at f.
template <class K>
std::pair<std::vector<CovExprPtr>, std::vector<Form<K>>> search_binary_covariants(const Form<K>& f, int target_order, int count,
                                                                                  const CovariantSearchOptions& opt = {}) {
    const int k = f.degree();
    const int order_cap = opt.max_order_factor * k;

    std::vector<CovExprPtr> pool_exprs;
    std::vector<Form<K>> pool_values;
    std::vector<CovExprPtr> picked;
    std::vector<Form<K>> picked_values;
    int have_candidates = 0;

    // returns true once enough independent candidates were picked
    auto consider = [&](const CovExprPtr& e, Form<K> v) -> bool {
        if (v.is_zero()) return false;
        for (std::size_t i = 0; i < pool_values.size(); ++i) {
            if (pool_values[i].degrees() == v.degrees() && proportionality(pool_values[i], v).has_value()) return false;
        }
        pool_exprs.push_back(e);
        pool_values.push_back(std::move(v));
        if (e->orders[0] == target_order) {
            ++have_candidates;
            std::vector<Form<K>> trial = picked_values;
            trial.push_back(pool_values.back());
            if (independence_at(trial).independent) {
                picked.push_back(e);
                picked_values.push_back(pool_values.back());
            }
        }
        return static_cast<int>(picked.size()) >= count;
    };

    auto leaf = CovExpr::leaf_form(0, {2}, {k}, "f");
    std::vector<CovExprPtr> gens;
    std::vector<Form<K>> gen_values;
    auto add_gen = [&](const CovExprPtr& e, Form<K> v) {
        if (v.is_zero()) return false;
        gens.push_back(e);
        gen_values.push_back(v);
        return consider(e, std::move(v));
    };
    bool done = add_gen(leaf, f);
    for (int l = 2; l <= k && !done; l += 2) {
        done = add_gen(CovExpr::transvectant(leaf, leaf, l), transvect(f, f, l));
    }

    std::size_t level_begin = 0;
    for (int depth = 2; depth <= opt.max_depth && !done && pool_exprs.size() < opt.pool_cap; ++depth) {
        std::size_t level_end = pool_exprs.size();
        for (std::size_t a = level_begin; a < level_end && !done && pool_exprs.size() < opt.pool_cap; ++a) {
            CovExprPtr node = pool_exprs[a];
            Form<K> node_value = pool_values[a];
            for (std::size_t g = 0; g < gens.size() && !done; ++g) {
                if (gens[g]->degree + node->degree > opt.max_degree) continue;
                int lmax = std::min(gens[g]->orders[0], node->orders[0]);
                for (int l = 1; l <= lmax && !done; ++l) {
                    int order = gens[g]->orders[0] + node->orders[0] - 2 * l;
                    if (order > order_cap) continue;
                    auto v = transvect(gen_values[g], node_value, l);
                    if (v.is_zero()) continue;
                    done = consider(CovExpr::transvectant(gens[g], node, l), std::move(v));
                }
            }
        }
        level_begin = level_end;
    }

    if (static_cast<int>(picked.size()) >= count) return {picked, picked_values};
    if (have_candidates == 0)
        throw search_exhausted("no order-" + std::to_string(target_order) + " covariant found within depth " + std::to_string(opt.max_depth));
    throw not_independent_at_f("only " + std::to_string(picked.size()) + " of " + std::to_string(count) + " requested order-" +
                               std::to_string(target_order) + " covariants are independent at f");
}

/// Two order-1 covariants of an odd binary form, independent at f.
template <class K>
std::pair<std::vector<CovExprPtr>, std::vector<Form<K>>> search_order1_binary(const Form<K>& f, const CovariantSearchOptions& opt = {}) {
    if (f.degree() % 2 == 0 || f.degree() < 5) throw input_error("Precondition", "order-1 covariants exist for odd degree k >= 5");
    return search_binary_covariants(f, 1, 2, opt);
}

}  // namespace recon

#endif
