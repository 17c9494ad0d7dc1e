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

#include <random>

#include "doctest.h"
#include "recon/apolarity.hpp"
#include "recon/poly_parse.hpp"
#include "recon/transvectants.hpp"

using namespace recon;

namespace {

Form<Rational> random_form(const Space& s, const std::vector<int>& degs, std::mt19937_64& rng, long lo = -9, long hi = 9) {
    Form<Rational> f(s, degs);
    for (const auto& e : canonical_exponents(s, degs)) {
        long c = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
        f.add_term(e, Rational(c));
    }
    return f;
}

/// Substitution action f -> f(Mx) for an integer matrix M acting on the
/// variables of a single-factor form.
Form<Rational> apply_matrix(const Form<Rational>& f, const std::vector<std::vector<long>>& m) {
    const Space& s = f.space();
    int dim = s.factor(0).dim;
    std::vector<Form<Rational>> images;
    for (int i = 0; i < dim; ++i) {
        Form<Rational> img(s, 1);
        for (int j = 0; j < dim; ++j) {
            ExpVec e(static_cast<std::size_t>(dim), 0);
            e[static_cast<std::size_t>(j)] = 1;
            img.add_term(e, Rational(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        }
        images.push_back(img);
    }
    return substitute(f, images);
}

std::vector<std::vector<long>> random_unimodular2(std::mt19937_64& rng) {
    // random product of elementary shears: always determinant 1
    std::vector<std::vector<long>> m{{1, 0}, {0, 1}};
    for (int k = 0; k < 4; ++k) {
        long t = static_cast<long>(rng() % 5) - 2;
        if (rng() % 2 == 0) {
            // row op [1 t; 0 1]
            m[0][0] += t * m[1][0];
            m[0][1] += t * m[1][1];
        } else {
            m[1][0] += t * m[0][0];
            m[1][1] += t * m[0][1];
        }
    }
    return m;
}

}  // namespace

TEST_CASE("binary transvectant basic values") {
    Space p2 = Space::primal(2);
    auto f = parse_form("x0^2", p2);
    auto g = parse_form("x1^2", p2);
    CHECK(as_scalar(transvect(f, g, 2)) == Rational(4));

    auto cubic = parse_form("x0^3 + x1^3", p2);
    CHECK(transvect(cubic, cubic, 1).is_zero());

    // zero level is the plain product
    std::mt19937_64 rng(5);
    auto a = random_form(p2, {3}, rng);
    auto b = random_form(p2, {4}, rng);
    CHECK(transvect(a, b, 0) == a * b);

    CHECK_THROWS_AS(transvect(a, b, 4), level_too_high);
}

TEST_CASE("transvectant symmetry (f,g)_l = (-1)^l (g,f)_l") {
    std::mt19937_64 rng(17);
    Space p2 = Space::primal(2);
    for (int it = 0; it < 30; ++it) {
        int df = 2 + static_cast<int>(rng() % 4);
        int dg = 2 + static_cast<int>(rng() % 4);
        auto f = random_form(p2, {df}, rng);
        auto g = random_form(p2, {dg}, rng);
        for (int l = 0; l <= std::min(df, dg); ++l) {
            auto lhs = transvect(f, g, l);
            auto rhs = transvect(g, f, l);
            if (l % 2 == 1) rhs = -rhs;
            CHECK(lhs == rhs);
        }
        CHECK(transvect(f, f, 1).is_zero());
        if (df >= 3) CHECK(transvect(f, f, 3).is_zero());
    }
}

TEST_CASE("tau bridge identity D(tau(C), C') = (C, C')_deg") {
    std::mt19937_64 rng(23);
    Space p2 = Space::primal(2);
    CHECK(tau(parse_form("x0", p2)) == parse_form("-1*w1", Space::dual(2)));
    CHECK(tau(parse_form("x1", p2)) == parse_form("w0", Space::dual(2)));
    for (int it = 0; it < 50; ++it) {
        int d = 1 + static_cast<int>(rng() % 4);
        int dp = d + static_cast<int>(rng() % 3);
        auto c = random_form(p2, {d}, rng);
        auto cp = random_form(p2, {dp}, rng);
        CHECK(apolar(tau(c), cp) == transvect(c, cp, d));
    }
}

TEST_CASE("tau multiplicativity") {
    // tau_{kd}(q_1 ... q_k) = ((kd)!/d!^k) tau_d(q_1) ... tau_d(q_k)
    std::mt19937_64 rng(29);
    Space p2 = Space::primal(2);
    for (auto [d, k] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
        std::vector<Form<Rational>> qs;
        for (int i = 0; i < k; ++i) qs.push_back(random_form(p2, {d}, rng));
        Form<Rational> q_all = qs[0];
        Form<Rational> t_all = tau(qs[0]);
        for (int i = 1; i < k; ++i) {
            q_all = q_all * qs[static_cast<std::size_t>(i)];
            t_all = t_all * tau(qs[static_cast<std::size_t>(i)]);
        }
        Rational factor(factorial(static_cast<unsigned long>(k * d)));
        factor = factor / Rational(pow(factorial(static_cast<unsigned long>(d)), static_cast<unsigned long>(k)));
        CHECK(tau(q_all) == t_all.scaled(factor));
    }
}

TEST_CASE("double binary transvectant and tau2 bridge") {
    Space bi = Space::biprimal();
    std::mt19937_64 rng(31);

    // (f, g)_{0,0} = f*g
    auto f = random_form(bi, {2, 2}, rng);
    auto g = random_form(bi, {1, 2}, rng);
    CHECK(transvect2(f, g, 0, 0) == f * g);

    // tau2 on constants scales by d! e! = 1
    auto cst = Form<Rational>::constant(bi, Rational(7));
    CHECK(tau2(cst) == Form<Rational>::constant(Space::bidual(), Rational(7)));

    for (int it = 0; it < 20; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        int e = 1 + static_cast<int>(rng() % 3);
        auto c = random_form(bi, {d, e}, rng);
        auto cp = random_form(bi, {d + static_cast<int>(rng() % 2), e + static_cast<int>(rng() % 2)}, rng);
        CHECK(apolar(tau2(c), cp) == transvect2(c, cp, d, e));
    }

    // (f,f)_{1,1} generally survives (antisymmetry composes to symmetry)
    auto bc = random_form(bi, {3, 3}, rng);
    CHECK(!transvect2(bc, bc, 1, 1).is_zero());
}

TEST_CASE("ternary omega transvectant") {
    Space p3 = Space::primal(3);
    auto x0 = parse_form("x0", p3);
    auto x1 = parse_form("x1", p3);
    auto x2 = parse_form("x2", p3);
    CHECK(as_scalar(omega_transvect3(x0, x1, x2, 1)) == Rational(1));

    std::mt19937_64 rng(37);
    auto a = random_form(p3, {2}, rng);
    auto b = random_form(p3, {1}, rng);
    auto c = random_form(p3, {2}, rng);
    CHECK(omega_transvect3(a, b, c, 0) == a * b * c);

    // Hessian-type covariant of the Fermat cubic is proportional to x0 x1 x2
    auto fermat3 = parse_form("x0^3 + x1^3 + x2^3", p3);
    auto h = omega_transvect3(fermat3, fermat3, fermat3, 2);
    auto lambda = proportionality(parse_form("x0*x1*x2", p3), h);
    REQUIRE(lambda.has_value());
    CHECK(!lambda->is_zero());

    CHECK_THROWS_AS(omega_transvect3(a, b, c, 2), level_too_high);
}

TEST_CASE("transvectant equivariance under unimodular substitutions") {
    std::mt19937_64 rng(41);
    Space p2 = Space::primal(2);
    for (int it = 0; it < 20; ++it) {
        auto m = random_unimodular2(rng);
        auto f = random_form(p2, {4}, rng);
        auto g = random_form(p2, {3}, rng);
        for (int l = 0; l <= 3; ++l) {
            CHECK(transvect(apply_matrix(f, m), apply_matrix(g, m), l) == apply_matrix(transvect(f, g, l), m));
        }
    }
}

TEST_CASE("clebsch transfer reproduces the dual Fermat quartic") {
    Space p3 = Space::primal(3);
    auto fermat = parse_form("x0^4 + x1^4 + x2^4", p3);
    auto sigma = clebsch_transfer(fermat, BinaryQuarticInvariant::I);
    CHECK(sigma.space() == Space::dual(3));
    CHECK(sigma.degree() == 4);
    auto lambda = proportionality(parse_form("w0^4 + w1^4 + w2^4", Space::dual(3)), sigma);
    REQUIRE(lambda.has_value());
    CHECK(!lambda->is_zero());

    auto psi = clebsch_transfer(fermat, BinaryQuarticInvariant::J);
    CHECK(psi.degree() == 6);

    // the transfer divides exactly for random quartics too
    std::mt19937_64 rng(43);
    for (int it = 0; it < 10; ++it) {
        auto f = random_form(p3, {4}, rng);
        CHECK(clebsch_transfer(f, BinaryQuarticInvariant::I).degree() == 4);
        CHECK(clebsch_transfer(f, BinaryQuarticInvariant::J).degree() == 6);
    }
}
