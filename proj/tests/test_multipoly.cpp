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
#include "recon/linalg.hpp"
#include "recon/poly_parse.hpp"

using namespace recon;

namespace {

Form<Rational> random_form(const Space& s, const std::vector<int>& degs, std::mt19937_64& rng, long lo = -20, long hi = 20) {
    Form<Rational> f(s, degs);
    for (const auto& e : canonical_exponents(s, degs)) {
        long c = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
        f.add_term(e, Rational(c));
    }
    return f;
}

}  // namespace

TEST_CASE("parse and print round trip") {
    Space p2 = Space::primal(2);
    auto f = parse_form("x0^2 - 2*x0*x1 + x1^2", p2);
    CHECK(f.degree() == 2);
    CHECK(f.str() == "x0^2 - 2*x0*x1 + x1^2");
    CHECK(parse_form(f.str(), p2) == f);

    Space p3 = Space::primal(3);
    auto g = parse_form("-745*x0^3*x2 - 6705*x0^2*x1*x2", p3);
    CHECK(g.coefficient({3, 0, 1}) == Rational(-745));
    CHECK(g.str() == "-745*x0^3*x2 - 6705*x0^2*x1*x2");

    auto h = parse_form("1/2*x0^2 + 3/4*x1^2", p2);
    CHECK(h.coefficient({2, 0}) == Rational(1, 2));
    CHECK(parse_form(h.str(), p2) == h);

    Space bi = Space::biprimal();
    auto b = parse_form("x0*u0 + 2*x1*u1", bi);
    CHECK(b.degrees() == std::vector<int>{1, 1});

    CHECK_THROWS_AS(parse_form("x0^2 + x1", p2), input_error);
    CHECK_THROWS_AS(parse_form("x0 + + x1", p2), parse_error);
    CHECK_THROWS_AS(parse_form("w0", p2), parse_error);
    CHECK_THROWS_AS(parse_form("x7", p2), parse_error);
    CHECK_THROWS_AS(parse_form("", p2), parse_error);
}

TEST_CASE("polynomial ring operations") {
    Space p2 = Space::primal(2);
    auto a = parse_form("x0^2 + x1^2", p2);
    auto b = parse_form("-1*x0^2", p2);
    CHECK((a + b).str() == "x1^2");
    auto u = parse_form("x0 + x1", p2);
    auto v = parse_form("x0 - x1", p2);
    CHECK((u * v) == parse_form("x0^2 - x1^2", p2));
    CHECK(u.scaled(Rational(3)) == parse_form("3*x0 + 3*x1", p2));
    CHECK_THROWS_AS(a + u, space_mismatch);
}

TEST_CASE("apolar pairing on monomials") {
    Space p2 = Space::primal(2);
    Space d2 = Space::dual(2);
    auto f = parse_form("x0^2", p2);
    auto u = parse_form("w0^2", d2);
    CHECK(apolar_scalar(u, f) == Rational(2));

    CHECK(apolar_scalar(parse_form("w0*w1", d2), parse_form("x0*x1", p2)) == Rational(1));

    auto g = apolar(parse_form("w0", d2), parse_form("x0^2*x1", p2));
    CHECK(g == parse_form("2*x0*x1", p2));

    auto z = apolar(parse_form("w1^3", d2), parse_form("x0^3", p2));
    CHECK(z.is_zero());
    CHECK(z.degree() == 0);

    CHECK_THROWS_AS(apolar(parse_form("w0^3", d2), parse_form("x0^2", p2)), degree_too_high);
    CHECK_THROWS_AS(apolar(parse_form("x0", p2), parse_form("x0^2", p2)), space_mismatch);
}

TEST_CASE("apolar pairing acts per factor on tensor spaces") {
    Space bi = Space::biprimal();
    Space bid = Space::bidual();
    CHECK(apolar_scalar(parse_form("w0*v0", bid), parse_form("x0*u0", bi)) == Rational(1));
    CHECK(apolar(parse_form("w0", Space({{VarKind::dual, 2}, {VarKind::dual2, 2}})), parse_form("x0^2*u1", bi)) ==
          parse_form("2*x0*u1", bi));
    // D_2(w0 v0, x0 x1 u0 v.. ) on f = x0 x1 u0 u1 -> x1 u1
    CHECK(apolar(parse_form("w0*v0", bid), parse_form("x0*x1*u0*u1", bi)) == parse_form("x1*u1", bi));
}

TEST_CASE("apolar bilinearity and derivative composition") {
    std::mt19937_64 rng(42);
    Space p2 = Space::primal(2);
    Space d2 = Space::dual(2);
    for (int it = 0; it < 100; ++it) {
        auto f = random_form(p2, {5}, rng);
        auto g = random_form(p2, {5}, rng);
        auto u = random_form(d2, {2}, rng);
        auto v = random_form(d2, {3}, rng);
        // bilinearity
        CHECK(apolar(u, f + g) == apolar(u, f) + apolar(u, g));
        CHECK(apolar(u + random_form(d2, {2}, rng), f).degree() == 3);
        // contraction law: D(uv, f) = D(u, D(v, f))
        CHECK(apolar(u * v, f) == apolar(u, apolar(v, f)));
    }
}

TEST_CASE("canonical dual basis pairs to the identity") {
    for (auto [dim, deg] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}}) {
        Space p = Space::primal(dim);
        auto basis = monomial_basis(p, {deg}, Rational(1));
        auto dual = dual_monomial_basis<Rational>(p, {deg}, Rational(1));
        auto m = pairing_matrix(dual, basis);
        CHECK(m == Matrix<Rational>::identity(static_cast<int>(basis.size()), Rational(1)));
    }
}

TEST_CASE("nondegeneracy: monomials against raw dual monomials is diagonal of factorials") {
    Space p = Space::primal(2);
    auto basis = monomial_basis(p, {4}, Rational(1));
    Space d = Space::dual(2);
    auto dual_raw = monomial_basis(d, {4}, Rational(1));
    auto m = pairing_matrix(dual_raw, basis);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j) CHECK(!m(i, j).is_zero());
            else CHECK(m(i, j).is_zero());
        }
    }
    CHECK(m(0, 0) == Rational(24));  // 4! for x0^4 against w0^4
}

TEST_CASE("substitute") {
    Space lift = Space::lift(3);
    Space p2 = Space::primal(2);
    auto ver = std::vector<Form<Rational>>{parse_form("x0^2", p2), parse_form("x0*x1", p2), parse_form("x1^2", p2)};

    CHECK(substitute(parse_form("X0*X2 - X1^2", lift), ver).is_zero());

    auto f = parse_form("X0", Space::lift(1));
    CHECK(substitute(f, {parse_form("x0^3 + x1^3", p2)}) == parse_form("x0^3 + x1^3", p2));

    // direct expansion: (x0^2)^2 - (x0 x1)(x1^2) = x0^4 - x0 x1^3
    auto q = substitute(parse_form("X0^2 - X1*X2", lift), ver);
    CHECK(q == parse_form("x0^4 - x0*x1^3", p2));

    CHECK_THROWS_AS(substitute(parse_form("X0 + X1", Space::lift(2)), ver), arity_mismatch);
    CHECK_THROWS_AS(substitute(parse_form("X0*X1 - X2^2", lift),
                               std::vector<Form<Rational>>{parse_form("x0^2", p2), parse_form("x1^2", p2), parse_form("x0", p2)}),
                    inhomogeneous_images);

    // ring homomorphism on random data
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        auto a = random_form(lift, {2}, rng, -5, 5);
        auto b = random_form(lift, {1}, rng, -5, 5);
        CHECK(substitute(a * b, ver) == substitute(a, ver) * substitute(b, ver));
    }
}

TEST_CASE("segre pullback") {
    Space lift = Space::lift(4);
    CHECK(segre_pullback(parse_form("X0*X3 - X1*X2", lift)).is_zero());
    auto cube = segre_pullback(parse_form("X0^3", lift));
    CHECK(cube == parse_form("x0^3*u0^3", Space::biprimal()));
    CHECK_THROWS_AS(segre_pullback(parse_form("X0^2", Space::lift(3))), wrong_arity);
}

TEST_CASE("multinomial identity brute force") {
    CHECK(multinomial_check(2, 1, 1));
    CHECK(multinomial_check(1, 3, 2));
    CHECK(multinomial_check(3, 2, 1));
    CHECK(multinomial_check(2, 2, 2));
    CHECK(detail::j_alpha_sum(3, 2, {3, 3}) == 20);  // binom(6;3,3) = 20
    CHECK_THROWS_AS(multinomial_check(6, 2, 1), input_error);
}

TEST_CASE("prime field reduction commutes with apolar evaluation") {
    std::mt19937_64 rng(99);
    Space p2 = Space::primal(2);
    Space d2 = Space::dual(2);
    const std::uint64_t p = kDefaultScreenPrime;
    auto reduce = [&](const Form<Rational>& f) { return f.map_coefficients<Fp>([&](const Rational& c) { return Fp::from_rational(c, p); }); };
    for (int it = 0; it < 20; ++it) {
        auto u = random_form(d2, {2}, rng);
        auto f = random_form(p2, {6}, rng);
        CHECK(reduce(apolar(u, f)) == apolar(reduce(u), reduce(f)));
    }
}
