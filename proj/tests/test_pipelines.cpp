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
#include "recon/pipelines.hpp"
#include "recon/poly_parse.hpp"

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

}  // namespace

TEST_CASE("battery construction is deterministic and sized") {
    for (const char* id : {"binary-5", "binary-6", "binary-7", "sum-6-4", "bicubic-3-3", "ternary-4"}) {
        Battery a = battery_for(id);
        Battery b = battery_for(id);
        REQUIRE(a.entries.size() >= 8);
        CHECK(a.entries.size() <= 15);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            CHECK(a.entries[i].expr->name == b.entries[i].expr->name);
            CHECK(a.entries[i].weight == b.entries[i].weight);
            CHECK(a.entries[i].weight > 0);
        }
    }
    CHECK_THROWS_AS(battery_for("quaternary-9"), battery_undefined);
}

TEST_CASE("fingerprints scale by lambda^weight and detect inequivalence") {
    std::mt19937_64 rng(31);
    Space p2 = Space::primal(2);
    Battery battery = battery_for("binary-6");
    auto f = random_form(p2, {6}, rng);

    auto fp1 = fingerprint(std::vector<Form<Rational>>{f}, battery);
    CHECK(fingerprint_equal(fp1, fp1));

    // scaling: values of degree g scale by 2^g, one lambda fits all
    auto fp2 = fingerprint(std::vector<Form<Rational>>{f.scaled(Rational(2))}, battery);
    CHECK(fingerprint_equal(fp1, fp2));
    for (std::size_t i = 0; i < fp2.entries.size(); ++i) {
        Int two_pow = pow(Int(2), static_cast<unsigned long>(fp1.entries[i].degree));
        QuadExt expect = fp1.entries[i].value * QuadExt(Rational(two_pow));
        CHECK(fp2.entries[i].value == expect);
    }

    // determinant-1 substitution x0 -> x0 + 3 x1 leaves every value fixed
    std::vector<Form<Rational>> images;
    images.push_back(parse_form("x0 + 3*x1", p2));
    images.push_back(parse_form("x1", p2));
    auto fp3 = fingerprint(std::vector<Form<Rational>>{substitute(f, images)}, battery);
    for (std::size_t i = 0; i < fp3.entries.size(); ++i) CHECK(fp3.entries[i].value == fp1.entries[i].value);
    CHECK(fingerprint_equal(fp1, fp3));

    // diag(2, 1/2) has determinant 1
    std::vector<Form<Rational>> diag;
    diag.push_back(parse_form("2*x0", p2));
    diag.push_back(parse_form("1/2*x1", p2));
    auto fp4 = fingerprint(std::vector<Form<Rational>>{substitute(f, diag)}, battery);
    CHECK(fingerprint_equal(fp1, fp4));

    // a genuinely different form fails with overwhelming probability
    auto g = f + parse_form("x0^6", p2);
    auto fpg = fingerprint(std::vector<Form<Rational>>{g}, battery);
    CHECK(!fingerprint_equal(fp1, fpg));

    CHECK_THROWS_AS(fingerprint_equal(fp1, fingerprint(std::vector<Form<Rational>>{random_form(p2, {5}, rng)}, battery_for("binary-5"))),
                    battery_mismatch);
}

TEST_CASE("odd binary round trip") {
    std::mt19937_64 rng(37);
    Space p2 = Space::primal(2);
    for (int it = 0; it < 3; ++it) {
        auto f = random_form(p2, {5}, rng, -20, 20);
        auto result = reconstruct_binary_odd(f);
        CHECK(result.verified);
        CHECK(result.extension.trivial());
    }
    CHECK_THROWS_AS(reconstruct_binary_odd(parse_form("x0^5", p2)), math_error);
}

TEST_CASE("even binary round trip") {
    std::mt19937_64 rng(41);
    Space p2 = Space::primal(2);
    for (int it = 0; it < 3; ++it) {
        auto f = random_form(p2, {6}, rng, -20, 20);
        auto result = reconstruct_binary_even(f);
        CHECK(result.verified);
        if (!result.extension.trivial()) CHECK(result.extension.radicand.has_value());
    }
}

TEST_CASE("sum 6+4 round trip and degenerate input") {
    std::mt19937_64 rng(43);
    Space p2 = Space::primal(2);
    for (int it = 0; it < 2; ++it) {
        auto f6 = random_form(p2, {6}, rng, -20, 20);
        auto f4 = random_form(p2, {4}, rng, -20, 20);
        auto result = reconstruct_sum_6_4(f6, f4);
        CHECK(result.verified);
        REQUIRE(result.forms.size() == 2);
        CHECK(result.forms[0].degree() == 6);
        CHECK(result.forms[1].degree() == 4);
    }
    Form<Rational> zero4(p2, 4);
    CHECK_THROWS_AS(reconstruct_sum_6_4(random_form(p2, {6}, rng), zero4), not_independent_at_f);
}

TEST_CASE("genus 3 round trip and golden lift coefficient") {
    std::mt19937_64 rng(47);
    Space p3 = Space::primal(3);
    auto f = random_form(p3, {4}, rng, -9, 9);
    auto result = reconstruct_genus3(f);
    CHECK(result.verified);
    CHECK(result.extension.trivial());

    // with the paper's printed contravariants as the dual family, the x0^4
    // lift coefficient is the printed 94-digit integer, exactly
    auto paper_f = parse_form(
        "-745*x0^3*x2 - 6705*x0^2*x1*x2 - 75990*x0^2*x2^2 - 1788*x0*x1^3 - 36207*x0*x1^2*x2 "
        "- 571266*x0*x1*x2^2 - 1827336*x0*x2^3 - 7152*x1^4 - 123819*x1^3*x2 - 1834488*x1^2*x2^2 "
        "+ 950004*x1*x2^3 - 631522*x2^4",
        p3);
    Space d3 = Space::dual(3);
    std::vector<Form<Rational>> printed{
        parse_form("-36028900960739935302662*w0 + 2546868783781471003910*w1 - 207634621252481717745*w2", d3),
        parse_form("-167266167826007043607549539758*w0 + 11957094310556682023883659540*w1 - 996728625589442333471190105*w2", d3),
        parse_form("-2137425487531362504044770*w0 + 192739452116090004098632*w1 - 4823065036939209106179*w2", d3)};
    auto lift = build_lift_apolar(printed, paper_f, 4);
    CHECK(lift.coefficient({4, 0, 0}) ==
          Rational::from_string("-151647765305065905238548582432828758523321832584926229590543175552953534711319971363994226800"));
}

TEST_CASE("fermat quartic terminates with a typed result") {
    Space p3 = Space::primal(3);
    auto fermat = parse_form("x0^4 + x1^4 + x2^4", p3);
    try {
        auto result = reconstruct_genus3(fermat);
        CHECK(result.verified);  // if the chain survives, the round trip must still close
    } catch (const math_error& e) {
        CHECK(std::string(e.kind()).size() > 0);
    }
}

TEST_CASE("genus 4 rank 4 golden reconstruction") {
    Space lift = Space::lift(4);
    auto q = parse_form("X0*X3 - X1*X2", lift);
    auto e = parse_form(
        "X0^2*X1 + X0^2*X2 + X0^2*X3 + X0*X1^2 + X0*X1*X2 + X0*X2^2 + X0*X2*X3 + X0*X3^2 "
        "+ X1^2*X2 + X1*X2^2 + X1*X2*X3 + X1*X3^2 + X3^3",
        lift);
    auto model = reconstruct_genus4_rank4(q, e);
    CHECK(model.verified);
    CHECK(model.rank == 4);
    auto printed_q = parse_form(
        "646*X0^2 - 6536*X0*X1 - 130084*X0*X2 - 1923144*X0*X3 - 19264*X1^2 - 549500*X1*X2 "
        "- 6275840*X1*X3 - 4598186*X2^2 - 78659100*X2*X3 - 143255872*X3^2",
        lift);
    auto printed_e = parse_form(
        "-87337008*X0^3 + 69815520*X0^2*X1 - 3596033232*X0^2*X2 + 178527014496*X0^2*X3 - 629045568*X0*X1^2 "
        "- 13790445696*X0*X1*X2 - 435571233408*X0*X1*X3 - 147774846096*X0*X2^2 + 586163101824*X0*X2*X3 "
        "- 162711651196224*X0*X3^2 + 489595536*X1^3 + 31071365856*X1^2*X2 + 625393402416*X1^2*X3 "
        "+ 676666128096*X1*X2^2 + 20257026499008*X1*X2*X3 + 246651902537904*X1*X3^2 + 4187892749328*X2^3 "
        "+ 229585773241440*X2^2*X3 + 1868504372517600*X2*X3^2 + 47848070690492688*X3^3",
        lift);
    auto lam_q = proportionality(detail::to_ext(printed_q), model.quadric);
    REQUIRE(lam_q.has_value());
    CHECK(!lam_q->is_zero());
    auto lam_e = proportionality(detail::to_ext(printed_e), model.cubic);
    REQUIRE(lam_e.has_value());
    CHECK(!lam_e->is_zero());
}

TEST_CASE("genus 4 failure modes") {
    Space lift = Space::lift(4);
    // S5-symmetric curve: catalog invariants vanish
    auto q = parse_form(
        "2*X0^2 + 2*X1^2 + 2*X2^2 + 2*X3^2 + 2*X0*X1 + 2*X0*X2 + 2*X0*X3 + 2*X1*X2 + 2*X1*X3 + 2*X2*X3",
        lift);
    auto e = parse_form(
        "-3*X0^2*X1 - 3*X0^2*X2 - 3*X0^2*X3 - 3*X0*X1^2 - 6*X0*X1*X2 - 6*X0*X1*X3 - 3*X0*X2^2 - 6*X0*X2*X3 "
        "- 3*X0*X3^2 - 3*X1^2*X2 - 3*X1^2*X3 - 3*X1*X2^2 - 6*X1*X2*X3 - 3*X1*X3^2 - 3*X2^2*X3 - 3*X2*X3^2",
        lift);
    CHECK_THROWS_AS(reconstruct_genus4_rank4(q, e), not_independent_at_f);

    // rank-3 quadric gets a routing hint
    auto q3 = parse_form("X0^2 + X1*X2", lift, std::vector<int>{2});
    auto e3 = parse_form("X0^3 + X3^3", lift);
    CHECK_THROWS_AS(reconstruct_genus4_rank4(q3, e3), wrong_rank);
}

TEST_CASE("genus 4 rank 3 model") {
    std::mt19937_64 rng(53);
    Space p2 = Space::primal(2);
    auto f6 = random_form(p2, {6}, rng, -9, 9);
    auto f4 = random_form(p2, {4}, rng, -9, 9);
    auto model = reconstruct_genus4_rank3(f6, f4);
    CHECK(model.rank == 3);
    CHECK(model.verified);
    // the cubic has unit X3^3 coefficient and no X3^2 term
    CHECK(model.cubic.coefficient({0, 0, 0, 3}) == QuadExt(Rational(1)));
    for (const auto& [e, c] : model.cubic.terms()) CHECK(e[3] != 2);
    // the quadric does not involve X3
    for (const auto& [e, c] : model.quadric.terms()) CHECK(e[3] == 0);
}

TEST_CASE("genus 4 round trip on a transformed segre model") {
    std::mt19937_64 rng(59);
    Space lift = Space::lift(4);
    auto segre = parse_form("X0*X3 - X1*X2", lift);
    // unimodular image of the segre quadric and a random cubic
    Matrix<Rational> mtx = Matrix<Rational>::identity(4, Rational(1));
    for (int step = 0; step < 6; ++step) {
        int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 4);
        if (a == b) continue;
        long t = static_cast<long>(rng() % 3) - 1;
        for (int r = 0; r < 4; ++r) mtx(r, a) = mtx(r, a) + Rational(t) * mtx(r, b);
    }
    std::vector<Form<Rational>> images;
    for (int i = 0; i < 4; ++i) {
        Form<Rational> img(lift, 1);
        for (int j = 0; j < 4; ++j) {
            ExpVec ev(4, 0);
            ev[static_cast<std::size_t>(j)] = 1;
            img.add_term(ev, mtx(i, j));
        }
        images.push_back(img);
    }
    auto q = substitute(segre, images);
    auto e = random_form(lift, {3}, rng, -5, 5);
    auto model = reconstruct_genus4_rank4(q, e);
    CHECK(model.verified);
}
