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
#include "recon/primefield.hpp"
#include "recon/quadext.hpp"
#include "recon/rational.hpp"

using namespace recon;

TEST_CASE("rational arithmetic canonical examples") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational::from_string("-7/3") == Rational(-7, 3));
    CHECK(Rational::from_string("42") == Rational(42));
    CHECK_THROWS_AS(Rational(3).inv() * Rational(0).inv(), division_by_zero);
}

TEST_CASE("quadratic extension norm form") {
    QuadExt a(Rational(1), Rational(1), Int(2));   // 1 + sqrt(2)
    QuadExt b(Rational(1), Rational(-1), Int(2));  // 1 - sqrt(2)
    CHECK(a * b == QuadExt(Rational(-1)));
    CHECK(a.conj() == b);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.inv()).is_one());
    QuadExt c(Rational(0), Rational(1), Int(3));
    CHECK_THROWS_AS(a + c, mixed_field);
    CHECK(a + QuadExt(Rational(5)) == QuadExt(Rational(6), Rational(1), Int(2)));
    CHECK(a.str() == "1 + sqrt(2)");
    CHECK((-a).str() == "-1 - sqrt(2)");
}

TEST_CASE("prime field basics") {
    Fp three(3, 7);
    CHECK(three.inv().value() == 5);  // 3 * 5 = 15 = 1 mod 7
    CHECK((Fp(6, 7) + Fp(3, 7)).value() == 2);
    CHECK_THROWS_AS(Fp(0, 7).inv(), division_by_zero);
    CHECK_THROWS_AS(Fp(1, 7) + Fp(1, 11), mixed_field);

    Fp big(123456789, kDefaultScreenPrime);
    CHECK((big * big.inv()).value() == 1);

    // Tonelli-Shanks round trip
    std::mt19937_64 rng(0);
    for (int i = 0; i < 50; ++i) {
        Fp x(rng() % kDefaultScreenPrime, kDefaultScreenPrime);
        Fp sq = x * x;
        Fp r(0, kDefaultScreenPrime);
        REQUIRE(sq.sqrt(r));
        CHECK(r * r == sq);
    }
}

TEST_CASE("field axioms over randomized triples") {
    std::mt19937_64 rng(12345);
    auto rand_rational = [&]() {
        long n = static_cast<long>(rng() % 2001) - 1000;
        long d = 1 + static_cast<long>(rng() % 50);
        return Rational(Int(n), Int(d));
    };
    for (int i = 0; i < 10000; ++i) {
        Rational a = rand_rational(), b = rand_rational();
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
    for (int i = 0; i < 10000; ++i) {
        QuadExt a(rand_rational(), rand_rational(), Int(5));
        QuadExt b(rand_rational(), rand_rational(), Int(5));
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
    for (int i = 0; i < 10000; ++i) {
        Fp a(rng() % kDefaultScreenPrime, kDefaultScreenPrime);
        Fp b(rng() % kDefaultScreenPrime, kDefaultScreenPrime);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("sqrt_or_extend") {
    {
        auto [v, rec] = sqrt_or_extend(Rational(9, 4));
        CHECK(v == QuadExt(Rational(3, 2)));
        CHECK(rec.trivial());
    }
    {
        auto [v, rec] = sqrt_or_extend(Rational(2));
        CHECK(v == QuadExt(Rational(0), Rational(1), Int(2)));
        REQUIRE(!rec.trivial());
        CHECK(*rec.radicand == 2);
    }
    {
        // 8/9 = (4/9) * 2, so sqrt = (2/3) sqrt(2)
        auto [v, rec] = sqrt_or_extend(Rational(8, 9));
        CHECK(v == QuadExt(Rational(0), Rational(2, 3), Int(2)));
        REQUIRE(!rec.trivial());
        CHECK(*rec.radicand == 2);
    }
    {
        auto [v, rec] = sqrt_or_extend(Rational(-4));
        CHECK(v == QuadExt(Rational(0), Rational(2), Int(-1)));
        CHECK(*rec.radicand == -1);
    }
    CHECK_THROWS_AS(sqrt_or_extend(Rational(0)), division_by_zero);

    // squarefree decomposition invariants on small numbers
    for (long n = 1; n <= 500; ++n) {
        auto dec = squarefree_part(Int(n));
        CHECK(dec.certified);
        CHECK(dec.squarefree * dec.root * dec.root == n);
        for (long p = 2; p * p <= n; ++p) CHECK(dec.squarefree % (p * p) != 0);
    }
}

TEST_CASE("prime field reduction is a ring homomorphism") {
    std::mt19937_64 rng(777);
    const std::uint64_t p = kDefaultScreenPrime;
    for (int i = 0; i < 200; ++i) {
        Rational a(Int(static_cast<long>(rng() % 1999) - 999), Int(1 + static_cast<long>(rng() % 97)));
        Rational b(Int(static_cast<long>(rng() % 1999) - 999), Int(1 + static_cast<long>(rng() % 97)));
        CHECK(Fp::from_rational(a + b, p) == Fp::from_rational(a, p) + Fp::from_rational(b, p));
        CHECK(Fp::from_rational(a * b, p) == Fp::from_rational(a, p) * Fp::from_rational(b, p));
    }
}
