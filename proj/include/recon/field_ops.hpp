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

#ifndef RECON_FIELD_OPS_HPP
#define RECON_FIELD_OPS_HPP

#include <string>

#include "recon/primefield.hpp"
#include "recon/quadext.hpp"
#include "recon/rational.hpp"

namespace recon {

/// Uniform scalar interface for the templated polynomial layer. The `like`
/// argument supplies runtime field context (the modulus of F_p); rationals
/// and quadratic extensions ignore it.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static Rational one(const Rational&) { return Rational(1); }
    static Rational neg(const Rational& a) { return -a; }
    static Rational inverse(const Rational& a) { return a.inv(); }
    static Rational from_int(const Int& n, const Rational&) { return Rational(n); }
    static Rational from_rational(const Rational& q, const Rational&) { return q; }
    static Int characteristic(const Rational&) { return Int(0); }
    static std::string str(const Rational& a) { return a.str(); }
};

template <>
struct FieldOps<QuadExt> {
    static bool is_zero(const QuadExt& a) { return a.is_zero(); }
    static QuadExt one(const QuadExt&) { return QuadExt(Rational(1)); }
    static QuadExt neg(const QuadExt& a) { return -a; }
    static QuadExt inverse(const QuadExt& a) { return a.inv(); }
    static QuadExt from_int(const Int& n, const QuadExt&) { return QuadExt(Rational(n)); }
    static QuadExt from_rational(const Rational& q, const QuadExt&) { return QuadExt(q); }
    static Int characteristic(const QuadExt&) { return Int(0); }
    static std::string str(const QuadExt& a) { return a.str(); }
};

template <>
struct FieldOps<Fp> {
    static bool is_zero(const Fp& a) { return a.is_zero(); }
    static Fp one(const Fp& like) { return Fp(1, like.modulus()); }
    static Fp neg(const Fp& a) { return -a; }
    static Fp inverse(const Fp& a) { return a.inv(); }
    static Fp from_int(const Int& n, const Fp& like) { return Fp::from_int(n, like.modulus()); }
    static Fp from_rational(const Rational& q, const Fp& like) { return Fp::from_rational(q, like.modulus()); }
    static Int characteristic(const Fp& like) { return Int(like.modulus()); }
    static std::string str(const Fp& a) { return a.str(); }
};

}  // namespace recon

#endif
