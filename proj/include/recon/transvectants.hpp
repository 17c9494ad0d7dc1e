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

#ifndef RECON_TRANSVECTANTS_HPP
#define RECON_TRANSVECTANTS_HPP

#include <array>
#include <vector>

#include "recon/form.hpp"

namespace recon {

namespace detail {

template <class K>
void check_char(const Form<K>& f, int bound) {
    if (f.is_zero()) return;
    Int ch = FieldOps<K>::characteristic(f.terms().begin()->second);
    if (ch > 0 && ch <= bound) throw characteristic_guard("prime backend needs p above the working degree");
}

}  // namespace detail

/// Transvectant with one level per space factor:
///   sum over splits i_k of prod (-1)^{i_k} C(l_k, i_k)
///   d^{l} f / dx_{k,0}^{i_k} dx_{k,1}^{l_k - i_k} * d^{l} g / (complementary)
/// Factors with level 0 are left untouched (their variables just multiply),
/// which makes this the binary transvectant for one factor, the bi-level
/// (l, m) transvectant for two, and a coefficient-ring transvectant when a
/// spectator factor carries level 0.
template <class K>
Form<K> transvect_multi(const Form<K>& f, const Form<K>& g, const std::vector<int>& levels) {
    if (!(f.space() == g.space())) throw space_mismatch("transvectant of forms over different spaces");
    const Space& s = f.space();
    if (static_cast<int>(levels.size()) != s.nfactors()) throw arity_mismatch("one level per space factor");
    for (int k = 0; k < s.nfactors(); ++k) {
        int l = levels[static_cast<std::size_t>(k)];
        if (l == 0) continue;
        if (s.factor(k).dim != 2) throw space_mismatch("positive level on a non-binary factor");
        if (l < 0 || l > f.degree(k) || l > g.degree(k)) throw level_too_high("level exceeds factor degree");
    }
    detail::check_char(f, f.degree() + g.degree());
    detail::check_char(g, f.degree() + g.degree());

    std::vector<int> out_degs(static_cast<std::size_t>(s.nfactors()));
    for (int k = 0; k < s.nfactors(); ++k) out_degs[static_cast<std::size_t>(k)] = f.degree(k) + g.degree(k) - 2 * levels[static_cast<std::size_t>(k)];
    Form<K> result(s, out_degs);

    // enumerate the split (i_k) per factor with positive level
    std::vector<int> active;
    for (int k = 0; k < s.nfactors(); ++k)
        if (levels[static_cast<std::size_t>(k)] > 0) active.push_back(k);

    std::vector<int> split(active.size(), 0);
    auto apply_derivs = [&](const Form<K>& h, bool complement) {
        Form<K> d = h;
        for (std::size_t a = 0; a < active.size(); ++a) {
            int k = active[a];
            int l = levels[static_cast<std::size_t>(k)];
            int i = split[a];
            int v0 = s.var_offset(k);
            int d0 = complement ? l - i : i;
            int d1 = complement ? i : l - i;
            if (d0 > 0) d = d.derivative(v0, d0);
            if (d.is_zero() && d0 > 0) return d;
            if (d1 > 0) d = d.derivative(v0 + 1, d1);
        }
        return d;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == active.size()) {
            Int coeff = 1;
            int sign = 0;
            for (std::size_t t = 0; t < active.size(); ++t) {
                coeff *= binomial(static_cast<unsigned long>(levels[static_cast<std::size_t>(active[t])]), static_cast<unsigned long>(split[t]));
                sign += split[t];
            }
            if (sign % 2 == 1) coeff = -coeff;
            Form<K> df = apply_derivs(f, false);
            if (df.is_zero()) return;
            Form<K> dg = apply_derivs(g, true);
            if (dg.is_zero()) return;
            Form<K> term = df * dg;
            result = result + term.scaled(FieldOps<K>::from_int(coeff, term.is_zero() ? K{} : term.lead_coefficient()));
            return;
        }
        int l = levels[static_cast<std::size_t>(active[a])];
        for (int i = 0; i <= l; ++i) {
            split[a] = i;
            rec(a + 1);
        }
    };
    rec(0);
    return result;
}

/// Binary transvectant of level l.
template <class K>
Form<K> transvect(const Form<K>& f, const Form<K>& g, int l) {
    if (f.space().nfactors() != 1 || f.space().factor(0).dim != 2) throw space_mismatch("binary transvectant needs one 2-variable factor");
    return transvect_multi(f, g, {l});
}

/// Double-binary transvectant of bi-level (l, m); (f,g)_l abbreviates l = m.
template <class K>
Form<K> transvect2(const Form<K>& f, const Form<K>& g, int l, int m) {
    if (f.space().nfactors() != 2) throw space_mismatch("bi-level transvectant needs a two-factor space");
    return transvect_multi(f, g, {l, m});
}

template <class K>
Form<K> transvect2(const Form<K>& f, const Form<K>& g, int l) {
    return transvect2(f, g, l, l);
}

/// tau_r: x0^i x1^j -> r! (-1)^i w0^j w1^i. Bridges the binary transvectant
/// to the apolarity pairing: D(tau(C), C') = (C, C')_{deg C}.
template <class K>
Form<K> tau(const Form<K>& c) {
    if (c.space().nfactors() != 1 || c.space().factor(0).dim != 2) throw space_mismatch("tau needs a binary form");
    const int r = c.degree();
    detail::check_char(c, r);
    Form<K> out(c.space().opposite(), r);
    Int rf = factorial(static_cast<unsigned long>(r));
    for (const auto& [e, k] : c.terms()) {
        Int sc = (e[0] % 2 == 1) ? Int(-rf) : rf;
        out.add_term(ExpVec{e[1], e[0]}, k * FieldOps<K>::from_int(sc, k));
    }
    return out;
}

/// tau_{d,e}: x^i y^j u^l v^m -> (-1)^{i+l} d! e! x^j y^i u^m v^l on the dual
/// side; the double-binary bridge D_2(tau2(C), C') = (C, C')_{(d,e)}.
template <class K>
Form<K> tau2(const Form<K>& c) {
    if (c.space().nfactors() != 2) throw space_mismatch("tau2 needs a double-binary form");
    const int d = c.degree(0), e = c.degree(1);
    detail::check_char(c, std::max(d, e));
    Form<K> out(c.space().opposite(), std::vector<int>{d, e});
    Int sc0 = factorial(static_cast<unsigned long>(d)) * factorial(static_cast<unsigned long>(e));
    for (const auto& [ee, k] : c.terms()) {
        Int sc = ((ee[0] + ee[2]) % 2 == 1) ? Int(-sc0) : sc0;
        out.add_term(ExpVec{ee[1], ee[0], ee[3], ee[2]}, k * FieldOps<K>::from_int(sc, k));
    }
    return out;
}

namespace detail {

template <class K>
Form<K> embed_in_factor(const Form<K>& f, const Space& big, int factor) {
    Form<K> out(big, [&] {
        std::vector<int> degs(static_cast<std::size_t>(big.nfactors()), 0);
        degs[static_cast<std::size_t>(factor)] = f.degree();
        return degs;
    }());
    int off = big.var_offset(factor);
    for (const auto& [e, c] : f.terms()) {
        ExpVec v(static_cast<std::size_t>(big.total_dim()), 0);
        for (std::size_t i = 0; i < e.size(); ++i) v[static_cast<std::size_t>(off) + i] = e[i];
        out.add_term(v, c);
    }
    return out;
}

}  // namespace detail

/// Ternary transvectant: apply the Omega process (the 3x3 determinant of
/// partials, one column per tagged argument copy) l times to
/// f(x^(1)) g(x^(2)) h(x^(3)), then identify the three copies.
/// Result degree is deg f + deg g + deg h - 3l.
template <class K>
Form<K> omega_transvect3(const Form<K>& f, const Form<K>& g, const Form<K>& h, int l) {
    const Space& s = f.space();
    if (s.nfactors() != 1 || s.factor(0).dim != 3) throw space_mismatch("omega transvectant needs ternary forms");
    if (!(g.space() == s) || !(h.space() == s)) throw space_mismatch("omega transvectant arguments over different spaces");
    if (l > f.degree() || l > g.degree() || l > h.degree()) throw level_too_high("omega level exceeds an argument degree");
    detail::check_char(f, f.degree() + g.degree() + h.degree());

    VarKind kind = s.factor(0).kind;
    Space tagged({{kind, 3}, {kind, 3}, {kind, 3}});
    Form<K> t = detail::embed_in_factor(f, tagged, 0) * detail::embed_in_factor(g, tagged, 1) * detail::embed_in_factor(h, tagged, 2);

    static constexpr std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    static constexpr std::array<int, 6> signs{1, 1, 1, -1, -1, -1};
    for (int step = 0; step < l; ++step) {
        std::vector<int> degs = t.degrees();
        for (auto& d : degs) d -= 1;
        Form<K> next(tagged, degs);
        for (int p = 0; p < 6; ++p) {
            Form<K> d = t;
            for (int copy = 0; copy < 3 && !d.is_zero(); ++copy) d = d.derivative(3 * copy + perms[static_cast<std::size_t>(p)][static_cast<std::size_t>(copy)]);
            if (d.is_zero()) continue;
            if (signs[static_cast<std::size_t>(p)] < 0) d = -d;
            next = next + d;
        }
        t = next;
    }

    Form<K> out(s, f.degree() + g.degree() + h.degree() - 3 * l);
    for (const auto& [e, c] : t.terms()) {
        ExpVec v{e[0] + e[3] + e[6], e[1] + e[4] + e[7], e[2] + e[5] + e[8]};
        out.add_term(v, c);
    }
    return out;
}

enum class BinaryQuarticInvariant { I, J };

/// Clebsch transfer of a binary-quartic invariant to a ternary quartic:
/// restrict A to the generic line (z2 s, z2 t, -(z0 s + z1 t)), evaluate the
/// invariant of the resulting binary quartic in (s, t) over the coefficient
/// ring in z, and divide by the forced power of z2. The I-transfer of a form
/// of order 4 has order 4 and doubles the degree; the J-transfer has order 6
/// and triples it. The output lives in the opposite variable kind, which is
/// the primed-operator convention of the covariant tables.
template <class K>
Form<K> clebsch_transfer(const Form<K>& a, BinaryQuarticInvariant which) {
    const Space& s = a.space();
    if (s.nfactors() != 1 || s.factor(0).dim != 3) throw space_mismatch("clebsch transfer needs a ternary form");
    if (a.degree() != 4) throw degree_mismatch("clebsch transfer implemented for quartics");
    VarKind out_kind = opposite_kind(s.factor(0).kind);
    Space scratch({{s.factor(0).kind, 2}, {out_kind, 3}});

    K like = a.is_zero() ? K{} : a.lead_coefficient();
    K one = FieldOps<K>::one(like);
    auto mono = [&](int svar, int zvar, bool neg) {
        ExpVec e(5, 0);
        e[static_cast<std::size_t>(svar)] = 1;
        e[static_cast<std::size_t>(2 + zvar)] = 1;
        return Form<K>::monomial(scratch, e, neg ? FieldOps<K>::neg(one) : one);
    };
    // x0 -> z2 s, x1 -> z2 t, x2 -> -(z0 s + z1 t)
    std::vector<Form<K>> images{mono(0, 2, false), mono(1, 2, false), mono(0, 0, true) + mono(1, 1, true)};
    Form<K> b = substitute(a, images);

    Form<K> inv;
    int z2_power = 0;
    if (which == BinaryQuarticInvariant::I) {
        inv = transvect_multi(b, b, {4, 0});
        z2_power = 4;
    } else {
        Form<K> b2 = transvect_multi(b, b, {2, 0});
        inv = transvect_multi(b2, b, {4, 0});
        z2_power = 6;
    }

    // inv has (s,t)-degree 0; strip the first factor and divide by z2^k.
    Form<K> out(Space({{out_kind, 3}}), inv.degree(1) - z2_power);
    for (const auto& [e, c] : inv.terms()) {
        if (e[4] < z2_power) throw math_error("TransferDivision", "transfer numerator not divisible by the expected z2 power");
        out.add_term(ExpVec{e[2], e[3], e[4] - z2_power}, c);
    }
    return out;
}

}  // namespace recon

#endif
