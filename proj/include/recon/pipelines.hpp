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

#ifndef RECON_PIPELINES_HPP
#define RECON_PIPELINES_HPP

#include <string>
#include <vector>

#include "recon/catalogs.hpp"
#include "recon/reconengine.hpp"

namespace recon {

// ---------------------------------------------------------------------------
// Invariant fingerprints
// ---------------------------------------------------------------------------

/// One invariant of a fixed battery: the expression, its weight (the
/// determinant exponent of the transformation law) and its degree split over
/// the input slots.
struct BatteryEntry {
    CovExprPtr expr;
    Int weight;
};

/// A fixed, deterministic list of order-zero covariant expressions used as a
/// necessary-condition oracle for equivalence. Batteries are generated
/// structurally (no dependence on the form being fingerprinted) and members
/// that vanish on a fixed integer witness are dropped once at build time.
struct Battery {
    std::string id;
    std::vector<BatteryEntry> entries;
    int nslots = 1;
};

namespace detail {

inline Int battery_weight(const CovExpr& e, const std::vector<int>& slot_source_degrees, int n_plus_1) {
    Int num = 0;
    for (std::size_t s = 0; s < e.slot_degrees.size(); ++s) num += Int(slot_source_degrees[s]) * e.slot_degrees[s];
    num += e.variance == Variance::covariant ? -e.total_order() : e.total_order();
    if (num % n_plus_1 != 0) throw math_error("WeightNotIntegral", e.name);
    return num / n_plus_1;
}

/// Deterministic dense integer witness with small mixed coefficients.
inline Form<Rational> battery_witness(const Space& s, const std::vector<int>& degs) {
    Form<Rational> f(s, degs);
    long state = 7;
    for (const auto& e : canonical_exponents(s, degs)) {
        state = (state * 31 + 17) % 101;
        f.add_term(e, Rational(state - 50 == 0 ? 1 : state - 50));
    }
    return f;
}

/// Structural enumeration of order-zero binary covariant expressions of a
/// degree-k leaf, breadth first, capped and deduplicated by name.
inline Battery make_binary_battery(int k, std::size_t want = 10) {
    Battery b;
    b.id = "binary-" + std::to_string(k);
    auto leaf = CovExpr::leaf_form(0, {2}, {k}, "f");
    std::vector<CovExprPtr> pool{leaf};
    Form<Rational> wit = battery_witness(Space::primal(2), {k});
    CovEvaluator<Rational> ev({wit});
    std::vector<int> src{k};
    auto consider = [&](const CovExprPtr& e) {
        if (b.entries.size() >= want) return;
        if (e->orders[0] == 0) {
            if (ev.value(e).is_zero()) return;  // degenerate member, skip deterministically
            b.entries.push_back({e, battery_weight(*e, src, 2)});
        }
    };
    std::size_t level_begin = 0;
    for (int depth = 1; depth <= 4 && b.entries.size() < want && pool.size() < 400; ++depth) {
        std::size_t level_end = pool.size();
        for (std::size_t a = 0; a < level_end && b.entries.size() < want; ++a) {
            std::size_t b_lo = std::max(a, level_begin);
            for (std::size_t bi = b_lo; bi < level_end && b.entries.size() < want; ++bi) {
                CovExprPtr ea = pool[a], eb = pool[bi];
                if (ea->degree + eb->degree > 12) continue;
                int lmax = std::min(ea->orders[0], eb->orders[0]);
                for (int l = 1; l <= lmax && b.entries.size() < want; ++l) {
                    if (a == bi && l % 2 == 1) continue;
                    if (ea->orders[0] + eb->orders[0] - 2 * l > 2 * k) continue;
                    auto e = CovExpr::transvectant(ea, eb, l);
                    consider(e);
                    if (e->orders[0] > 0 && pool.size() < 400) pool.push_back(e);
                }
            }
        }
        level_begin = level_end;
    }
    if (b.entries.empty()) throw battery_undefined("no invariants found for binary degree " + std::to_string(k));
    return b;
}

/// Battery of joint invariants of a (Sym^6, Sym^4) pair.
inline Battery make_sum64_battery(std::size_t want = 10) {
    Battery b;
    b.id = "sum-6-4";
    b.nslots = 2;
    auto f6 = CovExpr::leaf_form(0, {2}, {6}, "f6");
    auto f4 = CovExpr::leaf_form(1, {2}, {4}, "f4");
    std::vector<CovExprPtr> pool{f6, f4};
    Space p2 = Space::primal(2);
    std::vector<Form<Rational>> wit{battery_witness(p2, {6}), battery_witness(p2, {4})};
    CovEvaluator<Rational> ev(wit);
    std::vector<int> src{6, 4};
    auto consider = [&](const CovExprPtr& e) {
        if (b.entries.size() >= want) return;
        if (e->orders[0] == 0) {
            if (ev.value(e).is_zero()) return;
            b.entries.push_back({e, battery_weight(*e, src, 2)});
        }
    };
    std::size_t level_begin = 0;
    for (int depth = 1; depth <= 3 && b.entries.size() < want && pool.size() < 300; ++depth) {
        std::size_t level_end = pool.size();
        for (std::size_t a = 0; a < level_end && b.entries.size() < want; ++a) {
            std::size_t b_lo = std::max(a, level_begin);
            for (std::size_t bi = b_lo; bi < level_end && b.entries.size() < want; ++bi) {
                CovExprPtr ea = pool[a], eb = pool[bi];
                if (ea->degree + eb->degree > 8) continue;
                int lmax = std::min(ea->orders[0], eb->orders[0]);
                for (int l = 1; l <= lmax && b.entries.size() < want; ++l) {
                    if (a == bi && l % 2 == 1) continue;
                    if (ea->orders[0] + eb->orders[0] - 2 * l > 12) continue;
                    auto e = CovExpr::transvectant(ea, eb, l);
                    consider(e);
                    if (e->orders[0] > 0 && pool.size() < 300) pool.push_back(e);
                }
            }
        }
        level_begin = level_end;
    }
    return b;
}

/// Battery for bicubic forms. Only symmetric bi-levels appear, so every
/// member is equivariant under the factor swap and fingerprints are stable
/// across the choice of Segre ruling.
inline Battery make_bicubic_battery(std::size_t want = 10) {
    Battery b;
    b.id = "bicubic-3-3";
    auto leaf = CovExpr::leaf_form(0, {2, 2}, {3, 3}, "f");
    std::vector<CovExprPtr> pool{leaf};
    Form<Rational> wit = battery_witness(Space::biprimal(), {3, 3});
    CovEvaluator<Rational> ev({wit});
    auto weight_of = [&](const CovExpr& e) {
        // order (0,0) member of degree g: each factor contributes weight 3g/2
        Int num = Int(3) * e.degree;
        if (num % 2 != 0) throw math_error("WeightNotIntegral", e.name);
        return num / 2;
    };
    auto consider = [&](const CovExprPtr& e) {
        if (b.entries.size() >= want) return;
        if (e->orders == std::vector<int>{0, 0}) {
            if (ev.value(e).is_zero()) return;
            b.entries.push_back({e, weight_of(*e)});
        }
    };
    std::size_t level_begin = 0;
    for (int depth = 1; depth <= 3 && b.entries.size() < want && pool.size() < 300; ++depth) {
        std::size_t level_end = pool.size();
        for (std::size_t a = 0; a < level_end && b.entries.size() < want; ++a) {
            std::size_t b_lo = std::max(a, level_begin);
            for (std::size_t bi = b_lo; bi < level_end && b.entries.size() < want; ++bi) {
                CovExprPtr ea = pool[a], eb = pool[bi];
                if (ea->degree + eb->degree > 8) continue;
                int lmax = std::min(std::min(ea->orders[0], eb->orders[0]), std::min(ea->orders[1], eb->orders[1]));
                for (int l = 1; l <= lmax && b.entries.size() < want; ++l) {
                    auto e = CovExpr::transvectant2(ea, eb, l, l);
                    if (a == bi && ev.value(e).is_zero()) continue;  // symmetric self-pairs may vanish
                    consider(e);
                    if (e->total_order() > 0 && pool.size() < 300) pool.push_back(e);
                }
            }
        }
        level_begin = level_end;
    }
    return b;
}

/// Battery for ternary quartics, from the genus-3 chain.
inline Battery make_ternary_quartic_battery() {
    Battery b;
    b.id = "ternary-4";
    auto cat = genus3_catalog();
    using E = CovExpr;
    std::vector<CovExprPtr> members{
        E::named(E::omega(cat.F, cat.F, cat.F, 4), "I3"),
        E::named(E::dpair(cat.sigma, cat.F), "I3b"),
        E::named(E::dpair(cat.psi, cat.H), "I6"),
        E::named(E::dpair(cat.rho, cat.C52), "I9"),
        E::named(E::dpair(cat.c54, cat.C44), "I9b"),
        E::named(E::dpair(E::product(cat.sigma, cat.rho), cat.H), "I9c"),
        E::named(E::dpair(E::power(cat.rho, 2), cat.C44), "I12"),
        E::named(E::dpair(E::power(cat.sigma, 3), E::power(cat.H, 2)), "I12b"),
        E::named(E::dpair(E::product(cat.c54, cat.rho), cat.H), "I12c"),
        E::named(E::dpair(cat.c105, cat.C85), "I18"),
        E::named(E::dpair(cat.c123, cat.C123), "I24"),
    };
    std::vector<int> src{4};
    for (const auto& m : members) b.entries.push_back({m, battery_weight(*m, src, 3)});
    return b;
}

}  // namespace detail

inline Battery battery_for(const std::string& id) {
    if (id.rfind("binary-", 0) == 0) {
        int k = std::stoi(id.substr(7));
        if (k < 2 || k > 20) throw battery_undefined(id);
        return detail::make_binary_battery(k);
    }
    if (id == "sum-6-4") return detail::make_sum64_battery();
    if (id == "bicubic-3-3") return detail::make_bicubic_battery();
    if (id == "ternary-4") return detail::make_ternary_quartic_battery();
    throw battery_undefined(id);
}

struct FingerprintEntry {
    std::string name;
    QuadExt value;
    Int weight;
    int degree = 0;
};

struct Fingerprint {
    std::string battery;
    std::vector<FingerprintEntry> entries;
};

namespace detail {

inline QuadExt to_quadext(const Rational& v) { return QuadExt(v); }
inline QuadExt to_quadext(const QuadExt& v) { return v; }

}  // namespace detail

template <class K>
Fingerprint fingerprint(const std::vector<Form<K>>& inputs, const Battery& battery) {
    if (static_cast<int>(inputs.size()) != battery.nslots) throw battery_undefined("battery " + battery.id + " expects " + std::to_string(battery.nslots) + " forms");
    Fingerprint fp;
    fp.battery = battery.id;
    CovEvaluator<K> ev(inputs);
    for (const auto& entry : battery.entries) {
        K v = as_scalar(ev.value(entry.expr));
        fp.entries.push_back({entry.expr->name, detail::to_quadext(v), entry.weight, entry.expr->degree});
    }
    return fp;
}

/// Weighted projective equality: true iff some lambda in the algebraic
/// closure satisfies value2_j = lambda^{weight_j} value1_j for all j. The
/// vanishing patterns must agree exactly; on the nonzero part the condition
/// is checked through an integer basis of the relation lattice of the
/// weights, so no roots are ever extracted.
inline bool fingerprint_equal(const Fingerprint& a, const Fingerprint& b) {
    if (a.battery != b.battery) throw battery_mismatch(a.battery + " vs " + b.battery);
    if (a.entries.size() != b.entries.size()) throw battery_mismatch("entry count differs");
    std::vector<QuadExt> ratios;
    std::vector<Int> weights;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const QuadExt& va = a.entries[i].value;
        const QuadExt& vb = b.entries[i].value;
        if (va.is_zero() != vb.is_zero()) return false;
        if (va.is_zero()) continue;
        ratios.push_back(vb / va);
        weights.push_back(a.entries[i].weight);
    }
    if (ratios.size() <= 1) return true;
    // integer basis of { c : sum c_i w_i = 0 } by an extended-gcd chain
    std::vector<std::vector<Int>> combo(weights.size(), std::vector<Int>(weights.size(), 0));
    for (std::size_t i = 0; i < weights.size(); ++i) combo[i][i] = 1;
    Int g = weights[0];
    std::vector<Int> gvec = combo[0];
    for (std::size_t i = 1; i < weights.size(); ++i) {
        Int x, y, d;
        mpz_gcdext(d.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(), weights[i].get_mpz_t());
        // kernel vector: (w_i / d) * gvec - (g / d) * e_i
        std::vector<Int> kv(weights.size(), 0);
        Int c1 = weights[i] / d, c2 = g / d;
        for (std::size_t t = 0; t < weights.size(); ++t) kv[t] = c1 * gvec[t];
        kv[i] -= c2;
        // check prod ratios^{kv} == 1
        QuadExt lhs{Rational(1)}, rhs{Rational(1)};
        for (std::size_t t = 0; t < weights.size(); ++t) {
            if (kv[t] == 0) continue;
            long e = static_cast<long>(kv[t].get_si());
            if (e > 0) lhs = lhs * ratios[t].pow(e);
            else rhs = rhs * ratios[t].pow(-e);
        }
        if (!(lhs == rhs)) return false;
        // update the gcd combination
        for (std::size_t t = 0; t < weights.size(); ++t) gvec[t] = x * gvec[t];
        gvec[i] += y;
        g = d;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Reconstruction pipelines
// ---------------------------------------------------------------------------

struct ReconstructionOptions {
    ConicOptions conic;
    NormalFormOptions normal_form;
    CovariantSearchOptions search;
    std::string battery_override;  // empty: the pipeline default
};

/// Common result shell: normalized presentation forms, the certified forms
/// the fingerprints were computed from, the extension record and the
/// verification verdict.
struct ReconstructionResult {
    std::vector<Form<QuadExt>> forms;
    ExtensionRecord extension;
    bool verified = false;
    Fingerprint input_fp, output_fp;
    std::string battery;
    std::string notes = "coefficients normalized to primitive integers; no minimization attempted";
};

namespace detail {

inline Form<QuadExt> to_ext(const Form<Rational>& f) {
    return f.map_coefficients<QuadExt>([](const Rational& c) { return QuadExt(c); });
}

inline Form<Rational> to_rational(const Form<QuadExt>& f) {
    return f.map_coefficients<Rational>([](const QuadExt& c) {
        if (!c.is_rational()) throw mixed_field("form has irrational coefficients");
        return c.a();
    });
}

/// Rebuild a form over a space of the same shape but different kinds.
template <class K>
Form<K> with_space(const Form<K>& f, const Space& target) {
    Form<K> out(target, f.degrees());
    for (const auto& [e, c] : f.terms()) out.add_term(e, c);
    return out;
}

template <class K>
std::vector<Form<K>> normalized_values(const std::vector<Form<K>>& values) {
    std::vector<Form<K>> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(primitive_part(v, false).first);
    return out;
}

/// Ordered-sum quadric sum_{i,j} (q_i, q_j)_level X_i X_j over the lift space.
template <class K>
Form<K> transvectant_gram_quadric(const std::vector<Form<K>>& q, int level, bool bilevel) {
    const int n = static_cast<int>(q.size());
    Form<K> out(Space::lift(n), 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            K c = bilevel ? as_scalar(transvect2(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)], level, level))
                          : as_scalar(transvect(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)], level));
            if (FieldOps<K>::is_zero(c)) continue;
            ExpVec e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] += 1;
            e[static_cast<std::size_t>(j)] += 1;
            out.add_term(e, c);
        }
    }
    return out;
}

}  // namespace detail

/// Odd-degree binary reconstruction through two order-1 covariants; the
/// output lies in the base field (no parametrization step).
inline ReconstructionResult reconstruct_binary_odd(const Form<Rational>& f, const ReconstructionOptions& opt = {}) {
    const int k = f.degree();
    if (k % 2 == 0 || k < 5) throw input_error("Precondition", "odd-degree pipeline needs odd k >= 5");
    auto [exprs, values] = search_order1_binary(f, opt.search);
    auto qv = detail::normalized_values(values);
    Form<Rational> lift = build_lift_transvectant(qv, f, k);
    Form<Rational> result = detail::with_space(lift, Space::primal(2));

    ReconstructionResult out;
    out.battery = opt.battery_override.empty() ? "binary-" + std::to_string(k) : opt.battery_override;
    Battery battery = battery_for(out.battery);
    out.input_fp = fingerprint(std::vector<Form<Rational>>{f}, battery);
    out.output_fp = fingerprint(std::vector<Form<Rational>>{result}, battery);
    out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    out.forms = {detail::to_ext(primitive_part(result).first)};
    return out;
}

/// Even-degree binary reconstruction: three order-2 covariants, the conic of
/// their pairwise transvectants, and evaluation of the lift on a conic
/// parametrization; at most one quadratic extension.
inline ReconstructionResult reconstruct_binary_even(const Form<Rational>& f, const ReconstructionOptions& opt = {}) {
    const int k = f.degree();
    if (k % 2 == 1 || k < 6) throw input_error("Precondition", "even-degree pipeline needs even k >= 6");
    std::vector<Form<Rational>> values;
    if (k == 6) {
        CovEvaluator<Rational> ev({f});
        for (const auto& e : mestre_sextic_triple()) values.push_back(ev.value(e));
        if (!independence_at(values).independent) throw not_independent_at_f("the sextic covariant triple is dependent at f");
    } else {
        values = search_binary_covariants(f, 2, 3, opt.search).second;
    }
    auto qv = detail::normalized_values(values);
    Form<Rational> conic = detail::transvectant_gram_quadric(qv, 2, false);
    auto param = parametrize_conic(conic, opt.conic);
    Form<Rational> lift = build_lift_transvectant(qv, f, k / 2);
    Form<QuadExt> result = substitute(detail::to_ext(lift), param.images);

    ReconstructionResult out;
    out.extension = param.extension;
    out.battery = opt.battery_override.empty() ? "binary-" + std::to_string(k) : opt.battery_override;
    Battery battery = battery_for(out.battery);
    out.input_fp = fingerprint(std::vector<Form<QuadExt>>{detail::to_ext(f)}, battery);
    out.output_fp = fingerprint(std::vector<Form<QuadExt>>{result}, battery);
    out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    out.forms = {primitive_part(result).first};
    return out;
}

/// Joint reconstruction of a (Sym^6, Sym^4) pair with the published
/// covariant triple. The two lift evaluations are divided by the exact
/// identity constants, so the certified pair differs from the input by one
/// common GL_2 substitution and one common scalar.
inline ReconstructionResult reconstruct_sum_6_4(const Form<Rational>& f6, const Form<Rational>& f4, const ReconstructionOptions& opt = {}) {
    if (f6.degree() != 6 || f4.degree() != 4) throw input_error("Precondition", "expected degrees (6, 4)");
    auto cat = sum64_catalog();
    CovEvaluator<Rational> ev({f6, f4});
    std::vector<Form<Rational>> values{ev.value(cat.q0), ev.value(cat.q1), ev.value(cat.q2)};
    if (!independence_at(values).independent) throw not_independent_at_f("the (f6, f4) covariant triple is dependent at f");
    auto qv = detail::normalized_values(values);

    Form<Rational> conic = detail::transvectant_gram_quadric(qv, 2, false);
    auto param = parametrize_conic(conic, opt.conic);
    Form<Rational> lift6 = build_lift_transvectant(qv, f6, 3);
    Form<Rational> lift4 = build_lift_transvectant(qv, f4, 2);
    // identity constants ((kd)!/d!^k)^2 for (d, k) = (2, 3) and (2, 2)
    QuadExt c6{Rational(Int(1), Int(8100))};
    QuadExt c4{Rational(Int(1), Int(36))};
    Form<QuadExt> out6 = substitute(detail::to_ext(lift6), param.images).scaled(c6);
    Form<QuadExt> out4 = substitute(detail::to_ext(lift4), param.images).scaled(c4);

    ReconstructionResult out;
    out.extension = param.extension;
    out.battery = opt.battery_override.empty() ? "sum-6-4" : opt.battery_override;
    Battery battery = battery_for(out.battery);
    out.input_fp = fingerprint(std::vector<Form<QuadExt>>{detail::to_ext(f6), detail::to_ext(f4)}, battery);
    out.output_fp = fingerprint(std::vector<Form<QuadExt>>{out6, out4}, battery);
    out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    out.forms = {primitive_part(out6).first, primitive_part(out4).first};
    return out;
}

/// Plane-quartic reconstruction through the order-1 contravariant triple;
/// the order-1 shortcut reads the lift directly as a ternary quartic over
/// the base field.
inline ReconstructionResult reconstruct_genus3(const Form<Rational>& f, const ReconstructionOptions& opt = {}) {
    if (f.degree() != 4 || f.space().factor(0).dim != 3) throw input_error("Precondition", "expected a ternary quartic");
    auto cat = genus3_catalog();
    CovEvaluator<Rational> ev({f});
    std::vector<Form<Rational>> pv{ev.value(cat.p0), ev.value(cat.p1), ev.value(cat.p2)};
    auto rep = independence_at(pv);
    if (!rep.independent) throw not_independent_at_f("contravariants p0, p1, p2 are dependent at f (Delta = 0)");
    auto pnorm = detail::normalized_values(pv);
    Form<Rational> lift = build_lift_apolar(pnorm, f, 4);
    Form<Rational> result = detail::with_space(lift, Space::primal(3));

    ReconstructionResult out;
    out.battery = opt.battery_override.empty() ? "ternary-4" : opt.battery_override;
    Battery battery = battery_for(out.battery);
    out.input_fp = fingerprint(std::vector<Form<Rational>>{f}, battery);
    out.output_fp = fingerprint(std::vector<Form<Rational>>{result}, battery);
    out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    out.forms = {detail::to_ext(primitive_part(result).first)};
    return out;
}

/// Canonical genus-4 model: quadric and cubic in the lift variables.
struct CurveModelG4 {
    Form<QuadExt> quadric;
    Form<QuadExt> cubic;
    int rank = 4;
    ExtensionRecord extension;
    bool verified = false;
    Fingerprint input_fp, output_fp;
    std::string battery;
    std::string notes = "coefficients normalized to primitive integers; no minimization attempted";
};

/// Rank-3 model from the weighted form (f6, f4): the conic in X0..X2 plus
/// the cubic with unit X3^3 coefficient; certified by pulling back along a
/// parametrization of the conic.
inline CurveModelG4 reconstruct_genus4_rank3(const Form<Rational>& f6, const Form<Rational>& f4, const ReconstructionOptions& opt = {}) {
    if (f6.degree() != 6 || f4.degree() != 4) throw input_error("Precondition", "expected degrees (6, 4)");
    auto cat = sum64_catalog();
    CovEvaluator<Rational> ev({f6, f4});
    std::vector<Form<Rational>> values{ev.value(cat.q0), ev.value(cat.q1), ev.value(cat.q2)};
    if (!independence_at(values).independent) throw not_independent_at_f("the (f6, f4) covariant triple is dependent at f");
    auto qv = detail::normalized_values(values);

    Form<Rational> conic3 = detail::transvectant_gram_quadric(qv, 2, false);
    Form<Rational> lift6 = build_lift_transvectant(qv, f6, 3);
    Form<Rational> lift4 = build_lift_transvectant(qv, f4, 2);

    Space lift = Space::lift(4);
    auto embed = [&](const Form<Rational>& g) {
        Form<Rational> out(lift, g.degree());
        for (const auto& [e, c] : g.terms()) out.add_term(ExpVec{e[0], e[1], e[2], 0}, c);
        return out;
    };
    Form<Rational> quadric = embed(conic3);
    Form<Rational> cubic = embed(lift6);
    {
        Form<Rational> x3(lift, 1);
        x3.add_term(ExpVec{0, 0, 0, 1}, Rational(1));
        cubic = cubic + x3 * embed(lift4) + x3 * x3 * x3;
    }

    CurveModelG4 out;
    out.rank = 3;
    out.battery = opt.battery_override.empty() ? "sum-6-4" : opt.battery_override;
    Battery battery = battery_for(out.battery);

    // certification: pull the model back along the conic parametrization
    auto param = parametrize_conic(conic3, opt.conic);
    out.extension = param.extension;
    QuadExt c6{Rational(Int(1), Int(8100))};
    QuadExt c4{Rational(Int(1), Int(36))};
    Form<QuadExt> back6 = substitute(detail::to_ext(lift6), param.images).scaled(c6);
    Form<QuadExt> back4 = substitute(detail::to_ext(lift4), param.images).scaled(c4);
    out.input_fp = fingerprint(std::vector<Form<QuadExt>>{detail::to_ext(f6), detail::to_ext(f4)}, battery);
    out.output_fp = fingerprint(std::vector<Form<QuadExt>>{back6, back4}, battery);
    out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    out.quadric = detail::to_ext(primitive_part(quadric).first);
    out.cubic = detail::to_ext(cubic);  // keep the unit X3^3 normalization
    return out;
}

namespace detail {

template <class K>
std::vector<Form<K>> transform_columns_as_images(const Matrix<K>& t, const Space& lift) {
    // images[i] = sum_j t(i, j) X_j realizes E(T X) through substitution
    std::vector<Form<K>> images;
    for (int i = 0; i < t.rows(); ++i) {
        Form<K> img(lift, 1);
        for (int j = 0; j < t.cols(); ++j) {
            ExpVec e(static_cast<std::size_t>(t.cols()), 0);
            e[static_cast<std::size_t>(j)] = 1;
            img.add_term(e, t(i, j));
        }
        images.push_back(img);
    }
    return images;
}

/// Screen the catalog independence modulo several primes; used when the
/// rational normal form is blocked by a field obstruction. Returns the
/// number of usable primes and how many of them saw a vanishing determinant.
inline std::pair<int, int> genus4_screen_mod_p(const Form<Rational>& quadric, const Form<Rational>& cubic) {
    auto cat = genus4_catalog();
    int usable = 0, vanished = 0;
    for (int i = 0; i < 16 && usable < 3; ++i) {
        std::uint64_t p = screen_prime(i);
        std::optional<Matrix<Fp>> t;
        try {
            t = quadric_normal_form_mod_p(quadric, p);
        } catch (const recon_error&) {
            continue;
        }
        if (!t) continue;
        try {
            Form<Fp> ep = cubic.map_coefficients<Fp>([&](const Rational& c) { return Fp::from_rational(c, p); });
            Form<Fp> et = substitute(ep, transform_columns_as_images(*t, cubic.space()));
            Form<Fp> fp = segre_pullback(et);
            auto rep = independence_at(cat.q(), std::vector<Form<Fp>>{fp});
            ++usable;
            if (!rep.independent) ++vanished;
        } catch (const recon_error&) {
            continue;
        }
    }
    return {usable, vanished};
}

}  // namespace detail

/// Rank-4 genus-4 reconstruction: normal form, Segre pullback, the four
/// bi-order (1,1) covariants, and the output pair Q(f), E(f); certified by
/// pulling the output back and comparing bicubic fingerprints.
inline CurveModelG4 reconstruct_genus4_rank4(const Form<Rational>& quadric, const Form<Rational>& cubic, const ReconstructionOptions& opt = {}) {
    if (quadric.degree() != 2 || cubic.degree() != 3 || quadric.space().factor(0).dim != 4) throw input_error("Precondition", "expected a quadric and a cubic in 4 variables");
    int rk = quadric_rank(quadric);
    if (rk == 3) throw wrong_rank("quadric has rank 3: use the weighted (f6, f4) model pipeline", 3);
    if (rk != 4) throw wrong_rank("quadric has rank " + std::to_string(rk), rk);

    QuadricSplit split;
    try {
        split = quadric_normal_form(quadric, opt.normal_form);
    } catch (const unsupported&) {
        auto [usable, vanished] = detail::genus4_screen_mod_p(quadric, cubic);
        if (usable >= 3 && vanished == usable)
            throw not_independent_at_f("catalog covariants vanish at the pullback modulo " + std::to_string(usable) +
                                       " screening primes: the curve has too many automorphisms for this catalog");
        throw;
    }

    Space lift = quadric.space();
    Form<QuadExt> et = substitute(detail::to_ext(cubic), detail::transform_columns_as_images(split.transform, lift));
    Form<QuadExt> f = segre_pullback(et);

    auto cat = genus4_catalog();
    CovEvaluator<QuadExt> ev({f});
    std::vector<Form<QuadExt>> values;
    for (const auto& q : cat.q()) values.push_back(ev.value(q));
    auto rep = independence_at(values);
    if (!rep.independent) throw not_independent_at_f("catalog covariants c31, c51_* are dependent at the pullback");
    auto qv = detail::normalized_values(values);

    Form<QuadExt> qout = detail::transvectant_gram_quadric(qv, 1, true);
    // E(f) = sum over ordered triples of (q_i q_j q_l, f)_{3,3} X_i X_j X_l
    Form<QuadExt> eout = build_lift_transvectant2(qv, f, 3);
    eout = detail::with_space(eout, lift);
    qout = detail::with_space(qout, lift);

    CurveModelG4 out;
    out.rank = 4;
    out.extension = split.extension;
    out.battery = opt.battery_override.empty() ? "bicubic-3-3" : opt.battery_override;
    Battery battery = battery_for(out.battery);
    out.input_fp = fingerprint(std::vector<Form<QuadExt>>{f}, battery);

    // certification: pull the reconstructed pair back to a bicubic
    bool back_ok = false;
    Form<QuadExt> fback;
    if (out.extension.trivial()) {
        auto split2 = quadric_normal_form(detail::to_rational(qout), opt.normal_form);
        Form<QuadExt> et2 = substitute(eout, detail::transform_columns_as_images(split2.transform, lift));
        fback = segre_pullback(et2);
        out.extension = split2.extension;
        back_ok = true;
    } else {
        // over an extension: pull back along the dual parametrization instead
        std::vector<Form<QuadExt>> pv;
        for (const auto& q : qv) pv.push_back(tau2(q));
        auto duals = dual_family(pv);
        // duals live in the primal bidegree-(1,1) slice; substitute into E(f)
        fback = substitute(eout, duals);
        back_ok = true;
    }
    if (back_ok) {
        out.output_fp = fingerprint(std::vector<Form<QuadExt>>{fback}, battery);
        out.verified = fingerprint_equal(out.input_fp, out.output_fp);
    }
    out.quadric = primitive_part(qout).first;
    out.cubic = primitive_part(eout).first;
    return out;
}

}  // namespace recon

#endif
