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

#ifndef RECON_CONIC_HPP
#define RECON_CONIC_HPP

#include <optional>
#include <vector>

#include "recon/quadrics.hpp"

namespace recon {

struct ConicOptions {
    long direct_search_bound = 12;   // naive search on the original conic
    Int holzer_cap = Int(10000);     // height cap for the reduced diagonal search
};

struct ConicParam {
    std::vector<Form<QuadExt>> images;  // three binary quadratics parametrizing the conic
    std::vector<QuadExt> point;         // conic point used, original coordinates
    ExtensionRecord extension;
    // true when a completed Legendre solvability test proved there is no
    // rational point, so the quadratic extension is genuinely needed
    bool no_rational_point_certified = false;
};

namespace detail {

/// Primitive reduced model a x^2 + b y^2 + c z^2 of a rational diagonal
/// conic, together with the per-variable rational scalings that undo the
/// reduction. `reduced` means squarefree pairwise-coprime entries; the flag
/// reports whether the factorizations needed for that reduction (and for the
/// Legendre test) completed.
struct DiagonalModel {
    std::vector<Int> coeff;          // a, b, c
    std::vector<Rational> scaling;   // diag coordinate i = scaling[i] * model coordinate i
    bool reduced_certified = true;
};

inline DiagonalModel reduce_diagonal(const std::vector<Rational>& diag) {
    DiagonalModel m;
    m.scaling.assign(diag.size(), Rational(1));
    // integer model: diag coordinate = den * model coordinate turns the
    // coefficient d = num/den into d * den^2 = num * den
    std::vector<Int> c(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        c[i] = diag[i].num() * diag[i].den();
        m.scaling[i] = Rational(diag[i].den());
    }
    // overall content
    Int g = 0;
    for (const auto& v : c) g = gcd(g, v);
    if (g != 0)
        for (auto& v : c) v /= g;
    // squarefree part per entry
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto dec = squarefree_part(c[i]);
        if (!dec.certified) m.reduced_certified = false;
        c[i] = dec.squarefree;
        m.scaling[i] = m.scaling[i] / Rational(dec.root);
    }
    // pairwise coprime: if g | a and g | b, replace c by c*g and divide z by g
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < 3 && !changed; ++i) {
            for (int j = i + 1; j < 3 && !changed; ++j) {
                Int g2 = gcd(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
                if (g2 <= 1) continue;
                int k = 3 - i - j;
                c[static_cast<std::size_t>(i)] /= g2;
                c[static_cast<std::size_t>(j)] /= g2;
                c[static_cast<std::size_t>(k)] *= g2;
                m.scaling[static_cast<std::size_t>(k)] = m.scaling[static_cast<std::size_t>(k)] * Rational(g2);
                auto dec = squarefree_part(c[static_cast<std::size_t>(k)]);
                if (!dec.certified) m.reduced_certified = false;
                c[static_cast<std::size_t>(k)] = dec.squarefree;
                m.scaling[static_cast<std::size_t>(k)] = m.scaling[static_cast<std::size_t>(k)] / Rational(dec.root);
                changed = true;
            }
        }
    }
    m.coeff = c;
    return m;
}

/// Exhaustive search for a primitive solution of a x^2 + b y^2 + c z^2 = 0
/// within Holzer's bounds |x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|.
/// When the bounds fit under the cap this is a decision procedure.
inline std::optional<std::vector<Int>> holzer_search(const Int& a, const Int& b, const Int& c, const Int& cap, bool& complete) {
    Int by = isqrt(abs(a * c)).first + 1;
    Int bz = isqrt(abs(a * b)).first + 1;
    complete = by <= cap && bz <= cap;
    Int ylim = std::min(by, cap), zlim = std::min(bz, cap);
    for (Int z = 0; z <= zlim; ++z) {
        for (Int y = (z == 0 ? 1 : 0); y <= ylim; ++y) {
            Int rhs = -(b * y * y + c * z * z);
            if (rhs % a != 0) continue;
            Int x2 = rhs / a;
            if (x2 < 0) continue;
            auto [x, exact] = isqrt(x2);
            if (!exact) continue;
            return std::vector<Int>{x, y, z};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Point on the rational conic defined by the nondegenerate quadratic form
/// `q` in three variables: a small direct search, then Legendre solvability
/// on the reduced diagonal model with a Holzer-bounded decision search, then
/// a quadratic-extension point from a diagonal pair. The preference order
/// for the extension radicand is positive before negative, then small.
struct ConicPoint {
    std::vector<QuadExt> point;
    ExtensionRecord extension;
    bool no_rational_point_certified = false;
};

inline ConicPoint conic_point(const Form<Rational>& q, const ConicOptions& opt = {}) {
    Matrix<Rational> m = gram_matrix(q);
    if (det(m).is_zero()) throw degenerate_conic("conic has vanishing determinant");

    auto as_ext_point = [](const std::vector<Rational>& v) {
        std::vector<QuadExt> p;
        p.reserve(v.size());
        for (const auto& x : v) p.emplace_back(x);
        return p;
    };

    // direct search on the original conic
    const long B = opt.direct_search_bound;
    for (long x = 0; x <= B; ++x) {
        for (long y = -B; y <= B; ++y) {
            for (long z = -B; z <= B; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                std::vector<Rational> v{Rational(x), Rational(y), Rational(z)};
                if (evaluate_quadric(m, v).is_zero()) return {as_ext_point(v), ExtensionRecord{}, false};
            }
        }
    }

    auto dg = diagonalize_symmetric(m);
    auto model = detail::reduce_diagonal(dg.diag);
    const Int a = model.coeff[0], b = model.coeff[1], c = model.coeff[2];

    auto lift_model_point = [&](const std::vector<QuadExt>& w) {
        // model -> diagonal coords (per-variable scaling) -> original coords
        std::vector<QuadExt> diagc(3);
        for (int i = 0; i < 3; ++i) diagc[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * QuadExt(model.scaling[static_cast<std::size_t>(i)]);
        std::vector<QuadExt> out(3);
        for (int i = 0; i < 3; ++i) {
            QuadExt acc;
            for (int j = 0; j < 3; ++j) acc = acc + QuadExt(dg.transform(i, j)) * diagc[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    };

    bool certified_no_point = false;
    bool solvability_known = false;
    if (model.reduced_certified) {
        auto fa = factor_squarefree(a), fb = factor_squarefree(b), fc = factor_squarefree(c);
        if (fa && fb && fc) {
            bool signs_ok = !(sgn(a) == sgn(b) && sgn(b) == sgn(c));
            bool legendre = signs_ok && is_qr_mod_squarefree(-a * b, *fc) && is_qr_mod_squarefree(-a * c, *fb) &&
                            is_qr_mod_squarefree(-b * c, *fa);
            solvability_known = true;
            if (legendre) {
                bool complete = false;
                auto sol = detail::holzer_search(a, b, c, opt.holzer_cap, complete);
                if (sol) {
                    std::vector<QuadExt> w{QuadExt(Rational((*sol)[0])), QuadExt(Rational((*sol)[1])), QuadExt(Rational((*sol)[2]))};
                    return {lift_model_point(w), ExtensionRecord{}, false};
                }
                // solvable but out of search reach: fall through to extension
                solvability_known = complete;
            } else {
                certified_no_point = true;
            }
        }
    }
    if (!certified_no_point && !solvability_known) {
        // factorization incomplete: bounded search on the model before extending
        bool complete = false;
        auto sol = detail::holzer_search(a, b, c, std::min(opt.holzer_cap, Int(300)), complete);
        if (sol) {
            std::vector<QuadExt> w{QuadExt(Rational((*sol)[0])), QuadExt(Rational((*sol)[1])), QuadExt(Rational((*sol)[2]))};
            return {lift_model_point(w), ExtensionRecord{}, false};
        }
    }

    // quadratic extension point from a diagonal pair: for the pair (i, j),
    // t^2 = -coeff_i coeff_j and the point puts t in slot i, coeff_i in slot j.
    struct Candidate {
        Int radicand;
        Int root;  // -ci*cj = radicand * root^2
        int i, j;
        bool certified;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            Int prod = -model.coeff[static_cast<std::size_t>(i)] * model.coeff[static_cast<std::size_t>(j)];
            auto dec = squarefree_part(prod);
            if (dec.squarefree == 1) {
                // -c_i c_j is a perfect square: rational point in the (i, j) plane
                std::vector<QuadExt> w(3);
                w[static_cast<std::size_t>(i)] = QuadExt(Rational(dec.root));
                w[static_cast<std::size_t>(j)] = QuadExt(Rational(model.coeff[static_cast<std::size_t>(i)]));
                return {lift_model_point(w), ExtensionRecord{}, false};
            }
            cands.push_back({dec.squarefree, dec.root, i, j, dec.certified});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
        if ((l.radicand > 0) != (r.radicand > 0)) return l.radicand > 0;
        if (abs(l.radicand) != abs(r.radicand)) return abs(l.radicand) < abs(r.radicand);
        return std::pair(l.i, l.j) < std::pair(r.i, r.j);
    });
    const Candidate& best = cands.front();
    std::vector<QuadExt> w(3);
    w[static_cast<std::size_t>(best.i)] = QuadExt(Rational(0), Rational(best.root), best.radicand);
    w[static_cast<std::size_t>(best.j)] = QuadExt(Rational(model.coeff[static_cast<std::size_t>(best.i)]));
    ConicPoint out;
    out.point = lift_model_point(w);
    out.extension.radicand = best.radicand;
    out.extension.certified_minimal = best.certified && certified_no_point;
    out.no_rational_point_certified = certified_no_point;
    return out;
}

/// Parametrize a nondegenerate conic by the pencil of lines through a point:
/// X(s,t) = Q(R) P - 2 (P^t M R) R with R = s U + t V completing P to a
/// basis. The three coordinates are binary quadratics; substituting them
/// into the conic gives zero identically.
inline ConicParam parametrize_conic(const Form<Rational>& q, const ConicOptions& opt = {}) {
    ConicPoint cp = conic_point(q, opt);
    Matrix<Rational> mq = gram_matrix(q);
    Matrix<QuadExt> me(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) me(i, j) = QuadExt(mq(i, j));

    // complete the point to a basis with two unit vectors, smallest indices first
    std::vector<std::vector<QuadExt>> basis;
    for (int i = 0; i < 3 && basis.size() < 2; ++i) {
        std::vector<QuadExt> e(3);
        e[static_cast<std::size_t>(i)] = QuadExt(Rational(1));
        // accept e if {point, basis..., e} stays independent
        Matrix<QuadExt> test(static_cast<int>(basis.size()) + 2, 3);
        for (int j = 0; j < 3; ++j) test(0, j) = cp.point[static_cast<std::size_t>(j)];
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (int j = 0; j < 3; ++j) test(static_cast<int>(r) + 1, j) = basis[r][static_cast<std::size_t>(j)];
        for (int j = 0; j < 3; ++j) test(static_cast<int>(basis.size()) + 1, j) = e[static_cast<std::size_t>(j)];
        if (rank(test) == static_cast<int>(basis.size()) + 2) basis.push_back(e);
    }
    if (basis.size() < 2) throw math_error("Internal", "could not complete conic point to a basis");

    Space binary = Space::primal(2);
    Space lift3 = q.space();
    // symbolic R = s U + t V: coordinates are linear forms in (s, t)
    auto lin = [&](const QuadExt& cu, const QuadExt& cv) {
        Form<QuadExt> f(binary, 1);
        f.add_term({1, 0}, cu);
        f.add_term({0, 1}, cv);
        return f;
    };
    std::vector<Form<QuadExt>> r(3);
    for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i)] = lin(basis[0][static_cast<std::size_t>(i)], basis[1][static_cast<std::size_t>(i)]);

    // Q(R) and P^t M R as forms in (s, t)
    Form<QuadExt> qr(binary, 2);
    Form<QuadExt> pmr(binary, 1);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (!FieldOps<QuadExt>::is_zero(me(i, j))) {
                qr = qr + (r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)]).scaled(me(i, j));
                pmr = pmr + r[static_cast<std::size_t>(j)].scaled(me(i, j) * cp.point[static_cast<std::size_t>(i)]);
            }
        }
    }

    ConicParam out;
    out.point = cp.point;
    out.extension = cp.extension;
    out.no_rational_point_certified = cp.no_rational_point_certified;
    out.images.resize(3, Form<QuadExt>(binary, 2));
    QuadExt two{Rational(2)};
    for (int i = 0; i < 3; ++i) {
        Form<QuadExt> ci = qr.scaled(cp.point[static_cast<std::size_t>(i)]) - (pmr * r[static_cast<std::size_t>(i)]).scaled(two);
        out.images[static_cast<std::size_t>(i)] = ci;
    }

    // normalize by the common rational content of all coordinates
    Int den = 1, num_gcd = 0;
    auto absorb = [&](const Rational& x) {
        if (x.is_zero()) return;
        den = den / gcd(den, x.den()) * x.den();
    };
    for (const auto& f : out.images)
        for (const auto& [e, cc] : f.terms()) {
            absorb(cc.a());
            absorb(cc.b());
        }
    for (const auto& f : out.images)
        for (const auto& [e, cc] : f.terms()) {
            if (!cc.a().is_zero()) num_gcd = gcd(num_gcd, cc.a().num() * (den / cc.a().den()));
            if (!cc.b().is_zero()) num_gcd = gcd(num_gcd, cc.b().num() * (den / cc.b().den()));
        }
    if (num_gcd != 0) {
        QuadExt scale{Rational(den, num_gcd)};
        for (auto& f : out.images) f = f.scaled(scale);
    }

    // exactness check: the parametrization lies on the conic
    std::vector<Form<QuadExt>> imgs = out.images;
    Form<QuadExt> check(binary, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!FieldOps<QuadExt>::is_zero(me(i, j))) check = check + (imgs[static_cast<std::size_t>(i)] * imgs[static_cast<std::size_t>(j)]).scaled(me(i, j));
    if (!check.is_zero()) throw math_error("Internal", "conic parametrization does not satisfy the conic");
    return out;
}

}  // namespace recon

#endif
