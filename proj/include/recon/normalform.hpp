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

#ifndef RECON_NORMALFORM_HPP
#define RECON_NORMALFORM_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "recon/quadrics.hpp"

namespace recon {

struct NormalFormOptions {
    long direct_search_bound = 8;
    long diag_pair_bound = 200;
};

/// Congruence transform onto the Segre quadric: Q(T X) = lambda (X0 X3 - X1 X2).
struct QuadricSplit {
    Matrix<QuadExt> transform;
    QuadExt lambda;
    ExtensionRecord extension;
};

inline int quadric_rank(const Form<Rational>& q) {
    return diagonalize_symmetric(gram_matrix(q)).rank;
}

namespace detail {

template <class K>
std::vector<K> matrix_column(const Matrix<K>& m, int j) {
    std::vector<K> v(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, j);
    return v;
}

/// Check N = T^t M T against the X0 X3 - X1 X2 Gram pattern; returns lambda.
template <class K>
std::optional<K> segre_pattern(const Matrix<K>& m, const Matrix<K>& t) {
    Matrix<K> n = t.transposed() * m * t;
    K half_lambda = n(0, 3);
    if (FieldOps<K>::is_zero(half_lambda)) return std::nullopt;
    K zero = half_lambda - half_lambda;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            K expect = zero;
            if ((i == 0 && j == 3) || (i == 3 && j == 0)) expect = half_lambda;
            else if ((i == 1 && j == 2) || (i == 2 && j == 1)) expect = FieldOps<K>::neg(half_lambda);
            if (!(n(i, j) == expect)) return std::nullopt;
        }
    }
    return half_lambda + half_lambda;
}

/// Hyperbolic pair through a known isotropic vector v: returns (e1, e2) with
/// Q(e1) = Q(e2) = 0 and B(e1, e2) = 1.
template <class K>
std::pair<std::vector<K>, std::vector<K>> hyperbolic_pair(const Matrix<K>& m, const std::vector<K>& v) {
    const int n = m.rows();
    K like{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!FieldOps<K>::is_zero(m(i, j))) like = m(i, j);
    std::vector<K> u;
    K beta{};
    for (int i = 0; i < n; ++i) {
        std::vector<K> e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(i)] = FieldOps<K>::one(like);
        K b = bilinear(m, v, e);
        if (!FieldOps<K>::is_zero(b)) {
            u = e;
            beta = b;
            break;
        }
    }
    if (u.empty()) throw math_error("Internal", "isotropic vector in the radical");
    K qu = evaluate_quadric(m, u);
    K two = FieldOps<K>::from_rational(Rational(2), like);
    K t = qu * FieldOps<K>::inverse(two * beta);
    std::vector<K> e2(static_cast<std::size_t>(n));
    K binv = FieldOps<K>::inverse(beta);
    for (int i = 0; i < n; ++i) e2[static_cast<std::size_t>(i)] = (u[static_cast<std::size_t>(i)] - t * v[static_cast<std::size_t>(i)]) * binv;
    return {v, e2};
}

/// Two spanning vectors of the B-orthogonal complement of a hyperbolic pair.
template <class K>
std::vector<std::vector<K>> hyperbolic_complement(const Matrix<K>& m, const std::vector<K>& e1, const std::vector<K>& e2) {
    const int n = m.rows();
    K like{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!FieldOps<K>::is_zero(m(i, j))) like = m(i, j);
    std::vector<std::vector<K>> out;
    for (int i = 0; i < n && out.size() < 2; ++i) {
        std::vector<K> f(static_cast<std::size_t>(n));
        f[static_cast<std::size_t>(i)] = FieldOps<K>::one(like);
        K a = bilinear(m, f, e2);
        K b = bilinear(m, f, e1);
        for (int r = 0; r < n; ++r)
            f[static_cast<std::size_t>(r)] = f[static_cast<std::size_t>(r)] - a * e1[static_cast<std::size_t>(r)] - b * e2[static_cast<std::size_t>(r)];
        Matrix<K> test(static_cast<int>(out.size()) + 1, n);
        for (std::size_t r = 0; r < out.size(); ++r)
            for (int c = 0; c < n; ++c) test(static_cast<int>(r), c) = out[r][static_cast<std::size_t>(c)];
        for (int c = 0; c < n; ++c) test(static_cast<int>(out.size()), c) = f[static_cast<std::size_t>(c)];
        if (rank(test) == static_cast<int>(out.size()) + 1) out.push_back(f);
    }
    if (out.size() != 2) throw math_error("Internal", "complement construction failed");
    return out;
}

struct IntDiagonal {
    std::vector<Int> coeff;
    std::vector<Rational> scaling;  // diag coordinate i = scaling[i] * model coordinate i
    Matrix<Rational> transform;     // original = transform * diag
    bool squarefree_certified = true;
};

inline IntDiagonal integer_diagonal(const Matrix<Rational>& m) {
    auto dg = diagonalize_symmetric(m);
    IntDiagonal d;
    d.transform = dg.transform;
    d.coeff.resize(dg.diag.size());
    d.scaling.assign(dg.diag.size(), Rational(1));
    for (std::size_t i = 0; i < dg.diag.size(); ++i) {
        const Rational& v = dg.diag[i];
        if (v.is_zero()) {
            d.coeff[i] = 0;
            continue;
        }
        d.coeff[i] = v.num() * v.den();
        d.scaling[i] = Rational(v.den());
        auto dec = squarefree_part(d.coeff[i]);
        if (!dec.certified) d.squarefree_certified = false;
        d.coeff[i] = dec.squarefree;
        d.scaling[i] = d.scaling[i] / Rational(dec.root);
    }
    return d;
}

}  // namespace detail

/// Exact congruence onto lambda (X0 X3 - X1 X2) for a rank-4 rational
/// quadric. Tries, in order: caller-provided isotropic vectors, a direct
/// small search, a value-matching search on the diagonalized form; with a
/// rational isotropic vector the split needs at most one extension (from the
/// anisotropic residual plane). Without one, a matched pair of diagonal
/// square classes gives a single-extension split; definite quadrics with
/// non-square discriminant would need a tower of two extensions and are
/// rejected as unsupported.
inline QuadricSplit quadric_normal_form(const Form<Rational>& q, const NormalFormOptions& opt = {},
                                        const std::vector<std::vector<Rational>>& isotropic_hints = {}) {
    if (q.space().nfactors() != 1 || q.space().factor(0).dim != 4 || q.degree() != 2) throw degree_mismatch("normal form needs a quadric in 4 variables");
    Matrix<Rational> m = gram_matrix(q);
    auto dg0 = diagonalize_symmetric(m);
    if (dg0.rank != 4) throw wrong_rank("quadric has rank " + std::to_string(dg0.rank) + ", not 4", dg0.rank);

    Matrix<QuadExt> me(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) me(i, j) = QuadExt(m(i, j));

    std::optional<std::vector<Rational>> isotropic;
    for (const auto& h : isotropic_hints) {
        if (h.size() != 4) continue;
        bool nonzero = false;
        for (const auto& x : h) nonzero = nonzero || !x.is_zero();
        if (nonzero && evaluate_quadric(m, h).is_zero()) {
            isotropic = h;
            break;
        }
    }
    if (!isotropic) {
        const long B = opt.direct_search_bound;
        for (long x0 = 0; x0 <= B && !isotropic; ++x0)
            for (long x1 = -B; x1 <= B && !isotropic; ++x1)
                for (long x2 = -B; x2 <= B && !isotropic; ++x2)
                    for (long x3 = -B; x3 <= B && !isotropic; ++x3) {
                        if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0) continue;
                        std::vector<Rational> v{Rational(x0), Rational(x1), Rational(x2), Rational(x3)};
                        if (evaluate_quadric(m, v).is_zero()) isotropic = v;
                    }
    }
    auto idg = detail::integer_diagonal(m);
    if (!isotropic) {
        // value matching on the diagonal model: a x0^2 + b x1^2 = -(c x2^2 + d x3^2)
        const long P = opt.diag_pair_bound;
        std::unordered_map<std::string, std::pair<long, long>> seen;
        for (long x0 = 0; x0 <= P; ++x0) {
            for (long x1 = (x0 == 0 ? 1 : -P); x1 <= P; ++x1) {
                Int val = idg.coeff[0] * x0 * x0 + idg.coeff[1] * x1 * x1;
                seen.emplace(val.get_str(), std::pair<long, long>{x0, x1});
            }
        }
        for (long x2 = 0; x2 <= P && !isotropic; ++x2) {
            for (long x3 = (x2 == 0 ? 1 : -P); x3 <= P && !isotropic; ++x3) {
                Int val = -(idg.coeff[2] * x2 * x2 + idg.coeff[3] * x3 * x3);
                auto it = seen.find(val.get_str());
                if (it == seen.end()) continue;
                std::vector<Rational> model{Rational(it->second.first), Rational(it->second.second), Rational(x2), Rational(x3)};
                // original = transform * (scaling .* model)
                std::vector<Rational> v(4);
                for (int i = 0; i < 4; ++i) {
                    Rational acc(0);
                    for (int j = 0; j < 4; ++j) acc = acc + idg.transform(i, j) * (model[static_cast<std::size_t>(j)] * idg.scaling[static_cast<std::size_t>(j)]);
                    v[static_cast<std::size_t>(i)] = acc;
                }
                if (evaluate_quadric(m, v).is_zero()) isotropic = v;
            }
        }
    }

    QuadricSplit out;
    if (isotropic) {
        std::vector<QuadExt> v(4);
        for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = QuadExt((*isotropic)[static_cast<std::size_t>(i)]);
        auto [e1, e2] = detail::hyperbolic_pair(me, v);
        auto comp = detail::hyperbolic_complement(me, e1, e2);
        // diagonalize the restriction to the complement
        Matrix<QuadExt> g2(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g2(i, j) = bilinear(me, comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]);
        auto d2 = diagonalize_symmetric(g2);
        std::vector<std::vector<QuadExt>> w(2, std::vector<QuadExt>(4));
        for (int c = 0; c < 2; ++c)
            for (int r = 0; r < 4; ++r) {
                QuadExt acc;
                for (int k = 0; k < 2; ++k) acc = acc + comp[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] * d2.transform(k, c);
                w[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = acc;
            }
        QuadExt ap = d2.diag[0], bp = d2.diag[1];
        if (ap.is_zero() || bp.is_zero() || !ap.is_rational() || !bp.is_rational())
            throw math_error("Internal", "unexpected residual plane in quadric split");
        Rational minus_ab = -(ap.a() * bp.a());
        auto [s, rec] = sqrt_or_extend(minus_ab);
        out.extension = rec;
        // v2 = s w0 + a' w1 and u2 = s w0 - a' w1 are isotropic; B(v2, u2) = -2 a'^2 b'
        std::vector<QuadExt> v2(4), u2(4);
        for (int r = 0; r < 4; ++r) {
            v2[static_cast<std::size_t>(r)] = s * w[0][static_cast<std::size_t>(r)] + ap * w[1][static_cast<std::size_t>(r)];
            u2[static_cast<std::size_t>(r)] = s * w[0][static_cast<std::size_t>(r)] - ap * w[1][static_cast<std::size_t>(r)];
        }
        QuadExt beta2 = bilinear(me, v2, u2);
        QuadExt b2inv = beta2.inv();
        for (int r = 0; r < 4; ++r) u2[static_cast<std::size_t>(r)] = u2[static_cast<std::size_t>(r)] * b2inv;
        // columns: X0 -> e1, X3 -> e2 (2 X0 X3), X1 -> v2, X2 -> -u2 (-2 X1 X2)
        out.transform = Matrix<QuadExt>(4, 4);
        for (int r = 0; r < 4; ++r) {
            out.transform(r, 0) = e1[static_cast<std::size_t>(r)];
            out.transform(r, 3) = e2[static_cast<std::size_t>(r)];
            out.transform(r, 1) = v2[static_cast<std::size_t>(r)];
            out.transform(r, 2) = FieldOps<QuadExt>::neg(u2[static_cast<std::size_t>(r)]);
        }
    } else {
        // no rational point found: single-extension split needs two diagonal
        // pairs in one square class
        struct Pairing {
            int i, j, k, l;
        };
        static constexpr Pairing pairings[3] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        std::optional<Pairing> chosen;
        Int radicand = 0, r1 = 0, r2 = 0;
        for (const auto& pr : pairings) {
            auto d1 = squarefree_part(-idg.coeff[static_cast<std::size_t>(pr.i)] * idg.coeff[static_cast<std::size_t>(pr.j)]);
            auto d2 = squarefree_part(-idg.coeff[static_cast<std::size_t>(pr.k)] * idg.coeff[static_cast<std::size_t>(pr.l)]);
            if (d1.squarefree == d2.squarefree) {
                chosen = pr;
                radicand = d1.squarefree;
                r1 = d1.root;
                r2 = d2.root;
                if (!d1.certified || !d2.certified) out.extension.certified_minimal = false;
                break;
            }
        }
        if (!chosen)
            throw unsupported(
                "quadric is anisotropic with non-square discriminant: splitting it needs a tower of two quadratic extensions, which the "
                "scalar field does not model");
        out.extension.radicand = radicand;
        auto diag_vec = [&](int slot_t, int slot_a, const Int& root, const Int& acoef) {
            std::vector<QuadExt> v(4);
            v[static_cast<std::size_t>(slot_t)] = QuadExt(Rational(0), Rational(root), radicand);
            v[static_cast<std::size_t>(slot_a)] = QuadExt(Rational(acoef));
            return v;
        };
        auto model_to_original = [&](const std::vector<QuadExt>& model) {
            std::vector<QuadExt> v(4);
            for (int i = 0; i < 4; ++i) {
                QuadExt acc;
                for (int j = 0; j < 4; ++j) acc = acc + QuadExt(idg.transform(i, j) * idg.scaling[static_cast<std::size_t>(j)]) * model[static_cast<std::size_t>(j)];
                v[static_cast<std::size_t>(i)] = acc;
            }
            return v;
        };
        auto build_pair = [&](int i, int j, const Int& root) {
            std::vector<QuadExt> v = model_to_original(diag_vec(i, j, root, idg.coeff[static_cast<std::size_t>(i)]));
            std::vector<QuadExt> u = model_to_original(diag_vec(i, j, root, -idg.coeff[static_cast<std::size_t>(i)]));
            QuadExt beta = bilinear(me, v, u);
            QuadExt binv = beta.inv();
            for (auto& x : u) x = x * binv;
            return std::pair(v, u);
        };
        auto [e1, e2] = build_pair(chosen->i, chosen->j, r1);
        auto [e3, e4] = build_pair(chosen->k, chosen->l, r2);
        out.transform = Matrix<QuadExt>(4, 4);
        for (int r = 0; r < 4; ++r) {
            out.transform(r, 0) = e1[static_cast<std::size_t>(r)];
            out.transform(r, 3) = e2[static_cast<std::size_t>(r)];
            out.transform(r, 1) = e3[static_cast<std::size_t>(r)];
            out.transform(r, 2) = FieldOps<QuadExt>::neg(e4[static_cast<std::size_t>(r)]);
        }
    }

    auto lambda = detail::segre_pattern(me, out.transform);
    if (!lambda) throw math_error("Internal", "normal form self-check failed");
    out.lambda = *lambda;
    return out;
}

/// Split modulo a word-sized prime, for probabilistic screens when the
/// rational split is blocked. Succeeds exactly when the quadric stays rank 4
/// mod p and its discriminant is a residue (otherwise the Segre form is not
/// reachable over F_p and the caller should pick another prime).
inline std::optional<Matrix<Fp>> quadric_normal_form_mod_p(const Form<Rational>& q, std::uint64_t p) {
    Matrix<Rational> mr = gram_matrix(q);
    Matrix<Fp> m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (mr(i, j).den() % Int(p) == 0) return std::nullopt;
            m(i, j) = Fp::from_rational(mr(i, j), p);
        }
    auto dg = diagonalize_symmetric(m);
    if (dg.rank != 4) return std::nullopt;
    Fp disc(1, p);
    for (const auto& d : dg.diag) disc *= d;
    Fp disc_root(0, p);
    if (!disc.sqrt(disc_root)) return std::nullopt;

    // isotropic vector in diagonal coordinates: fix trailing entries and
    // solve a x0^2 = -(rest); a residue must appear quickly.
    std::vector<Fp> w(4, Fp(0, p));
    bool found = false;
    for (std::uint64_t t = 1; t < 200 && !found; ++t) {
        for (std::uint64_t u = 0; u <= t && !found; ++u) {
            Fp rest = dg.diag[1] * Fp(t, p) * Fp(t, p) + dg.diag[2] * Fp(u, p) * Fp(u, p);
            Fp target = -(rest) / dg.diag[0];
            Fp root(0, p);
            if (target.sqrt(root)) {
                w = {root, Fp(t, p), Fp(u, p), Fp(0, p)};
                found = true;
            }
        }
    }
    if (!found) return std::nullopt;
    std::vector<Fp> v(4, Fp(0, p));
    for (int i = 0; i < 4; ++i) {
        Fp acc(0, p);
        for (int j = 0; j < 4; ++j) acc += dg.transform(i, j) * w[static_cast<std::size_t>(j)];
        v[static_cast<std::size_t>(i)] = acc;
    }
    if (!evaluate_quadric(m, v).is_zero()) return std::nullopt;

    auto [e1, e2] = detail::hyperbolic_pair(m, v);
    auto comp = detail::hyperbolic_complement(m, e1, e2);
    Matrix<Fp> g2(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g2(i, j) = bilinear(m, comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]);
    auto d2 = diagonalize_symmetric(g2);
    Fp ap = d2.diag[0], bp = d2.diag[1];
    Fp s(0, p);
    if (!(-(ap * bp)).sqrt(s)) return std::nullopt;
    std::vector<std::vector<Fp>> wv(2, std::vector<Fp>(4, Fp(0, p)));
    for (int c = 0; c < 2; ++c)
        for (int r = 0; r < 4; ++r) {
            Fp acc(0, p);
            for (int k = 0; k < 2; ++k) acc += comp[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] * d2.transform(k, c);
            wv[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = acc;
        }
    std::vector<Fp> v2(4, Fp(0, p)), u2(4, Fp(0, p));
    for (int r = 0; r < 4; ++r) {
        v2[static_cast<std::size_t>(r)] = s * wv[0][static_cast<std::size_t>(r)] + ap * wv[1][static_cast<std::size_t>(r)];
        u2[static_cast<std::size_t>(r)] = s * wv[0][static_cast<std::size_t>(r)] - ap * wv[1][static_cast<std::size_t>(r)];
    }
    Fp beta2 = bilinear(m, v2, u2);
    if (beta2.is_zero()) return std::nullopt;
    Fp b2inv = beta2.inv();
    for (auto& x : u2) x = x * b2inv;
    Matrix<Fp> t(4, 4);
    for (int r = 0; r < 4; ++r) {
        t(r, 0) = e1[static_cast<std::size_t>(r)];
        t(r, 3) = e2[static_cast<std::size_t>(r)];
        t(r, 1) = v2[static_cast<std::size_t>(r)];
        t(r, 2) = -u2[static_cast<std::size_t>(r)];
    }
    if (!detail::segre_pattern(m, t)) return std::nullopt;
    return t;
}

}  // namespace recon

#endif
