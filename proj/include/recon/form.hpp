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

#ifndef RECON_FORM_HPP
#define RECON_FORM_HPP

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "recon/field_ops.hpp"
#include "recon/varspace.hpp"

namespace recon {

/// Sparse homogeneous form over a declared variable space. Degrees are
/// tracked per space factor (bidegrees for bihomogeneous forms); stored
/// monomials always match them and zero coefficients are pruned.
template <class K>
class Form {
   public:
    using TermMap = std::map<ExpVec, K, LexDesc>;

    Form() = default;
    Form(Space space, std::vector<int> degrees) : space_(std::move(space)), degrees_(std::move(degrees)) {
        if (static_cast<int>(degrees_.size()) != space_.nfactors()) throw space_mismatch("degree list does not match space factors");
    }
    Form(Space space, int degree) : Form(std::move(space), std::vector<int>{degree}) {
        if (space_.nfactors() != 1) throw space_mismatch("single degree on multi-factor space");
    }

    static Form monomial(const Space& s, const ExpVec& e, const K& c) {
        Form f(s, degrees_of(s, e));
        f.add_term(e, c);
        return f;
    }

    static Form constant(const Space& s, const K& c) {
        Form f(s, std::vector<int>(static_cast<std::size_t>(s.nfactors()), 0));
        f.add_term(ExpVec(static_cast<std::size_t>(s.total_dim()), 0), c);
        return f;
    }

    const Space& space() const { return space_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }
    int degree(int factor) const { return degrees_[static_cast<std::size_t>(factor)]; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    void add_term(const ExpVec& e, const K& c) {
        if (FieldOps<K>::is_zero(c)) return;
        check_exponent(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (FieldOps<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    K coefficient(const ExpVec& e) const {
        auto it = terms_.find(e);
        if (it == terms_.end()) return K{};
        return it->second;
    }

    /// Coefficient of the first monomial in canonical order; zero form gives
    /// the default scalar.
    K lead_coefficient() const { return terms_.empty() ? K{} : terms_.begin()->second; }

    friend Form operator+(const Form& a, const Form& b) {
        a.check_same_shape(b);
        Form r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend Form operator-(const Form& a, const Form& b) {
        a.check_same_shape(b);
        Form r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, FieldOps<K>::neg(c));
        return r;
    }

    Form operator-() const {
        Form r(space_, degrees_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, FieldOps<K>::neg(c));
        return r;
    }

    friend Form operator*(const Form& a, const Form& b) {
        if (!(a.space_ == b.space_)) throw space_mismatch("product of forms over different spaces");
        std::vector<int> degs(a.degrees_.size());
        for (std::size_t i = 0; i < degs.size(); ++i) degs[i] = a.degrees_[i] + b.degrees_[i];
        Form r(a.space_, degs);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    Form scaled(const K& c) const {
        Form r(space_, degrees_);
        if (FieldOps<K>::is_zero(c)) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    Form pow(int n) const {
        Form acc(space_, std::vector<int>(degrees_.size(), 0));
        acc.add_term(ExpVec(static_cast<std::size_t>(space_.total_dim()), 0), one_like());
        Form base = *this;
        int k = n;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    Form derivative(int var, int times = 1) const {
        int factor = factor_of(var);
        std::vector<int> degs = degrees_;
        degs[static_cast<std::size_t>(factor)] -= times;
        Form r(space_, degs);
        if (degs[static_cast<std::size_t>(factor)] < 0) return Form(space_, fix_negative(degs, factor));
        for (const auto& [e, c] : terms_) {
            int ev = e[static_cast<std::size_t>(var)];
            if (ev < times) continue;
            Int ff = 1;
            for (int t = 0; t < times; ++t) ff *= (ev - t);
            ExpVec e2 = e;
            e2[static_cast<std::size_t>(var)] = ev - times;
            r.add_term(e2, c * FieldOps<K>::from_int(ff, c));
        }
        return r;
    }

    template <class K2, class Fn>
    Form<K2> map_coefficients(Fn&& fn) const {
        Form<K2> r(space_, degrees_);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    friend bool operator==(const Form& a, const Form& b) {
        if (!(a.space_ == b.space_) || a.degrees_ != b.degrees_) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    /// lambda with g == f.scaled(lambda), if one exists. f == g == 0 gives 1.
    friend std::optional<K> proportionality(const Form& f, const Form& g) {
        if (!(f.space_ == g.space_) || f.degrees_ != g.degrees_) return std::nullopt;
        if (f.is_zero()) return g.is_zero() ? std::optional<K>(K{}) : std::nullopt;
        if (g.is_zero()) return std::nullopt;
        if (f.terms_.size() != g.terms_.size()) return std::nullopt;
        const auto& [e0, c0] = *f.terms_.begin();
        auto it = g.terms_.find(e0);
        if (it == g.terms_.end()) return std::nullopt;
        K lambda = it->second * FieldOps<K>::inverse(c0);
        if (g == f.scaled(lambda)) return lambda;
        return std::nullopt;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = FieldOps<K>::str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (first) {
                if (neg) s += "-";
                first = false;
            } else {
                s += neg ? " - " : " + ";
            }
            std::string mono = monomial_str(e);
            bool unit_coeff = (cs == "1");
            if (mono.empty()) {
                s += needs_parens(cs) ? "(" + cs + ")" : cs;
            } else if (unit_coeff) {
                s += mono;
            } else {
                s += (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mono;
            }
        }
        return s;
    }

   private:
    static std::vector<int> degrees_of(const Space& s, const ExpVec& e) {
        std::vector<int> degs;
        int off = 0;
        for (int i = 0; i < s.nfactors(); ++i) {
            int d = 0;
            for (int j = 0; j < s.factor(i).dim; ++j) d += e[static_cast<std::size_t>(off + j)];
            degs.push_back(d);
            off += s.factor(i).dim;
        }
        return degs;
    }

    static std::vector<int> fix_negative(std::vector<int> degs, int factor) {
        degs[static_cast<std::size_t>(factor)] = 0;
        return degs;
    }

    K one_like() const {
        if (!terms_.empty()) return FieldOps<K>::one(terms_.begin()->second);
        return FieldOps<K>::one(K{});
    }

    int factor_of(int var) const {
        int off = 0;
        for (int i = 0; i < space_.nfactors(); ++i) {
            if (var < off + space_.factor(i).dim) return i;
            off += space_.factor(i).dim;
        }
        throw space_mismatch("variable index out of range");
    }

    void check_exponent(const ExpVec& e) const {
        if (static_cast<int>(e.size()) != space_.total_dim()) throw space_mismatch("exponent length does not match space");
        int off = 0;
        for (int i = 0; i < space_.nfactors(); ++i) {
            int d = 0;
            for (int j = 0; j < space_.factor(i).dim; ++j) d += e[static_cast<std::size_t>(off + j)];
            if (d != degrees_[static_cast<std::size_t>(i)]) throw space_mismatch("monomial degree does not match declared degree");
            off += space_.factor(i).dim;
        }
    }

    void check_same_shape(const Form& o) const {
        if (!(space_ == o.space_) || degrees_ != o.degrees_) throw space_mismatch("forms over different spaces or degrees");
    }

    std::string monomial_str(const ExpVec& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += space_.var_name(static_cast<int>(i));
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    static bool needs_parens(const std::string& cs) { return cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos; }

    Space space_;
    std::vector<int> degrees_;
    TermMap terms_;
};

/// One-coefficient view of a fully contracted (degree-zero) form.
template <class K>
K as_scalar(const Form<K>& f) {
    for (int d : f.degrees()) {
        if (d != 0) throw degree_mismatch("form has positive degree, not a scalar");
    }
    return f.is_zero() ? K{} : f.terms().begin()->second;
}

/// Substitute `images[i]` for the i-th variable of `f`. Images live in one
/// common space; variables from one factor of f's space must get images of
/// one common degree vector, so the result stays homogeneous.
template <class K>
Form<K> substitute(const Form<K>& f, const std::vector<Form<K>>& images) {
    if (static_cast<int>(images.size()) != f.space().total_dim()) throw arity_mismatch("one image per variable required");
    if (images.empty()) throw arity_mismatch("no images");
    const Space& target = images[0].space();
    for (const auto& g : images) {
        if (!(g.space() == target)) throw inhomogeneous_images("images must share one space");
    }
    std::vector<int> out_degs(static_cast<std::size_t>(target.nfactors()), 0);
    int var = 0;
    for (int fac = 0; fac < f.space().nfactors(); ++fac) {
        const std::vector<int>& idegs = images[static_cast<std::size_t>(var)].degrees();
        for (int j = 0; j < f.space().factor(fac).dim; ++j) {
            if (images[static_cast<std::size_t>(var + j)].degrees() != idegs)
                throw inhomogeneous_images("images of one factor must share one degree");
        }
        for (std::size_t t = 0; t < out_degs.size(); ++t) out_degs[t] += idegs[t] * f.degree(fac);
        var += f.space().factor(fac).dim;
    }
    Form<K> r(target, out_degs);
    // memoized positive powers per image (exponent e lives at slot e-1)
    std::vector<std::vector<Form<K>>> powers(images.size());
    auto power = [&](std::size_t i, int e) -> const Form<K>& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(images[i]);
        while (static_cast<int>(cache.size()) < e) cache.push_back(cache.back() * images[i]);
        return cache[static_cast<std::size_t>(e - 1)];
    };
    for (const auto& [e, c] : f.terms()) {
        Form<K> term = Form<K>::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) term = term * power(i, e[i]);
        }
        // term now has factor degrees idegs * |e| = out_degs
        r = r + term;
    }
    return r;
}

/// Scale a rational form to primitive integer coefficients whose leading
/// (first canonical) coefficient is positive; returns the applied factor s
/// with primitive = f.scaled(s).
inline std::pair<Form<Rational>, Rational> primitive_part(const Form<Rational>& f, bool sign_normalize = true) {
    if (f.is_zero()) return {f, Rational(1)};
    Int den = 1;
    for (const auto& [e, c] : f.terms()) den = den / gcd(den, c.den()) * c.den();
    Int g = 0;
    for (const auto& [e, c] : f.terms()) g = gcd(g, c.num() * (den / c.den()));
    Rational s(den, g);
    if (sign_normalize && f.terms().begin()->second.sign() < 0) s = -s;
    return {f.scaled(s), s};
}

/// QuadExt forms are normalized by the common rational content of all
/// components; the radicand structure is untouched.
inline std::pair<Form<QuadExt>, QuadExt> primitive_part(const Form<QuadExt>& f, bool sign_normalize = true) {
    if (f.is_zero()) return {f, QuadExt(Rational(1))};
    Int den = 1;
    Int g = 0;
    for (const auto& [e, c] : f.terms()) {
        for (const Rational* part : {&c.a(), &c.b()}) {
            if (part->is_zero()) continue;
            den = den / gcd(den, part->den()) * part->den();
        }
    }
    for (const auto& [e, c] : f.terms()) {
        for (const Rational* part : {&c.a(), &c.b()}) {
            if (part->is_zero()) continue;
            g = gcd(g, part->num() * (den / part->den()));
        }
    }
    Rational s(den, g);
    if (sign_normalize) {
        const QuadExt& lead = f.terms().begin()->second;
        const Rational& probe = lead.a().is_zero() ? lead.b() : lead.a();
        if (probe.sign() < 0) s = -s;
    }
    QuadExt se(s);
    return {f.scaled(se), se};
}

/// Pullback of a form in 4 lift variables along the Segre map
/// [x:y],[u:v] -> [xu:xv:yu:yv]; the result is bihomogeneous of bidegree
/// (deg, deg).
template <class K>
Form<K> segre_pullback(const Form<K>& e) {
    if (e.space().nfactors() != 1 || e.space().factor(0).dim != 4) throw wrong_arity("segre pullback needs a form in 4 variables");
    Space bi = Space::biprimal();
    K one = FieldOps<K>::one(e.is_zero() ? K{} : e.lead_coefficient());
    auto bilinear = [&](int xi, int ui) {
        ExpVec v(4, 0);
        v[static_cast<std::size_t>(xi)] = 1;
        v[static_cast<std::size_t>(2 + ui)] = 1;
        return Form<K>::monomial(bi, v, one);
    };
    std::vector<Form<K>> images{bilinear(0, 0), bilinear(0, 1), bilinear(1, 0), bilinear(1, 1)};
    return substitute(e, images);
}

}  // namespace recon

#endif
