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

#ifndef RECON_COVARIANT_HPP
#define RECON_COVARIANT_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "recon/linalg.hpp"
#include "recon/transvectants.hpp"

namespace recon {

enum class Variance { covariant, contravariant };

inline Variance flipped(Variance v) { return v == Variance::covariant ? Variance::contravariant : Variance::covariant; }

class CovExpr;
using CovExprPtr = std::shared_ptr<const CovExpr>;

/// Symbolic (contra)variant: a composition tree over the input form(s) built
/// from transvectants, apolarity pairings, tau maps, products and Clebsch
/// transfers. Order, degree and variance are computed bottom-up when the
/// tree is built; evaluation re-checks them against the actual result.
class CovExpr {
   public:
    enum class Kind { leaf, product, transvect, transvect2, omega3, dpair, tau_map, tau2_map, transfer_i, transfer_j };

    Kind kind = Kind::leaf;
    int slot = 0;                 // leaf: index into the evaluation inputs
    std::vector<int> levels;      // transvectant levels / omega level
    std::vector<CovExprPtr> kids;
    Variance variance = Variance::covariant;
    std::vector<int> dims;        // variable-space shape, one entry per factor
    std::vector<int> orders;      // per-factor target degree
    int degree = 1;               // degree as polynomial map in the inputs
    std::vector<int> slot_degrees;  // degree split per input slot
    std::string name;

    /// The input form itself: shape `dims`, degrees `orders` (covariant).
    static CovExprPtr leaf_form(int slot, std::vector<int> dims, std::vector<int> orders, std::string name) {
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::leaf;
        e->slot = slot;
        e->dims = std::move(dims);
        e->orders = std::move(orders);
        e->degree = 1;
        e->slot_degrees.assign(static_cast<std::size_t>(slot) + 1, 0);
        e->slot_degrees[static_cast<std::size_t>(slot)] = 1;
        e->name = std::move(name);
        return e;
    }

    static CovExprPtr product(const CovExprPtr& a, const CovExprPtr& b) {
        require_same_shape(*a, *b);
        if (a->variance != b->variance) throw space_mismatch("product of mixed variance expressions");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::product;
        e->kids = {a, b};
        e->variance = a->variance;
        e->dims = a->dims;
        e->orders = add(a->orders, b->orders);
        e->degree = a->degree + b->degree;
        e->slot_degrees = merge_slots(a->slot_degrees, b->slot_degrees);
        e->name = a->name + "*" + b->name;
        return e;
    }

    static CovExprPtr power(const CovExprPtr& a, int n) {
        if (n < 1) throw input_error("Precondition", "power needs n >= 1");
        CovExprPtr e = a;
        for (int i = 1; i < n; ++i) e = product(e, a);
        auto named = std::make_shared<CovExpr>(*e);
        named->name = a->name + "^" + std::to_string(n);
        return named;
    }

    static CovExprPtr transvectant(const CovExprPtr& a, const CovExprPtr& b, int l) {
        require_same_shape(*a, *b);
        if (a->variance != b->variance) throw space_mismatch("transvectant of mixed variance expressions");
        if (a->dims != std::vector<int>{2}) throw space_mismatch("binary transvectant on non-binary shape");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::transvect;
        e->levels = {l};
        e->kids = {a, b};
        e->variance = a->variance;
        e->dims = a->dims;
        e->orders = {a->orders[0] + b->orders[0] - 2 * l};
        if (e->orders[0] < 0) throw level_too_high("transvectant level too high for declared orders");
        e->degree = a->degree + b->degree;
        e->slot_degrees = merge_slots(a->slot_degrees, b->slot_degrees);
        e->name = "(" + a->name + "," + b->name + ")_" + std::to_string(l);
        return e;
    }

    static CovExprPtr transvectant2(const CovExprPtr& a, const CovExprPtr& b, int l, int m) {
        require_same_shape(*a, *b);
        if (a->variance != b->variance) throw space_mismatch("transvectant of mixed variance expressions");
        if (a->dims != std::vector<int>{2, 2}) throw space_mismatch("bi-level transvectant on non-double-binary shape");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::transvect2;
        e->levels = {l, m};
        e->kids = {a, b};
        e->variance = a->variance;
        e->dims = a->dims;
        e->orders = {a->orders[0] + b->orders[0] - 2 * l, a->orders[1] + b->orders[1] - 2 * m};
        if (e->orders[0] < 0 || e->orders[1] < 0) throw level_too_high("bi-level too high for declared orders");
        e->degree = a->degree + b->degree;
        e->slot_degrees = merge_slots(a->slot_degrees, b->slot_degrees);
        std::string lv = (l == m) ? std::to_string(l) : "{" + std::to_string(l) + "," + std::to_string(m) + "}";
        e->name = "(" + a->name + "," + b->name + ")_" + lv;
        return e;
    }

    static CovExprPtr omega(const CovExprPtr& a, const CovExprPtr& b, const CovExprPtr& c, int l) {
        require_same_shape(*a, *b);
        require_same_shape(*a, *c);
        if (a->variance != b->variance || a->variance != c->variance) throw space_mismatch("omega of mixed variance expressions");
        if (a->dims != std::vector<int>{3}) throw space_mismatch("omega transvectant on non-ternary shape");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::omega3;
        e->levels = {l};
        e->kids = {a, b, c};
        e->variance = a->variance;
        e->dims = a->dims;
        e->orders = {a->orders[0] + b->orders[0] + c->orders[0] - 3 * l};
        if (e->orders[0] < 0) throw level_too_high("omega level too high for declared orders");
        e->degree = a->degree + b->degree + c->degree;
        e->slot_degrees = merge_slots(merge_slots(a->slot_degrees, b->slot_degrees), c->slot_degrees);
        e->name = "(" + a->name + "," + b->name + "," + c->name + ")_" + std::to_string(l);
        return e;
    }

    /// Apolarity pairing node. The lower-order argument differentiates the
    /// higher-order one, so the result keeps the variance of the latter;
    /// equal orders contract fully to an invariant.
    static CovExprPtr dpair(const CovExprPtr& a, const CovExprPtr& b) {
        if (a->dims != b->dims) throw space_mismatch("apolarity pairing across different shapes");
        if (a->variance == b->variance) throw space_mismatch("apolarity pairing needs one covariant and one contravariant");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::dpair;
        e->kids = {a, b};
        e->dims = a->dims;
        int sign = 0;
        e->orders.resize(a->orders.size());
        for (std::size_t i = 0; i < a->orders.size(); ++i) {
            int d = b->orders[i] - a->orders[i];
            e->orders[i] = d < 0 ? -d : d;
            if (d != 0) {
                int s = d > 0 ? 1 : -1;
                if (sign != 0 && s != sign) throw degree_too_high("apolarity pairing with inconsistent per-factor orders");
                sign = s;
            }
        }
        e->variance = sign >= 0 ? b->variance : a->variance;
        e->degree = a->degree + b->degree;
        e->slot_degrees = merge_slots(a->slot_degrees, b->slot_degrees);
        e->name = "D(" + a->name + "," + b->name + ")";
        return e;
    }

    static CovExprPtr tau_of(const CovExprPtr& a) {
        if (a->dims != std::vector<int>{2}) throw space_mismatch("tau needs a binary expression");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::tau_map;
        e->kids = {a};
        e->variance = flipped(a->variance);
        e->dims = a->dims;
        e->orders = a->orders;
        e->degree = a->degree;
        e->slot_degrees = a->slot_degrees;
        e->name = "tau(" + a->name + ")";
        return e;
    }

    static CovExprPtr tau2_of(const CovExprPtr& a) {
        if (a->dims != std::vector<int>{2, 2}) throw space_mismatch("tau2 needs a double-binary expression");
        auto e = std::make_shared<CovExpr>();
        e->kind = Kind::tau2_map;
        e->kids = {a};
        e->variance = flipped(a->variance);
        e->dims = a->dims;
        e->orders = a->orders;
        e->degree = a->degree;
        e->slot_degrees = a->slot_degrees;
        e->name = "tau2(" + a->name + ")";
        return e;
    }

    static CovExprPtr transfer(const CovExprPtr& a, BinaryQuarticInvariant which) {
        if (a->dims != std::vector<int>{3} || a->orders != std::vector<int>{4}) throw space_mismatch("transfer needs a ternary order-4 expression");
        auto e = std::make_shared<CovExpr>();
        e->kind = which == BinaryQuarticInvariant::I ? Kind::transfer_i : Kind::transfer_j;
        e->kids = {a};
        e->variance = flipped(a->variance);
        e->dims = a->dims;
        e->orders = {which == BinaryQuarticInvariant::I ? 4 : 6};
        e->degree = a->degree * (which == BinaryQuarticInvariant::I ? 2 : 3);
        e->slot_degrees = scale_slots(a->slot_degrees, which == BinaryQuarticInvariant::I ? 2 : 3);
        e->name = (which == BinaryQuarticInvariant::I ? "transferI(" : "transferJ(") + a->name + ")";
        return e;
    }

    static CovExprPtr named(const CovExprPtr& a, std::string name) {
        auto e = std::make_shared<CovExpr>(*a);
        e->name = std::move(name);
        return e;
    }

    int total_order() const {
        int s = 0;
        for (int o : orders) s += o;
        return s;
    }

    /// Expected variable space of the evaluated expression.
    Space space() const {
        std::vector<SpaceFactor> fs;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            VarKind kind;
            if (i == 0) kind = variance == Variance::covariant ? VarKind::primal : VarKind::dual;
            else kind = variance == Variance::covariant ? VarKind::primal2 : VarKind::dual2;
            fs.push_back({kind, dims[i]});
        }
        return Space(fs);
    }

   private:
    static void require_same_shape(const CovExpr& a, const CovExpr& b) {
        if (a.dims != b.dims) throw space_mismatch("expressions over different shapes");
    }
    static std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    static std::vector<int> merge_slots(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
        return r;
    }
    static std::vector<int> scale_slots(const std::vector<int>& a, int m) {
        std::vector<int> r = a;
        for (auto& x : r) x *= m;
        return r;
    }
};

/// Weight per the covariant transformation law; throws when it is not an
/// integer (such an expression cannot be equivariant).
inline Int covariant_weight(const CovExpr& e, int source_degree, int n) {
    Int num = Int(source_degree) * e.degree + (e.variance == Variance::covariant ? -e.total_order() : e.total_order());
    if (num % (n + 1) != 0) throw math_error("WeightNotIntegral", e.name);
    return num / (n + 1);
}

/// Evaluator with per-call memoization over shared subtrees.
template <class K>
class CovEvaluator {
   public:
    explicit CovEvaluator(std::vector<Form<K>> inputs) : inputs_(std::move(inputs)) {}

    const Form<K>& value(const CovExprPtr& e) {
        auto it = memo_.find(e.get());
        if (it != memo_.end()) return it->second;
        Form<K> v = compute(e);
        if (v.degrees() != e->orders) throw math_error("OrderBookkeeping", "evaluated " + e->name + " has unexpected degrees");
        if (!(v.space() == e->space())) throw math_error("OrderBookkeeping", "evaluated " + e->name + " has unexpected space");
        return memo_.emplace(e.get(), std::move(v)).first->second;
    }

   private:
    Form<K> compute(const CovExprPtr& e) {
        switch (e->kind) {
            case CovExpr::Kind::leaf: {
                if (e->slot < 0 || e->slot >= static_cast<int>(inputs_.size())) throw arity_mismatch("missing input slot for " + e->name);
                const Form<K>& f = inputs_[static_cast<std::size_t>(e->slot)];
                if (!(f.space() == e->space()) || f.degrees() != e->orders)
                    throw degree_mismatch("input form for " + e->name + " must live in " + e->space().str());
                return f;
            }
            case CovExpr::Kind::product: return value(e->kids[0]) * value(e->kids[1]);
            case CovExpr::Kind::transvect: return transvect(value(e->kids[0]), value(e->kids[1]), e->levels[0]);
            case CovExpr::Kind::transvect2: return transvect2(value(e->kids[0]), value(e->kids[1]), e->levels[0], e->levels[1]);
            case CovExpr::Kind::omega3: return omega_transvect3(value(e->kids[0]), value(e->kids[1]), value(e->kids[2]), e->levels[0]);
            case CovExpr::Kind::dpair: {
                const Form<K>& a = value(e->kids[0]);
                const Form<K>& b = value(e->kids[1]);
                bool a_into_b = true;
                for (std::size_t i = 0; i < a.degrees().size(); ++i) {
                    if (a.degrees()[i] > b.degrees()[i]) a_into_b = false;
                }
                return a_into_b ? apolar(a, b) : apolar(b, a);
            }
            case CovExpr::Kind::tau_map: return tau(value(e->kids[0]));
            case CovExpr::Kind::tau2_map: return tau2(value(e->kids[0]));
            case CovExpr::Kind::transfer_i: return clebsch_transfer(value(e->kids[0]), BinaryQuarticInvariant::I);
            case CovExpr::Kind::transfer_j: return clebsch_transfer(value(e->kids[0]), BinaryQuarticInvariant::J);
        }
        throw math_error("Internal", "unknown expression kind");
    }

    std::vector<Form<K>> inputs_;
    std::map<const CovExpr*, Form<K>> memo_;
};

template <class K>
Form<K> evaluate(const CovExprPtr& e, const std::vector<Form<K>>& inputs) {
    CovEvaluator<K> ev(inputs);
    return ev.value(e);
}

/// Linear independence of an evaluated family in its degree slice. Returns
/// the determinant when the coefficient matrix is square (Lemma-style Delta)
/// and the plain rank verdict otherwise.
template <class K>
struct IndependenceReport {
    bool independent = false;
    int rank = 0;
    K det{};  // square case only
    bool square = false;
};

template <class K>
IndependenceReport<K> independence_at(const std::vector<Form<K>>& values) {
    IndependenceReport<K> rep;
    if (values.empty()) return rep;
    Matrix<K> m = coefficient_matrix(values);
    rep.square = m.rows() == m.cols();
    if (rep.square) {
        rep.det = det(m);
        rep.independent = !FieldOps<K>::is_zero(rep.det);
        rep.rank = rep.independent ? m.rows() : rank(m);
    } else {
        rep.rank = rank(m);
        rep.independent = rep.rank == m.rows();
    }
    return rep;
}

template <class K>
IndependenceReport<K> independence_at(const std::vector<CovExprPtr>& family, const std::vector<Form<K>>& inputs) {
    CovEvaluator<K> ev(inputs);
    std::vector<Form<K>> values;
    values.reserve(family.size());
    for (const auto& e : family) values.push_back(ev.value(e));
    return independence_at(values);
}

}  // namespace recon

#endif
