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

#ifndef RECON_VARSPACE_HPP
#define RECON_VARSPACE_HPP

#include <functional>
#include <string>
#include <vector>

#include "recon/errors.hpp"

namespace recon {

/// Exponent vector of a monomial; entries follow the concatenated variable
/// list of the owning space.
using ExpVec = std::vector<int>;

enum class VarKind { primal, dual, lift, primal2, dual2 };

inline char var_letter(VarKind k) {
    switch (k) {
        case VarKind::primal: return 'x';
        case VarKind::dual: return 'w';
        case VarKind::lift: return 'X';
        case VarKind::primal2: return 'u';
        case VarKind::dual2: return 'v';
    }
    return '?';
}

inline VarKind opposite_kind(VarKind k) {
    switch (k) {
        case VarKind::primal: return VarKind::dual;
        case VarKind::dual: return VarKind::primal;
        case VarKind::primal2: return VarKind::dual2;
        case VarKind::dual2: return VarKind::primal2;
        case VarKind::lift: throw space_mismatch("lift space has no dual");
    }
    throw space_mismatch("unknown kind");
}

struct SpaceFactor {
    VarKind kind;
    int dim;
    friend bool operator==(const SpaceFactor& a, const SpaceFactor& b) = default;
};

/// A graded variable space: one factor for plain forms, two for the
/// double-binary (bihomogeneous) setting. Exponent vectors concatenate the
/// factors in order.
class Space {
   public:
    Space() = default;
    explicit Space(std::vector<SpaceFactor> factors) : factors_(std::move(factors)) {}

    static Space primal(int dim) { return Space({{VarKind::primal, dim}}); }
    static Space dual(int dim) { return Space({{VarKind::dual, dim}}); }
    static Space lift(int dim) { return Space({{VarKind::lift, dim}}); }
    static Space biprimal() { return Space({{VarKind::primal, 2}, {VarKind::primal2, 2}}); }
    static Space bidual() { return Space({{VarKind::dual, 2}, {VarKind::dual2, 2}}); }

    int nfactors() const { return static_cast<int>(factors_.size()); }
    const SpaceFactor& factor(int i) const { return factors_[static_cast<std::size_t>(i)]; }
    const std::vector<SpaceFactor>& factors() const { return factors_; }

    int total_dim() const {
        int n = 0;
        for (const auto& f : factors_) n += f.dim;
        return n;
    }

    int var_offset(int factor) const {
        int off = 0;
        for (int i = 0; i < factor; ++i) off += factors_[static_cast<std::size_t>(i)].dim;
        return off;
    }

    Space opposite() const {
        std::vector<SpaceFactor> out;
        out.reserve(factors_.size());
        for (const auto& f : factors_) out.push_back({opposite_kind(f.kind), f.dim});
        return Space(out);
    }

    bool has_kind(VarKind k) const {
        for (const auto& f : factors_) {
            if (f.kind == k) return true;
        }
        return false;
    }

    friend bool operator==(const Space& a, const Space& b) = default;

    std::string var_name(int index) const {
        int off = 0;
        for (const auto& f : factors_) {
            if (index < off + f.dim) return std::string(1, var_letter(f.kind)) + std::to_string(index - off);
            off += f.dim;
        }
        return "?";
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += " x ";
            s += std::string(1, var_letter(factors_[i].kind)) + "[" + std::to_string(factors_[i].dim) + "]";
        }
        return s;
    }

   private:
    std::vector<SpaceFactor> factors_;
};

/// Monomial order: lexicographic with the earlier variables dominating, so
/// x0^d sorts first in every degree slice.
struct LexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

/// All exponent vectors of the given total over `dim` slots, in LexDesc
/// order (x0-power descending first).
inline void exponents_of_degree(int dim, int total, std::vector<ExpVec>& out) {
    ExpVec cur(static_cast<std::size_t>(dim), 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == dim - 1) {
            cur[static_cast<std::size_t>(pos)] = rest;
            out.push_back(cur);
            return;
        }
        for (int e = rest; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, rest - e);
        }
    };
    if (dim > 0) rec(0, total);
}

/// Canonical monomial exponents of a (possibly multi-factor) space for the
/// per-factor degrees, in LexDesc order on the concatenated vectors.
inline std::vector<ExpVec> canonical_exponents(const Space& s, const std::vector<int>& degrees) {
    std::vector<std::vector<ExpVec>> per;
    for (int i = 0; i < s.nfactors(); ++i) {
        std::vector<ExpVec> e;
        exponents_of_degree(s.factor(i).dim, degrees[static_cast<std::size_t>(i)], e);
        per.push_back(std::move(e));
    }
    std::vector<ExpVec> out{{}};
    for (const auto& block : per) {
        std::vector<ExpVec> next;
        next.reserve(out.size() * block.size());
        for (const auto& head : out) {
            for (const auto& tail : block) {
                ExpVec v = head;
                v.insert(v.end(), tail.begin(), tail.end());
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace recon

#endif
