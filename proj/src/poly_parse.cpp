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

#include "recon/poly_parse.hpp"

#include <cctype>

namespace recon {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        if (i >= s.size()) throw parse_error("unexpected end of input", i);
        return s[i++];
    }
};

bool is_var_letter(char c) { return c == 'x' || c == 'w' || c == 'X' || c == 'u' || c == 'v'; }

VarKind kind_of_letter(char c, std::size_t pos) {
    switch (c) {
        case 'x': return VarKind::primal;
        case 'w': return VarKind::dual;
        case 'X': return VarKind::lift;
        case 'u': return VarKind::primal2;
        case 'v': return VarKind::dual2;
        default: throw parse_error(std::string("unknown variable letter '") + c + "'", pos);
    }
}

Int parse_uint(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    std::string digits;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) digits += c.s[c.i++];
    if (digits.empty()) throw parse_error("expected a number", start);
    return Int(digits);
}

int global_var_index(const Space& space, VarKind kind, long idx, std::size_t pos) {
    int off = 0;
    for (int f = 0; f < space.nfactors(); ++f) {
        const auto& fac = space.factor(f);
        if (fac.kind == kind) {
            if (idx >= fac.dim) throw parse_error("variable index out of range for space " + space.str(), pos);
            return off + static_cast<int>(idx);
        }
        off += fac.dim;
    }
    throw parse_error(std::string("variable letter '") + var_letter(kind) + "' not valid in space " + space.str(), pos);
}

}  // namespace

Form<Rational> parse_form(const std::string& text, const Space& space, std::optional<std::vector<int>> expected) {
    Cursor c{text};
    std::vector<std::pair<ExpVec, Rational>> parsed;

    bool first_term = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            c.take();
            sign = (ch == '-') ? -1 : 1;
        } else if (!first_term) {
            throw parse_error("expected '+' or '-' between terms", c.i);
        }
        first_term = false;

        Rational coeff(sign);
        bool have_coeff = false;
        c.skip_ws();
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            Int num = parse_uint(c);
            Int den = 1;
            if (c.peek() == '/') {
                c.take();
                den = parse_uint(c);
                if (den == 0) throw parse_error("zero denominator", c.i);
            }
            coeff = Rational(sign * num, den);
            have_coeff = true;
        }

        ExpVec e(static_cast<std::size_t>(space.total_dim()), 0);
        bool have_var = false;
        while (true) {
            c.skip_ws();
            std::size_t save = c.i;
            if (have_coeff || have_var) {
                if (c.peek() != '*') break;
                c.take();
            }
            c.skip_ws();
            if (c.i >= c.s.size() || !is_var_letter(c.s[c.i])) {
                if (have_coeff && !have_var && save == c.i) break;  // bare coefficient term
                throw parse_error("expected a variable", c.i);
            }
            char letter = c.s[c.i++];
            VarKind kind = kind_of_letter(letter, c.i - 1);
            Int idx = parse_uint(c);
            int var = global_var_index(space, kind, idx.get_si(), c.i);
            int exp = 1;
            if (c.peek() == '^') {
                c.take();
                exp = static_cast<int>(parse_uint(c).get_si());
            }
            e[static_cast<std::size_t>(var)] += exp;
            have_var = true;
        }
        if (!have_coeff && !have_var) throw parse_error("empty term", c.i);
        parsed.emplace_back(std::move(e), coeff);
    }
    if (parsed.empty()) throw parse_error("empty polynomial", 0);

    std::vector<int> degs;
    if (expected) {
        degs = *expected;
    } else {
        // infer per-factor degrees from the first term
        degs.assign(static_cast<std::size_t>(space.nfactors()), 0);
        int off = 0;
        for (int f = 0; f < space.nfactors(); ++f) {
            int d = 0;
            for (int j = 0; j < space.factor(f).dim; ++j) d += parsed[0].first[static_cast<std::size_t>(off + j)];
            degs[static_cast<std::size_t>(f)] = d;
            off += space.factor(f).dim;
        }
    }
    Form<Rational> out(space, degs);
    for (auto& [e, coeff] : parsed) {
        try {
            out.add_term(e, coeff);
        } catch (const space_mismatch&) {
            throw input_error("InhomogeneousInput", "term degrees do not match " + text);
        }
    }
    return out;
}

}  // namespace recon
