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

#ifndef RECON_ERRORS_HPP
#define RECON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace recon {

/// Base for all errors raised by the library. `input_error` covers malformed
/// user input (CLI exit code 1); `math_error` covers typed mathematical
/// failure modes such as degenerate inputs (CLI exit code 2).
class recon_error : public std::runtime_error {
   public:
    recon_error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

class input_error : public recon_error {
   public:
    input_error(const std::string& kind, const std::string& what) : recon_error(kind, what) {}
};

class math_error : public recon_error {
   public:
    math_error(const std::string& kind, const std::string& what) : recon_error(kind, what) {}
};

struct division_by_zero : math_error {
    explicit division_by_zero(const std::string& w = "division by zero") : math_error("DivisionByZero", w) {}
};
struct mixed_field : input_error {
    explicit mixed_field(const std::string& w) : input_error("MixedField", w) {}
};
struct space_mismatch : input_error {
    explicit space_mismatch(const std::string& w) : input_error("SpaceMismatch", w) {}
};
struct degree_too_high : input_error {
    explicit degree_too_high(const std::string& w) : input_error("DegreeTooHigh", w) {}
};
struct level_too_high : input_error {
    explicit level_too_high(const std::string& w) : input_error("LevelTooHigh", w) {}
};
struct arity_mismatch : input_error {
    explicit arity_mismatch(const std::string& w) : input_error("ArityMismatch", w) {}
};
struct inhomogeneous_images : input_error {
    explicit inhomogeneous_images(const std::string& w) : input_error("InhomogeneousImages", w) {}
};
struct wrong_arity : input_error {
    explicit wrong_arity(const std::string& w) : input_error("WrongArity", w) {}
};
struct degree_mismatch : input_error {
    explicit degree_mismatch(const std::string& w) : input_error("DegreeMismatch", w) {}
};
struct characteristic_guard : input_error {
    explicit characteristic_guard(const std::string& w) : input_error("CharacteristicGuard", w) {}
};
struct parse_error : input_error {
    parse_error(const std::string& w, std::size_t position) : input_error("ParseError", w + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};
struct battery_undefined : input_error {
    explicit battery_undefined(const std::string& w) : input_error("BatteryUndefined", w) {}
};
struct battery_mismatch : input_error {
    explicit battery_mismatch(const std::string& w) : input_error("BatteryMismatch", w) {}
};

struct not_square : math_error {
    explicit not_square(const std::string& w = "matrix is not square") : math_error("NotSquare", w) {}
};
struct singular_matrix : math_error {
    explicit singular_matrix(const std::string& w = "matrix is singular") : math_error("Singular", w) {}
};
struct dependent_basis : math_error {
    explicit dependent_basis(const std::string& w) : math_error("DependentBasis", w) {}
};
struct not_independent_at_f : math_error {
    explicit not_independent_at_f(const std::string& w) : math_error("NotIndependentAtF", w) {}
};
struct degenerate_conic : math_error {
    explicit degenerate_conic(const std::string& w) : math_error("DegenerateConic", w) {}
};
struct wrong_rank : math_error {
    wrong_rank(const std::string& w, int rank_found) : math_error("WrongRank", w), rank(rank_found) {}
    int rank;
};
struct search_exhausted : math_error {
    explicit search_exhausted(const std::string& w) : math_error("SearchExhausted", w) {}
};
struct unsupported : math_error {
    explicit unsupported(const std::string& w) : math_error("Unsupported", w) {}
};

}  // namespace recon

#endif
