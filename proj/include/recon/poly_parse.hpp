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

#ifndef RECON_POLY_PARSE_HPP
#define RECON_POLY_PARSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "recon/form.hpp"

namespace recon {

/// Parse the polynomial text grammar
///   poly := term (('+'|'-') term)*
///   term := coeff ('*' monomial)? | monomial
///   monomial := var('^'int)? ('*' var('^'int)?)*
///   var := [xwXuv][0-9]+
/// into a rational form over `space`. Degrees are inferred from the first
/// term and every other term must match; `expected` pins them up front.
Form<Rational> parse_form(const std::string& text, const Space& space, std::optional<std::vector<int>> expected = std::nullopt);

}  // namespace recon

#endif
