#pragma once

// JSON encodings. Integers of unbounded size are written as decimal strings;
// words use the text syntax of parse_word.

#include <json.hpp>

#include "gamma_omega/abelian.hpp"
#include "gamma_omega/homology.hpp"
#include "gamma_omega/milnor.hpp"
#include "gamma_omega/nq.hpp"
#include "gamma_omega/quadratic.hpp"
#include "gamma_omega/whitehead.hpp"
#include "gamma_omega/words.hpp"

namespace gamma_omega {

using Json = nlohmann::json;

// Accepts decimal strings and JSON integers.
Integer integer_from_json(const Json& j);
Json integer_to_json(const Integer& x);
Json exponents_to_json(const Exponents& e);

void to_json(Json& j, const IntMatrix& m);
void from_json(const Json& j, IntMatrix& m);
void to_json(Json& j, const FgAbelianGroup& g);
void from_json(const Json& j, FgAbelianGroup& g);
void to_json(Json& j, const AbMap& f);
AbMap abmap_from_json(const Json& j);

void to_json(Json& j, const FunctorName& f);
void from_json(const Json& j, FunctorName& f);

void to_json(Json& j, const FpPresentation& p);
void from_json(const Json& j, FpPresentation& p);
void to_json(Json& j, const PcPresentation& p);
void from_json(const Json& j, PcPresentation& p);
// Presentation plus order, class, layers and the images of the presentation
// generators.
Json quotient_to_json(const NilpotentQuotient& q);

Json magnus_to_json(const MagnusSeries& s);

void to_json(Json& j, const E2Page& page);
void from_json(const Json& j, E2Page& page);
void to_json(Json& j, const HomologyAssembly& h);

void to_json(Json& j, const BraidWord& b);
void from_json(const Json& j, BraidWord& b);
void to_json(Json& j, const MuValue& v);
void from_json(const Json& j, MuValue& v);
void to_json(Json& j, const VanishingLevel& v);
Json link_to_json(const LinkData& link);

void to_json(Json& j, const WhiteheadTerm& t);
void to_json(Json& j, const Pi3Report& r);
void to_json(Json& j, const Report& r);
void from_json(const Json& j, Report& r);

}  // namespace gamma_omega
