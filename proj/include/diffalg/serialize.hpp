#pragma once

#include "diffalg/engine.hpp"
#include "diffalg/pencil.hpp"
#include "diffalg/reduction.hpp"
#include "diffalg/tropical.hpp"

#include <json.hpp>

namespace diffalg {

using Json = nlohmann::json;

/// Integer, or the string "-inf".
Json toJson(ExtInt v);
Json toJson(const OrderMatrix& m);
Json toJson(const TdetResult& t);
Json toJson(const DivisionCertificate& c);
Json toJson(const FormCertificate& c);
Json toJson(const RittPencil& p);
Json toJson(const ReductionStep& s);
Json toJson(const Trace& t);
Json toJson(const AutoreducedSet& a);
Json toJson(const Dimensions& d);

/// 1-based image list.
Json permToJson(const Perm& p);

ExtInt extIntFromJson(const Json& j);
OrderMatrix matrixFromJson(const Json& j, Convention convention = Convention::strong);

} // namespace diffalg
