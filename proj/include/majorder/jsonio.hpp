#pragma once

#include <json.hpp>

#include "majorder/convex_checks.hpp"
#include "majorder/measure.hpp"
#include "majorder/verifiers.hpp"

namespace majorder {

using Json = nlohmann::json;

// Points serialize as plain arrays; packed symmetric points carry a tag and
// their matrix dimension so files are unambiguous.
Json point_to_json(const OrderedSpace& space, const Point& p);
Point point_from_json(const OrderedSpace& space, const Json& j);

Json space_to_json(const OrderedSpace& space);
OrderedSpace space_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j);

Json verdict_to_json(const MajorizationVerdict& v);
Json class_verdict_to_json(const ClassVerdict& v);
Json report_to_json(const InequalityReport& r);

} // namespace majorder
