#pragma once

#include <string>

#include "json.hpp"

#include "inclab/containers.hpp"
#include "inclab/generators.hpp"
#include "inclab/incidence.hpp"
#include "inclab/partition.hpp"

namespace inclab {

using Json = nlohmann::ordered_json;

/// Points and curves plus free-form metadata (generator spec, seed, labels).
struct Instance {
  PointSet points;
  CurveSet curves;
  Json metadata = Json::object();

  friend bool operator==(const Instance&, const Instance&) = default;
};

Json to_json(const Rat& r);
Json to_json(const Point3& p);
Json to_json(const Plane& p);
Json to_json(const Sphere& s);
Json to_json(const Curve& c);
Json to_json(const Instance& inst);
Json to_json(const GenSpec& spec);
Json to_json(const IncidenceReport& r);
Json to_json(const ContainerReport& r);
/// `timing` false drops wall-clock fields so output is reproducible.
Json to_json(const PartitionTrace& t, bool timing = true);

/// Parsers throw Error(InvalidInstance) on malformed input.
Rat rat_from_json(const Json& j);
Point3 point_from_json(const Json& j);
Curve curve_from_json(const Json& j);
Instance instance_from_json(const Json& j);

/// File helpers; unreadable or unwritable paths throw Error(InvalidInstance).
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace inclab
