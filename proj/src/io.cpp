#include "inclab/io.hpp"

#include <fstream>
#include <sstream>

namespace inclab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInstance, what); }

Json ivec(const IVec3& v) {
  return Json::array({to_json(Rat(v[0])), to_json(Rat(v[1])), to_json(Rat(v[2]))});
}

Vec3 vec_from_json(const Json& j) { return point_from_json(j); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const Point3& p) { return Json::array({to_json(p.x), to_json(p.y), to_json(p.z)}); }

Json to_json(const Plane& p) { return {{"normal", ivec(p.normal)}, {"offset", to_json(p.offset)}}; }

Json to_json(const Sphere& s) { return {{"center", to_json(s.center)}, {"r2", to_json(s.r2)}}; }

Json to_json(const Curve& c) {
  if (c.is_line()) {
    return {{"type", "line"},
            {"anchor", to_json(c.line().anchor)},
            {"direction", ivec(c.line().direction)}};
  }
  const Circle3& ci = c.circle();
  return {{"type", "circle"},
          {"plane", to_json(ci.plane)},
          {"center", to_json(ci.center)},
          {"rho2", to_json(ci.rho2)}};
}

Json to_json(const Instance& inst) {
  Json pts = Json::array();
  for (const auto& p : inst.points) pts.push_back(to_json(p));
  Json cs = Json::array();
  for (const auto& c : inst.curves) cs.push_back(to_json(c));
  return {{"points", std::move(pts)}, {"curves", std::move(cs)}, {"metadata", inst.metadata}};
}

Json to_json(const GenSpec& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"a", s.a},
          {"b", s.b},
          {"copies", s.copies},
          {"m", s.m},
          {"n", s.n},
          {"range", s.range},
          {"den", s.den},
          {"circle_payload", s.circle_payload},
          {"seed", s.seed}};
}

Json to_json(const IncidenceReport& r) {
  std::uint32_t max_p = 0, max_c = 0;
  for (auto d : r.point_degrees) max_p = std::max(max_p, d);
  for (auto d : r.curve_degrees) max_c = std::max(max_c, d);
  return {{"total", r.total},
          {"max_point_degree", max_p},
          {"max_curve_degree", max_c},
          {"point_degrees", r.point_degrees},
          {"curve_degrees", r.curve_degrees}};
}

Json to_json(const ContainerReport& r) {
  Json j{{"q", r.q}, {"q_plane", r.q_plane}, {"q_sphere", r.q_sphere}};
  j["plane_witness"] = r.plane_witness ? to_json(*r.plane_witness) : Json();
  j["plane_members"] = r.plane_members;
  j["sphere_witness"] = r.sphere_witness ? to_json(*r.sphere_witness) : Json();
  j["sphere_members"] = r.sphere_members;
  return j;
}

Json to_json(const PartitionTrace& t, bool timing) {
  Json cells = Json::array();
  for (const auto& c : t.cells) {
    std::string key;
    for (auto s : c.key.signs) key += s > 0 ? '+' : (s < 0 ? '-' : '0');
    cells.push_back({{"signs", key}, {"points", c.points}, {"curves", c.curves}});
  }
  Json j{{"degree", t.degree},
         {"rounds", t.rounds},
         {"target_degree", t.target_degree},
         {"below_base", t.below_base},
         {"depth", t.depth},
         {"zero_set_points", t.zero_set_points},
         {"zero_set_curves", t.zero_set_curves},
         {"max_cell_points", t.max_cell_points},
         {"cell_point_bound", t.cell_point_bound},
         {"tests", t.tests},
         {"curve_visits", t.curve_visits},
         {"cells", std::move(cells)}};
  if (timing) j["seconds"] = t.seconds;
  return j;
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) bad("rational must be a \"num/den\" string");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

Point3 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("point must be a 3-element array");
  return {rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2])};
}

Curve curve_from_json(const Json& j) {
  const Json& type = field(j, "type");
  try {
    if (type == "line") {
      return canonical(Curve(Line3::make(point_from_json(field(j, "anchor")),
                                         vec_from_json(field(j, "direction")))));
    }
    if (type == "circle") {
      const Json& pl = field(j, "plane");
      const Plane plane =
          Plane::make(vec_from_json(field(pl, "normal")), rat_from_json(field(pl, "offset")));
      return canonical(Curve(Circle3::make(plane, point_from_json(field(j, "center")),
                                           rat_from_json(field(j, "rho2")))));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidInstance) throw;
    bad(std::string("invalid curve: ") + e.what());
  }
  bad("unknown curve type");
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) bad("instance must be a JSON object");
  Instance inst;
  std::vector<Point3> pts;
  if (j.contains("points")) {
    if (!j["points"].is_array()) bad("'points' must be an array");
    for (const auto& p : j["points"]) pts.push_back(point_from_json(p));
  }
  std::vector<Curve> cs;
  if (j.contains("curves")) {
    if (!j["curves"].is_array()) bad("'curves' must be an array");
    for (const auto& c : j["curves"]) cs.push_back(curve_from_json(c));
  }
  inst.points = PointSet(std::move(pts));
  inst.curves = CurveSet(std::move(cs));
  if (j.contains("metadata")) inst.metadata = j["metadata"];
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << to_json(inst).dump(1) << '\n';
  if (!out) bad("write failed for " + path);
}

}  // namespace inclab
