#include "cobordize/json_io.hpp"

#include <algorithm>
#include <map>

#include "cobordize/error.hpp"

namespace cobordize {

namespace {

Json int_json(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(ErrorCode::invalid_argument, "integer too large for JSON");
  return Json(x.get_si());
}

Json ints_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(int_json(x));
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

Integer int_from(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer");
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  return Integer(j.get<long>());
}

std::size_t index_from(const Json& j) {
  if (!j.is_number_integer() || j.get<long>() < 0) bad("expected a nonnegative index");
  return j.get<std::size_t>();
}

std::vector<Integer> ints_from(const Json& j) {
  std::vector<Integer> out;
  for (const auto& x : array_of(j, "integer list")) out.push_back(int_from(x));
  return out;
}

LatticeVector vector_from(const Json& j, std::size_t rank) {
  LatticeVector v(ints_from(j));
  if (v.rank() != rank) bad("vector of length " + std::to_string(v.rank()) + ", expected " +
                            std::to_string(rank));
  return v;
}

Json rational_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(int_from(j));
  if (!j.is_string()) bad("expected a rational string p/q");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
    bad("malformed rational " + j.get<std::string>());
  q.canonicalize();
  return q;
}

}  // namespace

Json to_json(const Fan& f) {
  auto rays = f.rays();
  std::map<LatticeVector, std::size_t> idx;
  Json jr = Json::array();
  for (std::size_t i = 0; i < rays.size(); ++i) {
    idx[rays[i]] = i;
    jr.push_back(ints_json(rays[i].coords()));
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : f.max_cones()) {
    std::vector<std::size_t> ci;
    for (const auto& r : c.rays()) ci.push_back(idx.at(r));
    std::sort(ci.begin(), ci.end());
    cones.push_back(std::move(ci));
  }
  std::sort(cones.begin(), cones.end());
  return Json{{"ambient_rank", f.ambient_rank()}, {"rays", jr}, {"max_cones", cones}};
}

Json to_json(const CobordismFan& b) {
  Json j = to_json(b.fan());
  j["v0"] = ints_json(b.v0().coords());
  return j;
}

Json to_json(const Move& m) {
  Json centers = Json::array();
  for (const auto& r : m.center_rays) centers.push_back(ints_json(r.coords()));
  return Json{{"kind", to_string(m.kind)},
              {"relation", ints_json(m.relation)},
              {"weights_minus", ints_json(m.weights_minus)},
              {"weights_plus", ints_json(m.weights_plus)},
              {"center_rays", centers}};
}

Json to_json(const FactorizationTrace& t) {
  Json fans = Json::array(), moves = Json::array();
  for (const auto& f : t.fans) fans.push_back(to_json(f));
  for (const auto& m : t.moves) moves.push_back(to_json(m));
  return Json{{"fans", fans}, {"moves", moves}, {"order", t.order}};
}

Json to_json(const Polytope& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) {
    Json jv = Json::array();
    for (const auto& x : v.coords()) jv.push_back(rational_json(x));
    vs.push_back(jv);
  }
  return Json{{"ambient_rank", p.ambient_rank()}, {"vertices", vs}};
}

Fan fan_from_json(const Json& j) {
  std::size_t n = index_from(field(j, "ambient_rank"));
  std::vector<LatticeVector> rays;
  for (const auto& r : array_of(field(j, "rays"), "rays")) {
    LatticeVector v = vector_from(r, n);
    if (!is_primitive(v)) throw Error(ErrorCode::not_primitive, "ray " + v.to_string());
    rays.push_back(std::move(v));
  }
  std::vector<Cone> cones;
  for (const auto& c : array_of(field(j, "max_cones"), "max_cones")) {
    std::vector<LatticeVector> gens;
    for (const auto& i : array_of(c, "cone")) {
      std::size_t k = index_from(i);
      if (k >= rays.size()) bad("ray index " + std::to_string(k) + " out of range");
      gens.push_back(rays[k]);
    }
    cones.push_back(Cone::from_rays(n, std::move(gens)));
  }
  return Fan::make(n, std::move(cones));
}

CobordismFan cobordism_from_json(const Json& j) {
  Fan f = fan_from_json(j);
  LatticeVector v0 = vector_from(field(j, "v0"), f.ambient_rank());
  return CobordismFan::make(std::move(f), std::move(v0));
}

Move move_from_json(const Json& j) {
  Move m;
  if (!field(j, "kind").is_string()) bad("kind must be a string");
  m.kind = move_kind_from_string(field(j, "kind").get<std::string>());
  m.relation = ints_from(field(j, "relation"));
  m.weights_minus = ints_from(field(j, "weights_minus"));
  m.weights_plus = ints_from(field(j, "weights_plus"));
  for (const auto& r : array_of(field(j, "center_rays"), "center_rays")) {
    auto xs = ints_from(r);
    m.center_rays.emplace_back(std::move(xs));
  }
  return m;
}

FactorizationTrace trace_from_json(const Json& j) {
  FactorizationTrace t;
  for (const auto& f : array_of(field(j, "fans"), "fans")) t.fans.push_back(fan_from_json(f));
  for (const auto& m : array_of(field(j, "moves"), "moves")) t.moves.push_back(move_from_json(m));
  for (const auto& i : array_of(field(j, "order"), "order")) t.order.push_back(index_from(i));
  return t;
}

Polytope polytope_from_json(const Json& j) {
  std::size_t n = index_from(field(j, "ambient_rank"));
  std::vector<RationalVector> pts;
  for (const auto& v : array_of(field(j, "vertices"), "vertices")) {
    std::vector<Rational> xs;
    for (const auto& x : array_of(v, "vertex")) xs.push_back(rational_from(x));
    if (xs.size() != n) bad("vertex of the wrong length");
    pts.emplace_back(std::move(xs));
  }
  return Polytope::hull(n, std::move(pts));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace cobordize
