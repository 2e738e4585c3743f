#include "cdb/jsonio.hpp"

#include <fstream>
#include <vector>

#include "cdb/errors.hpp"

namespace cdb {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidInput("json: " + msg);
}

double as_number(const json& j, const std::string& what) {
  require(j.is_number(), what + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& what) {
  require(j.is_number_integer(), what + " must be an integer");
  return j.get<int>();
}

const json& member(const json& j, const char* key, const std::string& kind) {
  require(j.contains(key), kind + " needs a \"" + key + "\" field");
  return j.at(key);
}

Polygon2 parse_polygon2(const json& j) {
  const json& vs = member(j, "vertices", "polygon2");
  require(vs.is_array(), "polygon2 vertices must be an array");
  std::vector<Vec2> pts;
  pts.reserve(vs.size());
  for (const json& v : vs) {
    require(v.is_array() && v.size() == 2, "polygon2 vertex must be [x, y]");
    pts.push_back({as_number(v[0], "vertex x"), as_number(v[1], "vertex y")});
  }
  return Polygon2(pts);
}

SampledSupport2 parse_sampled2(const json& j) {
  const int n = as_int(member(j, "n", "sampled2"), "sampled2 n");
  const json& hv = member(j, "h", "sampled2");
  require(hv.is_array(), "sampled2 h must be an array");
  require(static_cast<int>(hv.size()) == n, "sampled2 h must have n entries");
  std::vector<double> h;
  h.reserve(hv.size());
  for (const json& x : hv) h.push_back(as_number(x, "sampled2 h entry"));
  return SampledSupport2(n, std::move(h));
}

AtomicMeasure1 parse_measure1(const json& j) {
  const json& av = member(j, "atoms", "measure1");
  require(av.is_array(), "measure1 atoms must be an array");
  std::vector<AtomicMeasure1::Atom> atoms;
  atoms.reserve(av.size());
  for (const json& a : av) {
    require(a.is_array() && a.size() == 2, "measure1 atom must be [theta, w]");
    atoms.push_back({as_number(a[0], "atom angle"), as_number(a[1], "atom weight")});
  }
  return AtomicMeasure1(std::move(atoms));
}

int parse_m(const json& j, const std::string& kind) {
  const int m = as_int(member(j, "m", kind), kind + " m");
  require(m == 1 || m == 2, kind + " supports m in {1, 2}");
  return m;
}

PolytopeCm parse_polytope_cm(const json& j) {
  const int m = parse_m(j, "polytope_cm");
  const json& vs = member(j, "vertices", "polytope_cm");
  require(vs.is_array(), "polytope_cm vertices must be an array");
  std::vector<R4> pts;
  pts.reserve(vs.size());
  for (const json& v : vs) {
    require(v.is_array() && static_cast<int>(v.size()) == 2 * m,
            "polytope_cm vertex must have 2m coordinates");
    R4 p{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 2 * m; ++i) p[i] = as_number(v[i], "vertex coordinate");
    pts.push_back(p);
  }
  return PolytopeCm(m, std::move(pts));
}

BallCm parse_ball_cm(const json& j) {
  BallCm b;
  b.m = parse_m(j, "ball_cm");
  b.radius = as_number(member(j, "radius", "ball_cm"), "ball_cm radius");
  require(b.radius >= 0.0, "ball_cm radius must be nonnegative");
  return b;
}

SupportOracleCm parse_oracle_cm(const json& j) {
  const int m = parse_m(j, "oracle_cm");
  const json& ts = member(j, "terms", "oracle_cm");
  require(ts.is_array(), "oracle_cm terms must be an array");
  std::vector<SupportOracleCm::Term> terms;
  terms.reserve(ts.size());
  for (const json& t : ts) {
    SupportOracleCm::Term term;
    term.s = as_number(member(t, "s", "oracle term"), "term weight");
    term.theta = as_number(member(t, "theta", "oracle term"), "term angle");
    const json& base = member(t, "base", "oracle term");
    const AnyBody parsed = body_from_json(base);
    if (const PolytopeCm* p = std::get_if<PolytopeCm>(&parsed)) {
      term.base = *p;
    } else if (const BallCm* b = std::get_if<BallCm>(&parsed)) {
      term.base = *b;
    } else {
      throw InvalidInput("json: oracle term base must be polytope_cm or ball_cm");
    }
    terms.push_back(std::move(term));
  }
  return SupportOracleCm(m, std::move(terms));
}

}  // namespace

json to_json(const Polygon2& p) {
  json vs = json::array();
  for (const Vec2& v : p.vertices()) vs.push_back({v.x, v.y});
  return {{"kind", "polygon2"}, {"vertices", std::move(vs)}};
}

json to_json(const SampledSupport2& s) {
  return {{"kind", "sampled2"}, {"n", s.n()}, {"h", s.grid_values()}};
}

json to_json(const AtomicMeasure1& mu) {
  json as = json::array();
  for (const auto& a : mu.atoms()) as.push_back({a.theta, a.weight});
  return {{"kind", "measure1"}, {"atoms", std::move(as)}};
}

json to_json(const PolytopeCm& k) {
  json vs = json::array();
  for (const R4& v : k.vertices()) {
    json row = json::array();
    for (int i = 0; i < k.dim_ambient(); ++i) row.push_back(v[i]);
    vs.push_back(std::move(row));
  }
  return {{"kind", "polytope_cm"}, {"m", k.m()}, {"vertices", std::move(vs)}};
}

json to_json(const BallCm& b) {
  return {{"kind", "ball_cm"}, {"m", b.m}, {"radius", b.radius}};
}

json to_json(const SupportOracleCm& d) {
  json ts = json::array();
  for (const auto& t : d.terms()) {
    json base = std::visit([](const auto& b) { return to_json(b); }, t.base);
    ts.push_back({{"s", t.s}, {"theta", t.theta}, {"base", std::move(base)}});
  }
  return {{"kind", "oracle_cm"}, {"m", d.m()}, {"terms", std::move(ts)}};
}

json to_json(const AnyBody& body) {
  return std::visit([](const auto& b) { return to_json(b); }, body);
}

AnyBody body_from_json(const json& j) {
  require(j.is_object(), "body must be a JSON object");
  const json& kj = member(j, "kind", "body");
  require(kj.is_string(), "body kind must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "polygon2") return parse_polygon2(j);
  if (kind == "sampled2") return parse_sampled2(j);
  if (kind == "measure1") return parse_measure1(j);
  if (kind == "polytope_cm") return parse_polytope_cm(j);
  if (kind == "ball_cm") return parse_ball_cm(j);
  if (kind == "oracle_cm") return parse_oracle_cm(j);
  throw InvalidInput("json: unknown body kind \"" + kind + "\"");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("json: cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("json: parse error in " + path + ": " + e.what());
  }
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("json: cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw InvalidInput("json: write failed for " + path);
}

AnyBody load_body(const std::string& path) { return body_from_json(load_json(path)); }

void save_body(const AnyBody& body, const std::string& path) {
  save_json(to_json(body), path);
}

}  // namespace cdb
