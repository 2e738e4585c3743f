#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "cdb/complexspace.hpp"
#include "cdb/planar.hpp"

namespace cdb {

// JSON interchange for every body kind the library computes with. One JSON
// object per body, dispatched on the "kind" field:
//   {"kind":"polygon2",    "vertices":[[x,y],...]}
//   {"kind":"sampled2",    "n":N, "h":[h_0,...,h_{N-1}]}
//   {"kind":"measure1",    "atoms":[[theta,w],...]}
//   {"kind":"polytope_cm", "m":M, "vertices":[[x1,y1,...,x_{2M}... ],...]}
//   {"kind":"ball_cm",     "m":M, "radius":r}
//   {"kind":"oracle_cm",   "m":M, "terms":[{"s":w,"theta":t,"base":B},...]}
// where an oracle term's base B is itself a polytope_cm or ball_cm object.
// Angles are radians, all numbers 64-bit floats; the writer emits shortest
// round-trip decimal forms, so save/load reproduces every value exactly.
// Schema violations throw InvalidInput with a message naming the offending
// field; geometric validation (hulls, convexity, extreme points) is done by
// the body constructors themselves.
using AnyBody = std::variant<Polygon2, SampledSupport2, AtomicMeasure1,
                             PolytopeCm, BallCm, SupportOracleCm>;

nlohmann::json to_json(const Polygon2& p);
nlohmann::json to_json(const SampledSupport2& s);
nlohmann::json to_json(const AtomicMeasure1& mu);
nlohmann::json to_json(const PolytopeCm& k);
nlohmann::json to_json(const BallCm& b);
nlohmann::json to_json(const SupportOracleCm& d);
nlohmann::json to_json(const AnyBody& body);

AnyBody body_from_json(const nlohmann::json& j);

// File helpers; I/O failures and parse errors surface as InvalidInput.
AnyBody load_body(const std::string& path);
void save_body(const AnyBody& body, const std::string& path);
nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace cdb
