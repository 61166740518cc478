#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lefdisc/errors.hpp"
#include "lefdisc/rational.hpp"
#include "lefdisc/ring.hpp"

namespace lefdisc {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) return Rational::parse_integer(j.get<std::string>());
  throw ParseError(where + ": expected an integer");
}

inline const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("ring document: missing field '") + key + "'");
  return *it;
}

inline BasisRef basis_ref_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer() || j[1].get<long>() < 0)
    throw ParseError(where + ": expected [degree, index]");
  return {j[0].get<int>(), j[1].get<std::size_t>()};
}

}  // namespace detail

inline Json rational_to_json(const Rational& q) {
  return Json::array({detail::integer_to_json(q.num()), detail::integer_to_json(q.den())});
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [numerator, denominator]");
  Integer num = detail::integer_from_json(j[0], where);
  Integer den = detail::integer_from_json(j[1], where);
  if (den <= 0) throw ParseError(where + ": denominator must be positive");
  return Rational(num, den);
}

inline Json to_json(const RingDocument& doc) {
  Json products = Json::array();
  for (const auto& p : doc.products) {
    Json result = Json::array();
    for (const auto& c : p.result) result.push_back(rational_to_json(c));
    products.push_back(Json{{"a", {p.a.degree, p.a.index}}, {"b", {p.b.degree, p.b.index}}, {"result", result}});
  }
  return Json{{"name", doc.name},
              {"complex_dim", doc.complex_dim},
              {"basis", doc.basis},
              {"products", products},
              {"fundamental", doc.fundamental}};
}

inline RingDocument ring_document_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("ring document must be an object");
  RingDocument doc;
  const Json& name = detail::require(j, "name");
  if (!name.is_string()) throw ParseError("ring document: 'name' must be a string");
  doc.name = name.get<std::string>();
  const Json& dim = detail::require(j, "complex_dim");
  if (!dim.is_number_integer()) throw ParseError("ring document: 'complex_dim' must be an integer");
  doc.complex_dim = dim.get<int>();
  const Json& basis = detail::require(j, "basis");
  if (!basis.is_array()) throw ParseError("ring document: 'basis' must be an array");
  for (const auto& level : basis) {
    if (!level.is_array()) throw ParseError("ring document: each basis degree must be an array of names");
    std::vector<std::string> names;
    for (const auto& s : level) {
      if (!s.is_string()) throw ParseError("ring document: basis names must be strings");
      names.push_back(s.get<std::string>());
    }
    doc.basis.push_back(std::move(names));
  }
  const Json& products = detail::require(j, "products");
  if (!products.is_array()) throw ParseError("ring document: 'products' must be an array");
  for (std::size_t n = 0; n < products.size(); ++n) {
    const Json& p = products[n];
    std::string where = "products[" + std::to_string(n) + "]";
    if (!p.is_object()) throw ParseError(where + ": expected an object");
    ProductEntry e;
    e.a = detail::basis_ref_from_json(detail::require(p, "a"), where + ".a");
    e.b = detail::basis_ref_from_json(detail::require(p, "b"), where + ".b");
    const Json& result = detail::require(p, "result");
    if (!result.is_array()) throw ParseError(where + ".result: expected an array");
    for (std::size_t k = 0; k < result.size(); ++k)
      e.result.push_back(rational_from_json(result[k], where + ".result[" + std::to_string(k) + "]"));
    doc.products.push_back(std::move(e));
  }
  const Json& fundamental = detail::require(j, "fundamental");
  if (!fundamental.is_string()) throw ParseError("ring document: 'fundamental' must be a string");
  doc.fundamental = fundamental.get<std::string>();
  return doc;
}

inline RingDocument parse_ring_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ring document is not valid JSON: ") + e.what());
  } catch (const std::exception& e) {
    throw ParseError(std::string("ring document: ") + e.what());
  }
  try {
    return ring_document_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ring document: ") + e.what());
  }
}

// Canonical ring file text.
inline std::string emit_ring(const CohomologyRing& ring) { return to_json(ring.to_document()).dump(2) + "\n"; }

// Parses, builds and fully validates. Throws ParseError or RingValidationError.
inline CohomologyRing load_ring(std::string_view text) { return build_ring(parse_ring_document(text)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CohomologyRing load_ring_file(const std::string& path) { return load_ring(read_file(path)); }

}  // namespace lefdisc
