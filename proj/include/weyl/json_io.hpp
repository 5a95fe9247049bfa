#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "weyl/closure.hpp"

namespace weyl {

using json = nlohmann::json;

// Malformed input; `pointer` is an RFC 6901 path to the offending field.
struct JsonInputError : std::runtime_error {
  std::string pointer;
  JsonInputError(std::string ptr, const std::string& what)
      : std::runtime_error(ptr + ": " + what), pointer(std::move(ptr)) {}
};

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& ptr) {
  if (!obj.is_object()) throw JsonInputError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw JsonInputError(ptr + "/" + key, "missing field");
  return *it;
}

inline int non_negative(const json& v, const std::string& ptr) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 100000)
    throw JsonInputError(ptr, "expected a non-negative integer");
  return v.get<int>();
}

inline Rational fraction(const json& v, const std::string& ptr) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (!v.is_string()) throw JsonInputError(ptr, "expected a fraction string such as \"3/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw JsonInputError(ptr, e.what());
  }
}

}  // namespace detail

inline json to_json(const SkewPoly& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms())
    terms.push_back({{"sigma", to_cstr(k.sigma)}, {"alpha", k.gamma.alpha}, {"beta", k.gamma.beta}, {"coeff", to_string(c)}});
  return {{"skew", terms}};
}

inline json to_json(const WeylPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"alpha", m.alpha}, {"beta", m.beta}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return {{"weyl", terms}};
}

inline WeylPoly weyl_from_json(const json& j, const std::string& ptr = "") {
  const json& terms = detail::field(j, "weyl", ptr);
  if (!terms.is_array()) throw JsonInputError(ptr + "/weyl", "expected an array");
  WeylPoly p;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = ptr + "/weyl/" + std::to_string(i);
    const json& t = terms[i];
    int al = detail::non_negative(detail::field(t, "alpha", tp), tp + "/alpha");
    int be = detail::non_negative(detail::field(t, "beta", tp), tp + "/beta");
    Rational re = detail::fraction(detail::field(t, "re", tp), tp + "/re");
    Rational im = detail::fraction(detail::field(t, "im", tp), tp + "/im");
    p.add({al, be}, Gaussian(re, im));
  }
  return p;
}

// Accepts either representation; Weyl input must be skew-hermitian.
inline SkewPoly skew_from_json(const json& j, const std::string& ptr = "") {
  if (j.is_object() && j.contains("weyl")) {
    WeylPoly w = weyl_from_json(j, ptr);
    try {
      return from_weyl(w);
    } catch (const std::domain_error& e) {
      throw JsonInputError(ptr + "/weyl", e.what());
    }
  }
  const json& terms = detail::field(j, "skew", ptr);
  if (!terms.is_array()) throw JsonInputError(ptr + "/skew", "expected an array");
  SkewPoly s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = ptr + "/skew/" + std::to_string(i);
    const json& t = terms[i];
    const json& sg = detail::field(t, "sigma", tp);
    if (!sg.is_string() || (sg != "+" && sg != "-")) throw JsonInputError(tp + "/sigma", "expected \"+\" or \"-\"");
    int al = detail::non_negative(detail::field(t, "alpha", tp), tp + "/alpha");
    int be = detail::non_negative(detail::field(t, "beta", tp), tp + "/beta");
    Rational c = detail::fraction(detail::field(t, "coeff", tp), tp + "/coeff");
    if (al < be) throw JsonInputError(tp, "multi-index (" + std::to_string(al) + "," + std::to_string(be) + ") is not well-ordered");
    s.add({sg == "+" ? Sign::Plus : Sign::Minus, {al, be}}, c);
  }
  return s;
}

// A list of polynomials, either bare or under the given key.
inline std::vector<SkewPoly> skew_list_from_json(const json& j, const char* key) {
  const json* arr = &j;
  std::string ptr;
  if (j.is_object()) {
    arr = &detail::field(j, key, "");
    ptr = std::string("/") + key;
  }
  if (!arr->is_array()) throw JsonInputError(ptr, "expected an array of polynomials");
  std::vector<SkewPoly> out;
  for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(skew_from_json((*arr)[i], ptr + "/" + std::to_string(i)));
  return out;
}

inline json to_json(const std::vector<SkewPoly>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(to_json(p));
  return a;
}

inline json to_json(const Chain& c) {
  return {{"degrees", c.degrees()}, {"u", to_json(c.u)}, {"s", to_json(c.s)}};
}

inline json to_json(const IgusaCertificate& c) {
  json j;
  j["verdict"] = to_cstr(c.verdict);
  if (c.identity)
    j["sigma"] = "identity";
  else
    j["sigma"] = {{"s", c.params.s}, {"phi", c.params.phi}, {"theta", c.params.theta}};
  j["a0b0"] = {c.a0b0.real(), c.a0b0.imag()};
  j["delta"] = {c.delta.real(), c.delta.imag()};
  return j;
}

// {"outcome","dim","basis","witness","rule"} plus bookkeeping fields.
inline json to_json(const ClosureOutcome& o) {
  json j;
  j["outcome"] = to_cstr(o.verdict);
  j["dim"] = o.span.dim();
  j["basis"] = to_json(o.span.basis());
  j["decided_by"] = o.decided_by;
  if (o.witness) {
    const auto& w = *o.witness;
    json wj;
    wj["rule"] = to_cstr(w.rule);
    wj["note"] = w.note;
    wj["generators"] = w.generators;
    wj["chain"] = w.chain ? to_json(*w.chain) : json(nullptr);
    if (w.igusa) wj["igusa"] = to_json(*w.igusa);
    j["witness"] = wj;
    j["rule"] = to_cstr(w.rule);
  } else {
    j["witness"] = nullptr;
    j["rule"] = o.decided_by;
  }
  if (o.verdict == Verdict::Inconclusive) {
    j["budget"] = {{"dim_reached", o.dim_reached},
                   {"degree_reached", o.degree_reached == kDegreeNegInf ? json(nullptr) : json(o.degree_reached)}};
  }
  return j;
}

}  // namespace weyl
