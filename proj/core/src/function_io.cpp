#include "bernlab/function_io.hpp"

#include <fstream>

namespace bernlab {

namespace {

Complex parse_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParameterError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> parse_complex_list(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParameterError(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

nlohmann::ordered_json complex_list(const std::vector<Complex>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : v) arr.push_back({c.real(), c.imag()});
  return arr;
}

}  // namespace

AnalyticFunction parse_function(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw ParameterError("function spec must be an object with a \"kind\" field");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "polynomial") {
    return Polynomial(parse_complex_list(spec.at("coeffs"), "coeffs"));
  }
  if (kind == "lacunary") {
    const auto& terms = spec.at("terms");
    if (!terms.is_array()) throw ParameterError("lacunary terms must be an array");
    std::vector<LacunaryTerm> ts;
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3)
        throw ParameterError("lacunary terms must be [k, re, im] triples");
      ts.push_back({t[0].get<int>(), Complex(t[1].get<double>(), t[2].get<double>())});
    }
    return LacunarySeries(std::move(ts));
  }
  if (kind == "blaschke") {
    return BlaschkeProduct(parse_complex_list(spec.at("zeros"), "zeros"));
  }
  if (kind == "rational") {
    return RationalFunction(Polynomial(parse_complex_list(spec.at("num"), "num")),
                            Polynomial(parse_complex_list(spec.at("den"), "den")));
  }
  if (kind == "product") {
    const auto& factors = spec.at("factors");
    if (!factors.is_array()) throw ParameterError("product factors must be an array");
    ProductFunction prod;
    for (const auto& f : factors) prod.factors.push_back(parse_function(f));
    return prod;
  }
  throw ParameterError("unknown function kind: " + kind);
}

AnalyticFunction load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open function spec: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("malformed function spec " + path + ": " + e.what());
  }
  return parse_function(j);
}

nlohmann::ordered_json function_to_json(const AnalyticFunction& f) {
  nlohmann::ordered_json j;
  j["kind"] = f.kind_name();
  if (const auto* p = f.get_if<Polynomial>()) {
    j["coeffs"] = complex_list(p->coeffs());
  } else if (const auto* s = f.get_if<LacunarySeries>()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : s->terms()) arr.push_back({t.k, t.a.real(), t.a.imag()});
    j["terms"] = arr;
  } else if (const auto* b = f.get_if<BlaschkeProduct>()) {
    j["zeros"] = complex_list(b->zeros());
  } else if (const auto* r = f.get_if<RationalFunction>()) {
    j["num"] = complex_list(r->numerator().coeffs());
    j["den"] = complex_list(r->denominator().coeffs());
  } else if (const auto* pr = f.get_if<ProductFunction>()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& g : pr->factors) arr.push_back(function_to_json(g));
    j["factors"] = arr;
  }
  return j;
}

}  // namespace bernlab
