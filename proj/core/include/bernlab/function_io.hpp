#pragma once

#include <string>

#include <json.hpp>

#include "bernlab/analytic_function.hpp"

namespace bernlab {

// Function-spec JSON:
//   {"kind":"polynomial","coeffs":[[re,im],...]}
//   {"kind":"lacunary","terms":[[k,re,im],...]}      (term a * z^(2^k))
//   {"kind":"blaschke","zeros":[[re,im],...]}
//   {"kind":"rational","num":[[re,im],...],"den":[[re,im],...]}
//   {"kind":"product","factors":[<specs>...]}
AnalyticFunction parse_function(const nlohmann::json& spec);
AnalyticFunction load_function(const std::string& path);
nlohmann::ordered_json function_to_json(const AnalyticFunction& f);

}  // namespace bernlab
