#include <fstream>
#include <sstream>

#include "aszeta/cli.hpp"

namespace aszeta::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

CurveSpec read_spec(const std::string& input) {
  const std::size_t first = input.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && input[first] == '{';
  const std::string text = inline_json ? input : slurp(input);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  return spec_from_json(j);
}

CurveSpec spec_from_json(const json& j) {
  const auto errors = validate(j, curve_spec_schema());
  if (!errors.empty()) throw ParseError("curve spec does not match schema: " + errors.front());
  CurveSpec spec;
  spec.p = j.at("p").get<std::uint32_t>();
  spec.r = j.value("r", 1u);
  const auto& R = j.at("R");
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto& a = R[i];
    if (a.is_number_integer()) {
      spec.R.push_back({a.get<std::int64_t>()});
    } else {
      if (a.size() != spec.r)
        throw ParseError("R[" + std::to_string(i) + "] has " + std::to_string(a.size()) +
                         " coordinates but r = " + std::to_string(spec.r));
      spec.R.push_back(a.get<std::vector<std::int64_t>>());
    }
  }
  return spec;
}

json spec_to_json(const CurveSpec& spec) {
  json R = json::array();
  for (const auto& a : spec.R) {
    if (a.size() == 1)
      R.push_back(a.front());
    else
      R.push_back(a);
  }
  return json{{"p", spec.p}, {"r", spec.r}, {"R", R}};
}

Curve build_curve(const CurveSpec& spec) {
  try {
    return make_curve(spec.p, spec.r, spec.R);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid curve: ") + e.what());
  }
}

json int_to_json(const BigInt& v) {
  static const BigInt limit = BigInt(1) << 53;
  if (v <= limit && v >= -limit) return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt int_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

json elem_to_json(const Elem& x) {
  return json{{"degree", x.field().degree()},
              {"coeffs", std::vector<Residue>(x.coeffs().begin(), x.coeffs().end())}};
}

json coeffs_to_json(const std::vector<BigInt>& c) {
  json out = json::array();
  for (const auto& v : c) out.push_back(int_to_json(v));
  return out;
}

json lpoly_to_json(const LPoly& L) {
  return json{{"form", L.form == LForm::Linear ? "linear" : "quadratic"},
              {"sign", L.sign},
              {"s", L.s},
              {"g", int_to_json(L.g)},
              {"text", L.to_string()},
              {"coefficients", coeffs_to_json(L.coefficients())}};
}

}  // namespace aszeta::cli
