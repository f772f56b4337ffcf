#pragma once

// Library side of the aszeta command-line tool: spec parsing, JSON reports,
// schema validation and the results cache. tools/aszeta.cpp only calls run().

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aszeta/zeta.hpp"

namespace aszeta::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitParse = 2,
  kExitResource = 3,
  kExitInvariant = 4,
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : Error(what), position_(position) {}
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  std::optional<std::size_t> position_;
};

// ---------------------------------------------------------------- specs

struct CurveSpec {
  std::uint32_t p = 0;
  unsigned r = 1;
  /// a_i as coordinates over F_{p^r}; a single entry means a prime-field value.
  std::vector<std::vector<std::int64_t>> R;
};

/// `input` is a path, or inline JSON when it starts with '{'. Validates
/// against the curve-spec schema. Throws ParseError with a byte offset.
CurveSpec read_spec(const std::string& input);
CurveSpec spec_from_json(const json& j);
json spec_to_json(const CurveSpec& spec);
/// Throws ParseError when the spec does not define a curve (p = 2, R = 0, ...).
Curve build_curve(const CurveSpec& spec);

// ---------------------------------------------------------------- serialization

/// JSON number when |v| <= 2^53, decimal string otherwise.
json int_to_json(const BigInt& v);
BigInt int_from_json(const json& j);
/// {"degree": m, "coeffs": [...]}, little-endian power-basis coordinates.
json elem_to_json(const Elem& x);
json lpoly_to_json(const LPoly& L);
json coeffs_to_json(const std::vector<BigInt>& c);

// ---------------------------------------------------------------- schemas

const json& curve_spec_schema();
const json& analysis_report_schema();
/// Errors as "path: message"; empty when the document conforms. Supports the
/// keywords used by the shipped schemas: type, enum, const, properties,
/// required, additionalProperties, items, minItems, minimum, pattern, anyOf
/// and local "$ref" into "$defs".
std::vector<std::string> validate(const json& doc, const json& schema);

// ---------------------------------------------------------------- commands

struct Options {
  std::vector<unsigned> s;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

/// Check statuses used in reports.
inline constexpr const char* kPass = "pass";
inline constexpr const char* kFail = "fail";
inline constexpr const char* kSkipped = "skipped";

bool all_checks_pass(const json& report);

json analyze(const CurveSpec& spec, const Options& opt);
json count(const CurveSpec& spec, const Options& opt);
json lpoly(const CurveSpec& spec, const Options& opt);

struct SearchOptions {
  std::uint32_t p = 3;
  unsigned r = 1;
  unsigned h = 0;
  unsigned s = 0;
  std::string filter = "all";  // maximal | minimal | all
  bool dedupe = false;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

/// Streams one record per matching curve in enumeration order.
void search(const SearchOptions& opt, const std::function<void(const json&)>& emit);

/// Every invariant suite on one curve; `corrupt_b` perturbs B_c for a
/// negative control.
json verify_curve(const CurveSpec& spec, const Options& opt, bool corrupt_b = false);
/// Named curve sets: "paper-examples", "kani-rosen".
std::vector<CurveSpec> preset(const std::string& name);

/// CSV projections; the header row is included except for search records,
/// which are streamed one row at a time after search_csv_header().
std::string to_csv(const json& record);
std::string search_csv_header();

// ---------------------------------------------------------------- cache

/// Append-only JSON-lines file of {"key", "record"} entries. Writes replace
/// the file through a temporary and rename.
class Cache {
 public:
  explicit Cache(std::string path);
  std::optional<json> lookup(const std::string& key) const;
  void store(const std::string& key, const json& record) const;
  /// Content hash of the canonical request.
  static std::string key(const std::string& command, const json& spec, const Options& opt);

 private:
  std::string path_;
};

/// Full command line; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aszeta::cli
