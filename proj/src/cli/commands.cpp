#include <CLI11.hpp>
#include <ostream>
#include <thread>

#include "aszeta/cli.hpp"

namespace aszeta::cli {

namespace {

struct Common {
  std::string input;
  std::vector<unsigned> s;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string cache;

  Options options() const { return Options{s, budget, jobs}; }
};

void add_budget_jobs_format(CLI::App* sub, Common& c) {
  sub->add_option("--budget", c.budget, "Largest field size enumerated by brute force")
      ->envname("ASZETA_BUDGET")
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads for point counting")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void add_common(CLI::App* sub, Common& c, bool input_required) {
  auto* in = sub->add_option("--input", c.input, "Curve spec: a JSON file or inline JSON object");
  if (input_required) in->required();
  sub->add_option("--s", c.s, "Field degrees s (comma separated); default q_degree")->delimiter(',');
  sub->add_option("--cache", c.cache, "JSON-lines results cache");
  add_budget_jobs_format(sub, c);
}

void emit(std::ostream& out, const json& record, const std::string& format) {
  if (format == "csv")
    out << to_csv(record);
  else
    out << record.dump(2) << "\n";
}

/// Runs `compute` through the cache when one is configured.
json cached(const Common& c, const std::string& command, const CurveSpec& spec,
            const std::function<json()>& compute) {
  if (c.cache.empty()) return compute();
  const Cache cache(c.cache);
  const std::string key = Cache::key(command, spec_to_json(spec), c.options());
  if (auto hit = cache.lookup(key)) return *hit;
  json record = compute();
  cache.store(key, record);
  return record;
}

int run_single(const Common& c, const std::string& command, std::ostream& out,
               const std::function<json(const CurveSpec&, const Options&)>& fn) {
  const CurveSpec spec = read_spec(c.input);
  const json record = cached(c, command, spec, [&] { return fn(spec, c.options()); });
  emit(out, record, c.format);
  return all_checks_pass(record) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta functions and automorphisms of the curves y^p - y = x R(x), R additive", "aszeta"};
  app.require_subcommand(1);

  Common common;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full report: group, twist constant, L-polynomials, checks");
  add_common(analyze_cmd, common, true);
  auto* count_cmd = app.add_subcommand("count", "Point counts by enumeration with the Hasse-Weil window");
  add_common(count_cmd, common, true);
  auto* lpoly_cmd = app.add_subcommand("lpoly", "L-polynomial over F_{p^s}");
  add_common(lpoly_cmd, common, true);

  SearchOptions search_opt;
  auto* search_cmd = app.add_subcommand("search", "Enumerate R of degree p^h over F_{p^r} and classify over F_{p^s}");
  search_cmd->set_help_flag("--help", "Print this help message and exit");  // frees --h
  search_cmd->add_option("--p", search_opt.p, "Characteristic")->required();
  search_cmd->add_option("--r", search_opt.r, "Coefficient field degree")->capture_default_str();
  search_cmd->add_option("--h", search_opt.h, "R has degree p^h")->capture_default_str();
  search_cmd->add_option("--s", search_opt.s, "Field degree to classify over")->required();
  search_cmd->add_option("--filter", search_opt.filter, "maximal, minimal or all")
      ->check(CLI::IsMember({"maximal", "minimal", "all"}))
      ->capture_default_str();
  search_cmd->add_flag("--dedupe", search_opt.dedupe, "Keep one curve per twist class of the quotient constant");
  add_budget_jobs_format(search_cmd, common);

  std::string preset_name;
  bool corrupt_b = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run every invariant check on a curve or a preset");
  add_common(verify_cmd, common, false);
  verify_cmd->add_option("--preset", preset_name, "paper-examples or kani-rosen");
  verify_cmd->add_flag("--corrupt-b", corrupt_b, "Perturb B_c before checking (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (analyze_cmd->parsed()) return run_single(common, "analyze", out, analyze);
    if (count_cmd->parsed()) return run_single(common, "count", out, count);
    if (lpoly_cmd->parsed()) return run_single(common, "lpoly", out, lpoly);
    if (search_cmd->parsed()) {
      search_opt.budget = common.budget;
      search_opt.jobs = common.jobs;
      if (common.format == "csv") out << search_csv_header();
      search(search_opt, [&](const json& rec) {
        if (common.format == "csv")
          out << to_csv(rec);
        else
          out << rec.dump() << "\n";
      });
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      if (common.input.empty() == preset_name.empty()) throw ParseError("verify needs exactly one of --input, --preset");
      const std::vector<CurveSpec> specs = preset_name.empty() ? std::vector<CurveSpec>{read_spec(common.input)}
                                                               : preset(preset_name);
      json results = json::array();
      json first_failure = nullptr;
      for (const auto& spec : specs) {
        const json rec = cached(common, corrupt_b ? "verify-corrupt-b" : "verify", spec,
                                [&] { return verify_curve(spec, common.options(), corrupt_b); });
        if (first_failure.is_null())
          for (const auto& c : rec["checks"])
            if (c["status"] == kFail) {
              first_failure = json{{"spec", rec["spec"]}, {"check", c}};
              break;
            }
        results.push_back(rec);
      }
      const bool passed = first_failure.is_null();
      if (common.format == "csv") {
        bool header = true;
        for (const auto& rec : results) {
          std::string text = to_csv(rec);
          if (!header) text = text.substr(text.find('\n') + 1);
          out << text;
          header = false;
        }
      } else {
        out << json{{"schema_version", kSchemaVersion},
                    {"kind", "verify_summary"},
                    {"passed", passed},
                    {"first_failure", first_failure},
                    {"results", results}}
                   .dump(2)
            << "\n";
      }
      return passed ? kExitOk : kExitCheckFailed;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what();
    if (e.position()) err << " (byte " << *e.position() << ")";
    err << "\n";
    return kExitParse;
  } catch (const ResourceError& e) {
    err << "budget exceeded: " << e.what() << " (needs " << e.required() << ")\n";
    return kExitResource;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const FieldMismatch& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const EmbeddingError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitParse;
}

}  // namespace aszeta::cli
