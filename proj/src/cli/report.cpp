#include <boost/multiprecision/integer.hpp>
#include <map>
#include <set>
#include <sstream>

#include "aszeta/cli.hpp"

namespace aszeta::cli {

namespace {

// Largest |P| for which the full group verification runs.
constexpr std::uint64_t kGroupVerifyLimit = 20'000;
// Largest extension degree s*g for which L is rebuilt from counts.
constexpr std::uint64_t kReconstructMaxDegree = 48;
// Largest s for the quadric count.
constexpr unsigned kQuadricMaxDegree = 64;

class Checks {
 public:
  void add(const std::string& name, bool ok, const std::string& detail = {}) {
    arr_.push_back(json{{"name", name}, {"status", ok ? kPass : kFail}, {"detail", detail}});
  }
  void skip(const std::string& name, const std::string& detail) {
    arr_.push_back(json{{"name", name}, {"status", kSkipped}, {"detail", detail}});
  }
  void append(const json& check) { arr_.push_back(check); }
  const json& get() const { return arr_; }

 private:
  json arr_ = json::array();
};

bool oracle_feasible(std::uint32_t p, unsigned s, std::uint64_t budget) { return ipow(p, s) <= budget; }

std::vector<unsigned> s_list(const Curve& C, const Options& opt) {
  std::vector<unsigned> out = opt.s.empty() ? std::vector<unsigned>{C.q_degree} : opt.s;
  for (auto s : out)
    if (s == 0 || s % C.r() != 0)
      throw ParseError("s = " + std::to_string(s) + " is not a multiple of r = " + std::to_string(C.r()));
  return out;
}

json fields_json(std::uint32_t p, const std::set<unsigned>& degrees) {
  json out = json::array();
  for (auto d : degrees)
    out.push_back(json{{"degree", d}, {"defining_poly", make_field(p, d)->defining_poly()}});
  return out;
}

json header(const std::string& kind, const CurveSpec& spec) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"spec", spec_to_json(spec)}};
}

/// L over F_{p^s}: closed form when q | s, else from counts.
json lpoly_entry(const Curve& C, unsigned s, const Options& opt, std::vector<BigInt>* coeffs) {
  if (s % C.q_degree == 0) {
    const LResult lr = l_polynomial(C, s);
    json j = lpoly_to_json(lr.L);
    j["source"] = "closed_form";
    if (coeffs) *coeffs = lr.L.coefficients();
    return j;
  }
  if (static_cast<std::uint64_t>(s) * C.genus > kReconstructMaxDegree) return nullptr;
  const Reconstruction rec = reconstruct_lpoly(C, s, opt.budget, opt.jobs, true);
  json j;
  if (const auto L = identify_form(rec.coefficients, C.p, s)) {
    j = lpoly_to_json(*L);
  } else {
    j = json{{"form", "other"},
             {"sign", 0},
             {"s", s},
             {"g", int_to_json(C.genus)},
             {"text", "not of the form (1 +- p^(s/2) T)^(2g) or (1 +- p^s T^2)^g"},
             {"coefficients", coeffs_to_json(rec.coefficients)}};
  }
  j["source"] = "counts";
  j["count_sources"] = rec.sources;
  if (coeffs) *coeffs = rec.coefficients;
  return j;
}

std::string coords_text(const Elem& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

bool all_checks_pass(const json& report) {
  if (!report.contains("checks")) return true;
  for (const auto& c : report["checks"])
    if (c["status"] == kFail) return false;
  return true;
}

// ---------------------------------------------------------------- analyze

json analyze(const CurveSpec& spec, const Options& opt) {
  const Curve C = build_curve(spec);
  const auto ss = s_list(C, opt);
  const std::uint32_t p = C.p;
  Checks checks;
  std::set<unsigned> degrees{C.r(), C.q_degree};

  json report = header("analysis", spec);
  json W = json::array();
  for (const auto& w : C.W) W.push_back(elem_to_json(w));
  report["fields"] = nullptr;
  report["curve"] = json{{"p", p},           {"r", C.r()},           {"h", C.h}, {"genus", int_to_json(C.genus)},
                         {"q_degree", C.q_degree}, {"dim_W", C.W.size()}, {"W", W}};
  checks.add("dim_W_is_2h", C.W.size() == 2 * C.h, std::to_string(C.W.size()));

  // Group structure.
  const BigInt P_order = ipow(p, 2 * C.h + 1);
  json group{{"P_order", int_to_json(P_order)}};
  json extraspecial = nullptr;
  if (P_order <= std::min<std::uint64_t>(opt.budget, kGroupVerifyLimit)) {
    const GroupP P(C);
    bool all = true;
    for (const auto& g : P.verify()) {
      checks.add("group/" + g.name, g.ok, g.detail);
      all = all && g.ok;
    }
    extraspecial = C.h >= 1 ? json(all) : json(false);
  } else {
    checks.skip("group", "|P| above verification limit");
  }
  const HOrder H = subgroup_h_order(C, opt.budget);
  group["H_order_formula"] = int_to_json(H.formula);
  group["H_order_enumerated"] = H.enumerated ? int_to_json(*H.enumerated) : json(nullptr);
  if (H.enumerated)
    checks.add("H_order", BigInt(*H.enumerated) == H.formula,
               "formula " + to_string(H.formula) + ", enumerated " + std::to_string(*H.enumerated));
  else
    checks.skip("H_order", "enumeration field above budget");
  group["extraspecial"] = extraspecial;
  const auto special = special_automorphism_flag(C);
  group["special_automorphisms"] = special ? json(*special) : json(nullptr);
  if (C.h >= 1) {
    try {
      const GroupCheck sd = check_semidirect(C, opt.budget);
      checks.add("semidirect", sd.ok, sd.detail);
    } catch (const ResourceError& e) {
      checks.skip("semidirect", e.what());
    }
  }
  report["group"] = group;

  // Twist constant and the quotient path.
  json twist{{"a", nullptr}, {"class", nullptr}, {"iterated", nullptr}, {"twist_equivalent", nullptr},
             {"exactly_equal", nullptr}};
  Elem a;
  std::vector<Elem> Abar;
  if (C.h >= 1) Abar = symplectic_basis(C).c;
  a = a_constant(C, Abar);
  twist["a"] = elem_to_json(a);
  twist["class"] = to_string(twist_class(a).tag);
  degrees.insert(a.field().degree());
  if (C.h == 0) {
    twist["iterated"] = elem_to_json(a);
    twist["twist_equivalent"] = true;
    twist["exactly_equal"] = true;
  } else {
    try {
      const IteratedQuotient iq = iterated_quotient(C, Abar, opt.budget);
      for (std::size_t k = 0; k < iq.steps.size(); ++k) {
        const auto& st = iq.steps[k];
        std::string detail = "theta(c)=0:" + std::string(st.theta_vanishes_at_c ? "y" : "n") +
                             " leading:" + (st.leading_ok ? "y" : "n") + " genus:" + (st.genus_ok ? "y" : "n") +
                             " points:" + (st.points_ok ? "y" : "n") + " count:" +
                             (st.count_ok ? (*st.count_ok ? "y" : "n") : "skipped");
        checks.add("quotient_step_" + std::to_string(k + 1), st.ok(), detail);
      }
      const bool eq = twist_equivalent(a, iq.constant);
      twist["iterated"] = elem_to_json(iq.constant);
      twist["twist_equivalent"] = eq;
      twist["exactly_equal"] = a == iq.constant;
      checks.add("twist_path", eq, "a_A " + coords_text(a) + ", iterated " + coords_text(iq.constant));
    } catch (const ResourceError& e) {
      checks.skip("twist_path", e.what());
    }
  }
  report["twist"] = twist;

  // Per field degree.
  json per_s = json::array();
  json supersingular = nullptr;
  for (const unsigned s : ss) {
    json e{{"s", s}};
    std::vector<BigInt> coeffs;
    e["lpoly"] = lpoly_entry(C, s, opt, &coeffs);
    if (s % C.q_degree == 0) {
      const LResult lr = l_polynomial(C, s);
      e["table_row"] = lr.row;
      e["a_square"] = lr.square;
    }
    const ClassifyResult cr = classify(C, s, opt.budget, opt.jobs);
    e["classification"] = to_string(cr.cls);
    e["classification_method"] = cr.method;
    e["N"] = int_to_json(cr.N);
    std::optional<BigInt> oracle, quadric;
    if (oracle_feasible(p, s, opt.budget)) oracle = BigInt(count_points_oracle(C, s, opt.budget, opt.jobs));
    if (s <= kQuadricMaxDegree) quadric = count_points_quadric(C, s).N;
    e["oracle"] = oracle ? int_to_json(*oracle) : json(nullptr);
    e["quadric"] = quadric ? int_to_json(*quadric) : json(nullptr);
    const std::string tag = " (s = " + std::to_string(s) + ")";
    if (oracle && quadric)
      checks.add("oracle_vs_quadric" + tag, *oracle == *quadric, to_string(*oracle) + " vs " + to_string(*quadric));
    if (s % C.q_degree == 0) {
      const BigInt predicted = predicted_count(l_polynomial(C, s).L, 1);
      if (oracle)
        checks.add("closed_form_vs_oracle" + tag, predicted == *oracle,
                   to_string(predicted) + " vs " + to_string(*oracle));
      else if (quadric)
        checks.add("closed_form_vs_quadric" + tag, predicted == *quadric,
                   to_string(predicted) + " vs " + to_string(*quadric));
    }
    const bool hw = within_hasse_weil(cr.N, p, s, C.genus);
    e["hasse_weil"] = hw;
    checks.add("hasse_weil" + tag, hw);
    if (!coeffs.empty()) {
      const bool ss_ok = is_supersingular(coeffs, p, s);
      const bool fe = check_functional_equation(coeffs, p, s);
      e["supersingular"] = ss_ok;
      e["functional_equation"] = fe;
      checks.add("supersingular" + tag, ss_ok);
      checks.add("functional_equation" + tag, fe);
      supersingular = supersingular.is_null() ? json(ss_ok) : json(supersingular.get<bool>() && ss_ok);
    } else {
      e["supersingular"] = nullptr;
      e["functional_equation"] = nullptr;
      checks.skip("lpoly" + tag, "s g above reconstruction limit");
    }
    per_s.push_back(e);
  }
  report["per_s"] = per_s;
  report["supersingular"] = supersingular;

  if (C.h >= 1) {
    if (static_cast<std::uint64_t>(C.q_degree) * C.genus <= kReconstructMaxDegree) {
      try {
        const KaniRosenCheck kr = kani_rosen_check(C, opt.budget, opt.jobs, true);
        std::string src;
        for (const auto& x : kr.sources) src += (src.empty() ? "" : ",") + x;
        checks.add("kani_rosen", kr.ok, "counts from " + src);
      } catch (const ResourceError& e) {
        checks.skip("kani_rosen", e.what());
      }
    } else {
      checks.skip("kani_rosen", "q g above reconstruction limit");
    }
  }
  report["fields"] = fields_json(p, degrees);
  report["checks"] = checks.get();

  const auto errors = validate(report, analysis_report_schema());
  if (!errors.empty()) throw InvariantViolation("report does not match schema: " + errors.front());
  return report;
}

// ---------------------------------------------------------------- count / lpoly

json count(const CurveSpec& spec, const Options& opt) {
  const Curve C = build_curve(spec);
  json report = header("count", spec);
  report["genus"] = int_to_json(C.genus);
  json results = json::array();
  for (const unsigned s : s_list(C, opt)) {
    const BigInt N = count_points_oracle(C, s, opt.budget, opt.jobs);
    const BigInt q = ipow(C.p, s);
    const BigInt g = C.genus;
    const BigInt width = boost::multiprecision::sqrt(BigInt(4 * g * g * q));  // floor(2 g p^{s/2})
    results.push_back(json{{"s", s},
                           {"N", int_to_json(N)},
                           {"hasse_weil_low", int_to_json(q + 1 - width)},
                           {"hasse_weil_high", int_to_json(q + 1 + width)},
                           {"within", within_hasse_weil(N, C.p, s, C.genus)}});
  }
  report["results"] = results;
  return report;
}

json lpoly(const CurveSpec& spec, const Options& opt) {
  const Curve C = build_curve(spec);
  json report = header("lpoly", spec);
  report["genus"] = int_to_json(C.genus);
  report["q_degree"] = C.q_degree;
  json results = json::array();
  for (const unsigned s : s_list(C, opt)) {
    json e{{"s", s}};
    std::vector<BigInt> coeffs;
    e["lpoly"] = lpoly_entry(C, s, opt, &coeffs);
    if (coeffs.empty()) throw ResourceError("L-polynomial over F_{p^" + std::to_string(s) + "} is out of reach", s);
    const BigInt N1 = 1 + ipow(C.p, s) + coeffs[1];
    e["N_1"] = int_to_json(N1);
    e["classification"] = to_string(classify_count(N1, C.p, s, C.genus));
    e["zeta"] = "L(T) / ((1 - T)(1 - " + std::to_string(C.p) + "^" + std::to_string(s) + " T))";
    results.push_back(e);
  }
  report["results"] = results;
  return report;
}

// ---------------------------------------------------------------- search

void search(const SearchOptions& opt, const std::function<void(const json&)>& emit) {
  if (opt.s == 0 || opt.s % opt.r != 0) throw ParseError("search needs s to be a positive multiple of r");
  if (opt.filter != "all" && opt.filter != "maximal" && opt.filter != "minimal")
    throw ParseError("filter must be maximal, minimal or all");
  const FieldPtr F = make_field(opt.p, opt.r);
  const std::uint64_t card = *F->cardinality();
  BigInt total = ipow(card, opt.h) * (card - 1);
  if (total > opt.budget)
    throw ResourceError("search space of " + to_string(total) + " curves exceeds budget",
                        total > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(total));
  const auto lower = static_cast<std::uint64_t>(ipow(card, opt.h));
  std::set<std::tuple<unsigned, std::string, std::string>> seen;
  for (std::uint64_t top = 1; top < card; ++top) {
    for (std::uint64_t low = 0; low < lower; ++low) {
      std::vector<Elem> coeffs;
      std::uint64_t rest = low;
      for (unsigned i = 0; i < opt.h; ++i) {
        coeffs.push_back(Elem::from_index(F, rest % card));
        rest /= card;
      }
      coeffs.push_back(Elem::from_index(F, top));
      const Curve C = make_curve(LinPoly(F, coeffs));
      Classification cls;
      BigInt N;
      std::string method;
      json twist = nullptr;
      if (opt.s % C.q_degree == 0) {
        const LResult lr = l_polynomial(C, opt.s);
        N = predicted_count(lr.L, 1);
        method = "l_polynomial";
        const Elem a = a_constant(C, C.h ? symplectic_basis(C).c : std::vector<Elem>{});
        twist = to_string(twist_class(a).tag);
      } else {
        const ClassifyResult cr = classify(C, opt.s, opt.budget, opt.jobs);
        N = cr.N;
        method = cr.method;
      }
      cls = classify_count(N, opt.p, opt.s, C.genus);
      if (opt.filter != "all" && to_string(cls) != opt.filter) continue;
      if (opt.dedupe && !twist.is_null()) {
        if (!seen.insert({C.q_degree, twist.get<std::string>(), to_string(cls)}).second) continue;
      }
      json R = json::array();
      for (const auto& c : coeffs) {
        if (opt.r == 1)
          R.push_back(c.coeffs()[0]);
        else
          R.push_back(std::vector<Residue>(c.coeffs().begin(), c.coeffs().end()));
      }
      emit(json{{"schema_version", kSchemaVersion},
                {"kind", "search"},
                {"spec", json{{"p", opt.p}, {"r", opt.r}, {"R", R}}},
                {"h", opt.h},
                {"q_degree", C.q_degree},
                {"genus", int_to_json(C.genus)},
                {"s", opt.s},
                {"classification", to_string(cls)},
                {"N", int_to_json(N)},
                {"method", method},
                {"twist_class", twist}});
    }
  }
}

// ---------------------------------------------------------------- verify

json verify_curve(const CurveSpec& spec, const Options& opt, bool corrupt_b) {
  const Curve C = build_curve(spec);
  const std::uint32_t p = C.p;
  Checks checks;
  const FieldPtr Fq = C.splitting_field;

  // B_c invariants on the W basis and on pairwise sums.
  const std::vector<Elem> cs = C.W.empty() ? std::vector<Elem>{Elem(Fq)} : C.W;
  const LinPoly RF = C.R_q;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string tag = " (w" + std::to_string(k) + ")";
    const Elem c = cs[k];
    const Elem one = Elem::one(Fq);
    const Elem eps = b_residual(C, c, corrupt_b ? &one : nullptr);
    checks.add("b_recursion_closes" + tag, eps.is_zero(), "residual eps = " + coords_text(eps));
    if (!eps.is_zero()) continue;
    const BPoly bp = b_poly(C, c);
    const LinPoly lhs = lp_pth_power(bp.B) - bp.B;
    const LinPoly rhs = c * RF + LinPoly::monomial(lp_eval(RF, c), 0);
    checks.add("b_defining_identity" + tag, lhs == rhs);
    checks.add("trace_cRc_zero" + tag, trace_to_prime(c * lp_eval(RF, c)) == 0);
    if (C.h >= 1) checks.add("sigma_preserves_curve" + tag, preserves_curve(C, make_p_element(C, c, 0)));
  }
  for (std::size_t i = 0; i < C.W.size(); ++i)
    for (std::size_t j = i + 1; j < C.W.size(); ++j) {
      const LinPoly sum = b_poly(C, C.W[i] + C.W[j]).B;
      checks.add("b_additive (w" + std::to_string(i) + ", w" + std::to_string(j) + ")",
                 sum == b_poly(C, C.W[i]).B + b_poly(C, C.W[j]).B);
    }

  // Quadric nondegeneracy and the two counts on each feasible s.
  for (const unsigned s : s_list(C, opt)) {
    const std::string tag = " (s = " + std::to_string(s) + ")";
    if (s <= kQuadricMaxDegree) {
      const QuadricCount qc = count_points_quadric(C, s);
      checks.add("quadric_rank_is_n" + tag, qc.gram_rank == static_cast<Eigen::Index>(qc.n),
                 "rank " + std::to_string(qc.gram_rank) + ", n " + std::to_string(qc.n));
      if (oracle_feasible(p, s, opt.budget)) {
        const BigInt N = count_points_oracle(C, s, opt.budget, opt.jobs);
        checks.add("oracle_vs_quadric" + tag, N == qc.N, to_string(N) + " vs " + to_string(qc.N));
      }
    }
  }

  // Everything the analysis report cross-checks.
  const json report = analyze(spec, opt);
  for (const auto& c : report["checks"]) checks.append(c);
  json out{{"schema_version", kSchemaVersion}, {"kind", "verify"}, {"spec", spec_to_json(spec)}};
  out["checks"] = checks.get();
  out["passed"] = all_checks_pass(out);
  return out;
}

std::vector<CurveSpec> preset(const std::string& name) {
  if (name == "paper-examples") {
    return {
        CurveSpec{3, 1, {{0}, {1}}},        // R = X^3
        CurveSpec{5, 1, {{0}, {1}}},        // R = X^5
        CurveSpec{7, 1, {{0}, {1}}},        // R = X^7
        CurveSpec{3, 2, {{0, 0}, {0, 1}}},  // R = i X^3 over F_9, i^2 = -1
        CurveSpec{3, 1, {{1}}},             // R = X
        CurveSpec{5, 1, {{1}, {1}}},        // R = X + X^5
    };
  }
  if (name == "kani-rosen") {
    return {
        CurveSpec{3, 1, {{0}, {1}}},
        CurveSpec{3, 2, {{0, 0}, {0, 1}}},
    };
  }
  throw ParseError("unknown preset '" + name + "' (expected paper-examples or kani-rosen)");
}

// ---------------------------------------------------------------- CSV

namespace {

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_rows(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows,
                     bool with_header) {
  std::ostringstream os;
  auto line = [&](const auto& cells, auto fmt) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << fmt(cells[i]);
    os << "\n";
  };
  if (with_header) line(header, [](const std::string& s) { return s; });
  for (const auto& r : rows) line(r, csv_cell);
  return os.str();
}

}  // namespace

std::string search_csv_header() {
  return "p,r,R,h,q_degree,genus,s,classification,N,method,twist_class\n";
}

std::string to_csv(const json& record) {
  const std::string kind = record.value("kind", "");
  const json& spec = record.contains("spec") ? record["spec"] : json(nullptr);
  const json R = spec.is_null() ? json(nullptr) : json(spec["R"].dump());
  if (kind == "analysis") {
    std::vector<std::vector<json>> rows;
    for (const auto& e : record["per_s"]) {
      const json& L = e["lpoly"];
      rows.push_back({spec["p"], spec["r"], R, record["curve"]["genus"], record["curve"]["h"],
                      record["curve"]["q_degree"], e["s"], L.is_null() ? json("") : L["form"],
                      L.is_null() ? json("") : L["sign"], e["classification"], e["N"], e["classification_method"]});
    }
    return csv_rows({"p", "r", "R", "genus", "h", "q_degree", "s", "form", "sign", "classification", "N", "method"},
                    rows, true);
  }
  if (kind == "count") {
    std::vector<std::vector<json>> rows;
    for (const auto& e : record["results"])
      rows.push_back({spec["p"], spec["r"], R, e["s"], e["N"], e["hasse_weil_low"], e["hasse_weil_high"], e["within"]});
    return csv_rows({"p", "r", "R", "s", "N", "hasse_weil_low", "hasse_weil_high", "within"}, rows, true);
  }
  if (kind == "lpoly") {
    std::vector<std::vector<json>> rows;
    for (const auto& e : record["results"]) {
      std::string coeffs;
      for (const auto& c : e["lpoly"]["coefficients"]) coeffs += (coeffs.empty() ? "" : " ") + csv_cell(c);
      rows.push_back({spec["p"], spec["r"], R, e["s"], e["lpoly"]["form"], e["lpoly"]["sign"], e["classification"],
                      e["N_1"], coeffs});
    }
    return csv_rows({"p", "r", "R", "s", "form", "sign", "classification", "N_1", "coefficients"}, rows, true);
  }
  if (kind == "search") {
    return csv_rows({}, {{spec["p"], spec["r"], R, record["h"], record["q_degree"], record["genus"], record["s"],
                          record["classification"], record["N"], record["method"],
                          record["twist_class"].is_null() ? json("") : record["twist_class"]}},
                    false);
  }
  if (kind == "verify") {
    std::vector<std::vector<json>> rows;
    for (const auto& c : record["checks"]) rows.push_back({R, c["name"], c["status"], c["detail"]});
    return csv_rows({"R", "check", "status", "detail"}, rows, true);
  }
  throw Error("no CSV projection for record kind '" + kind + "'");
}

}  // namespace aszeta::cli
