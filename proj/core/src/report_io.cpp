#include "metent/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "json_internal.hpp"
#include "metent/error.hpp"

namespace metent {

using detail::Json;

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

Json points_json(const std::vector<Vector>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(p);
  return arr;
}

Json constants_value(const PaperConstants& c) {
  return Json{{"C0", c.C0}, {"C2", c.C2}, {"c2", c.c2}, {"C2_dual", c.C2_dual},
              {"eps", c.eps}, {"R0", c.R0}};
}

Json cover_value(const CoverEstimate& e) {
  return Json{{"t", e.t},
              {"lower", e.lower},
              {"upper", e.upper},
              {"certification", std::string(to_string(e.certification))},
              {"pitch", e.pitch},
              {"eta", e.eta},
              {"candidates", e.candidates},
              {"budget_exhausted", e.budget_exhausted},
              {"centers", points_json(e.centers)}};
}

Json staircase_value(const Staircase& st) {
  Json entries = Json::array();
  for (const auto& e : st.entries) {
    entries.push_back(Json{{"t", e.t},
                           {"lower", e.lower},
                           {"upper", e.upper},
                           {"lower_bits", e.lower_bits},
                           {"upper_bits", e.upper_bits},
                           {"certification", std::string(to_string(e.certification))},
                           {"pitch", e.pitch},
                           {"eta", e.eta}});
  }
  return Json{{"entries", entries},
              {"radius_lo", number(st.radius_lo)},
              {"radius_hi", number(st.radius_hi)},
              {"repairs", st.repairs}};
}

Json gamma_value(const GammaValue& g) {
  return Json{{"which", std::string(to_string(g.which))},
              {"value", g.value},
              {"mstar", g.mstar},
              {"mstar_stderr", g.mstar_stderr},
              {"k_bits", g.k_bits},
              {"k_undefined", g.k_undefined}};
}

Json check_value(const InequalityCheck& c) {
  return Json{{"name", c.name},
              {"lhs_lower_bits", c.lhs_lower_bits},
              {"rhs_upper_bits", c.rhs_upper_bits},
              {"status", c.skipped ? "skipped" : (c.consistent ? "consistent" : "violated-at-brackets")},
              {"note", c.note}};
}

std::string dump(const Json& j, int indent) { return j.dump(indent); }

}  // namespace

PaperConstants parse_constants(std::string_view config_text) {
  Json root;
  try {
    root = Json::parse(config_text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  PaperConstants c;
  if (!root.is_object()) throw InputError("config: top level must be an object");
  if (!root.contains("constants")) return c;
  const auto& sec = root.at("constants");
  if (!sec.is_object()) throw InputError("config: \"constants\" must be an object");
  for (const auto& [key, value] : sec.items()) {
    if (!value.is_number()) throw InputError("config: constants." + key + " must be a number");
    const double v = value.get<double>();
    if (key == "C0") c.C0 = v;
    else if (key == "C2") c.C2 = v;
    else if (key == "c2") c.c2 = v;
    else if (key == "C2_dual") c.C2_dual = v;
    else if (key == "eps") c.eps = v;
    else if (key == "R0") c.R0 = v;
    else throw InputError("config: unknown constant '" + key + "'");
  }
  c.validate();
  return c;
}

std::string constants_json(const PaperConstants& c) { return constants_value(c).dump(); }

std::uint64_t constants_hash(const PaperConstants& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : constants_json(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string report_filename(std::string_view stem, std::uint64_t seed, const PaperConstants& c,
                            std::string_view ext) {
  std::ostringstream out;
  out << stem << "_seed" << seed << "_c" << std::hex << std::setw(16) << std::setfill('0')
      << constants_hash(c) << '.' << ext;
  return out.str();
}

std::string to_json(const CoverEstimate& e, int indent) { return dump(cover_value(e), indent); }

std::string to_json(const Staircase& st, int indent) { return dump(staircase_value(st), indent); }

std::string to_json(const GammaValue& g, int indent) { return dump(gamma_value(g), indent); }

std::string to_json(const SeparatedSet& s, int indent) {
  return dump(Json{{"separation", s.separation},
                   {"gauge", detail::body_json(s.ambient)},
                   {"container", detail::body_json(s.container)},
                   {"points", points_json(s.points)}},
              indent);
}

std::string to_json(const TelescopeSchedule& t, int indent) {
  Json collapses = Json::array();
  for (const auto& c : t.collapses) {
    collapses.push_back(Json{{"group", std::string(to_string(c.group))},
                             {"upper", c.upper},
                             {"lower", c.lower},
                             {"ratio", c.ratio},
                             {"ok", c.ok}});
  }
  Json j{{"odd", t.odd}, {"even", t.even}, {"collapses", collapses}, {"failing", t.failing}};
  j["first_failure"] = t.first_failure() ? Json(*t.first_failure()) : Json(nullptr);
  return dump(j, indent);
}

std::string to_json(const DualityReport& r, int indent) {
  Json ratios = Json::array();
  for (const auto& e : r.ratios) {
    ratios.push_back(Json{{"t", e.t}, {"alpha", e.alpha}, {"right", e.right}, {"left", e.left}});
  }
  Json beta = Json::array();
  for (const auto& b : r.beta) beta.push_back(Json{{"alpha", b.alpha}, {"beta", b.beta}});
  Json overlap = Json::array();
  for (const auto& o : r.overlap) overlap.push_back(o ? Json(*o) : Json(nullptr));
  return dump(Json{{"body", Json::parse(r.body_json)},
                   {"grid", r.grid},
                   {"alpha_grid", r.alpha_grid},
                   {"primal", staircase_value(r.primal)},
                   {"dual", staircase_value(r.dual)},
                   {"ratios", ratios},
                   {"beta", beta},
                   {"overlap", overlap},
                   {"constants", constants_value(r.constants)},
                   {"seed", r.seed},
                   {"budget", r.budget}},
              indent);
}

std::string to_json(const FirstStepRecord& r, int indent) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_value(c));
  return dump(Json{{"gamma", gamma_value(r.gamma)},
                   {"gamma_prime", gamma_value(r.gamma_prime)},
                   {"radius", r.radius},
                   {"checks", checks},
                   {"consistent", r.consistent()}},
              indent);
}

std::string to_json(const IterationRecord& r, int indent) {
  Json factors = Json::array();
  for (const auto& f : r.factors) {
    factors.push_back(Json{{"j", f.j},
                           {"lemma_factor", {{"lower", f.lemma_factor.lower}, {"upper", f.lemma_factor.upper}}},
                           {"corollary_factor",
                            {{"lower", f.corollary_factor.lower}, {"upper", f.corollary_factor.upper}}},
                           {"step", check_value(f.step)},
                           {"margin_bits", f.step.rhs_upper_bits - f.step.lhs_lower_bits}});
  }
  return dump(Json{{"kind", std::string(to_string(r.kind))},
                   {"sequence", r.sequence.values},
                   {"s", r.sequence.s},
                   {"lhs", {{"lower", r.lhs.lower}, {"upper", r.lhs.upper}}},
                   {"tail", {{"lower", r.tail.lower}, {"upper", r.tail.upper}}},
                   {"tail_is_one", r.tail_is_one},
                   {"factors", factors},
                   {"unrolled", check_value(r.lemma_form)},
                   {"psi_product", check_value(r.corollary_form)},
                   {"consistent", r.consistent()}},
              indent);
}

std::string to_json(const ConjectureProbe& p, int indent) {
  Json records = Json::array();
  for (const auto& r : p.records) {
    records.push_back(Json{{"body", Json::parse(r.body_json)},
                           {"radius", r.radius},
                           {"mstar", r.mstar},
                           {"k_bits", r.k_bits},
                           {"excluded", r.excluded},
                           {"conjecture_ratio", r.conjecture_ratio},
                           {"log_ratio", r.log_ratio ? Json(*r.log_ratio) : Json(nullptr)}});
  }
  return dump(Json{{"family", std::string(to_string(p.spec.family))},
                   {"dim", p.spec.dim},
                   {"radius", p.spec.radius},
                   {"points", p.spec.points},
                   {"records", records},
                   {"max", p.max},
                   {"mean", p.mean},
                   {"histogram", p.histogram},
                   {"constants", constants_value(p.constants)},
                   {"seed", p.seed}},
              indent);
}

std::string ratio_csv(const DualityReport& r) {
  std::ostringstream out;
  out << std::setprecision(12) << "t,alpha,right,left,primal_lower_bits,primal_upper_bits\n";
  for (const auto& e : r.ratios) {
    const StaircaseEntry* p = nullptr;
    for (const auto& x : r.primal.entries) {
      if (x.t == e.t) p = &x;
    }
    out << e.t << ',' << e.alpha << ',' << e.right << ',' << e.left << ','
        << (p ? p->lower_bits : 0.0) << ',' << (p ? p->upper_bits : 0.0) << '\n';
  }
  return out.str();
}

}  // namespace metent
