#include "alphad/report.hpp"

#include "alphad/parser.hpp"

#include <cmath>
#include <sstream>

namespace alphad {

namespace {

using nlohmann::json;

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

json number(const Number& v) {
  json out = json::object();
  out["value"] = num(v.value);
  out["exact"] = v.exact ? json(to_string(*v.exact)) : json(nullptr);
  return out;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::string source_name(PrioritySource s) {
  switch (s) {
    case PrioritySource::AlphaDiscounting: return "alpha-discounting";
    case PrioritySource::UniformFallback: return "uniform-fallback";
    case PrioritySource::Ignorance: return "total-ignorance";
  }
  return "unknown";
}

std::string method_name(AhpMethod m) { return m == AhpMethod::PowerIteration ? "power-iteration" : "squaring"; }

std::string equation_string(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    const Rational& c = p.coefficients()[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += "alpha";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::string label_of(const Number& v) {
  if (v.exact && denominator(*v.exact) != 1) return to_string(*v.exact) + " (" + format_double(v.value) + ")";
  return format_double(v.value);
}

std::string preference_text(const Problem& p, std::size_t index) {
  return format_preference(p, p.preferences()[index]);
}

json classification_json(const ClassificationReport& c, const CriteriaSet& criteria) {
  json out = json::object();
  out["label"] = to_string(c.label);
  json rules = json::array();
  for (Rule r : c.rules_fired) rules.push_back(to_string(r));
  out["rules"] = rules;
  json witnesses = json::array();
  for (const auto& w : c.witnesses) {
    json item = json::object();
    item["rule"] = to_string(w.rule);
    json rels = json::array();
    rels.push_back(describe(w.first, criteria));
    if (w.second) rels.push_back(describe(*w.second, criteria));
    item["relations"] = rels;
    witnesses.push_back(item);
  }
  out["witnesses"] = witnesses;
  out["depth_exceeded"] = c.depth_exceeded;
  out["determinant_agrees"] = c.determinant_agrees ? json(*c.determinant_agrees) : json(nullptr);
  return out;
}

json alpha_json(const AlphaSolution& a) {
  json out = json::object();
  out["alpha"] = number(a.alpha);
  json roots = json::array();
  for (const auto& r : a.roots) roots.push_back(number(r));
  out["roots"] = roots;
  out["consistency"] = number(a.consistency);
  out["inconsistency"] = number(a.inconsistency);
  out["equation"] = a.consistent_branch ? json(nullptr) : json(equation_string(a.equation));
  out["consistent_branch"] = a.consistent_branch;
  out["discharged"] = a.discharged;
  json extras = json::array();
  for (const auto& e : a.extra_params) {
    json item = json::object();
    item["preference"] = e.preference + 1;
    item["value"] = number(e.value);
    item["minor_solutions"] = numbers(e.minor_solutions);
    extras.push_back(item);
  }
  out["extra_params"] = extras;
  return out;
}

json discounts_json(const std::vector<DiscountEntry>& entries, const Problem& problem) {
  json out = json::array();
  for (const auto& e : entries) {
    json item = json::object();
    item["preference"] = e.preference + 1;
    item["statement"] = preference_text(problem, e.preference);
    item["kind"] = to_string(e.kind);
    item["stated"] = number(e.stated);
    item["realized"] = number(e.realized);
    item["factor"] = number(e.factor);
    out.push_back(item);
  }
  return out;
}

json priority_json(const PriorityVector& pv, const CriteriaSet& criteria) {
  json out = json::object();
  out["criteria"] = criteria.names();
  out["weights"] = numbers(pv.values());
  if (pv.is_exact()) {
    json exact = json::array();
    for (const auto& w : pv.weights) exact.push_back(to_string(*w.exact));
    out["exact"] = exact;
  } else {
    out["exact"] = nullptr;
  }
  return out;
}

std::string vector_text(const PriorityVector& pv, const CriteriaSet& criteria) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    os << "  " << criteria.name(i) << "  " << label_of(pv.weights[i]) << "\n";
  }
  return os.str();
}

}  // namespace

std::string describe(const DerivedRelation& rel, const CriteriaSet& criteria) {
  std::string out = criteria.name(rel.i) + " = " + format_double(rel.ratio) + " " + criteria.name(rel.j) + " via ";
  for (std::size_t k = 0; k < rel.trail.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(rel.trail[k] + 1);
  }
  return out;
}

json to_json(const Report& r) {
  json doc = json::object();
  doc["command"] = r.command;
  if (r.problem) {
    json p = json::object();
    p["criteria"] = r.problem->criteria().names();
    p["text"] = format_problem(*r.problem);
    doc["problem"] = p;
  } else {
    doc["problem"] = nullptr;
  }
  doc["classification"] =
      r.classification && r.problem ? classification_json(*r.classification, r.problem->criteria()) : json(nullptr);
  doc["alpha"] = r.alpha ? alpha_json(*r.alpha) : json(nullptr);
  if (r.priority && r.problem) {
    json p = priority_json(*r.priority, r.problem->criteria());
    p["source"] = source_name(r.source);
    doc["priority"] = p;
  } else if (r.source == PrioritySource::Ignorance) {
    json p = json::object();
    p["source"] = source_name(r.source);
    doc["priority"] = p;
  } else {
    doc["priority"] = nullptr;
  }
  doc["discounts"] = r.problem ? discounts_json(r.discounts, *r.problem) : json::array();

  if (r.ahp) {
    json a = json::object();
    if (r.ahp->result) {
      a["lambda_max"] = num(r.ahp->result->lambda_max);
      a["ci"] = num(r.ahp->result->ci);
      a["vector"] = numbers(r.ahp->result->vector);
      a["iterations"] = r.ahp->result->iterations;
      a["method"] = method_name(r.ahp->result->method);
      a["discounts"] = r.problem ? discounts_json(r.ahp->discounts, *r.problem) : json::array();
    }
    a["error"] = r.ahp->error ? json(*r.ahp->error) : json(nullptr);
    doc["ahp"] = a;
  } else {
    doc["ahp"] = nullptr;
  }

  if (r.error_min) {
    json e = json::object();
    e["argmin"] = numbers(r.error_min->result.argmin);
    e["value"] = num(r.error_min->result.value);
    e["evaluations"] = r.error_min->result.evaluations;
    e["refined"] = r.error_min->result.refined;
    e["grid_points"] = r.error_min->result.grid_points;
    e["alpha_d_value"] = r.error_min->alpha_d_value ? num(*r.error_min->alpha_d_value) : json(nullptr);
    doc["error_min"] = e;
  } else {
    doc["error_min"] = nullptr;
  }

  if (r.regimes && r.problem) {
    const auto& crit = r.problem->criteria();
    const auto& rb = *r.regimes;
    json g = json::object();
    g["free"] = crit.name(rb.solution.free_var);
    json comps = json::array();
    for (std::size_t k = 0; k < rb.solution.components.size(); ++k) {
      json c = json::object();
      c["criterion"] = crit.name(k);
      c["coefficient"] = to_string(rb.solution.components[k].coefficient);
      c["exponent"] = rb.solution.components[k].exponent;
      comps.push_back(c);
    }
    g["components"] = comps;
    json domain = json::object();
    domain["lo"] = number(rb.report.domain_lo);
    domain["hi"] = rb.report.domain_hi ? number(*rb.report.domain_hi) : json(nullptr);
    g["domain"] = domain;
    json bps = json::array();
    for (const auto& b : rb.report.breakpoints) bps.push_back(number(b));
    g["breakpoints"] = bps;
    json regs = json::array();
    for (const auto& reg : rb.report.regimes) {
      json item = json::object();
      item["point"] = reg.point;
      item["lo"] = number(reg.lo);
      item["hi"] = reg.hi ? number(*reg.hi) : json(nullptr);
      item["interval"] = interval_string(reg, crit.name(rb.solution.free_var));
      item["ordering"] = ordering_string(reg, crit);
      regs.push_back(item);
    }
    g["regimes"] = regs;
    if (rb.at) {
      json at = json::object();
      at["value"] = num(*rb.at);
      at["vector"] = numbers(rb.at_vector);
      g["at"] = at;
    } else {
      g["at"] = nullptr;
    }
    doc["regimes"] = g;
  } else {
    doc["regimes"] = nullptr;
  }

  doc["warnings"] = r.warnings;
  return doc;
}

std::string dump_canonical(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  if (r.problem) {
    os << "problem\n";
    std::istringstream lines(format_problem(*r.problem));
    for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
  }
  if (r.classification && r.problem) {
    os << "classification: " << to_string(r.classification->label);
    if (!r.classification->rules_fired.empty()) {
      os << " (";
      for (std::size_t k = 0; k < r.classification->rules_fired.size(); ++k) {
        os << (k ? ", " : "") << to_string(r.classification->rules_fired[k]);
      }
      os << ")";
    }
    os << "\n";
    for (const auto& w : r.classification->witnesses) {
      os << "  " << to_string(w.rule) << ": " << describe(w.first, r.problem->criteria());
      if (w.second) os << "  vs  " << describe(*w.second, r.problem->criteria());
      os << "\n";
    }
    if (r.classification->depth_exceeded) os << "  substitution search truncated\n";
  }
  if (r.alpha) {
    const auto& a = *r.alpha;
    if (a.consistent_branch) {
      os << "alpha: 1 (consistent system, no discounting)\n";
    } else {
      os << "parametric equation: " << equation_string(a.equation) << " = 0\n";
      os << "positive roots:";
      for (const auto& root : a.roots) os << " " << label_of(root);
      os << "\n";
      os << "alpha: " << label_of(a.alpha) << "\n";
    }
    os << "consistency c: " << label_of(a.consistency) << "\n";
    os << "inconsistency beta: " << label_of(a.inconsistency) << "\n";
    for (const auto& e : a.extra_params) {
      os << "extra parameter of preference " << e.preference + 1 << ": " << label_of(e.value) << " (from "
         << e.minor_solutions.size() << " minors)\n";
    }
    if (a.discharged) os << "result discharged: consistency below threshold\n";
  }
  if (r.priority && r.problem) {
    os << "priority vector";
    if (r.source == PrioritySource::UniformFallback) os << " (uniform fallback)";
    os << "\n" << vector_text(*r.priority, r.problem->criteria());
  } else if (r.source == PrioritySource::Ignorance && r.problem) {
    os << "priority: total ignorance, all mass on ";
    const auto& names = r.problem->criteria().names();
    for (std::size_t k = 0; k < names.size(); ++k) os << (k ? " u " : "") << names[k];
    os << "\n";
  }
  if (!r.discounts.empty() && r.problem) {
    os << "discounting\n";
    for (const auto& e : r.discounts) {
      os << "  " << e.preference + 1 << ". " << preference_text(*r.problem, e.preference) << ": ";
      if (e.kind == DiscountKind::Ratio) {
        os << "realized " << label_of(e.realized) << " instead of " << label_of(e.stated) << ", factor "
           << label_of(e.factor) << "\n";
      } else {
        os << "right-hand side scaled by " << label_of(e.factor) << "\n";
      }
    }
  }
  if (r.ahp && r.problem) {
    if (r.ahp->result) {
      const auto& a = *r.ahp->result;
      os << "AHP (" << method_name(a.method) << ", " << a.iterations << " iterations)\n";
      os << "  lambda_max " << format_double(a.lambda_max) << ", CI " << format_double(a.ci) << "\n";
      for (std::size_t i = 0; i < a.vector.size(); ++i) {
        os << "  " << r.problem->criteria().name(i) << "  " << format_double(a.vector[i]) << "\n";
      }
      for (const auto& e : r.ahp->discounts) {
        os << "  " << e.preference + 1 << ". " << preference_text(*r.problem, e.preference) << ": realized "
           << format_double(e.realized.value) << ", factor " << format_double(e.factor.value) << "\n";
      }
    } else if (r.ahp->error) {
      os << "AHP not applicable: " << *r.ahp->error << "\n";
    }
  }
  if (r.error_min && r.problem) {
    const auto& e = r.error_min->result;
    os << "error minimum " << format_double(e.value) << " (grid " << e.grid_points << ", " << e.evaluations
       << " evaluations" << (e.refined ? ", refined" : "") << ")\n";
    for (std::size_t i = 0; i < e.argmin.size(); ++i) {
      os << "  " << r.problem->criteria().name(i) << "  " << format_double(e.argmin[i]) << "\n";
    }
    if (r.error_min->alpha_d_value) {
      os << "error at the alpha-discounting vector " << format_double(*r.error_min->alpha_d_value) << "\n";
    }
  }
  if (r.regimes && r.problem) {
    const auto& crit = r.problem->criteria();
    const auto& rb = *r.regimes;
    const std::string free = crit.name(rb.solution.free_var);
    os << "general solution\n";
    for (std::size_t k = 0; k < rb.solution.components.size(); ++k) {
      const auto& c = rb.solution.components[k];
      os << "  " << crit.name(k) << " = " << to_string(c.coefficient);
      if (c.exponent > 0) os << " " << free;
      if (c.exponent > 1) os << "^" << c.exponent;
      os << "\n";
    }
    os << "domain: (" << format_double(rb.report.domain_lo.value) << ", "
       << (rb.report.domain_hi ? format_double(rb.report.domain_hi->value) : "inf") << ")\n";
    os << "breakpoints:";
    for (const auto& b : rb.report.breakpoints) os << " " << label_of(b);
    if (rb.report.breakpoints.empty()) os << " none";
    os << "\n";
    for (const auto& reg : rb.report.regimes) {
      os << "  " << (reg.point ? "" : free + " in ") << interval_string(reg, free) << ": " << ordering_string(reg, crit)
         << "\n";
    }
    if (rb.at) {
      os << "normalized at " << free << " = " << format_double(*rb.at) << "\n";
      for (std::size_t k = 0; k < rb.at_vector.size(); ++k) {
        os << "  " << crit.name(k) << "  " << format_double(rb.at_vector[k]) << "\n";
      }
    }
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace alphad
