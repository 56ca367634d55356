#pragma once

#include <string>

#include <json.hpp>

#include "talex/alexander.hpp"
#include "talex/curve.hpp"

namespace talex {

// Report emission.  Field order is fixed so golden files can target either
// the text or the structured form; polynomials go through normalize_assoc
// before serialization.

inline std::string torsion_str(const TorsionResult& t) {
  if (!t.defined) return "undefined (" + t.reason + ")";
  return fraction_str(t.value);
}

inline std::string invariant_report_text(const InvariantReport& r) {
  std::string out;
  out += "delta0: " + poly_str(normalize_assoc(r.orders.delta0)) + "\n";
  out += "delta1: " + poly_str(normalize_assoc(r.orders.delta1)) + "\n";
  out += "delta2: " + poly_str(normalize_assoc(r.orders.delta2)) + "\n";
  out += "wada: " + fraction_str(r.wada.value) + "\n";
  out += "torsion: " + torsion_str(r.tau) + "\n";
  out += std::string("acyclic: ") + (r.acyclic ? "true" : "false") + "\n";
  out += std::string("h1_torsion: ") +
         (r.orders.h1_torsion() ? "true" : "false") + "\n";
  return out;
}

inline nlohmann::ordered_json invariant_report_json(const InvariantReport& r) {
  nlohmann::ordered_json j;
  j["delta0"] = poly_str(normalize_assoc(r.orders.delta0));
  j["delta1"] = poly_str(normalize_assoc(r.orders.delta1));
  j["delta2"] = poly_str(normalize_assoc(r.orders.delta2));
  j["wada"] = fraction_str(r.wada.value);
  j["torsion"] = torsion_str(r.tau);
  j["acyclic"] = r.acyclic;
  j["h1_torsion"] = r.orders.h1_torsion();
  return j;
}

inline std::string theorem_report_text(const TheoremReport& r) {
  std::string out;
  out += "alpha: " + fraction_str(r.alpha) + "\n";
  for (const auto& li : r.locals)
    out += "local " + li.label + ": " + fraction_str(li.delta) +
           (li.acyclic ? "" : " [not torsion]") + "\n";
  out += "lhs: " + fraction_str(r.lhs) + "\n";
  out += "rhs_known: " + fraction_str(r.rhs_known) + "\n";
  out += "residual: " + fraction_str(r.residual) + "\n";
  out += std::string("divisible: ") + verdict_str(r.divisible) + "\n";
  out += std::string("self_conjugate: ") +
         (r.self_conjugate ? "true" : "false") + "\n";
  out += std::string("unitary_gate: ") + (r.unitary_gate ? "true" : "false") +
         "\n";
  out += std::string("local_torsion_gate: ") +
         (r.local_torsion_gate ? "true" : "false") + "\n";
  return out;
}

inline nlohmann::ordered_json theorem_report_json(const TheoremReport& r) {
  nlohmann::ordered_json j;
  j["alpha"] = fraction_str(r.alpha);
  nlohmann::ordered_json locals = nlohmann::ordered_json::array();
  for (const auto& li : r.locals)
    locals.push_back(nlohmann::ordered_json{{"label", li.label},
                                    {"delta", fraction_str(li.delta)},
                                    {"torsion", li.acyclic}});
  j["locals"] = std::move(locals);
  j["lhs"] = fraction_str(r.lhs);
  j["rhs_known"] = fraction_str(r.rhs_known);
  j["residual"] = fraction_str(r.residual);
  j["divisible"] = verdict_str(r.divisible);
  j["self_conjugate"] = r.self_conjugate;
  j["unitary_gate"] = r.unitary_gate;
  j["local_torsion_gate"] = r.local_torsion_gate;
  return j;
}

inline std::string corollary_report_text(const CorollaryReport& r) {
  std::string out = theorem_report_text(r.classical);
  out += std::string("consistent_with_theorem: ") +
         (r.consistent_with_theorem ? "true" : "false") + "\n";
  return out;
}

inline nlohmann::ordered_json corollary_report_json(const CorollaryReport& r) {
  nlohmann::ordered_json j = theorem_report_json(r.classical);
  j["consistent_with_theorem"] = r.consistent_with_theorem;
  return j;
}

inline std::string character_str(const ScanRow& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.exponents.size(); ++i) {
    if (i) out += ", ";
    out += "z^" + std::to_string(row.exponents[i]);
  }
  return out + ")";
}

inline std::string scan_report_text(const ScanReport& r) {
  std::string out;
  out += "scan_order: " + std::to_string(r.scan_order) + "\n";
  std::string comps;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    if (i) comps += ", ";
    comps += r.components[i];
  }
  out += "components: " + comps + "\n";
  for (const auto& row : r.rows)
    out += "character " + character_str(row) + ": delta1 = " +
           poly_str(normalize_assoc(row.delta1)) + ", member = " +
           (row.member ? "true" : "false") + "\n";
  return out;
}

inline nlohmann::ordered_json scan_report_json(const ScanReport& r) {
  nlohmann::ordered_json j;
  j["scan_order"] = r.scan_order;
  j["components"] = r.components;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back(nlohmann::ordered_json{
        {"character", character_str(row)},
        {"delta1", poly_str(normalize_assoc(row.delta1))},
        {"member", row.member}});
  j["rows"] = std::move(rows);
  return j;
}

inline std::string validation_report_text(const ValidationReport& r) {
  if (r.ok()) return "valid: true\n";
  std::string out = "valid: false\n";
  for (const auto& i : r.issues) out += i.code + ": " + i.what + "\n";
  return out;
}

inline nlohmann::ordered_json validation_report_json(const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["valid"] = r.ok();
  nlohmann::ordered_json issues = nlohmann::ordered_json::array();
  for (const auto& i : r.issues)
    issues.push_back(nlohmann::ordered_json{{"code", i.code}, {"what", i.what}});
  j["issues"] = std::move(issues);
  return j;
}

}  // namespace talex
