// talex: exact twisted Alexander invariants of finitely presented groups
// and plane-curve complements.
//
// Subcommands:
//   compute          invariant report for one (presentation, eps, rho)
//   validate         twist-data validation only
//   braid2pres       closure presentation of a braid, as an input document
//   zvk              Zariski-van Kampen presentation from monodromy data
//   scan-cv          rank-1 character scan (characteristic variety test)
//   check-theorem    global/local divisibility harness, twisted form
//   check-corollary  classical divisibility harness
//
// Exit codes: 0 success, 1 parse/validation failure, 2 engine error.
// Reports go to stdout, diagnostics to stderr only.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "talex/alexander.hpp"
#include "talex/curve.hpp"
#include "talex/input.hpp"
#include "talex/report.hpp"

namespace {

struct CommonOpts {
  std::string input;
  std::string format = "text";
  int scan_order = 2;
  std::string relations = "reduced";
  bool cross_check = false;
  std::uint64_t max_minors = 1000000;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw talex::parse_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

talex::Document load(const CommonOpts& opts) {
  talex::ParseOptions popts;
  popts.zvk_full_relations = (opts.relations == "full");
  return talex::parse_document(slurp(opts.input), popts);
}

void emit(const std::string& text, const nlohmann::ordered_json& structured,
          const CommonOpts& opts) {
  if (opts.format == "structured")
    std::cout << structured.dump(2) << "\n";
  else
    std::cout << text;
}

void print_notes(const std::vector<std::string>& notes) {
  for (const auto& n : notes) std::cerr << "note: " << n << "\n";
}

int run_compute(const CommonOpts& opts) {
  talex::Document doc = load(opts);
  talex::EngineOptions eopts;
  eopts.cross_check = opts.cross_check;
  eopts.max_minors = opts.max_minors;
  talex::InvariantReport rep =
      talex::compute_invariants(doc.pres, doc.eps, doc.rho, eopts);
  print_notes(rep.notes);
  emit(talex::invariant_report_text(rep), talex::invariant_report_json(rep),
       opts);
  return 0;
}

int run_validate(const CommonOpts& opts) {
  talex::Document doc = load(opts);
  talex::ValidationReport rep =
      talex::validate(doc.pres, doc.eps, doc.rho);
  if (doc.curve) {
    try {
      doc.curve->check(doc.pres, doc.eps);
    } catch (const talex::error& e) {
      rep.issues.push_back({"E-VALIDATE-CURVE", e.what()});
    }
  }
  emit(talex::validation_report_text(rep), talex::validation_report_json(rep),
       opts);
  return rep.ok() ? 0 : 1;
}

int run_braid2pres(const CommonOpts& opts, bool zvk_mode) {
  talex::Document doc = load(opts);
  if (zvk_mode && doc.pres.provenance != talex::Presentation::Provenance::zvk)
    throw talex::validation_error("input document is not in zvk mode");
  if (!zvk_mode &&
      doc.pres.provenance != talex::Presentation::Provenance::closure)
    throw talex::validation_error("input document is not a braid closure");
  std::cout << talex::document_from_presentation(doc.pres,
                                                 doc.cyclotomic_order);
  return 0;
}

int run_scan(const CommonOpts& opts) {
  talex::Document doc = load(opts);
  talex::ScanReport rep = talex::cv_scan(doc.pres, opts.scan_order);
  emit(talex::scan_report_text(rep), talex::scan_report_json(rep), opts);
  return 0;
}

int run_theorem(const CommonOpts& opts) {
  talex::Document doc = load(opts);
  if (!doc.curve)
    throw talex::validation_error("check-theorem needs a curve block");
  talex::TheoremReport rep =
      talex::theorem_check(*doc.curve, doc.pres, doc.eps, doc.rho);
  print_notes(rep.notes);
  emit(talex::theorem_report_text(rep), talex::theorem_report_json(rep),
       opts);
  return 0;
}

int run_corollary(const CommonOpts& opts) {
  talex::Document doc = load(opts);
  if (!doc.curve)
    throw talex::validation_error("check-corollary needs a curve block");
  talex::CorollaryReport rep = talex::corollary_check(*doc.curve, doc.pres);
  print_notes(rep.classical.notes);
  emit(talex::corollary_report_text(rep), talex::corollary_report_json(rep),
       opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact twisted Alexander invariants of plane curve groups"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string command;
  for (const auto& name :
       {"compute", "validate", "braid2pres", "zvk", "scan-cv",
        "check-theorem", "check-corollary"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opts.input, "input document (JSON)")
        ->required();
    sub->add_option("--format", opts.format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--scan-order", opts.scan_order,
                    "character order N for scan-cv")
        ->check(CLI::PositiveNumber);
    sub->add_option("--relations", opts.relations,
                    "full | reduced relation mode for zvk compilation")
        ->check(CLI::IsMember({"full", "reduced"}));
    sub->add_flag("--cross-check", opts.cross_check,
                  "check Wada invariant over every valid generator choice");
    sub->add_option("--max-minors", opts.max_minors,
                    "guard on the number of minors evaluated");
    sub->callback([&command, name]() { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (command == "compute") return run_compute(opts);
    if (command == "validate") return run_validate(opts);
    if (command == "braid2pres") return run_braid2pres(opts, false);
    if (command == "zvk") return run_braid2pres(opts, true);
    if (command == "scan-cv") return run_scan(opts);
    if (command == "check-theorem") return run_theorem(opts);
    if (command == "check-corollary") return run_corollary(opts);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const talex::error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case talex::errc::parse:
      case talex::errc::validation:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "E-ENGINE: " << e.what() << "\n";
    return 2;
  }
}
