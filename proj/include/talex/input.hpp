#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "talex/curve.hpp"
#include "talex/diagnostics.hpp"
#include "talex/presentation.hpp"
#include "talex/repn.hpp"

namespace talex {

using nlohmann::json;

// One computation = one document.  The braid block (when present) is kept
// around because zvk-compiled curves derive their singularity list from it.
struct ZvkSource {
  int strands = 0;
  std::vector<MonodromyDatum> data;
};

struct Document {
  int cyclotomic_order = 1;
  Presentation pres;
  Epsilon eps;
  Representation rho = Representation::trivial(1);
  bool rho_given = false;
  std::optional<CurveData> curve;
  std::optional<ZvkSource> zvk;
};

struct ParseOptions {
  bool zvk_full_relations = false;
};

namespace detail {

inline std::string line_col_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void reject_unknown_keys(const json& obj,
                                const std::set<std::string>& allowed,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw parse_error("unknown field '" + it.key() + "'", where);
}

inline const json& require(const json& obj, const std::string& key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw parse_error("missing field '" + key + "'", where);
  return *it;
}

inline int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer())
    throw parse_error("expected an integer", where);
  return v.get<int>();
}

inline std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw parse_error("expected a string", where);
  return v.get<std::string>();
}

inline BraidWord parse_braid_block(const json& b, const std::string& where) {
  if (!b.is_object()) throw parse_error("expected a braid object", where);
  reject_unknown_keys(b, {"strands", "word"}, where);
  const int strands = require_int(require(b, "strands", where),
                                  where + "/strands");
  return parse_braid_word(
      require_string(require(b, "word", where), where + "/word"), strands,
      where + "/word");
}

inline MonodromyDatum parse_monodromy_datum(const json& d, int strands,
                                            const std::vector<std::string>& gens,
                                            const std::string& where) {
  if (!d.is_object()) throw parse_error("expected a monodromy object", where);
  reject_unknown_keys(d, {"braid", "conjugators", "meridians", "multiplicity"},
                      where);
  MonodromyDatum out;
  out.braid = parse_braid_word(
      require_string(require(d, "braid", where), where + "/braid"), strands,
      where + "/braid");
  out.multiplicity = require_int(require(d, "multiplicity", where),
                                 where + "/multiplicity");
  const json& conj = require(d, "conjugators", where);
  if (!conj.is_array())
    throw parse_error("expected an array of words", where + "/conjugators");
  for (std::size_t i = 0; i < conj.size(); ++i)
    out.conjugators.push_back(parse_word(
        require_string(conj[i], where + "/conjugators"), gens,
        where + "/conjugators[" + std::to_string(i) + "]"));
  const json& mer = require(d, "meridians", where);
  if (!mer.is_array())
    throw parse_error("expected an array of strand indices",
                      where + "/meridians");
  for (const auto& m : mer)
    out.meridians.push_back(require_int(m, where + "/meridians"));
  return out;
}

inline Presentation parse_manual_presentation(const json& gens_json,
                                              const json* relators_json,
                                              const std::string& where) {
  Presentation p;
  if (!gens_json.is_array())
    throw parse_error("expected an array of generators", where);
  for (std::size_t i = 0; i < gens_json.size(); ++i) {
    const json& g = gens_json[i];
    const std::string gwhere = where + "[" + std::to_string(i) + "]";
    if (g.is_string()) {
      p.generators.push_back(g.get<std::string>());
      p.component_of.push_back("");
    } else if (g.is_object()) {
      reject_unknown_keys(g, {"name", "component"}, gwhere);
      p.generators.push_back(
          require_string(require(g, "name", gwhere), gwhere + "/name"));
      p.component_of.push_back(
          g.contains("component")
              ? require_string(g["component"], gwhere + "/component")
              : "");
    } else {
      throw parse_error("generator must be a name or an object", gwhere);
    }
  }
  if (relators_json) {
    if (!relators_json->is_array())
      throw parse_error("expected an array of relator words", "/relators");
    for (std::size_t i = 0; i < relators_json->size(); ++i) {
      const std::string rwhere = "/relators[" + std::to_string(i) + "]";
      Word r = parse_word(require_string((*relators_json)[i], rwhere),
                          p.generators, rwhere);
      if (!r.empty()) p.relators.push_back(r);
    }
  }
  p.check_well_formed();
  return p;
}

}  // namespace detail

inline Document parse_document(const std::string& text,
                               const ParseOptions& opts = {}) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid document: ") + e.what(),
                      detail::line_col_of(text, e.byte));
  }
  if (!doc.is_object())
    throw parse_error("document must be a JSON object", "line 1, column 1");
  detail::reject_unknown_keys(
      doc,
      {"cyclotomic_order", "generators", "relators", "braid", "epsilon",
       "rho", "curve"},
      "/");

  Document out;
  if (doc.contains("cyclotomic_order")) {
    out.cyclotomic_order =
        detail::require_int(doc["cyclotomic_order"], "/cyclotomic_order");
    if (out.cyclotomic_order < 1)
      throw parse_error("cyclotomic_order must be >= 1", "/cyclotomic_order");
  }

  // --- presentation ---------------------------------------------------
  const bool has_braid = doc.contains("braid");
  const bool has_relators = doc.contains("relators");
  if (has_braid && has_relators)
    throw parse_error("give either 'braid' or 'relators', not both", "/");
  if (has_braid) {
    const json& b = doc["braid"];
    if (!b.is_object()) throw parse_error("expected an object", "/braid");
    detail::reject_unknown_keys(b, {"strands", "word", "mode", "monodromy"},
                                "/braid");
    const int strands = detail::require_int(
        detail::require(b, "strands", "/braid"), "/braid/strands");
    const std::string mode = detail::require_string(
        detail::require(b, "mode", "/braid"), "/braid/mode");
    if (mode == "closure") {
      BraidWord braid = parse_braid_word(
          detail::require_string(detail::require(b, "word", "/braid"),
                                 "/braid/word"),
          strands, "/braid/word");
      out.pres = closure_presentation(braid);
    } else if (mode == "zvk") {
      const json& mono = detail::require(b, "monodromy", "/braid");
      if (!mono.is_array())
        throw parse_error("expected an array", "/braid/monodromy");
      ZvkSource src;
      src.strands = strands;
      const std::vector<std::string> names =
          [&] {  // conjugator words are written over the zvk generators
            std::vector<std::string> n;
            for (int i = 0; i < strands; ++i)
              n.push_back("g" + std::to_string(i + 1));
            return n;
          }();
      for (std::size_t i = 0; i < mono.size(); ++i)
        src.data.push_back(detail::parse_monodromy_datum(
            mono[i], strands, names,
            "/braid/monodromy[" + std::to_string(i) + "]"));
      out.pres =
          zvk_presentation(strands, src.data, opts.zvk_full_relations);
      out.zvk = std::move(src);
    } else {
      throw parse_error("mode must be 'closure' or 'zvk'", "/braid/mode");
    }
    // Optional name/component overrides alongside a braid block.
    if (doc.contains("generators")) {
      Presentation names = detail::parse_manual_presentation(
          doc["generators"], nullptr, "/generators");
      if (names.generator_count() != out.pres.generator_count())
        throw parse_error("generator override count differs from strand count",
                          "/generators");
      for (std::size_t i = 0; i < names.generator_count(); ++i) {
        // Relators were compiled over the default names; only labels and
        // display names change.
        out.pres.generators[i] = names.generators[i];
        if (!names.component_of[i].empty())
          out.pres.component_of[i] = names.component_of[i];
      }
      out.pres.check_well_formed();
    }
  } else {
    if (!doc.contains("generators"))
      throw parse_error("document needs 'generators' or 'braid'", "/");
    out.pres = detail::parse_manual_presentation(
        doc["generators"], has_relators ? &doc["relators"] : nullptr,
        "/generators");
  }

  // --- epsilon ----------------------------------------------------------
  if (doc.contains("epsilon")) {
    const json& e = doc["epsilon"];
    if (!e.is_object())
      throw parse_error("expected an object of generator weights", "/epsilon");
    out.eps.weights.assign(out.pres.generator_count(), 0);
    std::set<std::string> seen;
    for (auto it = e.begin(); it != e.end(); ++it) {
      const int g = out.pres.index_of(it.key());
      if (g == 0)
        throw parse_error("epsilon names unknown generator '" + it.key() + "'",
                          "/epsilon");
      out.eps.weights[static_cast<std::size_t>(g) - 1] =
          detail::require_int(it.value(), "/epsilon/" + it.key());
      seen.insert(it.key());
    }
    for (const auto& g : out.pres.generators)
      if (!seen.count(g))
        throw parse_error("epsilon missing generator '" + g + "'", "/epsilon");
  } else {
    out.eps = Epsilon::all_ones(out.pres.generator_count());
  }

  // --- rho --------------------------------------------------------------
  if (doc.contains("rho")) {
    const json& r = doc["rho"];
    if (!r.is_object())
      throw parse_error("expected an object of generator matrices", "/rho");
    std::vector<std::optional<CycloMatrix>> images(out.pres.generator_count());
    for (auto it = r.begin(); it != r.end(); ++it) {
      const int g = out.pres.index_of(it.key());
      if (g == 0)
        throw parse_error("rho names unknown generator '" + it.key() + "'",
                          "/rho");
      const json& rows = it.value();
      const std::string mwhere = "/rho/" + it.key();
      if (!rows.is_array() || rows.empty())
        throw parse_error("expected a nonempty array of rows", mwhere);
      const int dim = static_cast<int>(rows.size());
      CycloMatrix m(dim, out.cyclotomic_order);
      for (int i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
          throw parse_error("matrix must be square", mwhere);
        for (int j = 0; j < dim; ++j) {
          const std::string cwhere =
              mwhere + "[" + std::to_string(i) + "][" + std::to_string(j) +
              "]";
          try {
            m.at(i, j) = parse_coefficient(
                detail::require_string(row[static_cast<std::size_t>(j)],
                                       cwhere),
                out.cyclotomic_order);
          } catch (const error& e) {
            throw parse_error(e.what(), cwhere);
          }
        }
      }
      images[static_cast<std::size_t>(g) - 1] = std::move(m);
    }
    std::vector<CycloMatrix> final_images;
    for (std::size_t g = 0; g < images.size(); ++g) {
      if (!images[g])
        throw parse_error(
            "rho missing generator '" + out.pres.generators[g] + "'", "/rho");
      final_images.push_back(std::move(*images[g]));
    }
    out.rho = Representation::make(std::move(final_images));
    out.rho_given = true;
  } else {
    out.rho = Representation::trivial(out.pres.generator_count(),
                                      out.cyclotomic_order);
  }

  // --- curve ------------------------------------------------------------
  if (doc.contains("curve")) {
    const json& c = doc["curve"];
    if (!c.is_object()) throw parse_error("expected an object", "/curve");
    detail::reject_unknown_keys(c, {"components", "singularities"}, "/curve");
    CurveData curve;
    const json& comps = detail::require(c, "components", "/curve");
    if (!comps.is_array() || comps.empty())
      throw parse_error("expected a nonempty array", "/curve/components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string cwhere =
          "/curve/components[" + std::to_string(i) + "]";
      const json& cj = comps[i];
      if (!cj.is_object()) throw parse_error("expected an object", cwhere);
      detail::reject_unknown_keys(
          cj, {"label", "chi", "q", "meridian", "sing_count"}, cwhere);
      CurveComponent comp;
      comp.label = detail::require_string(
          detail::require(cj, "label", cwhere), cwhere + "/label");
      comp.chi = detail::require_int(detail::require(cj, "chi", cwhere),
                                     cwhere + "/chi");
      comp.weight = detail::require_int(detail::require(cj, "q", cwhere),
                                        cwhere + "/q");
      comp.meridian = parse_word(
          detail::require_string(detail::require(cj, "meridian", cwhere),
                                 cwhere + "/meridian"),
          out.pres.generators, cwhere + "/meridian");
      comp.sing_count = detail::require_int(
          detail::require(cj, "sing_count", cwhere), cwhere + "/sing_count");
      curve.components.push_back(std::move(comp));
    }

    if (c.contains("singularities")) {
      const json& sings = c["singularities"];
      if (!sings.is_array())
        throw parse_error("expected an array", "/curve/singularities");
      for (std::size_t i = 0; i < sings.size(); ++i) {
        const std::string swhere =
            "/curve/singularities[" + std::to_string(i) + "]";
        const json& sj = sings[i];
        if (!sj.is_object()) throw parse_error("expected an object", swhere);
        detail::reject_unknown_keys(
            sj, {"label", "generators", "relators", "braid", "inclusion",
                 "infinity"},
            swhere);
        CurveSingularity s;
        s.label = detail::require_string(
            detail::require(sj, "label", swhere), swhere + "/label");
        s.at_infinity =
            sj.contains("infinity") && sj["infinity"].is_boolean() &&
            sj["infinity"].get<bool>();
        if (sj.contains("braid")) {
          if (sj.contains("generators") || sj.contains("relators"))
            throw parse_error("give either a braid or a presentation", swhere);
          s.pres = closure_presentation(
              detail::parse_braid_block(sj["braid"], swhere + "/braid"));
        } else {
          s.pres = detail::parse_manual_presentation(
              detail::require(sj, "generators", swhere),
              sj.contains("relators") ? &sj["relators"] : nullptr,
              swhere + "/generators");
        }
        const json& inc = detail::require(sj, "inclusion", swhere);
        if (!inc.is_object())
          throw parse_error("expected an object mapping local generators to "
                            "global words",
                            swhere + "/inclusion");
        s.inclusion.assign(s.pres.generator_count(), Word());
        std::set<std::string> seen;
        for (auto it = inc.begin(); it != inc.end(); ++it) {
          const int g = s.pres.index_of(it.key());
          if (g == 0)
            throw parse_error("inclusion names unknown local generator '" +
                              it.key() + "'",
                              swhere + "/inclusion");
          s.inclusion[static_cast<std::size_t>(g) - 1] = parse_word(
              detail::require_string(it.value(), swhere + "/inclusion"),
              out.pres.generators, swhere + "/inclusion/" + it.key());
          seen.insert(it.key());
        }
        for (const auto& g : s.pres.generators)
          if (!seen.count(g))
            throw parse_error("inclusion missing local generator '" + g + "'",
                              swhere + "/inclusion");
        curve.singularities.push_back(std::move(s));
      }
    } else if (out.zvk) {
      // zvk-compiled documents derive the singularity list from the
      // monodromy, including the link at infinity from the product braid.
      for (std::size_t i = 0; i < out.zvk->data.size(); ++i) {
        LocalGroup lg = local_group_extraction(out.zvk->strands,
                                               out.zvk->data[i],
                                               opts.zvk_full_relations);
        CurveSingularity s;
        s.label = "s" + std::to_string(i + 1);
        s.pres = std::move(lg.pres);
        s.inclusion = std::move(lg.inclusion);
        curve.singularities.push_back(std::move(s));
      }
      LocalGroup inf = infinity_from_product(out.zvk->strands, out.zvk->data);
      CurveSingularity s;
      s.label = "infinity";
      s.at_infinity = true;
      s.pres = std::move(inf.pres);
      s.inclusion = std::move(inf.inclusion);
      curve.singularities.push_back(std::move(s));
    } else {
      throw parse_error(
          "curve block needs explicit singularities unless the presentation "
          "is zvk-compiled",
          "/curve");
    }
    out.curve = std::move(curve);
  }

  return out;
}

// Presentation as an input document (the braid2pres / zvk output format).
// Round-trips through parse_document.
inline std::string document_from_presentation(const Presentation& pres,
                                              int cyclotomic_order) {
  nlohmann::ordered_json doc;
  doc["cyclotomic_order"] = cyclotomic_order;
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < pres.generator_count(); ++i) {
    if (pres.component_of[i].empty()) {
      gens.push_back(pres.generators[i]);
    } else {
      gens.push_back(nlohmann::ordered_json{
          {"name", pres.generators[i]},
          {"component", pres.component_of[i]}});
    }
  }
  doc["generators"] = std::move(gens);
  nlohmann::ordered_json rels = nlohmann::ordered_json::array();
  for (const auto& r : pres.relators)
    rels.push_back(word_str(r, pres.generators));
  doc["relators"] = std::move(rels);
  return doc.dump(2) + "\n";
}

}  // namespace talex
