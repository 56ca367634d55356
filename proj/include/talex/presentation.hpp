#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "talex/diagnostics.hpp"
#include "talex/word.hpp"

namespace talex {

// Group presentation with optional component labels on the generators
// (meridian marking for curve groups) and a provenance tag.
struct Presentation {
  enum class Provenance { manual, closure, zvk };

  std::vector<std::string> generators;
  std::vector<std::string> component_of;  // parallel to generators, "" = none
  std::vector<Word> relators;
  Provenance provenance = Provenance::manual;

  std::size_t generator_count() const { return generators.size(); }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i) + 1;
    return 0;
  }

  // Distinct component labels in first-appearance order.
  std::vector<std::string> component_labels() const {
    std::vector<std::string> labels;
    for (const auto& c : component_of)
      if (!c.empty() && std::find(labels.begin(), labels.end(), c) ==
                            labels.end())
        labels.push_back(c);
    return labels;
  }

  bool fully_labeled() const {
    for (const auto& c : component_of)
      if (c.empty()) return false;
    return !component_of.empty();
  }

  void check_well_formed() const {
    if (component_of.size() != generators.size())
      throw validation_error("component label list length mismatch");
    std::set<std::string> seen;
    for (const auto& g : generators) {
      if (g.empty()) throw validation_error("empty generator name");
      if (!seen.insert(g).second)
        throw validation_error("duplicate generator name '" + g + "'");
    }
    for (std::size_t r = 0; r < relators.size(); ++r)
      if (relators[r].max_generator() >
          static_cast<int>(generators.size()))
        throw validation_error("relator " + std::to_string(r + 1) +
                               " uses an undeclared generator");
  }
};

// Word parser over declared generator names.  Grammar (whitespace and '*'
// both separate):
//   word    := item* | item* '=' item*        (u = v parses as u v^{-1})
//   item    := atom [ '^' int ]
//   atom    := NAME | '(' word ')'
// A token that is not a declared name but matches one after lowercasing
// denotes the inverse ("A" for a^{-1}).
inline Word parse_word(std::string_view text,
                       const std::vector<std::string>& generators,
                       const std::string& where = {}) {
  struct Cursor {
    std::string_view s;
    std::size_t i = 0;
    const std::string& where;
    void skip() {
      while (i < s.size() &&
             (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*'))
        ++i;
    }
    bool done() {
      skip();
      return i >= s.size();
    }
    char peek() {
      skip();
      return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
      std::string loc = "column " + std::to_string(i + 1);
      if (!where.empty()) loc = where + ", " + loc;
      throw parse_error(what, loc);
    }
  } cur{text, 0, where};

  auto lookup = [&](const std::string& token, std::size_t at) -> int {
    for (std::size_t g = 0; g < generators.size(); ++g)
      if (generators[g] == token) return static_cast<int>(g) + 1;
    std::string lower = token;
    for (char& c : lower) c = static_cast<char>(std::tolower(
        static_cast<unsigned char>(c)));
    if (lower != token)
      for (std::size_t g = 0; g < generators.size(); ++g)
        if (generators[g] == lower) return -(static_cast<int>(g) + 1);
    cur.i = at;
    cur.fail("unknown generator '" + token + "'");
  };

  auto parse_int = [&]() -> long {
    cur.skip();
    std::size_t start = cur.i;
    if (cur.i < cur.s.size() && (cur.s[cur.i] == '-' || cur.s[cur.i] == '+'))
      ++cur.i;
    while (cur.i < cur.s.size() &&
           std::isdigit(static_cast<unsigned char>(cur.s[cur.i])))
      ++cur.i;
    if (cur.i == start || (cur.i == start + 1 &&
                           !std::isdigit(static_cast<unsigned char>(
                               cur.s[start]))))
      cur.fail("expected integer exponent");
    return std::stol(std::string(cur.s.substr(start, cur.i - start)));
  };

  // Recursive descent; depth bounded by input length.
  auto parse_sequence = [&](auto&& self, bool inside_parens) -> Word {
    Word acc;
    for (;;) {
      if (cur.done()) break;
      char c = cur.peek();
      if (c == ')') {
        if (!inside_parens) cur.fail("unmatched ')'");
        break;
      }
      if (c == '=') break;
      Word atom;
      if (c == '1') {  // the identity, as printed by word_str
        ++cur.i;
        continue;
      }
      if (c == '(') {
        ++cur.i;
        atom = self(self, true);
        if (cur.peek() != ')') cur.fail("expected ')'");
        ++cur.i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = cur.i;
        std::string token;
        while (cur.i < cur.s.size() &&
               (std::isalnum(static_cast<unsigned char>(cur.s[cur.i])) ||
                cur.s[cur.i] == '_'))
          token += cur.s[cur.i++];
        int g = lookup(token, start);
        atom = Word::generator(g > 0 ? g : -g, g > 0 ? 1 : -1);
      } else {
        cur.fail(std::string("unexpected character '") + c + "'");
      }
      long power = 1;
      if (cur.i < cur.s.size() && cur.s[cur.i] == '^') {
        ++cur.i;
        power = parse_int();
      }
      Word factor;
      const Word base = power < 0 ? atom.inverse() : atom;
      for (long p = 0; p < std::labs(power); ++p) factor = factor * base;
      acc = acc * factor;
    }
    return acc;
  };

  Word lhs = parse_sequence(parse_sequence, false);
  if (cur.peek() == '=') {
    ++cur.i;
    Word rhs = parse_sequence(parse_sequence, false);
    if (cur.peek() == '=') cur.fail("multiple '=' in relation");
    if (!cur.done()) cur.fail("trailing characters after relation");
    return lhs * rhs.inverse();
  }
  if (!cur.done()) cur.fail("trailing characters in word");
  return lhs;
}

// Braid word on d strands: letters are signed Artin generator indices in
// 1..d-1.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  void check() const {
    if (strands < 1) throw validation_error("braid needs at least one strand");
    for (int l : letters) {
      const int k = l > 0 ? l : -l;
      if (k < 1 || k > strands - 1)
        throw validation_error("braid letter s" + std::to_string(k) +
                               " out of range for " +
                               std::to_string(strands) + " strands");
    }
  }

  BraidWord operator*(const BraidWord& o) const {
    if (strands != o.strands)
      throw validation_error("braid product with different strand counts");
    BraidWord r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
  }
};

// "s1 S2 s1" with capital S for the inverse generator.
inline BraidWord parse_braid_word(std::string_view text, int strands,
                                  const std::string& where = {}) {
  BraidWord b;
  b.strands = strands;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> void {
    std::string loc = "column " + std::to_string(i + 1);
    if (!where.empty()) loc = where + ", " + loc;
    throw parse_error(what, loc);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    char c = text[i];
    if (c != 's' && c != 'S') fail("expected braid letter 's<k>' or 'S<k>'");
    const int sign = (c == 's') ? 1 : -1;
    ++i;
    std::size_t start = i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) fail("braid letter needs an index");
    const int k = std::stoi(std::string(text.substr(start, i - start)));
    b.letters.push_back(sign * k);
  }
  b.check();
  return b;
}

namespace detail {

// One Artin generator as a free-group substitution:
//   sigma_k:      x_k -> x_k x_{k+1} x_k^{-1},  x_{k+1} -> x_k
//   sigma_k^{-1}: x_k -> x_{k+1},               x_{k+1} -> x_{k+1}^{-1} x_k x_{k+1}
inline Word artin_letter_image(int letter, int gen) {
  const int k = letter > 0 ? letter : -letter;
  if (letter > 0) {
    if (gen == k)
      return Word::reduce({k, k + 1, -k});
    if (gen == k + 1) return Word::generator(k);
  } else {
    if (gen == k) return Word::generator(k + 1);
    if (gen == k + 1) return Word::reduce({-(k + 1), k, k + 1});
  }
  return Word::generator(gen);
}

inline Word artin_substitute(int letter, const Word& w) {
  std::vector<int> out;
  for (int l : w.letters) {
    const int g = l > 0 ? l : -l;
    Word image = artin_letter_image(letter, g);
    if (l < 0) image = image.inverse();
    out.insert(out.end(), image.letters.begin(), image.letters.end());
  }
  return Word::reduce(out);
}

}  // namespace detail

// Image of w under the automorphism of the braid word: the action is a
// homomorphism, so the rightmost braid letter acts first.
inline Word artin_action(const BraidWord& b, const Word& w) {
  b.check();
  if (w.max_generator() > b.strands)
    throw validation_error("word uses more strands than the braid");
  Word result = w;
  for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it)
    result = detail::artin_substitute(*it, result);
  return result;
}

// Underlying permutation: image[i-1] is where strand i ends up (1-based).
inline std::vector<int> braid_permutation(const BraidWord& b) {
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 1);
  for (int l : b.letters) {
    const int k = (l > 0 ? l : -l) - 1;
    std::swap(perm[k], perm[k + 1]);
  }
  return perm;
}

namespace detail {

// Component labels "c1", "c2", ... from permutation cycles, numbered by
// minimal strand in the cycle.
inline std::vector<std::string> cycle_labels(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  std::vector<int> cycle_of(d, 0);
  int next = 0;
  for (int i = 1; i <= d; ++i) {
    if (cycle_of[i - 1]) continue;
    ++next;
    int j = i;
    while (!cycle_of[j - 1]) {
      cycle_of[j - 1] = next;
      j = perm[j - 1];
    }
  }
  std::vector<std::string> labels(d);
  for (int i = 0; i < d; ++i)
    labels[i] = "c" + std::to_string(cycle_of[i]);
  return labels;
}

inline std::vector<std::string> default_generator_names(int d) {
  std::vector<std::string> names(d);
  for (int i = 0; i < d; ++i) names[i] = "g" + std::to_string(i + 1);
  return names;
}

}  // namespace detail

// Wirtinger-style presentation of the closure of b:
// < x_1..x_d | theta(b)(x_j) x_j^{-1}, j = 1..d-1 >, the redundant last
// relation dropped, trivial relators removed, components labeled from the
// braid permutation cycles.
inline Presentation closure_presentation(const BraidWord& b) {
  b.check();
  Presentation p;
  p.provenance = Presentation::Provenance::closure;
  p.generators = detail::default_generator_names(b.strands);
  p.component_of = detail::cycle_labels(braid_permutation(b));
  for (int j = 1; j <= b.strands - 1; ++j) {
    const Word x = Word::generator(j);
    const Word r = artin_action(b, x) * x.inverse();
    if (!r.empty()) p.relators.push_back(r);
  }
  return p;
}

// One critical value of the projection: the local braid, the conjugators
// transporting the collapsing meridians, and which strands collapse.
struct MonodromyDatum {
  BraidWord braid;
  std::vector<Word> conjugators;  // omega_k, one per collapsing meridian
  std::vector<int> meridians;     // collapsing strand indices, 1-based
  int multiplicity = 0;

  void check(int strands) const {
    braid.check();
    if (braid.strands != strands)
      throw validation_error("monodromy braid strand count mismatch");
    if (multiplicity < 1 || multiplicity > strands)
      throw validation_error("monodromy multiplicity out of range");
    if (static_cast<int>(conjugators.size()) != multiplicity)
      throw validation_error(
          "monodromy conjugator list length differs from multiplicity");
    if (static_cast<int>(meridians.size()) != multiplicity)
      throw validation_error(
          "monodromy meridian list length differs from multiplicity");
    for (int m : meridians)
      if (m < 1 || m > strands)
        throw validation_error("monodromy meridian index out of range");
  }

  Word conjugated_meridian(int k) const {
    return Word::generator(meridians[static_cast<std::size_t>(k)])
        .conjugated_by(conjugators[static_cast<std::size_t>(k)]);
  }
};

// Zariski-van Kampen presentation: generators g_1..g_d; for each datum the
// relators sigma_i(w_k g_k w_k^{-1}) (w_k g_k w_k^{-1})^{-1} for
// k = 1..m_i-1, or k = 1..m_i in full mode (the redundancy cross-check).
inline Presentation zvk_presentation(int strands,
                                     const std::vector<MonodromyDatum>& data,
                                     bool full_relations = false) {
  Presentation p;
  p.provenance = Presentation::Provenance::zvk;
  p.generators = detail::default_generator_names(strands);

  BraidWord total;
  total.strands = strands;
  for (const auto& d : data) {
    d.check(strands);
    total = total * d.braid;
  }
  p.component_of = detail::cycle_labels(braid_permutation(total));

  for (const auto& d : data) {
    const int top = full_relations ? d.multiplicity : d.multiplicity - 1;
    for (int k = 0; k < top; ++k) {
      const Word tilde = d.conjugated_meridian(k);
      const Word r = artin_action(d.braid, tilde) * tilde.inverse();
      if (!r.empty()) p.relators.push_back(r);
    }
  }
  return p;
}

// Local link group of one singularity plus the inclusion into the global
// group.  The local presentation is the closure-style presentation of the
// datum braid restricted to the collapsing strands; the conjugators enter
// only through the inclusion words.
struct LocalGroup {
  Presentation pres;
  std::vector<Word> inclusion;  // global word for each local generator
};

inline LocalGroup local_group_extraction(int strands,
                                         const MonodromyDatum& datum,
                                         bool full_relations = false) {
  datum.check(strands);
  const int m = datum.multiplicity;

  // Relabel collapsing strands to local generators 1..m.
  std::vector<int> local_of(static_cast<std::size_t>(strands) + 1, 0);
  for (int k = 0; k < m; ++k) {
    const int s = datum.meridians[static_cast<std::size_t>(k)];
    if (local_of[s]) throw validation_error("duplicate monodromy meridian");
    local_of[s] = k + 1;
  }

  auto relabel = [&](const Word& w) -> Word {
    std::vector<int> out;
    out.reserve(w.letters.size());
    for (int l : w.letters) {
      const int g = l > 0 ? l : -l;
      const int lg = local_of[g];
      if (lg == 0)
        throw validation_error(
            "local braid moves a non-collapsing strand; cannot extract the "
            "local link group");
      out.push_back(l > 0 ? lg : -lg);
    }
    return Word::reduce(out);
  };

  LocalGroup lg;
  lg.pres.provenance = Presentation::Provenance::closure;
  for (int k = 0; k < m; ++k)
    lg.pres.generators.push_back("h" + std::to_string(k + 1));

  // Local components: cycles of the braid permutation restricted to the
  // collapsing strands.
  std::vector<int> perm = braid_permutation(datum.braid);
  std::vector<int> local_perm(m);
  for (int k = 0; k < m; ++k) {
    const int s = datum.meridians[static_cast<std::size_t>(k)];
    const int t = local_of[perm[static_cast<std::size_t>(s) - 1]];
    if (t == 0)
      throw validation_error(
          "local braid permutation does not preserve the collapsing strands");
    local_perm[k] = t;
  }
  lg.pres.component_of = detail::cycle_labels(local_perm);

  const int top = full_relations ? m : m - 1;
  for (int k = 0; k < top; ++k) {
    const Word x =
        Word::generator(datum.meridians[static_cast<std::size_t>(k)]);
    const Word image = artin_action(datum.braid, x);
    const Word r = relabel(image) * relabel(x).inverse();
    if (!r.empty()) lg.pres.relators.push_back(r);
  }
  for (int k = 0; k < m; ++k)
    lg.inclusion.push_back(datum.conjugated_meridian(k));
  return lg;
}

// Link at infinity of a zvk-compiled curve: closure-style presentation of
// the product of all local braids, included via the strand meridians.
inline LocalGroup infinity_from_product(int strands,
                                        const std::vector<MonodromyDatum>& data) {
  BraidWord total;
  total.strands = strands;
  for (const auto& d : data) {
    d.check(strands);
    total = total * d.braid;
  }
  LocalGroup lg;
  Presentation closure = closure_presentation(total);
  lg.pres = std::move(closure);
  // Rename to the local alphabet to keep local/global namespaces apart.
  for (int i = 0; i < strands; ++i) {
    lg.pres.generators[static_cast<std::size_t>(i)] =
        "h" + std::to_string(i + 1);
    lg.inclusion.push_back(Word::generator(i + 1));
  }
  return lg;
}

}  // namespace talex
