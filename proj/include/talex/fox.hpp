#pragma once

#include <map>
#include <vector>

#include "talex/diagnostics.hpp"
#include "talex/word.hpp"

namespace talex {

// Element of the integral group ring Z[F_m]: words with integer
// coefficients, zero coefficients never stored.
struct GroupRingElement {
  std::map<Word, long> terms;

  static GroupRingElement zero() { return {}; }
  static GroupRingElement of(const Word& w, long c = 1) {
    GroupRingElement e;
    e.add(w, c);
    return e;
  }

  void add(const Word& w, long c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
  }

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.terms == b.terms;
  }
};

// Fox derivative d(w)/d(x_j).  Single left-to-right pass over the word,
// accumulating the prefix: d(uv) = du + u dv, d(x_j)/d(x_j) = 1,
// d(x_j^{-1})/d(x_j) = -x_j^{-1}.
inline GroupRingElement fox_derivative(const Word& w, int gen) {
  if (gen < 1) throw domain_error("fox derivative needs a generator index");
  GroupRingElement result;
  std::vector<int> prefix;
  for (int l : w.letters) {
    if (l == gen) {
      result.add(Word::reduce(prefix), 1);
    } else if (l == -gen) {
      std::vector<int> p = prefix;
      p.push_back(l);
      result.add(Word::reduce(p), -1);
    }
    prefix.push_back(l);
  }
  return result;
}

// Weight of a word under a generator weighting; the homomorphism extending
// eps to the free group.
inline long eps_of_word(const Word& w, const std::vector<long>& weights) {
  long total = 0;
  for (int l : w.letters) {
    const int g = l > 0 ? l : -l;
    if (g > static_cast<int>(weights.size()))
      throw domain_error("word letter outside the weighted generator list");
    total += (l > 0 ? 1 : -1) * weights[static_cast<std::size_t>(g) - 1];
  }
  return total;
}

}  // namespace talex
