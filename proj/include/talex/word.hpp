#pragma once

#include <string>
#include <vector>

#include "talex/diagnostics.hpp"

namespace talex {

// Freely reduced word in a free group.  Letters are nonzero ints: +g means
// generator g, -g its inverse, with 1-based generator ids.  The empty word
// is the identity.
struct Word {
  std::vector<int> letters;

  Word() = default;

  // Free reduction: cancel adjacent x x^{-1} pairs, cascading.
  static Word reduce(const std::vector<int>& raw) {
    Word w;
    w.letters.reserve(raw.size());
    for (int l : raw) {
      if (l == 0) throw domain_error("word letter 0 is not a generator");
      if (!w.letters.empty() && w.letters.back() == -l)
        w.letters.pop_back();
      else
        w.letters.push_back(l);
    }
    return w;
  }

  static Word generator(int g, int sign = 1) {
    if (g < 1) throw domain_error("generator index must be positive");
    Word w;
    w.letters.push_back(sign >= 0 ? g : -g);
    return w;
  }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(-*it);
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<int> raw = a.letters;
    raw.insert(raw.end(), b.letters.begin(), b.letters.end());
    return reduce(raw);
  }

  Word conjugated_by(const Word& g) const {
    return g * (*this) * g.inverse();
  }

  int max_generator() const {
    int m = 0;
    for (int l : letters) m = std::max(m, l > 0 ? l : -l);
    return m;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters;
  }
  friend bool operator!=(const Word& a, const Word& b) {
    return !(a == b);
  }
  friend bool operator<(const Word& a, const Word& b) {
    return a.letters < b.letters;
  }
};

// "g1 g2 g1^-1" style serialization over the given generator names.
inline std::string word_str(const Word& w,
                            const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const int l = w.letters[i];
    const int g = l > 0 ? l : -l;
    if (g > static_cast<int>(names.size()))
      throw engine_error("word letter outside generator list");
    if (i) out += " ";
    out += names[static_cast<std::size_t>(g) - 1];
    if (l < 0) out += "^-1";
  }
  return out;
}

}  // namespace talex
