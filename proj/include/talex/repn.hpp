#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "talex/cyclotomic.hpp"
#include "talex/diagnostics.hpp"
#include "talex/fox.hpp"
#include "talex/laurent_matrix.hpp"
#include "talex/presentation.hpp"
#include "talex/word.hpp"

namespace talex {

// Square matrix over Q(zeta_n); the value of rho on one group element.
class CycloMatrix {
 public:
  CycloMatrix(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw dimension_error("matrix dimension must be positive");
    a_.assign(static_cast<std::size_t>(dim) * dim, CycloNumber::zero(order));
  }

  static CycloMatrix identity(int dim, int order) {
    CycloMatrix m(dim, order);
    for (int i = 0; i < dim; ++i) m.at(i, i) = CycloNumber::one(order);
    return m;
  }
  static CycloMatrix scalar(const CycloNumber& c) {
    CycloMatrix m(1, c.order());
    m.at(0, 0) = c;
    return m;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }

  CycloNumber& at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }
  const CycloNumber& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  friend CycloMatrix operator*(const CycloMatrix& x, const CycloMatrix& y) {
    if (x.dim_ != y.dim_ || x.order_ != y.order_)
      throw dimension_error("cyclotomic matrix product mismatch");
    CycloMatrix r(x.dim_, x.order_);
    for (int i = 0; i < x.dim_; ++i)
      for (int k = 0; k < x.dim_; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < x.dim_; ++j)
          r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }

  friend bool operator==(const CycloMatrix& x, const CycloMatrix& y) {
    return x.dim_ == y.dim_ && x.order_ == y.order_ && x.a_ == y.a_;
  }

  bool is_identity() const { return *this == identity(dim_, order_); }

  CycloMatrix conj_transpose() const {
    CycloMatrix r(dim_, order_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(i, j) = at(j, i).conj();
    return r;
  }

  // Gauss-Jordan over the field; nullopt when singular.
  std::optional<CycloMatrix> inverse() const {
    CycloMatrix w = *this;
    CycloMatrix inv = identity(dim_, order_);
    for (int col = 0; col < dim_; ++col) {
      int pivot = -1;
      for (int i = col; i < dim_; ++i)
        if (!w.at(i, col).is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return std::nullopt;
      if (pivot != col)
        for (int j = 0; j < dim_; ++j) {
          std::swap(w.at(pivot, j), w.at(col, j));
          std::swap(inv.at(pivot, j), inv.at(col, j));
        }
      const CycloNumber scale = w.at(col, col).inv();
      for (int j = 0; j < dim_; ++j) {
        w.at(col, j) *= scale;
        inv.at(col, j) *= scale;
      }
      for (int i = 0; i < dim_; ++i) {
        if (i == col || w.at(i, col).is_zero()) continue;
        const CycloNumber f = w.at(i, col);
        for (int j = 0; j < dim_; ++j) {
          w.at(i, j) -= f * w.at(col, j);
          inv.at(i, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  // Direct sum block embedding.
  static CycloMatrix block_diag(const CycloMatrix& x, const CycloMatrix& y) {
    if (x.order_ != y.order_)
      throw domain_error("direct sum requires equal cyclotomic orders");
    CycloMatrix r(x.dim_ + y.dim_, x.order_);
    for (int i = 0; i < x.dim_; ++i)
      for (int j = 0; j < x.dim_; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.dim_; ++i)
      for (int j = 0; j < y.dim_; ++j)
        r.at(x.dim_ + i, x.dim_ + j) = y.at(i, j);
    return r;
  }

 private:
  int dim_, order_;
  std::vector<CycloNumber> a_;
};

// Integer weights on the generators; the epimorphism eps printed
// multiplicatively as t^w.
struct Epsilon {
  std::vector<long> weights;

  static Epsilon all_ones(std::size_t generators) {
    Epsilon e;
    e.weights.assign(generators, 1);
    return e;
  }

  long of(const Word& w) const { return eps_of_word(w, weights); }

  bool surjective() const {
    long g = 0;
    for (long w : weights) g = std::gcd(g, w);
    return g == 1;
  }
};

// The linear representation rho: one invertible matrix per generator,
// inverses precomputed.
class Representation {
 public:
  static Representation make(std::vector<CycloMatrix> images) {
    if (images.empty())
      throw validation_error("representation needs at least one generator");
    Representation r;
    r.dim_ = images[0].dim();
    r.order_ = images[0].order();
    for (std::size_t g = 0; g < images.size(); ++g) {
      const auto& m = images[g];
      if (m.dim() != r.dim_ || m.order() != r.order_)
        throw validation_error("representation image " + std::to_string(g + 1) +
                               " has inconsistent shape or order");
      auto inv = m.inverse();
      if (!inv)
        throw validation_error("representation image " + std::to_string(g + 1) +
                               " is singular");
      r.inverses_.push_back(std::move(*inv));
    }
    r.images_ = std::move(images);
    return r;
  }

  static Representation trivial(std::size_t generators, int order = 1) {
    std::vector<CycloMatrix> images(
        generators, CycloMatrix::identity(1, order));
    return make(std::move(images));
  }

  static Representation rank1(const std::vector<CycloNumber>& values) {
    std::vector<CycloMatrix> images;
    images.reserve(values.size());
    for (const auto& v : values) images.push_back(CycloMatrix::scalar(v));
    return make(std::move(images));
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t generator_count() const { return images_.size(); }
  const CycloMatrix& image(int gen) const {
    return images_[static_cast<std::size_t>(gen) - 1];
  }
  const CycloMatrix& image_inverse(int gen) const {
    return inverses_[static_cast<std::size_t>(gen) - 1];
  }

  CycloMatrix of(const Word& w) const {
    CycloMatrix acc = CycloMatrix::identity(dim_, order_);
    for (int l : w.letters) {
      const int g = l > 0 ? l : -l;
      if (g > static_cast<int>(images_.size()))
        throw domain_error("word letter outside the represented generators");
      acc = acc * (l > 0 ? image(g) : image_inverse(g));
    }
    return acc;
  }

 private:
  int dim_ = 1;
  int order_ = 1;
  std::vector<CycloMatrix> images_, inverses_;
};

// Phi(gamma) = t^{eps(gamma)} rho(gamma), the ring map into Laurent matrices.
inline LaurentMatrix phi_of_word(const Word& w, const Epsilon& eps,
                                 const Representation& rho) {
  const int m = rho.dim(), order = rho.order();
  const CycloMatrix r = rho.of(w);
  const long e = eps.of(w);
  LaurentMatrix out(m, m, order);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.at(i, j) = LaurentPoly::term(r.at(i, j), static_cast<int>(e));
  return out;
}

inline LaurentMatrix phi_of_ring_element(const GroupRingElement& x,
                                         const Epsilon& eps,
                                         const Representation& rho) {
  const int m = rho.dim(), order = rho.order();
  LaurentMatrix out(m, m, order);
  for (const auto& [w, c] : x.terms) {
    const LaurentMatrix pw = phi_of_word(w, eps, rho);
    const LaurentPoly scale = LaurentPoly::term(
        CycloNumber::from_rational(Rational(c), order), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.at(i, j) += scale * pw.at(i, j);
  }
  return out;
}

// Block column of Phi(x_i) - Id, the i-th entry of the boundary d1.
inline LaurentMatrix phi_minus_identity(int gen, const Epsilon& eps,
                                        const Representation& rho) {
  LaurentMatrix m = phi_of_word(Word::generator(gen), eps, rho);
  const int d = rho.dim();
  for (int i = 0; i < d; ++i)
    m.at(i, i) -= LaurentPoly::one(rho.order());
  return m;
}

struct ValidationIssue {
  std::string code;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const {
    std::string out;
    for (const auto& i : issues) out += i.code + ": " + i.what + "\n";
    return out;
  }
};

// Checks that (pres, eps, rho) is well-defined twist data: every relator has
// weight zero and identity image, eps is onto, shapes line up.  Collects
// every violation instead of stopping at the first.  Induced local twists
// need not be surjective, hence the flag.
inline ValidationReport validate(const Presentation& pres, const Epsilon& eps,
                                 const Representation& rho,
                                 bool require_surjective = true) {
  ValidationReport report;
  auto issue = [&](const std::string& code, const std::string& what) {
    report.issues.push_back({code, what});
  };

  try {
    pres.check_well_formed();
  } catch (const error& e) {
    issue("E-VALIDATE-PRESENTATION", e.what());
    return report;
  }

  if (eps.weights.size() != pres.generator_count())
    issue("E-VALIDATE-EPSILON",
          "epsilon defines " + std::to_string(eps.weights.size()) +
              " weights for " + std::to_string(pres.generator_count()) +
              " generators");
  if (rho.generator_count() != pres.generator_count())
    issue("E-VALIDATE-RHO",
          "rho defines " + std::to_string(rho.generator_count()) +
              " images for " + std::to_string(pres.generator_count()) +
              " generators");
  if (!report.ok()) return report;

  if (require_surjective && !eps.surjective())
    issue("E-VALIDATE-EPSILON-ONTO",
          "generator weights have gcd != 1; epsilon is not onto Z");

  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    const Word& rel = pres.relators[r];
    const std::string name = "relator " + std::to_string(r + 1) + " (" +
                             word_str(rel, pres.generators) + ")";
    if (eps.of(rel) != 0)
      issue("E-VALIDATE-RELATOR-EPS",
            name + " has weight " + std::to_string(eps.of(rel)));
    if (!rho.of(rel).is_identity())
      issue("E-VALIDATE-RELATOR-RHO", name + " does not map to the identity");
  }
  return report;
}

// Unitary with respect to the standard hermitian form: M* M = Id for every
// generator image.
inline bool is_unitary(const Representation& rho) {
  for (std::size_t g = 1; g <= rho.generator_count(); ++g) {
    const auto& m = rho.image(static_cast<int>(g));
    if (!(m.conj_transpose() * m).is_identity()) return false;
  }
  return true;
}

inline Representation direct_sum(const Representation& a,
                                 const Representation& b) {
  if (a.order() != b.order())
    throw domain_error("direct sum of representations with different orders");
  if (a.generator_count() != b.generator_count())
    throw domain_error("direct sum over different generator sets");
  std::vector<CycloMatrix> images;
  for (std::size_t g = 1; g <= a.generator_count(); ++g)
    images.push_back(CycloMatrix::block_diag(
        a.image(static_cast<int>(g)), b.image(static_cast<int>(g))));
  return Representation::make(std::move(images));
}

// One rank-1 character: exponent k_l per component (value zeta_N^{k_l}),
// packaged as a representation constant on each component's generators.
struct Character {
  std::vector<int> exponents;  // per component label, in label order
  Representation rep;
};

// All r-tuples of N-th roots of unity that satisfy the relators (genuine
// curve groups pass all of them, since rank-1 characters factor through
// H_1).  Enumeration is lexicographic in the exponent tuples.
inline std::vector<Character> rank1_characters(const Presentation& pres,
                                               int N,
                                               std::size_t cap = 10000) {
  if (N < 1) throw validation_error("character order must be positive");
  if (!pres.fully_labeled())
    throw validation_error(
        "rank-1 character scan requires component labels on every generator");
  const std::vector<std::string> labels = pres.component_labels();
  const std::size_t r = labels.size();

  double count = 1;
  for (std::size_t i = 0; i < r; ++i) count *= N;
  if (count > static_cast<double>(cap))
    throw engine_error("character scan size " + std::to_string(count) +
                       " exceeds cap " + std::to_string(cap));

  std::vector<int> label_of_gen(pres.generator_count());
  for (std::size_t g = 0; g < pres.generator_count(); ++g)
    label_of_gen[g] = static_cast<int>(
        std::find(labels.begin(), labels.end(), pres.component_of[g]) -
        labels.begin());

  std::vector<Character> out;
  std::vector<int> exps(r, 0);
  for (;;) {
    std::vector<CycloNumber> values;
    values.reserve(pres.generator_count());
    for (std::size_t g = 0; g < pres.generator_count(); ++g)
      values.push_back(CycloNumber::zeta_power(
          N, exps[static_cast<std::size_t>(label_of_gen[g])]));
    Representation rep = Representation::rank1(values);
    bool passes = true;
    for (const Word& rel : pres.relators)
      if (!rep.of(rel).is_identity()) {
        passes = false;
        break;
      }
    if (passes) out.push_back({exps, std::move(rep)});

    std::size_t pos = r;
    while (pos > 0) {
      if (++exps[pos - 1] < N) break;
      exps[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

}  // namespace talex
