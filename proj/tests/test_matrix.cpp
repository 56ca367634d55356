#include <catch2/catch_amalgamated.hpp>

#include "talex/laurent_matrix.hpp"
#include "testutil.hpp"

using namespace talex;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<long, int>> terms,
                 int order = 1) {
  LaurentPoly p(order);
  for (auto [c, e] : terms)
    p += LaurentPoly::term(CycloNumber::from_rational(Rational(c), order), e);
  return p;
}

LaurentMatrix rand_matrix(int rows, int cols, int order, int max_terms = 2) {
  LaurentMatrix m(rows, cols, order);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = testutil::rand_laurent(order, max_terms, 2);
  return m;
}

}  // namespace

TEST_CASE("determinant basics") {
  SECTION("diagonal 2x2") {
    LaurentMatrix m(2, 2, 1);
    m.at(0, 0) = poly({{1, 0}, {-1, 1}});  // 1 - t
    m.at(1, 1) = poly({{1, 0}, {1, 1}});   // 1 + t
    CHECK(det(m) == poly({{1, 0}, {-1, 2}}));  // 1 - t^2
  }
  SECTION("Phi(l - 1) for the diag(1,-1) twist") {
    LaurentMatrix m(2, 2, 1);
    m.at(0, 0) = poly({{1, 1}, {-1, 0}});   // t - 1
    m.at(1, 1) = poly({{-1, 1}, {-1, 0}});  // -t - 1
    CHECK(eq_up_to_units(det(m), poly({{1, 2}, {-1, 0}})));  // t^2 - 1
  }
  SECTION("1x1") {
    LaurentMatrix m(1, 1, 1);
    m.at(0, 0) = poly({{1, 5}, {-1, 0}});
    CHECK(det(m) == poly({{1, 5}, {-1, 0}}));
  }
  SECTION("0x0 determinant is 1") {
    CHECK(det(LaurentMatrix(0, 0, 1)).is_one());
  }
  SECTION("non-square rejected") {
    CHECK_THROWS_AS(det(LaurentMatrix(2, 3, 1)), error);
  }
}

TEST_CASE("determinant is multiplicative (Bareiss path included)") {
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = rand_matrix(n, n, 2);
      auto b = rand_matrix(n, n, 2);
      CHECK(det(a * b) == det(a) * det(b));
    }
  }
}

TEST_CASE("minors_gcd") {
  SECTION("1x2 row of associates") {
    LaurentMatrix m(1, 2, 1);
    m.at(0, 0) = poly({{1, 0}, {-1, 1}});  // 1 - t
    m.at(0, 1) = poly({{1, 1}, {-1, 0}});  // t - 1
    CHECK(minors_gcd(m, 1) == poly({{1, 1}, {-1, 0}}));
  }
  SECTION("identity") {
    CHECK(minors_gcd(LaurentMatrix::identity(2, 1), 2).is_one());
  }
  SECTION("zero matrix") {
    CHECK(minors_gcd(LaurentMatrix(3, 3, 1), 1).is_zero());
  }
  SECTION("guard trips") {
    CHECK_THROWS_AS(minors_gcd(rand_matrix(12, 12, 1), 6, 100), error);
  }
  SECTION("chunked parallel fold matches the brute-force gcd") {
    auto m = rand_matrix(8, 6, 1, 1);
    // Force a common factor so the early exit does not trivialize the run.
    const LaurentPoly f = poly({{1, 1}, {-1, 0}});
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 6; ++j) m.at(i, j) = m.at(i, j) * f;
    LaurentPoly brute(1);
    std::vector<int> rows{0, 1, 2}, cols{0, 1, 2};
    std::vector<std::vector<int>> row_sets, col_sets;
    do row_sets.push_back(rows);
    while (talex::detail::next_combination(rows, 8));
    do col_sets.push_back(cols);
    while (talex::detail::next_combination(cols, 6));
    for (const auto& r : row_sets)
      for (const auto& c : col_sets)
        brute = gcd_poly(brute, det(m.submatrix(r, c)));
    CHECK(minors_gcd(m, 3) == normalize_assoc(brute));
  }
  SECTION("size out of range") {
    CHECK_THROWS_AS(minors_gcd(LaurentMatrix(2, 2, 1), 3), error);
  }
}

TEST_CASE("smith normal form over K[t^{+-1}]") {
  SECTION("single row collapses to the gcd") {
    LaurentMatrix m(1, 2, 1);
    m.at(0, 0) = poly({{1, 1}, {-1, 0}});
    m.at(0, 1) = poly({{1, 1}, {-1, 0}});
    auto s = smith_normal_form(m);
    REQUIRE(s.rank == 1);
    CHECK(s.factors[0] == poly({{1, 1}, {-1, 0}}));
  }
  SECTION("already diagonal in divisibility order") {
    LaurentMatrix m(2, 2, 1);
    m.at(0, 0) = poly({{1, 1}, {-1, 0}});
    m.at(1, 1) = poly({{1, 2}, {-1, 0}});
    auto s = smith_normal_form(m);
    REQUIRE(s.rank == 2);
    CHECK(s.factors[0] == poly({{1, 1}, {-1, 0}}));
    CHECK(s.factors[1] == poly({{1, 2}, {-1, 0}}));
  }
  SECTION("zero rows are ignored") {
    LaurentMatrix m(2, 2, 1);
    m.at(0, 0) = poly({{1, 0}, {-1, 1}});
    m.at(0, 1) = poly({{1, 1}, {-1, 0}});
    auto s = smith_normal_form(m);
    REQUIRE(s.rank == 1);
    CHECK(s.factors[0] == poly({{1, 1}, {-1, 0}}));
  }
  SECTION("divisibility chain and det compatibility on random matrices") {
    for (int trial = 0; trial < 12; ++trial) {
      const int n = testutil::rand_int(2, 4);
      auto m = rand_matrix(n, n, 1);
      auto s = smith_normal_form(m);
      for (int i = 0; i + 1 < s.rank; ++i)
        CHECK(s.factors[static_cast<std::size_t>(i)].divides(
            s.factors[static_cast<std::size_t>(i) + 1]));
      auto d = det(m);
      if (s.rank == n) {
        LaurentPoly prod = LaurentPoly::one(1);
        for (const auto& f : s.factors) prod *= f;
        CHECK(eq_up_to_units(prod, d));
      } else {
        CHECK(d.is_zero());
      }
    }
  }
  SECTION("minors gcd equals the k-th determinantal divisor ratio") {
    for (int trial = 0; trial < 8; ++trial) {
      auto m = rand_matrix(3, 3, 1);
      auto s = smith_normal_form(m);
      for (int k = 1; k <= s.rank; ++k) {
        LaurentPoly dk = LaurentPoly::one(1);
        for (int i = 0; i < k; ++i)
          dk *= s.factors[static_cast<std::size_t>(i)];
        CHECK(eq_up_to_units(minors_gcd(m, k), dk));
      }
      if (s.rank < 3) CHECK(minors_gcd(m, s.rank + 1).is_zero());
    }
  }
  SECTION("row transforms invert each other; bottom rows of U span the kernel") {
    for (int trial = 0; trial < 10; ++trial) {
      const int rows = testutil::rand_int(1, 4);
      const int cols = testutil::rand_int(1, 4);
      auto m = rand_matrix(rows, cols, 1);
      auto s = smith_normal_form(m, true);
      REQUIRE(s.u);
      REQUIRE(s.u_inv);
      CHECK((*s.u) * (*s.u_inv) == LaurentMatrix::identity(rows, 1));
      // U*A*V = D has zero rows below the rank and V acts on columns only,
      // so rows of U at index >= rank left-multiply A to zero.
      auto ua = (*s.u) * m;
      for (int i = s.rank; i < rows; ++i)
        for (int j = 0; j < cols; ++j) CHECK(ua.at(i, j).is_zero());
    }
  }
}
