#include <catch2/catch_amalgamated.hpp>

#include "talex/presentation.hpp"
#include "testutil.hpp"

using namespace talex;

namespace {
Word w(std::initializer_list<int> letters) {
  return Word::reduce(std::vector<int>(letters));
}
BraidWord braid(int strands, std::initializer_list<int> letters) {
  BraidWord b;
  b.strands = strands;
  b.letters = letters;
  b.check();
  return b;
}
}  // namespace

TEST_CASE("word parser") {
  std::vector<std::string> gens{"a", "b", "e1", "e2"};
  CHECK(parse_word("a b A", gens) == w({1, 2, -1}));
  CHECK(parse_word("a*b*A", gens) == w({1, 2, -1}));
  CHECK(parse_word("a^-1", gens) == w({-1}));
  CHECK(parse_word("e1 e2 e1^-2", gens) == w({3, 4, -3, -3}));
  CHECK(parse_word("(e1 e2)^2 (e2 e1)^-2", gens) ==
        w({3, 4, 3, 4, -3, -4, -3, -4}));
  CHECK(parse_word("a b = b a", gens) == w({1, 2, -1, -2}));
  CHECK(parse_word("", gens).empty());
  CHECK_THROWS_AS(parse_word("a c", gens), error);
  CHECK_THROWS_AS(parse_word("(a b", gens), error);
  CHECK_THROWS_AS(parse_word("a = b = a", gens), error);
  SECTION("error carries a column") {
    try {
      parse_word("a b  q", gens);
      FAIL("expected parse error");
    } catch (const error& e) {
      CHECK(e.code() == errc::parse);
      CHECK(e.location().find("column 6") != std::string::npos);
    }
  }
}

TEST_CASE("braid word parser") {
  auto b = parse_braid_word("s1 s1 s1", 2);
  CHECK(b.letters == std::vector<int>{1, 1, 1});
  CHECK(parse_braid_word("S2 s1", 3).letters == std::vector<int>{-2, 1});
  CHECK_THROWS_AS(parse_braid_word("s2", 2), error);
  CHECK_THROWS_AS(parse_braid_word("x1", 2), error);
}

TEST_CASE("artin action on generators") {
  const BraidWord s1 = braid(2, {1});
  CHECK(artin_action(s1, w({1})) == w({1, 2, -1}));
  CHECK(artin_action(s1, w({2})) == w({1}));
  CHECK(artin_action(braid(2, {-1}), w({1})) == w({2}));
  CHECK(artin_action(braid(2, {1, 1}), w({1})) == w({1, 2, 1, -2, -1}));
}

TEST_CASE("artin action is an automorphism action") {
  SECTION("braid relations") {
    for (int d = 3; d <= 4; ++d) {
      for (int k = 1; k + 1 <= d - 1; ++k) {
        const BraidWord lhs = braid(d, {k, k + 1, k});
        const BraidWord rhs = braid(d, {k + 1, k, k + 1});
        for (int g = 1; g <= d; ++g)
          CHECK(artin_action(lhs, w({g})) == artin_action(rhs, w({g})));
      }
    }
    // Distant generators commute.
    const BraidWord ab = braid(4, {1, 3});
    const BraidWord ba = braid(4, {3, 1});
    for (int g = 1; g <= 4; ++g)
      CHECK(artin_action(ab, w({g})) == artin_action(ba, w({g})));
  }
  SECTION("the full product x_1...x_d is fixed by every generator") {
    for (int d = 2; d <= 4; ++d) {
      std::vector<int> all;
      for (int g = 1; g <= d; ++g) all.push_back(g);
      const Word full = Word::reduce(all);
      for (int k = 1; k <= d - 1; ++k) {
        CHECK(artin_action(braid(d, {k}), full) == full);
        CHECK(artin_action(braid(d, {-k}), full) == full);
      }
    }
  }
  SECTION("inverse braids invert the action") {
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 3;
      BraidWord b;
      b.strands = d;
      for (int i = 0, n = testutil::rand_int(1, 5); i < n; ++i) {
        int k = testutil::rand_int(1, d - 1);
        b.letters.push_back(testutil::rand_int(0, 1) ? k : -k);
      }
      BraidWord binv;
      binv.strands = d;
      for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it)
        binv.letters.push_back(-*it);
      Word word = testutil::rand_word(d, 6);
      CHECK(artin_action(binv, artin_action(b, word)) == word);
    }
  }
}

TEST_CASE("closure presentations") {
  SECTION("identity braid gives a free group") {
    auto p = closure_presentation(braid(2, {}));
    CHECK(p.generators.size() == 2);
    CHECK(p.relators.empty());
    CHECK(p.component_of == std::vector<std::string>{"c1", "c2"});
  }
  SECTION("hopf link from s1^2") {
    auto p = closure_presentation(braid(2, {1, 1}));
    REQUIRE(p.relators.size() == 1);
    // theta(x1) x1^{-1} is conjugate to the commutator [x1, x2].
    CHECK(p.relators[0] ==
          w({1, 2, 1, -2, -1, -1}));
    CHECK(p.component_of == std::vector<std::string>{"c1", "c2"});
  }
  SECTION("trefoil from s1^3") {
    auto p = closure_presentation(braid(2, {1, 1, 1}));
    REQUIRE(p.relators.size() == 1);
    // Equivalent to x1 x2 x1 = x2 x1 x2 as a relation.
    CHECK(p.relators[0] == w({1, 2, 1, 2, -1, -2, -1, -1}));
    CHECK(p.component_of == std::vector<std::string>{"c1", "c1"});
  }
}

TEST_CASE("zvk presentations") {
  SECTION("node: braid s1^2 with trivial conjugators") {
    MonodromyDatum d;
    d.braid = braid(2, {1, 1});
    d.conjugators = {Word(), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    auto p = zvk_presentation(2, {d});
    REQUIRE(p.relators.size() == 1);
    CHECK(p.relators[0] == w({1, 2, 1, -2, -1, -1}));
    auto full = zvk_presentation(2, {d}, true);
    CHECK(full.relators.size() == 2);
  }
  SECTION("cusp: braid s1^3") {
    MonodromyDatum d;
    d.braid = braid(2, {1, 1, 1});
    d.conjugators = {Word(), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    auto p = zvk_presentation(2, {d});
    REQUIRE(p.relators.size() == 1);
    CHECK(p.relators[0] == w({1, 2, 1, 2, -1, -2, -1, -1}));
  }
  SECTION("empty datum list gives the free group") {
    auto p = zvk_presentation(3, {});
    CHECK(p.relators.empty());
    CHECK(p.generators.size() == 3);
  }
  SECTION("inconsistent multiplicity is rejected") {
    MonodromyDatum d;
    d.braid = braid(2, {1});
    d.conjugators = {Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    CHECK_THROWS_AS(zvk_presentation(2, {d}), error);
  }
}

TEST_CASE("local group extraction") {
  SECTION("node with trivial conjugators includes as the strand meridians") {
    MonodromyDatum d;
    d.braid = braid(2, {1, 1});
    d.conjugators = {Word(), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    auto lg = local_group_extraction(2, d);
    CHECK(lg.pres.generators.size() == 2);
    REQUIRE(lg.pres.relators.size() == 1);
    CHECK(lg.pres.relators[0] == w({1, 2, 1, -2, -1, -1}));
    CHECK(lg.inclusion[0] == w({1}));
    CHECK(lg.inclusion[1] == w({2}));
  }
  SECTION("cusp gives the trefoil group") {
    MonodromyDatum d;
    d.braid = braid(2, {1, 1, 1});
    d.conjugators = {Word(), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    auto lg = local_group_extraction(2, d);
    REQUIRE(lg.pres.relators.size() == 1);
    CHECK(lg.pres.relators[0] == w({1, 2, 1, 2, -1, -2, -1, -1}));
  }
  SECTION("conjugator enters the inclusion only") {
    MonodromyDatum d;
    d.braid = braid(2, {1, 1});
    d.conjugators = {w({1}), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    auto lg = local_group_extraction(2, d);
    CHECK(lg.inclusion[0] == w({1, 1, -1}));  // g1 g1 g1^-1 reduces to g1
    CHECK(lg.pres.relators.size() == 1);
  }
  SECTION("smooth critical value (m = 1) gives an unknot group") {
    MonodromyDatum d;
    d.braid = braid(3, {2, 2});
    d.conjugators = {Word()};
    d.meridians = {1};
    d.multiplicity = 1;
    auto lg = local_group_extraction(3, d);
    CHECK(lg.pres.generators.size() == 1);
    CHECK(lg.pres.relators.empty());
  }
  SECTION("braid moving a collapsing strand outside the set is rejected") {
    MonodromyDatum d;
    d.braid = braid(3, {1, 2});
    d.conjugators = {Word(), Word()};
    d.meridians = {1, 2};
    d.multiplicity = 2;
    CHECK_THROWS_AS(local_group_extraction(3, d), error);
  }
}

TEST_CASE("infinity from the product braid") {
  MonodromyDatum d;
  d.braid = braid(2, {1, 1});
  d.conjugators = {Word(), Word()};
  d.meridians = {1, 2};
  d.multiplicity = 2;
  auto inf = infinity_from_product(2, {d});
  REQUIRE(inf.pres.relators.size() == 1);
  CHECK(inf.pres.generators ==
        std::vector<std::string>{"h1", "h2"});
  CHECK(inf.inclusion[0] == w({1}));
  CHECK(inf.inclusion[1] == w({2}));
}

TEST_CASE("closure abelianization has one class per braid cycle") {
  for (int trial = 0; trial < 15; ++trial) {
    const int d = testutil::rand_int(2, 4);
    BraidWord b;
    b.strands = d;
    for (int i = 0, n = testutil::rand_int(0, 6); i < n; ++i) {
      int k = testutil::rand_int(1, d - 1);
      b.letters.push_back(testutil::rand_int(0, 1) ? k : -k);
    }
    auto p = closure_presentation(b);
    // Abelianized, each relator must vanish against per-component sums:
    // theta(x_j) is a conjugate of x_{perm(j)}, same component as x_j.
    auto labels = p.component_of;
    for (const auto& r : p.relators) {
      std::map<std::string, long> total;
      for (int l : r.letters) {
        const int g = l > 0 ? l : -l;
        total[labels[static_cast<std::size_t>(g) - 1]] += (l > 0 ? 1 : -1);
      }
      for (const auto& [label, sum] : total) CHECK(sum == 0);
    }
  }
}
