#include <doctest.h>

#include "couplingkit/distribution.hpp"
#include "couplingkit/errors.hpp"
#include "support/random_instances.hpp"

using namespace couplingkit;

namespace {

std::vector<Rat> rats(std::initializer_list<const char*> xs) {
  std::vector<Rat> out;
  for (const char* x : xs) out.push_back(Rat::parse(x));
  return out;
}

}  // namespace

TEST_CASE("pmf construction") {
  const Pmf px(Alphabet::numbered(4), rats({"1/10", "1/5", "3/10", "2/5"}));
  CHECK(px[3] == Rat(2, 5));
  CHECK_NOTHROW(Pmf(Alphabet::numbered(4), rats({"1/4", "1/4", "1/4", "1/4"})));
  CHECK_THROWS_AS(Pmf(Alphabet::numbered(2), rats({"1/2", "1/3"})), InvalidDistribution);
  CHECK_THROWS_AS(Pmf(Alphabet::numbered(2), rats({"3/2", "-1/2"})), InvalidDistribution);
  CHECK_THROWS_AS(Pmf(Alphabet::numbered(3), rats({"1/2", "1/2"})), AlphabetMismatch);
  // Structural zeros are fine.
  CHECK_NOTHROW(Pmf(Alphabet::numbered(3), rats({"0", "1", "0"})));
}

TEST_CASE("alphabet") {
  CHECK_THROWS_AS(Alphabet({}), InvalidDistribution);
  CHECK_THROWS_AS(Alphabet({"a", "b", "a"}), InvalidDistribution);
  const Alphabet ab({"a", "b"});
  CHECK(ab.product().symbols() == std::vector<std::string>{"(a,a)", "(a,b)", "(b,a)", "(b,b)"});
  CHECK(Alphabet::numbered(3).symbols() == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("uniform") {
  CHECK(pmf_uniform(Alphabet::numbered(4)).probs() == rats({"1/4", "1/4", "1/4", "1/4"}));
  CHECK(pmf_uniform(Alphabet::numbered(1)).probs() == rats({"1"}));
  CHECK(pmf_uniform(Alphabet::numbered(3)).probs() == rats({"1/3", "1/3", "1/3"}));
}

TEST_CASE("pmf2 flatten") {
  RatMatrix diag(3, 3);
  for (std::size_t a = 0; a < 3; ++a) diag(a, a) = Rat(1, 3);
  const Pmf flat = pmf2_flatten(Pmf2(Alphabet::numbered(3), diag));
  CHECK(flat.probs() == rats({"1/3", "0", "0", "0", "1/3", "0", "0", "0", "1/3"}));
  CHECK(flat.alphabet()[1] == "(1,2)");

  RatMatrix y(3, 3);
  const char* cells[3][3] = {{"1/9", "2/9", "0"}, {"1/9", "1/9", "1/9"}, {"0", "1/9", "2/9"}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) y(r, c) = Rat::parse(cells[r][c]);
  }
  CHECK(Pmf2(Alphabet::numbered(3), y).flatten().probs() ==
        rats({"1/9", "2/9", "0", "1/9", "1/9", "1/9", "0", "1/9", "2/9"}));

  RatMatrix one(1, 1);
  one(0, 0) = Rat(1);
  CHECK(Pmf2(Alphabet::numbered(1), one).flatten().probs() == rats({"1"}));

  CHECK_THROWS_AS(Pmf2(Alphabet::numbered(2), RatMatrix(2, 2)), InvalidDistribution);
  CHECK_THROWS_AS(Pmf2(Alphabet::numbered(2), one), AlphabetMismatch);
}

TEST_CASE("property: pmf_new accepts exactly the nonnegative unit-sum lists") {
  testing::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 8));
    std::vector<Rat> values;
    for (std::size_t k = 0; k < n; ++k) {
      values.emplace_back(testing::uniform_int(rng, -2, 10), testing::uniform_int(rng, 1, 12));
    }
    // Half of the cases: force the last entry to close the sum to 1.
    if (i % 2 == 0) {
      Rat rest(1);
      for (std::size_t k = 0; k + 1 < n; ++k) rest -= values[k];
      values.back() = rest;
    }
    Rat total;
    bool nonneg = true;
    for (const auto& v : values) {
      total += v;
      nonneg = nonneg && v.sign() >= 0;
    }
    if (nonneg && total == Rat(1)) {
      const Pmf p(Alphabet::numbered(n), values);
      CHECK(p.probs() == values);
    } else {
      CHECK_THROWS_AS(Pmf(Alphabet::numbered(n), values), InvalidDistribution);
    }
  }
}

TEST_CASE("property: flatten preserves every entry and the total mass") {
  testing::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 4));
    const Pmf flat = testing::random_pmf(rng, n * n);
    RatMatrix m(n, n);
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = flat[k];
    const Pmf2 p2(Alphabet::numbered(n), m);
    const Pmf back = p2.flatten();
    CHECK(back.probs() == flat.probs());
    Rat total;
    for (const auto& x : back.probs()) total += x;
    CHECK(total == Rat(1));
  }
}
