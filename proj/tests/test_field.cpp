#include <random>

#include "doctest.h"
#include "topode/field.hpp"

using namespace topode;

namespace {
FieldElem rnd_elem(std::mt19937& rng, int h) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  return FieldElem(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)), h);
}
}  // namespace

TEST_CASE("field: ring and field axioms on random triples") {
  std::mt19937 rng(12345);
  for (int h : {2, 3, 5, 6}) {
    for (int trial = 0; trial < 350; ++trial) {
      FieldElem a = rnd_elem(rng, h), b = rnd_elem(rng, h), c = rnd_elem(rng, h);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == FieldElem(0));
      CHECK(FieldElem(1) * a == a);
      if (!a.is_zero()) {
        CHECK(a * a.inv() == FieldElem(1));
        CHECK(a.pow(3) * a.pow(-3) == FieldElem(1));
      }
    }
  }
}

TEST_CASE("field: sigma squares to -h") {
  for (int h : {2, 3, 4, 6}) {
    FieldElem s = FieldElem::sigma(h);
    CHECK(s * s == FieldElem(Rat(-h)));
  }
}

TEST_CASE("field: kappa is rational exactly for even h") {
  CHECK(kappa_of(2) == FieldElem(Rat(-1, 2)));
  CHECK(kappa_of(4).is_rational());
  CHECK(kappa_of(6).is_rational());
  CHECK(!kappa_of(3).is_rational());
  CHECK(!kappa_of(5).is_rational());
  for (int h : {2, 3, 4, 5, 6}) {
    FieldElem k = kappa_of(h);
    CHECK(k * FieldElem::sigma(h).pow(h) == FieldElem(1));
  }
}

TEST_CASE("field: mixed sigma fields rejected, rationals always compatible") {
  FieldElem a = FieldElem::sigma(2), b = FieldElem::sigma(3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK(a * FieldElem(Rat(3, 7)) == FieldElem(0, Rat(3, 7), 2));
  FieldElem z = a - a;  // sigma part cancels -> plain rational again
  CHECK(z.h == 0);
  CHECK((z + b).h == 3);
}

TEST_CASE("field: string round trip for rationals") {
  CHECK(rat_parse("-22/7") == Rat(-22, 7));
  CHECK(rat_str(Rat(-22, 7)) == "-22/7");
  CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
}
