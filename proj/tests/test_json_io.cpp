#include "doctest.h"
#include "topode/json_io.hpp"

using namespace topode;

TEST_CASE("field and matrix serialization shapes") {
  FieldElem v(Rat(-3, 4));
  auto j = json_field(v);
  CHECK(j.at("rat").get<std::string>() == "-3/4");
  CHECK(j.at("sigma").get<std::string>() == "0");

  FieldElem s = FieldElem::sigma(3);
  auto js = json_field(s);
  CHECK(js.at("rat").get<std::string>() == "0");
  CHECK(js.at("sigma").get<std::string>() == "1");

  FMat m(2, 2);
  m(0, 1) = FieldElem(Rat(1, 2));
  auto jm = json_fmat(m);
  CHECK(jm[0][1].at("rat").get<std::string>() == "1/2");
  CHECK(jm[1][0].at("rat").get<std::string>() == "0");
}

TEST_CASE("series serialization carries zpow keys in order") {
  FSeries s(2, 10);
  s.set(1, FieldElem(1));
  s.set(7, FieldElem(Rat(5, 32)));
  auto j = json_fseries(s);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("zpow").get<long>() == 1);
  CHECK(j[1].at("zpow").get<long>() == 7);
  CHECK(j[1].at("coeff").at("rat").get<std::string>() == "5/32");
}

TEST_CASE("reduced system JSON round trip") {
  auto real = Realization::build(make_algebra("A", 2));
  const auto& sys = derive_reduced_system(real, KappaMode::Unit);
  auto j = json_reduced_system(sys);
  auto back = reduced_system_from_json(j);
  CHECK(back.h == sys.h);
  CHECK(back.exponents == sys.exponents);
  CHECK(back.n == sys.n);
  CHECK(back.kappa == sys.kappa);
  REQUIRE(back.row.size() == sys.row.size());
  for (size_t i = 0; i < sys.row.size(); ++i) CHECK(back.row[i] == sys.row[i]);
  REQUIRE(back.K.size() == sys.K.size());
  for (size_t i = 0; i < sys.K.size(); ++i) {
    REQUIRE(back.K[i].size() == sys.K[i].size());
    for (size_t m = 0; m < sys.K[i].size(); ++m) CHECK(back.K[i][m] == sys.K[i][m]);
  }
  // The round-tripped system produces the identical normal form.
  auto nf1 = normal_form(sys);
  auto nf2 = normal_form(back);
  CHECK(json_dump(json_normal_form(nf1)) == json_dump(json_normal_form(nf2)));
}

TEST_CASE("normal form JSON is deterministic and exact") {
  auto real = Realization::build(make_algebra("A", 2));
  const auto& nf = normal_form(real);
  auto d1 = json_dump(json_normal_form(nf));
  auto d2 = json_dump(json_normal_form(nf));
  CHECK(d1 == d2);
  auto j = json_normal_form(nf);
  CHECK(j.at("Vm1")[0].get<std::string>() == "-2/3");
  CHECK(j.at("Vm1")[1].get<std::string>() == "-1/3");
  // V[2](1,0) = -2/9 and V[4](0,1) = 1/6 per the A_2 normal form.
  CHECK(j.at("V")[2].at("matrix")[1][0].at("rat").get<std::string>() == "-2/9");
  CHECK(j.at("V")[4].at("matrix")[0][1].at("rat").get<std::string>() == "1/6");
  // No floats anywhere in the dump.
  CHECK(d1.find('.') == std::string::npos);
}
