#include <doctest.h>

#include <functional>

#include "mk3/errors.hpp"
#include "mk3/io.hpp"

using namespace mk3;

namespace {

std::string data(const std::string& name) { return std::string(MK3_DATA_DIR) + "/" + name; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Validation;
}

}  // namespace

TEST_CASE("field descriptors") {
  auto K = field_from_json(Json::parse(R"({"min_poly": [-1, -3, 0, 1], "disc": 81})"));
  CHECK(K.degree() == 3);
  CHECK(K.disc() == 81);
  auto K2 = field_from_json(Json::parse(R"({"min_poly": "x^3 - 3*x - 1"})"));
  CHECK(K2 == K);
  CHECK(kind_of([] { field_from_json(Json::parse(R"({"min_poly": [-1, -3, 0, 1], "disk": 81})")); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([] { field_from_json(Json::parse(R"({"min_poly": [-1, -3, 0, 1], "disc": 80})")); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([] { field_from_json(Json::parse(R"({"min_poly": [1, 0, 1]})")); }) == ErrorKind::NotTotallyReal);
  CHECK(kind_of([] { field_from_json(Json::parse(R"({"min_poly": [1, 2]})")); }) == ErrorKind::NotMonic);

  auto j = to_json(K);
  CHECK(field_from_json(Json{{"min_poly", j["min_poly"]}}) == K);
}

TEST_CASE("element descriptors") {
  auto K = field_from_json(Json::parse(R"({"min_poly": [-1, -3, 0, 1]})"));
  auto s = K.element({make_rat(-2, 3), make_rat(-1, 6), make_rat(1, 3)});
  CHECK(element_from_json(K, Json::parse(R"(["-2/3", "-1/6", "1/3"])")) == s);
  CHECK(element_from_json(K, Json::parse(R"("1/3*t^2 - 1/6*t - 2/3")")) == s);
  CHECK(element_from_json(K, Json::parse("-3")) == K.from_rational(-3));
  CHECK(element_from_json(K, Json::parse(R"("t^3")")) == K.from_rational(1) + K.from_rational(3) * K.theta());
  CHECK(element_from_json(K, to_json(s)) == s);
  CHECK_THROWS_AS(element_from_json(K, Json::parse(R"([1, 2, 3, 4])")), Error);
  CHECK_THROWS_AS(element_from_json(K, Json::parse(R"("1/0")")), Error);
  CHECK_THROWS_AS(element_from_json(K, Json::parse(R"({"x": 1})")), Error);
}

TEST_CASE("algebra and order descriptors from the data directory") {
  auto B = algebra_from_json(read_json_file(data("cubic_quat.json")));
  CHECK(B.a() == B.field().from_rational(-3));
  CHECK(B.b() == B.field().theta());
  auto O = order_from_json(read_json_file(data("cubic_order.json")));
  CHECK(O.verified());
  CHECK(order_from_json(read_json_file(data("hurwitz_order.json"))).verified());
  CHECK(order_from_json(read_json_file(data("lipschitz_order.json"))).verified());
  CHECK(order_from_json(read_json_file(data("m2z_order.json"))).verified());
  CHECK(kind_of([] { algebra_from_json(Json::parse(R"({"field": {"min_poly": [-1, 1]}, "a": 0, "b": 1})")); }) ==
        ErrorKind::ZeroElement);
  CHECK(kind_of([] {
          order_from_json(Json::parse(
              R"({"algebra": {"field": {"min_poly": [-1, 1]}, "a": -1, "b": -1}, "generators": [[1,0,0,0]]})"));
        }) == ErrorKind::Validation);
  CHECK(kind_of([] { read_json_file(data("missing.json")); }) == ErrorKind::Validation);
}

TEST_CASE("Gram descriptors") {
  auto g = gram_from_json(read_json_file(data("diag_2_4.json")));
  CHECK(g == IntMatrix{{Int(2), Int(0)}, {Int(0), Int(4)}});
  CHECK(gram_from_json(read_json_file(data("u2_d4_a1.json"))).rows() == 9);
  CHECK(kind_of([] { gram_from_json(Json::parse(R"({"gram": [[2, 1], [0, 2]]})")); }) == ErrorKind::Validation);
  CHECK(kind_of([] { gram_from_json(Json::parse(R"({"gram": [[2, 1]]})")); }) == ErrorKind::Validation);
  CHECK(kind_of([] { gram_from_json(Json::parse(R"({"gram": [[2]], "extra": 1})")); }) == ErrorKind::Validation);
  CHECK(to_json(g).dump() == "[[2,0],[0,4]]");
}

TEST_CASE("report serialization") {
  auto F = disc_form(IntLattice(IntMatrix{{Int(-2)}}));
  auto j = to_json(F);
  CHECK(j.dump().find("3/2") != std::string::npos);
  CHECK(rat_json(make_rat(-1, 6)) == "-1/6");
  CHECK(rat_json(Rat(5)) == "5");
  Rank3Result r;
  r.status = Rank3Result::Status::No;
  r.reason = "length obstruction";
  auto jr = to_json(r);
  CHECK(jr["status"] == "no");
  CHECK_FALSE(jr.contains("candidates"));
}
