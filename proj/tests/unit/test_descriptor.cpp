#include <doctest.h>

#include "jordan/descriptor.hpp"

using namespace jordan;

TEST_CASE("parse_algebra accepts each family") {
  CHECK(parse_algebra("matrix:3")->dim() == 9);
  CHECK(parse_algebra("spin:4")->dim() == 5);
  CHECK(parse_algebra("fn:5")->dim() == 5);
  CHECK(parse_algebra("sum:fn:2+spin:3")->dim() == 6);
  const auto three = parse_algebra("sum:fn:1+matrix:2+spin:1");
  CHECK(three->dim() == 7);
  // Left fold: the leading summand is itself a sum.
  REQUIRE(three->family() == Family::direct_sum);
  CHECK(three->blocks()[0]->family() == Family::direct_sum);
  CHECK(three->blocks()[1]->label() == "spin:1");
}

TEST_CASE("parse_algebra reports the failing byte") {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_algebra(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    FAIL("expected a ParseError for " << text);
    return 0;
  };
  CHECK(offset_of("matrix:0") == 7);
  CHECK(offset_of("matrix:") == 7);
  CHECK(offset_of("torus:3") == 0);
  CHECK(offset_of("fn:3x") == 4);
  CHECK(offset_of("sum:fn:2") == 8);
  CHECK(offset_of("sum:fn:2+") == 9);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("spin:99999999999") == 5);
}

TEST_CASE("descriptors round-trip") {
  for (const char* text : {"matrix:1", "matrix:3", "spin:2", "fn:4", "sum:fn:2+matrix:2", "sum:spin:1+fn:1+fn:2"}) {
    CAPTURE(text);
    const auto a = parse_algebra(text);
    CHECK(to_descriptor(*a) == text);
    CHECK(a->label() == text);
  }
  // Right-nested sums flatten to the same basis order.
  const auto nested = make_direct_sum(make_function_algebra(1), make_direct_sum(make_spin_factor(1), make_matrix_jordan(2)));
  const auto reparsed = parse_algebra(to_descriptor(*nested));
  REQUIRE(reparsed->dim() == nested->dim());
  const int d = nested->dim();
  double diff = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) diff += std::abs(nested->structure()(i, j, k) - reparsed->structure()(i, j, k));
  CHECK(diff == 0.0);
  CHECK(reparsed->unit() == nested->unit());

  StructureTensor c(1);
  c(0, 0, 0) = 1.0;
  CHECK_THROWS_AS(to_descriptor(*make_algebra(c, Vector::Ones(1), "custom")), UnsupportedAlgebra);
}
