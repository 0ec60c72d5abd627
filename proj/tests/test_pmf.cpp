#include "doctest.h"

#include <cmath>

#include <sstream>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"
#include "visbench/pmf.hpp"

using namespace visbench;

TEST_CASE("pmf construction validates and renormalizes") {
  const Pmf p({0.2, 0.3, 0.5});
  CHECK(p.size() == 3);
  CHECK(p.labels() == std::vector<std::string>{"1", "2", "3"});
  CHECK(p.label(2) == "3");

  const Pmf nearly({0.5, 0.5 + 5e-10});
  CHECK(nearly[0] + nearly[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(Pmf(std::vector<double>{}), validation_error);
  CHECK_THROWS_AS(Pmf({0.5, 0.6}), validation_error);
  CHECK_THROWS_AS(Pmf({-0.1, 1.1}), validation_error);
  CHECK_THROWS_AS(Pmf({std::nan(""), 1.0}), validation_error);
  CHECK_THROWS_AS(Pmf({"a"}, {0.5, 0.5}), validation_error);
  CHECK_THROWS_AS(Pmf({"a", "a"}, {0.5, 0.5}), validation_error);
}

TEST_CASE("pmf lookup and alphabets") {
  const Pmf p({"x", "y"}, {0.25, 0.75});
  CHECK(p.find("y") == 1);
  CHECK(p.find("z") == 2);
  CHECK(p.same_alphabet(Pmf({"x", "y"}, {1.0, 0.0})));
  CHECK_FALSE(p.same_alphabet(Pmf({0.5, 0.5})));
}

TEST_CASE("one-hot pmfs") {
  const Pmf c = one_hot(4, 3);
  CHECK(c[2] == 1.0);
  CHECK(c[0] == 0.0);
  CHECK_THROWS_AS(one_hot(4, 0), validation_error);
  CHECK_THROWS_AS(one_hot(4, 5), validation_error);
  const Pmf base({"A", "B"}, {0.5, 0.5});
  CHECK(one_hot(base, 2).labels() == base.labels());
}

TEST_CASE("pmf csv round trip") {
  const Pmf p({"A", "B", "C"}, {0.1, 0.878, 0.022});
  std::ostringstream out;
  write_pmf_csv(p, out);
  CHECK(out.str() == "index,label,probability\n1,A,0.1\n2,B,0.878\n3,C,0.022\n");
  CHECK(parse_pmf_csv(out.str()) == p);
}

TEST_CASE("pmf csv errors") {
  CHECK_THROWS_AS(parse_pmf_csv("i,l,p\n1,A,1\n"), validation_error);
  CHECK_THROWS_AS(parse_pmf_csv("index,label,probability\n2,A,1\n"), validation_error);
  CHECK_THROWS_AS(parse_pmf_csv("index,label,probability\n1,A,abc\n"), validation_error);
  CHECK_THROWS_AS(parse_pmf_csv("index,label,probability\n1,A,0.4\n2,B,0.4\n"), validation_error);
  CHECK_THROWS_AS(read_pmf_csv("/nonexistent/pmf.csv"), io_error);
}

TEST_CASE("csv splitting and quoting") {
  CHECK(csv::split_line("a,\"b,c\",\"d\"\"e\"") == csv::Row{"a", "b,c", "d\"e"});
  CHECK(csv::escape("x,y") == "\"x,y\"");
  CHECK(csv::join({"a", "b,c"}) == "a,\"b,c\"");
  const auto doc = csv::parse("\xEF\xBB\xBFh1,h2\n\n1,2\r\n3,4\n");
  CHECK(doc.header == csv::Row{"h1", "h2"});
  REQUIRE(doc.rows.size() == 2);
  CHECK(doc.line_numbers[0] == 3);
  CHECK(doc.rows[0] == csv::Row{"1", "2"});
  CHECK_THROWS_AS(csv::parse(""), validation_error);
  CHECK(csv::parse_int(" 42 ", "n") == 42);
  CHECK_THROWS_AS(csv::parse_int("4x", "n"), validation_error);
  CHECK(csv::parse_double("0.25", "p") == 0.25);
}
