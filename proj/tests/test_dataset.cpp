#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "bvalue/dataset.hpp"
#include "bvalue/scenario_file.hpp"

using namespace bvalue;

TEST_CASE("plant-growth fixture loads") {
  const Dataset ds =
      Dataset::from_csv_file(BVALUE_TEST_DATA_DIR "/plant_growth.csv");
  CHECK(ds.rows() == 30);
  const auto labels = ds.labels();
  REQUIRE(labels.size() == 3);
  CHECK(labels[0] == "ctrl");
  CHECK(labels[1] == "trt1");
  CHECK(labels[2] == "trt2");
  CHECK(ds.group("ctrl").size() == 10);
  CHECK(ds.group("trt2").front() == 6.31);
  CHECK_THROWS_AS(ds.group("trt9"), std::invalid_argument);
}

TEST_CASE("csv parsing accepts blank lines, spaces and CRLF") {
  std::istringstream in(
      "group,value\r\n"
      "a, 1.5\r\n"
      "\r\n"
      " a ,2.5\n"
      "b,3\n"
      "b,4\n");
  const Dataset ds = Dataset::from_csv(in);
  CHECK(ds.rows() == 4);
  CHECK(ds.group("a").size() == 2);
  CHECK(ds.group("a")[1] == 2.5);
}

TEST_CASE("csv parsing rejects malformed input") {
  const auto parse = [](const char* text) {
    std::istringstream in(text);
    return Dataset::from_csv(in);
  };
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("wrong,header\na,1\nb,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("group,value\na,1\nb,oops\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("group,value\na,1\nb,1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("group,value\na,1\nb,inf\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("group,value\na,1\na,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("group,value\n,1\nb,2\n"), std::invalid_argument);

  // a referenced group must have at least two rows
  std::istringstream in("group,value\na,1\na,2\nb,3\n");
  const Dataset ds = Dataset::from_csv(in);
  CHECK_THROWS_AS(ds.group("b"), std::invalid_argument);
  CHECK(ds.group("a").size() == 2);
  CHECK_THROWS_AS(Dataset::from_csv_file("/nonexistent/file.csv"),
                  std::invalid_argument);
}

TEST_CASE("scenario files parse") {
  std::istringstream in(
      "# comment line\n"
      "n1 = 12\n"
      "n2=8\n"
      "mu1 = 0.25   # trailing comment\n"
      "mu2 = 0\n"
      "sigma = 2\n"
      "alpha = 0.1\n"
      "beta = 0.9\n"
      "reps = 500\n"
      "seed = 77\n"
      "mode = summary\n");
  const SimScenario s = parse_scenario(in);
  CHECK(s.n1 == 12);
  CHECK(s.n2 == 8);
  CHECK(s.mu1 == 0.25);
  CHECK(s.sigma == 2.0);
  CHECK(s.alpha == 0.1);
  CHECK(s.beta == 0.9);
  CHECK(s.reps == 500);
  CHECK(s.seed == 77);
  CHECK(s.mode == SimScenario::Mode::Summary);
}

TEST_CASE("scenario files reject unknown or missing keys") {
  const auto parse = [](const char* text) {
    std::istringstream in(text);
    return parse_scenario(in);
  };
  CHECK_THROWS_AS(parse("n1 = 10\n"), std::invalid_argument);  // missing keys
  CHECK_THROWS_AS(
      parse("n1=10\nn2=10\nmu1=0\nmu2=0\nsigma=1\nalpha=0.05\nbeta=0.8\n"
            "reps=10\nseed=1\nbogus=3\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse("n1=10\nn1=11\nn2=10\nmu1=0\nmu2=0\nsigma=1\nalpha=0.05\n"
            "beta=0.8\nreps=10\nseed=1\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse("n1=10\nn2=10\nmu1=0\nmu2=0\nsigma=1\nalpha=0.05\nbeta=0.8\n"
            "reps=10\nseed=1\nmode=banana\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse("n1=ten\nn2=10\nmu1=0\nmu2=0\nsigma=1\nalpha=0.05\nbeta=0.8\n"
            "reps=10\nseed=1\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_file("/nonexistent.cfg"), std::invalid_argument);
}
