#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "resavg/errors.hpp"
#include "resavg/integer_div.hpp"
#include "resavg/io.hpp"
#include "resavg/linear_groups.hpp"
#include "resavg/primes.hpp"

using namespace resavg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "resavg_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string schema_message(const std::string& text) {
  try {
    io::parse_tower(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("tower files round-trip") {
  auto t = integers::tower_primes(5);
  auto path = scratch("primes5.json");
  io::write_tower(path, t);
  CHECK(io::read_tower(path) == t);

  // values beyond 64 bits survive as strings
  auto big = linear::sl_prime_tower(3, 30);
  io::write_tower(path, big);
  CHECK(io::read_tower(path) == big);
  CHECK(io::tower_to_json(big)["l"].back().is_string());
}

TEST_CASE("schema errors name the field") {
  CHECK(schema_message(R"({"name":"x","d":["2","12a"],"l":["2","12"]})").find("d[1]") !=
        std::string::npos);
  CHECK(schema_message(R"({"name":"x","d":["2","3"],"l":["2"]})").find("\"l\"") !=
        std::string::npos);
  CHECK(schema_message(R"({"name":"x","l":["2"]})").find("missing field \"d\"") != std::string::npos);
  CHECK(schema_message(R"({"name":"x","d":["0"],"l":["1"]})").find("d[0]") != std::string::npos);
  CHECK(schema_message(R"({"name":"x","d":"2","l":["2"]})").find("array") != std::string::npos);
  CHECK(schema_message("[1,2]").find("object") != std::string::npos);
  // syntax errors carry a position
  auto msg = schema_message("{\n  \"d\": [\"2\",\n}");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK_THROWS_AS(io::read_tower(scratch("does_not_exist.json")), SchemaError);
  // plain JSON integers are accepted
  CHECK(io::parse_tower(R"({"d":[2,3],"l":[2,6]})").index(2) == 3);
}

TEST_CASE("CSV projection") {
  auto csv = io::tower_csv(integers::tower_primes(3));
  CHECK(csv ==
        "j,d,l,r,s,t,term_num,term_den,partial_num,partial_den\n"
        "1,2,2,1,2,1,1,1,1,1\n"
        "2,3,6,1,3,2,1,1,2,1\n"
        "3,5,30,1,5,6,2,3,8,3\n");
}

TEST_CASE("rational JSON") {
  auto j = io::rational_json(Rational(8, 3), 4);
  CHECK(j["exact"] == "8/3");
  CHECK(j["approx"] == "2.667");
  CHECK(io::rational_json(Rational(5), 3)["exact"] == "5/1");
}

TEST_CASE("ell tables") {
  auto table = linear::sl_ell_table(2, first_primes(3), 4);
  auto doc = io::ell_table_to_json(table);
  auto back = io::ell_table_from_json(doc, 2);
  CHECK(back.rows() == 3);
  CHECK(back.ell(3, 4) == 9);
  CHECK(back.O(3) == 120);

  auto path = scratch("ell.json");
  std::ofstream(path) << R"({"primes":[2,3],"ell":[[0,1,2],[0,1]],"O":["1","2"]})";
  auto t = io::read_ell_table(path, 1);
  CHECK(t.depth(1) == 3);
  CHECK_THROWS_AS(io::ell_table_from_json(io::json::parse(R"({"primes":[2],"ell":[[0,2]],"O":[1]})"), 1),
                  SchemaError);
  CHECK_THROWS_AS(io::ell_table_from_json(io::json::parse(R"({"primes":[2],"ell":[[0,1]]})"), 1),
                  SchemaError);
  CHECK_THROWS_AS(io::ell_table_from_json(io::json::parse(R"({"primes":[2],"ell":[["x"]],"O":[1]})"), 1),
                  SchemaError);
}
