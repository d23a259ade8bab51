#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bell/errors.hpp"
#include "bell/io.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using bell::ErrorCode;
using bell::Json;
using bell::ModelMatrix;
using bell::Rational;
using bell::RatVec;
using bell::Scenario;
using testutil::code_of;

namespace {

Scenario skewed() {
  return Scenario::create({{{Rational(1, 3), Rational(-1, 3)}, {Rational(1), Rational(-1)}},
                           {{Rational(1), Rational(0), Rational(-1)}}});
}

bell::CorrelationVector zero_correlations(const Scenario& s) {
  RatVec entries(s.setting_count(), Rational(0));
  entries[0] = 1;
  return bell::validate_correlations(s, std::move(entries));
}

}  // namespace

TEST_CASE("scenario documents round-trip exactly") {
  for (const Scenario& s : {oracle::chsh(), skewed()}) {
    const Json doc = bell::scenario_to_json(s);
    CHECK(doc.at("format_version") == bell::format_version);
    CHECK(doc.at("type") == "scenario");
    CHECK(bell::scenario_from_json(doc) == s);
  }
}

TEST_CASE("scenario parsing accepts integers and rejects floats") {
  Json doc = bell::scenario_to_json(oracle::chsh());
  doc["parties"][0][0] = Json::array({1, -1});  // plain integers are fine
  CHECK(bell::scenario_from_json(doc) == oracle::chsh());
  doc["parties"][0][0] = Json::array({1.5, -1});
  CHECK(code_of([&] { bell::scenario_from_json(doc); }) == ErrorCode::ParseError);
}

TEST_CASE("scenario parsing validates headers") {
  Json doc = bell::scenario_to_json(oracle::chsh());
  SUBCASE("wrong version") {
    doc["format_version"] = 99;
    CHECK(code_of([&] { bell::scenario_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("wrong type") {
    doc["type"] = "correlations";
    CHECK(code_of([&] { bell::scenario_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("missing parties") {
    doc.erase("parties");
    CHECK(code_of([&] { bell::scenario_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("non-object") {
    CHECK(code_of([] { bell::scenario_from_json(Json::array()); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("correlations documents round-trip with provenance") {
  const Scenario s = oracle::chsh();
  const auto correlations = zero_correlations(s);

  const Json bare = bell::correlations_to_json(correlations, s);
  CHECK(!bare.contains("provenance"));
  const auto parsed_bare = bell::correlations_from_json(bare);
  CHECK(parsed_bare.correlations == correlations);
  CHECK(!parsed_bare.max_denominator.has_value());

  const Json tagged = bell::correlations_to_json(correlations, s, 1000000ul);
  const auto parsed = bell::correlations_from_json(tagged);
  CHECK(parsed.correlations == correlations);
  REQUIRE(parsed.max_denominator.has_value());
  CHECK(*parsed.max_denominator == 1000000ul);

  // Settings labels are emitted in enumeration order.
  CHECK(tagged.at("settings")[0] == "I I");
  CHECK(tagged.at("settings")[4] == "A1 B1");
}

TEST_CASE("correlations parsing rejects float entries") {
  const Scenario s = oracle::chsh();
  Json doc = bell::correlations_to_json(zero_correlations(s), s);
  doc["entries"][3] = 0.25;
  CHECK(code_of([&] { bell::correlations_from_json(doc); }) == ErrorCode::ParseError);
  doc["entries"][3] = "1/4";
  CHECK(bell::correlations_from_json(doc).correlations.entries[3] == Rational(1, 4));
}

TEST_CASE("matrix documents round-trip and self-verify") {
  const ModelMatrix m = ModelMatrix::build(skewed());
  const Json doc = bell::matrix_to_json(m);
  CHECK(doc.at("rows").size() == m.rows());
  CHECK(doc.at("columns").size() == m.cols());
  const ModelMatrix parsed = bell::matrix_from_json(doc);
  CHECK(parsed.scenario() == m.scenario());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) CHECK(parsed.at(r, c) == m.at(r, c));
}

TEST_CASE("matrix parsing detects corrupted entries") {
  const ModelMatrix m = ModelMatrix::build(oracle::dichotomic(2, 1));
  Json doc = bell::matrix_to_json(m);
  SUBCASE("flipped sign") {
    doc["entries"][1][1] = "1";  // true value is -1
    CHECK(code_of([&] { bell::matrix_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("wrong row count") {
    doc["entries"].erase(3);
    CHECK(code_of([&] { bell::matrix_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("ragged row") {
    doc["entries"][2].erase(0);
    CHECK(code_of([&] { bell::matrix_from_json(doc); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("result documents carry exactly one of distribution or inequality") {
  const Scenario s = oracle::chsh();
  const ModelMatrix m = ModelMatrix::build(s);

  SUBCASE("local verdict") {
    const auto verdict = bell::check_local_realism(m, zero_correlations(s));
    const Json doc = bell::result_to_json(verdict, m, {verdict.lp_iterations, 1.5, false});
    CHECK(doc.at("type") == "result");
    CHECK(doc.at("verdict") == "local");
    CHECK(doc.contains("distribution"));
    CHECK(!doc.contains("inequality"));
    CHECK(doc.at("diagnostics").at("rounding_sensitive") == false);
    CHECK(doc.at("diagnostics").at("lp_iterations").get<std::size_t>() == verdict.lp_iterations);
    // Distribution probabilities are rational strings keyed by strategy label
    // and parse back to a valid distribution.
    Rational total(0);
    for (const auto& [key, value] : doc.at("distribution").items()) {
      total += bell::parse_rational(value.get<std::string>());
    }
    CHECK(total == Rational(1));
  }

  SUBCASE("nonlocal verdict") {
    RatVec pr(9, Rational(0));
    pr[0] = 1;
    pr[4] = 1;
    pr[5] = 1;
    pr[7] = 1;
    pr[8] = -1;
    const auto correlations = bell::validate_correlations(s, std::move(pr));
    const auto verdict = bell::check_local_realism(m, correlations);
    const Json doc = bell::result_to_json(verdict, m, {verdict.lp_iterations, 0.3, true});
    CHECK(doc.at("verdict") == "nonlocal");
    CHECK(!doc.contains("distribution"));
    REQUIRE(doc.contains("inequality"));
    CHECK(bell::parse_rational(doc.at("inequality").at("margin").get<std::string>()) ==
          Rational(2));
    CHECK(bell::parse_rational(doc.at("inequality").at("bound").get<std::string>()) ==
          Rational(2));
    CHECK(doc.at("inequality").at("coefficients").size() == 8);
    CHECK(doc.at("diagnostics").at("rounding_sensitive") == true);
  }
}

TEST_CASE("bell set documents expose counts, flags, and labeled coefficients") {
  const auto set = bell::enumerate_complete_set(oracle::dichotomic(2, 1));
  const Json doc = bell::bell_set_to_json(set);
  CHECK(doc.at("type") == "bell_set");
  CHECK(doc.at("member_count").get<std::size_t>() == set.members.size());
  CHECK(doc.at("raw_vertex_count").get<std::size_t>() == set.raw_vertex_count);
  REQUIRE(doc.at("members").size() == set.members.size());
  for (std::size_t i = 0; i < set.members.size(); ++i) {
    const Json& entry = doc.at("members")[i];
    CHECK(entry.at("facet").get<bool>() == set.members[i].facet);
    CHECK(entry.at("from_ray").get<bool>() == set.members[i].from_ray);
    CHECK(bell::parse_rational(entry.at("bound").get<std::string>()) ==
          set.members[i].inequality.bound);
  }
}

TEST_CASE("quantum setup documents round-trip") {
  bell::QuantumSetup setup;
  setup.state = bell::werner_state(0.5);
  setup.observables = {{bell::pauli_z(), bell::pauli_x()}, {bell::pauli_z(), bell::pauli_y()}};
  setup.local_dimensions = {2, 2};
  const Json doc = bell::quantum_setup_to_json(setup);
  const auto parsed = bell::quantum_setup_from_json(doc);
  CHECK(parsed.local_dimensions == setup.local_dimensions);
  CHECK((parsed.state - setup.state).norm() < 1e-15);
  REQUIRE(parsed.observables.size() == 2);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t k = 0; k < 2; ++k)
      CHECK((parsed.observables[p][k] - setup.observables[p][k]).norm() < 1e-15);
}

TEST_CASE("quantum setup parsing accepts plain numbers as real entries") {
  Json doc;
  doc["format_version"] = 1;
  doc["type"] = "quantum_setup";
  doc["local_dimensions"] = Json::array({2});
  doc["state"] = Json::array({Json::array({0.5, 0}), Json::array({0, 0.5})});
  doc["observables"] =
      Json::array({Json::array({Json::array({Json::array({1, 0}), Json::array({0, -1})})})});
  const auto setup = bell::quantum_setup_from_json(doc);
  CHECK(setup.state(0, 0) == std::complex<double>(0.5, 0));
  CHECK(setup.observables[0][0](1, 1) == std::complex<double>(-1, 0));
}

TEST_CASE("quantum setup parsing rejects malformed matrices") {
  Json doc;
  doc["format_version"] = 1;
  doc["type"] = "quantum_setup";
  doc["local_dimensions"] = Json::array({2});
  doc["observables"] = Json::array({Json::array()});
  SUBCASE("ragged state") {
    doc["state"] = Json::array({Json::array({1, 0, 0}), Json::array({0, 1})});
    CHECK(code_of([&] { bell::quantum_setup_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("bad entry") {
    doc["state"] = Json::array({Json::array({"x", 0}), Json::array({0, 1})});
    CHECK(code_of([&] { bell::quantum_setup_from_json(doc); }) == ErrorCode::ParseError);
  }
  SUBCASE("nonpositive dimension") {
    doc["state"] = Json::array({Json::array({1, 0}), Json::array({0, 0})});
    doc["local_dimensions"] = Json::array({0});
    CHECK(code_of([&] { bell::quantum_setup_from_json(doc); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("load_json reads files and reports unreadable paths") {
  const std::string path = "io_test_scratch.json";
  {
    std::ofstream out(path);
    out << "{\"format_version\": 1, \"type\": \"scenario\", \"parties\": [[[\"1\", \"-1\"]]]}\n";
  }
  const Json doc = bell::load_json(path);
  CHECK(bell::scenario_from_json(doc).party_count() == 1);
  std::remove(path.c_str());

  CHECK(code_of([] { bell::load_json("definitely/not/here.json"); }) == ErrorCode::ParseError);

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK(code_of([&] { bell::load_json(path); }) == ErrorCode::ParseError);
  std::remove(path.c_str());
}

TEST_CASE("write_json emits two-space indented JSON with trailing newline") {
  Json doc;
  doc["a"] = 1;
  std::ostringstream out;
  bell::write_json(out, doc);
  CHECK(out.str() == "{\n  \"a\": 1\n}\n");
}
