#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "isv/cli.hpp"
#include "isv/specfun.hpp"
#include "isv/trunc.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = isv::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string fixture(const std::string& name) {
  return std::string(ISV_DATA_DIR) + "/triangulations/" + name + ".tri";
}

// Every number in the document prints with at most 12 significant digits.
void check_digits(const json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) s.resize(e);
    int digits = 0;
    bool leading = true;
    for (char c : s) {
      if (c < '0' || c > '9') continue;
      if (leading && c == '0') continue;
      leading = false;
      ++digits;
    }
    CHECK(digits <= 12);
  } else if (j.is_structured()) {
    for (const auto& v : j) check_digits(v);
  }
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze M_2") {
    const auto o = run({"analyze", fixture("m2"), "--json"});
    REQUIRE(o.code == isv::cli::kExitOk);
    const json j = json::parse(o.out);
    CHECK(j["tets"] == 2);
    CHECK(j["vertices"] == 1);
    CHECK(j["edges"] == 1);
    CHECK(j["euler_characteristic_M"] == "-1");
    CHECK(j["is_Mg"] == true);
    CHECK(j["g"] == 2);
    CHECK(j["cycle_verified"] == true);
    CHECK(j["cycle_norm"] == "2");
    CHECK(j["local_degrees_one"] == true);
    CHECK(j["homology_ranks"] == json::array({0, 0, 2, 1}));
    CHECK(j["isv"]["exact"] == 2.0);

    const auto text = run({"analyze", fixture("m2")});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("M_g: yes, g = 2") != std::string::npos);
    CHECK(text.out.find("isv: 2") != std::string::npos);
  }

  TEST_CASE("analyze Gieseking") {
    const auto o = run({"analyze", fixture("gieseking"), "--json"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["orientable"] == false);
    CHECK(j["cycle_verified"].is_null());
    CHECK(j["isv"].is_null());
    CHECK(j["homology_ranks"][3] == 0);
  }

  TEST_CASE("analyze errors") {
    const auto missing = run({"analyze", "/nonexistent/file.tri"});
    CHECK(missing.code == isv::cli::kExitDomainError);
    CHECK(missing.out.empty());
    CHECK_FALSE(missing.err.empty());
    const auto usage = run({"analyze"});
    CHECK(usage.code == isv::cli::kExitUsage);
    CHECK(usage.out.empty());
  }

  TEST_CASE("regular") {
    const auto o = run({"regular", "--g", "2", "--json"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["ell"].get<double>() == doctest::Approx(isv::ell_g(2)).epsilon(1e-11));
    CHECK(std::abs(j["volume"].get<double>() - 3.226) < 5e-4);
    CHECK(j["table"].size() == 1);
    check_digits(j);

    const auto e = run({"regular", "--ell", "0.5", "--json"});
    REQUIRE(e.code == 0);
    const json je = json::parse(e.out);
    CHECK(je["g"].is_null());
    CHECK(je["table"].size() == 5);
    CHECK(je["volume"].get<double>() == doctest::Approx(isv::regular_volume(0.5)).epsilon(1e-11));

    CHECK(run({"regular"}).code == isv::cli::kExitUsage);
    CHECK(run({"regular", "--g", "2", "--ell", "0.5"}).code == isv::cli::kExitUsage);
    CHECK(run({"regular", "--ell", "-1"}).code == isv::cli::kExitUsage);
    const auto bad = run({"regular", "--g", "1"});
    CHECK(bad.code == isv::cli::kExitDomainError);
    CHECK(bad.out.empty());
  }

  TEST_CASE("bounds") {
    const auto o = run({"bounds", "--kind", "cusped", "--volume", "2.02988321282", "--json"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(std::abs(j["exact"].get<double>() - 2.0) < 1e-6);
    CHECK(j["kind"] == "CuspedHyperbolic");
    check_digits(j);

    const auto g = run({"bounds", "--kind", "mg", "--g", "3"});
    REQUIRE(g.code == 0);
    CHECK(g.out.find("exact: 3") != std::string::npos);

    const auto geo = run({"bounds", "--kind", "geodesic", "--volume", "6.452", "--ell", "0.5961338949",
                          "--ctets", "2", "--json"});
    REQUIRE(geo.code == 0);
    const json jg = json::parse(geo.out);
    CHECK(std::abs(jg["lower"].get<double>() - 2.0) < 1e-3);
    CHECK(jg["boundary_genus_two"] == true);

    CHECK(run({"bounds", "--kind", "torus"}).code == isv::cli::kExitUsage);
    const auto missing = run({"bounds", "--kind", "mg"});
    CHECK(missing.code == isv::cli::kExitDomainError);
    CHECK(missing.out.empty());
  }

  TEST_CASE("degree") {
    const auto o = run({"degree", "--g", "6", "--gp", "2", "--json"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["ideal"] == 3);
    CHECK(j["boundary"] == 5);
    check_digits(j);
    CHECK(run({"degree", "--g", "2", "--gp", "3"}).code == isv::cli::kExitDomainError);
    CHECK(run({"degree", "--g", "x", "--gp", "3"}).code == isv::cli::kExitUsage);
  }

  TEST_CASE("vl is reproducible for a fixed seed") {
    const std::vector<std::string> args{"vl",     "--ell",       "0.8",       "--restarts", "2", "--seed",
                                        "9",      "--max-iters", "100",       "--threads",  "2", "--json"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["label"] == "heuristic");
    CHECK(j["feasible"] == true);
    CHECK(j["edge_lengths"].size() == 6);
    CHECK(j["best_volume"].get<double>() <= isv::v8() + 1e-6);
    check_digits(j);
  }

  TEST_CASE("usage") {
    CHECK(run({}).code == isv::cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == isv::cli::kExitUsage);
    const auto help = run({"--help"});
    CHECK(help.code == isv::cli::kExitOk);
    CHECK(help.out.find("analyze") != std::string::npos);
  }
}
