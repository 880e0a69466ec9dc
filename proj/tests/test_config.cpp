#include "doctest.h"
#include "vdw/config.hpp"
#include "vdw/errors.hpp"

using namespace vdw;

TEST_CASE("profiles round-trip through JSON") {
  const SusceptibilityProfile profiles[] = {
      SusceptibilityProfile::vacuum(), SusceptibilityProfile::sech2(0.7, 0.2),
      SusceptibilityProfile::three_layer(1.0, 2.0, 1.5, 0.5),
      SusceptibilityProfile(Tabulated{{0.0, 0.5, 1.0}, {0.1, 0.4, 0.2}, 3})};
  for (const auto& p : profiles) {
    const Json j = profile_to_json(p);
    const auto back = profile_from_json(j);
    CHECK(back.kind_name() == p.kind_name());
    CHECK(profile_to_json(back) == j);
    for (double x = -0.3; x < 1.3; x += 0.11) CHECK(back.chi(x) == p.chi(x));
  }
}

TEST_CASE("profile JSON errors") {
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"sech2","chi0":1,"a":1,"b":2})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"gauss"})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"sech2","chi0":1})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"sech2","chi0":"x","a":1})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"sech2","chi0":1,"a":-1})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(Json::parse("[1,2]")), ConfigError);
}

TEST_CASE("run configurations round-trip") {
  RunConfig c;
  c.subcommand = "chain-force";
  c.profile = SusceptibilityProfile::sech2(1.0, 0.15);
  c.N = 101;
  c.x_start = -0.5;
  c.x_end = 0.5;
  c.kappa_range = GridSpec{1.0, 10.0, 5};
  c.threads = 4;
  c.out = "out.csv";
  c.validate();
  const auto back = run_config_from_json(run_config_to_json(c));
  CHECK(run_config_to_json(back) == run_config_to_json(c));
  CHECK(back.N == 101);
  CHECK(*back.kappa_range == *c.kappa_range);
  CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("hash ignores output location and worker count") {
  RunConfig a;
  a.subcommand = "sech2";
  a.kappa = 2.0;
  RunConfig b = a;
  b.threads = 8;
  b.out = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.kappa = 2.5;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash_hex(a).size() == 16);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  c.subcommand = "chain-force";
  CHECK_NOTHROW(c.validate());
  auto bad = [&](auto mutate) {
    RunConfig d = c;
    mutate(d);
    CHECK_THROWS_AS(d.validate(), ConfigError);
  };
  bad([](RunConfig& d) { d.subcommand = "nope"; });
  bad([](RunConfig& d) { d.N = 0; });
  bad([](RunConfig& d) { d.tol = 0.0; });
  bad([](RunConfig& d) { d.format = "xml"; });
  bad([](RunConfig& d) { d.threads = 0; });
  bad([](RunConfig& d) { d.x_start = 1.0; d.x_end = 0.0; });
  bad([](RunConfig& d) { d.alpha = {0.1, -0.2}; });
  bad([](RunConfig& d) { d.indices = {1.0, 2.0}; });
  bad([](RunConfig& d) { d.kappa = -1.0; });
  bad([](RunConfig& d) { d.a = 0.0; });
  CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"subcommand":"sech2","bogus":1})")), ConfigError);
}

TEST_CASE("grid points") {
  const GridSpec g{1.0, 2.0, 5};
  const auto p = g.points();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == 1.0);
  CHECK(p.back() == 2.0);
  CHECK(p[2] == 1.5);
  CHECK(GridSpec{3.0, 3.0, 1}.points() == std::vector<double>{3.0});
}
