#include <doctest.h>

#include "bpgeo/config.hpp"
#include "bpgeo/rng.hpp"

using namespace bpgeo;
using nlohmann::json;

TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"d": 3, "command": "bp"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"n": 1, "command": "bp"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"d": 2, "n": 4})"), ConfigError);
    ExperimentConfig c = parse_config_text(R"({"command": "bp", "d": 2, "n": 4, "seed": 7})");
    CHECK(c.has_seed);
    CHECK(c.seed == 7);
    CHECK(c.d == 2);
    ExperimentConfig noseed = parse_config_text(R"({"command": "bp", "d": 1, "n": 5})");
    CHECK(!noseed.has_seed);
}

TEST_CASE("bodies from the config schema") {
    json ball = json::parse(R"({"kind": "ball", "N": 4, "radius": 1.5})");
    StarBody b = body_from_json(ball);
    CHECK(b.N == 4);
    CHECK(b.rho({1, 0, 0, 0}) == doctest::Approx(1.5));

    json lp = json::parse(R"({"kind": "block_lp", "n": 2, "d": 2, "p": 4})");
    StarBody c = body_from_json(lp);
    CHECK(c.N == 4);
    CHECK(c.symmetry.has_value());

    json rev = json::parse(
        R"({"kind": "lp_revolution", "N": 5, "p": 4.0, "mu": 0.1, "symmetry": {"d": 1, "n": 5}})");
    StarBody r = body_from_json(rev);
    CHECK(r.zonal);
    CHECK(r.rho({1, 0, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

    json ph = json::parse(R"({
      "kind": "power_harmonic", "N": 8, "power": 2.0,
      "symmetry": {"d": 2, "n": 4},
      "terms": [{"type": "constant", "value": 1.0},
                 {"type": "block_moment", "blocks": [2,2,2,2], "degree": 4, "coeff": -0.2}]})");
    StarBody h = body_from_json(ph);
    CHECK(h.N == 8);
    CHECK(h.power_hsum.has_value());
    CHECK(h.power_exponent == 2.0);

    json pert = json::parse(R"({
      "kind": "perturbed", "d": 1,
      "base": {"kind": "ball", "N": 5},
      "perturbations": [{"eps": 0.1, "phi": [{"type": "zonal", "degree": 4, "coeff": 1.0}]}]})");
    StarBody p = body_from_json(pert);
    CHECK(p.N == 5);
    Vec pole(5, 0.0);
    pole[0] = 1.0;
    CHECK(p.rho(pole) == doctest::Approx(std::pow(0.9, 0.25)).epsilon(1e-12));

    CHECK_THROWS_AS(body_from_json(json::parse(R"({"kind": "nope"})")), ConfigError);
}

TEST_CASE("block moment harmonics are normalized and G-invariant") {
    BlockStructure bs = BlockStructure::equal_blocks(4, 2);
    HarmonicSum y = block_moment_harmonic(bs, 4);
    double sup = 0.0;
    for (const Vec& x : low_discrepancy_sphere(8, 4096)) sup = std::max(sup, std::abs(y.eval(x)));
    CHECK(sup == doctest::Approx(1.0).epsilon(1e-12));
    VectorFieldSystem sys = vector_field_system(2);
    auto f = [&](const Vec& x) { return y.eval(x); };
    CHECK(g_invariance_defect(f, 8, sys, 4, 16, 3) < 1e-12);
}
