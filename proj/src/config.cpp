#include "bpgeo/config.hpp"

#include <cmath>

#include "bpgeo/rng.hpp"

namespace bpgeo {

using nlohmann::json;

HarmonicSum block_moment_harmonic(const BlockStructure& bs, int degree) {
    if (degree % 2 != 0 || degree <= 0)
        throw ConfigError("block_moment_harmonic: positive even degree required");
    const int k = degree / 2;
    const int m = bs.nblocks();
    MPoly p = MPoly::constant(m, 0.0);
    for (int j = 0; j < m; ++j) p += MPoly::variable(m, j).pow(k);
    HarmonicSum h = block_expand(bs, p, degree);
    HarmonicSum top;
    top.N = bs.N();
    for (const auto& t : h.terms)
        if (t.degree == degree) top.terms.push_back(t);
    if (top.terms.empty()) throw ConfigError("block_moment_harmonic: empty top component");
    double sup = 1e-300;
    for (const Vec& x : low_discrepancy_sphere(bs.N(), 4096))
        sup = std::max(sup, std::abs(top.eval(x)));
    return top.scaled(1.0 / sup);
}

namespace {

Vec axis_from_json(const json& j, int N) {
    if (!j.contains("axis")) {
        Vec a(N, 0.0);
        a[0] = 1.0;
        return a;
    }
    Vec a = j.at("axis").get<std::vector<double>>();
    if (static_cast<int>(a.size()) != N) throw ConfigError("axis: wrong dimension");
    return normalized(a);
}

std::optional<SymmetryTag> symmetry_from_json(const json& j) {
    if (!j.contains("symmetry")) return std::nullopt;
    const json& s = j.at("symmetry");
    SymmetryTag t;
    t.d = s.at("d").get<int>();
    t.n = s.at("n").get<int>();
    t.chirality = s.value("chirality", std::string("left")) == "right" ? Chirality::Right
                                                                       : Chirality::Left;
    return t;
}

HarmonicSum hsum_from_json(const json& j, int N) {
    HarmonicSum h;
    h.N = N;
    for (const json& term : j) {
        std::string type = term.at("type").get<std::string>();
        if (type == "constant") {
            h += HarmonicSum::constant(N, term.at("value").get<double>());
        } else if (type == "zonal") {
            HTerm t;
            t.kind = HTerm::Kind::Zonal;
            t.degree = term.at("degree").get<int>();
            t.coeff = term.at("coeff").get<double>();
            t.axis = axis_from_json(term, N);
            h.terms.push_back(t);
        } else if (type == "block_moment") {
            BlockStructure bs;
            bs.dims = term.at("blocks").get<std::vector<int>>();
            if (bs.N() != N) throw ConfigError("block_moment: blocks do not sum to N");
            HarmonicSum t = block_moment_harmonic(bs, term.at("degree").get<int>());
            h += t.scaled(term.at("coeff").get<double>());
        } else {
            throw ConfigError("harmonic term: unknown type '" + type + "'");
        }
    }
    return h;
}

}  // namespace

StarBody body_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") {
        int N = j.at("N").get<int>();
        return make_ball(N, j.value("radius", 1.0));
    }
    if (kind == "block_lp") {
        StarBody K = ball_block_lp(j.at("n").get<int>(), j.at("d").get<int>(),
                                   j.at("p").get<double>(), j.value("allow_star", false));
        return K;
    }
    if (kind == "lp_revolution") {
        // rho(t-profile) = ((|t|^p + (1-t^2)^{p/2} + mu) / (1 + mu))^{-1/p}
        int N = j.at("N").get<int>();
        double p = j.at("p").get<double>();
        double mu = j.value("mu", 0.0);
        Vec axis = axis_from_json(j, N);
        double nrm = std::pow(1.0 + mu, 1.0 / p);
        auto prof = [p, mu, nrm](double t) {
            double b = std::pow(std::abs(t), p) + std::pow(std::max(0.0, 1.0 - t * t), 0.5 * p) + mu;
            return nrm * std::pow(b, -1.0 / p);
        };
        return body_zonal(N, axis, prof, symmetry_from_json(j));
    }
    if (kind == "power_harmonic") {
        int N = j.at("N").get<int>();
        double power = j.at("power").get<double>();
        HarmonicSum h = hsum_from_json(j.at("terms"), N);
        return body_from_power_hsum(N, power, std::move(h), symmetry_from_json(j));
    }
    if (kind == "perturbed") {
        StarBody base = body_from_json(j.at("base"));
        int d = j.at("d").get<int>();
        StarBody K = base;
        for (const json& pert : j.at("perturbations")) {
            double eps = pert.at("eps").get<double>();
            HarmonicSum phi = hsum_from_json(pert.at("phi"), base.N);
            K = perturbed_body(K, eps, SphericalFunction::harmonic(std::move(phi)), d);
        }
        return K;
    }
    throw ConfigError("body: unknown kind '" + kind + "'");
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig c;
    c.raw = j;
    if (!j.contains("command")) throw ConfigError("config: missing 'command'");
    c.command = j.at("command").get<std::string>();
    c.d = j.value("d", 1);
    c.n = j.value("n", 2);
    if (c.d != 1 && c.d != 2 && c.d != 4 && c.d != 8)
        throw ConfigError("config: d must be one of {1,2,4,8}");
    if (c.n < 2) throw ConfigError("config: n >= 2 required");
    if (j.contains("seed")) {
        c.has_seed = true;
        c.seed = j.at("seed").get<uint64_t>();
    }
    c.grid_points = j.value("grid", 4096);
    c.volume_samples = j.value("volume_samples", static_cast<uint64_t>(1000000));
    c.jobs = j.value("jobs", 0);
    c.out_dir = j.value("out", std::string("."));
    return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace bpgeo
