#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affine/limit_distribution.hpp"
#include "affine/models.hpp"
#include "affine/montecarlo.hpp"
#include "affine/shape.hpp"
#include "affine/term_structure.hpp"
#include "json.hpp"

namespace {

using affine::AffineParams;
using affine::ValidatedParams;
using nlohmann::json;

// round-trip exact and locale independent, for CSV cells
std::string csv_number(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

// shortest representation, for column labels
std::string short_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

struct ParsedConfig {
    std::optional<affine::NamedModel> named;
    AffineParams affine;
};

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
    if (!obj.contains(key))
        throw affine::ParameterError("missing key '" + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw affine::ParameterError("key '" + key + "' in " + where +
                                     " must be a number");
    return v.get<double>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw affine::ParameterError("unknown key '" + item.key() + "' in " +
                                         where);
    }
}

affine::NamedModel parse_named(const std::string& name, const json& params) {
    if (name == "vasicek") {
        reject_unknown_keys(params, {"lambda", "theta", "sigma"}, "params");
        return affine::Vasicek{require_number(params, "lambda", "params"),
                               require_number(params, "theta", "params"),
                               require_number(params, "sigma", "params")};
    }
    if (name == "cir") {
        reject_unknown_keys(params, {"a", "theta", "sigma"}, "params");
        return affine::CIR{require_number(params, "a", "params"),
                           require_number(params, "theta", "params"),
                           require_number(params, "sigma", "params")};
    }
    if (name == "jcir") {
        reject_unknown_keys(params, {"a", "theta", "sigma", "c", "nu"}, "params");
        return affine::JCIR{require_number(params, "a", "params"),
                            require_number(params, "theta", "params"),
                            require_number(params, "sigma", "params"),
                            require_number(params, "c", "params"),
                            require_number(params, "nu", "params")};
    }
    if (name == "gamma-ou") {
        reject_unknown_keys(params, {"lambda", "k", "theta"}, "params");
        return affine::GammaOU{require_number(params, "lambda", "params"),
                               require_number(params, "k", "params"),
                               require_number(params, "theta", "params")};
    }
    throw affine::ParameterError("unknown model name '" + name + "'");
}

affine::JumpSpec parse_jump_spec(const json& raw, const std::string& key) {
    if (!raw.contains(key) || raw.at(key).is_null()) return std::nullopt;
    const json& spec = raw.at(key);
    if (!spec.is_object())
        throw affine::ParameterError("'" + key + "' must be an object");
    reject_unknown_keys(spec, {"intensity", "jump_rate"}, key);
    return affine::CompoundPoissonExp{require_number(spec, "intensity", key),
                                      require_number(spec, "jump_rate", key)};
}

AffineParams parse_raw_affine(const json& raw) {
    reject_unknown_keys(
        raw, {"state_space", "a", "alpha", "b", "beta", "m_jumps", "mu_jumps"},
        "affine");
    AffineParams p;
    if (!raw.contains("state_space") || !raw.at("state_space").is_string())
        throw affine::ParameterError(
            "'affine.state_space' must be \"nonnegative\" or \"reals\"");
    const std::string space = raw.at("state_space").get<std::string>();
    if (space == "nonnegative")
        p.state_space = affine::StateSpace::NonnegativeReals;
    else if (space == "reals")
        p.state_space = affine::StateSpace::Reals;
    else
        throw affine::ParameterError(
            "'affine.state_space' must be \"nonnegative\" or \"reals\"");
    if (raw.contains("a")) p.a = require_number(raw, "a", "affine");
    if (raw.contains("alpha")) p.alpha = require_number(raw, "alpha", "affine");
    if (raw.contains("b")) p.b = require_number(raw, "b", "affine");
    if (raw.contains("beta")) p.beta = require_number(raw, "beta", "affine");
    p.m_jumps = parse_jump_spec(raw, "m_jumps");
    p.mu_jumps = parse_jump_spec(raw, "mu_jumps");
    return p;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw affine::ParameterError("cannot open config file '" + path + "'");
    json doc = json::parse(in);
    if (!doc.is_object())
        throw affine::ParameterError("config root must be a JSON object");
    const bool has_model = doc.contains("model");
    const bool has_affine = doc.contains("affine");
    if (has_model == has_affine)
        throw affine::ParameterError(
            "config must contain exactly one of 'model' or 'affine'");

    ParsedConfig pc;
    if (has_model) {
        reject_unknown_keys(doc, {"model", "params"}, "config");
        if (!doc.at("model").is_string())
            throw affine::ParameterError("'model' must be a string");
        if (!doc.contains("params") || !doc.at("params").is_object())
            throw affine::ParameterError("'params' must be an object");
        pc.named = parse_named(doc.at("model").get<std::string>(),
                               doc.at("params"));
        pc.affine = affine::to_affine(*pc.named);
    } else {
        reject_unknown_keys(doc, {"affine"}, "config");
        if (!doc.at("affine").is_object())
            throw affine::ParameterError("'affine' must be an object");
        pc.affine = parse_raw_affine(doc.at("affine"));
    }
    return pc;
}

unsigned thread_cap_from_env() {
    const char* raw = std::getenv("AFFINE_YIELD_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    unsigned value = 0;
    const char* end = raw;
    while (*end != '\0') ++end;
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end)
        throw affine::ParameterError(
            "AFFINE_YIELD_THREADS must be a nonnegative integer");
    return value;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw affine::ParameterError("cannot open output file '" + path + "'");
    return out;
}

int cmd_describe(const ParsedConfig& pc) {
    const ValidatedParams p = ValidatedParams::validate(pc.affine);
    json out;
    out["admissible"] = true;
    out["state_space"] =
        p.state_space() == affine::StateSpace::NonnegativeReals ? "nonnegative"
                                                                : "reals";
    const double lambda = p.quasi_mean_reversion();
    out["lambda"] = lambda;
    out["beta_zero"] = p.beta_zero();

    if (lambda > 0.0) {
        const affine::ShapeBoundaries sb = affine::shape_boundaries(p);
        json b;
        b["b_norm"] = sb.b_norm;
        b["b_asymp"] = sb.b_asymp;
        if (std::isinf(sb.b_inv))
            b["b_inv"] = "+inf";
        else
            b["b_inv"] = sb.b_inv;
        out["boundaries"] = b;
    } else {
        out["boundaries"] = nullptr;
    }

    const affine::LimitExistence ex = affine::limit_exists(p);
    json lim;
    lim["exists"] = ex.exists;
    if (ex.exists) {
        const affine::LimitMoments m = affine::limit_moments(p);
        lim["mean"] = m.mean;
        lim["variance"] = m.variance;
    } else {
        lim["reason"] = ex.reason;
    }
    out["limit"] = lim;

    if (p.linear_F() && p.linear_R() && pc.affine.beta != 0.0)
        out["flat_rate"] = -pc.affine.b / pc.affine.beta;

    if (pc.named && std::holds_alternative<affine::JCIR>(*pc.named)) {
        const auto& m = std::get<affine::JCIR>(*pc.named);
        try {
            out["self_decomposable"] =
                affine::jcir_self_decomposable(m.a, m.theta, m.sigma, m.c, m.nu);
        } catch (const affine::Error&) {
            // away from the balanced case there is no explicit verdict
        }
    }

    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_curve(const ParsedConfig& pc, const std::vector<double>& r0_list,
              double x_max, unsigned steps, const std::string& out_path) {
    if (r0_list.empty()) throw affine::ParameterError("--r0 needs a value");
    if (!(x_max > 0.0)) throw affine::ParameterError("--x-max must be positive");
    if (steps < 1) throw affine::ParameterError("--steps must be at least 1");

    const ValidatedParams p = ValidatedParams::validate(pc.affine);
    for (double r0 : r0_list)
        if (!p.contains_rate(r0))
            throw affine::DomainError("r0 outside the state space");
    const affine::TermStructure ts = affine::solve_term_structure(p, x_max);

    std::ofstream file;
    if (!out_path.empty()) file = open_output(out_path);
    std::ostream& out = out_path.empty() ? std::cout : file;

    out << "x";
    for (double r0 : r0_list)
        out << ",yield_" << short_number(r0) << ",forward_" << short_number(r0);
    out << "\n";
    for (unsigned i = 0; i <= steps; ++i) {
        const double x = x_max * static_cast<double>(i) / steps;
        out << csv_number(x);
        for (double r0 : r0_list)
            out << "," << csv_number(affine::yield(ts, r0, x)) << ","
                << csv_number(affine::forward_rate(ts, r0, x));
        out << "\n";
    }
    return 0;
}

int cmd_classify(const ParsedConfig& pc, double r0) {
    const ValidatedParams p = ValidatedParams::validate(pc.affine);
    const affine::CurveShape shape = affine::classify(p, r0);
    json out;
    switch (shape.kind) {
        case affine::ShapeKind::Normal:
            out["shape"] = "normal";
            break;
        case affine::ShapeKind::Humped:
            out["shape"] = "humped";
            out["forward_max_x"] = shape.forward_max_x;
            out["forward_max_value"] = shape.forward_max_value;
            break;
        case affine::ShapeKind::Inverse:
            out["shape"] = "inverse";
            break;
        case affine::ShapeKind::Flat:
            out["shape"] = "flat";
            break;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_cgf(const ParsedConfig& pc, double u_min, unsigned steps,
            const std::string& out_path) {
    if (!(u_min < 0.0)) throw affine::ParameterError("--u-min must be negative");
    if (steps < 1) throw affine::ParameterError("--steps must be at least 1");
    const ValidatedParams p = ValidatedParams::validate(pc.affine);

    std::ofstream file;
    if (!out_path.empty()) file = open_output(out_path);
    std::ostream& out = out_path.empty() ? std::cout : file;

    out << "u,cgf\n";
    for (unsigned i = 0; i <= steps; ++i) {
        // the right endpoint is exactly zero, not a signed zero from rounding
        const double u =
            i == steps ? 0.0 : u_min * (1.0 - static_cast<double>(i) / steps);
        out << csv_number(u) << "," << csv_number(affine::cgf(p, u)) << "\n";
    }
    return 0;
}

int cmd_simulate(const ParsedConfig& pc, double r0, double horizon,
                 std::uint64_t paths, std::uint64_t seed,
                 const std::string& out_path) {
    if (!pc.named)
        throw affine::ParameterError("simulate requires a named model config");
    affine::SimConfig cfg;
    cfg.model = *pc.named;
    cfg.r0 = r0;
    cfg.horizon = horizon;
    cfg.n_paths = paths;
    cfg.seed = seed;
    const std::vector<double> samples =
        affine::simulate_terminal(cfg, thread_cap_from_env());

    if (!out_path.empty()) {
        std::ofstream file = open_output(out_path);
        file << "r\n";
        for (double r : samples) file << csv_number(r) << "\n";
    }

    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double r : samples) mean += r;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double r : samples) {
        const double d = r - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double variance = samples.size() > 1 ? m2 / (n - 1.0) : 0.0;
    m2 /= n;
    m4 /= n;
    const double var_of_var = samples.size() > 1
                                  ? std::max(0.0, m4 - m2 * m2) / n
                                  : 0.0;

    json out;
    out["n_paths"] = samples.size();
    out["horizon"] = horizon;
    out["seed"] = seed;
    out["mean"] = mean;
    out["mean_std_error"] = std::sqrt(variance / n);
    out["variance"] = variance;
    out["variance_std_error"] = std::sqrt(var_of_var);
    std::cout << out.dump(2) << "\n";
    return 0;
}

void emit_error(const char* type, const std::exception& e) {
    json err;
    err["error"]["type"] = type;
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
}

template <typename Fn>
int run_mapped(Fn&& fn) {
    try {
        return fn();
    } catch (const affine::AdmissibilityViolation& e) {
        emit_error("AdmissibilityViolation", e);
        return 2;
    } catch (const affine::ConditionViolation& e) {
        emit_error("ConditionViolation", e);
        return 2;
    } catch (const affine::ParameterError& e) {
        emit_error("ParameterError", e);
        return 2;
    } catch (const affine::DomainError& e) {
        emit_error("DomainError", e);
        return 2;
    } catch (const affine::LambdaZero& e) {
        emit_error("LambdaZero", e);
        return 2;
    } catch (const affine::DegenerateF& e) {
        emit_error("DegenerateF", e);
        return 2;
    } catch (const affine::DeltaNonZero& e) {
        emit_error("DeltaNonZero", e);
        return 2;
    } catch (const affine::NotAvailable& e) {
        emit_error("NotAvailable", e);
        return 2;
    } catch (const affine::FinitenessError& e) {
        emit_error("FinitenessError", e);
        return 3;
    } catch (const affine::HorizonTooShort& e) {
        emit_error("HorizonTooShort", e);
        return 3;
    } catch (const affine::Error& e) {
        emit_error("Error", e);
        return 3;
    } catch (const json::exception& e) {
        emit_error("ConfigError", e);
        return 2;
    } catch (const std::exception& e) {
        emit_error("InternalError", e);
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine one-factor short-rate toolkit: bond prices, "
                 "yield-curve shapes, limit distributions, simulation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::vector<double> r0_list;
    double r0 = 0.0;
    double x_max = 25.0;
    unsigned curve_steps = 500;
    double u_min = -50.0;
    unsigned cgf_steps = 200;
    double horizon = 0.0;
    std::uint64_t paths = 0;
    std::uint64_t seed = 0;

    CLI::App* describe =
        app.add_subcommand("describe", "Report admissibility, shape "
                                       "boundaries, and the limit law");
    describe->add_option("config", config_path, "model config JSON")->required();

    CLI::App* curve = app.add_subcommand(
        "curve", "Sample yield and forward curves to CSV");
    curve->add_option("config", config_path, "model config JSON")->required();
    curve->add_option("--r0", r0_list, "initial short rates")->required();
    curve->add_option("--x-max", x_max, "largest maturity in years");
    curve->add_option("--steps", curve_steps, "grid steps (rows = steps + 1)");
    curve->add_option("--out", out_path, "CSV path (default stdout)");

    CLI::App* classify =
        app.add_subcommand("classify", "Classify the yield curve shape");
    classify->add_option("config", config_path, "model config JSON")->required();
    classify->add_option("--r0", r0, "initial short rate")->required();

    CLI::App* cgf = app.add_subcommand(
        "cgf", "Sample the limit law's cumulant generating function to CSV");
    cgf->add_option("config", config_path, "model config JSON")->required();
    cgf->add_option("--u-min", u_min, "left end of the u grid");
    cgf->add_option("--steps", cgf_steps, "grid steps (rows = steps + 1)");
    cgf->add_option("--out", out_path, "CSV path (default stdout)");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Draw exact terminal short-rate samples");
    simulate->add_option("config", config_path, "model config JSON")->required();
    simulate->add_option("--r0", r0, "initial short rate")->required();
    simulate->add_option("--horizon", horizon, "years")->required();
    simulate->add_option("--paths", paths, "number of paths")->required();
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--out", out_path, "CSV path for the samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        json err;
        err["error"]["type"] = "UsageError";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }

    return run_mapped([&]() -> int {
        const ParsedConfig pc = load_config(config_path);
        if (describe->parsed()) return cmd_describe(pc);
        if (curve->parsed())
            return cmd_curve(pc, r0_list, x_max, curve_steps, out_path);
        if (classify->parsed()) return cmd_classify(pc, r0);
        if (cgf->parsed()) return cmd_cgf(pc, u_min, cgf_steps, out_path);
        if (simulate->parsed())
            return cmd_simulate(pc, r0, horizon, paths, seed, out_path);
        return 2;
    });
}
