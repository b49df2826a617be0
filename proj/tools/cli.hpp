#pragma once

// effect-order command line front end. `run_cli` is the whole program; main()
// only forwards argv, so tests drive the same code path in-process.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effect_order/effect_order.hpp"

namespace effect_order::cli {

using Json = nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json load_json(const std::string& path) { return io::parse(read_file(path), path); }

inline void emit(const Json& j, const std::string& out_path, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ParseError(out_path + ": cannot open file for writing");
    f << text;
}

inline std::optional<double> parse_lambda(const std::string& text) {
    if (text.empty() || text == "auto") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("--lambda: expected \"auto\" or a number, got \"" + text + "\"");
    }
    if (used != text.size()) throw ParseError("--lambda: expected \"auto\" or a number, got \"" + text + "\"");
    return v;
}

inline verify::DimRange parse_dim_range(const std::string& text) {
    const auto sep = text.find_first_of("-:");
    try {
        if (sep == std::string::npos) {
            const auto n = static_cast<Index>(std::stol(text));
            return {n, n};
        }
        return {static_cast<Index>(std::stol(text.substr(0, sep))), static_cast<Index>(std::stol(text.substr(sep + 1)))};
    } catch (const std::exception&) {
        throw ParseError("--dim-range: expected \"lo-hi\" or \"n\", got \"" + text + "\"");
    }
}

inline Automorphism convert_to(const Automorphism& phi, const std::string& form, std::optional<double> lambda) {
    if (form == "canonical") return to_canonical(phi, lambda);
    if (form == "alt") return to_alt(phi, lambda);
    return to_congruence(phi);
}

/// Seed precedence: --seed, then the config file, then EFFECT_ORDER_SEED, then 0.
inline std::uint64_t env_seed() {
    const char* env = std::getenv("EFFECT_ORDER_SEED");
    if (env == nullptr || *env == '\0') return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw ParseError(std::string("EFFECT_ORDER_SEED: expected an unsigned integer, got \"") + env + "\"");
    }
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Order automorphisms of the effect algebra [0, I] on C^n", "effect-order"};
    app.require_subcommand(1);

    // gen
    struct {
        std::string kind;
        Index dim = 2;
        std::optional<std::uint64_t> seed;
        std::uint64_t stream = 0;
        std::optional<double> cond_max;
        std::optional<double> margin;
        std::optional<double> kind_mix;
        Index rank_deficiency = 1;
        std::optional<double> p;
        std::string lambda;
        std::string form = "canonical";
        std::string config;
        std::string out;
    } gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random effect, ordered pair, operator or automorphism");
    gen_cmd->add_option("kind", gen.kind, "What to generate")
        ->required()
        ->check(CLI::IsMember({"effect", "ordered-pair", "boundary-effect", "operator", "automorphism"}));
    auto* dim_opt = gen_cmd->add_option("--dim", gen.dim, "Dimension n of C^n");
    gen_cmd->add_option("--seed", gen.seed, "Random seed (fallback: EFFECT_ORDER_SEED)");
    gen_cmd->add_option("--stream", gen.stream, "Stream index within the seed");
    gen_cmd->add_option("--cond-max", gen.cond_max, "Condition number bound of generated operators");
    gen_cmd->add_option("--margin", gen.margin, "Interior margin of effect spectra");
    gen_cmd->add_option("--kind-mix", gen.kind_mix, "Probability of an antilinear operator (0, 0.5, 1)");
    gen_cmd->add_option("--rank-deficiency", gen.rank_deficiency, "Zero eigenvalues of a boundary effect");
    auto* p_opt = gen_cmd->add_option("--p", gen.p, "Moebius parameter p < 0 of a canonical automorphism");
    auto* lambda_opt = gen_cmd->add_option("--lambda", gen.lambda, "Build the automorphism from a random S with this lambda");
    p_opt->excludes(lambda_opt);
    gen_cmd->add_option("--form", gen.form, "Output form of an automorphism")
        ->check(CLI::IsMember({"canonical", "alt", "congruence"}));
    gen_cmd->add_option("--config", gen.config, "Sampler config JSON (seed, dim, cond_max, interior_margin, kind_mix)");
    gen_cmd->add_option("--out", gen.out, "Output path (default: stdout)");

    // apply
    struct {
        std::string automorphism;
        std::string effect;
        std::string mode = "direct";
        double tol = 1e-3;
        long long n_max = 1LL << 14;
        std::string out;
    } ap;
    auto* apply_cmd = app.add_subcommand("apply", "Apply an automorphism to an effect");
    apply_cmd->add_option("automorphism", ap.automorphism, "Automorphism JSON")->required();
    apply_cmd->add_option("effect", ap.effect, "Effect JSON")->required();
    apply_cmd->add_option("--boundary-mode", ap.mode, "direct | limit | both")
        ->check(CLI::IsMember({"direct", "limit", "both"}));
    apply_cmd->add_option("--tol", ap.tol, "Convergence tolerance of the limit path");
    apply_cmd->add_option("--n-max", ap.n_max, "Largest n of the sequence A_n");
    apply_cmd->add_option("--out", ap.out, "Output path (default: stdout)");

    // convert
    struct {
        std::string in;
        std::string to;
        std::string lambda = "auto";
        std::string out;
    } cv;
    auto* convert_cmd = app.add_subcommand("convert", "Convert an automorphism between parameterizations");
    convert_cmd->add_option("in", cv.in, "Automorphism JSON")->required();
    convert_cmd->add_option("--to", cv.to, "Target form")
        ->required()
        ->check(CLI::IsMember({"canonical", "alt", "congruence"}));
    convert_cmd->add_option("--lambda", cv.lambda, "auto or a value > max(1, ||S||^2)");
    convert_cmd->add_option("--out", cv.out, "Output path (default: stdout)");

    // compose
    struct {
        std::string first;
        std::string second;
        std::string to = "congruence";
        std::string out;
    } cp;
    auto* compose_cmd = app.add_subcommand("compose", "Compose two automorphisms: first o second");
    compose_cmd->add_option("first", cp.first, "Automorphism applied last")->required();
    compose_cmd->add_option("second", cp.second, "Automorphism applied first")->required();
    compose_cmd->add_option("--to", cp.to, "Output form")->check(CLI::IsMember({"canonical", "alt", "congruence"}));
    compose_cmd->add_option("--out", cp.out, "Output path (default: stdout)");

    // invert
    struct {
        std::string in;
        std::string to = "congruence";
        std::string out;
    } iv;
    auto* invert_cmd = app.add_subcommand("invert", "Invert an automorphism");
    invert_cmd->add_option("in", iv.in, "Automorphism JSON")->required();
    invert_cmd->add_option("--to", iv.to, "Output form")->check(CLI::IsMember({"canonical", "alt", "congruence"}));
    invert_cmd->add_option("--out", iv.out, "Output path (default: stdout)");

    // verify
    struct {
        std::string suite = "all";
        std::string dim_range;
        std::optional<int> trials;
        std::optional<std::uint64_t> seed;
        std::optional<double> tol;
        double cond_max = 10.0;
        std::string json_out;
    } vf;
    auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
    verify_cmd->add_option("--suite", vf.suite, "Suite name or \"all\"");
    verify_cmd->add_option("--dim-range", vf.dim_range, "Dimensions lo-hi (default: per suite)");
    verify_cmd->add_option("--trials", vf.trials, "Trials per cell (default: per suite)");
    verify_cmd->add_option("--seed", vf.seed, "Random seed (fallback: EFFECT_ORDER_SEED)");
    verify_cmd->add_option("--tol", vf.tol, "Override every numeric tolerance");
    verify_cmd->add_option("--cond-max", vf.cond_max, "Condition number bound of sampled operators");
    verify_cmd->add_option("--json-out", vf.json_out, "Write JSON lines here (\"-\" for stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (gen_cmd->parsed()) {
            SamplerConfig cfg;
            cfg.seed = detail::env_seed();
            if (!gen.config.empty()) cfg = io::sampler_from_json(detail::load_json(gen.config), cfg, gen.config);
            if (gen.seed) cfg.seed = *gen.seed;
            if (dim_opt->count() > 0 || gen.config.empty()) cfg.dim = gen.dim;
            if (gen.cond_max) cfg.cond_max = *gen.cond_max;
            if (gen.margin) cfg.interior_margin = *gen.margin;
            if (gen.kind_mix) cfg.kind_mix = *gen.kind_mix;
            cfg.validate();

            Json result;
            if (gen.kind == "effect") {
                result = io::to_json(random_effect(cfg, gen.stream));
            } else if (gen.kind == "ordered-pair") {
                const OrderedPair pair = random_ordered_pair(cfg, gen.stream);
                result = Json{{"A", io::to_json(pair.lower)}, {"B", io::to_json(pair.upper)}};
            } else if (gen.kind == "boundary-effect") {
                result = io::to_json(random_boundary_effect(cfg, gen.stream, gen.rank_deficiency));
            } else if (gen.kind == "operator") {
                result = io::to_json(random_invertible_operator(cfg, gen.stream));
            } else {
                Engine eng = stream_engine(cfg.seed, gen.stream);
                std::optional<Automorphism> phi;
                if (lambda_opt->count() > 0) {
                    const CongruenceParams g(sample::invertible_operator(eng, cfg));
                    phi = from_congruence(g, detail::parse_lambda(gen.lambda));
                } else {
                    const MoebiusParam p = gen.p ? MoebiusParam(*gen.p) : sample::negative_p(eng);
                    phi = CanonicalParams(p, sample::invertible_operator(eng, cfg));
                }
                result = io::to_json(detail::convert_to(*phi, gen.form, std::nullopt));
            }
            detail::emit(result, gen.out, out);
            return kOk;
        }

        if (apply_cmd->parsed()) {
            const Automorphism phi = io::automorphism_from_json(detail::load_json(ap.automorphism));
            const Effect a = io::effect_from_json(detail::load_json(ap.effect));
            if (dim(phi) != a.dim()) throw DimensionError("apply: automorphism and effect dimensions differ");
            if (ap.mode == "direct") {
                detail::emit(io::to_json(apply(phi, a)), ap.out, out);
                return kOk;
            }
            const LimitResult lim = limit_apply(to_canonical(phi), a, ap.n_max, ap.tol);
            if (ap.mode == "limit") {
                detail::emit(io::to_json(lim.value), ap.out, out);
                return kOk;
            }
            const Effect direct = apply(phi, a);
            const double gap = frobenius_distance(direct.matrix(), lim.value.matrix());
            detail::emit(io::to_json(direct), ap.out, out);
            err << "dual-path Frobenius gap (direct vs limit at n = " << lim.n_final
                << "): " << std::setprecision(17) << gap << "\n";
            return kOk;
        }

        if (convert_cmd->parsed()) {
            const Automorphism phi = io::automorphism_from_json(detail::load_json(cv.in));
            detail::emit(io::to_json(detail::convert_to(phi, cv.to, detail::parse_lambda(cv.lambda))), cv.out, out);
            return kOk;
        }

        if (compose_cmd->parsed()) {
            const Automorphism first = io::automorphism_from_json(detail::load_json(cp.first), cp.first);
            const Automorphism second = io::automorphism_from_json(detail::load_json(cp.second), cp.second);
            if (dim(first) != dim(second)) throw DimensionError("compose: automorphism dimensions differ");
            const Automorphism composed = compose_automorphisms(to_congruence(first), to_congruence(second));
            Json j = io::to_json(detail::convert_to(composed, cp.to, std::nullopt));
            j["composed_from"] = Json::array({form_name(first), form_name(second)});
            detail::emit(j, cp.out, out);
            return kOk;
        }

        if (invert_cmd->parsed()) {
            const Automorphism phi = io::automorphism_from_json(detail::load_json(iv.in), iv.in);
            const Automorphism inv = invert_automorphism(to_congruence(phi));
            detail::emit(io::to_json(detail::convert_to(inv, iv.to, std::nullopt)), iv.out, out);
            return kOk;
        }

        // verify
        verify::VerifyConfig cfg;
        cfg.seed = vf.seed ? *vf.seed : detail::env_seed();
        if (!vf.dim_range.empty()) cfg.dims = detail::parse_dim_range(vf.dim_range);
        cfg.trials = vf.trials;
        cfg.tol = vf.tol;
        cfg.cond_max = vf.cond_max;
        cfg.validate();

        std::vector<verify::VerificationReport> reports;
        int code = kOk;
        if (vf.suite == "all") {
            verify::RunSummary summary = verify::run_all(cfg);
            reports = std::move(summary.reports);
            code = summary.exit_code;
        } else {
            reports.push_back(verify::run_suite(vf.suite, cfg));
            code = reports.back().passed() ? kOk : kFailure;
        }
        const bool json_to_stdout = vf.json_out == "-";
        verify::write_table(json_to_stdout ? err : out, reports);
        if (json_to_stdout) {
            verify::write_json_lines(out, reports);
        } else if (!vf.json_out.empty()) {
            std::ofstream f(vf.json_out, std::ios::binary);
            if (!f) throw ParseError(vf.json_out + ": cannot open file for writing");
            verify::write_json_lines(f, reports);
        }
        return code;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace effect_order::cli
