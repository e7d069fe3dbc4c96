#include "cli.hpp"

#include "l0cert/certificates.hpp"
#include "l0cert/errors.hpp"
#include "l0cert/generators.hpp"
#include "l0cert/homotopy.hpp"
#include "l0cert/io.hpp"
#include "l0cert/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace l0cert::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr double kKktTolerance = 1e-7;

struct InputOptions {
    std::string matrix;
    std::string response;
    bool header = false;
    bool standardize = false;
    bool center = false;
    bool force = false;
    bool no_timestamp = false;
    std::string out;
};

struct LoadedInput {
    ProblemInstance instance;
    json inputs;
};

void add_input_options(CLI::App* cmd, InputOptions& opt) {
    cmd->add_option("matrix", opt.matrix, "model matrix CSV (n rows, m columns)")->required();
    cmd->add_option("response", opt.response, "response CSV (one value per line)")->required();
    cmd->add_flag("--header", opt.header, "skip the first line of each CSV");
    cmd->add_flag("--standardize", opt.standardize, "scale columns to unit norm");
    cmd->add_flag("--center", opt.center, "center columns before scaling (implies --standardize)");
    cmd->add_flag("--force", opt.force, "ignore the enumeration cap");
    cmd->add_flag("--no-timestamp", opt.no_timestamp, "omit timestamps and timings");
    cmd->add_option("--out", opt.out, "write JSON here instead of stdout");
}

LoadedInput load(const InputOptions& opt) {
    Matrix phi = io::read_matrix_csv(fs::path(opt.matrix), opt.header);
    Vector y = io::read_vector_csv(fs::path(opt.response), opt.header);
    if (phi.rows() != y.size())
        throw InvalidArgument("matrix has " + std::to_string(phi.rows()) + " rows but response has " +
                              std::to_string(y.size()) + " values");
    ProblemInstance raw(std::move(phi), std::move(y));
    json inputs = {
        {"matrix", {{"path", opt.matrix}, {"sha256", io::sha256_file(opt.matrix)}}},
        {"response", {{"path", opt.response}, {"sha256", io::sha256_file(opt.response)}}},
    };
    if (opt.standardize || opt.center)
        return {standardize(raw, opt.center).instance, std::move(inputs)};
    return {std::move(raw), std::move(inputs)};
}

json instance_summary(const ProblemInstance& instance, const InputOptions& opt) {
    return {
        {"n", instance.n()},
        {"m", instance.m()},
        {"standardized", instance.standardized()},
        {"centered", instance.centered()},
        {"full_column_rank", instance.full_column_rank()},
        {"standardization_applied", opt.standardize || opt.center},
    };
}

json report_header(const InputOptions& opt, const LoadedInput& input, const std::string& command) {
    json r = {
        {"schema_version", kSchemaVersion},
        {"tool", {{"name", "l0cert"}, {"version", kToolVersion}}},
        {"command", command},
        {"inputs", input.inputs},
        {"instance", instance_summary(input.instance, opt)},
    };
    if (!opt.no_timestamp) {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        r["generated_at"] = buf;
    }
    return r;
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const json& doc, const std::string& out_path, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write " + out_path);
    f << text;
}

struct PathOutcome {
    LassoPath path;
    std::optional<json> tie;
};

PathOutcome trace(const ProblemInstance& instance, double floor) {
    try {
        return {solve_path(instance, floor), std::nullopt};
    } catch (const DegenerateTie& e) {
        std::vector<int> idx;
        for (int i : e.indices()) idx.push_back(i + 1);
        return {e.partial_path(), json{{"columns", idx}, {"lambda1", e.lambda()}, {"message", e.what()}}};
    }
}

json path_json(const PathOutcome& p) {
    json j = io::to_json(p.path);
    if (p.tie) j["degenerate_tie"] = *p.tie;
    return j;
}

json path_summary(const PathOutcome& p) {
    json j = io::to_json(p.path);
    j.erase("segments");
    j["segment_count"] = p.path.segments.size();
    j["breakpoints"] = json::array();
    for (const auto& seg : p.path.segments) j["breakpoints"].push_back(seg.lambda_lo);
    if (p.tie) j["degenerate_tie"] = *p.tie;
    return j;
}

// Evaluates the l1 side at one lambda1: path solution, KKT, and the joint check.
json evaluate_lambda1(const ProblemInstance& instance, const LassoPath& path, double lambda0, double lambda1,
                      ConcurrencyMode mode, const EnumerationLimits& limits) {
    if (!(lambda1 > 0.0)) throw InvalidArgument("lambda1 must be positive");
    json j = {{"lambda1", lambda1}};
    CoefficientVector x;
    try {
        x = solution_at_lambda(path, lambda1);
    } catch (const OutOfRange& e) {
        j["error"] = e.what();
        return j;
    }
    const Support support = x.support();
    j["support"] = io::to_json(support);
    j["x"] = io::to_json(x.values);
    j["kkt"] = io::to_json(kkt_check_type1(instance, x, lambda1, kKktTolerance));
    j["concurrent"] = io::to_json(concurrent_check(instance, support, lambda0, lambda1, mode, limits));
    return j;
}

bool contained_in_some(const Support& s, const std::vector<Support>& candidates) {
    return std::any_of(candidates.begin(), candidates.end(), [&](const Support& t) { return s.is_subset_of(t); });
}

json agreement(const std::string& claim, const Support& support, bool certified, bool holds) {
    return {{"claim", claim}, {"support", io::to_json(support)}, {"certified", certified},
            {"oracle_agrees", !certified || holds}};
}

int cmd_path(const InputOptions& opt, double floor, std::ostream& out) {
    const auto input = load(opt);
    json r = report_header(opt, input, "path");
    const Stopwatch watch;
    const auto p = trace(input.instance, floor);
    r["path"] = path_json(p);
    if (!opt.no_timestamp) r["timings_ms"] = {{"path", watch.ms()}};
    emit(r, opt.out, out);
    return 0;
}

struct CertifyOptions {
    double lambda0 = 0.0;
    std::optional<double> lambda1;
    bool all_breakpoints = false;
    std::optional<int> m_hint;
    bool oracle = false;
    std::optional<int> most_correlated;
};

int cmd_certify(const InputOptions& opt, const CertifyOptions& c, std::ostream& out) {
    if (c.lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    const auto input = load(opt);
    const ProblemInstance& instance = input.instance;
    const auto limits = EnumerationLimits::from_environment(opt.force);
    const ConcurrencyMode mode = c.oracle ? ConcurrencyMode::Oracle : ConcurrencyMode::Certificate;
    json r = report_header(opt, input, "certify");
    r["lambda0"] = c.lambda0;
    json timings;

    Stopwatch watch;
    const auto p = trace(instance, 0.0);
    r["path"] = path_summary(p);
    timings["path"] = watch.ms();

    watch = Stopwatch();
    const int gap_size = c.m_hint ? std::max(1, max_support_size(p.path)) : 0;
    const auto tables = CertificationTables::compute(instance, gap_size, limits);
    timings["tables"] = watch.ms();
    r["constants"] = io::tables_to_json(tables.sigma, tables.gap ? &*tables.gap : nullptr, c.m_hint.value_or(0));

    watch = Stopwatch();
    const auto bundles = certify_path(instance, p.path, c.lambda0, c.m_hint, tables);
    r["certificates"] = json::array();
    for (const auto& b : bundles) r["certificates"].push_back(io::to_json(b));

    if (c.lambda1) r["at_lambda1"] = evaluate_lambda1(instance, p.path, c.lambda0, *c.lambda1, mode, limits);
    if (c.all_breakpoints) {
        r["breakpoints"] = json::array();
        for (const auto& seg : p.path.segments)
            if (seg.lambda_lo > 0.0)
                r["breakpoints"].push_back(evaluate_lambda1(instance, p.path, c.lambda0, seg.lambda_lo, mode, limits));
    }

    std::optional<Certificate> mc_type0;
    if (c.most_correlated) {
        const int k = *c.most_correlated;
        if (k < 1 || k > instance.m()) throw InvalidArgument("--most-correlated needs 1 <= K <= m");
        json mc = {{"k", k}, {"mu", mutual_coherence(instance)}};
        mc_type0 = most_correlated_type0(instance, k, c.lambda0);
        mc["type0"] = io::to_json(*mc_type0);
        if (c.lambda1) {
            mc["type1"] = io::to_json(most_correlated_type1(instance, k, *c.lambda1));
            mc["concurrent"] = io::to_json(most_correlated_concurrent(instance, k, c.lambda0, *c.lambda1));
        }
        r["most_correlated"] = std::move(mc);
    }
    timings["certify"] = watch.ms();

    if (c.oracle) {
        watch = Stopwatch();
        const auto oracle = brute_force_p0(instance, c.lambda0, std::nullopt, limits);
        json o = io::to_json(oracle);
        json checks = json::array();
        int disagreements = 0;
        auto record = [&](json a) {
            if (!a["oracle_agrees"].get<bool>()) ++disagreements;
            checks.push_back(std::move(a));
        };
        for (const auto& b : bundles) {
            record(agreement("no_smaller_support", b.support, b.no_smaller.certified(),
                             oracle.m0() >= b.support.size()));
            record(agreement("subset_of_type0", b.support, b.subset.certified(),
                             contained_in_some(b.support, oracle.ties)));
            if (b.bounded)
                record(agreement("subset_of_type0_bounded", b.support, b.bounded->certified(),
                                 contained_in_some(b.support, oracle.ties)));
        }
        if (mc_type0)
            record(agreement("most_correlated_type0", mc_type0->support, mc_type0->certified(),
                             oracle.is_optimal(mc_type0->support)));
        if (const auto range = lambda0_optimality_range(oracle, instance, oracle.best_support))
            o["best_support_lambda0_range"] = {{"lo", range->lo},
                                               {"hi", std::isfinite(range->hi) ? json(range->hi) : json(nullptr)}};
        o["comparison"] = std::move(checks);
        o["disagreements"] = disagreements;
        r["oracle"] = std::move(o);
        timings["oracle"] = watch.ms();
    }

    if (!opt.no_timestamp) r["timings_ms"] = std::move(timings);
    emit(r, opt.out, out);
    return 0;
}

int cmd_oracle(const InputOptions& opt, double lambda0, std::optional<int> k_max, std::ostream& out) {
    const auto input = load(opt);
    const auto limits = EnumerationLimits::from_environment(opt.force);
    json r = report_header(opt, input, "oracle");
    const Stopwatch watch;
    const auto oracle = brute_force_p0(input.instance, lambda0, k_max, limits);
    json o = io::to_json(oracle);
    if (const auto range = lambda0_optimality_range(oracle, input.instance, oracle.best_support))
        o["best_support_lambda0_range"] = {{"lo", range->lo},
                                           {"hi", std::isfinite(range->hi) ? json(range->hi) : json(nullptr)}};
    r["oracle"] = std::move(o);
    if (!opt.no_timestamp) r["timings_ms"] = {{"oracle", watch.ms()}};
    emit(r, opt.out, out);
    return 0;
}

void write_generated(const ProblemInstance& instance, json spec, const std::string& outdir, std::ostream& out) {
    const fs::path dir(outdir);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "matrix.csv", std::ios::binary);
        io::write_matrix_csv(f, instance.phi());
    }
    {
        std::ofstream f(dir / "y.csv", std::ios::binary);
        io::write_vector_csv(f, instance.y());
    }
    spec["n"] = instance.n();
    spec["m"] = instance.m();
    spec["files"] = {{"matrix", "matrix.csv"}, {"response", "y.csv"}};
    spec["schema_version"] = kSchemaVersion;
    std::ofstream f(dir / "spec.json", std::ios::binary);
    f << spec.dump(2) << "\n";
    out << (dir / "matrix.csv").string() << "\n" << (dir / "y.csv").string() << "\n"
        << (dir / "spec.json").string() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certificates of l0 optimality from lasso solution paths", "l0cert"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    InputOptions path_opt;
    double floor = 0.0;
    auto* path_cmd = app.add_subcommand("path", "trace the lasso solution path");
    add_input_options(path_cmd, path_opt);
    path_cmd->add_option("--lambda-floor", floor, "stop the path at this lambda1")->check(CLI::NonNegativeNumber);

    InputOptions cert_opt;
    CertifyOptions cert;
    auto* cert_cmd = app.add_subcommand("certify", "certify supports along the path");
    add_input_options(cert_cmd, cert_opt);
    cert_cmd->add_option("--lambda0", cert.lambda0, "l0 penalty")->required();
    auto* l1_opt = cert_cmd->add_option("--lambda1", cert.lambda1, "evaluate the l1 side at this lambda1");
    auto* bp_opt = cert_cmd->add_flag("--all-breakpoints", cert.all_breakpoints, "evaluate at every breakpoint");
    l1_opt->excludes(bp_opt);
    cert_cmd->add_option("--M-hint", cert.m_hint, "bound on the optimal support size");
    cert_cmd->add_flag("--oracle", cert.oracle, "compare against exhaustive search");
    cert_cmd->add_option("--most-correlated", cert.most_correlated, "test the K most correlated covariates");

    InputOptions oracle_opt;
    double oracle_lambda0 = 0.0;
    std::optional<int> k_max;
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive l0 search");
    add_input_options(oracle_cmd, oracle_opt);
    oracle_cmd->add_option("--lambda0", oracle_lambda0, "l0 penalty")->required();
    oracle_cmd->add_option("--k-max", k_max, "largest support size searched");

    auto* gen_cmd = app.add_subcommand("generate", "write a generated instance");
    gen_cmd->require_subcommand(1);
    std::string outdir = ".";
    gen_cmd->add_option("--outdir", outdir, "output directory");

    ExtremeExampleSpec extreme;
    auto* ext_cmd = gen_cmd->add_subcommand("extreme", "path selects every wrong column first");
    ext_cmd->add_option("--m", extreme.m)->required();
    ext_cmd->add_option("--A", extreme.A)->required();
    ext_cmd->add_option("--a", extreme.a)->required()->delimiter(',');
    ext_cmd->add_option("--outdir", outdir, "output directory");

    int rn = 0, rm = 0, rk = 0;
    std::vector<double> ra;
    auto* res_cmd = gen_cmd->add_subcommand("restrictive", "optimal support that fails the correlation tests");
    res_cmd->add_option("--n", rn)->required();
    res_cmd->add_option("--m", rm)->required();
    res_cmd->add_option("--k", rk)->required();
    res_cmd->add_option("--a", ra)->required()->delimiter(',');
    res_cmd->add_option("--outdir", outdir, "output directory");

    OrthonormalSpec ortho;
    std::optional<std::uint64_t> noise_seed;
    auto* orth_cmd = gen_cmd->add_subcommand("orthonormal", "orthonormal columns");
    orth_cmd->add_option("--n", ortho.n)->required();
    orth_cmd->add_option("--m", ortho.m)->required();
    orth_cmd->add_option("--coeffs", ortho.coeffs)->required()->delimiter(',');
    orth_cmd->add_option("--seed", ortho.seed);
    orth_cmd->add_option("--noise-seed", noise_seed);
    orth_cmd->add_option("--noise-sigma", ortho.noise_sigma);
    orth_cmd->add_option("--outdir", outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*path_cmd) return cmd_path(path_opt, floor, out);
        if (*cert_cmd) return cmd_certify(cert_opt, cert, out);
        if (*oracle_cmd) return cmd_oracle(oracle_opt, oracle_lambda0, k_max, out);
        if (*ext_cmd) {
            const auto instance = make_extreme(extreme);
            write_generated(instance, {{"family", "extreme"}, {"A", extreme.A}, {"a", extreme.a}}, outdir, out);
        } else if (*res_cmd) {
            const auto instance = make_restrictive(rn, rm, rk, ra);
            write_generated(instance, {{"family", "restrictive"}, {"k", rk}, {"a", ra}}, outdir, out);
        } else if (*orth_cmd) {
            ortho.noise_seed = noise_seed;
            const auto instance = make_orthonormal(ortho);
            json spec = {{"family", "orthonormal"}, {"coeffs", ortho.coeffs}, {"seed", ortho.seed}};
            if (noise_seed) spec["noise"] = {{"seed", *noise_seed}, {"sigma", ortho.noise_sigma}};
            write_generated(instance, std::move(spec), outdir, out);
        }
        return 0;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << " (set L0CERT_MAX_SUBSETS or pass --force)\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpecViolation& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotStandardized& e) {
        err << "error: " << e.what() << " (pass --standardize)\n";
        return 2;
    } catch (const ZeroColumn& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TiedCorrelations& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace l0cert::cli
