#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aggregatio/io/csv.hpp"
#include "aggregatio/io/gridspec.hpp"
#include "aggregatio/io/manifest.hpp"
#include "aggregatio/oracles.hpp"
#include "aggregatio/verification.hpp"
#include "aggregatio/version.hpp"

namespace {

using namespace aggregatio;
namespace cjt = aggregatio::condorcet;
namespace slm = aggregatio::social_learning;
namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;

unsigned thread_cap() {
    const char* env = std::getenv("AGGREGATIO_THREADS");
    if (!env) return 0;  // auto
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1)
        throw InvalidParameter("AGGREGATIO_THREADS must be a positive integer");
    return static_cast<unsigned>(value);
}

/// One run's bookkeeping: output files go to outdir, every file is
/// digested into manifest.json, and the digests are re-verified before
/// the command reports success.
class Run {
public:
    Run(std::string command, fs::path outdir, json params)
        : start_(std::chrono::steady_clock::now()), outdir_(std::move(outdir)) {
        manifest_.command = std::move(command);
        manifest_.params = std::move(params);
        manifest_.version = kVersion;
        fs::create_directories(outdir_);
    }

    void emit(const std::string& name, const std::string& content) {
        io::write_file_atomic(outdir_ / name, content);
        manifest_.record_output(outdir_, name);
    }

    int finish(const json& stdout_results) {
        manifest_.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        io::write_manifest(manifest_, outdir_ / "manifest.json");
        const auto mismatches = io::verify_manifest(outdir_ / "manifest.json");
        if (!mismatches.empty()) {
            for (const auto& m : mismatches)
                std::cerr << "manifest self-check failed: " << m << "\n";
            return kExitVerification;
        }
        std::cout << stdout_results.dump(2) << "\n";
        return kExitOk;
    }

private:
    std::chrono::steady_clock::time_point start_;
    fs::path outdir_;
    io::ResultManifest manifest_;
};

json json_or_null(const std::optional<long>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string csv_or_inf(const std::optional<long>& v) {
    return v ? std::to_string(*v) : "inf";
}

// ---------------------------------------------------------------------

struct CommonOpts {
    std::string outdir = ".";
    std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--outdir", opts.outdir, "Directory for output files and manifest");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

json wrap_output(const json& params, const json& results) {
    return json{{"params", params},
                {"results", results},
                {"manifest", {{"version", kVersion}}}};
}

// cjt-equilibrium ------------------------------------------------------

int run_cjt_equilibrium(double qa, double qb, double w, long n,
                        const CommonOpts& opts) {
    const cjt::JuryParams params(qa, qb, MotivationWeight(w), n);
    const json params_json = {{"qa", qa}, {"qb", qb}, {"w", w}, {"n", n}};
    Run run("cjt-equilibrium", opts.outdir, params_json);

    const auto onset = cjt::n_star(params);
    const auto strat = cjt::equilibrium(params);
    const auto piv = cjt::pivotal_probs(params, strat);
    const auto th = cjt::response_thresholds(params);

    json results = {
        {"psi", cjt::psi(params)},
        {"n_star", json_or_null(onset)},
        {"sigma_a", strat.sigma_a},
        {"sigma_b", strat.sigma_b},
        {"phi_a", piv.phi_a},
        {"phi_b", piv.phi_b},
        {"pivotal_ratio", piv.phi_b > 0.0 ? json(piv.ratio()) : json(nullptr)},
        {"t_lower", th.lower},
        {"t_upper", std::isinf(th.upper) ? json(nullptr) : json(th.upper)},
        {"effective_vote_prob_a", cjt::effective_vote_prob(params, strat, State::A)},
        {"effective_vote_prob_b", cjt::effective_vote_prob(params, strat, State::B)},
        {"welfare_a", cjt::welfare_exact(params, State::A)},
        {"welfare_b", cjt::welfare_exact(params, State::B)},
    };

    if (opts.format == "json") {
        run.emit("cjt-equilibrium.json", wrap_output(params_json, results).dump(2) + "\n");
    } else {
        io::CsvWriter writer({"qa", "qb", "w", "n", "psi", "n_star", "sigma_a",
                              "sigma_b", "phi_a", "phi_b", "welfare_a", "welfare_b"});
        writer.begin_row()
            .add(qa)
            .add(qb)
            .add(w)
            .add(n)
            .add(cjt::psi(params))
            .add(csv_or_inf(onset))
            .add(strat.sigma_a)
            .add(strat.sigma_b)
            .add(piv.phi_a)
            .add(piv.phi_b)
            .add(results["welfare_a"].get<double>())
            .add(results["welfare_b"].get<double>());
        run.emit("cjt-equilibrium.csv", writer.str());
    }
    return run.finish(results);
}

// cjt-welfare ----------------------------------------------------------

int run_cjt_welfare(double qa, double qb, const std::string& w_grid,
                    const std::string& n_grid, const CommonOpts& opts) {
    const auto ws = io::parse_grid(w_grid);
    const auto ns = io::parse_int_grid(n_grid);
    const json params_json = {{"qa", qa}, {"qb", qb}, {"w_grid", w_grid},
                              {"n_grid", n_grid}};
    Run run("cjt-welfare", opts.outdir, params_json);

    io::CsvWriter writer({"qa", "qb", "w", "n", "n_star", "sigma_a", "sigma_b",
                          "welfare_a", "welfare_b"});
    json rows = json::array();
    for (long n : ns)
        for (double w : ws) {
            const cjt::JuryParams params(qa, qb, MotivationWeight(w), n);
            const auto strat = cjt::equilibrium(params);
            const auto onset = cjt::n_star(params);
            const double wa = cjt::welfare_exact(params, State::A);
            const double wb = cjt::welfare_exact(params, State::B);
            writer.begin_row()
                .add(qa)
                .add(qb)
                .add(w)
                .add(n)
                .add(csv_or_inf(onset))
                .add(strat.sigma_a)
                .add(strat.sigma_b)
                .add(wa)
                .add(wb);
            rows.push_back({{"w", w},
                            {"n", n},
                            {"n_star", json_or_null(onset)},
                            {"sigma_a", strat.sigma_a},
                            {"welfare_a", wa},
                            {"welfare_b", wb}});
        }

    const json results = {{"rows", rows.size()}};
    if (opts.format == "json")
        run.emit("cjt-welfare.json",
                 wrap_output(params_json, {{"rows", rows}}).dump(2) + "\n");
    else
        run.emit("cjt-welfare.csv", writer.str());
    return run.finish(results);
}

// cjt-rates ------------------------------------------------------------

int run_cjt_rates(double qa, double qb, double w, const std::string& state_name,
                  const std::string& n_grid, const CommonOpts& opts) {
    const auto ns = io::parse_int_grid(n_grid);
    const State state = state_name == "A" ? State::A : State::B;
    const json params_json = {{"qa", qa}, {"qb", qb}, {"w", w},
                              {"state", state_name}, {"n_grid", n_grid}};
    Run run("cjt-rates", opts.outdir, params_json);

    const cjt::JuryParams base(qa, qb, MotivationWeight(w), 1);
    const auto diag = cjt::rate_diagnostic(base, state, ns);
    const double s_inf = cjt::limit_effective_vote_prob(base, state);
    const double geo = 4.0 * s_inf * (1.0 - s_inf);

    io::CsvWriter writer({"n", "welfare", "miss_prob", "rate_ratio", "geo_base",
                          "bracket_lower", "bracket_upper"});
    json rows = json::array();
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const long n = ns[i];
        const cjt::JuryParams params = base.with_n(n);
        const double welfare = cjt::welfare_exact(params, state);
        const double miss = std::exp(cjt::log_miss_probability(params, state));
        const double ratio = diag.entries[i].second;
        // Bracket the miss probability itself: the lower tail at the
        // pivotal quantile of the 2n+1 voter draw.
        const auto strat = cjt::equilibrium(params);
        const double s = cjt::effective_vote_prob(params, strat, state);
        const long trials = 2 * n + 1;
        const double alpha =
            static_cast<double>(n) / static_cast<double>(trials) + 1e-12;
        const auto bracket = cjt::binomial_tail_bracket(trials, s, alpha);
        writer.begin_row()
            .add(n)
            .add(welfare)
            .add(miss)
            .add(ratio)
            .add(geo)
            .add(bracket.lower)
            .add(bracket.upper);
        rows.push_back({{"n", n}, {"welfare", welfare}, {"miss_prob", miss},
                        {"rate_ratio", ratio}});
    }

    if (opts.format == "json")
        run.emit("cjt-rates.json",
                 wrap_output(params_json, {{"geo_base", geo}, {"rows", rows}}).dump(2) +
                     "\n");
    else
        run.emit("cjt-rates.csv", writer.str());
    return run.finish({{"geo_base", geo}, {"rows", rows.size()}});
}

// slm-threshold --------------------------------------------------------

int run_slm_threshold(double p, double w, const CommonOpts& opts) {
    const json params_json = {{"p", p}, {"w", w}};
    Run run("slm-threshold", opts.outdir, params_json);

    const auto k_star = slm::cascade_threshold(p, MotivationWeight(w));
    json results;
    io::CsvWriter writer({"p", "w", "k_star", "w_lo", "w_hi", "absorption_prob",
                          "welfare_infinite", "expected_stopping_time"});
    if (k_star.is_finite()) {
        const auto interval = slm::w_interval_for_threshold(p, k_star.value());
        const double phi = slm::absorption_prob(p, k_star);
        const double stop = slm::expected_stopping_time(p, k_star);
        results = {{"k_star", k_star.value()},    {"w_lo", interval.lo},
                   {"w_hi", interval.hi},         {"absorption_prob", phi},
                   {"welfare_infinite", phi},     {"expected_stopping_time", stop}};
        writer.begin_row().add(p).add(w).add(static_cast<long>(k_star.value()))
            .add(interval.lo).add(interval.hi).add(phi).add(phi).add(stop);
    } else {
        results = {{"k_star", nullptr},
                   {"welfare_infinite", slm::welfare_infinite(p, MotivationWeight(w))}};
        writer.begin_row().add(p).add(w).add("inf").add("").add("").add("")
            .add(slm::welfare_infinite(p, MotivationWeight(w))).add("");
    }

    if (opts.format == "json")
        run.emit("slm-threshold.json", wrap_output(params_json, results).dump(2) + "\n");
    else
        run.emit("slm-threshold.csv", writer.str());
    return run.finish(results);
}

// slm-welfare-curve ----------------------------------------------------

int run_slm_welfare_curve(double p, const std::string& w_grid, const CommonOpts& opts) {
    const auto ws = io::parse_grid(w_grid);
    const json params_json = {{"p", p}, {"w_grid", w_grid}};
    Run run("slm-welfare-curve", opts.outdir, params_json);

    io::CsvWriter writer({"w", "k_star", "welfare"});
    json rows = json::array();
    for (double w : ws) {
        const auto k_star = slm::cascade_threshold(p, MotivationWeight(w));
        const double value = slm::welfare_infinite(p, MotivationWeight(w));
        writer.begin_row().add(w);
        if (k_star.is_finite())
            writer.add(static_cast<long>(k_star.value()));
        else
            writer.add("inf");
        writer.add(value);
        rows.push_back({{"w", w},
                        {"k_star", k_star.is_finite() ? json(k_star.value()) : json(nullptr)},
                        {"welfare", value}});
    }

    if (opts.format == "json")
        run.emit("slm-welfare-curve.json",
                 wrap_output(params_json, {{"rows", rows}}).dump(2) + "\n");
    else
        run.emit("slm-welfare-curve.csv", writer.str());
    return run.finish({{"rows", rows.size()}});
}

// slm-welfare-finite ---------------------------------------------------

int run_slm_welfare_finite(double p, double w, const std::string& n_grid,
                           const CommonOpts& opts) {
    const auto ns = io::parse_int_grid(n_grid);
    const json params_json = {{"p", p}, {"w", w}, {"n_grid", n_grid}};
    Run run("slm-welfare-finite", opts.outdir, params_json);

    const double limit = slm::welfare_infinite(p, MotivationWeight(w));
    io::CsvWriter writer({"n", "welfare_finite", "welfare_infinite", "gap",
                          "gap_times_n"});
    json rows = json::array();
    for (long n : ns) {
        const double value = slm::welfare_finite_exact(p, MotivationWeight(w), n);
        const double gap = limit - value;
        writer.begin_row().add(n).add(value).add(limit).add(gap).add(
            gap * static_cast<double>(n));
        rows.push_back({{"n", n}, {"welfare_finite", value}, {"gap", gap}});
    }

    if (opts.format == "json")
        run.emit("slm-welfare-finite.json",
                 wrap_output(params_json, {{"rows", rows}}).dump(2) + "\n");
    else
        run.emit("slm-welfare-finite.csv", writer.str());
    return run.finish({{"welfare_infinite", limit}, {"rows", rows.size()}});
}

// slm-optimal-w --------------------------------------------------------

int run_slm_optimal_w(double p, const std::string& n_grid, int k_max,
                      const CommonOpts& opts) {
    const auto ns = io::parse_int_grid(n_grid);
    const json params_json = {{"p", p}, {"n_grid", n_grid},
                              {"k_max", k_max > 0 ? json(k_max) : json(nullptr)}};
    Run run("slm-optimal-w", opts.outdir, params_json);

    io::CsvWriter writer({"n", "best_k", "w_lo", "w_hi", "w_inf", "w_sup",
                          "welfare", "tied_ks"});
    json rows = json::array();
    for (long n : ns) {
        const auto best =
            k_max > 0 ? slm::optimal_w(p, n, k_max) : slm::optimal_w(p, n);
        std::string tied;
        for (int k : best.tied_ks) {
            if (!tied.empty()) tied += ';';
            tied += std::to_string(k);
        }
        writer.begin_row()
            .add(n)
            .add(best.best_k.is_finite() ? std::to_string(best.best_k.value())
                                         : std::string("inf"))
            .add(best.interval.lo)
            .add(best.interval.hi)
            .add(best.w_inf)
            .add(best.w_sup)
            .add(best.welfare)
            .add(tied);
        rows.push_back({{"n", n},
                        {"best_k", best.best_k.is_finite() ? json(best.best_k.value())
                                                           : json(nullptr)},
                        {"w_lo", best.interval.lo},
                        {"w_hi", best.interval.hi},
                        {"w_sup", best.w_sup},
                        {"welfare", best.welfare}});
    }

    if (opts.format == "json")
        run.emit("slm-optimal-w.json",
                 wrap_output(params_json, {{"rows", rows}}).dump(2) + "\n");
    else
        run.emit("slm-optimal-w.csv", writer.str());
    return run.finish({{"rows", rows}});
}

// slm-stopping-time ----------------------------------------------------

int run_slm_stopping_time(double p, double w, int k_star_flag, long n_max,
                          const CommonOpts& opts) {
    json params_json = {{"p", p}, {"n_max", n_max}};
    slm::CascadeThreshold k_star = slm::CascadeThreshold(2);
    if (k_star_flag > 0) {
        k_star = slm::CascadeThreshold(k_star_flag);
        params_json["k_star"] = k_star_flag;
    } else {
        const auto from_w = slm::cascade_threshold(p, MotivationWeight(w));
        if (!from_w.is_finite())
            throw InvalidParameter(
                "w >= 1/2 has no finite barrier; pass --k-star explicitly");
        k_star = from_w;
        params_json["w"] = w;
    }
    Run run("slm-stopping-time", opts.outdir, params_json);

    const auto pmf = slm::stopping_time_pmf(p, k_star, n_max);
    const auto spectral = slm::spectral_decomposition(p, k_star);

    io::CsvWriter writer({"n", "pmf", "tail", "tail_spectral"});
    json pmf_rows = json::array();
    for (const auto& [n, mass] : pmf) {
        const double tail = slm::stopping_time_tail(p, k_star, n);
        const double tail_spec = slm::stopping_time_tail_spectral(p, k_star, n);
        writer.begin_row().add(n).add(mass).add(tail).add(tail_spec);
        pmf_rows.push_back({{"n", n}, {"pmf", mass}, {"tail", tail}});
    }

    io::CsvWriter eig_writer({"index", "eigenvalue"});
    json eigs = json::array();
    for (int i = 0; i < spectral.eigenvalues.size(); ++i) {
        eig_writer.begin_row().add(static_cast<long>(i + 1)).add(spectral.eigenvalues(i));
        eigs.push_back(spectral.eigenvalues(i));
    }

    if (opts.format == "json") {
        run.emit("slm-stopping-time.json",
                 wrap_output(params_json, {{"pmf", pmf_rows},
                                           {"eigenvalues", eigs},
                                           {"reconstruction_residual",
                                            spectral.residual}})
                         .dump(2) +
                     "\n");
    } else {
        run.emit("slm-stopping-time.csv", writer.str());
        run.emit("slm-stopping-time-eigenvalues.csv", eig_writer.str());
    }
    return run.finish({{"k_star", k_star.value()},
                       {"eigenvalues", eigs},
                       {"reconstruction_residual", spectral.residual}});
}

// mc ---------------------------------------------------------------

int run_mc(const std::string& model, double p, double w, double qa, double qb,
           long n, const std::string& state_name, std::uint64_t samples,
           std::uint64_t seed, unsigned shards, const CommonOpts& opts) {
    json params_json = {{"model", model}, {"w", w},          {"n", n},
                        {"samples", samples}, {"seed", seed}, {"shards", shards}};
    oracles::McEstimate est{0, 0, 0, 0};
    double reference = 0.0;
    if (model == "slm") {
        params_json["p"] = p;
        est = oracles::mc_slm(p, MotivationWeight(w), n, samples, seed, shards,
                              thread_cap());
        reference = slm::welfare_infinite(p, MotivationWeight(w));
    } else {
        params_json["qa"] = qa;
        params_json["qb"] = qb;
        params_json["state"] = state_name;
        const cjt::JuryParams params(qa, qb, MotivationWeight(w), n);
        const auto strat = cjt::equilibrium(params);
        const State state = state_name == "A" ? State::A : State::B;
        est = oracles::mc_cjt(params, strat, state, samples, seed, shards,
                              thread_cap());
        reference = cjt::welfare_exact(params, state);
    }
    Run run("mc", opts.outdir, params_json);

    const json results = {{"mean", est.mean},
                          {"std_error", est.std_error},
                          {"n_samples", est.n_samples},
                          {"seed", est.seed},
                          {"shards", shards},
                          {"reference", reference}};

    if (opts.format == "json") {
        run.emit("mc.json", wrap_output(params_json, results).dump(2) + "\n");
    } else {
        io::CsvWriter writer({"model", "n", "samples", "seed", "shards", "mean",
                              "std_error", "reference"});
        writer.begin_row()
            .add(model)
            .add(n)
            .add(static_cast<long>(samples))
            .add(static_cast<long>(seed))
            .add(static_cast<long>(shards))
            .add(est.mean)
            .add(est.std_error)
            .add(reference);
        run.emit("mc.csv", writer.str());
    }
    return run.finish(results);
}

// verify -------------------------------------------------------------

int run_verify(bool full, const CommonOpts& opts) {
    const json params_json = {{"level", full ? "full" : "quick"}};
    Run run("verify", opts.outdir, params_json);

    const auto results = verification::run_battery(
        full ? verification::Level::Full : verification::Level::Quick);

    io::CsvWriter writer({"check", "pass", "seconds", "detail"});
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::string detail = r.detail;
        for (char& c : detail)
            if (c == ',' || c == '\n') c = ' ';
        writer.begin_row()
            .add(r.name)
            .add(std::string(r.pass ? "pass" : "FAIL"))
            .add(r.seconds)
            .add(detail);
        if (r.pass) ++passed;
        std::printf("%-45s %s  (%.2fs)\n", r.name.c_str(),
                    r.pass ? "pass" : "FAIL", r.seconds);
        if (!r.pass) std::printf("    %s\n", r.detail.c_str());
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    run.emit("verify.csv", writer.str());

    const int code = run.finish({{"passed", passed}, {"total", results.size()}});
    if (code != kExitOk) return code;
    return passed == results.size() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - equilibria, welfare, and cascade dynamics for collective "
                 "decision models with motivated belief updating"};
    app.require_subcommand(1);

    CommonOpts eq_opts, welfare_opts, rates_opts, thr_opts, curve_opts, fin_opts,
        opt_opts, stop_opts, mc_opts, verify_opts;

    auto* eq = app.add_subcommand("cjt-equilibrium",
                                  "Voting equilibrium for one parameter point");
    double eq_qa = 0.8, eq_qb = 0.6, eq_w = 0.0;
    long eq_n = 2;
    eq->add_option("--qa", eq_qa, "Signal accuracy in state A")->required();
    eq->add_option("--qb", eq_qb, "Signal accuracy in state B")->required();
    eq->add_option("--w", eq_w, "Weight on motivation")->required();
    eq->add_option("--n", eq_n, "Population parameter (2n+1 voters)")->required();
    add_common(eq, eq_opts, "json");

    auto* wf = app.add_subcommand("cjt-welfare",
                                  "State-resolved welfare over w and n grids");
    double wf_qa = 0.8, wf_qb = 0.6;
    std::string wf_w_grid = "0:0.9:0.1", wf_n_grid = "1:10:1";
    wf->add_option("--qa", wf_qa)->required();
    wf->add_option("--qb", wf_qb)->required();
    wf->add_option("--w-grid", wf_w_grid, "start:stop:step");
    wf->add_option("--n-grid", wf_n_grid, "start:stop:step");
    add_common(wf, welfare_opts, "csv");

    auto* rates = app.add_subcommand("cjt-rates",
                                     "Welfare convergence-rate diagnostics");
    double rt_qa = 0.8, rt_qb = 0.6, rt_w = 0.0;
    std::string rt_state = "A", rt_n_grid = "50:400:50";
    rates->add_option("--qa", rt_qa)->required();
    rates->add_option("--qb", rt_qb)->required();
    rates->add_option("--w", rt_w)->required();
    rates->add_option("--state", rt_state)->check(CLI::IsMember({"A", "B"}));
    rates->add_option("--n-grid", rt_n_grid, "start:stop:step");
    add_common(rates, rates_opts, "csv");

    auto* thr = app.add_subcommand("slm-threshold",
                                   "Cascade barrier and limit welfare at (p, w)");
    double th_p = 0.75, th_w = 0.0;
    thr->add_option("--p", th_p, "Signal accuracy")->required();
    thr->add_option("--w", th_w, "Weight on motivation")->required();
    add_common(thr, thr_opts, "json");

    auto* curve = app.add_subcommand("slm-welfare-curve",
                                     "Limit welfare as a step function of w");
    double cv_p = 0.75;
    std::string cv_w_grid = "0:0.6:0.01";
    curve->add_option("--p", cv_p)->required();
    curve->add_option("--w-grid", cv_w_grid, "start:stop:step");
    add_common(curve, curve_opts, "csv");

    auto* fin = app.add_subcommand("slm-welfare-finite",
                                   "Exact finite-population welfare over n");
    double fn_p = 0.75, fn_w = 0.0;
    std::string fn_n_grid = "1:100:1";
    fin->add_option("--p", fn_p)->required();
    fin->add_option("--w", fn_w)->required();
    fin->add_option("--n-grid", fn_n_grid, "start:stop:step");
    add_common(fin, fin_opts, "csv");

    auto* opt = app.add_subcommand("slm-optimal-w",
                                   "Welfare-optimal motivation intervals over n");
    double op_p = 0.75;
    std::string op_n_grid = "4:64:4";
    int op_k_max = 0;
    opt->add_option("--p", op_p)->required();
    opt->add_option("--n-grid", op_n_grid, "start:stop:step");
    opt->add_option("--k-max", op_k_max, "Barrier search cap (default: automatic)");
    add_common(opt, opt_opts, "csv");

    auto* stop = app.add_subcommand("slm-stopping-time",
                                    "Cascade onset pmf, tail, and spectrum");
    double st_p = 0.75, st_w = 0.0;
    int st_k = 0;
    long st_n_max = 50;
    stop->add_option("--p", st_p)->required();
    stop->add_option("--w", st_w, "Weight on motivation (sets the barrier)");
    stop->add_option("--k-star", st_k, "Barrier override (>= 2)");
    stop->add_option("--n-max", st_n_max, "Largest onset time reported");
    add_common(stop, stop_opts, "csv");

    auto* mc = app.add_subcommand("mc", "Seeded Monte Carlo cross-checks");
    std::string mc_model = "slm";
    double mc_p = 0.75, mc_w = 0.0, mc_qa = 0.8, mc_qb = 0.6;
    long mc_n = 500;
    std::string mc_state = "A";
    std::uint64_t mc_samples = 100000, mc_seed = 42;
    unsigned mc_shards = 1;
    mc->add_option("--model", mc_model)->check(CLI::IsMember({"slm", "cjt"}));
    mc->add_option("--p", mc_p);
    mc->add_option("--w", mc_w);
    mc->add_option("--qa", mc_qa);
    mc->add_option("--qb", mc_qb);
    mc->add_option("--n", mc_n);
    mc->add_option("--state", mc_state)->check(CLI::IsMember({"A", "B"}));
    mc->add_option("--samples", mc_samples);
    mc->add_option("--seed", mc_seed);
    mc->add_option("--shards", mc_shards);
    add_common(mc, mc_opts, "csv");

    auto* verify = app.add_subcommand("verify", "Run the oracle battery");
    bool verify_quick = false, verify_full = false;
    verify->add_flag("--quick", verify_quick, "Small grids (default)");
    verify->add_flag("--full", verify_full, "Complete property grids");
    add_common(verify, verify_opts, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the one-line reason
        return kExitValidation;
    }

    try {
        if (eq->parsed()) return run_cjt_equilibrium(eq_qa, eq_qb, eq_w, eq_n, eq_opts);
        if (wf->parsed())
            return run_cjt_welfare(wf_qa, wf_qb, wf_w_grid, wf_n_grid, welfare_opts);
        if (rates->parsed())
            return run_cjt_rates(rt_qa, rt_qb, rt_w, rt_state, rt_n_grid, rates_opts);
        if (thr->parsed()) return run_slm_threshold(th_p, th_w, thr_opts);
        if (curve->parsed()) return run_slm_welfare_curve(cv_p, cv_w_grid, curve_opts);
        if (fin->parsed())
            return run_slm_welfare_finite(fn_p, fn_w, fn_n_grid, fin_opts);
        if (opt->parsed()) return run_slm_optimal_w(op_p, op_n_grid, op_k_max, opt_opts);
        if (stop->parsed())
            return run_slm_stopping_time(st_p, st_w, st_k, st_n_max, stop_opts);
        if (mc->parsed())
            return run_mc(mc_model, mc_p, mc_w, mc_qa, mc_qb, mc_n, mc_state,
                          mc_samples, mc_seed, mc_shards, mc_opts);
        if (verify->parsed()) return run_verify(verify_full, verify_opts);
    } catch (const aggregatio::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
