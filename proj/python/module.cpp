#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aggregatio/beliefs.hpp"
#include "aggregatio/condorcet.hpp"
#include "aggregatio/oracles.hpp"
#include "aggregatio/social_learning.hpp"
#include "aggregatio/verification.hpp"
#include "aggregatio/version.hpp"

namespace py = pybind11;
using namespace aggregatio;

namespace {

MotivationWeight mw(double w) { return MotivationWeight(w); }

std::vector<std::string> to_labels(const py::iterable& it) {
    std::vector<std::string> out;
    for (const auto& x : it) out.push_back(py::cast<std::string>(x));
    return out;
}

}  // namespace

PYBIND11_MODULE(aggregatio, m) {
    m.doc() = "Equilibria, welfare, and cascade dynamics for collective decision "
              "models with motivated belief updating";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "AggregatioError");

    py::enum_<State>(m, "State").value("A", State::A).value("B", State::B);
    py::enum_<Signal>(m, "Signal").value("A", Signal::A).value("B", Signal::B);
    py::enum_<Choice>(m, "Choice").value("A", Choice::A).value("B", Choice::B);

    // ------------------------------------------------------------ beliefs
    auto bel = m.def_submodule("beliefs", "Finite measures and motivated mixing");
    py::class_<beliefs::FiniteMeasure>(bel, "FiniteMeasure")
        .def(py::init([](const py::iterable& outcomes, std::vector<double> weights) {
                 return beliefs::FiniteMeasure(to_labels(outcomes), std::move(weights));
             }),
             py::arg("outcomes"), py::arg("weights"))
        .def_static("uniform",
                    [](const py::iterable& outcomes) {
                        return beliefs::FiniteMeasure::uniform(to_labels(outcomes));
                    })
        .def_static("point_mass",
                    [](const py::iterable& outcomes, const std::string& at) {
                        return beliefs::FiniteMeasure::point_mass(to_labels(outcomes), at);
                    })
        .def_property_readonly("outcomes", &beliefs::FiniteMeasure::outcomes)
        .def_property_readonly("weights", &beliefs::FiniteMeasure::weights)
        .def("__len__", &beliefs::FiniteMeasure::size);

    bel.def("bayes_condition",
            [](const beliefs::FiniteMeasure& p, const std::vector<std::string>& event) {
                return beliefs::bayes_condition(p, event);
            },
            py::arg("p"), py::arg("event"));
    bel.def("motivated_mix",
            [](const beliefs::FiniteMeasure& p, const beliefs::FiniteMeasure& pz,
               double w) { return beliefs::motivated_mix(p, pz, mw(w)); },
            py::arg("p"), py::arg("p_z"), py::arg("w"));
    bel.def("dissonance",
            [](const beliefs::FiniteMeasure& h, const beliefs::FiniteMeasure& p,
               const beliefs::FiniteMeasure& pz, double w) {
                return beliefs::dissonance(h, p, pz, mw(w));
            },
            py::arg("h"), py::arg("p"), py::arg("p_z"), py::arg("w"));

    // ----------------------------------------------------------- condorcet
    auto cj = m.def_submodule("condorcet", "Jury voting model");
    py::class_<condorcet::JuryParams>(cj, "JuryParams")
        .def(py::init([](double qa, double qb, double w, long n) {
                 return condorcet::JuryParams(qa, qb, mw(w), n);
             }),
             py::arg("q_a"), py::arg("q_b"), py::arg("w"), py::arg("n"))
        .def_readonly("q_a", &condorcet::JuryParams::q_a)
        .def_readonly("q_b", &condorcet::JuryParams::q_b)
        .def_property_readonly("w",
                               [](const condorcet::JuryParams& p) { return p.w.value(); })
        .def_readonly("n", &condorcet::JuryParams::n);

    py::class_<condorcet::JuryStrategy>(cj, "JuryStrategy")
        .def(py::init<double, double>(), py::arg("sigma_a"), py::arg("sigma_b"))
        .def_static("sincere", &condorcet::JuryStrategy::sincere)
        .def_readonly("sigma_a", &condorcet::JuryStrategy::sigma_a)
        .def_readonly("sigma_b", &condorcet::JuryStrategy::sigma_b);

    py::class_<condorcet::PivotalPair>(cj, "PivotalPair")
        .def_readonly("phi_a", &condorcet::PivotalPair::phi_a)
        .def_readonly("phi_b", &condorcet::PivotalPair::phi_b)
        .def("ratio", &condorcet::PivotalPair::ratio);

    py::class_<condorcet::ResponseThresholds>(cj, "ResponseThresholds")
        .def_readonly("lower", &condorcet::ResponseThresholds::lower)
        .def_readonly("upper", &condorcet::ResponseThresholds::upper);

    py::enum_<condorcet::VoteResponse>(cj, "VoteResponse")
        .value("VoteA", condorcet::VoteResponse::VoteA)
        .value("VoteB", condorcet::VoteResponse::VoteB)
        .value("Indifferent", condorcet::VoteResponse::Indifferent);

    py::class_<condorcet::TailBracket>(cj, "TailBracket")
        .def_readonly("lower", &condorcet::TailBracket::lower)
        .def_readonly("upper", &condorcet::TailBracket::upper);

    cj.def("psi", &condorcet::psi);
    cj.def("n_star", &condorcet::n_star,
           "Mixing onset; None when sincere voting holds for every n");
    cj.def("equilibrium", &condorcet::equilibrium);
    cj.def("limit_strategy", &condorcet::limit_strategy);
    cj.def("pivotal_probs", &condorcet::pivotal_probs);
    cj.def("response_thresholds", &condorcet::response_thresholds);
    cj.def("best_response", &condorcet::best_response, py::arg("params"),
           py::arg("strategy"), py::arg("signal"));
    cj.def("effective_vote_prob", &condorcet::effective_vote_prob);
    cj.def("limit_effective_vote_prob", &condorcet::limit_effective_vote_prob);
    cj.def("welfare_exact", &condorcet::welfare_exact);
    cj.def("binomial_tail_bracket", &condorcet::binomial_tail_bracket,
           py::arg("n_trials"), py::arg("p"), py::arg("alpha"));
    cj.def("rate_diagnostic",
           [](const condorcet::JuryParams& base, State state, std::vector<long> ns) {
               return condorcet::rate_diagnostic(base, state, ns).entries;
           },
           py::arg("params"), py::arg("state"), py::arg("n_values"));

    // ------------------------------------------------------ social learning
    auto sl = m.def_submodule("social_learning", "Sequential learning model");
    py::class_<social_learning::CascadeThreshold>(sl, "CascadeThreshold")
        .def(py::init<int>(), py::arg("k"))
        .def_static("infinite", &social_learning::CascadeThreshold::infinite)
        .def_property_readonly("finite", &social_learning::CascadeThreshold::is_finite)
        .def_property_readonly("value", [](const social_learning::CascadeThreshold& k) {
            return k.is_finite() ? py::cast(k.value()) : py::none().cast<py::object>();
        });

    py::class_<social_learning::WalkDistribution>(sl, "WalkDistribution")
        .def(py::init([](double p, int k) {
                 return social_learning::WalkDistribution(
                     p, social_learning::CascadeThreshold(k));
             }),
             py::arg("p"), py::arg("k_star"))
        .def_property_readonly("step", &social_learning::WalkDistribution::step)
        .def_property_readonly("absorbed_plus",
                               &social_learning::WalkDistribution::absorbed_plus)
        .def_property_readonly("absorbed_minus",
                               &social_learning::WalkDistribution::absorbed_minus)
        .def_property_readonly("expected_correct",
                               &social_learning::WalkDistribution::expected_correct)
        .def("mass", &social_learning::WalkDistribution::mass)
        .def("interior_mass", &social_learning::WalkDistribution::interior_mass)
        .def("total_mass", &social_learning::WalkDistribution::total_mass)
        .def("stepped", [](const social_learning::WalkDistribution& d) {
            return social_learning::walk_step(d);
        });

    py::class_<social_learning::WInterval>(sl, "WInterval")
        .def_readonly("lo", &social_learning::WInterval::lo)
        .def_readonly("hi", &social_learning::WInterval::hi);

    py::class_<social_learning::OptimalW>(sl, "OptimalW")
        .def_readonly("best_k", &social_learning::OptimalW::best_k)
        .def_readonly("interval", &social_learning::OptimalW::interval)
        .def_readonly("welfare", &social_learning::OptimalW::welfare)
        .def_readonly("tied_ks", &social_learning::OptimalW::tied_ks)
        .def_readonly("w_inf", &social_learning::OptimalW::w_inf)
        .def_readonly("w_sup", &social_learning::OptimalW::w_sup);

    py::class_<social_learning::SpectralData>(sl, "SpectralData")
        .def_readonly("eigenvalues", &social_learning::SpectralData::eigenvalues)
        .def_readonly("v_matrix", &social_learning::SpectralData::v_matrix)
        .def_readonly("v_inverse", &social_learning::SpectralData::v_inverse)
        .def_readonly("transition", &social_learning::SpectralData::transition)
        .def_readonly("residual", &social_learning::SpectralData::residual);

    sl.def("cascade_threshold",
           [](double p, double w) { return social_learning::cascade_threshold(p, mw(w)); },
           py::arg("p"), py::arg("w"));
    sl.def("motivated_posterior",
           [](double p, double w, long k, Signal s) {
               return social_learning::motivated_posterior(p, mw(w), k, s);
           },
           py::arg("p"), py::arg("w"), py::arg("k"), py::arg("signal"));
    sl.def("decision",
           [](double p, double w, long k, Signal s) {
               return social_learning::decision(p, mw(w), k, s);
           },
           py::arg("p"), py::arg("w"), py::arg("k"), py::arg("signal"));
    sl.def("absorption_prob", &social_learning::absorption_prob);
    sl.def("welfare_infinite",
           [](double p, double w) { return social_learning::welfare_infinite(p, mw(w)); },
           py::arg("p"), py::arg("w"));
    sl.def("welfare_finite_exact",
           [](double p, double w, long n) {
               return social_learning::welfare_finite_exact(p, mw(w), n);
           },
           py::arg("p"), py::arg("w"), py::arg("n"));
    sl.def("welfare_finite_for_threshold",
           &social_learning::welfare_finite_for_threshold);
    sl.def("w_interval_for_threshold", &social_learning::w_interval_for_threshold,
           py::arg("p"), py::arg("k"));
    sl.def("default_k_max", &social_learning::default_k_max);
    sl.def("optimal_w",
           [](double p, long n, int k_max) {
               return k_max > 0 ? social_learning::optimal_w(p, n, k_max)
                                : social_learning::optimal_w(p, n);
           },
           py::arg("p"), py::arg("n"), py::arg("k_max") = 0);
    sl.def("stopping_time_tail", &social_learning::stopping_time_tail);
    sl.def("stopping_time_pmf", &social_learning::stopping_time_pmf);
    sl.def("stopping_time_tail_spectral", &social_learning::stopping_time_tail_spectral);
    sl.def("spectral_decomposition", &social_learning::spectral_decomposition);
    sl.def("expected_stopping_time", &social_learning::expected_stopping_time);

    // -------------------------------------------------------------- oracles
    auto orc = m.def_submodule("oracles", "Brute-force and Monte Carlo cross-checks");
    py::class_<oracles::McEstimate>(orc, "McEstimate")
        .def_readonly("mean", &oracles::McEstimate::mean)
        .def_readonly("std_error", &oracles::McEstimate::std_error)
        .def_readonly("n_samples", &oracles::McEstimate::n_samples)
        .def_readonly("seed", &oracles::McEstimate::seed);

    py::class_<oracles::SlmEnumeration>(orc, "SlmEnumeration")
        .def_readonly("welfare", &oracles::SlmEnumeration::welfare)
        .def_readonly("cascade_up", &oracles::SlmEnumeration::cascade_up)
        .def_readonly("cascade_down", &oracles::SlmEnumeration::cascade_down);

    py::class_<oracles::AbsorptionSolve>(orc, "AbsorptionSolve")
        .def_readonly("prob_up", &oracles::AbsorptionSolve::prob_up)
        .def_readonly("expected_time", &oracles::AbsorptionSolve::expected_time);

    orc.def("enumerate_cjt", &oracles::enumerate_cjt);
    orc.def("enumerate_slm",
            [](double p, double w, long n) {
                return oracles::enumerate_slm(p, mw(w), n);
            },
            py::arg("p"), py::arg("w"), py::arg("n"));
    orc.def("mc_slm",
            [](double p, double w, long n, std::uint64_t samples, std::uint64_t seed,
               unsigned shards, unsigned threads) {
                return oracles::mc_slm(p, mw(w), n, samples, seed, shards, threads);
            },
            py::arg("p"), py::arg("w"), py::arg("n"), py::arg("n_samples"),
            py::arg("seed"), py::arg("shards") = 1, py::arg("max_threads") = 0);
    orc.def("mc_cjt",
            [](const condorcet::JuryParams& params, const condorcet::JuryStrategy& s,
               State state, std::uint64_t samples, std::uint64_t seed, unsigned shards,
               unsigned threads) {
                return oracles::mc_cjt(params, s, state, samples, seed, shards, threads);
            },
            py::arg("params"), py::arg("strategy"), py::arg("state"),
            py::arg("n_samples"), py::arg("seed"), py::arg("shards") = 1,
            py::arg("max_threads") = 0);
    orc.def("grid_minimize_dissonance",
            [](const beliefs::FiniteMeasure& p, const beliefs::FiniteMeasure& pz,
               double w, double resolution) {
                return oracles::grid_minimize_dissonance(p, pz, mw(w), resolution);
            },
            py::arg("p"), py::arg("p_z"), py::arg("w"), py::arg("resolution") = 0.01);
    orc.def("absorption_linear_solve", &oracles::absorption_linear_solve);

    // --------------------------------------------------------- verification
    auto ver = m.def_submodule("verification", "Oracle battery");
    py::class_<verification::CheckResult>(ver, "CheckResult")
        .def_readonly("name", &verification::CheckResult::name)
        .def_readonly("passed", &verification::CheckResult::pass)
        .def_readonly("detail", &verification::CheckResult::detail)
        .def_readonly("seconds", &verification::CheckResult::seconds);
    ver.def("run_battery",
            [](bool full) {
                return verification::run_battery(full ? verification::Level::Full
                                                      : verification::Level::Quick);
            },
            py::arg("full") = false);
}
