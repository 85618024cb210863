#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lobbying/bargaining.hpp"
#include "lobbying/config.hpp"
#include "lobbying/contest.hpp"
#include "lobbying/finitesim.hpp"
#include "lobbying/oracle.hpp"
#include "lobbying/variants.hpp"

namespace py = pybind11;
using namespace lobbying;

PYBIND11_MODULE(_lobbying, m) {
  m.doc() = "Solver and simulator for the government-vs-interest-groups lobbying game.";
  m.attr("__version__") = LOBBYING_VERSION;

  py::register_exception<InvariantBreach>(m, "InvariantBreach", PyExc_RuntimeError);

  py::enum_<Variant>(m, "Variant")
      .value("Sequential", Variant::Sequential)
      .value("Simultaneous", Variant::Simultaneous)
      .value("NonFungible", Variant::NonFungible);

  py::enum_<Branch>(m, "Branch")
      .value("AllDeals", Branch::AllDeals)
      .value("NoDeals", Branch::NoDeals)
      .value("DealsToAdequacy", Branch::DealsToAdequacy)
      .value("HeterogeneousCutoff", Branch::HeterogeneousCutoff)
      .value("SimultaneousDeals", Branch::SimultaneousDeals)
      .value("SimultaneousNoDeals", Branch::SimultaneousNoDeals);
  m.def("branch_tag", &branch_tag);

  py::enum_<ContributionConvention>(m, "ContributionConvention")
      .value("EquilibriumState", ContributionConvention::EquilibriumState)
      .value("MyopicSequential", ContributionConvention::MyopicSequential)
      .value("FixedPointCounterfactual", ContributionConvention::FixedPointCounterfactual);

  py::class_<LawProfile>(m, "LawProfile")
      .def(py::init<double, double, double, double>(), py::arg("pi"), py::arg("alpha"), py::arg("z") = 1.0,
           py::arg("beta") = 0.0)
      .def_readwrite("pi", &LawProfile::pi)
      .def_readwrite("alpha", &LawProfile::alpha)
      .def_readwrite("z", &LawProfile::z)
      .def_readwrite("beta", &LawProfile::beta)
      .def("__repr__", [](const LawProfile& p) {
        return "LawProfile(pi=" + std::to_string(p.pi) + ", alpha=" + std::to_string(p.alpha) + ")";
      });

  py::class_<Segment>(m, "Segment")
      .def(py::init<double, LawProfile>(), py::arg("mass"), py::arg("profile"))
      .def_readwrite("mass", &Segment::mass)
      .def_readwrite("profile", &Segment::profile);

  py::class_<Group>(m, "Group")
      .def(py::init<int, LawProfile>(), py::arg("id"), py::arg("profile"))
      .def_readwrite("id", &Group::id)
      .def_readwrite("profile", &Group::profile);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](double kg, Population pop, Variant v, double lambda, double tau) {
             return Scenario{kg, std::move(pop), v, lambda, tau};
           }),
           py::arg("government_capital"), py::arg("population"), py::arg("variant") = Variant::Sequential,
           py::arg("bargain_select") = 1.0, py::arg("transfer") = 0.0)
      .def_readwrite("government_capital", &Scenario::government_capital)
      .def_readwrite("population", &Scenario::population)
      .def_readwrite("variant", &Scenario::variant)
      .def_readwrite("bargain_select", &Scenario::bargain_select)
      .def_readwrite("transfer", &Scenario::transfer);

  py::class_<Deal>(m, "Deal")
      .def_readonly("dealt_fraction", &Deal::dealt_fraction)
      .def_readonly("contribution_rate", &Deal::contribution_rate);

  py::class_<LawAllocation>(m, "LawAllocation")
      .def_readonly("capital", &LawAllocation::capital)
      .def_readonly("lobbying", &LawAllocation::lobbying)
      .def_readonly("win_probability", &LawAllocation::win_probability);

  py::class_<ContestAllocation>(m, "ContestAllocation")
      .def_readonly("laws", &ContestAllocation::laws)
      .def_readonly("total_capital", &ContestAllocation::total_capital)
      .def_readonly("contestable_importance", &ContestAllocation::contestable_importance)
      .def_readonly("adequacy", &ContestAllocation::adequacy)
      .def_readonly("spent_capital", &ContestAllocation::spent_capital)
      .def_readonly("unspent_capital", &ContestAllocation::unspent_capital)
      .def_readonly("total_lobbying", &ContestAllocation::total_lobbying);

  py::class_<CutoffResult>(m, "CutoffResult")
      .def_readonly("alpha_bar", &CutoffResult::alpha_bar)
      .def_readonly("dealt_importance", &CutoffResult::dealt_importance)
      .def_readonly("budget_residual", &CutoffResult::budget_residual);

  py::class_<EquilibriumReport>(m, "EquilibriumReport")
      .def_readonly("variant", &EquilibriumReport::variant)
      .def_readonly("branch", &EquilibriumReport::branch)
      .def_readonly("multiple_equilibria", &EquilibriumReport::multiple_equilibria)
      .def_readonly("effective", &EquilibriumReport::effective)
      .def_property_readonly("deals", [](const EquilibriumReport& r) { return r.deals.entries; })
      .def_readonly("allocation", &EquilibriumReport::allocation)
      .def_readonly("adequacy", &EquilibriumReport::adequacy)
      .def_readonly("government_utility", &EquilibriumReport::government_utility)
      .def_readonly("citizen_loss", &EquilibriumReport::citizen_loss)
      .def_readonly("citizen_utility", &EquilibriumReport::citizen_utility)
      .def_readonly("dealt_importance", &EquilibriumReport::dealt_importance)
      .def_readonly("total_contributions", &EquilibriumReport::total_contributions)
      .def_readonly("total_contest_spend", &EquilibriumReport::total_contest_spend)
      .def_readonly("cutoff", &EquilibriumReport::cutoff)
      .def_readonly("diagnostics", &EquilibriumReport::diagnostics);

  py::class_<BargainBounds>(m, "BargainBounds")
      .def_readonly("b_min", &BargainBounds::b_min)
      .def_readonly("b_max", &BargainBounds::b_max)
      .def_readonly("feasible", &BargainBounds::feasible);

  py::class_<BestResponse>(m, "BestResponse")
      .def_readonly("lobbying", &BestResponse::lobbying)
      .def_readonly("win_probability", &BestResponse::win_probability);

  py::class_<TransferResult>(m, "TransferResult")
      .def_readonly("tau_star", &TransferResult::tau_star)
      .def_readonly("chi", &TransferResult::chi)
      .def_readonly("dug_dtau_closed_form", &TransferResult::dug_dtau_closed_form)
      .def_readonly("dug_dtau_direct", &TransferResult::dug_dtau_direct)
      .def("citizen_utility_at", &TransferResult::citizen_utility_at, py::arg("tau"))
      .def("government_utility_at", &TransferResult::government_utility_at, py::arg("tau"));

  py::class_<WinEstimate>(m, "WinEstimate")
      .def_readonly("p_hat", &WinEstimate::p_hat)
      .def_readonly("standard_error", &WinEstimate::standard_error)
      .def_readonly("analytic", &WinEstimate::analytic)
      .def_readonly("samples", &WinEstimate::samples)
      .def_readonly("government_wins", &WinEstimate::government_wins);

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("convention", &SimulationResult::convention)
      .def_readonly("pi", &SimulationResult::pi)
      .def_readonly("m", &SimulationResult::m)
      .def_readonly("contributions", &SimulationResult::contributions)
      .def_readonly("adequacy", &SimulationResult::adequacy)
      .def_readonly("laws", &SimulationResult::laws)
      .def_readonly("government_utility", &SimulationResult::government_utility)
      .def_readonly("dealt_share", &SimulationResult::dealt_share)
      .def_readonly("contribution_ratios", &SimulationResult::contribution_ratios)
      .def_readonly("capital_ratios", &SimulationResult::capital_ratios);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("n", &SweepRow::n)
      .def_readonly("runs", &SweepRow::runs)
      .def_readonly("mean_adequacy", &SweepRow::mean_adequacy)
      .def_readonly("sd_adequacy", &SweepRow::sd_adequacy)
      .def_readonly("mean_dealt_share", &SweepRow::mean_dealt_share);

  py::class_<oracle::CheckRow>(m, "CheckRow")
      .def_readonly("check", &oracle::CheckRow::check)
      .def_readonly("instance_seed", &oracle::CheckRow::instance_seed)
      .def_readonly("passed", &oracle::CheckRow::passed)
      .def_readonly("max_improvement", &oracle::CheckRow::max_improvement)
      .def_readonly("detail", &oracle::CheckRow::detail);

  m.def("effective_profile", &effective_profile, py::arg("profile"));
  m.def("contest_probability", &contest_probability, py::arg("capital"), py::arg("lobbying"),
        py::arg("dealt") = false);
  m.def("lobby_best_response", &lobby_best_response, py::arg("pi"), py::arg("capital"));
  m.def("spending_threshold", &spending_threshold, py::arg("variant"), py::arg("alpha"));
  m.def("bargain_bounds", &bargain_bounds, py::arg("profile"), py::arg("adequacy"),
        py::arg("variant") = Variant::Sequential);

  m.def("solve", [](const Scenario& s) { return solve(validate(s)); }, py::arg("scenario"));
  m.def(
      "heterogeneous_cutoff", [](const Scenario& s) { return heterogeneous_cutoff(validate(s)); },
      py::arg("scenario"));
  m.def(
      "optimal_transfer", [](const Scenario& s) { return optimal_transfer(validate(s)); }, py::arg("scenario"));
  m.def(
      "parse_config", [](const std::string& text) { return parse_config(text).scenario; }, py::arg("text"),
      "Scenario from the text of a config file.");

  m.def("estimate_win_probability", &estimate_win_probability, py::arg("capital"), py::arg("lobbying"),
        py::arg("samples"), py::arg("seed"), py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

  m.def("run_sequential",
        py::overload_cast<const std::vector<double>&, double, double, ContributionConvention>(&run_sequential),
        py::arg("pi"), py::arg("alpha"), py::arg("government_capital"),
        py::arg("convention") = ContributionConvention::EquilibriumState);
  m.def(
      "sweep_population_size",
      [](const std::vector<std::size_t>& n_grid, std::size_t runs, double alpha, double capital_per_group,
         double pi_lo, double pi_hi, std::uint64_t seed, ContributionConvention convention) {
        SimulationConfig c;
        c.alpha = alpha;
        c.capital_per_group = capital_per_group;
        c.pi_lo = pi_lo;
        c.pi_hi = pi_hi;
        c.seed = seed;
        c.convention = convention;
        validate(c);
        py::gil_scoped_release release;
        return sweep_population_size(c, n_grid, runs);
      },
      py::arg("n_grid"), py::arg("runs") = 1, py::arg("alpha") = 3.0, py::arg("capital_per_group") = 1.0,
      py::arg("pi_lo") = 1.0, py::arg("pi_hi") = 11.0, py::arg("seed") = 1,
      py::arg("convention") = ContributionConvention::EquilibriumState);

  m.def("verify", &oracle::run_verification, py::arg("suite") = "all", py::arg("instances") = 200,
        py::arg("seed") = 20240611, py::call_guard<py::gil_scoped_release>());
}
