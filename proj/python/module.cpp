#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcoal/bridge.hpp"
#include "mcoal/cdi.hpp"
#include "mcoal/coalescent.hpp"
#include "mcoal/gfvi.hpp"
#include "mcoal/measure.hpp"
#include "mcoal/paintbox.hpp"
#include "mcoal/partition.hpp"
#include "mcoal/rng.hpp"
#include "mcoal/stats.hpp"

namespace py = pybind11;
using namespace mcoal;

PYBIND11_MODULE(_mcoal, m) {
    m.doc() = "Distinguished coalescents, paint-boxes, and the dual GFVI process";

    py::class_<DistinguishedPartition>(m, "DistinguishedPartition")
        .def_static("singletons", &DistinguishedPartition::singletons)
        .def_static("whole", &DistinguishedPartition::whole)
        .def_static("from_blocks", &DistinguishedPartition::from_blocks)
        .def_static("parse", &DistinguishedPartition::parse)
        .def_property_readonly("n", &DistinguishedPartition::ground_size)
        .def_property_readonly("blocks", &DistinguishedPartition::blocks)
        .def("block_count", &DistinguishedPartition::block_count)
        .def("block_of", &DistinguishedPartition::block_of)
        .def("is_whole", &DistinguishedPartition::is_whole)
        .def("__str__", &DistinguishedPartition::to_string)
        .def("__repr__",
             [](const DistinguishedPartition& p) {
                 return "DistinguishedPartition('" + p.to_string() + "')";
             })
        .def("__eq__", [](const DistinguishedPartition& a,
                          const DistinguishedPartition& b) { return a == b; })
        .def("__lt__", [](const DistinguishedPartition& a,
                          const DistinguishedPartition& b) { return a < b; })
        .def("__hash__",
             [](const DistinguishedPartition& p) { return py::hash(py::str(p.to_string())); });

    m.def("coag", &coag);
    m.def("restrict_to", &restrict_to);
    m.def("compatibility_check", &compatibility_check);
    m.def("empirical_frequencies", &empirical_frequencies);
    m.def("enumerate_partitions", &enumerate_partitions);

    py::class_<RandomSource>(m, "RandomSource")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
        .def("uniform", [](RandomSource& r) { return r.uniform(); });

    py::class_<DistinguishedMassPartition>(m, "DistinguishedMassPartition")
        .def(py::init<double, std::vector<double>>(), py::arg("s0"), py::arg("tail"))
        .def_static("parse", &DistinguishedMassPartition::parse)
        .def_property_readonly("s0", &DistinguishedMassPartition::s0)
        .def_property_readonly("tail", &DistinguishedMassPartition::tail)
        .def_property_readonly("dust", &DistinguishedMassPartition::dust)
        .def("__str__", &DistinguishedMassPartition::to_string);

    m.def("sample_paintbox", &sample_paintbox);
    m.def("sample_paintbox_intervals", &sample_paintbox_intervals);
    m.def("singleton_probability", &singleton_probability);
    m.def("zero_singleton_probability", &zero_singleton_probability);

    py::class_<BoundedMeasure>(m, "BoundedMeasure")
        .def_static("parse", &BoundedMeasure::parse)
        .def_static("zero", &BoundedMeasure::zero)
        .def_static("dirac_at_zero", &BoundedMeasure::dirac_at_zero)
        .def_static("dirac", &BoundedMeasure::dirac)
        .def_static("beta", &BoundedMeasure::beta)
        .def_static("uniform", &BoundedMeasure::uniform)
        .def("total_mass", &BoundedMeasure::total_mass)
        .def("mass_at_zero", &BoundedMeasure::mass_at_zero)
        .def("mass_at_one", &BoundedMeasure::mass_at_one)
        .def("infinite_mass", &BoundedMeasure::infinite_mass)
        .def("__str__", &BoundedMeasure::to_string);

    py::class_<MParams>(m, "MParams")
        .def(py::init([](const BoundedMeasure& l0, const BoundedMeasure& l1) {
                 return MParams{l0, l1};
             }),
             py::arg("lambda0"), py::arg("lambda1"))
        .def_readwrite("lambda0", &MParams::lambda0)
        .def_readwrite("lambda1", &MParams::lambda1);

    m.def("lambda_rate", &lambda_rate);
    m.def("r_rate", &r_rate);
    m.def("nu_measure", &nu_measure);

    m.def("phi1", &phi1);
    m.def("phi", &phi);
    m.def("psi", &psi);
    m.def("dust_laplace_exponent", &dust_laplace_exponent);

    py::class_<CdiOptions>(m, "CdiOptions")
        .def(py::init<>())
        .def_readwrite("series_depth", &CdiOptions::series_depth)
        .def_readwrite("integral_cap", &CdiOptions::integral_cap)
        .def_readwrite("windows", &CdiOptions::windows);
    py::class_<CdiVerdict>(m, "CdiVerdict")
        .def_property_readonly("verdict",
                               [](const CdiVerdict& v) { return to_string(v.verdict); })
        .def_readonly("mass_at_one", &CdiVerdict::mass_at_one)
        .def_readonly("partial_sum", &CdiVerdict::partial_sum)
        .def_readonly("psi_integral", &CdiVerdict::psi_integral)
        .def_readonly("window_increments", &CdiVerdict::window_increments)
        .def_readonly("note", &CdiVerdict::note);
    m.def("classify_cdi", &classify_cdi, py::arg("m"), py::arg("opts") = CdiOptions{});

    py::class_<FixationBound>(m, "FixationBound")
        .def_readonly("partial_sum", &FixationBound::partial_sum)
        .def_readonly("tail_estimate", &FixationBound::tail_estimate)
        .def_readonly("tail_controlled", &FixationBound::tail_controlled)
        .def("bound", &FixationBound::bound);
    m.def("fixation_bound", &fixation_bound, py::arg("m"), py::arg("depth") = 10000);

    py::class_<CoalescentTrajectory>(m, "CoalescentTrajectory")
        .def_readonly("n", &CoalescentTrajectory::n)
        .def_readonly("initial", &CoalescentTrajectory::initial)
        .def_readonly("events", &CoalescentTrajectory::events)
        .def_readonly("absorbed", &CoalescentTrajectory::absorbed)
        .def("state_at", &CoalescentTrajectory::state_at)
        .def("final_state", &CoalescentTrajectory::final_state);
    m.def("simulate_m_coalescent", &simulate_m_coalescent);
    m.def("simulate_simple_poissonian", &simulate_simple_poissonian);
    m.def("block_count_path", &block_count_path);
    m.def("fixation_time", &fixation_time);
    m.def("generator_apply", &generator_apply);

    py::class_<DistinguishedBridge>(m, "DistinguishedBridge")
        .def(py::init(&validate_bridge), py::arg("y"), py::arg("x"), py::arg("v"))
        .def_readonly("y", &DistinguishedBridge::y)
        .def_readonly("x", &DistinguishedBridge::x)
        .def_readonly("v", &DistinguishedBridge::v)
        .def("eval", &DistinguishedBridge::eval)
        .def("inverse", &DistinguishedBridge::inverse);
    py::class_<CompositeBridge>(m, "CompositeBridge")
        .def(py::init([](std::vector<DistinguishedBridge> fs) {
                 return CompositeBridge{std::move(fs)};
             }),
             py::arg("factors"))
        .def_readonly("factors", &CompositeBridge::factors)
        .def("eval", &CompositeBridge::eval)
        .def("inverse", &CompositeBridge::inverse);
    m.def("partition_from_bridge", &partition_from_bridge);
    py::class_<ComposeCheckResult>(m, "ComposeCheckResult")
        .def_readonly("tv_distance", &ComposeCheckResult::tv_distance);
    m.def("compose_check", &compose_check);
    m.def("simulate_flow", &simulate_flow);

    py::class_<AtomicProbabilityMeasure>(m, "AtomicProbabilityMeasure")
        .def(py::init<>())
        .def_static("uniform", &AtomicProbabilityMeasure::uniform)
        .def_static("delta_zero", &AtomicProbabilityMeasure::delta_zero)
        .def_readwrite("w0", &AtomicProbabilityMeasure::w0)
        .def_readwrite("atoms", &AtomicProbabilityMeasure::atoms)
        .def_readwrite("lebesgue", &AtomicProbabilityMeasure::lebesgue)
        .def("total_mass", &AtomicProbabilityMeasure::total_mass)
        .def("mean", &AtomicProbabilityMeasure::mean);
    py::class_<GfviTrajectory>(m, "GfviTrajectory")
        .def_readonly("initial", &GfviTrajectory::initial)
        .def_readonly("final_state", &GfviTrajectory::final_state)
        .def("state_at", &GfviTrajectory::state_at)
        .def_property_readonly("event_count",
                               [](const GfviTrajectory& t) { return t.events.size(); });
    m.def("simulate_gfvi", &simulate_gfvi);
    m.def("moment_functional", &moment_functional);
    m.def("gfvi_generator_apply", &gfvi_generator_apply);
    m.def("duality_functional", &duality_functional);

    py::class_<DualityReport>(m, "DualityReport")
        .def_readonly("lhs_mean", &DualityReport::lhs_mean)
        .def_readonly("lhs_se", &DualityReport::lhs_se)
        .def_readonly("rhs_mean", &DualityReport::rhs_mean)
        .def_readonly("rhs_se", &DualityReport::rhs_se)
        .def_readonly("z_score", &DualityReport::z_score);
    m.def("duality_check", &duality_check);
}
