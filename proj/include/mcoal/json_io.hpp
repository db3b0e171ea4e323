#pragma once

#include <json.hpp>

#include "mcoal/cdi.hpp"
#include "mcoal/coalescent.hpp"
#include "mcoal/gfvi.hpp"

namespace mcoal {

inline nlohmann::ordered_json trajectory_to_json(const CoalescentTrajectory& traj,
                                                 std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["n"] = traj.n;
    j["seed"] = seed;
    j["initial"] = traj.initial.to_string();
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& [t, pi] : traj.events)
        j["events"].push_back({{"t", t}, {"partition", pi.to_string()}});
    j["absorbed"] = traj.absorbed;
    return j;
}

inline nlohmann::ordered_json state_to_json(const AtomicProbabilityMeasure& z) {
    nlohmann::ordered_json j;
    j["w0"] = z.w0;
    j["atoms"] = nlohmann::ordered_json::array();
    for (const auto& [loc, w] : z.atoms) j["atoms"].push_back({loc, w});
    j["lebesgue"] = z.lebesgue;
    return j;
}

inline nlohmann::ordered_json gfvi_to_json(const GfviTrajectory& traj, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["horizon"] = traj.horizon;
    j["initial"] = state_to_json(traj.initial);
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : traj.events) {
        nlohmann::ordered_json ev;
        ev["t"] = e.time;
        ev["kind"] = e.kind == GfviEvent::Kind::Reproduction ? "repro" : "immig";
        ev["size"] = e.size;
        if (e.kind == GfviEvent::Kind::Reproduction) {
            ev["parent_loc"] = e.parent_at_zero ? 0.0 : e.parent_loc;
        }
        j["events"].push_back(ev);
    }
    j["final"] = state_to_json(traj.final_state);
    return j;
}

inline nlohmann::ordered_json verdict_to_json(const CdiVerdict& v) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(v.verdict);
    j["evidence"] = {{"mass_at_one", v.mass_at_one},
                     {"partial_sum", v.partial_sum},
                     {"psi_integral", v.psi_integral},
                     {"series_depth", v.series_depth},
                     {"integral_cap", v.integral_cap},
                     {"window_increments", v.window_increments},
                     {"note", v.note}};
    return j;
}

}  // namespace mcoal
