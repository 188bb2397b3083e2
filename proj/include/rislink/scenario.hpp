#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rislink/deployment.hpp"
#include "rislink/mcsim.hpp"

namespace rislink {

enum class ScenarioKind { link_outage, link_capacity, spatial_outage, compare };

struct SweepSpec {
    std::string variable; // "snr_db" or "threshold_db"
    double start = 0.0;
    double stop = 0.0;
    int points = 2; // >= 2
};

// One curve = one link or scene; scenarios hold one or more.
struct Curve {
    std::string label;
    RisLink link;
    std::optional<DeploymentScene> scene; // spatial kinds only
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::link_outage;
    double threshold_db = 0.0; // outage threshold, dB over unit rate
    SweepSpec sweep;
    std::vector<Curve> curves;
    std::optional<McConfig> mc;        // compare requires it
    std::string output;                // CSV path; empty = stdout
    std::string compare_metric = "outage"; // compare kind: outage | capacity | spatial-outage
};

// Parse and validate; throws ParamError with a line-oriented diagnostic on
// any malformed field.  Top-level must carry "rislink_scenario": 1.
Scenario load_scenario(const std::string& path);

// Exit statuses shared by CLI and tests: 0 ok, 1 config error, 2 numerical
// failure (partial CSV retained), 3 compare found |z| > 4 on a resolved
// point.
int run_scenario(const Scenario& s);
int compare_scenario(const Scenario& s);

std::string format_csv_field(double v); // %.17g, round-trips exactly

} // namespace rislink
