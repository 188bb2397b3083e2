#include "rislink/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

using nlohmann::json;

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double threshold_bits_from_db(double db)
{
    return std::log2(1.0 + db_to_linear(db));
}

FadingModel parse_model(const json& j, const std::string& where)
{
    if (!j.is_object() || !j.contains("model"))
        throw ParamError(where + ": hop needs a \"model\" object");
    std::string name = j.at("model").get<std::string>();
    auto need = [&](const char* key) {
        if (!j.contains(key))
            throw ParamError(where + ": model " + name + " needs \"" + key + "\"");
        return j.at(key).get<double>();
    };
    FadingModel m;
    if (name == "rayleigh")
        m = Rayleigh{};
    else if (name == "nakagami")
        m = Nakagami{need("m")};
    else if (name == "alpha-mu")
        m = AlphaMu{need("alpha"), need("mu")};
    else if (name == "fisher-f")
        m = FisherF{need("m"), need("ms")};
    else if (name == "generalized-k")
        m = GeneralizedK{need("m"), need("k")};
    else
        throw ParamError(where + ": unknown model \"" + name + "\"");
    try {
        check_params(m);
    } catch (const ParamError& e) {
        throw ParamError(where + ": " + e.what());
    }
    return m;
}

Curve parse_curve(const json& j, size_t index, ScenarioKind kind, const std::string& metric)
{
    std::string where = "curves[" + std::to_string(index) + "]";
    Curve c;
    c.label = j.value("label", "curve" + std::to_string(index));
    int elements = j.value("elements", 1);
    if (elements < 1)
        throw ParamError(where + ": elements must be >= 1");
    if (!j.contains("hops") || !j.at("hops").is_array() || j.at("hops").empty())
        throw ParamError(where + ": nonempty \"hops\" array required");
    std::vector<HopPair> hops;
    for (size_t i = 0; i < j.at("hops").size(); ++i) {
        const json& h = j.at("hops")[i];
        std::string hw = where + ".hops[" + std::to_string(i) + "]";
        if (!h.contains("h") || !h.contains("g"))
            throw ParamError(hw + ": needs \"h\" and \"g\" models");
        hops.push_back({parse_model(h.at("h"), hw), parse_model(h.at("g"), hw)});
    }
    c.link.n_elements = elements;
    for (int i = 0; i < elements; ++i)
        c.link.hops.push_back(hops[i % hops.size()]); // short lists cycle
    c.link.avg_snr = db_to_linear(j.value("snr_db", 0.0));

    bool spatial = kind == ScenarioKind::spatial_outage ||
                   (kind == ScenarioKind::compare && metric == "spatial-outage");
    if (spatial) {
        if (!j.contains("scene"))
            throw ParamError(where + ": spatial scenario needs \"scene\"");
        const json& s = j.at("scene");
        DeploymentScene scene;
        scene.m_ris = s.value("m_ris", 1);
        scene.radius = s.value("radius", 1.0);
        scene.bs_distance = s.value("bs_distance", 1.0);
        scene.pathloss_exp = s.value("pathloss_exp", 2.0);
        scene.link_template = c.link;
        if (scene.m_ris < 1 || !(scene.radius > 0.0) || !(scene.bs_distance > 0.0) ||
            !(scene.pathloss_exp > 0.0))
            throw ParamError(where + ".scene: bad geometry");
        c.scene = scene;
    }
    return c;
}

std::string method_name(MultiMethod m)
{
    return m == MultiMethod::nested_quadrature ? "nested-quadrature" : "randomized-contour";
}

struct Row {
    std::string label;
    double x;
    std::vector<std::pair<std::string, std::string>> cells; // column -> text
};

std::string fmt_or_empty(double v, bool present)
{
    return present ? format_csv_field(v) : std::string();
}

struct RowOutcome {
    bool numerical_failure = false;
    bool z_failure = false;
};

// One sweep point on one curve; fills cells and reports failures.
RowOutcome compute_row(const Scenario& s, const Curve& curve, double x, Row& row)
{
    RowOutcome outcome;
    std::string metric = s.kind == ScenarioKind::compare ? s.compare_metric : std::string();
    bool want_outage = s.kind == ScenarioKind::link_outage || metric == "outage";
    bool want_capacity = s.kind == ScenarioKind::link_capacity || metric == "capacity";
    bool want_spatial = s.kind == ScenarioKind::spatial_outage || metric == "spatial-outage";

    RisLink link = curve.link;
    double bits = threshold_bits_from_db(s.threshold_db);
    if (s.sweep.variable == "snr_db")
        link.avg_snr = db_to_linear(x);
    else
        bits = threshold_bits_from_db(x);
    OutageQuery q{bits};

    row.cells.emplace_back("snr_db",
                           format_csv_field(10.0 * std::log10(link.avg_snr)));
    row.cells.emplace_back("threshold_bits", format_csv_field(bits));

    double analytic = 0.0, err = 0.0;
    std::string method;
    bool have_analytic = false;
    double upper = 0.0, lower = 0.0;
    bool have_upper = false, have_lower = false;

    try {
        if (want_outage) {
            try {
                if (link.n_elements == 1) {
                    EvalResult r = outage_n1(link, q);
                    analytic = r.value;
                    err = r.err;
                    method = "contour";
                } else {
                    MultiEvalResult r = outage_exact(link, q);
                    analytic = r.value;
                    err = r.err;
                    method = method_name(r.method);
                }
                have_analytic = true;
            } catch (const DimensionLimit&) {
                // too many coupled contours: report the bracket instead
                EvalResult ub = outage_upper(link, q);
                analytic = ub.value;
                err = ub.err;
                method = "bounds";
                have_analytic = true;
            }
            EvalResult ub = outage_upper(link, q);
            upper = ub.value;
            have_upper = true;
            try {
                lower = outage_lower_asymptotic(link, q);
                have_lower = true;
            } catch (const HigherOrderPole&) {
                // no closed-form floor for this pole layout; leave it empty
            }
        } else if (want_capacity) {
            if (link.n_elements == 1) {
                EvalResult r = capacity_n1(link);
                analytic = r.value;
                err = r.err;
                method = "contour";
            } else {
                MultiEvalResult r = capacity_exact(link);
                analytic = r.value;
                err = r.err;
                method = method_name(r.method);
            }
            have_analytic = true;
            if (link.n_elements >= 2) {
                EvalResult lb = capacity_lower(link);
                lower = lb.value;
                have_lower = true;
            }
        } else if (want_spatial) {
            DeploymentScene scene = *curve.scene;
            scene.link_template = link;
            MultiEvalResult r = spatial_outage(scene, q);
            analytic = r.value;
            err = r.err;
            method = method_name(r.method);
            have_analytic = true;
            EvalResult ub = spatial_outage_upper(scene, q);
            upper = ub.value;
            have_upper = true;
            try {
                AsymptoticOutage law = spatial_asymptotic(scene);
                lower = asymptotic_value(law, normalized_threshold(link, q));
                have_lower = true;
            } catch (const HigherOrderPole&) {
            }
        }
    } catch (const Error&) {
        outcome.numerical_failure = true;
        method = "failed";
    }

    row.cells.emplace_back("value", fmt_or_empty(analytic, have_analytic));
    row.cells.emplace_back("err", fmt_or_empty(err, have_analytic));
    row.cells.emplace_back("method", method);
    if (want_outage || want_spatial) {
        row.cells.emplace_back("upper_bound", fmt_or_empty(upper, have_upper));
        row.cells.emplace_back("lower_asymptotic", fmt_or_empty(lower, have_lower));
    }
    if (want_capacity)
        row.cells.emplace_back("lower_bound", fmt_or_empty(lower, have_lower));

    if (s.mc) {
        McEstimate est{0.0, 0.0, 0};
        bool have_mc = false;
        try {
            if (want_outage)
                est = mc_outage(link, q, *s.mc);
            else if (want_capacity)
                est = mc_capacity(link, *s.mc);
            else if (want_spatial) {
                DeploymentScene scene = *curve.scene;
                scene.link_template = link;
                est = mc_spatial_outage(scene, q, *s.mc);
            }
            have_mc = true;
        } catch (const Error&) {
            outcome.numerical_failure = true;
        }
        bool resolved = have_mc && (want_capacity || est.resolved());
        row.cells.emplace_back("mc_mean", fmt_or_empty(est.mean, have_mc));
        row.cells.emplace_back("mc_stderr", fmt_or_empty(est.std_error, have_mc));
        row.cells.emplace_back("mc_trials",
                               have_mc ? std::to_string(est.trials) : std::string());
        row.cells.emplace_back("mc_resolved", have_mc ? (resolved ? "1" : "0") : "");
        std::string ztxt;
        if (have_mc && have_analytic && est.std_error > 0.0 && resolved) {
            double z = (analytic - est.mean) / est.std_error;
            ztxt = format_csv_field(z);
            if (s.kind == ScenarioKind::compare && std::abs(z) > 4.0)
                outcome.z_failure = true;
        }
        row.cells.emplace_back("z_score", ztxt);
    }
    return outcome;
}

int run_rows(const Scenario& s, bool comparing)
{
    if (comparing && !s.mc)
        throw ParamError("compare scenarios need an \"mc\" block");

    std::vector<Row> rows;
    bool any_numerical = false, any_z = false;
    for (const auto& curve : s.curves) {
        for (int i = 0; i < s.sweep.points; ++i) {
            double x = s.sweep.start +
                       (s.sweep.stop - s.sweep.start) * i / (s.sweep.points - 1);
            Row row;
            row.label = curve.label;
            row.x = x;
            RowOutcome oc = compute_row(s, curve, x, row);
            any_numerical = any_numerical || oc.numerical_failure;
            any_z = any_z || oc.z_failure;
            rows.push_back(std::move(row));
        }
    }

    std::ostringstream csv;
    csv << "label," << s.sweep.variable;
    for (const auto& c : rows.front().cells)
        csv << ',' << c.first;
    csv << '\n';
    for (const auto& row : rows) {
        csv << row.label << ',' << format_csv_field(row.x);
        for (const auto& c : row.cells)
            csv << ',' << c.second;
        csv << '\n';
    }

    if (s.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(s.output, std::ios::binary);
        if (!out)
            throw ParamError("cannot open output file " + s.output);
        out << csv.str();
    }
    if (any_numerical)
        return 2;
    if (comparing && any_z)
        return 3;
    return 0;
}

} // namespace

std::string format_csv_field(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParamError("cannot open scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParamError("scenario JSON parse error: " + std::string(e.what()));
    }
    if (!j.is_object() || j.value("rislink_scenario", 0) != 1)
        throw ParamError("top level needs \"rislink_scenario\": 1");

    Scenario s;
    std::string kind = j.value("kind", "");
    if (kind == "link-outage")
        s.kind = ScenarioKind::link_outage;
    else if (kind == "link-capacity")
        s.kind = ScenarioKind::link_capacity;
    else if (kind == "spatial-outage")
        s.kind = ScenarioKind::spatial_outage;
    else if (kind == "compare")
        s.kind = ScenarioKind::compare;
    else
        throw ParamError("kind must be link-outage, link-capacity, spatial-outage or compare");

    s.threshold_db = j.value("threshold_db", 0.0);
    s.compare_metric = j.value("compare_metric", "outage");
    if (s.kind == ScenarioKind::compare && s.compare_metric != "outage" &&
        s.compare_metric != "capacity" && s.compare_metric != "spatial-outage")
        throw ParamError("compare_metric must be outage, capacity or spatial-outage");

    if (!j.contains("sweep"))
        throw ParamError("scenario needs a \"sweep\" block");
    const json& sw = j.at("sweep");
    s.sweep.variable = sw.value("variable", "snr_db");
    if (s.sweep.variable != "snr_db" && s.sweep.variable != "threshold_db")
        throw ParamError("sweep.variable must be snr_db or threshold_db");
    if (!sw.contains("start") || !sw.contains("stop"))
        throw ParamError("sweep needs start and stop");
    s.sweep.start = sw.at("start").get<double>();
    s.sweep.stop = sw.at("stop").get<double>();
    s.sweep.points = sw.value("points", 2);
    if (s.sweep.points < 2)
        throw ParamError("sweep.points must be >= 2");

    if (j.contains("mc")) {
        const json& m = j.at("mc");
        McConfig cfg;
        cfg.trials = m.value("trials", uint64_t(1000000));
        cfg.seed = m.value("seed", uint64_t(1));
        cfg.batch = m.value("batch", uint64_t(65536));
        if (cfg.trials < 1000)
            throw ParamError("mc.trials must be >= 1000");
        if (cfg.batch < 1)
            throw ParamError("mc.batch must be >= 1");
        s.mc = cfg;
    }
    if (s.kind == ScenarioKind::compare && !s.mc)
        throw ParamError("compare scenarios need an \"mc\" block");

    s.output = j.value("output", "");
    if (!j.contains("curves") || !j.at("curves").is_array() || j.at("curves").empty())
        throw ParamError("scenario needs a nonempty \"curves\" array");
    for (size_t i = 0; i < j.at("curves").size(); ++i)
        s.curves.push_back(parse_curve(j.at("curves")[i], i, s.kind, s.compare_metric));
    return s;
}

int run_scenario(const Scenario& s)
{
    return run_rows(s, s.kind == ScenarioKind::compare);
}

int compare_scenario(const Scenario& s)
{
    if (s.kind != ScenarioKind::compare) {
        Scenario copy = s;
        copy.kind = ScenarioKind::compare;
        if (copy.compare_metric == "outage" && s.kind == ScenarioKind::link_capacity)
            copy.compare_metric = "capacity";
        if (copy.compare_metric == "outage" && s.kind == ScenarioKind::spatial_outage)
            copy.compare_metric = "spatial-outage";
        return run_rows(copy, true);
    }
    return run_rows(s, true);
}

} // namespace rislink
