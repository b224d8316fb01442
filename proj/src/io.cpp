#include "hiod/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hiod::io {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw ConfigError(path.string() + ": " + err.what());
    }
    return j;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& context) {
    if (!j.is_object()) {
        throw ConfigError(context + ": expected an object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(context + ": unknown field \"" + item.key() + "\"");
        }
    }
}

double require_number(const json& j, const char* key, const std::string& context) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(context + ": missing or non-numeric field \"" + key + "\"");
    }
    return j.at(key).get<double>();
}

void check_schema_version(const json& j, const std::string& context) {
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != kSchemaVersion) {
        throw ConfigError(context + ": schema_version must be " +
                          std::to_string(kSchemaVersion));
    }
}

Scenario scenario_from_json(const json& j, const std::string& context) {
    check_keys(j,
               {"schema_version", "body", "elements", "sample", "noise_sigma_deg", "seed"},
               context);
    Scenario sc;

    if (!j.contains("body") || !j.contains("elements") || !j.contains("sample")) {
        throw ConfigError(context + ": \"body\", \"elements\" and \"sample\" are required");
    }

    const json& body = j.at("body");
    check_keys(body, {"mu_km3_s2"}, context + ".body");
    sc.body.mu = require_number(body, "mu_km3_s2", context + ".body");

    const json& el = j.at("elements");
    check_keys(el, {"a_km", "e", "inc_deg", "raan_deg", "argp_deg"}, context + ".elements");
    sc.elements.a = require_number(el, "a_km", context + ".elements");
    sc.elements.e = require_number(el, "e", context + ".elements");
    sc.elements.inc = require_number(el, "inc_deg", context + ".elements") * kDegToRad;
    sc.elements.raan = require_number(el, "raan_deg", context + ".elements") * kDegToRad;
    sc.elements.argp = require_number(el, "argp_deg", context + ".elements") * kDegToRad;

    const json& sample = j.at("sample");
    check_keys(sample, {"true_anomalies_deg", "times_s"}, context + ".sample");
    if (sample.contains("true_anomalies_deg") == sample.contains("times_s")) {
        throw ConfigError(context +
                          ".sample: exactly one of \"true_anomalies_deg\"/\"times_s\" required");
    }
    const char* key = sample.contains("true_anomalies_deg") ? "true_anomalies_deg" : "times_s";
    const json& arr = sample.at(key);
    if (!arr.is_array() || arr.empty()) {
        throw ConfigError(context + ".sample." + key + ": non-empty array required");
    }
    auto& dst =
        sample.contains("true_anomalies_deg") ? sc.true_anomalies_deg : sc.times_s;
    for (const auto& v : arr) {
        if (!v.is_number()) {
            throw ConfigError(context + ".sample." + key + ": numeric entries required");
        }
        dst.push_back(v.get<double>());
    }

    if (j.contains("noise_sigma_deg")) {
        sc.noise_sigma_deg = require_number(j, "noise_sigma_deg", context);
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
            throw ConfigError(context + ": \"seed\" must be an integer");
        }
        sc.seed = j.at("seed").get<std::uint64_t>();
    }

    try {
        validate(sc);
    } catch (const std::exception& err) {
        throw ConfigError(context + ": " + err.what());
    }
    return sc;
}

}  // namespace

std::string observations_to_csv(std::span<const HeadingObservation> obs) {
    std::string out = "t_sec,sx,sy,sz\n";
    for (const auto& o : obs) {
        out += fmt(o.t) + "," + fmt(o.s.x()) + "," + fmt(o.s.y()) + "," + fmt(o.s.z()) + "\n";
    }
    return out;
}

void write_observations_csv(const std::filesystem::path& path,
                            std::span<const HeadingObservation> obs) {
    write_text(path, observations_to_csv(obs));
}

std::vector<HeadingObservation> read_observations_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "t_sec,sx,sy,sz") {
        throw ConfigError(path.string() + ": expected header \"t_sec,sx,sy,sz\"");
    }
    std::vector<HeadingObservation> obs;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        double vals[4];
        char comma = ',';
        ss >> vals[0];
        for (int i = 1; i < 4 && ss; ++i) {
            ss >> comma >> vals[i];
        }
        if (!ss || comma != ',') {
            throw ConfigError(path.string() + ": malformed row " + std::to_string(row));
        }
        const Vec3 s(vals[1], vals[2], vals[3]);
        if (std::abs(s.norm() - 1.0) > 1e-6) {
            throw ConfigError(path.string() + ": row " + std::to_string(row) +
                              " heading is not unit-norm (|s| = " + fmt(s.norm(), "%.9g") + ")");
        }
        obs.push_back(make_observation(s, vals[0]));
    }
    return obs;
}

nlohmann::json solution_to_json(const SolveReport& report, double mu) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["mu_km3_s2"] = mu;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["residual_s2"] = report.residual_history.back();
    j["plane_residual"] = report.plane_residual;
    j["R_km_s"] = report.hodograph.R;
    j["c_km_s"] = {report.hodograph.c.x(), report.hodograph.c.y(), report.hodograph.c.z()};
    j["w_hat"] = {report.hodograph.w_hat.x(), report.hodograph.w_hat.y(),
                  report.hodograph.w_hat.z()};
    j["c_prime_km_s"] = {report.x_star.c1, report.x_star.c2};
    json el;
    el["a_km"] = report.elements.a;
    el["e"] = report.elements.e;
    el["inc_deg"] = report.elements.inc * kRadToDeg;
    el["raan_deg"] = report.elements.raan * kRadToDeg;
    el["argp_deg"] = report.elements.argp * kRadToDeg;
    el["raan_defined"] = report.elements.raan_defined;
    el["argp_defined"] = report.elements.argp_defined;
    j["elements"] = el;
    return j;
}

void write_solution_json(const std::filesystem::path& path, const SolveReport& report,
                         double mu) {
    write_text(path, solution_to_json(report, mu).dump(2) + "\n");
}

Scenario read_scenario_config(const std::filesystem::path& path) {
    const json j = load_json(path);
    check_schema_version(j, path.string());
    return scenario_from_json(j, path.string());
}

MonteCarloRun read_montecarlo_config(const std::filesystem::path& path) {
    const json j = load_json(path);
    const std::string context = path.string();
    check_schema_version(j, context);
    check_keys(j,
               {"schema_version", "scenarios", "trials", "noise_levels_deg", "master_seed",
                "threads"},
               context);

    MonteCarloRun run;
    if (!j.contains("scenarios") || !j.at("scenarios").is_array() ||
        j.at("scenarios").empty()) {
        throw ConfigError(context + ": \"scenarios\" must be a non-empty array");
    }
    int idx = 0;
    for (const auto& sj : j.at("scenarios")) {
        json with_version = sj;
        with_version["schema_version"] = kSchemaVersion;
        run.scenarios.push_back(scenario_from_json(
            with_version, context + ".scenarios[" + std::to_string(idx) + "]"));
        ++idx;
    }
    if (!j.contains("trials") || !j.at("trials").is_number_integer()) {
        throw ConfigError(context + ": integer \"trials\" required");
    }
    run.trials = j.at("trials").get<int>();
    if (run.trials < 1) {
        throw ConfigError(context + ": \"trials\" must be >= 1");
    }
    if (!j.contains("noise_levels_deg") || !j.at("noise_levels_deg").is_array() ||
        j.at("noise_levels_deg").empty()) {
        throw ConfigError(context + ": \"noise_levels_deg\" must be a non-empty array");
    }
    for (const auto& v : j.at("noise_levels_deg")) {
        if (!v.is_number() || v.get<double>() < 0.0) {
            throw ConfigError(context + ": noise levels must be numbers >= 0");
        }
        run.noise_levels_deg.push_back(v.get<double>());
    }
    if (j.contains("master_seed")) {
        run.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    if (j.contains("threads")) {
        run.threads = j.at("threads").get<int>();
    }
    return run;
}

std::string summary_to_csv(std::span<const McSummaryRow> rows) {
    std::string out =
        "observations,noise_deg,trials,a_error_sigma_km,e_error_sigma,failures,"
        "a_error_mean_km,a_error_std_km,e_error_mean,e_error_std\n";
    for (const auto& r : rows) {
        out += std::to_string(r.observations) + "," + fmt(r.noise_deg, "%.9g") + "," +
               std::to_string(r.trials) + "," + fmt(r.a_error_sigma, "%.9g") + "," +
               fmt(r.e_error_sigma, "%.9g") + "," + std::to_string(r.failures) + "," +
               fmt(r.a_error_mean, "%.9g") + "," + fmt(r.a_error_std, "%.9g") + "," +
               fmt(r.e_error_mean, "%.9g") + "," + fmt(r.e_error_std, "%.9g") + "\n";
    }
    return out;
}

std::vector<McSummaryRow> parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("summary CSV: empty input");
    }
    std::vector<McSummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) {
            throw ConfigError("summary CSV: malformed row \"" + line + "\"");
        }
        McSummaryRow r;
        r.observations = std::stoi(fields[0]);
        r.noise_deg = std::stod(fields[1]);
        r.trials = std::stoi(fields[2]);
        r.a_error_sigma = std::stod(fields[3]);
        r.e_error_sigma = std::stod(fields[4]);
        r.failures = std::stoi(fields[5]);
        r.a_error_mean = std::stod(fields[6]);
        r.a_error_std = std::stod(fields[7]);
        r.e_error_mean = std::stod(fields[8]);
        r.e_error_std = std::stod(fields[9]);
        rows.push_back(r);
    }
    return rows;
}

std::string trials_to_csv(std::span<const McResult> results) {
    std::string out = "observations,noise_deg,trial,a_error_km,e_error,converged\n";
    for (const auto& res : results) {
        for (const auto& t : res.trials) {
            out += std::to_string(res.observations) + "," + fmt(t.noise_deg, "%.9g") + "," +
                   std::to_string(t.trial) + "," + fmt(t.a_err, "%.9g") + "," +
                   fmt(t.e_err, "%.9g") + "," + (t.converged ? "1" : "0") + "\n";
        }
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw ConfigError("failed writing " + path.string());
    }
}

}  // namespace hiod::io
