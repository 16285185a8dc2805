#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mos::cli {

namespace {

double positive_number(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) throw ConfigError("missing numeric field '" + key + "'");
    const double v = j[key].get<double>();
    if (!std::isfinite(v) || v <= 0) throw ConfigError("field '" + key + "' must be positive and finite");
    return v;
}

std::vector<double> coefficient_list(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) return {0.0};
    if (!j[key].is_array() || j[key].empty()) throw ConfigError("'" + key + "' must be a nonempty array");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ConfigError("'" + key + "' entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Range parse_range(const nlohmann::json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("count"))
        throw ConfigError(what + " range needs min, max and count");
    Range r;
    r.min = positive_number(j, "min");
    r.max = positive_number(j, "max");
    if (!j["count"].is_number_integer()) throw ConfigError(what + " count must be an integer");
    r.count = j["count"].get<int>();
    if (r.count < 1) throw ConfigError(what + " range is empty");
    if (r.max < r.min || (r.count > 1 && r.max == r.min)) throw ConfigError(what + " range is empty");
    return r;
}

nlohmann::json range_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"count", r.count}}; }

}  // namespace

std::vector<double> Range::values() const {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k)
        v[k] = count == 1 ? min : (k == count - 1 ? max : min + (max - min) * k / (count - 1));
    return v;
}

BaseFlow RunConfig::flow() const {
    if (u_coeffs.empty()) return make_profile(profile_name);
    return make_profile(u_coeffs, w_coeffs, profile_name);
}

MicropolarParams RunConfig::effective_params() const {
    return params ? *params : classical_limit(*classical_reynolds);
}

CertificatePolicy parse_policy(const std::string& s) {
    if (s == "as-stated") return CertificatePolicy::as_stated;
    if (s == "conservative") return CertificatePolicy::conservative;
    throw ConfigError("policy must be 'as-stated' or 'conservative', got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("format must be 'csv' or 'json', got '" + s + "'");
}

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig c;

    if (!j.contains("profile")) throw ConfigError("missing 'profile'");
    const auto& prof = j["profile"];
    if (prof.is_string()) {
        c.profile_name = prof.get<std::string>();
    } else if (prof.is_object()) {
        c.profile_name = prof.value("name", std::string("custom"));
        c.u_coeffs = coefficient_list(prof, "u");
        c.w_coeffs = coefficient_list(prof, "w");
    } else {
        throw ConfigError("'profile' must be a name or an object with 'u' and 'w' coefficients");
    }
    try {
        (void)c.flow();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid profile: ") + e.what());
    }

    const bool has_params = j.contains("params");
    const bool has_classical = j.contains("classical");
    if (has_params == has_classical) throw ConfigError("exactly one of 'params' and 'classical' is required");
    if (has_params) {
        const auto& p = j["params"];
        if (!p.is_object()) throw ConfigError("'params' must be an object");
        c.params = MicropolarParams{positive_number(p, "r0"), positive_number(p, "rk"), positive_number(p, "rmu"),
                                    positive_number(p, "rnu"), positive_number(p, "rgamma")};
    } else {
        if (!j["classical"].is_object()) throw ConfigError("'classical' must be an object");
        c.classical_reynolds = positive_number(j["classical"], "reynolds");
    }

    if (!j.contains("alpha")) throw ConfigError("missing 'alpha'");
    const auto& a = j["alpha"];
    if (a.is_array()) {
        if (a.empty()) throw ConfigError("alpha list is empty");
        for (const auto& v : a) {
            if (!v.is_number() || !(v.get<double>() > 0) || !std::isfinite(v.get<double>()))
                throw ConfigError("alpha values must be positive numbers");
            c.alphas.push_back(v.get<double>());
        }
    } else if (a.is_number()) {
        if (!(a.get<double>() > 0)) throw ConfigError("alpha must be positive");
        c.alphas.push_back(a.get<double>());
    } else {
        c.alpha_range = parse_range(a, "alpha");
        c.alphas = c.alpha_range->values();
    }

    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw ConfigError("'n' must be an integer");
        c.n = j["n"].get<int>();
    }
    if (c.n < 16) throw ConfigError("'n' must be at least 16");

    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
        c.cutoffs.modulus_cutoff = t.value("modulus_cutoff", c.cutoffs.modulus_cutoff);
        c.cutoffs.residual_cutoff = t.value("residual_cutoff", c.cutoffs.residual_cutoff);
        c.cutoffs.bc_tolerance = t.value("bc_tolerance", c.cutoffs.bc_tolerance);
        c.cutoffs.refine_delta = t.value("refine_delta", c.cutoffs.refine_delta);
        c.cutoffs.refine_extra = t.value("refine_extra", c.cutoffs.refine_extra);
        c.cutoffs.refine = t.value("refine", c.cutoffs.refine);
        c.bounds.identity_tol = t.value("identity_tol", c.bounds.identity_tol);
        c.bounds.bound_tol = t.value("bound_tol", c.bounds.bound_tol);
        c.bounds.interval_tol = t.value("interval_tol", c.bounds.interval_tol);
    }
    if (j.contains("policy")) c.bounds.policy = parse_policy(j["policy"].get<std::string>());
    if (j.contains("identity_form")) {
        const std::string f = j["identity_form"].get<std::string>();
        if (f == "consistent")
            c.bounds.form = IdentityForm::consistent;
        else if (f == "literal")
            c.bounds.form = IdentityForm::literal;
        else
            throw ConfigError("identity_form must be 'consistent' or 'literal'");
    }
    if (j.contains("beam_root")) c.bounds.beam_root = positive_number(j, "beam_root");
    c.with_spectrum = j.value("with_spectrum", false);

    if (j.contains("region")) {
        const auto& r = j["region"];
        if (!r.is_object() || !r.contains("rq1")) throw ConfigError("'region' needs an 'rq1' range");
        RegionSpec spec;
        spec.rq1 = parse_range(r["rq1"], "rq1");
        spec.with_spectrum = r.value("with_spectrum", false);
        c.region = spec;
    }

    if (j.contains("output")) {
        const auto& o = j["output"];
        c.out_path = o.value("path", std::string());
        if (o.contains("format")) c.format = parse_format(o["format"].get<std::string>());
    }
    return c;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    if (u_coeffs.empty())
        j["profile"] = profile_name;
    else
        j["profile"] = {{"name", profile_name}, {"u", u_coeffs}, {"w", w_coeffs}};
    if (params)
        j["params"] = {{"r0", params->r0}, {"rk", params->rk}, {"rmu", params->rmu}, {"rnu", params->rnu},
                       {"rgamma", params->rgamma}};
    else
        j["classical"] = {{"reynolds", *classical_reynolds}};
    if (alpha_range)
        j["alpha"] = range_json(*alpha_range);
    else
        j["alpha"] = alphas;
    j["n"] = n;
    j["tolerances"] = {{"modulus_cutoff", cutoffs.modulus_cutoff}, {"residual_cutoff", cutoffs.residual_cutoff},
                       {"bc_tolerance", cutoffs.bc_tolerance},     {"refine_delta", cutoffs.refine_delta},
                       {"refine_extra", cutoffs.refine_extra},     {"refine", cutoffs.refine},
                       {"identity_tol", bounds.identity_tol},      {"bound_tol", bounds.bound_tol},
                       {"interval_tol", bounds.interval_tol}};
    j["policy"] = bounds.policy == CertificatePolicy::as_stated ? "as-stated" : "conservative";
    j["identity_form"] = bounds.form == IdentityForm::consistent ? "consistent" : "literal";
    j["beam_root"] = bounds.beam_root;
    j["with_spectrum"] = with_spectrum;
    if (region)
        j["region"] = {{"rq1", range_json(region->rq1)}, {"with_spectrum", region->with_spectrum}};
    j["output"] = {{"format", format == OutputFormat::csv ? "csv" : "json"}};
    return j;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace mos::cli
