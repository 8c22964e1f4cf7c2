#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gate/bench.hpp"
#include "gate/fit.hpp"
#include "gate/lfdr.hpp"
#include "gate/model.hpp"
#include "gate/procedures.hpp"

namespace gate::io {

using json = nlohmann::ordered_json;

// Input-file errors; messages carry "path:line:" or "path: field" context.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// numeric formatting: locale-proof printf-style %g at fixed significance
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_g(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    std::string s(buf);
    // a hostile LC_NUMERIC can swap the decimal separator; undo it
    for (char& c : s)
        if (c == ',') c = '.';
    return s;
}

inline double parse_double(std::string_view tok, const std::string& where) {
    std::size_t b = 0, e = tok.size();
    while (b < e && (tok[b] == ' ' || tok[b] == '\t')) ++b;
    while (e > b && (tok[e - 1] == ' ' || tok[e - 1] == '\t')) --e;
    double v = 0.0;
    const auto res = std::from_chars(tok.data() + b, tok.data() + e, v);
    if (res.ec != std::errc() || res.ptr != tok.data() + e || b == e)
        throw ParseError(where + ": invalid number '" + std::string(tok) + "'");
    return v;
}

}  // namespace detail

inline std::string fmt17(double x) { return detail::fmt_g(x, 17); }
inline std::string fmt10(double x) { return detail::fmt_g(x, 10); }

// ---------------------------------------------------------------------------
// JSON emission at 17 significant digits
//
// The library serializer prints shortest-round-trip floats; report files are
// pinned to a fixed significance instead so goldens compare bytewise across
// platforms. Objects keep insertion order.
// ---------------------------------------------------------------------------

namespace detail {

inline void dump17(const json& v, std::string& out, int depth, int indent) {
    const std::string pad(static_cast<std::size_t>(depth) * indent, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * indent, ' ');
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += json(it.key()).dump();
                out += ": ";
                dump17(it.value(), out, depth + 1, indent);
            }
            out += '\n';
            out += pad;
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump17(el, out, depth + 1, indent);
            }
            out += '\n';
            out += pad;
            out += ']';
            return;
        }
        case json::value_t::number_float: {
            const double x = v.get<double>();
            if (!std::isfinite(x)) throw NumericError("non-finite value in JSON output");
            out += fmt17(x);
            return;
        }
        default:
            out += v.dump();  // strings, integers, booleans, null
            return;
    }
}

}  // namespace detail

inline std::string dump_json17(const json& v, int indent = 2) {
    std::string out;
    detail::dump17(v, out, 0, indent);
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// file helpers
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::invalid_argument(path + ": write failed");
}

inline json load_json(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// grouped z-score CSV: header group_id,unit_id,z; one row per hypothesis;
// groups ordered by first appearance. RFC-4180 quoting for string fields.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line, const std::string& where) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) throw ParseError(where + ": stray quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError(where + ": unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline model::GroupedObservations parse_grouped_csv(const std::string& text,
                                                    const std::string& path = "<string>") {
    model::GroupedObservations data;
    std::unordered_map<std::string, std::size_t> seen;  // group id -> index, first appearance
    std::size_t lineno = 0;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto fields = detail::split_csv_row(line, where);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"group_id", "unit_id", "z"})
                throw ParseError(where + ": expected header group_id,unit_id,z");
            saw_header = true;
            continue;
        }
        if (fields.size() != 3)
            throw ParseError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(where + ": empty group_id");
        const double z = detail::parse_double(fields[2], where);
        const auto [it, inserted] = seen.emplace(fields[0], data.m());
        const std::size_t gi = it->second;
        if (inserted) data.groups.push_back({fields[0], {}, {}});
        data.groups[gi].units.push_back(fields[1]);
        data.groups[gi].z.push_back(z);
    }
    if (!saw_header) throw ParseError(path + ": empty input, expected header group_id,unit_id,z");
    if (data.m() == 0) throw ParseError(path + ": no data rows");
    data.validate();
    return data;
}

inline model::GroupedObservations read_grouped_csv(const std::string& path) {
    return parse_grouped_csv(read_text_file(path), path);
}

inline std::string grouped_csv_string(const model::GroupedObservations& data) {
    std::string out = "group_id,unit_id,z\n";
    for (const auto& g : data.groups) {
        for (std::size_t j = 0; j < g.z.size(); ++j) {
            const std::string unit =
                j < g.units.size() ? g.units[j] : "u" + std::to_string(j + 1);
            out += detail::csv_quote(g.id);
            out += ',';
            out += detail::csv_quote(unit);
            out += ',';
            out += fmt10(g.z[j]);
            out += '\n';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// model parameters file: {pi1, pi2, weights[], means[], sigma}
// ---------------------------------------------------------------------------

namespace detail {

inline double require_number(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(path + ": field '" + key + "' must be a number");
    return j[key].get<double>();
}

inline std::uint64_t u64_or(const json& j, const char* key, const std::string& path,
                            std::uint64_t dflt) {
    if (!j.contains(key)) return dflt;
    const auto& v = j[key];
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ParseError(path + ": field '" + key + "' must be a nonnegative integer");
}

inline std::vector<double> require_number_array(const json& j, const char* key,
                                                const std::string& path) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(path + ": field '" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& el : j[key]) {
        if (!el.is_number())
            throw ParseError(path + ": field '" + key + "' must hold numbers only");
        out.push_back(el.get<double>());
    }
    return out;
}

}  // namespace detail

inline model::GammParams params_from_json(const json& j, const std::string& path = "<params>") {
    if (!j.is_object()) throw ParseError(path + ": parameters document must be an object");
    model::GammParams p;
    p.pi1 = detail::require_number(j, "pi1", path);
    if (j.contains("pi2") && j["pi2"].is_array())
        p.pi2 = detail::require_number_array(j, "pi2", path);
    else
        p.pi2 = {detail::require_number(j, "pi2", path)};
    p.densities.alt_weights = detail::require_number_array(j, "weights", path);
    p.densities.alt_means = detail::require_number_array(j, "means", path);
    p.densities.alt_sd = detail::require_number(j, "sigma", path);
    try {
        p.densities.validate();
        if (!(p.pi1 > 0.0 && p.pi1 < 1.0)) throw std::invalid_argument("pi1 must lie in (0,1)");
        for (double q : p.pi2)
            if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("pi2 must lie in (0,1)");
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return p;
}

inline model::GammParams read_params_json(const std::string& path) {
    return params_from_json(load_json(path), path);
}

inline json params_to_json(const model::GammParams& p) {
    json j;
    j["pi1"] = p.pi1;
    if (p.pi2.size() == 1)
        j["pi2"] = p.pi2[0];
    else
        j["pi2"] = p.pi2;
    j["weights"] = p.densities.alt_weights;
    j["means"] = p.densities.alt_means;
    j["sigma"] = p.densities.alt_sd;
    return j;
}

// Fit summaries serialize as a superset of the parameters file so a fitted
// model feeds straight back into oracle-mode runs.
inline json summary_to_json(const fit::PosteriorSummary& s, double sigma2) {
    model::GammParams p = fit::params_from_summary(s, sigma2);
    json j = params_to_json(p);
    j["retained"] = s.retained;
    json spread;
    spread["pi1"] = s.chain_spread.empty() ? 0.0 : s.chain_spread[0];
    spread["pi2"] = s.chain_spread.size() > 1 ? s.chain_spread[1] : 0.0;
    j["chain_spread"] = spread;
    return j;
}

// ---------------------------------------------------------------------------
// Gibbs and simulation configuration documents
// ---------------------------------------------------------------------------

// Fields absent from the document keep their value in `cfg`, so callers can
// seed the defaults (the benchmark config passes its reduced sampler budget).
inline fit::GibbsConfig gibbs_config_from_json(const json& j,
                                               const std::string& path = "<config>",
                                               fit::GibbsConfig cfg = {}) {
    if (!j.is_object()) throw ParseError(path + ": config document must be an object");
    const auto num = [&](const char* key, double dflt) {
        return j.contains(key) ? detail::require_number(j, key, path) : dflt;
    };
    const auto idx = [&](const char* key, std::size_t dflt) {
        if (!j.contains(key)) return dflt;
        const double v = detail::require_number(j, key, path);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw ParseError(path + ": field '" + std::string(key) +
                             "' must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    };
    cfg.K = idx("K", cfg.K);
    cfg.sigma2 = num("sigma2", cfg.sigma2);
    cfg.a1 = num("a1", cfg.a1);
    cfg.b1 = num("b1", cfg.b1);
    cfg.a2 = num("a2", cfg.a2);
    cfg.b2 = num("b2", cfg.b2);
    if (j.contains("dirichlet")) cfg.dirichlet = detail::require_number_array(j, "dirichlet", path);
    cfg.sigma_mu2 = num("sigma_mu2", cfg.sigma_mu2);
    cfg.iters = idx("iters", cfg.iters);
    cfg.burn_in = idx("burn_in", cfg.burn_in);
    cfg.thin = idx("thin", cfg.thin);
    cfg.chains = idx("chains", cfg.chains);
    cfg.seed = detail::u64_or(j, "seed", path, cfg.seed);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

inline bench::SimulationConfig sim_config_from_json(const json& j,
                                                    const std::string& path = "<config>") {
    bench::SimulationConfig cfg;
    if (!j.is_object()) throw ParseError(path + ": config document must be an object");
    const auto idx = [&](const char* key, std::size_t dflt) {
        if (!j.contains(key)) return dflt;
        const double v = detail::require_number(j, key, path);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw ParseError(path + ": field '" + std::string(key) +
                             "' must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    };
    const auto num = [&](const char* key, double dflt) {
        return j.contains(key) ? detail::require_number(j, key, path) : dflt;
    };
    cfg.m = idx("m", cfg.m);
    cfg.n = idx("n", cfg.n);
    if (j.contains("pi1_grid")) cfg.pi1_grid = detail::require_number_array(j, "pi1_grid", path);
    cfg.pi2 = num("pi2", cfg.pi2);
    cfg.K = idx("K", cfg.K);
    cfg.alpha = num("alpha", cfg.alpha);
    cfg.eta = num("eta", cfg.eta);
    cfg.replications = idx("replications", cfg.replications);
    if (j.contains("methods")) {
        if (!j["methods"].is_array())
            throw ParseError(path + ": field 'methods' must be an array of method names");
        cfg.methods.clear();
        for (const auto& el : j["methods"]) {
            if (!el.is_string())
                throw ParseError(path + ": field 'methods' must be an array of method names");
            try {
                cfg.methods.push_back(fit::method_from_name(el.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ParseError(path + ": " + e.what());
            }
        }
    }
    cfg.seed = detail::u64_or(j, "seed", path, cfg.seed);
    if (j.contains("data_driven")) {
        if (!j["data_driven"].is_boolean())
            throw ParseError(path + ": field 'data_driven' must be a boolean");
        cfg.data_driven = j["data_driven"].get<bool>();
    }
    if (j.contains("gibbs"))
        cfg.gibbs = gibbs_config_from_json(j["gibbs"], path + ".gibbs", cfg.gibbs);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

inline json sim_config_to_json(const bench::SimulationConfig& cfg) {
    json j;
    j["m"] = cfg.m;
    j["n"] = cfg.n;
    j["pi1_grid"] = cfg.pi1_grid;
    j["pi2"] = cfg.pi2;
    j["K"] = cfg.K;
    j["alpha"] = cfg.alpha;
    j["eta"] = cfg.eta;
    j["replications"] = cfg.replications;
    json methods = json::array();
    for (auto m : cfg.methods) methods.push_back(fit::method_name(m));
    j["methods"] = methods;
    j["seed"] = cfg.seed;
    j["data_driven"] = cfg.data_driven;
    return j;
}

// ---------------------------------------------------------------------------
// report writers
// ---------------------------------------------------------------------------

// Per-run test report: decisions, posterior quantities, and realized
// diagnostics for every hypothesis and group.
inline json test_report(const model::GroupedObservations& data, const model::LfdrTable& table,
                        const procedures::DecisionSet& dec, const model::GammParams& params,
                        fit::Method method, double alpha, double eta, bool fitted) {
    json j;
    j["method"] = fit::method_name(method);
    j["alpha"] = alpha;
    if (method == fit::Method::gate2)
        j["eta"] = eta;
    j["fitted"] = fitted;
    j["groups_total"] = data.m();
    j["hypotheses_total"] = data.total();
    j["parameters"] = params_to_json(params);
    j["rejections_total"] = dec.rejections();

    const bool selective = method == fit::Method::gate2 || method == fit::Method::bb;
    json groups = json::array();
    for (std::size_t i = 0; i < data.m(); ++i) {
        json g;
        g["group_id"] = data.groups[i].id;
        g["n"] = data.n(i);
        g["lfdr_group"] = table.lfdr_group[i];
        g["selected"] = static_cast<bool>(dec.delta_group[i]);
        g["rejections"] = dec.rejections_in(i);
        json units = json::array();
        for (std::size_t j2 = 0; j2 < data.n(i); ++j2) {
            const std::size_t flat = table.index(i, j2);
            json u;
            u["unit_id"] = j2 < data.groups[i].units.size() ? data.groups[i].units[j2]
                                                            : "u" + std::to_string(j2 + 1);
            u["z"] = data.groups[i].z[j2];
            u["lfdr_star"] = table.lfdr_star[flat];
            u["lfdr_cond"] = table.lfdr_cond[flat];
            u["lfdr_hyp"] = table.lfdr_hyp[flat];
            u["rejected"] = static_cast<bool>(dec.delta_hyp[flat]);
            units.push_back(std::move(u));
        }
        g["units"] = std::move(units);
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);

    if (selective) {
        json sel;
        json ids = json::array();
        for (std::size_t i : dec.selected_groups) ids.push_back(data.groups[i].id);
        sel["selected_groups"] = std::move(ids);
        if (method == fit::Method::gate2) {
            sel["eta"] = dec.threshold_info.eta;
            sel["alpha_star"] = dec.threshold_info.alpha_star;
        }
        j["selection"] = std::move(sel);
    }

    json diag;
    diag["pfdr_total"] = procedures::pfdr_total(dec, table);
    diag["pfnr_total"] = procedures::pfnr_total(dec, table);
    diag["pfdr_between"] = procedures::pfdr_between(dec, table);
    if (selective && !dec.selected_groups.empty())
        diag["pfdr_selective"] = procedures::pfdr_selective(dec, table);
    j["diagnostics"] = std::move(diag);
    return j;
}

inline std::string trace_csv_string(const std::vector<std::vector<fit::ParamDraw>>& chains,
                                    const fit::GibbsConfig& cfg) {
    std::string out = "iteration,chain";
    out += ",pi1,pi2";
    for (std::size_t k = 1; k <= cfg.K; ++k) out += ",eta_" + std::to_string(k);
    for (std::size_t k = 1; k <= cfg.K; ++k) out += ",mu_" + std::to_string(k);
    out += '\n';
    for (std::size_t c = 0; c < chains.size(); ++c) {
        for (std::size_t r = 0; r < chains[c].size(); ++r) {
            const auto& d = chains[c][r];
            out += std::to_string(cfg.burn_in + (r + 1) * cfg.thin);
            out += ',';
            out += std::to_string(c + 1);
            out += ',';
            out += fmt10(d.pi1);
            out += ',';
            out += fmt10(d.pi2);
            for (double e : d.eta) {
                out += ',';
                out += fmt10(e);
            }
            for (double mu : d.mu) {
                out += ',';
                out += fmt10(mu);
            }
            out += '\n';
        }
    }
    return out;
}

inline std::string metrics_csv_string(const bench::MetricsReport& report) {
    std::string out =
        "method,pi1,lambda,bayes_fdr,freq_fdr,mean_rejections,mean_true_rejections,"
        "mcse_bayes_fdr,mcse_freq_fdr,mcse_rejections,mcse_true_rejections,"
        "pfdr_between_mean,replications\n";
    for (const auto& c : report.cells) {
        out += c.method;
        for (double v : {c.pi1, c.lambda, c.bayes_fdr, c.freq_fdr, c.mean_rejections,
                         c.mean_true_rejections, c.mcse_bayes_fdr, c.mcse_freq_fdr,
                         c.mcse_rejections, c.mcse_true_rejections, c.pfdr_between_mean}) {
            out += ',';
            out += fmt10(v);
        }
        out += ',';
        out += std::to_string(c.replications);
        out += '\n';
    }
    return out;
}

// Wall-clock deliberately omitted: report files must be byte-stable reruns.
inline json metrics_to_json(const bench::MetricsReport& report) {
    json j;
    j["config"] = sim_config_to_json(report.config);
    json cells = json::array();
    for (const auto& c : report.cells) {
        json cell;
        cell["method"] = c.method;
        cell["pi1"] = c.pi1;
        cell["lambda"] = c.lambda;
        cell["bayes_fdr"] = c.bayes_fdr;
        cell["freq_fdr"] = c.freq_fdr;
        cell["mean_rejections"] = c.mean_rejections;
        cell["mean_true_rejections"] = c.mean_true_rejections;
        cell["mcse_bayes_fdr"] = c.mcse_bayes_fdr;
        cell["mcse_freq_fdr"] = c.mcse_freq_fdr;
        cell["mcse_rejections"] = c.mcse_rejections;
        cell["mcse_true_rejections"] = c.mcse_true_rejections;
        cell["pfdr_between_mean"] = c.pfdr_between_mean;
        cell["replications"] = c.replications;
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

// ---------------------------------------------------------------------------
// minimal JSON-schema checker: type / required / properties / items / enum /
// additionalProperties(boolean). Enough to pin the report contract in tests.
// ---------------------------------------------------------------------------

namespace detail {

inline bool type_matches(const json& doc, const std::string& t) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "string") return doc.is_string();
    if (t == "number") return doc.is_number();
    if (t == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    return false;
}

inline void schema_check(const json& doc, const json& schema, const std::string& at,
                         std::vector<std::string>& errors) {
    if (!schema.is_object()) return;
    if (schema.contains("type")) {
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const auto& t : schema["type"]) ok = ok || type_matches(doc, t.get<std::string>());
        } else {
            ok = type_matches(doc, schema["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(at + ": type mismatch, expected " + schema["type"].dump());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || v == doc;
        if (!ok) errors.push_back(at + ": value not in enum " + schema["enum"].dump());
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema["required"])
                if (!doc.contains(k.get<std::string>()))
                    errors.push_back(at + ": missing required field '" + k.get<std::string>() +
                                     "'");
        const bool sealed = schema.contains("additionalProperties") &&
                            schema["additionalProperties"].is_boolean() &&
                            !schema["additionalProperties"].get<bool>();
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const bool described =
                schema.contains("properties") && schema["properties"].contains(it.key());
            if (described)
                schema_check(it.value(), schema["properties"][it.key()], at + "." + it.key(),
                             errors);
            else if (sealed)
                errors.push_back(at + ": unexpected field '" + it.key() + "'");
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i)
            schema_check(doc[i], schema["items"], at + "[" + std::to_string(i) + "]", errors);
    }
}

}  // namespace detail

inline std::vector<std::string> schema_errors(const json& doc, const json& schema) {
    std::vector<std::string> errors;
    detail::schema_check(doc, schema, "$", errors);
    return errors;
}

}  // namespace gate::io
