#include "sonoqed/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sonoqed/csv.hpp"
#include "sonoqed/errors.hpp"
#include "sonoqed/units.hpp"

namespace sonoqed {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> k{
        "n_gas_in",  "n_gas_out", "n_liquid",  "radius_nm",  "cutoff_nm", "k_obs_r",      "t0_fs",
        "model",     "lmax",      "tol",       "l_tail_tol", "grid_points", "output_window", "target",
        "n_out_min", "n_out_max", "output",    "threads",    "max_refinements"};
    return k;
}

double to_number(const std::string& key, const std::string& v) {
    double d = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    if (!v.empty() && *b == '+') ++b;
    auto r = std::from_chars(b, e, d);
    if (r.ec != std::errc() || r.ptr != e || !std::isfinite(d))
        throw ValidationError(key, "expected a number, got '" + v + "'");
    return d;
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_number(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw ValidationError(key, "expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

void require(bool ok, const std::string& key, const std::string& range, double got) {
    if (!ok) throw ValidationError(key, "must be " + range + ", got " + format_double(got));
}

} // namespace

std::string canonical_key(const std::string& key) {
    std::string k;
    for (char c : trim(key)) k += (c == '-') ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (k == "n_in") return "n_gas_in";
    if (k == "n_out") return "n_gas_out";
    if (k == "l_max") return "lmax";
    if (k == "quad_rel_tol") return "tol";
    return k;
}

KeyValues parse_key_values(const std::string& text, const std::string& source) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(source + ":" + std::to_string(n), "expected 'key = value'");
        const std::string key = canonical_key(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key)) throw ValidationError(key, "unknown key in " + source);
        kv[key] = value;
    }
    return kv;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_key_values(ss.str(), path);
}

KeyValues merge(const KeyValues& base, const KeyValues& over) {
    KeyValues m = base;
    for (const auto& [k, v] : over) m[k] = v;
    return m;
}

double effective_k_obs_r(const RunConfig& c) {
    if (c.k_obs_r) return *c.k_obs_r;
    if (c.cutoff_nm) return units::two_pi * c.radius_nm / *c.cutoff_nm;
    return kDefaultKobsR;
}

BubbleGeometry geometry_for(const RunConfig& c, double n_out) {
    return build_geometry_from_kr(units::nm_to_m(c.radius_nm), c.n_liquid, effective_k_obs_r(c), n_out);
}

RunConfig resolve(const std::string& command, const KeyValues& merged) {
    RunConfig c;
    c.command = command;
    for (const auto& [k, v] : merged)
        if (!known_keys().count(k)) throw ValidationError(k, "unknown parameter");
    auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = merged.find(k);
        if (it == merged.end() || it->second.empty()) return std::nullopt;
        return it->second;
    };

    if (auto v = get("n_gas_in")) c.n_gas_in = to_number("n_gas_in", *v);
    if (auto v = get("n_gas_out")) c.n_gas_out = to_number("n_gas_out", *v);
    if (auto v = get("n_liquid")) c.n_liquid = to_number("n_liquid", *v);
    if (auto v = get("radius_nm")) c.radius_nm = to_number("radius_nm", *v);
    if (auto v = get("cutoff_nm")) c.cutoff_nm = to_number("cutoff_nm", *v);
    if (auto v = get("k_obs_r")) c.k_obs_r = to_number("k_obs_r", *v);
    if (auto v = get("t0_fs")) c.t0_fs = to_number("t0_fs", *v);
    if (auto v = get("tol")) c.finite.quad_rel_tol = to_number("tol", *v);
    if (auto v = get("l_tail_tol")) c.finite.l_tail_tol = to_number("l_tail_tol", *v);
    if (auto v = get("grid_points")) c.finite.grid_points = to_int("grid_points", *v);
    if (auto v = get("output_window")) c.finite.output_window = to_number("output_window", *v);
    if (auto v = get("max_refinements")) c.finite.max_refinements = to_int("max_refinements", *v);
    if (auto v = get("lmax")) {
        std::string s = *v;
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (s != "auto") c.finite.l_max = to_int("lmax", *v);
    }
    if (auto v = get("target")) c.target = to_number("target", *v);
    if (auto v = get("n_out_min")) c.n_out_min = to_number("n_out_min", *v);
    if (auto v = get("n_out_max")) c.n_out_max = to_number("n_out_max", *v);
    if (auto v = get("threads")) c.threads = to_int("threads", *v);
    if (auto v = get("output")) c.output = *v;

    c.model = (command == "totals") ? Model::infinite : Model::both;
    if (auto v = get("model")) {
        if (*v == "infinite")
            c.model = Model::infinite;
        else if (*v == "finite")
            c.model = Model::finite;
        else if (*v == "both")
            c.model = Model::both;
        else
            throw ValidationError("model", "must be one of infinite, finite, both; got '" + *v + "'");
    }

    // ranges
    if (c.n_gas_in) require(*c.n_gas_in > 0, "n_gas_in", "> 0", *c.n_gas_in);
    if (c.n_gas_out) require(*c.n_gas_out > 0, "n_gas_out", "> 0", *c.n_gas_out);
    require(c.n_liquid >= 1.0, "n_liquid", ">= 1", c.n_liquid);
    require(c.radius_nm > 0, "radius_nm", "> 0", c.radius_nm);
    if (c.cutoff_nm) require(*c.cutoff_nm > 0, "cutoff_nm", "> 0", *c.cutoff_nm);
    if (c.k_obs_r) require(*c.k_obs_r > 0, "k_obs_r", "> 0", *c.k_obs_r);
    require(c.t0_fs > 0, "t0_fs", "> 0", c.t0_fs);
    require(c.target >= 0, "target", ">= 0", c.target);
    require(c.n_out_min > 0, "n_out_min", "> 0", c.n_out_min);
    require(c.n_out_max > c.n_out_min, "n_out_max", "> n_out_min", c.n_out_max);
    require(c.threads >= 0, "threads", ">= 0", c.threads);
    c.finite.validate();

    const bool needs_pair = command == "spectrum" || command == "totals";
    if (needs_pair && !c.n_gas_in) throw ValidationError("n_gas_in", "required for " + command);
    if ((needs_pair || command == "solve-nin") && !c.n_gas_out)
        throw ValidationError("n_gas_out", "required for " + command);

    // the effective set, defaults included, for the output preamble
    auto put = [&](const char* k, const std::string& v) { c.effective[k] = v; };
    if (c.n_gas_in) put("n_gas_in", format_double(*c.n_gas_in));
    if (c.n_gas_out) put("n_gas_out", format_double(*c.n_gas_out));
    put("n_liquid", format_double(c.n_liquid));
    put("radius_nm", format_double(c.radius_nm));
    const double kr = effective_k_obs_r(c);
    put("k_obs_r", format_double(kr));
    put("cutoff_nm", format_double(units::m_to_nm(units::two_pi * units::nm_to_m(c.radius_nm) / kr)));
    put("t0_fs", format_double(c.t0_fs));
    put("model", c.model == Model::infinite ? "infinite" : c.model == Model::finite ? "finite" : "both");
    put("lmax", c.finite.l_max ? std::to_string(*c.finite.l_max) : "auto");
    put("tol", format_double(c.finite.quad_rel_tol));
    put("l_tail_tol", format_double(c.finite.l_tail_tol));
    put("grid_points", std::to_string(c.finite.grid_points));
    put("output_window", format_double(c.finite.output_window));
    put("max_refinements", std::to_string(c.finite.max_refinements));
    put("target", format_double(c.target));
    put("n_out_min", format_double(c.n_out_min));
    put("n_out_max", format_double(c.n_out_max));
    put("output", c.output.empty() ? "-" : c.output);
    return c;
}

} // namespace sonoqed
