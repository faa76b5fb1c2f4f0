#include "config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace shellwave::cli {

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& s, int line)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError(line, "expected a number, got '" + s + "'");
    return v;
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& s)
{
    bool quoted = false;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '"') quoted = !quoted;
        if (s[k] == '#' && !quoted) return s.substr(0, k);
    }
    return s;
}

bool valid_key(const std::string& k)
{
    if (k.empty() || k.front() == '.' || k.back() == '.') return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
    return true;
}

}  // namespace

std::map<std::string, ConfigValue> parse_kv(const std::string& text)
{
    std::map<std::string, ConfigValue> out;
    std::istringstream is(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!valid_key(section)) throw ConfigError(line, "bad section name '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (!valid_key(key)) throw ConfigError(line, "bad key '" + key + "'");
        if (!section.empty()) key = section + "." + key;
        if (val.empty()) throw ConfigError(line, "missing value for '" + key + "'");
        ConfigValue v;
        v.line = line;
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"') throw ConfigError(line, "unterminated string");
            v.kind = ConfigValue::Kind::string;
            v.text = val.substr(1, val.size() - 2);
        } else if (val.front() == '[') {
            if (val.back() != ']') throw ConfigError(line, "unterminated list");
            v.kind = ConfigValue::Kind::list;
            std::stringstream items(val.substr(1, val.size() - 2));
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (item.empty()) throw ConfigError(line, "empty list entry");
                v.list.push_back(parse_number(item, line));
            }
        } else if (std::isalpha(static_cast<unsigned char>(val.front()))) {
            v.kind = ConfigValue::Kind::string;  // bare word
            v.text = val;
        } else {
            v.number = parse_number(val, line);
        }
        if (!out.emplace(key, v).second) throw ConfigError(line, "duplicate key '" + key + "'");
    }
    return out;
}

namespace {

class Reader {
public:
    explicit Reader(const std::map<std::string, ConfigValue>& kv) : kv_(kv) {}

    double number(const std::string& key, double fallback)
    {
        const ConfigValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != ConfigValue::Kind::number) throw ConfigError(v->line, "'" + key + "' must be a number");
        return v->number;
    }
    int integer(const std::string& key, int fallback)
    {
        const ConfigValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != ConfigValue::Kind::number || v->number != static_cast<int>(v->number))
            throw ConfigError(v->line, "'" + key + "' must be an integer");
        return static_cast<int>(v->number);
    }
    std::string text(const std::string& key, const std::string& fallback)
    {
        const ConfigValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != ConfigValue::Kind::string) throw ConfigError(v->line, "'" + key + "' must be a string");
        return v->text;
    }
    std::vector<double> list(const std::string& key, const std::vector<double>& fallback)
    {
        const ConfigValue* v = get(key);
        if (!v) return fallback;
        if (v->kind == ConfigValue::Kind::number) return {v->number};
        if (v->kind != ConfigValue::Kind::list) throw ConfigError(v->line, "'" + key + "' must be a list of numbers");
        return v->list;
    }
    // a key that must not appear given the other choices
    void forbid(const std::string& key, const std::string& why)
    {
        if (const auto it = kv_.find(key); it != kv_.end())
            throw ConfigError(it->second.line, "'" + key + "' conflicts with " + why);
    }
    int line_of(const std::string& key) const
    {
        const auto it = kv_.find(key);
        return it == kv_.end() ? 0 : it->second.line;
    }
    void finish(std::vector<std::string>& defaults) const
    {
        for (const auto& [k, v] : kv_)
            if (!seen_.count(k)) throw ConfigError(v.line, "unknown key '" + k + "'");
        defaults = missing_;
    }

private:
    const ConfigValue* get(const std::string& key)
    {
        seen_.insert(key);
        const auto it = kv_.find(key);
        if (it == kv_.end()) {
            missing_.push_back(key);
            return nullptr;
        }
        return &it->second;
    }
    const std::map<std::string, ConfigValue>& kv_;
    std::set<std::string> seen_;
    std::vector<std::string> missing_;
};

}  // namespace

ResolvedConfig resolve_experiment(const std::map<std::string, ConfigValue>& kv)
{
    Reader r(kv);
    ResolvedConfig out;
    ExperimentConfig& e = out.experiment;

    const std::string kind = r.text("curve.kind", "circle");
    if (kind == "circle") {
        e.curve = CurveSpec::circle(r.number("curve.radius", 1.0));
        for (const char* k : {"curve.a", "curve.b", "curve.r0", "curve.amp", "curve.freq"}) r.forbid(k, "curve.kind = circle");
    } else if (kind == "ellipse") {
        e.curve = CurveSpec::ellipse(r.number("curve.a", 2.0), r.number("curve.b", 1.0));
        for (const char* k : {"curve.radius", "curve.r0", "curve.amp", "curve.freq"}) r.forbid(k, "curve.kind = ellipse");
    } else if (kind == "star") {
        e.curve = CurveSpec::star(r.number("curve.r0", 1.0), r.number("curve.amp", 0.2), r.integer("curve.freq", 5));
        for (const char* k : {"curve.radius", "curve.a", "curve.b"}) r.forbid(k, "curve.kind = star");
    } else {
        throw ConfigError(r.line_of("curve.kind"), "unknown curve.kind '" + kind + "' (circle, ellipse, star)");
    }

    e.coupling = {r.number("coupling.eta", 0.0), r.number("coupling.tau", 2.0)};

    const std::string family = r.text("scaling.family", "logarithmic");
    const double amp = r.number("scaling.amplitude", 2.0), gamma = r.number("scaling.gamma", 0.4);
    try {
        if (family == "logarithmic") {
            r.forbid("scaling.rho", "scaling.family = logarithmic");
            e.scaling = ScalingLaw::logarithmic(amp, gamma);
        } else if (family == "power") {
            e.scaling = ScalingLaw::power(amp, r.number("scaling.rho", 0.1), gamma);
        } else {
            throw ConfigError(r.line_of("scaling.family"), "unknown scaling.family '" + family + "' (logarithmic, power)");
        }
    } catch (const std::logic_error& err) {
        const std::string msg = err.what();
        throw ConfigError(r.line_of(msg.find("exponent") != std::string::npos ? "scaling.rho"
                                    : msg.find("amplitude") != std::string::npos ? "scaling.amplitude"
                                                                                  : "scaling.gamma"),
                          msg);
    }

    e.eps = r.list("run.eps", e.eps);
    e.n = r.integer("run.n", e.n);
    e.K = r.integer("run.K", e.K);
    e.mass = r.number("run.mass", e.mass);
    e.z = cplx(r.number("run.z_re", e.z.real()), r.number("run.z_im", e.z.imag()));
    e.profile = r.text("run.profile", e.profile);
    e.probe_count = r.integer("run.probes", e.probe_count);
    e.probe_width = r.number("run.probe_width", e.probe_width);

    r.finish(out.defaults_applied);
    try {
        e.validate();
    } catch (const std::exception& err) {
        // point at the most likely offending line
        std::string msg = err.what();
        int line = 0;
        for (const auto& [needle, key] : std::vector<std::pair<std::string, std::string>>{
                 {"coupling", "coupling.tau"}, {"z must", "run.z_im"}, {"eps", "run.eps"}, {"tube bound", "run.eps"},
                 {"n must", "run.n"}, {"K must", "run.K"}, {"probe", "run.probes"}, {"profile", "run.profile"},
                 {"curve", "curve.kind"}, {"self-intersects", "curve.amp"}})
            if (msg.find(needle) != std::string::npos) {
                line = r.line_of(key);
                break;
            }
        throw ConfigError(line, msg);
    }
    return out;
}

ResolvedConfig load_experiment(const std::string& text) { return resolve_experiment(parse_kv(text)); }

ResolvedConfig load_experiment_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    // a manifest written by a previous run is accepted as a config
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
            return {experiment_from_json(j.at("config")), {}};
        } catch (const nlohmann::json::exception& err) {
            throw ConfigError(0, "manifest '" + path + "': " + err.what());
        }
    }
    return load_experiment(text);
}

nlohmann::json experiment_to_json(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    const CurveSpec& c = cfg.curve;
    switch (c.kind) {
    case CurveKind::circle: j["curve"] = {{"kind", "circle"}, {"radius", c.a}}; break;
    case CurveKind::ellipse: j["curve"] = {{"kind", "ellipse"}, {"a", c.a}, {"b", c.b}}; break;
    case CurveKind::star: j["curve"] = {{"kind", "star"}, {"r0", c.a}, {"amp", c.amp}, {"freq", c.freq}}; break;
    }
    j["coupling"] = {{"eta", cfg.coupling.eta}, {"tau", cfg.coupling.tau}};
    const ScalingLaw& s = cfg.scaling;
    if (s.family() == ScalingFamily::logarithmic)
        j["scaling"] = {{"family", "logarithmic"}, {"amplitude", s.amplitude()}, {"gamma", s.gamma()}};
    else
        j["scaling"] = {{"family", "power"}, {"amplitude", s.amplitude()}, {"rho", s.rho()}, {"gamma", s.gamma()}};
    j["run"] = {{"eps", cfg.eps},         {"n", cfg.n},
                {"K", cfg.K},             {"mass", cfg.mass},
                {"z_re", cfg.z.real()},   {"z_im", cfg.z.imag()},
                {"profile", cfg.profile}, {"probes", cfg.probe_count},
                {"probe_width", cfg.probe_width}};
    return j;
}

ExperimentConfig experiment_from_json(const nlohmann::json& j)
{
    ExperimentConfig e;
    const auto& c = j.at("curve");
    const std::string kind = c.at("kind");
    if (kind == "circle")
        e.curve = CurveSpec::circle(c.at("radius"));
    else if (kind == "ellipse")
        e.curve = CurveSpec::ellipse(c.at("a"), c.at("b"));
    else if (kind == "star")
        e.curve = CurveSpec::star(c.at("r0"), c.at("amp"), c.at("freq"));
    else
        throw ConfigError(0, "unknown curve kind '" + kind + "'");
    e.coupling = {j.at("coupling").at("eta"), j.at("coupling").at("tau")};
    const auto& s = j.at("scaling");
    if (s.at("family") == "logarithmic")
        e.scaling = ScalingLaw::logarithmic(s.at("amplitude"), s.at("gamma"));
    else
        e.scaling = ScalingLaw::power(s.at("amplitude"), s.at("rho"), s.at("gamma"));
    const auto& r = j.at("run");
    e.eps = r.at("eps").get<std::vector<double>>();
    e.n = r.at("n");
    e.K = r.at("K");
    e.mass = r.at("mass");
    e.z = cplx(r.at("z_re").get<double>(), r.at("z_im").get<double>());
    e.profile = r.at("profile");
    e.probe_count = r.at("probes");
    e.probe_width = r.at("probe_width");
    e.validate();
    return e;
}

}  // namespace shellwave::cli
