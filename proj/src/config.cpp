#include "qgsw/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qgsw/error.hpp"

namespace qgsw::config {

using nlohmann::json;

namespace {

// Typed access to one object of the document, remembering which keys were read.
class Section {
public:
    // `doc` may be null (section absent); it must outlive the Section.
    Section(const json* doc, std::string path) : path_(std::move(path)) {
        if (!doc || doc->is_null()) return;
        if (!doc->is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        obj_ = doc;
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!obj_ || !obj_->contains(key)) return;
        const json& v = (*obj_)[key];
        try {
            if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
                if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
            } else if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw ConfigError(field(key), "expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw ConfigError(field(key), "expected a string");
            }
            out = v.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(field(key), e.what());
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        if (!obj_ || !obj_->contains(key)) return nullptr;
        return &(*obj_)[key];
    }

    void reject_unknown() const {
        if (!obj_) return;
        for (auto it = obj_->begin(); it != obj_->end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json* obj_ = nullptr;
    std::string path_;
    std::set<std::string> seen_;
};

std::string theta_name(symbols::ThetaNormalization n) {
    return n == symbols::ThetaNormalization::as_stated ? "as_stated" : "stationary_phase";
}

}  // namespace

ExperimentConfig from_json(const json& doc) {
    ExperimentConfig cfg;
    Section root(&doc, "");
    int version = 0;
    root.get("schema_version", version);
    if (version != schema_version)
        throw ConfigError("schema_version", "expected " + std::to_string(schema_version) + ", got " +
                                                std::to_string(version));
    root.get("seed", cfg.seed);

    RunConfig& r = cfg.run;
    {
        const json* j = root.child("grid");
        Section s(j, "grid");
        s.get("N", r.grid.n);
        s.get("L", r.grid.half_length);
        s.reject_unknown();
    }
    {
        const json* j = root.child("initial");
        Section s(j, "initial");
        InitialData& d = r.initial;
        s.get("family", d.family);
        s.get("amplitude", d.amplitude);
        s.get("width", d.width);
        s.get("center", d.center);
        s.get("k_low", d.k_low);
        s.get("k_high", d.k_high);
        s.get("path", d.path);
        if (const json* m = s.child("modes")) {
            if (!m->is_array()) throw ConfigError("initial.modes", "expected an array");
            d.modes.clear();
            for (size_t i = 0; i < m->size(); ++i) {
                Section ms(&(*m)[i], "initial.modes[" + std::to_string(i) + "]");
                ModeSpec mode;
                ms.get("k", mode.k);
                ms.get("amplitude", mode.amplitude);
                ms.get("phase", mode.phase);
                ms.reject_unknown();
                d.modes.push_back(mode);
            }
        }
        s.reject_unknown();
    }
    r.initial.seed = cfg.seed;
    {
        const json* j = root.child("solver");
        Section s(j, "solver");
        s.get("T", r.t_final);
        s.get("dt", r.step.dt);
        s.get("adaptive", r.step.adaptive);
        s.get("tolerance", r.step.tolerance);
        s.get("dt_min", r.step.dt_min);
        s.get("dt_max", r.step.dt_max);
        std::string nl = to_string(r.nonlinearity);
        s.get("nonlinearity", nl);
        r.nonlinearity = nonlinearity_from_string(nl);
        s.get("mu_max", r.mu_max);
        s.get("dealias", r.dealias);
        std::string frame = to_string(r.frame);
        s.get("frame", frame);
        if (frame != "lab" && frame != "moving") throw ConfigError("solver.frame", "expected lab or moving");
        r.frame = frame_from_string(frame);
        s.get("jump", r.jump);
        s.get("blowup_factor", r.blowup_factor);
        s.get("tail_threshold", r.tail_threshold);
        s.reject_unknown();
    }
    {
        const json* j = root.child("quadrature");
        Section s(j, "quadrature");
        QuadratureSpec& q = r.quad;
        s.get("inner_radius", q.inner_radius);
        s.get("inner_panel_nodes", q.inner_panel_nodes);
        s.get("inner_s_max", q.inner_s_max);
        s.get("z_max", q.z_max);
        s.get("outer_panel_nodes", q.outer_panel_nodes);
        s.get("outer_panel_width", q.outer_panel_width);
        s.get("far_start", q.far_start);
        s.get("far_panel_width", q.far_panel_width);
        s.get("verify", q.verify);
        s.get("tolerance", q.tolerance);
        s.reject_unknown();
    }
    {
        const json* j = root.child("diagnostics");
        Section s(j, "diagnostics");
        DiagnosticsSelection& d = cfg.diagnostics;
        s.get("cadence", r.cadence);
        s.get("hs_index", d.hs_index);
        if (const json* t = s.child("tracked_xi")) {
            if (!t->is_array()) throw ConfigError("diagnostics.tracked_xi", "expected an array of numbers");
            d.tracked_xi.clear();
            for (const auto& v : *t) {
                if (!v.is_number()) throw ConfigError("diagnostics.tracked_xi", "expected an array of numbers");
                d.tracked_xi.push_back(v.get<double>());
            }
        }
        std::string theta = theta_name(d.theta);
        s.get("theta_normalization", theta);
        if (theta == "as_stated")
            d.theta = symbols::ThetaNormalization::as_stated;
        else if (theta == "stationary_phase")
            d.theta = symbols::ThetaNormalization::stationary_phase;
        else
            throw ConfigError("diagnostics.theta_normalization", "expected as_stated or stationary_phase");
        s.get("energy_monitor", d.energy_monitor);
        s.get("write_checkpoints", d.write_checkpoints);
        s.reject_unknown();
    }
    {
        const json* j = root.child("output");
        Section s(j, "output");
        s.get("dir", cfg.output_dir);
        s.reject_unknown();
    }
    root.reject_unknown();

    r.validate();
    for (double xi : cfg.diagnostics.tracked_xi) {
        try {
            diagnostics::grid_index(r.grid, xi);
        } catch (const DomainError& e) {
            throw ConfigError("diagnostics.tracked_xi", e.what());
        }
    }
    return cfg;
}

json to_json(const ExperimentConfig& cfg) {
    const RunConfig& r = cfg.run;
    json modes = json::array();
    for (const auto& m : r.initial.modes) modes.push_back({{"k", m.k}, {"amplitude", m.amplitude}, {"phase", m.phase}});
    const QuadratureSpec& q = r.quad;
    return {
        {"schema_version", schema_version},
        {"seed", cfg.seed},
        {"grid", {{"N", r.grid.n}, {"L", r.grid.half_length}}},
        {"initial",
         {{"family", r.initial.family},
          {"amplitude", r.initial.amplitude},
          {"width", r.initial.width},
          {"center", r.initial.center},
          {"k_low", r.initial.k_low},
          {"k_high", r.initial.k_high},
          {"modes", modes},
          {"path", r.initial.path}}},
        {"solver",
         {{"T", r.t_final},
          {"dt", r.step.dt},
          {"adaptive", r.step.adaptive},
          {"tolerance", r.step.tolerance},
          {"dt_min", r.step.dt_min},
          {"dt_max", r.step.dt_max},
          {"nonlinearity", to_string(r.nonlinearity)},
          {"mu_max", r.mu_max},
          {"dealias", r.dealias},
          {"frame", to_string(r.frame)},
          {"jump", r.jump},
          {"blowup_factor", r.blowup_factor},
          {"tail_threshold", r.tail_threshold}}},
        {"quadrature",
         {{"inner_radius", q.inner_radius},
          {"inner_panel_nodes", q.inner_panel_nodes},
          {"inner_s_max", q.inner_s_max},
          {"z_max", q.z_max},
          {"outer_panel_nodes", q.outer_panel_nodes},
          {"outer_panel_width", q.outer_panel_width},
          {"far_start", q.far_start},
          {"far_panel_width", q.far_panel_width},
          {"verify", q.verify},
          {"tolerance", q.tolerance}}},
        {"diagnostics",
         {{"cadence", r.cadence},
          {"hs_index", cfg.diagnostics.hs_index},
          {"tracked_xi", cfg.diagnostics.tracked_xi},
          {"theta_normalization", theta_name(cfg.diagnostics.theta)},
          {"energy_monitor", cfg.diagnostics.energy_monitor},
          {"write_checkpoints", cfg.diagnostics.write_checkpoints}}},
        {"output", {{"dir", cfg.output_dir}}},
    };
}

json parse_document(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset; translate to line and column.
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("<syntax>", origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("<override>", "expected KEY=VALUE, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* node = &doc;
    std::string rest = key;
    for (;;) {
        const auto dot = rest.find('.');
        const std::string part = rest.substr(0, dot);
        if (part.empty()) throw ConfigError(key, "empty path component in override");
        if (!node->is_object()) {
            if (!node->is_null()) throw ConfigError(key, "override path crosses a non-object value");
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        rest = rest.substr(dot + 1);
    }
}

ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides) {
    json doc = path.empty() ? to_json(ExperimentConfig{}) : load_document(path);
    for (const auto& o : overrides) apply_override(doc, o);
    return from_json(doc);
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qgsw::config
