#include "wncs/config.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wncs/errors.hpp"
#include "wncs/simulation.hpp"

namespace wncs {

using nlohmann::json;

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "noise_variance") return SweepAxis::NoiseVariance;
    if (name == "eps_a") return SweepAxis::EpsA;
    if (name == "eps_b") return SweepAxis::EpsB;
    if (name == "eps_c") return SweepAxis::EpsC;
    if (name == "c_b") return SweepAxis::CostB;
    if (name == "c_max") return SweepAxis::CostMax;
    if (name == "theta") return SweepAxis::Theta;
    if (name == "retransmission") return SweepAxis::Retransmission;
    throw ArgumentError("unknown sweep axis '" + std::string(name) +
                        "' (expected noise_variance, eps_a, eps_b, eps_c, c_b, c_max, theta or retransmission)");
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::NoiseVariance: return "noise_variance";
        case SweepAxis::EpsA: return "eps_a";
        case SweepAxis::EpsB: return "eps_b";
        case SweepAxis::EpsC: return "eps_c";
        case SweepAxis::CostB: return "c_b";
        case SweepAxis::CostMax: return "c_max";
        case SweepAxis::Theta: return "theta";
        case SweepAxis::Retransmission: return "retransmission";
    }
    return "?";
}

void ExperimentSpec::validate() const {
    model.validate();
    chain.validate();
    thresholds.validate();
    links.validate();
    costs.validate();
    control.validate();
    solver.validate();
    if (aoi_preset_a < 1 || aoi_preset_b < 1) throw ConfigError("scheduler: AoI presets must be >= 1");
    if (slots < 1) throw ConfigError("simulation.slots must be >= 1");
    if (replications < 1) throw ConfigError("simulation.replications must be >= 1");
    for (const auto& s : sweeps)
        if (s.values.empty()) throw ConfigError("sweep '" + s.name + "' has no values");
}

std::vector<RunSpec> ExperimentSpec::effective_runs() const {
    if (!runs.empty()) return runs;
    return {RunSpec{policy, estimator, control.mode}};
}

namespace {

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + " must be an object");
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError(key_path(key) + " must be a number");
            out = v->get<double>();
        }
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError(key_path(key) + " must be an integer");
            out = v->get<Int>();
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(key_path(key) + " must be true or false");
            out = v->get<bool>();
        }
    }

    bool string(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw ConfigError(key_path(key) + " must be a string");
            out = v->get<std::string>();
            return true;
        }
        return false;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError("unknown key '" + key_path(it.key()) + "'");
    }

private:
    std::string where() const { return path_.empty() ? "the document" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Vector read_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + " must be a non-empty array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "] must be a number");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Matrix read_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + " must be a non-empty array of rows");
    // A flat array is read as a column.
    if (!j[0].is_array()) return read_vector(j, path);
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(row_path + " must have " + std::to_string(cols) + " entries");
        m.row(static_cast<Eigen::Index>(r)) = read_vector(j[r], row_path).transpose();
    }
    return m;
}

template <class F>
auto convert(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RunSpec read_run(const json& j, const std::string& path) {
    Section s(j, path);
    RunSpec run;
    std::string text;
    if (s.string("policy", text)) run.policy = convert(s.key_path("policy"), [&] { return parse_policy_kind(text); });
    if (s.string("estimator", text))
        run.estimator = convert(s.key_path("estimator"), [&] { return parse_estimator_mode(text); });
    if (s.string("control_mode", text))
        run.control = convert(s.key_path("control_mode"), [&] { return parse_trigger_mode(text); });
    s.finish();
    return run;
}

std::vector<RunSpec> read_runs(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path + " must be an array");
    std::vector<RunSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_run(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void read_model(Section& s, ExperimentSpec& spec) {
    if (const json* v = s.find("A")) spec.model.A = read_matrix(*v, s.key_path("A"));
    if (const json* v = s.find("B")) spec.model.B = read_matrix(*v, s.key_path("B"));
    if (const json* v = s.find("C")) spec.model.C = read_vector(*v, s.key_path("C")).transpose();
    if (const json* v = s.find("Rw")) {
        if (v->is_number()) {
            const auto n = spec.model.A.rows();
            spec.model.Rw = v->get<double>() * Matrix::Identity(n, n);
        } else {
            spec.model.Rw = read_matrix(*v, s.key_path("Rw"));
        }
    }
}

std::string describe_parse_error(std::string_view text, std::size_t byte, const std::string& source,
                                 const std::string& detail) {
    const std::size_t end = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::string msg = source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error";
    static const std::regex key_re("\"([^\"\\\\]+)\"\\s*:");
    const std::string prefix(text.substr(0, end));
    std::string last_key;
    for (auto it = std::sregex_iterator(prefix.begin(), prefix.end(), key_re); it != std::sregex_iterator(); ++it)
        last_key = (*it)[1].str();
    if (!last_key.empty()) msg += " near key '" + last_key + "'";
    return msg + " (" + detail + ")";
}

}  // namespace

ExperimentSpec parse_config(std::string_view text, std::string_view source, const std::string& variant) {
    const std::string src(source);
    ExperimentSpec spec;
    const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (blank) {
        spec.validate();
        return spec;
    }

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(describe_parse_error(text, e.byte, src, e.what()));
    }
    if (!root.is_object()) throw ConfigError(src + ": top level must be an object");

    json variants = json::object();
    if (const auto it = root.find("variants"); it != root.end()) {
        if (!it->is_object()) throw ConfigError("variants must be an object");
        variants = *it;
        root.erase(it);
    }
    if (!variant.empty()) root["variant"] = variant;
    if (const auto it = root.find("variant"); it != root.end() && !it->is_null()) {
        if (!it->is_string()) throw ConfigError("variant must be a string");
        spec.variant = it->get<std::string>();
        const auto v = variants.find(spec.variant);
        if (v == variants.end()) throw ConfigError("variant '" + spec.variant + "' is not defined under variants");
        if (!v->is_object()) throw ConfigError("variants." + spec.variant + " must be an object");
        if (v->contains("variant") || v->contains("variants"))
            throw ConfigError("variants." + spec.variant + " cannot select another variant");
        root.merge_patch(*v);
    }

    Section top(root, "");
    top.find("variant");
    top.string("scenario", spec.scenario);

    if (const json* j = top.find("model")) {
        Section s(*j, "model");
        read_model(s, spec);
        s.finish();
    }
    if (const json* j = top.find("context")) {
        Section s(*j, "context");
        s.number("p_self", spec.chain.p_self);
        s.finish();
    }
    if (const json* j = top.find("thresholds")) {
        Section s(*j, "thresholds");
        s.number("zeta0", spec.thresholds.zeta0);
        s.number("zeta1", spec.thresholds.zeta1);
        s.finish();
    }
    if (const json* j = top.find("links")) {
        Section s(*j, "links");
        s.number("eps_a", spec.links.eps_a);
        s.number("eps_b", spec.links.eps_b);
        s.number("eps_c", spec.links.eps_c);
        s.finish();
    }
    if (const json* j = top.find("costs")) {
        Section s(*j, "costs");
        s.number("c_a", spec.costs.c_a);
        s.number("c_b", spec.costs.c_b);
        s.number("c_c", spec.costs.c_c);
        s.number("c_max", spec.costs.c_max);
        s.finish();
    }
    if (const json* j = top.find("control")) {
        Section s(*j, "control");
        std::string text_value;
        if (s.string("mode", text_value))
            spec.control.mode = convert("control.mode", [&] { return parse_trigger_mode(text_value); });
        s.number("theta", spec.control.theta);
        if (s.string("actuation", text_value))
            spec.control.actuation = convert("control.actuation", [&] { return parse_actuation(text_value); });
        s.integer("n_max", spec.control.n_max);
        s.boolean("charge_per_attempt", spec.control.charge_per_attempt);
        s.finish();
    }
    if (const json* j = top.find("solver")) {
        Section s(*j, "solver");
        s.number("iota", spec.solver.iota);
        s.number("kappa", spec.solver.kappa);
        s.number("lambda_l", spec.solver.lambda_l);
        s.number("lambda_u", spec.solver.lambda_u);
        s.integer("s_ref", spec.solver.s_ref);
        s.integer("max_iterations", spec.solver.max_iterations);
        s.integer("max_doublings", spec.solver.max_doublings);
        s.finish();
    }
    if (const json* j = top.find("scheduler")) {
        Section s(*j, "scheduler");
        std::string name;
        if (s.string("policy", name)) spec.policy = convert("scheduler.policy", [&] { return parse_policy_kind(name); });
        s.integer("aoi_preset_a", spec.aoi_preset_a);
        s.integer("aoi_preset_b", spec.aoi_preset_b);
        s.finish();
    }
    {
        std::string name;
        if (top.string("estimator", name))
            spec.estimator = convert("estimator", [&] { return parse_estimator_mode(name); });
    }
    if (const json* j = top.find("simulation")) {
        Section s(*j, "simulation");
        s.integer("slots", spec.slots);
        s.integer("seed", spec.seed);
        s.integer("replications", spec.replications);
        s.finish();
    }
    if (const json* j = top.find("output")) {
        Section s(*j, "output");
        std::string dir;
        if (s.string("dir", dir)) spec.out_dir = dir;
        s.finish();
    }
    if (const json* j = top.find("runs")) spec.runs = read_runs(*j, "runs");
    if (const json* j = top.find("sweeps")) {
        if (!j->is_array()) throw ConfigError("sweeps must be an array");
        for (std::size_t i = 0; i < j->size(); ++i) {
            const std::string path = "sweeps[" + std::to_string(i) + "]";
            Section s((*j)[i], path);
            SweepSpec sweep;
            s.string("name", sweep.name);
            std::string axis;
            if (!s.string("axis", axis)) throw ConfigError(path + ".axis is required");
            try {
                sweep.axis = parse_sweep_axis(axis);
            } catch (const ArgumentError& e) {
                throw ConfigError(path + ".axis: " + e.what());
            }
            if (sweep.name.empty()) sweep.name = axis;
            const json* values = s.find("values");
            if (!values) throw ConfigError(path + ".values is required");
            const Vector v = read_vector(*values, path + ".values");
            sweep.values.assign(v.data(), v.data() + v.size());
            if (const json* r = s.find("runs")) sweep.runs = read_runs(*r, path + ".runs");
            s.finish();
            spec.sweeps.push_back(std::move(sweep));
        }
    }
    top.finish();

    spec.validate();
    return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path, const std::string& variant) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string(), variant);
}

}  // namespace wncs
