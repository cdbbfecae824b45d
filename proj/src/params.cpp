#include "wasep/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wasep {

void ScalingParams::validate() const {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (d < 1 || d > 3) throw std::invalid_argument("d must be 1, 2 or 3");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0,1)");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (beta <= 0.0) throw std::invalid_argument("beta must be > 0");
    if (T <= 0.0) throw std::invalid_argument("T must be > 0");
    if (L_macro < 1) throw std::invalid_argument("L_macro must be >= 1");
}

double a_n(const ScalingParams& p) {
    p.validate();
    return std::pow(double(p.n), p.theta);
}

double chi(double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("chi: rho outside [0,1]");
    return rho * (1.0 - rho);
}

double drift_velocity(const ScalingParams& p) {
    p.validate();
    return p.alpha * (1.0 - 2.0 * p.rho) * std::pow(double(p.n), 2.0 - p.beta) / p.d;
}

namespace {
AssumptionCheck strict(const std::string& name, double lhs, double rhs,
                       bool exponent_only = false, const std::string& note = "") {
    AssumptionCheck c;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.holds = lhs < rhs;
    c.exponent_level_only = exponent_only;
    c.note = note;
    return c;
}
}  // namespace

AssumptionReport validate_assumption(const ScalingParams& p) {
    AssumptionReport r;
    const double d = p.d;
    const double th = p.theta;
    const double b = p.beta;

    r.checks.push_back(strict("d/2 < theta", d / 2.0, th, true,
                              "lower window; sqrt(log n) factor ignored"));
    r.checks.push_back(strict("theta < min(d, d+beta-1)", th,
                              std::min(d, d + b - 1.0)));
    if (p.d == 1) {
        r.checks.push_back(strict("beta > 2/3", 2.0 / 3.0, b));
        r.checks.push_back(strict("theta > 1 - beta/2", 1.0 - b / 2.0, th));
    } else if (p.d == 2) {
        r.checks.push_back(strict("beta > 1/2", 0.5, b));
        r.checks.push_back(strict("theta > 2 - beta", 2.0 - b, th, true,
                                  "(log n)^{1/(1-eps0)} factor ignored"));
    } else {
        r.checks.push_back(strict("beta > 1/2", 0.5, b));
        r.checks.push_back(strict("theta > d - beta", d - b, th));
    }
    r.all_pass = std::all_of(r.checks.begin(), r.checks.end(),
                             [](const AssumptionCheck& c) { return c.holds; });
    return r;
}

std::string AssumptionReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.holds ? "pass " : "FAIL ") << c.name << " (" << c.lhs << " vs "
           << c.rhs << ")";
        if (c.exponent_level_only) os << " [exponent level only]";
        if (!c.note.empty()) os << " — " << c.note;
        os << "\n";
    }
    os << (all_pass ? "all exponent inequalities hold" : "window violated");
    return os.str();
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r\n";
            s.erase(0, s.find_first_not_of(ws));
            auto last = s.find_last_not_of(ws);
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    auto get = [&](const std::string& k, auto& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        std::istringstream vs(it->second);
        vs >> out;
        if (vs.fail()) throw std::invalid_argument("bad value for config key " + k);
    };
    get("n", cfg.params.n);
    get("d", cfg.params.d);
    get("alpha", cfg.params.alpha);
    get("beta", cfg.params.beta);
    get("rho", cfg.params.rho);
    get("theta", cfg.params.theta);
    get("T", cfg.params.T);
    get("L_macro", cfg.params.L_macro);
    get("seed", cfg.seed);
    get("replicas", cfg.replicas);
    cfg.params.validate();
    if (cfg.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace wasep
