#include "cornerlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "cornerlab/asymptotics.hpp"
#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string line_prefix(int line) { return "line " + std::to_string(line) + ": "; }

double parse_number(std::string_view text, int line)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::parse_error, line_prefix(line) + "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, int line)
{
    const double v = parse_number(text, line);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw Error(ErrorKind::parse_error, line_prefix(line) + "expected an integer");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_list(std::string_view text, int line)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma), line));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw Error(ErrorKind::invalid_config, message);
    }
}

} // namespace

SimConfig parse_config(std::string_view text)
{
    using Setter = std::function<void(SimConfig&, std::string_view, int)>;
    auto number = [](double SimConfig::*field) {
        return Setter([field](SimConfig& c, std::string_view v, int l) { c.*field = parse_number(v, l); });
    };
    auto init_number = [](double InitialData::*field) {
        return Setter([field](SimConfig& c, std::string_view v, int l) { c.init.*field = parse_number(v, l); });
    };
    auto portrait_number = [](double PortraitSpec::*field) {
        return Setter([field](SimConfig& c, std::string_view v, int l) { c.portrait.*field = parse_number(v, l); });
    };
    const std::map<std::string, Setter, std::less<>> setters{
        {"alpha", number(&SimConfig::alpha)},
        {"theta_bar", number(&SimConfig::theta_bar)},
        {"s0", init_number(&InitialData::s0)},
        {"dr0", init_number(&InitialData::dr0)},
        {"ds0", init_number(&InitialData::ds0)},
        {"mode",
         [](SimConfig& c, std::string_view v, int l) {
             if (v == "physical") {
                 c.mode = Mode::physical;
             } else if (v == "scaled") {
                 c.mode = Mode::scaled;
             } else {
                 throw Error(ErrorKind::parse_error, line_prefix(l) + "mode must be 'physical' or 'scaled'");
             }
         }},
        {"k", number(&SimConfig::k)},
        {"eta", number(&SimConfig::eta)},
        {"eps",
         [](SimConfig& c, std::string_view v, int l) {
             if (v == "derive") {
                 c.eps.reset();
             } else {
                 c.eps = parse_number(v, l);
             }
         }},
        {"gamma1", number(&SimConfig::gamma1)},
        {"zeta", [](SimConfig& c, std::string_view v, int l) { c.zeta = parse_number(v, l); }},
        {"atol", number(&SimConfig::atol)},
        {"rtol", number(&SimConfig::rtol)},
        {"horizon_safety", number(&SimConfig::horizon_safety)},
        {"t_end", [](SimConfig& c, std::string_view v, int l) { c.t_end = parse_number(v, l); }},
        {"k_list", [](SimConfig& c, std::string_view v, int l) { c.k_list = parse_list(v, l); }},
        {"eta_list", [](SimConfig& c, std::string_view v, int l) { c.eta_list = parse_list(v, l); }},
        {"window_start", number(&SimConfig::window_start)},
        {"portrait_r_min", portrait_number(&PortraitSpec::r_min)},
        {"portrait_r_max", portrait_number(&PortraitSpec::r_max)},
        {"portrait_dr_min", portrait_number(&PortraitSpec::dr_min)},
        {"portrait_dr_max", portrait_number(&PortraitSpec::dr_max)},
        {"portrait_n", [](SimConfig& c, std::string_view v, int l) { c.portrait.n = parse_int(v, l); }},
        {"out", [](SimConfig& c, std::string_view v, int) { c.out = std::string(v); }},
    };

    SimConfig config;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::parse_error, line_prefix(line_no) + "expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw Error(ErrorKind::invalid_config, line_prefix(line_no) + "unknown key '" + std::string(key) + "'");
        }
        if (value.empty()) {
            throw Error(ErrorKind::parse_error, line_prefix(line_no) + "missing value for '" + std::string(key) + "'");
        }
        it->second(config, value, line_no);
    }
    validate(config);
    return config;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::invalid_config, "cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const SimConfig& c)
{
    require(c.alpha > 1.0 && std::isfinite(c.alpha), "alpha must exceed 1");
    require(c.theta_bar > 0.0 && c.theta_bar < std::numbers::pi, "theta_bar must lie in (0, pi)");
    require(c.init.s0 < 0.0, "s0 must be negative (first impact on face 1, away from the vertex)");
    require(c.init.dr0 > 0.0, "dr0 must be positive");
    require(c.init.ds0 > 0.0, "ds0 must be positive");
    require(c.k > 0.0 && std::isfinite(c.k), "k must be positive");
    require(c.eta > 0.0 && c.eta < 1.0, "eta must lie in (0, 1)");
    if (c.eps) {
        require(*c.eps >= 0.0 && *c.eps < 1.0, "eps must lie in [0, 1) or be 'derive'");
    }
    require(c.gamma1 > 1.0 && c.gamma1 < 4.0 / 3.0, "gamma1 must lie in (1, 4/3)");
    if (c.zeta) {
        const double xi1 = characteristic_roots(c.alpha).xi1;
        require(*c.zeta > 0.0 && *c.zeta < 1.0 / std::abs(xi1), "zeta must lie in (0, 1/|xi1|)");
    }
    require(c.atol > 0.0 && c.rtol > 0.0, "atol and rtol must be positive");
    require(c.horizon_safety >= 0.0, "horizon_safety must be non-negative");
    if (c.t_end) {
        require(*c.t_end > 0.0 && std::isfinite(*c.t_end), "t_end must be positive");
    }
    require(!c.k_list.empty(), "k_list must not be empty");
    for (std::size_t i = 0; i < c.k_list.size(); ++i) {
        require(c.k_list[i] > 0.0 && std::isfinite(c.k_list[i]), "k_list entries must be positive");
        require(i == 0 || c.k_list[i] > c.k_list[i - 1], "k_list must be increasing");
    }
    require(!c.eta_list.empty(), "eta_list must not be empty");
    for (double e : c.eta_list) {
        require(e > 0.0 && e < 1.0, "eta_list entries must lie in (0, 1)");
    }
    require(c.window_start >= 0.0, "window_start must be non-negative");
    require(c.portrait.r_min > 0.0 && c.portrait.r_max >= c.portrait.r_min,
            "portrait R range must satisfy 0 < portrait_r_min <= portrait_r_max");
    require(c.portrait.dr_max >= c.portrait.dr_min, "portrait_dr_min must not exceed portrait_dr_max");
    require(c.portrait.n >= 0, "portrait_n must be non-negative");
}

DampingParams damping_of(const SimConfig& config) { return characteristic_roots(config.alpha); }

ConeGeometry cone_of(const SimConfig& config) { return ConeGeometry(config.theta_bar); }

double end_time_of(const SimConfig& config)
{
    return config.t_end.value_or(2.0 * first_crossing_time(config.init));
}

double zeta_of(const SimConfig& config) { return config.zeta.value_or(default_zeta(damping_of(config))); }

ScaledParams scaled_params_of(const SimConfig& config)
{
    const DampingParams d = damping_of(config);
    if (config.mode == Mode::physical) {
        return scaled_params_from_physical(config.init, d, config.k);
    }
    return scaled_params_direct(config.eta, config.eps, config.init, d);
}

CornerControls controls_of(const SimConfig& config)
{
    CornerControls c;
    c.atol = config.atol;
    c.rtol = config.rtol;
    c.horizon_safety = config.horizon_safety;
    c.zeta = zeta_of(config);
    return c;
}

} // namespace cornerlab
