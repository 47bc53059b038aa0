#include "wavem/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wavem/properties.hpp"

namespace wavem {

using nlohmann::json;

void RunConfig::validate() const {
    params.validate();
    if (!(z_max > 0.0) || !(ode_step > 0.0) || !std::isfinite(z_max) || !std::isfinite(ode_step)) {
        throw WaveError(ErrorKind::InvalidInput, "z_max and ode_step must be positive");
    }
    for (const auto& [k, v] : tolerances) {
        if (!(v > 0.0) || !std::isfinite(v)) throw WaveError(ErrorKind::InvalidInput, "tolerance '" + k + "' must be positive");
    }
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return kExitInvalidInput;
        case ErrorKind::EllipticState:
        case ErrorKind::TangentState: return kExitElliptic;
        case ErrorKind::NoIntersection: return kExitNoIntersection;
        case ErrorKind::IncompatibleSequence: return kExitIncompatible;
        default: return kExitFailure;
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(x)) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw WaveError(ErrorKind::InvalidInput, "bad number for '" + key + "': " + value);
    }
}

void check_stored_c(const RunConfig& cfg, std::optional<double> c) {
    if (c && std::abs(*c - cfg.params.c()) > 1e-12 * (1.0 + std::abs(*c))) {
        throw WaveError(ErrorKind::InvalidInput, "stored c disagrees with a3 - a2");
    }
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), value = trim(value_in);
    if (key == "a1") cfg.params.a1 = parse_number(key, value);
    else if (key == "a2") cfg.params.a2 = parse_number(key, value);
    else if (key == "a3") cfg.params.a3 = parse_number(key, value);
    else if (key == "a4") cfg.params.a4 = parse_number(key, value);
    else if (key == "b1") cfg.params.b1 = parse_number(key, value);
    else if (key == "c") check_stored_c(cfg, parse_number(key, value));
    else if (key == "z_max") cfg.z_max = parse_number(key, value);
    else if (key == "ode_step") cfg.ode_step = parse_number(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "seed") {
        const double s = parse_number(key, value);
        if (s < 0.0 || s != std::floor(s)) throw WaveError(ErrorKind::InvalidInput, "seed must be a non-negative integer");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
        cfg.tolerances[key.substr(4)] = parse_number(key, value);
    } else {
        throw WaveError(ErrorKind::InvalidInput, "unknown setting '" + key + "'");
    }
}

void apply_setting(RunConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw WaveError(ErrorKind::InvalidInput, "expected key=value, got '" + kv + "'");
    apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    const std::string body = trim(text);
    std::optional<double> stored_c;
    if (!body.empty() && body.front() == '{') {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::exception& e) {
            throw WaveError(ErrorKind::InvalidInput, std::string("config JSON: ") + e.what());
        }
        auto num = [](const json& v, const std::string& k) {
            if (!v.is_number()) throw WaveError(ErrorKind::InvalidInput, "config key '" + k + "' must be a number");
            return v.get<double>();
        };
        const json params = j.contains("params") ? j.at("params") : j;
        for (const char* k : {"a1", "a2", "a3", "a4", "b1"}) {
            if (params.contains(k)) apply_setting(cfg, k, format12(num(params.at(k), k)));
        }
        if (params.contains("c")) stored_c = num(params.at("c"), "c");
        if (j.contains("z_max")) cfg.z_max = num(j.at("z_max"), "z_max");
        if (j.contains("ode_step")) cfg.ode_step = num(j.at("ode_step"), "ode_step");
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned()) throw WaveError(ErrorKind::InvalidInput, "seed must be a non-negative integer");
            cfg.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("tolerances")) {
            for (const auto& [k, v] : j.at("tolerances").items()) cfg.tolerances[k] = num(v, k);
        }
    } else {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw WaveError(ErrorKind::InvalidInput, "expected key=value, got '" + line + "'");
            if (trim(line.substr(0, eq)) == "c") {
                stored_c = parse_number("c", trim(line.substr(eq + 1)));
                continue;
            }
            apply_setting(cfg, line);
        }
    }
    check_stored_c(cfg, stored_c);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WaveError(ErrorKind::InvalidInput, "cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

}  // namespace

json to_json(const ModelParams& P) {
    return {{"a1", num(P.a1)}, {"a2", num(P.a2)}, {"a3", num(P.a3)}, {"a4", num(P.a4)}, {"b1", num(P.b1)}, {"c", num(P.c())}};
}

json to_json(const StatePoint& W) { return json::array({num(W.u), num(W.v)}); }

json to_json(const ManifoldPoint& Q) { return {{"z", num(Q.z)}, {"t", num(Q.t)}, {"Y", num(Q.Y)}}; }

json to_json(const RiemannSolution& s, bool with_samples) {
    json waves = json::array();
    for (const Wave& w : s.waves) {
        json o{{"type", to_string(w.type)}, {"from", to_json(w.from)}, {"to", to_json(w.to)}};
        if (is_shock(w.type)) {
            o["speed"] = num(w.speed_from);
            if (w.lax) o["lax"] = to_string(w.lax->kind);
        } else {
            o["speed_range"] = json::array({num(w.speed_from), num(w.speed_to)});
            if (with_samples) {
                json pts = json::array();
                for (const auto& p : w.samples) pts.push_back(to_json(p));
                o["samples"] = pts;
            }
        }
        waves.push_back(o);
    }
    json mids = json::array();
    for (const auto& m : s.middle_states) mids.push_back(to_json(m));
    json out{{"params", to_json(s.params)},
             {"left", to_json(s.left)},
             {"right", to_json(s.right)},
             {"waves", waves},
             {"middle_states", mids},
             {"compatible", s.compatible},
             {"alternates_count", s.alternates_count}};
    if (!s.forward_arc.empty()) out["crossing"] = {{"forward", s.forward_arc}, {"backward", s.backward_arc}};
    return out;
}

json to_json(const WaveCurve& C, const ModelParams& P) {
    json arcs = json::array();
    for (const WaveArc* a : C.arcs()) {
        json o{{"type", to_string(a->type)}, {"stop", to_string(a->stop)}, {"samples", a->samples.size()}};
        if (!a->empty()) {
            const ArcSample& f = a->samples.front();
            const ArcSample& b = a->samples.back();
            o["begin"] = to_json(f.q);
            o["end"] = to_json(b.q);
            o["speed_range"] = json::array({num(f.s), num(b.s)});
            o["states"] = {{"begin", to_json(state_of(f.q.z, f.q.t, -f.q.Y, P))},
                           {"end", to_json(state_of(b.q.z, b.q.t, -b.q.Y, P))}};
        }
        if (a->verdict) o["lax"] = to_string(a->verdict->kind);
        arcs.push_back(o);
    }
    json junctions = json::array();
    for (const auto& q : C.junctions) junctions.push_back(to_json(q));
    return {{"mode", C.mode == CurveMode::Forward ? "forward" : "backward"},
            {"start", to_json(C.start)},
            {"case", C.case_number},
            {"complete", C.complete},
            {"arcs", arcs},
            {"junctions", junctions}};
}

json cmd_classify(const StatePoint& W, const RunConfig& cfg) {
    cfg.validate();
    const ModelParams& P = cfg.params;
    const RegionClass rc = classify_state(W, P);
    json out{{"state", to_json(W)}, {"class", to_string(rc)}, {"alpha2", num(alpha2_normalized(W, P))}};
    const EigenData e = eigen(W, P);
    if (e.real) out["eigenvalues"] = json::array({num(e.lambda_s), num(e.lambda_f)});
    if (rc == RegionClass::Hyperbolic) {
        const LiftResult l = lift_state(W, P);
        out["lift"] = {{"Us", to_json(l.Us)}, {"Uf", to_json(l.Uf)}};
        out["cs_region"] = to_string(classify_cs_region(l.Us.z, l.Us.t, P));
    } else {
        out["lift"] = nullptr;
    }
    return out;
}

RiemannSolution cmd_solve(const StatePoint& WL, const StatePoint& WR, const RunConfig& cfg) {
    cfg.validate();
    SolveOptions opt;
    if (auto it = cfg.tolerances.find("crossing"); it != cfg.tolerances.end()) opt.crossing_tol = it->second;
    return solve(WL, WR, cfg.params, opt);
}

namespace {

const char* wave_color(WaveType t) {
    switch (t) {
        case WaveType::S1: return "#000000";
        case WaveType::R1: return "#d62728";
        case WaveType::C1Shock: return "#2ca02c";
        case WaveType::S2: return "#1f77b4";
        case WaveType::R2: return "#e377c2";
        case WaveType::C2Shock: return "#17becf";
    }
    return "#7f7f7f";
}

struct Frame {
    double u0, u1, v0, v1;
    double size = 640.0, margin = 40.0;
    double x(double u) const { return margin + (u - u0) / (u1 - u0) * (size - 2.0 * margin); }
    double y(double v) const { return size - margin - (v - v0) / (v1 - v0) * (size - 2.0 * margin); }
};

std::string polyline(const Frame& f, const std::vector<StatePoint>& pts, const char* color, double width,
                     const char* extra = "") {
    std::ostringstream o;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"" << extra << " points=\"";
    bool first = true;
    for (const auto& p : pts) {
        if (!std::isfinite(p.u) || !std::isfinite(p.v)) continue;
        o << (first ? "" : " ") << format12(f.x(p.u)) << ',' << format12(f.y(p.v));
        first = false;
    }
    o << "\"/>\n";
    return o.str();
}

}  // namespace

std::string solution_svg(const RiemannSolution& s, const RunConfig& cfg) {
    const ModelParams& P = cfg.params;
    std::vector<StatePoint> all{s.left, s.right};
    for (const auto& w : s.waves) {
        all.push_back(w.from);
        all.push_back(w.to);
        all.insert(all.end(), w.samples.begin(), w.samples.end());
    }
    const auto ellipse = coincidence_ellipse(P, 181);
    all.insert(all.end(), ellipse.begin(), ellipse.end());
    Frame f{all[0].u, all[0].u, all[0].v, all[0].v};
    for (const auto& p : all) {
        f.u0 = std::min(f.u0, p.u);
        f.u1 = std::max(f.u1, p.u);
        f.v0 = std::min(f.v0, p.v);
        f.v1 = std::max(f.v1, p.v);
    }
    // Square frame with a small pad so that axes keep their aspect ratio.
    const double span = 1.1 * std::max({f.u1 - f.u0, f.v1 - f.v0, 1e-6});
    const double uc = 0.5 * (f.u0 + f.u1), vc = 0.5 * (f.v0 + f.v1);
    f.u0 = uc - span / 2;
    f.u1 = uc + span / 2;
    f.v0 = vc - span / 2;
    f.v1 = vc + span / 2;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    o << "<defs><clipPath id=\"plot\"><rect x=\"40\" y=\"40\" width=\"560\" height=\"560\"/></clipPath></defs>\n";
    o << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
    o << "<rect x=\"40\" y=\"40\" width=\"560\" height=\"560\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    o << "<g clip-path=\"url(#plot)\">\n";
    o << polyline(f, ellipse, "#ff00ff", 1.5);
    // Inflection image: its slow and fast branches.
    for (int sgnz : {1, -1}) {
        std::vector<StatePoint> pts;
        for (int i = 0; i <= 400; ++i) {
            const double z = sgnz * (0.01 * std::pow(2000.0, i / 400.0));
            pts.push_back(state_of(z, inflection_t(z, P), 0.0, P));
        }
        o << polyline(f, pts, "#0000ff", 1.0, " stroke-dasharray=\"4,3\"");
    }
    // Double-contact lines: their images on the characteristic plane are straight.
    const double zc = 1.0 / std::sqrt(P.b1 + 1.0);
    for (double z : {zc, -zc}) {
        const double tspan = 10.0 * span / (P.c() * (z * z + 1.0)) + 10.0;
        o << polyline(f, {state_of(z, -tspan, 0.0, P), state_of(z, tspan, 0.0, P)}, "#9467bd", 1.0);
    }
    for (const auto& w : s.waves) {
        std::vector<StatePoint> pts = w.samples.empty() ? std::vector<StatePoint>{w.from, w.to} : w.samples;
        o << polyline(f, pts, wave_color(w.type), is_shock(w.type) ? 2.0 : 2.5,
                      is_shock(w.type) ? " stroke-dasharray=\"6,3\"" : "");
    }
    o << "</g>\n";
    auto dot = [&](const StatePoint& p, const char* label, const char* color) {
        o << "<circle cx=\"" << format12(f.x(p.u)) << "\" cy=\"" << format12(f.y(p.v)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        o << "<text x=\"" << format12(f.x(p.u) + 6) << "\" y=\"" << format12(f.y(p.v) - 6)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    };
    dot(s.left, "L", "#000000");
    dot(s.right, "R", "#000000");
    for (std::size_t i = 0; i < s.middle_states.size(); ++i) {
        dot(s.middle_states[i], ("M" + std::to_string(i + 1)).c_str(), "#555555");
    }
    std::string seq;
    for (const auto& w : s.waves) seq += (seq.empty() ? "" : " ") + std::string(to_string(w.type));
    o << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << (seq.empty() ? "constant state" : seq) << "</text>\n";
    o << "<text x=\"320\" y=\"630\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">u</text>\n";
    o << "<text x=\"12\" y=\"320\" font-family=\"sans-serif\" font-size=\"12\">v</text>\n";
    o << "</svg>\n";
    return o.str();
}

json cmd_validate(std::uint64_t seed, int n, const RunConfig& cfg) {
    cfg.validate();
    const auto results = run_property_suite(seed, n, cfg.params);
    json checks = json::array();
    bool pass = true;
    for (const auto& r : results) {
        checks.push_back({{"name", r.name},
                          {"samples", r.samples},
                          {"skipped", r.skipped},
                          {"worst", num(r.worst)},
                          {"threshold", num(r.threshold)},
                          {"pass", r.pass}});
        pass = pass && r.pass;
    }
    return {{"seed", seed}, {"n", n}, {"params", to_json(cfg.params)}, {"checks", checks}, {"pass", pass}};
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    if (n <= 1) {
        out.push_back(a);
        return out;
    }
    for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
    return out;
}

std::string row(std::initializer_list<double> xs) {
    std::string s;
    bool first = true;
    for (double x : xs) {
        s += (first ? "" : ",") + format12(x);
        first = false;
    }
    return s + "\n";
}

std::vector<double> z_values(const ExportRequest& r, double lo, double hi) {
    if (r.z_slice) return {*r.z_slice};
    return linspace(lo, hi, r.n);
}

// Roots in Y of the quadratic scc(z, t, .), recovered from three evaluations.
std::vector<double> scc_roots(double z, double t, const ModelParams& P) {
    const double fm = scc_value({z, t, -1.0}, P), f0 = scc_value({z, t, 0.0}, P), fp = scc_value({z, t, 1.0}, P);
    const double a = 0.5 * (fp + fm) - f0, b = 0.5 * (fp - fm), c = f0;
    if (std::abs(a) < 1e-300) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    std::vector<double> r{q / a};
    if (q != 0.0) r.push_back(c / q);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

std::vector<ExportFile> cmd_export(const ExportRequest& req, const RunConfig& cfg) {
    cfg.validate();
    const ModelParams& P = cfg.params;
    if (req.n < 1) throw WaveError(ErrorKind::InvalidInput, "export needs n >= 1");
    std::vector<ExportFile> out;
    const std::string& w = req.which;
    std::ostringstream o;
    if (w == "characteristic") {
        o << "z,t,u,v,s\n";
        for (double z : z_values(req, -5.0, 5.0)) {
            for (double t : linspace(-5.0, 5.0, req.n)) {
                const StatePoint W = state_of(z, t, 0.0, P);
                o << row({z, t, W.u, W.v, speed(z, t, P)});
            }
        }
        out.push_back({"characteristic.csv", o.str()});
    } else if (w == "son" || w == "sonp") {
        const bool prime = w == "sonp";
        o << "z,t,Y\n";
        for (double z : z_values(req, -3.0, 3.0)) {
            for (double t : linspace(-5.0, 5.0, req.n)) {
                try {
                    const double Y = son_prime_Y(z, t, P);
                    o << row({z, t, prime ? Y : -Y});
                } catch (const WaveError&) {
                    // Vertical over the double sonic lines; no graph point there.
                }
            }
        }
        out.push_back({w + ".csv", o.str()});
    } else if (w == "scc") {
        o << "z,t,Y\n";
        for (double z : z_values(req, -3.0, 3.0)) {
            for (double t : linspace(-5.0, 5.0, req.n)) {
                for (double Y : scc_roots(z, t, P)) o << row({z, t, Y});
            }
        }
        out.push_back({"scc.csv", o.str()});
    } else if (w == "inflection") {
        o << "z,t,u,v\n";
        for (double z : linspace(-5.0, 5.0, req.n % 2 == 0 ? req.n : req.n + 1)) {
            if (z == 0.0) continue;
            const double t = inflection_t(z, P);
            const StatePoint W = state_of(z, t, 0.0, P);
            o << row({z, t, W.u, W.v});
        }
        out.push_back({"inflection.csv", o.str()});
    } else if (w == "hysteresis") {
        o << "z,t,Y,u,v,u_prime,v_prime\n";
        for (double z : linspace(-5.0, 5.0, req.n)) {
            const ManifoldPoint H = hysteresis_point(z, P);
            const StateTriple st = manifold_to_states(H, P);
            o << row({H.z, H.t, H.Y, st.W.u, st.W.v, st.Wp.u, st.Wp.v});
        }
        out.push_back({"hysteresis.csv", o.str()});
    } else if (w == "ellipse") {
        o << "u,v\n";
        for (const auto& p : coincidence_ellipse(P, std::max(3, req.n))) o << row({p.u, p.v});
        out.push_back({"ellipse.csv", o.str()});
    } else if (w == "wavecurve" || w == "saturated") {
        const ManifoldPoint Q0{req.z, req.t, 0.0};
        const WaveCurve C = req.backward ? backward_wave_sequence(Q0, P) : forward_wave_curve(Q0, P);
        if (w == "wavecurve") {
            if (req.format == "json") {
                out.push_back({"wavecurve.json", to_json(C, P).dump(2) + "\n"});
            } else {
                o << "arc,type,index,z,t,Y,s,u,v,u_prime,v_prime\n";
                int k = 0;
                for (const WaveArc* a : C.arcs()) {
                    for (std::size_t i = 0; i < a->samples.size(); ++i) {
                        const ArcSample& s = a->samples[i];
                        const StateTriple st = manifold_to_states(s.q, P);
                        o << k << ',' << to_string(a->type) << ',' << i << ','
                          << row({s.q.z, s.q.t, s.q.Y, s.s, st.W.u, st.W.v, st.Wp.u, st.Wp.v});
                    }
                    ++k;
                }
                out.push_back({"wavecurve.csv", o.str()});
            }
        } else {
            const SaturatedSurface S = saturate(C, P, kFiberSamples, req.n);
            std::ostringstream tri;
            o << "sheet,type,generator,j,z,t,Y,u_prime,v_prime\n";
            for (std::size_t k = 0; k < S.sheets.size(); ++k) {
                const SaturatedSheet& sh = S.sheets[k];
                for (std::size_t i = 0; i < sh.fibers.size(); ++i) {
                    for (std::size_t j = 0; j < sh.fibers[i].size(); ++j) {
                        const ManifoldPoint& q = sh.fibers[i][j];
                        const StatePoint Wp = state_of(q.z, q.t, -q.Y, P);
                        o << k << ',' << to_string(sh.generator_type) << ',' << i << ',' << j << ','
                          << row({q.z, q.t, q.Y, Wp.u, Wp.v});
                    }
                }
                auto ok = [](const ManifoldPoint& q) { return std::isfinite(q.t) && std::isfinite(q.Y); };
                auto put = [&](const ManifoldPoint& a, const ManifoldPoint& b, const ManifoldPoint& c) {
                    if (!ok(a) || !ok(b) || !ok(c)) return;
                    tri << format12(a.z) << ' ' << format12(a.t) << ' ' << format12(a.Y) << ' ' << format12(b.z) << ' '
                        << format12(b.t) << ' ' << format12(b.Y) << ' ' << format12(c.z) << ' ' << format12(c.t) << ' '
                        << format12(c.Y) << '\n';
                };
                for (std::size_t i = 0; i + 1 < sh.fibers.size(); ++i) {
                    for (std::size_t j = 0; j + 1 < sh.fibers[i].size(); ++j) {
                        put(sh.fibers[i][j], sh.fibers[i + 1][j], sh.fibers[i + 1][j + 1]);
                        put(sh.fibers[i][j], sh.fibers[i + 1][j + 1], sh.fibers[i][j + 1]);
                    }
                }
            }
            out.push_back({"saturated.csv", o.str()});
            out.push_back({"saturated_triangles.txt", tri.str()});
        }
    } else {
        throw WaveError(ErrorKind::InvalidInput, "unknown export '" + w + "'");
    }
    return out;
}

}  // namespace wavem
