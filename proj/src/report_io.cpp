#include "parallax/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "parallax/errors.hpp"

namespace parallax {

namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double inf = std::numeric_limits<double>::infinity();

ordered_json encode_scale(double v, double factor = 1.0) {
    if (std::isinf(v)) return "inf";
    return v * factor;
}

double decode_scale(const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return inf;
        throw_input("unexpected scale string '" + j.get<std::string>() + "' in report");
    }
    return j.get<double>();
}

ordered_json encode_both(double v) {
    return ordered_json{{"radius", encode_scale(v)}, {"diameter", encode_scale(v, 2.0)}};
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) { return std::stoull(s, nullptr, 16); }

ordered_json encode_simplex(const simplex& s, double factor) {
    ordered_json v = ordered_json::array();
    for (auto id : s.vertices()) v.push_back(id);
    return ordered_json{{"v", v}, {"value", encode_scale(s.value, factor)}};
}

simplex decode_simplex(const ordered_json& j) {
    simplex s;
    const auto& v = j.at("v");
    if (v.empty() || v.size() > 4) throw_input("simplex arity out of range in report");
    s.dim = static_cast<std::uint8_t>(v.size() - 1);
    for (std::size_t k = 0; k < v.size(); ++k) s.v[k] = v[k].get<std::uint32_t>();
    s.value = decode_scale(j.at("value"));
    return s;
}

ordered_json encode_dot(const diagram_dot& dot, double factor) {
    ordered_json j;
    j["dim"] = dot.dim;
    j["birth"] = encode_scale(dot.birth, factor);
    j["death"] = encode_scale(dot.death, factor);
    j["birth_simplex"] = encode_simplex(dot.birth_simplex, factor);
    j["death_simplex"] = dot.death_simplex ? encode_simplex(*dot.death_simplex, factor) : ordered_json(nullptr);
    return j;
}

diagram_dot decode_dot(const ordered_json& j) {
    diagram_dot dot;
    dot.dim = j.at("dim").get<int>();
    dot.birth = decode_scale(j.at("birth"));
    dot.death = decode_scale(j.at("death"));
    dot.birth_simplex = decode_simplex(j.at("birth_simplex"));
    if (!j.at("death_simplex").is_null()) dot.death_simplex = decode_simplex(j.at("death_simplex"));
    return dot;
}

ordered_json encode_diagram(const persistence_diagram& diag, double factor) {
    ordered_json dots = ordered_json::array();
    for (const auto& dot : diag.dots) dots.push_back(encode_dot(dot, factor));
    return ordered_json{{"max_hom_dim", diag.max_hom_dim}, {"dots", dots}};
}

persistence_diagram decode_diagram(const ordered_json& j) {
    persistence_diagram diag;
    diag.max_hom_dim = j.at("max_hom_dim").get<int>();
    for (const auto& dj : j.at("dots")) diag.dots.push_back(decode_dot(dj));
    return diag;
}

ordered_json encode_scan(const hm_scan& scan) {
    ordered_json candidates = ordered_json::array();
    for (double c : scan.candidates) candidates.push_back(encode_scale(c));
    return ordered_json{{"lambda_hi", encode_both(scan.lambda_hi)},
                        {"hm_horizon", encode_both(scan.hm_horizon)},
                        {"candidates", candidates},
                        {"birth_ties", scan.birth_ties}};
}

hm_scan decode_scan(const ordered_json& j) {
    hm_scan scan;
    scan.lambda_hi = decode_scale(j.at("lambda_hi").at("radius"));
    scan.hm_horizon = decode_scale(j.at("hm_horizon").at("radius"));
    for (const auto& c : j.at("candidates")) scan.candidates.push_back(decode_scale(c));
    scan.birth_ties = j.at("birth_ties").get<std::size_t>();
    return scan;
}

std::string scheme_name(segment_scheme scheme) {
    return scheme == segment_scheme::barycenter ? "barycenter" : "uniform";
}

segment_scheme parse_scheme(const std::string& name) {
    if (name == "barycenter") return segment_scheme::barycenter;
    if (name == "uniform") return segment_scheme::uniform;
    throw_input("unknown segment scheme '" + name + "' in report");
}

ordered_json encode_config(const analysis_config& c) {
    ordered_json j;
    j["max_dim"] = c.max_dim;
    j["max_radius"] = encode_scale(c.max_radius);
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["probes"] = ordered_json{{"scheme", scheme_name(c.probes.scheme)},
                               {"segment_samples", c.probes.segment_samples},
                               {"disk_probing", c.probes.disk_probing},
                               {"disk_steps", c.probes.disk_steps},
                               {"disk_samples", c.probes.disk_samples},
                               {"disk_min_frac", c.probes.disk_min_frac},
                               {"disk_max_frac", c.probes.disk_max_frac},
                               {"seed", c.probes.seed}};
    j["ball_directions"] = c.ball_directions;
    j["ball_tol"] = c.ball_tol;
    j["interior_probe_frac"] = c.interior_probe_frac;
    j["max_probe_frac"] = c.max_probe_frac;
    j["gap_factor"] = c.gap_factor;
    return j;
}

analysis_config decode_config(const ordered_json& j) {
    analysis_config c;
    c.max_dim = j.at("max_dim").get<int>();
    c.max_radius = decode_scale(j.at("max_radius"));
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.at("threads").get<int>();
    const auto& p = j.at("probes");
    c.probes.scheme = parse_scheme(p.at("scheme").get<std::string>());
    c.probes.segment_samples = p.at("segment_samples").get<int>();
    c.probes.disk_probing = p.at("disk_probing").get<bool>();
    c.probes.disk_steps = p.at("disk_steps").get<int>();
    c.probes.disk_samples = p.at("disk_samples").get<int>();
    c.probes.disk_min_frac = p.at("disk_min_frac").get<double>();
    c.probes.disk_max_frac = p.at("disk_max_frac").get<double>();
    c.probes.seed = p.at("seed").get<std::uint64_t>();
    c.ball_directions = j.at("ball_directions").get<int>();
    c.ball_tol = j.at("ball_tol").get<double>();
    c.interior_probe_frac = j.at("interior_probe_frac").get<double>();
    c.max_probe_frac = j.at("max_probe_frac").get<double>();
    c.gap_factor = j.at("gap_factor").get<double>();
    return c;
}

verdict_kind parse_verdict(const std::string& name) {
    if (name == "matched") return verdict_kind::matched;
    if (name == "mismatched") return verdict_kind::mismatched;
    if (name == "inconclusive") return verdict_kind::inconclusive;
    throw_input("unknown verdict '" + name + "' in report");
}

} // namespace

std::string report_to_json(const report& rep, bool diameter_scale) {
    const double factor = diameter_scale ? 2.0 : 1.0;
    ordered_json j;
    j["version"] = rep.version;
    j["scale_convention"] = diameter_scale ? "diameter" : "radius";
    j["digests"] = ordered_json{{"dataset", hex64(rep.digests.dataset)},
                                {"model_spec", hex64(rep.digests.model_spec)}};
    j["inputs"] = ordered_json{{"n_points", rep.n_points},
                               {"dim", rep.dim},
                               {"model_kind", rep.model_kind},
                               {"distance_collisions", rep.distance_collisions}};
    j["config"] = encode_config(rep.config);
    j["scales"] = ordered_json{{"lambda_ball", encode_both(rep.lambda_ball)},
                               {"lambda_sup", encode_both(rep.lambda_sup)},
                               {"lambda_lo", encode_both(rep.lambda_lo)},
                               {"lambda_hi", encode_both(rep.lambda_hi)},
                               {"hm_horizon", encode_both(rep.hm_horizon)}};
    j["diagrams"] = ordered_json{{"rips", encode_diagram(rep.diag_r, factor)},
                                 {"inflexible_path", encode_diagram(rep.diag_inflexible, factor)},
                                 {"diagonal_path", encode_diagram(rep.diag_diagonal, factor)}};
    ordered_json scans = ordered_json::array();
    for (const auto& scan : rep.hm_by_dim) scans.push_back(encode_scan(scan));
    j["hm"] = ordered_json{{"by_dim", scans}, {"birth_ties", rep.birth_ties}};
    ordered_json certs = ordered_json::array();
    for (const auto& c : rep.certificates)
        certs.push_back(ordered_json{{"dim", c.dim},
                                     {"birth", encode_scale(c.birth, factor)},
                                     {"death_r", encode_scale(c.death_r, factor)},
                                     {"death_path", encode_scale(c.death_path, factor)},
                                     {"blocking_edge", {c.blocking_edge[0], c.blocking_edge[1]}},
                                     {"r_max", encode_scale(c.r_max, factor)}});
    j["void_certificates"] = certs;
    ordered_json features = ordered_json::array();
    for (const auto& f : rep.features)
        features.push_back(ordered_json{
            {"dot", encode_dot(f.dot, factor)},
            {"path_death", f.path_death ? encode_scale(*f.path_death, factor) : ordered_json(nullptr)},
            {"early_birth", f.early_birth},
            {"survives", f.survives},
            {"matched", f.early_birth && f.survives}});
    j["features"] = features;
    j["verdict"] = ordered_json{{"kind", to_string(rep.verdict)}, {"reason", rep.reason}};
    j["probes"] = ordered_json{{"segment", rep.segment_probes},
                               {"disk", rep.disk_probes},
                               {"total_queries", rep.total_queries}};
    return j.dump(2) + "\n";
}

report report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw_input(std::string("cannot parse report JSON: ") + e.what());
    }
    try {
        report rep;
        rep.version = j.at("version").get<std::string>();
        rep.digests.dataset = parse_hex64(j.at("digests").at("dataset").get<std::string>());
        rep.digests.model_spec = parse_hex64(j.at("digests").at("model_spec").get<std::string>());
        rep.n_points = j.at("inputs").at("n_points").get<std::size_t>();
        rep.dim = j.at("inputs").at("dim").get<std::size_t>();
        rep.model_kind = j.at("inputs").at("model_kind").get<std::string>();
        rep.distance_collisions = j.at("inputs").at("distance_collisions").get<bool>();
        rep.config = decode_config(j.at("config"));
        const auto& scales = j.at("scales");
        rep.lambda_ball = decode_scale(scales.at("lambda_ball").at("radius"));
        rep.lambda_sup = decode_scale(scales.at("lambda_sup").at("radius"));
        rep.lambda_lo = decode_scale(scales.at("lambda_lo").at("radius"));
        rep.lambda_hi = decode_scale(scales.at("lambda_hi").at("radius"));
        rep.hm_horizon = decode_scale(scales.at("hm_horizon").at("radius"));
        rep.diag_r = decode_diagram(j.at("diagrams").at("rips"));
        rep.diag_inflexible = decode_diagram(j.at("diagrams").at("inflexible_path"));
        rep.diag_diagonal = decode_diagram(j.at("diagrams").at("diagonal_path"));
        for (const auto& sj : j.at("hm").at("by_dim")) rep.hm_by_dim.push_back(decode_scan(sj));
        rep.birth_ties = j.at("hm").at("birth_ties").get<std::size_t>();
        for (const auto& cj : j.at("void_certificates")) {
            void_certificate c;
            c.dim = cj.at("dim").get<int>();
            c.birth = decode_scale(cj.at("birth"));
            c.death_r = decode_scale(cj.at("death_r"));
            c.death_path = decode_scale(cj.at("death_path"));
            c.blocking_edge = {cj.at("blocking_edge")[0].get<std::uint32_t>(),
                               cj.at("blocking_edge")[1].get<std::uint32_t>()};
            c.r_max = decode_scale(cj.at("r_max"));
            rep.certificates.push_back(c);
        }
        for (const auto& fj : j.at("features")) {
            feature_dot f;
            f.dot = decode_dot(fj.at("dot"));
            if (!fj.at("path_death").is_null()) f.path_death = decode_scale(fj.at("path_death"));
            f.early_birth = fj.at("early_birth").get<bool>();
            f.survives = fj.at("survives").get<bool>();
            rep.features.push_back(f);
        }
        rep.verdict = parse_verdict(j.at("verdict").at("kind").get<std::string>());
        rep.reason = j.at("verdict").at("reason").get<std::string>();
        rep.segment_probes = j.at("probes").at("segment").get<std::uint64_t>();
        rep.disk_probes = j.at("probes").at("disk").get<std::uint64_t>();
        rep.total_queries = j.at("probes").at("total_queries").get<std::uint64_t>();
        return rep;
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw_input(std::string("report JSON missing fields: ") + e.what());
    }
}

namespace {

bool scan_equal(const hm_scan& a, const hm_scan& b) {
    return a.lambda_hi == b.lambda_hi && a.hm_horizon == b.hm_horizon && a.candidates == b.candidates &&
           a.birth_ties == b.birth_ties;
}

bool config_equal(const analysis_config& a, const analysis_config& b) {
    return a.max_dim == b.max_dim && a.max_radius == b.max_radius && a.seed == b.seed && a.threads == b.threads &&
           a.probes.scheme == b.probes.scheme && a.probes.segment_samples == b.probes.segment_samples &&
           a.probes.disk_probing == b.probes.disk_probing && a.probes.disk_steps == b.probes.disk_steps &&
           a.probes.disk_samples == b.probes.disk_samples && a.probes.disk_min_frac == b.probes.disk_min_frac &&
           a.probes.disk_max_frac == b.probes.disk_max_frac && a.probes.seed == b.probes.seed &&
           a.ball_directions == b.ball_directions && a.ball_tol == b.ball_tol &&
           a.interior_probe_frac == b.interior_probe_frac && a.max_probe_frac == b.max_probe_frac &&
           a.gap_factor == b.gap_factor;
}

bool diagram_equal(const persistence_diagram& a, const persistence_diagram& b) {
    return a.max_hom_dim == b.max_hom_dim && a.dots == b.dots;
}

bool cert_equal(const void_certificate& a, const void_certificate& b) {
    return a.dim == b.dim && a.birth == b.birth && a.death_r == b.death_r && a.death_path == b.death_path &&
           a.blocking_edge == b.blocking_edge && a.r_max == b.r_max;
}

bool feature_equal(const feature_dot& a, const feature_dot& b) {
    return a.dot == b.dot && a.path_death == b.path_death && a.early_birth == b.early_birth &&
           a.survives == b.survives;
}

} // namespace

bool report_equal(const report& a, const report& b) {
    if (!(a.version == b.version && a.digests.dataset == b.digests.dataset &&
          a.digests.model_spec == b.digests.model_spec && config_equal(a.config, b.config) &&
          a.model_kind == b.model_kind && a.n_points == b.n_points && a.dim == b.dim &&
          a.distance_collisions == b.distance_collisions))
        return false;
    if (!(a.lambda_ball == b.lambda_ball && a.lambda_sup == b.lambda_sup && a.lambda_lo == b.lambda_lo &&
          a.lambda_hi == b.lambda_hi && a.hm_horizon == b.hm_horizon))
        return false;
    if (!(diagram_equal(a.diag_r, b.diag_r) && diagram_equal(a.diag_inflexible, b.diag_inflexible) &&
          diagram_equal(a.diag_diagonal, b.diag_diagonal)))
        return false;
    if (a.hm_by_dim.size() != b.hm_by_dim.size()) return false;
    for (std::size_t k = 0; k < a.hm_by_dim.size(); ++k)
        if (!scan_equal(a.hm_by_dim[k], b.hm_by_dim[k])) return false;
    if (a.birth_ties != b.birth_ties) return false;
    if (a.certificates.size() != b.certificates.size() || a.features.size() != b.features.size()) return false;
    for (std::size_t k = 0; k < a.certificates.size(); ++k)
        if (!cert_equal(a.certificates[k], b.certificates[k])) return false;
    for (std::size_t k = 0; k < a.features.size(); ++k)
        if (!feature_equal(a.features[k], b.features[k])) return false;
    return a.verdict == b.verdict && a.reason == b.reason && a.segment_probes == b.segment_probes &&
           a.disk_probes == b.disk_probes && a.total_queries == b.total_queries;
}

std::string diagram_to_json(const persistence_diagram& diag, bool diameter_scale) {
    ordered_json j;
    j["scale_convention"] = diameter_scale ? "diameter" : "radius";
    j["diagram"] = encode_diagram(diag, diameter_scale ? 2.0 : 1.0);
    return j.dump(2) + "\n";
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void svg_marker(std::string& out, int dim, double cx, double cy, const char* color) {
    char buf[256];
    switch (dim) {
    case 0:
        std::snprintf(buf, sizeof buf, "<circle cx='%s' cy='%s' r='4' fill='%s' fill-opacity='0.8'/>\n",
                      fmt(cx).c_str(), fmt(cy).c_str(), color);
        break;
    case 1:
        std::snprintf(buf, sizeof buf, "<rect x='%s' y='%s' width='7' height='7' fill='%s' fill-opacity='0.8'/>\n",
                      fmt(cx - 3.5).c_str(), fmt(cy - 3.5).c_str(), color);
        break;
    default:
        std::snprintf(buf, sizeof buf, "<path d='M %s %s l 5 8 l -10 0 z' fill='%s' fill-opacity='0.8'/>\n",
                      fmt(cx).c_str(), fmt(cy - 5).c_str(), color);
        break;
    }
    out += buf;
}

const char* dim_color(int dim) {
    switch (dim) {
    case 0: return "#1f77b4";
    case 1: return "#d62728";
    default: return "#2ca02c";
    }
}

} // namespace

std::string diagram_to_svg(const persistence_diagram& diag, bool diameter_scale) {
    const double factor = diameter_scale ? 2.0 : 1.0;
    const double left = 70, right = 610, top = 60, bottom = 580, rail = 90;
    double vmax = 0;
    for (const auto& dot : diag.dots) {
        vmax = std::max(vmax, dot.birth);
        if (std::isfinite(dot.death)) vmax = std::max(vmax, dot.death);
    }
    vmax = (vmax > 0 ? vmax : 1.0) * factor * 1.06;
    const auto sx = [&](double v) { return left + (right - left) * (v / vmax); };
    const auto sy = [&](double v) { return bottom - (bottom - top) * (v / vmax); };

    std::string out;
    out += "<svg xmlns='http://www.w3.org/2000/svg' width='660' height='640' viewBox='0 0 660 640'>\n";
    out += "<rect width='660' height='640' fill='white'/>\n";
    out += "<line x1='" + fmt(left) + "' y1='" + fmt(bottom) + "' x2='" + fmt(right) + "' y2='" + fmt(bottom) +
           "' stroke='black'/>\n";
    out += "<line x1='" + fmt(left) + "' y1='" + fmt(bottom) + "' x2='" + fmt(left) + "' y2='" + fmt(top) +
           "' stroke='black'/>\n";
    out += "<line x1='" + fmt(sx(0)) + "' y1='" + fmt(sy(0)) + "' x2='" + fmt(sx(vmax)) + "' y2='" + fmt(sy(vmax)) +
           "' stroke='#999' stroke-dasharray='5,4'/>\n";
    out += "<line x1='" + fmt(left) + "' y1='" + fmt(rail) + "' x2='" + fmt(right) + "' y2='" + fmt(rail) +
           "' stroke='#666' stroke-dasharray='2,4'/>\n";
    out += "<text x='" + fmt(right + 6) + "' y='" + fmt(rail + 5) + "' font-size='16'>&#8734;</text>\n";
    for (int t = 0; t <= 5; ++t) {
        const double v = vmax * t / 5;
        out += "<line x1='" + fmt(sx(v)) + "' y1='" + fmt(bottom) + "' x2='" + fmt(sx(v)) + "' y2='" +
               fmt(bottom + 5) + "' stroke='black'/>\n";
        out += "<text x='" + fmt(sx(v)) + "' y='" + fmt(bottom + 20) + "' font-size='11' text-anchor='middle'>" +
               fmt(v) + "</text>\n";
        out += "<line x1='" + fmt(left - 5) + "' y1='" + fmt(sy(v)) + "' x2='" + fmt(left) + "' y2='" + fmt(sy(v)) +
               "' stroke='black'/>\n";
        out += "<text x='" + fmt(left - 8) + "' y='" + fmt(sy(v) + 4) + "' font-size='11' text-anchor='end'>" +
               fmt(v) + "</text>\n";
    }
    out += "<text x='340' y='615' font-size='13' text-anchor='middle'>birth (" +
           std::string(diameter_scale ? "diameter" : "radius") + ")</text>\n";
    out += "<text x='20' y='320' font-size='13' text-anchor='middle' transform='rotate(-90 20 320)'>death</text>\n";
    for (int d = 0; d <= diag.max_hom_dim && d <= 2; ++d) {
        const double lx = left + 14 + d * 64;
        svg_marker(out, d, lx, 34, dim_color(d));
        out += "<text x='" + fmt(lx + 10) + "' y='38' font-size='12'>H" + std::to_string(d) + "</text>\n";
    }
    for (const auto& dot : diag.dots) {
        const double bx = sx(dot.birth * factor);
        const double by = std::isfinite(dot.death) ? sy(dot.death * factor) : rail;
        svg_marker(out, dot.dim, bx, by, dim_color(dot.dim));
    }
    out += "</svg>\n";
    return out;
}

std::string trials_to_json(const stability_summary& summary) {
    ordered_json trials = ordered_json::array();
    for (const auto& t : summary.trials) {
        ordered_json checks = ordered_json::array();
        for (const auto& c : t.checks)
            checks.push_back(ordered_json{{"name", c.name},
                                          {"bound", encode_scale(c.bound)},
                                          {"observed", encode_scale(c.observed)},
                                          {"pass", c.pass}});
        trials.push_back(ordered_json{{"index", t.index},
                                      {"master_seed", t.master_seed},
                                      {"kappa", t.kappa},
                                      {"skipped", t.skipped},
                                      {"skip_reason", t.skip_reason},
                                      {"failed", t.failed()},
                                      {"checks", checks}});
    }
    ordered_json j;
    j["trials"] = trials;
    j["failures"] = summary.failures;
    j["skips"] = summary.skips;
    j["skip_fraction"] = summary.skip_fraction();
    return j.dump(2) + "\n";
}

} // namespace parallax
