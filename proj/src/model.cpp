#include "parallax/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parallax/errors.hpp"
#include "parallax/external_model.hpp"

namespace parallax {

bool perception_model::membership(std::span<const double> p) {
    if (p.size() != dim()) throw_input("membership: point dimension " + std::to_string(p.size()) +
                                       " does not match model dimension " + std::to_string(dim()));
    count_queries(1);
    return evaluate(p);
}

std::vector<std::uint8_t> perception_model::membership_batch(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw_input("membership_batch: empty batch");
    for (const auto& p : points)
        if (p.size() != dim()) throw_input("membership_batch: point dimension mismatch");
    count_queries(points.size());
    return evaluate_batch(points);
}

std::vector<std::uint8_t> perception_model::evaluate_batch(const std::vector<std::vector<double>>& points) {
    std::vector<std::uint8_t> verdicts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) verdicts[i] = evaluate(points[i]) ? 1 : 0;
    return verdicts;
}

namespace {

class union_of_balls_model final : public perception_model {
public:
    union_of_balls_model(std::size_t dim, std::vector<std::vector<double>> centers, std::vector<double> radii)
        : dim_(dim), centers_(std::move(centers)), radii_(std::move(radii)) {
        if (dim_ == 0) throw_input("union_of_balls: dimension must be positive");
        if (centers_.empty()) throw_input("union_of_balls: needs at least one ball");
        if (radii_.size() != centers_.size()) throw_input("union_of_balls: centers/radii size mismatch");
        for (const auto& c : centers_)
            if (c.size() != dim_) throw_input("union_of_balls: center dimension mismatch");
        for (double r : radii_)
            if (!(r > 0.0)) throw_input("union_of_balls: radii must be positive");
    }

    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "union_of_balls"; }

protected:
    bool evaluate(std::span<const double> p) const override {
        for (std::size_t b = 0; b < centers_.size(); ++b) {
            double sum = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                const double d = p[k] - centers_[b][k];
                sum += d * d;
            }
            if (sum <= radii_[b] * radii_[b]) return true;
        }
        return false;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<double>> centers_;
    std::vector<double> radii_;
};

class shell_model final : public perception_model {
public:
    shell_model(std::vector<double> center, double inner, double outer)
        : center_(std::move(center)), inner_(inner), outer_(outer) {
        if (center_.empty()) throw_input("shell: center must be nonempty");
        if (!(inner_ >= 0.0) || !(inner_ < outer_)) throw_input("shell: need 0 <= inner < outer");
    }

    std::size_t dim() const override { return center_.size(); }
    std::string kind() const override { return "shell"; }

protected:
    bool evaluate(std::span<const double> p) const override {
        double sum = 0.0;
        for (std::size_t k = 0; k < center_.size(); ++k) {
            const double d = p[k] - center_[k];
            sum += d * d;
        }
        return sum >= inner_ * inner_ && sum <= outer_ * outer_;
    }

private:
    std::vector<double> center_;
    double inner_, outer_;
};

class halfspace_polytope_model final : public perception_model {
public:
    halfspace_polytope_model(std::size_t dim, std::vector<std::vector<double>> normals, std::vector<double> offsets)
        : dim_(dim), normals_(std::move(normals)), offsets_(std::move(offsets)) {
        if (dim_ == 0) throw_input("halfspace_polytope: dimension must be positive");
        if (normals_.size() != offsets_.size()) throw_input("halfspace_polytope: normals/offsets size mismatch");
        for (const auto& a : normals_)
            if (a.size() != dim_) throw_input("halfspace_polytope: normal dimension mismatch");
    }

    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "halfspace_polytope"; }

protected:
    bool evaluate(std::span<const double> p) const override {
        // <a, p> <= b for every halfspace; zero constraints = entire space
        for (std::size_t h = 0; h < normals_.size(); ++h) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) dot += normals_[h][k] * p[k];
            if (dot > offsets_[h]) return false;
        }
        return true;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<double>> normals_;
    std::vector<double> offsets_;
};

class box_union_model final : public perception_model {
public:
    box_union_model(std::size_t dim, std::vector<std::vector<double>> mins, std::vector<std::vector<double>> maxs)
        : dim_(dim), mins_(std::move(mins)), maxs_(std::move(maxs)) {
        if (dim_ == 0) throw_input("box_union: dimension must be positive");
        if (mins_.empty()) throw_input("box_union: needs at least one box");
        if (mins_.size() != maxs_.size()) throw_input("box_union: min/max corner count mismatch");
        for (std::size_t b = 0; b < mins_.size(); ++b) {
            if (mins_[b].size() != dim_ || maxs_[b].size() != dim_) throw_input("box_union: corner dimension mismatch");
            for (std::size_t k = 0; k < dim_; ++k)
                if (!(mins_[b][k] < maxs_[b][k])) throw_input("box_union: min corner must be below max componentwise");
        }
    }

    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "box_union"; }

protected:
    bool evaluate(std::span<const double> p) const override {
        for (std::size_t b = 0; b < mins_.size(); ++b) {
            bool in = true;
            for (std::size_t k = 0; k < dim_ && in; ++k) in = p[k] >= mins_[b][k] && p[k] <= maxs_[b][k];
            if (in) return true;
        }
        return false;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<double>> mins_, maxs_;
};

std::vector<double> to_vector(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw_input(std::string("model spec: ") + what + " must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) throw_input(std::string("model spec: ") + what + " entries must be numbers");
        v.push_back(c.get<double>());
    }
    return v;
}

} // namespace

std::unique_ptr<perception_model> make_union_of_balls(std::size_t dim, std::vector<std::vector<double>> centers,
                                                      std::vector<double> radii) {
    return std::make_unique<union_of_balls_model>(dim, std::move(centers), std::move(radii));
}

std::unique_ptr<perception_model> make_shell(std::vector<double> center, double inner, double outer) {
    return std::make_unique<shell_model>(std::move(center), inner, outer);
}

std::unique_ptr<perception_model> make_halfspace_polytope(std::size_t dim, std::vector<std::vector<double>> normals,
                                                          std::vector<double> offsets) {
    return std::make_unique<halfspace_polytope_model>(dim, std::move(normals), std::move(offsets));
}

std::unique_ptr<perception_model> make_box_union(std::size_t dim, std::vector<std::vector<double>> min_corners,
                                                 std::vector<std::vector<double>> max_corners) {
    return std::make_unique<box_union_model>(dim, std::move(min_corners), std::move(max_corners));
}

std::unique_ptr<perception_model> load_model_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw_input(std::string("model spec: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind")) throw_input("model spec: expected an object with a 'kind' field");
    const std::string kind = doc["kind"].get<std::string>();

    if (kind == "external") {
        if (!doc.contains("command") || !doc["command"].is_array() || doc["command"].empty())
            throw_input("model spec: external kind needs a nonempty 'command' array");
        std::vector<std::string> command;
        for (const auto& a : doc["command"]) command.push_back(a.get<std::string>());
        return make_external_model(command);
    }

    const nlohmann::json params = doc.value("params", nlohmann::json::object());

    if (kind == "union_of_balls") {
        if (!params.contains("centers")) throw_input("model spec: union_of_balls needs 'centers'");
        std::vector<std::vector<double>> centers;
        for (const auto& c : params["centers"]) centers.push_back(to_vector(c, "center"));
        if (centers.empty()) throw_input("model spec: union_of_balls needs at least one center");
        std::vector<double> radii;
        if (params.contains("radii")) {
            radii = to_vector(params["radii"], "radii");
        } else if (params.contains("radius")) {
            radii.assign(centers.size(), params["radius"].get<double>());
        } else {
            throw_input("model spec: union_of_balls needs 'radius' or 'radii'");
        }
        const std::size_t dim = centers.front().size();
        return make_union_of_balls(dim, std::move(centers), std::move(radii));
    }
    if (kind == "shell") {
        if (!params.contains("center") || !params.contains("inner") || !params.contains("outer"))
            throw_input("model spec: shell needs 'center', 'inner', 'outer'");
        return make_shell(to_vector(params["center"], "center"), params["inner"].get<double>(),
                          params["outer"].get<double>());
    }
    if (kind == "halfspace_polytope") {
        std::vector<std::vector<double>> normals;
        std::vector<double> offsets;
        for (const auto& h : params.value("halfspaces", nlohmann::json::array())) {
            normals.push_back(to_vector(h.at("normal"), "normal"));
            offsets.push_back(h.at("offset").get<double>());
        }
        std::size_t dim = params.contains("dim") ? params["dim"].get<std::size_t>()
                                                 : (normals.empty() ? 0 : normals.front().size());
        if (dim == 0) throw_input("model spec: halfspace_polytope with no halfspaces needs explicit 'dim'");
        return make_halfspace_polytope(dim, std::move(normals), std::move(offsets));
    }
    if (kind == "box_union") {
        std::vector<std::vector<double>> mins, maxs;
        for (const auto& b : params.value("boxes", nlohmann::json::array())) {
            mins.push_back(to_vector(b.at("min"), "min corner"));
            maxs.push_back(to_vector(b.at("max"), "max corner"));
        }
        if (mins.empty()) throw_input("model spec: box_union needs at least one box");
        const std::size_t dim = mins.front().size();
        return make_box_union(dim, std::move(mins), std::move(maxs));
    }
    throw_input("model spec: unknown kind '" + kind + "'");
}

std::unique_ptr<perception_model> load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_input("cannot open model spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model_spec(ss.str());
}

containment_report validate_model_contains(perception_model& model, const point_cloud& cloud,
                                           double interior_probe) {
    if (model.dim() != cloud.dim())
        throw_input("validate_model_contains: model dimension " + std::to_string(model.dim()) +
                    " does not match data dimension " + std::to_string(cloud.dim()));
    containment_report report;
    const std::size_t dim = cloud.dim();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto x = cloud.point(i);
        if (!model.membership(x)) {
            report.violations.push_back({i, "point is outside the model"});
            continue;
        }
        std::vector<double> probe(x.begin(), x.end());
        bool interior = true;
        for (std::size_t k = 0; k < dim && interior; ++k) {
            for (double sign : {+1.0, -1.0}) {
                probe[k] = x[k] + sign * interior_probe;
                if (!model.membership(probe)) {
                    interior = false;
                    break;
                }
            }
            probe[k] = x[k];
        }
        if (!interior) report.violations.push_back({i, "axis probe left the model (point not strictly interior)"});
    }
    report.ok = report.violations.empty();
    return report;
}

double lambda_ball_lower(const point_cloud& cloud, perception_model& model, std::size_t directions,
                         std::uint64_t seed, double tol, double max_probe) {
    if (directions == 0) throw_input("lambda_ball_lower: directions must be positive");
    if (!(tol > 0.0)) throw_input("lambda_ball_lower: tol must be positive");
    if (!(max_probe > 0.0)) throw_input("lambda_ball_lower: max_probe must be positive");

    const std::size_t dim = cloud.dim();
    double best = max_probe;
    bool found_boundary = false;

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto x = cloud.point(i);
        if (!model.membership(x))
            throw_precondition("lambda_ball_lower: data point " + std::to_string(i) + " is outside the model");
        for (std::size_t d = 0; d < directions; ++d) {
            rng gen(seed, derive_stream(0x6c62272e07bb0142ULL, i * directions + d));
            const auto u = gen.unit_vector(dim);
            std::vector<double> probe(dim);
            auto at = [&](double t) {
                for (std::size_t k = 0; k < dim; ++k) probe[k] = x[k] + t * u[k];
                return std::span<const double>(probe);
            };
            if (model.membership(at(max_probe))) continue; // no boundary within reach on this ray
            double lo = 0.0, hi = max_probe;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                if (model.membership(at(mid)))
                    lo = mid;
                else
                    hi = mid;
            }
            found_boundary = true;
            best = std::min(best, lo);
        }
    }
    if (!found_boundary) return max_probe;
    return std::max(0.0, best - tol);
}

} // namespace parallax
