#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "parallax/geometry.hpp"

namespace parallax {

/// Membership oracle for the model set K. Membership is a pure function of
/// the point; built-in models use the closed boundary convention (<=).
/// Implementations must be safe to query from multiple threads.
class perception_model {
public:
    virtual ~perception_model() = default;

    virtual std::size_t dim() const = 0;
    virtual std::string kind() const = 0;

    /// true iff the point is inside K.
    bool membership(std::span<const double> p);

    /// Elementwise membership; order preserved. External models receive one
    /// batch request and either answer completely or the call fails.
    std::vector<std::uint8_t> membership_batch(const std::vector<std::vector<double>>& points);

    std::uint64_t query_count() const { return query_count_.load(std::memory_order_relaxed); }

protected:
    virtual bool evaluate(std::span<const double> p) const = 0;
    virtual std::vector<std::uint8_t> evaluate_batch(const std::vector<std::vector<double>>& points);

    void count_queries(std::uint64_t n) { query_count_.fetch_add(n, std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> query_count_{0};
};

std::unique_ptr<perception_model> make_union_of_balls(std::size_t dim, std::vector<std::vector<double>> centers,
                                                      std::vector<double> radii);
std::unique_ptr<perception_model> make_shell(std::vector<double> center, double inner, double outer);
std::unique_ptr<perception_model> make_halfspace_polytope(std::size_t dim, std::vector<std::vector<double>> normals,
                                                          std::vector<double> offsets);
std::unique_ptr<perception_model> make_box_union(std::size_t dim, std::vector<std::vector<double>> min_corners,
                                                 std::vector<std::vector<double>> max_corners);

/// Parses a model spec JSON document (see README for the schema) and builds
/// the model. External specs spawn the child process and run the handshake.
std::unique_ptr<perception_model> load_model_spec(const std::string& json_text);
std::unique_ptr<perception_model> load_model_file(const std::string& path);

struct containment_violation {
    std::size_t index;
    std::string reason;
};

struct containment_report {
    bool ok = true;
    std::vector<containment_violation> violations;
};

/// Checks that every data point is strictly interior: the point itself and
/// 2*dim axis probes at distance interior_probe must all be inside.
containment_report validate_model_contains(perception_model& model, const point_cloud& cloud,
                                           double interior_probe);

/// Directional lower estimate of the largest lambda with every B_lambda(x)
/// inside K. Bisects along random rays per point; underestimates by roughly
/// the angular gap, and by tol which is subtracted before returning. Returns
/// max_probe exactly when no probe ever leaves K.
double lambda_ball_lower(const point_cloud& cloud, perception_model& model, std::size_t directions,
                         std::uint64_t seed, double tol, double max_probe);

} // namespace parallax
