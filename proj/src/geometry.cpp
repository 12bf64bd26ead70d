#include "parallax/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parallax/errors.hpp"

namespace parallax {

namespace {

bool all_finite(std::span<const double> p) {
    return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
}

} // namespace

point_cloud::point_cloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw_input("point cloud dimension must be positive");
    if (coords_.size() % dim_ != 0) throw_input("coordinate count is not a multiple of the dimension");
    const std::size_t n = coords_.size() / dim_;
    for (std::size_t i = 0; i < n; ++i) {
        if (!all_finite(point(i))) throw_input("non-finite coordinate at point " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::equal(point(i).begin(), point(i).end(), point(j).begin()))
                throw_input("duplicate points at indices " + std::to_string(i) + " and " + std::to_string(j));
        }
    }
}

double point_cloud::diameter() const {
    double best = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, distance(point(i), point(j)));
    return best;
}

double distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw_input("distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - q[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<std::vector<double>> segment_samples(std::span<const double> x, std::span<const double> y,
                                                 segment_scheme scheme, std::size_t m) {
    if (x.size() != y.size()) throw_input("segment_samples: dimension mismatch");
    if (std::equal(x.begin(), x.end(), y.begin())) throw_input("segment_samples: degenerate edge (x == y)");

    std::vector<std::vector<double>> out;
    if (scheme == segment_scheme::barycenter) {
        std::vector<double> mid(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) mid[k] = 0.5 * (x[k] + y[k]);
        out.push_back(std::move(mid));
        return out;
    }
    if (m < 1) throw_input("segment_samples: uniform scheme needs m >= 1");
    out.reserve(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m + 1);
        std::vector<double> p(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) p[k] = x[k] + t * (y[k] - x[k]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::vector<double>> transverse_disk_samples(std::span<const double> x, std::span<const double> y,
                                                         double r, std::size_t count, rng& gen) {
    const std::size_t n = x.size();
    if (n != y.size()) throw_input("transverse_disk_samples: dimension mismatch");
    if (n < 2) throw_unsupported("transverse_disk_samples: disk is empty in dimension 1");
    if (std::equal(x.begin(), x.end(), y.begin())) throw_input("transverse_disk_samples: degenerate edge");
    if (r < 0.0) throw_input("transverse_disk_samples: negative radius");

    std::vector<double> mid(n), axis(n);
    double axis_norm2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mid[k] = 0.5 * (x[k] + y[k]);
        axis[k] = y[k] - x[k];
        axis_norm2 += axis[k] * axis[k];
    }
    const double inv = 1.0 / std::sqrt(axis_norm2);
    for (auto& c : axis) c *= inv;

    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        // gaussian direction projected into the orthogonal hyperplane
        std::vector<double> v(n);
        double norm2 = 0.0;
        do {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                v[k] = gen.normal();
                dot += v[k] * axis[k];
            }
            norm2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                v[k] -= dot * axis[k];
                norm2 += v[k] * v[k];
            }
        } while (norm2 <= 1e-24);
        const double radius = r * std::pow(gen.uniform01(), 1.0 / static_cast<double>(n - 1));
        const double scale = radius / std::sqrt(norm2);
        for (std::size_t k = 0; k < n; ++k) v[k] = mid[k] + scale * v[k];
        out.push_back(std::move(v));
    }
    return out;
}

std::pair<point_cloud, correspondence> perturb_pointwise(const point_cloud& cloud, double kappa, rng& gen) {
    if (kappa < 0.0) throw_input("perturb_pointwise: kappa must be nonnegative");
    const std::size_t n = cloud.size();
    const std::size_t dim = cloud.dim();

    constexpr int max_retries = 64;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<double> coords(cloud.coords());
        if (kappa > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto delta = gen.in_ball(dim, kappa);
                for (std::size_t k = 0; k < dim; ++k) coords[i * dim + k] += delta[k];
            }
        }
        // distinctness re-validated by the constructor
        bool duplicate = false;
        for (std::size_t i = 0; i < n && !duplicate; ++i)
            for (std::size_t j = i + 1; j < n && !duplicate; ++j)
                duplicate = std::equal(coords.begin() + i * dim, coords.begin() + (i + 1) * dim,
                                       coords.begin() + j * dim);
        if (duplicate) continue;

        correspondence f;
        f.kappa = kappa;
        f.pairs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) f.pairs.emplace_back(i, i);
        return {point_cloud(dim, std::move(coords)), std::move(f)};
    }
    throw_input("perturb_pointwise: could not avoid duplicate points after retries");
}

point_cloud load_csv(std::istream& in, const std::string& name) {
    std::vector<double> coords;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw_input(name + ":" + std::to_string(line_no) + ": bad coordinate '" + cell + "'");
            }
        }
        if (row.empty()) throw_input(name + ":" + std::to_string(line_no) + ": empty data line");
        if (dim == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw_input(name + ":" + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                        " coordinates, got " + std::to_string(row.size()));
        }
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (dim == 0) throw_input(name + ": no data lines");
    return point_cloud(dim, std::move(coords));
}

point_cloud load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_input("cannot open dataset file: " + path);
    return load_csv(in, path);
}

void write_csv_file(const std::string& path, const point_cloud& cloud) {
    std::ofstream out(path);
    if (!out) throw_input("cannot write dataset file: " + path);
    out.precision(17);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
        out << "\n";
    }
}

bool has_distance_collisions(const point_cloud& cloud, double tol) {
    std::vector<double> dists;
    const std::size_t n = cloud.size();
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) dists.push_back(distance(cloud.point(i), cloud.point(j)));
    std::sort(dists.begin(), dists.end());
    for (std::size_t k = 1; k < dists.size(); ++k)
        if (dists[k] - dists[k - 1] <= tol) return true;
    return false;
}

} // namespace parallax
