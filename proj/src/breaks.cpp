#include "splinewidth/breaks.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace splinewidth {

BreakSequence::BreakSequence(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("break sequence needs at least 2 points");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (!(points_[i] < points_[i + 1]))
            throw std::invalid_argument("break sequence must be strictly increasing");

    h_ = 0.0;
    h_min_ = points_.back() - points_.front();
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const double hi = points_[i + 1] - points_[i];
        h_ = std::max(h_, hi);
        h_min_ = std::min(h_min_, hi);
    }
    const std::size_t n = intervals();
    h_hat_ = 2.0 * (points_[1] - points_[0]);
    h_hat_ = std::max(h_hat_, 2.0 * (points_[n] - points_[n - 1]));
    for (std::size_t i = 1; i + 1 < n; ++i)
        h_hat_ = std::max(h_hat_, points_[i + 1] - points_[i]);
}

std::string BreakSequence::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (double p : points_) {
        std::ostringstream os;
        os.precision(17);
        os << p;
        arr.push_back(os.str());
    }
    return arr.dump();
}

BreakSequence BreakSequence::from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<double> pts;
    for (const auto& v : arr) {
        if (v.is_string())
            pts.push_back(std::stod(v.get<std::string>()));
        else
            pts.push_back(v.get<double>());
    }
    return BreakSequence(std::move(pts));
}

BreakSequence make_uniform_breaks(std::size_t n_intervals, double a, double b) {
    if (n_intervals < 1) throw std::invalid_argument("need at least one interval");
    std::vector<double> pts(n_intervals + 1);
    for (std::size_t i = 0; i <= n_intervals; ++i)
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n_intervals);
    pts.front() = a;
    pts.back() = b;
    return BreakSequence(std::move(pts));
}

BreakSequence make_explicit_breaks(std::vector<double> points) {
    return BreakSequence(std::move(points));
}

BreakSequence make_random_perturbed_breaks(std::size_t n_intervals, double amplitude,
                                           std::uint32_t seed, double a, double b) {
    if (n_intervals < 1) throw std::invalid_argument("need at least one interval");
    const double spacing = (b - a) / static_cast<double>(n_intervals);
    if (!(amplitude < 0.5 * spacing))
        throw std::invalid_argument("perturbation amplitude must be below half the uniform spacing");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    std::vector<double> pts(n_intervals + 1);
    pts.front() = a;
    pts.back() = b;
    for (std::size_t i = 1; i < n_intervals; ++i)
        pts[i] = a + spacing * static_cast<double>(i) + dist(rng);
    return BreakSequence(std::move(pts));
}

BreakSequence make_special_breaks(int p, int i, std::size_t n) {
    if (p < 1 || n < 1) throw std::invalid_argument("make_special_breaks: p >= 1 and n >= 1 required");
    const bool odd = (p % 2 != 0);
    std::vector<double> pts;
    pts.push_back(0.0);
    const double dn = static_cast<double>(n);
    switch (i) {
        case 0:
            if (odd)
                for (std::size_t j = 1; j <= n; ++j) pts.push_back(j / (dn + 1.0));
            else
                for (std::size_t j = 0; j <= n; ++j) pts.push_back((j + 0.5) / (dn + 1.0));
            break;
        case 1:
            if (odd)
                for (std::size_t j = 0; j < n; ++j) pts.push_back((j + 0.5) / dn);
            else
                for (std::size_t j = 1; j < n; ++j) pts.push_back(j / dn);
            break;
        case 2:
            if (odd)
                for (std::size_t j = 1; j <= n; ++j) pts.push_back(2.0 * j / (2.0 * dn + 1.0));
            else
                for (std::size_t j = 1; j <= n; ++j) pts.push_back((2.0 * j - 1.0) / (2.0 * dn + 1.0));
            break;
        default:
            throw std::invalid_argument("make_special_breaks: i must be 0, 1 or 2");
    }
    pts.push_back(1.0);
    return BreakSequence(std::move(pts));
}

}  // namespace splinewidth
