#include "imdd/constellation.hpp"

#include "imdd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace imdd {

Constellation::Constellation(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) throw DomainError("constellation needs at least two levels");
    delta_a_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!std::isfinite(levels_[i])) throw DomainError("constellation levels must be finite");
        if (i > 0) {
            const double gap = levels_[i] - levels_[i - 1];
            if (!(gap > 0.0)) throw DomainError("constellation levels must be strictly increasing");
            delta_a_ = std::min(delta_a_, gap);
        }
    }
    mean_ = std::accumulate(levels_.begin(), levels_.end(), 0.0) / static_cast<double>(levels_.size());
}

Constellation Constellation::pam(int m) {
    if (m < 2) throw DomainError("PAM order must be at least 2");
    std::vector<double> levels(static_cast<std::size_t>(m));
    std::iota(levels.begin(), levels.end(), 0.0);
    return Constellation(std::move(levels));
}

bool Constellation::is_uniform_pam() const noexcept {
    const double span = a_hat() - a_check();
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (std::abs(levels_[i] - levels_[i - 1] - delta_a_) > 1e-12 * span) return false;
    }
    return true;
}

Constellation Constellation::shifted(double offset) const {
    std::vector<double> out(levels_);
    for (double& v : out) v += offset;
    return Constellation(std::move(out));
}

Constellation Constellation::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("constellation scale must be positive");
    std::vector<double> out(levels_);
    for (double& v : out) v *= factor;
    return Constellation(std::move(out));
}

std::size_t Constellation::index_of(double value) const noexcept {
    const auto it = std::lower_bound(levels_.begin(), levels_.end(), value);
    if (it != levels_.end() && *it == value) return static_cast<std::size_t>(it - levels_.begin());
    return levels_.size();
}

std::string Constellation::label() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < levels_.size(); ++i) out << (i ? "," : "") << levels_[i];
    out << '}';
    return out.str();
}

}  // namespace imdd
