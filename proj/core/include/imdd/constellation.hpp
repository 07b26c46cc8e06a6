#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace imdd {

/// Finite, strictly increasing real symbol alphabet. Statistics assume
/// equiprobable symbols.
class Constellation {
public:
    /// Throws DomainError unless there are at least two strictly increasing finite levels.
    explicit Constellation(std::vector<double> levels);

    /// {0, 1, ..., m-1}
    static Constellation pam(int m);
    static Constellation ook() { return pam(2); }

    std::span<const double> levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    double level(std::size_t i) const { return levels_.at(i); }

    double a_hat() const noexcept { return levels_.back(); }
    double a_check() const noexcept { return levels_.front(); }
    double midpoint() const noexcept { return 0.5 * (a_hat() + a_check()); }
    double mean() const noexcept { return mean_; }
    double delta_a() const noexcept { return delta_a_; }

    /// Equally spaced levels (any offset and spacing).
    bool is_uniform_pam() const noexcept;

    /// Copy with every level shifted by `offset`.
    Constellation shifted(double offset) const;
    /// Copy with every level multiplied by `factor` > 0.
    Constellation scaled(double factor) const;

    /// Index of the level equal to `value`, or size() when absent.
    std::size_t index_of(double value) const noexcept;

    std::string label() const;

    friend bool operator==(const Constellation&, const Constellation&) = default;

private:
    std::vector<double> levels_;
    double mean_ = 0.0;
    double delta_a_ = 0.0;
};

}  // namespace imdd
