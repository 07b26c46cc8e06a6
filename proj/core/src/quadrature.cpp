#include "imdd/quadrature.hpp"

#include "imdd/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace imdd::quad {

double hurwitz_zeta_tail(double z, int p) {
    // Euler-Maclaurin through the B8 term.
    const double pd = static_cast<double>(p);
    const double zp = std::pow(z, -pd);
    const double r = 1.0 / (z * z);
    const double d3 = pd * (pd + 1.0) * (pd + 2.0);
    const double d5 = d3 * (pd + 3.0) * (pd + 4.0);
    const double d7 = d5 * (pd + 5.0) * (pd + 6.0);
    return z * zp / (pd - 1.0) + 0.5 * zp +
           zp / z * (pd / 12.0 - r * (d3 / 720.0 - r * (d5 / 30240.0 - r * d7 / 1209600.0)));
}

namespace {

struct Panel {
    double value;
    double error;
};

Panel integrate_panel(const std::function<double(double)>& f, double a, double b) {
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 2, 1e-13, &error, &l1);
    return {value, error};
}

// Remainder of one side beyond `count` panels, from the mean of the
// scaled panel integrals over the outer half.
double side_tail(const std::vector<Panel>& panels, std::size_t count, int power) {
    const std::size_t from = count / 2;
    double acc = 0.0;
    for (std::size_t j = from; j < count; ++j) {
        acc += panels[j].value * std::pow(static_cast<double>(j) + 0.5, power);
    }
    const double mean = acc / static_cast<double>(count - from);
    return mean * hurwitz_zeta_tail(static_cast<double>(count) + 0.5, power);
}

}  // namespace

LineIntegral integrate_real_line(const std::function<double(double)>& f, const LineOptions& options) {
    if (!(options.tol > 0.0) || !(options.panel_width > 0.0) || options.min_panels < 2) {
        throw DomainError("integrate_real_line: tolerance and panel width must be positive");
    }
    const double w = options.panel_width;
    const double c = options.center;
    std::vector<Panel> right;
    std::vector<Panel> left;

    auto extend_to = [&](std::size_t count) {
        while (right.size() < count) {
            const double j = static_cast<double>(right.size());
            right.push_back(integrate_panel(f, c + j * w, c + (j + 1.0) * w));
            left.push_back(integrate_panel(f, c - (j + 1.0) * w, c - j * w));
        }
    };
    auto estimate = [&](std::size_t count, double& panel_error, double& correction) {
        double sum = 0.0;
        panel_error = 0.0;
        for (std::size_t j = count; j-- > 0;) {  // small terms first
            sum += right[j].value + left[j].value;
            panel_error += right[j].error + left[j].error;
        }
        correction = side_tail(right, count, options.decay_power) + side_tail(left, count, options.decay_power);
        return sum + correction;
    };

    std::size_t count = options.min_panels;
    extend_to(count);
    double err_prev = 0.0;
    double corr_prev = 0.0;
    double prev = estimate(count, err_prev, corr_prev);
    double last_change = 0.0;
    double panel_error = 0.0;
    while (2 * count <= options.max_panels) {
        count *= 2;
        extend_to(count);
        double corr = 0.0;
        const double next = estimate(count, panel_error, corr);
        last_change = std::abs(next - prev);
        if (last_change <= 0.5 * options.tol && panel_error <= 0.5 * options.tol) {
            return {next, last_change + panel_error, count, corr};
        }
        prev = next;
    }
    std::ostringstream msg;
    msg << "integrate_real_line: no convergence after " << count << " panels per side (width " << w
        << "): last change " << last_change << ", quadrature error " << panel_error << ", tolerance "
        << options.tol;
    throw NumericalError(msg.str());
}

}  // namespace imdd::quad
