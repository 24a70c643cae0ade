#ifndef DECLAB_LAB_FIT_HPP
#define DECLAB_LAB_FIT_HPP

#include <span>

#include "declab/errors.hpp"

namespace declab::lab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares y = slope x + intercept; needs >= 2 points.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

struct PowerLawFit {
    double exponent = 0.0;
    double log_intercept = 0.0; // intercept of the log-log line
    double rms_residual = 0.0;  // RMS in log space
};

/// Least squares on (log x, log y); needs >= 3 strictly positive points.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

} // namespace declab::lab

#endif
