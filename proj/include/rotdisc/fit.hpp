#pragma once

#include <vector>

namespace rotdisc {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
    int n = 0;
};

// ordinary least squares y ~ intercept + slope * x; n >= 2
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// log-log fit: slope of log(y) against log(x); all inputs must be positive
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// trailing half of a schedule (by index): the asymptotic window
template <class T>
std::vector<T> upper_half(const std::vector<T>& v) {
    return std::vector<T>(v.begin() + v.size() / 2, v.end());
}

} // namespace rotdisc
