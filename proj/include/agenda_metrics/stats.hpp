#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace agenda_metrics {

struct CorrelationResult {
  std::string metric;
  double r = 0.0;
  std::size_t n = 0;
  double p_value = 1.0;  // two-tailed
};

/// Regularized incomplete beta I_x(a, b), evaluated with a modified Lentz
/// continued fraction (relative accuracy ~1e-15).
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for a Student-t variable with `df` degrees of freedom.
double student_t_two_tailed_p(double t, double df);

/// Sample Pearson r and its two-tailed p-value from t = r sqrt((n-2)/(1-r^2)).
/// Throws ValidationError for mismatched lengths or n < 3 and
/// UndefinedCorrelation when either series is constant.
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys,
                          std::string metric = {});

}  // namespace agenda_metrics
