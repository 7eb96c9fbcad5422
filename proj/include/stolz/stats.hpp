#ifndef STOLZ_STATS_HPP
#define STOLZ_STATS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace stolz {

inline double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * 1.4142135623730950488));
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical law of
/// `samples` and N(mean, var). Sorts a copy.
inline double ks_distance_to_normal(std::vector<double> samples, double mean,
                                    double var) {
  if (samples.empty()) throw std::invalid_argument("ks: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  const double sd = std::sqrt(var);
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = normal_cdf(samples[i], mean, sd);
    d = std::max(d, std::abs((i + 1) / n - c));
    d = std::max(d, std::abs(i / n - c));
  }
  return d;
}

/// Total-variation distance between the empirical laws of two sample
/// sets, computed on a shared uniform grid spanning both ranges.
inline double tv_distance(const std::vector<double>& a,
                          const std::vector<double>& b, int bins = 101) {
  if (a.empty() || b.empty()) throw std::invalid_argument("tv: no samples");
  double lo = std::min(*std::min_element(a.begin(), a.end()),
                       *std::min_element(b.begin(), b.end()));
  double hi = std::max(*std::max_element(a.begin(), a.end()),
                       *std::max_element(b.begin(), b.end()));
  if (hi <= lo) hi = lo + 1.0;
  std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
  const double w = (hi - lo) / bins;
  auto bin_of = [&](double x) {
    return std::min(bins - 1, static_cast<int>((x - lo) / w));
  };
  for (double x : a) pa[bin_of(x)] += 1.0 / a.size();
  for (double x : b) pb[bin_of(x)] += 1.0 / b.size();
  double tv = 0.0;
  for (int i = 0; i < bins; ++i) tv += std::abs(pa[i] - pb[i]);
  return 0.5 * tv;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // OLS standard error of the slope
};

/// Ordinary least squares y ~ intercept + slope * t.
inline LineFit fit_line(const std::vector<double>& t,
                        const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 3 || y.size() != n) throw std::invalid_argument("fit_line: bad data");
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  LineFit f;
  f.slope = sty / stt;
  f.intercept = my - f.slope * mt;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * t[i]);
    sse += r * r;
  }
  f.slope_se = std::sqrt(sse / (n - 2) / stt);
  return f;
}

/// Mean and standard error of the mean.
inline std::pair<double, double> mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 = v.size() > 1 ? s2 / (n - 1.0) : 0.0;
  return {m, std::sqrt(s2 / n)};
}

}  // namespace stolz

#endif  // STOLZ_STATS_HPP
