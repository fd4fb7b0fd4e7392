#pragma once

#include <span>
#include <string>
#include <vector>

namespace tcoq::stats {

/// fval divided by the reference minimum, which must be positive.
double approximation_ratio(double fval, double fval_min);

struct MwuResult {
  double u;  // min of the two U statistics
  double p;  // two-sided, normal approximation
};

/// Mann-Whitney U test with midranks for ties, tie-corrected variance and a
/// 0.5 continuity correction. Degenerate spread (all values tied) gives p = 1.
MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Vargha-Delaney effect size: probability that a random value of a exceeds
/// one of b, ties counted half. a12(a, b) + a12(b, a) == 1 exactly.
double a12(std::span<const double> a, std::span<const double> b);

struct KwResult {
  double h;
  double p;  // chi-square survival with groups-1 degrees of freedom
};

/// Kruskal-Wallis rank test across two or more groups, tie corrected.
KwResult kruskal_wallis(std::span<const std::vector<double>> groups);

/// Survival function of the chi-square distribution (regularized upper
/// incomplete gamma; series plus continued fraction).
double chi_squared_sf(double x, int dof);

struct PairwiseComparison {
  std::string group_a;
  std::string group_b;
  double u;
  double p;
  double a12;
};

struct ComparisonReport {
  double alpha = 0.05;
  KwResult kw{0.0, 1.0};
  std::vector<PairwiseComparison> pairwise;
};

/// Omnibus Kruskal-Wallis plus all pairwise Mann-Whitney/effect-size
/// comparisons over named samples. Needs at least two groups.
ComparisonReport compare_groups(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups);

}  // namespace tcoq::stats
