#ifndef BRIDGEKIT_REGRESSION_HPP_
#define BRIDGEKIT_REGRESSION_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace bridgekit {

/// Named predictor columns plus a response, one row per user.
struct DesignMatrix {
  std::vector<std::string> names;            // unique, one per column
  std::vector<std::vector<double>> columns;  // all the same length
  std::vector<double> response;

  std::size_t rows() const { return response.size(); }
  const std::vector<double>& column(const std::string& name) const;
};

struct VifEntry {
  std::string name;
  double vif = 0.0;  // +inf for perfect collinearity
};

struct VifResult {
  std::vector<std::string> kept;   // original order
  std::vector<VifEntry> dropped;   // in drop order, with VIF at drop time
};

/// Iteratively drops the column with the largest variance inflation factor
/// while any VIF exceeds the threshold. Among equal VIFs (e.g. a perfectly
/// collinear pair, VIF = inf) the later-listed column is dropped.
VifResult vif_screen(const DesignMatrix& X, double threshold = 10.0);

struct OlsFit {
  std::vector<double> coef;  // intercept first, then one per column
  std::vector<double> se;
  double residual_variance = 0.0;
  double r2 = 0.0;
  std::size_t df_residual = 0;
};

/// Least squares with intercept via column-pivoted Householder QR. Standard
/// errors come from the residual variance and the inverse cross-product
/// diagonal. Throws InputError on rank deficiency, naming the dependent
/// columns.
OlsFit ols_fit(const std::vector<std::vector<double>>& columns,
               const std::vector<double>& y,
               const std::vector<std::string>* names = nullptr);

struct PredictorStats {
  std::string name;
  double B = 0.0;    // unstandardized coefficient
  double SEB = 0.0;  // standard error of B
  double b = 0.0;    // standardized coefficient
  double t = 0.0;
  double p = 1.0;  // two-sided
};

struct RegressionStageResult {
  std::vector<PredictorStats> predictors;
  double R_signed = 0.0;  // sign(sum of standardized b) * sqrt(R2), display convention
  double R_plain = 0.0;   // sqrt(R2)
  double R2 = 0.0;
  double delta_R2 = 0.0;
  double F_change = 0.0;
  double p_F = 1.0;
  bool f_infinite = false;  // saturated stage, R2 == 1
};

/// Staged OLS: stage k fits on the union of groups 1..k; delta R2 is taken
/// against the previous stage (stage 1 against the intercept-only model) and
/// tested with the standard F-change statistic.
std::vector<RegressionStageResult> hierarchical_regression(
    const DesignMatrix& X, const std::vector<std::vector<std::string>>& stages);

void write_regress_report_json(std::ostream& out,
                               const std::vector<RegressionStageResult>& stages,
                               const std::vector<std::vector<std::string>>& stage_groups,
                               const VifResult& screen);

/// Regularized incomplete beta I_x(a, b); exposed for the t / F tail areas.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

/// Upper tail of the F distribution with (df1, df2) degrees of freedom.
double f_upper_p(double f, double df1, double df2);

}  // namespace bridgekit

#endif  // BRIDGEKIT_REGRESSION_HPP_
