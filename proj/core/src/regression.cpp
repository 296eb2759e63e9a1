#include "bridgekit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <json.hpp>

#include "bridgekit/graph.hpp"

namespace bridgekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd with_intercept(const std::vector<std::vector<double>>& columns,
                               std::size_t n) {
  Eigen::MatrixXd X(n, columns.size() + 1);
  X.col(0).setOnes();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw InputError("ols_fit: column length mismatch");
    X.col(j + 1) = Eigen::Map<const Eigen::VectorXd>(columns[j].data(), n);
  }
  return X;
}

double sample_sd(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

// Lentz continued fraction for the incomplete beta function.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double f_upper_p(double f, double df1, double df2) {
  if (!std::isfinite(f)) return 0.0;
  if (f <= 0.0) return 1.0;
  return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

const std::vector<double>& DesignMatrix::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == name) return columns[j];
  throw InputError("design matrix has no column '" + name + "'");
}

OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
               const std::vector<std::string>* names) {
  const std::size_t n = y.size();
  const std::size_t p = columns.size();
  if (n <= p + 1) throw InputError("ols_fit: need more rows than columns plus intercept");

  Eigen::MatrixXd X = with_intercept(columns, n);
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  const auto rank = qr.rank();
  if (static_cast<std::size_t>(rank) < p + 1) {
    std::string culprits;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = rank; k < perm.size(); ++k) {
      const Eigen::Index col = perm[k];
      if (col == 0) continue;  // intercept
      if (!culprits.empty()) culprits += ", ";
      culprits += names ? (*names)[col - 1] : ("column " + std::to_string(col - 1));
    }
    throw InputError("ols_fit: rank-deficient design, dependent columns: " + culprits);
  }

  Eigen::VectorXd beta = qr.solve(yv);
  Eigen::VectorXd resid = yv - X * beta;
  const double rss = resid.squaredNorm();
  const double mean_y = yv.mean();
  const double tss = (yv.array() - mean_y).square().sum();

  OlsFit fit;
  fit.df_residual = n - p - 1;
  fit.residual_variance = rss / static_cast<double>(fit.df_residual);
  fit.r2 = tss > 0.0 ? std::max(0.0, 1.0 - rss / tss) : 1.0;

  // (X'X)^-1 = P R^-1 R^-T P' from the pivoted QR factorization.
  Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p + 1, p + 1).triangularView<Eigen::Upper>();
  Eigen::MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p + 1, p + 1));
  Eigen::MatrixXd cov_unpivoted = r_inv * r_inv.transpose();
  Eigen::MatrixXd cov = qr.colsPermutation() * cov_unpivoted *
                        qr.colsPermutation().transpose();

  fit.coef.resize(p + 1);
  fit.se.resize(p + 1);
  for (std::size_t j = 0; j <= p; ++j) {
    fit.coef[j] = beta[j];
    fit.se[j] = std::sqrt(std::max(0.0, fit.residual_variance * cov(j, j)));
  }
  return fit;
}

VifResult vif_screen(const DesignMatrix& X, double threshold) {
  if (X.names.size() < 2) throw InputError("vif_screen: need at least 2 columns");
  if (X.rows() <= X.names.size()) throw InputError("vif_screen: need more rows than columns");

  std::vector<std::size_t> active(X.names.size());
  for (std::size_t j = 0; j < active.size(); ++j) active[j] = j;

  VifResult result;
  while (active.size() >= 2) {
    std::vector<double> vifs(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto& target = X.columns[active[k]];
      const std::size_t n = target.size();
      Eigen::Map<const Eigen::VectorXd> yv(target.data(), n);
      const double tss = (yv.array() - yv.mean()).square().sum();
      if (tss <= 0.0) {
        vifs[k] = kInf;  // constant column, collinear with the intercept
        continue;
      }
      std::vector<std::vector<double>> others;
      for (std::size_t m = 0; m < active.size(); ++m)
        if (m != k) others.push_back(X.columns[active[m]]);
      Eigen::MatrixXd M = with_intercept(others, n);
      // qr.solve tolerates rank deficiency among the remaining columns.
      Eigen::VectorXd beta = M.colPivHouseholderQr().solve(yv);
      const double rss = (yv - M * beta).squaredNorm();
      const double r2 = 1.0 - rss / tss;
      vifs[k] = r2 >= 1.0 - 1e-12 ? kInf : 1.0 / (1.0 - r2);
    }
    // Largest VIF wins; among ties (e.g. two infinities) drop the
    // later-listed column.
    std::size_t worst = 0;
    for (std::size_t k = 1; k < active.size(); ++k)
      if (vifs[k] >= vifs[worst]) worst = k;
    if (vifs[worst] <= threshold) break;
    result.dropped.push_back({X.names[active[worst]], vifs[worst]});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  for (std::size_t j : active) result.kept.push_back(X.names[j]);
  return result;
}

std::vector<RegressionStageResult> hierarchical_regression(
    const DesignMatrix& X, const std::vector<std::vector<std::string>>& stages) {
  const std::size_t n = X.rows();
  const double sd_y = sample_sd(X.response);

  std::vector<RegressionStageResult> results;
  std::vector<std::string> current_names;
  std::vector<std::vector<double>> current_cols;
  double prev_r2 = 0.0;

  for (const auto& group : stages) {
    if (group.empty()) throw InputError("hierarchical_regression: empty stage group");
    for (const auto& name : group) {
      if (std::find(current_names.begin(), current_names.end(), name) != current_names.end())
        throw InputError("hierarchical_regression: column '" + name +
                         "' appears in two stages");
      current_names.push_back(name);
      current_cols.push_back(X.column(name));
    }

    OlsFit fit = ols_fit(current_cols, X.response, &current_names);
    RegressionStageResult stage;
    stage.R2 = fit.r2;
    stage.delta_R2 = fit.r2 - prev_r2;
    stage.R_plain = std::sqrt(fit.r2);

    double b_sum = 0.0;
    for (std::size_t j = 0; j < current_names.size(); ++j) {
      PredictorStats ps;
      ps.name = current_names[j];
      ps.B = fit.coef[j + 1];
      ps.SEB = fit.se[j + 1];
      ps.b = sd_y > 0.0 ? ps.B * sample_sd(current_cols[j]) / sd_y : 0.0;
      ps.t = ps.SEB > 0.0 ? ps.B / ps.SEB : (ps.B == 0.0 ? 0.0 : kInf * (ps.B > 0 ? 1 : -1));
      ps.p = t_two_sided_p(ps.t, static_cast<double>(fit.df_residual));
      b_sum += ps.b;
      stage.predictors.push_back(std::move(ps));
    }
    stage.R_signed = (b_sum < 0.0 ? -1.0 : 1.0) * stage.R_plain;

    const double q = static_cast<double>(group.size());
    const double df2 = static_cast<double>(n - current_names.size() - 1);
    const double denom = (1.0 - stage.R2) / df2;
    if (denom <= 0.0) {
      stage.f_infinite = true;
      stage.F_change = kInf;
      stage.p_F = 0.0;
    } else {
      stage.F_change = (stage.delta_R2 / q) / denom;
      stage.p_F = f_upper_p(stage.F_change, q, df2);
    }
    prev_r2 = stage.R2;
    results.push_back(std::move(stage));
  }
  return results;
}

void write_regress_report_json(std::ostream& out,
                               const std::vector<RegressionStageResult>& stages,
                               const std::vector<std::vector<std::string>>& stage_groups,
                               const VifResult& screen) {
  nlohmann::json j;
  j["vif_screen"]["kept"] = screen.kept;
  j["vif_screen"]["dropped"] = nlohmann::json::array();
  for (const auto& d : screen.dropped) {
    j["vif_screen"]["dropped"].push_back(
        {{"name", d.name},
         {"vif", std::isfinite(d.vif) ? nlohmann::json(d.vif) : nlohmann::json("inf")}});
  }
  j["stages"] = nlohmann::json::array();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& s = stages[k];
    nlohmann::json js;
    js["stage"] = k + 1;
    js["added"] = k < stage_groups.size() ? stage_groups[k] : std::vector<std::string>{};
    js["R"] = s.R_signed;
    js["R_unsigned"] = s.R_plain;
    js["R2"] = s.R2;
    js["delta_R2"] = s.delta_R2;
    js["F_change"] = s.f_infinite ? nlohmann::json("inf") : nlohmann::json(s.F_change);
    js["p_F"] = s.p_F;
    js["predictors"] = nlohmann::json::array();
    for (const auto& ps : s.predictors) {
      js["predictors"].push_back({{"name", ps.name},
                                  {"B", ps.B},
                                  {"SEB", ps.SEB},
                                  {"b", ps.b},
                                  {"t", std::isfinite(ps.t) ? nlohmann::json(ps.t)
                                                            : nlohmann::json("inf")},
                                  {"p", ps.p}});
    }
    j["stages"].push_back(std::move(js));
  }
  out << j.dump(2) << '\n';
}

}  // namespace bridgekit
