// Copyright 2026 The ronmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RONMF_TYPES_HPP_
#define RONMF_TYPES_HPP_

// Shared domain types for online robust NMF.
//
// Matrix convention: every data matrix stores one sample per column, so a
// data matrix V is F x N, a dictionary W is F x K and a coefficient matrix
// H is K x N.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace ronmf {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base exception for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when operand shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised for out-of-range parameters and non-finite input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute slack used by every feasibility predicate.
inline constexpr double kFeasibilitySlack = 1e-9;

enum class DictConstraint {
  kUnitNonnegL2Ball,   // W >= 0, ||W_:j||_2 <= 1
  kNonnegOrthant,      // W >= 0
  kProbabilitySimplex, // W >= 0, ||W_:j||_1 == 1
  kElasticNetBall,     // W >= 0, g1 ||W_:j||_1 + g2/2 ||W_:j||_2^2 <= 1
};

enum class OutlierKind {
  kSignedBox,  // |r_i| <= M
  kNonnegBox,  // 0 <= r_i <= M
  kUnbounded,  // M = +inf
};

/// Constraint set R on the outlier vector.
struct OutlierSet {
  OutlierKind kind = OutlierKind::kSignedBox;
  double bound = 1.0;

  /// Effective box radius; +inf when unbounded.
  double M() const { return kind == OutlierKind::kUnbounded ? kInf : bound; }
  bool nonneg() const { return kind == OutlierKind::kNonnegBox; }
};

/// Column constraint on the dictionary plus the outlier set.
struct ConstraintSpec {
  DictConstraint kind = DictConstraint::kUnitNonnegL2Ball;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  OutlierSet outlier;

  static ConstraintSpec elastic_net(double g1, double g2);

  /// Throws InvalidArgument when the parameters are out of range.
  void validate() const;
};

std::string to_string(DictConstraint kind);
std::string to_string(OutlierKind kind);
DictConstraint dict_constraint_from_string(const std::string& name);
OutlierKind outlier_kind_from_string(const std::string& name);

/// Algorithm parameters. Defaults are the canonical setting: lambda = 1/sqrt(F),
/// M = 1, K = 49, rho = 1, kappa = 0.7.
struct HyperParams {
  /// l1 weight on r; unset means 1/sqrt(F).
  std::optional<double> lambda;
  Index K = 49;
  Index tau = 1;
  double kappa_bar = 0.7;
  double kappa_tilde = 0.7;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double rho3 = 1.0;
  double eps_encode = 1e-3;
  Index max_iter_encode = 50;
  double eps_dict = 1e-4;
  Index max_iter_dict = 200;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double lambda_h_l1 = 0.0;
  std::uint64_t seed = 0;
  ConstraintSpec constraint;

  double lambda_for(Index F) const;
  double M() const { return constraint.outlier.M(); }

  void validate() const;
};

/// A feasible dictionary together with the constraint it satisfies.
struct Dictionary {
  Matrix W;
  ConstraintSpec constraint;

  Index rows() const { return W.rows(); }
  Index cols() const { return W.cols(); }
};

struct EncodeResult {
  Vector h;
  Vector r;
  double objective = 0.0;
  Index iterations = 0;
  bool converged = false;
};

/// Running averages A_t = mean(h h^T), B_t = mean((v - r) h^T), plus the
/// running mean of the W-independent part of the per-sample loss, so the
/// surrogate can be evaluated without storing history.
struct SufficientStats {
  Matrix A;
  Matrix B;
  double offset = 0.0;
  Index samples_seen = 0;

  static SufficientStats zeros(Index F, Index K);

  /// Folds n new samples (columns of H and of V - R) into the averages.
  /// `consts` holds the per-sample W-independent loss terms.
  void fold(const Matrix& H, const Matrix& v_minus_r, const Vector& consts);
};

struct TraceRecord {
  Index t = 0;
  double wall_clock_s = 0.0;
  double surrogate_loss = 0.0;
  std::optional<double> regret_loss;
  double dict_drift = 0.0;
};

/// Per-sample objective: 1/2||v - Wh - r||^2 + lambda||r||_1 plus the
/// optional Tikhonov and l1 terms on h and r.
double tilde_ell(const Vector& v, const Matrix& W, const Vector& h,
                 const Vector& r, const HyperParams& params);

/// Column-wise feasibility of a dictionary.
bool feasible(const Matrix& W, const ConstraintSpec& spec);

/// Feasibility of a single dictionary column.
bool feasible_column(const Vector& x, const ConstraintSpec& spec);

/// Feasibility of an outlier vector.
bool feasible(const Vector& r, const OutlierSet& set);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& x, const char* what);
void require_finite(const Vector& x, const char* what);

}  // namespace ronmf

#endif  // RONMF_TYPES_HPP_
