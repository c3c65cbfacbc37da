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

#include "ronmf/types.hpp"

#include <cmath>
#include <sstream>

namespace ronmf {
namespace {

[[noreturn]] void out_of_range(const char* name, const char* bound,
                               double value) {
  std::ostringstream os;
  os << name << " must be " << bound << ", got " << value;
  throw InvalidArgument(os.str());
}

}  // namespace

ConstraintSpec ConstraintSpec::elastic_net(double g1, double g2) {
  ConstraintSpec spec;
  spec.kind = DictConstraint::kElasticNetBall;
  spec.gamma1 = g1;
  spec.gamma2 = g2;
  spec.validate();
  return spec;
}

void ConstraintSpec::validate() const {
  if (kind == DictConstraint::kElasticNetBall) {
    if (!(gamma1 >= 0.0)) out_of_range("gamma1", ">= 0", gamma1);
    if (!(gamma2 >= 0.0)) out_of_range("gamma2", ">= 0", gamma2);
    if (!(gamma1 + gamma2 > 0.0)) {
      out_of_range("gamma1 + gamma2", "> 0", gamma1 + gamma2);
    }
  }
  if (outlier.kind != OutlierKind::kUnbounded && !(outlier.bound > 0.0)) {
    out_of_range("M", "> 0 (or inf)", outlier.bound);
  }
}

std::string to_string(DictConstraint kind) {
  switch (kind) {
    case DictConstraint::kUnitNonnegL2Ball: return "unit_nonneg_l2_ball";
    case DictConstraint::kNonnegOrthant: return "nonneg_orthant";
    case DictConstraint::kProbabilitySimplex: return "probability_simplex";
    case DictConstraint::kElasticNetBall: return "elastic_net_ball";
  }
  return "unknown";
}

std::string to_string(OutlierKind kind) {
  switch (kind) {
    case OutlierKind::kSignedBox: return "signed_box";
    case OutlierKind::kNonnegBox: return "nonneg_box";
    case OutlierKind::kUnbounded: return "unbounded";
  }
  return "unknown";
}

DictConstraint dict_constraint_from_string(const std::string& name) {
  if (name == "unit_nonneg_l2_ball") return DictConstraint::kUnitNonnegL2Ball;
  if (name == "nonneg_orthant") return DictConstraint::kNonnegOrthant;
  if (name == "probability_simplex") return DictConstraint::kProbabilitySimplex;
  if (name == "elastic_net_ball") return DictConstraint::kElasticNetBall;
  throw InvalidArgument("unknown dictionary constraint '" + name + "'");
}

OutlierKind outlier_kind_from_string(const std::string& name) {
  if (name == "signed_box") return OutlierKind::kSignedBox;
  if (name == "nonneg_box") return OutlierKind::kNonnegBox;
  if (name == "unbounded") return OutlierKind::kUnbounded;
  throw InvalidArgument("unknown outlier kind '" + name + "'");
}

double HyperParams::lambda_for(Index F) const {
  if (lambda) return *lambda;
  return 1.0 / std::sqrt(static_cast<double>(F));
}

void HyperParams::validate() const {
  if (lambda && !(*lambda >= 0.0)) out_of_range("lambda", ">= 0", *lambda);
  if (K < 1) out_of_range("K", ">= 1", static_cast<double>(K));
  if (tau < 1) out_of_range("tau", ">= 1", static_cast<double>(tau));
  if (!(kappa_bar > 0.0 && kappa_bar <= 1.0)) {
    out_of_range("kappa_bar", "in (0, 1]", kappa_bar);
  }
  if (!(kappa_tilde > 0.0 && kappa_tilde <= 1.0)) {
    out_of_range("kappa_tilde", "in (0, 1]", kappa_tilde);
  }
  if (!(rho1 > 0.0)) out_of_range("rho1", "> 0", rho1);
  if (!(rho2 > 0.0)) out_of_range("rho2", "> 0", rho2);
  if (!(rho3 > 0.0)) out_of_range("rho3", "> 0", rho3);
  if (!(eps_encode > 0.0)) out_of_range("eps_encode", "> 0", eps_encode);
  if (max_iter_encode < 1) {
    out_of_range("max_iter_encode", ">= 1", static_cast<double>(max_iter_encode));
  }
  if (!(eps_dict > 0.0)) out_of_range("eps_dict", "> 0", eps_dict);
  if (max_iter_dict < 1) {
    out_of_range("max_iter_dict", ">= 1", static_cast<double>(max_iter_dict));
  }
  if (!(nu1 >= 0.0)) out_of_range("nu1", ">= 0", nu1);
  if (!(nu2 >= 0.0)) out_of_range("nu2", ">= 0", nu2);
  if (!(lambda_h_l1 >= 0.0)) out_of_range("lambda_h_l1", ">= 0", lambda_h_l1);
  constraint.validate();
}

SufficientStats SufficientStats::zeros(Index F, Index K) {
  SufficientStats s;
  s.A = Matrix::Zero(K, K);
  s.B = Matrix::Zero(F, K);
  return s;
}

void SufficientStats::fold(const Matrix& H, const Matrix& v_minus_r,
                           const Vector& consts) {
  const Index n = H.cols();
  if (n == 0) return;
  if (H.rows() != A.rows() || v_minus_r.rows() != B.rows() ||
      v_minus_r.cols() != n || consts.size() != n) {
    throw DimensionError("SufficientStats::fold: inconsistent shapes");
  }
  const double t_old = static_cast<double>(samples_seen);
  const double t_new = t_old + static_cast<double>(n);
  A = (t_old * A + H * H.transpose()) / t_new;
  B = (t_old * B + v_minus_r * H.transpose()) / t_new;
  offset = (t_old * offset + consts.sum()) / t_new;
  samples_seen += n;
}

double tilde_ell(const Vector& v, const Matrix& W, const Vector& h,
                 const Vector& r, const HyperParams& params) {
  if (W.rows() != v.size() || W.cols() != h.size() || r.size() != v.size()) {
    throw DimensionError("tilde_ell: dimension mismatch");
  }
  require_finite(v, "v");
  require_finite(W, "W");
  require_finite(h, "h");
  require_finite(r, "r");
  const double lambda = params.lambda_for(v.size());
  double value = 0.5 * (v - W * h - r).squaredNorm() +
                 lambda * r.lpNorm<1>();
  if (params.nu1 > 0.0) value += 0.5 * params.nu1 * h.squaredNorm();
  if (params.nu2 > 0.0) value += 0.5 * params.nu2 * r.squaredNorm();
  if (params.lambda_h_l1 > 0.0) value += params.lambda_h_l1 * h.lpNorm<1>();
  return value;
}

bool feasible_column(const Vector& x, const ConstraintSpec& spec) {
  if (x.size() > 0 && x.minCoeff() < -kFeasibilitySlack) return false;
  switch (spec.kind) {
    case DictConstraint::kUnitNonnegL2Ball:
      return x.norm() <= 1.0 + kFeasibilitySlack;
    case DictConstraint::kNonnegOrthant:
      return true;
    case DictConstraint::kProbabilitySimplex:
      return std::abs(x.sum() - 1.0) <= kFeasibilitySlack;
    case DictConstraint::kElasticNetBall:
      return spec.gamma1 * x.lpNorm<1>() +
                 0.5 * spec.gamma2 * x.squaredNorm() <=
             1.0 + kFeasibilitySlack;
  }
  return false;
}

bool feasible(const Matrix& W, const ConstraintSpec& spec) {
  for (Index j = 0; j < W.cols(); ++j) {
    if (!feasible_column(W.col(j), spec)) return false;
  }
  return true;
}

bool feasible(const Vector& r, const OutlierSet& set) {
  const double M = set.M();
  for (Index i = 0; i < r.size(); ++i) {
    const double lo = set.nonneg() ? 0.0 : -M;
    if (r[i] < lo - kFeasibilitySlack || r[i] > M + kFeasibilitySlack) {
      return false;
    }
  }
  return true;
}

void require_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) {
    throw InvalidArgument(std::string(what) + " contains non-finite entries");
  }
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw InvalidArgument(std::string(what) + " contains non-finite entries");
  }
}

}  // namespace ronmf
