#include "hullscope/modulus_lp.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <algorithm>
#include <numbers>
#include <vector>

#include "hullscope/errors.hpp"

namespace hullscope {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::bounded:
      return "bounded";
    case LpStatus::unbounded:
      return "unbounded";
    case LpStatus::infeasible_numerics:
      return "infeasible_numerics";
  }
  return "?";
}

namespace {

// Revised primal simplex on the dual program
//
//   minimize   rhs * sum y_jk + cap * sum (s+_i + s-_i)
//   subject to sum y_jk a_jk + s+ - s- = c,   y, s >= 0,
//
// whose simplex multipliers are the primal coefficients. The cap columns
// +-e_i give an immediately feasible starting basis. Pricing exploits
// a_jk . pi = Re(e^{i theta_k} (u_j . pi + i u'_j . pi)), so one pair of dot
// products per sample prices all K directions.
class DualSimplex {
 public:
  DualSimplex(const Eigen::MatrixXcd& values, const Eigen::VectorXcd& target, const ModulusLpOptions& opt)
      : opt_(opt),
        samples_(static_cast<int>(values.rows())),
        n_(static_cast<int>(values.cols())),
        m_(2 * n_),
        k_(opt.directions) {
    re_part_.resize(m_, samples_);
    im_part_.resize(m_, samples_);
    norms_.resize(samples_);
    for (int j = 0; j < samples_; ++j) {
      for (int i = 0; i < n_; ++i) {
        const std::complex<double> v = values(j, i);
        re_part_(i, j) = v.real();
        re_part_(n_ + i, j) = -v.imag();
        im_part_(i, j) = v.imag();
        im_part_(n_ + i, j) = v.real();
      }
      norms_(j) = values.row(j).norm();
    }
    c_.resize(m_);
    for (int i = 0; i < n_; ++i) {
      c_(i) = target(i).real();
      c_(n_ + i) = -target(i).imag();
    }
    cos_.resize(static_cast<std::size_t>(k_));
    sin_.resize(static_cast<std::size_t>(k_));
    for (int k = 0; k < k_; ++k) {
      const double t = 2.0 * std::numbers::pi * k / k_;
      cos_[static_cast<std::size_t>(k)] = std::cos(t);
      sin_[static_cast<std::size_t>(k)] = std::sin(t);
    }
    a_columns_ = static_cast<long>(samples_) * k_;
    in_basis_.assign(static_cast<std::size_t>(a_columns_ + 2 * m_), 0);
  }

  ModulusLpResult run(const LpBasis* warm) {
    ModulusLpResult out;
    out.n_constraints = static_cast<int>(a_columns_);
    out.n_variables = m_;

    const int max_iter = opt_.max_iterations > 0 ? opt_.max_iterations : 200 * m_ + 20 * samples_ + 1000;
    int iter = 0;
    // A previous optimal basis stays dual feasible when only the objective
    // target moves; the dual simplex then restores primal feasibility.
    bool warm_ok = warm != nullptr && load_basis(*warm) && dual_phase(4 * m_ + 100, iter);
    if (!warm_ok) start_basis();
    out.warm_started = warm_ok;

    for (int round = 0;; ++round) {
      if (!primal_phase(max_iter, iter)) return fail(out, iter);
      // rounding can leave a basic weight slightly negative; on a cap
      // column that is visible in the objective, so repair it
      if (round >= 3 || worst_infeasible_row() < 0) break;
      if (!dual_phase(4 * m_ + 100, iter)) break;
    }

    out.iterations = iter;
    finish(out);
    return out;
  }

 private:
  bool primal_phase(int max_iter, int& iter) {
    int since_refactor = 0;
    int stall = 0;
    bool bland = false;
    double best_objective = objective();

    for (; iter < max_iter; ++iter) {
      if (since_refactor >= kRefactorPeriod) {
        if (!refactor()) return false;
        since_refactor = 0;
      }
      compute_multipliers();
      const Entering enter = bland ? price_bland() : price_dantzig();
      if (enter.id < 0) {
        if (since_refactor > 0) {
          // confirm optimality on a fresh factorization
          if (!refactor()) return false;
          since_refactor = 0;
          compute_multipliers();
          const Entering again = bland ? price_bland() : price_dantzig();
          if (again.id < 0) break;
          if (!pivot(again, bland)) return false;
        } else {
          break;
        }
      } else if (!pivot(enter, bland)) {
        return false;
      }
      ++since_refactor;

      const double obj = objective();
      if (obj < best_objective - 1e-13 * (std::abs(best_objective) + opt_.rhs)) {
        best_objective = obj;
        stall = 0;
        bland = false;
      } else if (++stall > kStallLimit) {
        bland = true;
      }
    }
    return iter < max_iter;
  }

  // row with the most objective-relevant negative weight, or -1
  int worst_infeasible_row() const {
    const double scale = 1.0 + xb_.cwiseAbs().maxCoeff();
    const double obj_tol = 1e-10 * (opt_.rhs + std::abs(objective()));
    int r = -1;
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double c = cost(basis_[static_cast<std::size_t>(i)]);
      if (xb_(i) >= -1e-13 * scale || xb_(i) * c >= -obj_tol) continue;
      const double v = xb_(i) * c / binv_.row(i).norm();
      if (v < worst) {
        worst = v;
        r = i;
      }
    }
    return r;
  }

  static constexpr int kRefactorPeriod = 40;
  static constexpr int kStallLimit = 60;
  static constexpr double kOptTol = 1e-10;
  // rounding in a . pi grows with |a| |pi|; pi is large whenever a capped
  // direction is in play
  static constexpr double kDotEps = 1e-13;

  struct Entering {
    long id = -1;
  };

  bool is_cap(long id) const { return id >= a_columns_; }
  double cost(long id) const { return is_cap(id) ? opt_.cap : opt_.rhs; }

  Eigen::VectorXd column(long id) const {
    if (is_cap(id)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
      const long c = id - a_columns_;
      if (c < m_) {
        e(c) = 1.0;
      } else {
        e(c - m_) = -1.0;
      }
      return e;
    }
    const int j = static_cast<int>(id / k_);
    const auto k = static_cast<std::size_t>(id % k_);
    return cos_[k] * re_part_.col(j) - sin_[k] * im_part_.col(j);
  }

  void start_basis() {
    std::fill(in_basis_.begin(), in_basis_.end(), 0);
    basis_.resize(static_cast<std::size_t>(m_));
    binv_ = Eigen::MatrixXd::Zero(m_, m_);
    xb_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const bool plus = c_(i) >= 0.0;
      const long id = a_columns_ + (plus ? i : m_ + i);
      basis_[static_cast<std::size_t>(i)] = id;
      in_basis_[static_cast<std::size_t>(id)] = 1;
      binv_(i, i) = plus ? 1.0 : -1.0;
      xb_(i) = std::abs(c_(i));
    }
  }

  bool refactor() {
    Eigen::MatrixXd b(m_, m_);
    for (int r = 0; r < m_; ++r) b.col(r) = column(basis_[static_cast<std::size_t>(r)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (!(lu.rcond() > 1e-14)) return repair();
    binv_ = lu.inverse();
    if (!binv_.allFinite()) return false;
    xb_ = binv_ * c_;
    return xb_.allFinite();
  }

  // Near-singular basis (the sample columns only span a subspace when the
  // monomials are dependent on the curve): keep a well-conditioned subset of
  // the basic columns and complete it with cap columns.
  bool repair() {
    std::vector<long> keep;
    Eigen::MatrixXd q(m_, 0);
    auto add = [&](const Eigen::VectorXd& a) {
      Eigen::VectorXd v = a;
      for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
      if (v.norm() <= 1e-8 * a.norm()) return false;
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = v.normalized();
      return true;
    };
    for (long id : basis_)
      if (!is_cap(id) && add(column(id))) keep.push_back(id);
    for (long id : basis_)
      if (is_cap(id) && add(column(id))) keep.push_back(id);
    while (static_cast<int>(keep.size()) < m_) {
      // unit vector least covered by the current span
      int best = -1;
      double best_norm = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double v = 1.0 - q.row(i).squaredNorm();
        if (v > best_norm) {
          best_norm = v;
          best = i;
        }
      }
      if (best < 0 || !add(Eigen::VectorXd::Unit(m_, best))) return false;
      keep.push_back(a_columns_ + best);
    }
    std::fill(in_basis_.begin(), in_basis_.end(), 0);
    basis_ = keep;
    for (long id : basis_) in_basis_[static_cast<std::size_t>(id)] = 1;

    Eigen::MatrixXd b(m_, m_);
    for (int r = 0; r < m_; ++r) b.col(r) = column(basis_[static_cast<std::size_t>(r)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (!(lu.rcond() > 1e-14)) return false;
    binv_ = lu.inverse();
    xb_ = binv_ * c_;
    // a cap column with negative weight becomes its mirror
    for (int r = 0; r < m_; ++r) {
      const long id = basis_[static_cast<std::size_t>(r)];
      if (!is_cap(id) || xb_(r) >= 0.0) continue;
      const long mirror = id - a_columns_ < m_ ? id + m_ : id - m_;
      if (in_basis_[static_cast<std::size_t>(mirror)]) continue;
      in_basis_[static_cast<std::size_t>(id)] = 0;
      in_basis_[static_cast<std::size_t>(mirror)] = 1;
      basis_[static_cast<std::size_t>(r)] = mirror;
      binv_.row(r) *= -1.0;
      xb_(r) = -xb_(r);
    }
    return binv_.allFinite() && xb_.allFinite();
  }

  double objective() const {
    double s = 0.0;
    for (int r = 0; r < m_; ++r) s += cost(basis_[static_cast<std::size_t>(r)]) * xb_(r);
    return s;
  }

  void compute_multipliers() {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost(basis_[static_cast<std::size_t>(r)]);
    pi_.noalias() = binv_.transpose() * cb;
    pi_norm_ = pi_.norm();
    p_.noalias() = re_part_.transpose() * pi_;
    q_.noalias() = im_part_.transpose() * pi_;
  }

  // direction k maximizing cos(theta_k) p - sin(theta_k) q for sample j
  int best_direction(int j) const {
    const double phi = std::atan2(q_(j), p_(j));
    long k = std::lround(-phi * k_ / (2.0 * std::numbers::pi));
    k %= k_;
    if (k < 0) k += k_;
    return static_cast<int>(k);
  }

  double price_tol(int j, double dot) const {
    return kOptTol * (opt_.rhs + std::abs(dot)) + kDotEps * norms_(j) * pi_norm_;
  }

  double a_dot_pi(int j, int k) const {
    return cos_[static_cast<std::size_t>(k)] * p_(j) - sin_[static_cast<std::size_t>(k)] * q_(j);
  }

  Entering price_dantzig() const {
    Entering best;
    double best_score = 0.0;
    for (int j = 0; j < samples_; ++j) {
      if (norms_(j) == 0.0) continue;
      const int k = best_direction(j);
      const long id = static_cast<long>(j) * k_ + k;
      if (in_basis_[static_cast<std::size_t>(id)]) continue;
      const double dot = a_dot_pi(j, k);
      const double rc = opt_.rhs - dot;
      if (rc >= -price_tol(j, dot)) continue;
      const double score = rc / norms_(j);
      if (score < best_score) {
        best_score = score;
        best.id = id;
      }
    }
    for (int i = 0; i < m_; ++i) {
      for (int sign = 0; sign < 2; ++sign) {
        const long id = a_columns_ + (sign == 0 ? i : m_ + i);
        if (in_basis_[static_cast<std::size_t>(id)]) continue;
        const double rc = opt_.cap - (sign == 0 ? pi_(i) : -pi_(i));
        if (rc >= -kOptTol * (opt_.cap + std::abs(pi_(i)))) continue;
        if (rc < best_score) {
          best_score = rc;
          best.id = id;
        }
      }
    }
    return best;
  }

  Entering price_bland() const {
    Entering best;
    for (int j = 0; j < samples_; ++j) {
      if (norms_(j) == 0.0) continue;
      for (int k = 0; k < k_; ++k) {
        const long id = static_cast<long>(j) * k_ + k;
        if (in_basis_[static_cast<std::size_t>(id)]) continue;
        const double dot = a_dot_pi(j, k);
        if (opt_.rhs - dot < -price_tol(j, dot)) {
          best.id = id;
          return best;
        }
      }
    }
    for (int c = 0; c < 2 * m_; ++c) {
      const long id = a_columns_ + c;
      if (in_basis_[static_cast<std::size_t>(id)]) continue;
      const int i = c < m_ ? c : c - m_;
      const double dot = c < m_ ? pi_(i) : -pi_(i);
      if (opt_.cap - dot < -kOptTol * (opt_.cap + std::abs(dot))) {
        best.id = id;
        return best;
      }
    }
    return best;
  }

  bool pivot(const Entering& enter, bool bland) {
    const Eigen::VectorXd a = column(enter.id);
    const Eigen::VectorXd alpha = binv_ * a;
    const double amax = alpha.cwiseAbs().maxCoeff();
    if (!(amax > 0.0) || !std::isfinite(amax)) return false;
    const double piv_tol = 1e-9 * amax;
    const double delta_base = 1e-10 * (1.0 + xb_.cwiseAbs().maxCoeff());
    // Harris slack in units of objective: cap rows get rhs / cap of it
    auto delta = [&](int r) { return delta_base * std::min(1.0, opt_.rhs / cost(basis_[static_cast<std::size_t>(r)])); };

    // Harris two-pass ratio test (Bland: exact minimum, least column id)
    int leave = -1;
    if (!bland) {
      double t_max = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r)
        if (alpha(r) > piv_tol) t_max = std::min(t_max, (xb_(r) + delta(r)) / alpha(r));
      if (!std::isfinite(t_max)) return false;
      double best_alpha = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (alpha(r) > piv_tol && xb_(r) / alpha(r) <= t_max && alpha(r) > best_alpha) {
          best_alpha = alpha(r);
          leave = r;
        }
      }
    } else {
      double t_min = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r)
        if (alpha(r) > piv_tol) t_min = std::min(t_min, std::max(xb_(r), 0.0) / alpha(r));
      if (!std::isfinite(t_min)) return false;
      long best_id = std::numeric_limits<long>::max();
      for (int r = 0; r < m_; ++r) {
        if (alpha(r) > piv_tol && std::max(xb_(r), 0.0) / alpha(r) <= t_min * (1.0 + 1e-12) + 1e-300 &&
            basis_[static_cast<std::size_t>(r)] < best_id) {
          best_id = basis_[static_cast<std::size_t>(r)];
          leave = r;
        }
      }
    }
    if (leave < 0) return false;

    update_basis(enter.id, leave, alpha, std::max(xb_(leave), 0.0) / alpha(leave));
    return true;
  }

  void update_basis(long enter, int leave, const Eigen::VectorXd& alpha, double t) {
    xb_ -= t * alpha;
    xb_(leave) = t;

    // product-form update of the explicit inverse
    const Eigen::RowVectorXd pivot_row = binv_.row(leave) / alpha(leave);
    Eigen::VectorXd alpha_off = alpha;
    alpha_off(leave) = 0.0;
    binv_.noalias() -= alpha_off * pivot_row;
    binv_.row(leave) = pivot_row;

    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = 0;
    basis_[static_cast<std::size_t>(leave)] = enter;
    in_basis_[static_cast<std::size_t>(enter)] = 1;
  }

  bool load_basis(const LpBasis& warm) {
    if (static_cast<int>(warm.size()) != m_) return false;
    std::fill(in_basis_.begin(), in_basis_.end(), 0);
    for (long id : warm) {
      if (id < 0 || id >= a_columns_ + 2 * m_ || in_basis_[static_cast<std::size_t>(id)]) return false;
      in_basis_[static_cast<std::size_t>(id)] = 1;
    }
    basis_ = warm;
    return refactor();
  }

  // Dual simplex from a dual-feasible basis until xB >= 0.
  bool dual_phase(int limit, int& iter) {
    compute_multipliers();
    if (price_dantzig().id >= 0) return false;
    int since_refactor = 0;
    for (int local = 0; local < limit; ++local, ++iter) {
      if (since_refactor >= kRefactorPeriod) {
        if (!refactor()) return false;
        since_refactor = 0;
        compute_multipliers();
      }
      // infeasibility is weighed by column cost: a slightly negative cap
      // weight moves the objective by cap times as much
      const int r = worst_infeasible_row();
      if (r < 0) return true;

      const Eigen::VectorXd rho = binv_.row(r).transpose();
      const Eigen::VectorXd pr = re_part_.transpose() * rho;
      const Eigen::VectorXd qr = im_part_.transpose() * rho;
      const double rho_norm = rho.norm();
      auto candidates = [&](auto&& visit) {
        for (int j = 0; j < samples_; ++j) {
          if (norms_(j) == 0.0) continue;
          const double piv = 1e-9 * norms_(j) * rho_norm;
          for (int k = 0; k < k_; ++k) {
            const long id = static_cast<long>(j) * k_ + k;
            const auto kk = static_cast<std::size_t>(k);
            const double alpha = cos_[kk] * pr(j) - sin_[kk] * qr(j);
            if (alpha >= -piv || in_basis_[static_cast<std::size_t>(id)]) continue;
            const double dot = a_dot_pi(j, k);
            visit(id, alpha, opt_.rhs - dot, price_tol(j, dot));
          }
        }
        for (int c = 0; c < 2 * m_; ++c) {
          const long id = a_columns_ + c;
          const int i = c < m_ ? c : c - m_;
          const double alpha = c < m_ ? rho(i) : -rho(i);
          if (alpha >= -1e-9 * rho_norm || in_basis_[static_cast<std::size_t>(id)]) continue;
          const double dot = c < m_ ? pi_(i) : -pi_(i);
          visit(id, alpha, opt_.cap - dot, kOptTol * (opt_.cap + std::abs(dot)) + kDotEps * pi_norm_);
        }
      };
      // Harris two-pass ratio test on the reduced costs
      double t_max = std::numeric_limits<double>::infinity();
      candidates([&](long, double alpha, double rc, double tol) {
        t_max = std::min(t_max, (std::max(rc, 0.0) + tol) / -alpha);
      });
      if (!std::isfinite(t_max)) return false;
      long enter = -1;
      double best = 0.0;
      candidates([&](long id, double alpha, double rc, double) {
        if (std::max(rc, 0.0) / -alpha <= t_max && -alpha > best) {
          best = -alpha;
          enter = id;
        }
      });
      if (enter < 0) return false;
      const Eigen::VectorXd alpha = binv_ * column(enter);
      if (!(alpha(r) < 0.0)) return false;
      update_basis(enter, r, alpha, xb_(r) / alpha(r));
      ++since_refactor;
      compute_multipliers();
    }
    return false;
  }

  ModulusLpResult& fail(ModulusLpResult& out, int iter) const {
    out.status = LpStatus::infeasible_numerics;
    out.iterations = iter;
    out.optimum = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  void finish(ModulusLpResult& out) {
    // pi is current from the last pricing pass
    out.coefficients.resize(n_);
    for (int i = 0; i < n_; ++i) out.coefficients(i) = {pi_(i), pi_(n_ + i)};
    out.optimum = c_.dot(pi_);

    double cap_share = 0.0;
    for (int r = 0; r < m_; ++r)
      if (is_cap(basis_[static_cast<std::size_t>(r)])) cap_share += opt_.cap * std::max(xb_(r), 0.0);
    out.cap_share = cap_share;
    out.basis = basis_;

    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples_; ++j) {
      if (norms_(j) == 0.0) continue;
      worst = std::max(worst, a_dot_pi(j, best_direction(j)));
    }
    out.max_violation = std::isfinite(worst) ? worst - opt_.rhs : -opt_.rhs;

    if (!std::isfinite(out.optimum)) {
      out.status = LpStatus::infeasible_numerics;
    } else if (out.optimum >= opt_.unbounded_threshold * opt_.rhs ||
               (cap_share > 0.0 && cap_share >= opt_.ray_share * out.optimum)) {
      out.status = LpStatus::unbounded;
    } else {
      out.status = LpStatus::bounded;
    }
  }

  ModulusLpOptions opt_;
  int samples_;
  int n_;
  int m_;
  int k_;
  long a_columns_ = 0;
  Eigen::MatrixXd re_part_;
  Eigen::MatrixXd im_part_;
  Eigen::VectorXd norms_;
  Eigen::VectorXd c_;
  std::vector<double> cos_;
  std::vector<double> sin_;

  std::vector<long> basis_;
  std::vector<char> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd pi_;
  double pi_norm_ = 0.0;
  Eigen::VectorXd p_;
  Eigen::VectorXd q_;
};

constexpr double kRankTol = 1e-10;

}  // namespace

ModulusLpResult solve_modulus_lp(const Eigen::MatrixXcd& values, const Eigen::VectorXcd& target,
                                 const ModulusLpOptions& options, const LpBasis* warm) {
  if (options.directions < 8 || options.directions % 2 != 0)
    throw PreconditionError("solve_modulus_lp: directions must be even and >= 8");
  if (values.cols() != target.size())
    throw PreconditionError("solve_modulus_lp: target length does not match the basis");
  if (values.rows() < 1 || values.cols() < 1) throw PreconditionError("solve_modulus_lp: empty problem");
  if (!(options.rhs > 0.0) || !(options.cap > 0.0))
    throw PreconditionError("solve_modulus_lp: rhs and cap must be positive");

  // Monomials that are dependent on the samples (the curve lies on an
  // algebraic set) make the program massively degenerate. Solve instead in an
  // orthonormal basis of the column space of `values`.
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(values);
  const Eigen::MatrixXcd r_full = qr.matrixR().template triangularView<Eigen::Upper>();
  const double r00 = std::abs(r_full(0, 0));
  Eigen::Index rank = 0;
  while (rank < std::min(values.rows(), values.cols()) && std::abs(r_full(rank, rank)) > kRankTol * r00) ++rank;
  if (rank == values.cols() || rank == 0) {
    DualSimplex solver(values, target, options);
    return solver.run(warm);
  }

  const auto& perm = qr.colsPermutation();
  const Eigen::VectorXcd pt = perm.transpose() * target;
  const Eigen::MatrixXcd r1 = r_full.topLeftCorner(rank, rank);
  const Eigen::MatrixXcd r2 = r_full.topRightCorner(rank, values.cols() - rank);
  // With c = P [c1; c2], u = R11 c1 + R12 c2 and v = c2, the samples see only
  // Q1 u while v is bounded by the cap alone, so the program splits:
  // objective = Re(y . u) + Re(t_perp . v), y = R11^{-T} t1, t_perp = t2 - R12^T y.
  const Eigen::VectorXcd y = r1.transpose().template triangularView<Eigen::Lower>().solve(pt.head(rank));
  Eigen::VectorXcd t_perp = pt.tail(values.cols() - rank) - r2.transpose() * y;
  // roundoff in t_perp would otherwise buy cap-sized kernel coefficients
  const double noise = 1e-13 * std::max(1.0, pt.norm()) * (1.0 + r2.norm() / r00);
  for (auto& t : t_perp) t = {std::abs(t.real()) > noise ? t.real() : 0.0, std::abs(t.imag()) > noise ? t.imag() : 0.0};
  const Eigen::MatrixXcd q1 = qr.householderQ() * Eigen::MatrixXcd::Identity(values.rows(), rank);
  DualSimplex solver(q1, y, options);
  ModulusLpResult out = solver.run(warm);
  out.n_variables = 2 * static_cast<int>(values.cols());
  if (out.status == LpStatus::infeasible_numerics) return out;

  Eigen::VectorXcd v(t_perp.size());
  double kernel_share = 0.0;
  for (Eigen::Index i = 0; i < t_perp.size(); ++i) {
    const double re = t_perp(i).real() > 0.0 ? options.cap : t_perp(i).real() < 0.0 ? -options.cap : 0.0;
    const double im = t_perp(i).imag() > 0.0 ? -options.cap : t_perp(i).imag() < 0.0 ? options.cap : 0.0;
    v(i) = {re, im};
    kernel_share += options.cap * (std::abs(t_perp(i).real()) + std::abs(t_perp(i).imag()));
  }
  // p = Q1 u on the samples; c1 = R11^{-1} (u - R12 v)
  Eigen::VectorXcd c(values.cols());
  c.head(rank) = r1.template triangularView<Eigen::Upper>().solve(out.coefficients - r2 * v);
  c.tail(values.cols() - rank) = v;
  out.coefficients = perm * c;
  out.optimum += kernel_share;
  out.cap_share += kernel_share;
  if (out.optimum >= options.unbounded_threshold * options.rhs ||
      (out.cap_share > 0.0 && out.cap_share >= options.ray_share * out.optimum))
    out.status = LpStatus::unbounded;
  return out;
}

}  // namespace hullscope
