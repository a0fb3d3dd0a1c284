#include "ghzledger/ree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "ghzledger/entropy.hpp"
#include "ghzledger/rng.hpp"

namespace ghzledger {

namespace {

constexpr double kEigenCutoff = 1e-12;
constexpr double kSupportTol = 1e-9;
constexpr double kIdentityMix = 1e-9;
const double kLn2 = std::log(2.0);

// ---- cut handling --------------------------------------------------------

struct CutView {
  Eigen::MatrixXcd rho;  // reindexed so the cut's left modes come first
  int dl = 0, dr = 0;
};

CutView make_cut_view(const DensityOperator& rho, const PartySubset& cut_left,
                      const ReeOptions& opts) {
  const auto left = rho.subset_modes(cut_left);
  const int n = static_cast<int>(rho.parties().size());
  if (left.empty() || static_cast<int>(left.size()) == n)
    throw precondition_error("ree: cut must be a nonempty proper subset");
  if (rho.dim() > opts.dim_cap)
    throw precondition_error("ree: total dimension " + std::to_string(rho.dim()) +
                             " exceeds the cap " + std::to_string(opts.dim_cap));

  std::vector<int> order = left;
  std::vector<bool> in_left(static_cast<size_t>(n), false);
  for (int m : left) in_left[static_cast<size_t>(m)] = true;
  for (int m = 0; m < n; ++m)
    if (!in_left[static_cast<size_t>(m)]) order.push_back(m);

  CutView cv;
  int dl = 1;
  for (int m : left) dl *= rho.parties()[static_cast<size_t>(m)].dim;
  cv.dl = dl;
  cv.dr = rho.dim() / dl;
  cv.rho = rho.permuted(order).matrix();
  return cv;
}

// ---- relative entropy pieces on raw matrices ------------------------------

double tr_rho_ln_rho(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > kEigenCutoff) s += lam * std::log(lam);
  }
  return s;
}

// tr rho ln sigma; nullopt when rho has mass outside sigma's support.
std::optional<double> tr_rho_ln_sigma(const Eigen::MatrixXcd& rho,
                                      const Eigen::MatrixXcd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
  double cross = 0.0, outside = 0.0;
  for (int j = 0; j < es.eigenvalues().size(); ++j) {
    const double mu = es.eigenvalues()(j);
    const Eigen::VectorXcd v = es.eigenvectors().col(j);
    const double q = std::real(v.dot(rho * v));
    if (mu > kEigenCutoff)
      cross += q * std::log(mu);
    else
      outside += std::max(q, 0.0);
  }
  if (outside > kSupportTol) return std::nullopt;
  return cross;
}

}  // namespace

// Gradient of S(rho||sigma) in bits with respect to sigma: the adjoint
// Frechet derivative of the matrix logarithm via the Daleckii-Krein
// divided-difference formula in sigma's eigenbasis.
Eigen::MatrixXcd detail::relative_entropy_gradient(const Eigen::MatrixXcd& rho,
                                                   const Eigen::MatrixXcd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
  const Eigen::VectorXd mu = es.eigenvalues().cwiseMax(1e-15);
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::MatrixXcd rho_t = v.adjoint() * rho * v;
  const int d = static_cast<int>(mu.size());
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double a = mu(i), b = mu(j);
      const double phi = std::abs(a - b) > 1e-12 * std::max(a, b)
                             ? (std::log(a) - std::log(b)) / (a - b)
                             : 1.0 / (0.5 * (a + b));
      g(i, j) = rho_t(i, j) * phi;
    }
  Eigen::MatrixXcd out = -(v * g * v.adjoint()) / kLn2;
  return 0.5 * (out + out.adjoint().eval());
}

namespace {

const auto& relent_gradient = detail::relative_entropy_gradient;

// ---- product-state oracle -------------------------------------------------

// A_y[a,a'] = sum_{b,b'} conj(y_b) G[(a,b),(a',b')] y_{b'}
Eigen::MatrixXcd contract_right(const Eigen::MatrixXcd& g, int dl, int dr,
                                const Eigen::VectorXcd& y) {
  Eigen::MatrixXcd out(dl, dl);
  for (int a = 0; a < dl; ++a)
    for (int a2 = 0; a2 < dl; ++a2)
      out(a, a2) = y.dot(g.block(a * dr, a2 * dr, dr, dr) * y);
  return 0.5 * (out + out.adjoint().eval());
}

// B_x[b,b'] = sum_{a,a'} conj(x_a) G[(a,b),(a',b')] x_{a'}
Eigen::MatrixXcd contract_left(const Eigen::MatrixXcd& g, int dl, int dr,
                               const Eigen::VectorXcd& x) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dr, dr);
  for (int a = 0; a < dl; ++a)
    for (int a2 = 0; a2 < dl; ++a2)
      out.noalias() += std::conj(x(a)) * x(a2) * g.block(a * dr, a2 * dr, dr, dr);
  return 0.5 * (out + out.adjoint().eval());
}

double product_value(const Eigen::MatrixXcd& g, int dl, int dr, const Eigen::VectorXcd& x,
                     const Eigen::VectorXcd& y) {
  return std::real(x.dot(contract_right(g, dl, dr, y) * x));
}

struct OracleResult {
  Eigen::VectorXcd x, y;
  double value = std::numeric_limits<double>::infinity();
};

// Minimizes <x (x) y| G |x (x) y> by alternating minimum-eigenvector sweeps
// with seeded random restarts; deterministic accept-best (ties keep the
// earlier restart).
OracleResult product_oracle(const Eigen::MatrixXcd& g, int dl, int dr, const ReeOptions& opts,
                            std::uint64_t iter_tag, const OracleResult* warm) {
  OracleResult best;
  const int restarts = std::max(1, opts.restarts);
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXcd x, y;
    if (r == 0 && warm != nullptr && warm->x.size() == dl) {
      x = warm->x;
      y = warm->y;
    } else {
      Rng rng = Rng::substream(opts.seed, 0xF17eULL, iter_tag, static_cast<std::uint64_t>(r));
      x = rng.unit_vector(dl);
      y = rng.unit_vector(dr);
    }
    double val = product_value(g, dl, dr, x, y);
    for (int s = 0; s < opts.sweeps; ++s) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ex(contract_right(g, dl, dr, y));
      x = ex.eigenvectors().col(0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ey(contract_left(g, dl, dr, x));
      y = ey.eigenvectors().col(0);
      const double nv = ey.eigenvalues()(0);
      if (val - nv < 1e-13 * (1.0 + std::abs(nv))) {
        val = nv;
        break;
      }
      val = nv;
    }
    if (val < best.value - 1e-15) {
      best.x = x;
      best.y = y;
      best.value = val;
    }
  }
  return best;
}

Eigen::VectorXcd product_vec(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  const int dl = static_cast<int>(x.size()), dr = static_cast<int>(y.size());
  Eigen::VectorXcd v(dl * dr);
  for (int a = 0; a < dl; ++a) v.segment(a * dr, dr) = x(a) * y;
  return v;
}

// ---- Frank-Wolfe over the separable hull ----------------------------------

struct FwObjective {
  const Eigen::MatrixXcd* rho;
  double rho_entropy_term;  // tr rho ln rho
  int dim;

  // S(rho || (1-eps) sigma + eps I/D) in bits; finite by construction.
  double operator()(const Eigen::MatrixXcd& sigma) const {
    Eigen::MatrixXcd mixed = (1.0 - kIdentityMix) * sigma +
                             (kIdentityMix / dim) * Eigen::MatrixXcd::Identity(dim, dim);
    const auto cross = tr_rho_ln_sigma(*rho, mixed);
    return (rho_entropy_term - cross.value()) / kLn2;
  }
};

// Golden-section minimization of f(sigma + t*dir) over [0, tmax]; endpoints
// are always sampled so accepted steps never increase the objective.
std::pair<double, double> line_search(const FwObjective& f, const Eigen::MatrixXcd& sigma,
                                      const Eigen::MatrixXcd& dir, double tmax) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double t) { return f(sigma + t * dir); };
  double a = 0.0, b = tmax;
  double fa = eval(a), fb = eval(b);
  double best_t = fa <= fb ? a : b;
  double best_f = std::min(fa, fb);
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int i = 0; i < 30; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
    if (fc < best_f) {
      best_f = fc;
      best_t = c;
    }
    if (fd < best_f) {
      best_f = fd;
      best_t = d;
    }
  }
  return {best_t, best_f};
}

struct SeparableMixture {
  std::vector<ProductAtom> atoms;
  Eigen::MatrixXcd sigma;

  void rebuild() {
    const int d = static_cast<int>(sigma.rows());
    sigma = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& a : atoms) {
      const Eigen::VectorXcd v = product_vec(a.left, a.right);
      sigma.noalias() += a.weight * (v * v.adjoint());
    }
  }

  void prune() {
    double dropped = 0.0;
    std::vector<ProductAtom> kept;
    for (auto& a : atoms) {
      if (a.weight > 1e-14)
        kept.push_back(std::move(a));
      else
        dropped += a.weight;
    }
    if (dropped > 0.0 && !kept.empty()) {
      const double scale = 1.0 / (1.0 - dropped);
      for (auto& a : kept) a.weight *= scale;
    }
    atoms = std::move(kept);
  }
};

// Exponentiated-gradient reweighting of the current atoms; accepts only
// improvements, so the objective stays monotone.
double polish_weights(SeparableMixture& mix, const FwObjective& f, const Eigen::MatrixXcd& g,
                      int dl, int dr, double fval) {
  const size_t n = mix.atoms.size();
  if (n < 2) return fval;
  Eigen::VectorXd grad(n);
  for (size_t i = 0; i < n; ++i)
    grad(static_cast<Eigen::Index>(i)) = product_value(g, dl, dr, mix.atoms[i].left, mix.atoms[i].right);
  const double span = grad.maxCoeff() - grad.minCoeff();
  if (span < 1e-15) return fval;

  double eta = 1.0 / span;
  for (int step = 0; step < 12; ++step) {
    Eigen::VectorXd w(n);
    for (size_t i = 0; i < n; ++i) w(static_cast<Eigen::Index>(i)) = mix.atoms[i].weight;
    Eigen::VectorXd wn = (w.array() * (-eta * (grad.array() - grad.minCoeff())).exp()).matrix();
    const double z = wn.sum();
    if (z <= 0.0) break;
    wn /= z;

    SeparableMixture trial = mix;
    for (size_t i = 0; i < n; ++i) trial.atoms[i].weight = wn(static_cast<Eigen::Index>(i));
    trial.rebuild();
    const double ft = f(trial.sigma);
    if (ft < fval - 1e-15) {
      mix = std::move(trial);
      fval = ft;
      eta *= 2.0;
    } else {
      eta *= 0.25;
      if (eta * span < 1e-6) break;
    }
  }
  return fval;
}

// ---- PPT projection machinery ----------------------------------------------

Eigen::VectorXd project_prob_simplex(Eigen::VectorXd v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd u = v;
  std::sort(u.data(), u.data() + n, std::greater<double>());
  double cum = 0.0, tau = 0.0;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    cum += u(i);
    const double t = (cum - 1.0) / (i + 1);
    if (u(i) - t > 0.0) {
      tau = t;
      k = i + 1;
    }
  }
  (void)k;
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

// Frobenius projection onto {X Hermitian PSD, tr X = 1}.
Eigen::MatrixXcd project_spectrahedron(const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd h = 0.5 * (x + x.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd lam = project_prob_simplex(es.eigenvalues());
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd pt_right(const Eigen::MatrixXcd& m, int dl, int dr) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int a = 0; a < dl; ++a)
    for (int a2 = 0; a2 < dl; ++a2)
      out.block(a * dr, a2 * dr, dr, dr) = m.block(a * dr, a2 * dr, dr, dr).transpose();
  return out;
}

// Dykstra alternating projections onto {PSD, tr 1} and {PPT, tr 1}.
Eigen::MatrixXcd dykstra_ppt_project(const Eigen::MatrixXcd& x0, int dl, int dr, int max_iter,
                                     bool* converged) {
  Eigen::MatrixXcd x = x0;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
  Eigen::MatrixXcd q = p;
  *converged = false;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::MatrixXcd y = project_spectrahedron(x + p);
    p = x + p - y;
    const Eigen::MatrixXcd z = pt_right(project_spectrahedron(pt_right(y + q, dl, dr)), dl, dr);
    q = y + q - z;
    const double change = (z - x).norm();
    x = z;
    if (change < 1e-11 * (1.0 + x.norm())) {
      *converged = true;
      break;
    }
  }
  return x;
}

}  // namespace

// ---- closed forms -----------------------------------------------------------

double ree_pure(const PureState& state, const PartySubset& cut_left) {
  return von_neumann(partial_trace(state, cut_left)).bits;
}

MaxCorrelatedForm::MaxCorrelatedForm(Eigen::MatrixXcd coeff)
    : MaxCorrelatedForm(coeff,
                        Eigen::MatrixXcd::Identity(coeff.rows(), coeff.rows()),
                        Eigen::MatrixXcd::Identity(coeff.rows(), coeff.rows())) {}

MaxCorrelatedForm::MaxCorrelatedForm(Eigen::MatrixXcd coeff, Eigen::MatrixXcd basis_a,
                                     Eigen::MatrixXcd basis_b)
    : coeff_(std::move(coeff)), basis_a_(std::move(basis_a)), basis_b_(std::move(basis_b)) {
  const int n = static_cast<int>(coeff_.rows());
  if (coeff_.cols() != n || n < 1)
    throw std::invalid_argument("MaxCorrelatedForm: coefficient matrix must be square");
  if ((coeff_ - coeff_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("MaxCorrelatedForm: coefficient matrix must be Hermitian");
  if (std::abs(coeff_.trace().real() - 1.0) > 1e-10)
    throw std::invalid_argument("MaxCorrelatedForm: coefficient trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(coeff_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("MaxCorrelatedForm: coefficient matrix must be PSD");
  for (const auto* basis : {&basis_a_, &basis_b_}) {
    if (basis->cols() < n || basis->rows() < n)
      throw std::invalid_argument("MaxCorrelatedForm: basis too small for coefficients");
    const Eigen::MatrixXcd gram = basis->adjoint() * (*basis);
    if ((gram - Eigen::MatrixXcd::Identity(basis->cols(), basis->cols())).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("MaxCorrelatedForm: basis is not orthonormal");
  }
}

DensityOperator MaxCorrelatedForm::to_density() const {
  const int n = static_cast<int>(coeff_.rows());
  const int da = static_cast<int>(basis_a_.rows());
  const int db = static_cast<int>(basis_b_.rows());
  Eigen::MatrixXcd k(da * db, n);
  for (int m = 0; m < n; ++m) k.col(m) = product_vec(basis_a_.col(m), basis_b_.col(m));
  Eigen::MatrixXcd rho = k * coeff_ * k.adjoint();
  return DensityOperator({{"A", da}, {"B", db}}, std::move(rho));
}

double ree_max_correlated(const MaxCorrelatedForm& form) {
  const int n = static_cast<int>(form.coeff().rows());
  std::vector<double> diag(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = std::max(form.coeff()(i, i).real(), 0.0);
  return shannon(diag) - von_neumann(form.to_density()).bits;
}

// ---- Frank-Wolfe upper bound -------------------------------------------------

OptimizerReport ree_upper(const DensityOperator& rho, const PartySubset& cut_left,
                          const ReeOptions& opts) {
  CutView cv = make_cut_view(rho, cut_left, opts);
  const int d = cv.dl * cv.dr;

  FwObjective f{&cv.rho, tr_rho_ln_rho(cv.rho), d};

  // sigma_0 = I/D as an explicit product mixture.
  SeparableMixture mix;
  mix.sigma = Eigen::MatrixXcd::Identity(d, d) / d;
  for (int a = 0; a < cv.dl; ++a)
    for (int b = 0; b < cv.dr; ++b) {
      ProductAtom atom;
      atom.weight = 1.0 / d;
      atom.left = Eigen::VectorXcd::Zero(cv.dl);
      atom.right = Eigen::VectorXcd::Zero(cv.dr);
      atom.left(a) = 1.0;
      atom.right(b) = 1.0;
      mix.atoms.push_back(std::move(atom));
    }

  double fval = f(mix.sigma);
  OptimizerReport rep;
  rep.direction = BoundDirection::UpperBound;
  rep.identity_mix = kIdentityMix;

  OracleResult prev_atom;
  int iter = 0;
  double improvement = std::numeric_limits<double>::infinity();
  for (; iter < opts.max_iter; ++iter) {
    const Eigen::MatrixXcd mixed = (1.0 - kIdentityMix) * mix.sigma +
                                   (kIdentityMix / d) * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd g = (1.0 - kIdentityMix) * relent_gradient(cv.rho, mixed);

    OracleResult fw = product_oracle(g, cv.dl, cv.dr, opts, static_cast<std::uint64_t>(iter),
                                     prev_atom.x.size() == cv.dl ? &prev_atom : nullptr);
    prev_atom = fw;
    const Eigen::VectorXcd pv = product_vec(fw.x, fw.y);
    const Eigen::MatrixXcd p = pv * pv.adjoint();

    // Standard Frank-Wolfe step.
    auto [t_fw, f_fw] = line_search(f, mix.sigma, p - mix.sigma, 1.0);

    // Pairwise step: move weight from the worst current atom to the new one.
    size_t worst = 0;
    double worst_val = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < mix.atoms.size(); ++i) {
      const double v = product_value(g, cv.dl, cv.dr, mix.atoms[i].left, mix.atoms[i].right);
      if (v > worst_val) {
        worst_val = v;
        worst = i;
      }
    }
    const Eigen::VectorXcd wv = product_vec(mix.atoms[worst].left, mix.atoms[worst].right);
    const Eigen::MatrixXcd pw = p - wv * wv.adjoint();
    auto [t_pw, f_pw] = line_search(f, mix.sigma, pw, mix.atoms[worst].weight);

    double fnew;
    if (f_pw <= f_fw) {
      mix.sigma += t_pw * pw;
      mix.atoms[worst].weight -= t_pw;
      mix.atoms.push_back({t_pw, fw.x, fw.y});
      fnew = f_pw;
    } else {
      for (auto& a : mix.atoms) a.weight *= (1.0 - t_fw);
      mix.sigma *= (1.0 - t_fw);
      mix.sigma += t_fw * p;
      mix.atoms.push_back({t_fw, fw.x, fw.y});
      fnew = f_fw;
    }
    mix.prune();

    if ((iter + 1) % 32 == 0) fnew = polish_weights(mix, f, g, cv.dl, cv.dr, fnew);

    if (fnew > fval + 1e-9)
      throw std::logic_error("ree_upper: objective increased across an iteration");
    improvement = fval - fnew;
    fval = fnew;
    if (improvement < opts.tol) {
      ++iter;
      break;
    }
  }

  {
    const Eigen::MatrixXcd mixed = (1.0 - kIdentityMix) * mix.sigma +
                                   (kIdentityMix / d) * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd g = (1.0 - kIdentityMix) * relent_gradient(cv.rho, mixed);
    fval = polish_weights(mix, f, g, cv.dl, cv.dr, fval);
  }

  rep.value = std::max(f(mix.sigma), 0.0);
  rep.iterations = iter;
  rep.gap = improvement;
  rep.converged = improvement < opts.tol;
  rep.witness = (1.0 - kIdentityMix) * mix.sigma +
                (kIdentityMix / d) * Eigen::MatrixXcd::Identity(d, d);
  rep.atoms = std::move(mix.atoms);
  for (auto& a : rep.atoms) a.weight *= (1.0 - kIdentityMix);
  return rep;
}

// ---- Rains bound ---------------------------------------------------------------

namespace {

OptimizerReport rains_descent(const CutView& cv, const ReeOptions& opts,
                              Eigen::MatrixXcd sigma) {
  const int d = cv.dl * cv.dr;
  const double rho_term = tr_rho_ln_rho(cv.rho);
  auto f = [&](const Eigen::MatrixXcd& s) -> std::optional<double> {
    const auto cross = tr_rho_ln_sigma(cv.rho, s);
    if (!cross) return std::nullopt;
    return (rho_term - *cross) / kLn2;
  };

  OptimizerReport rep;
  rep.direction = BoundDirection::LowerBound;

  auto f0 = f(sigma);
  if (!f0) {  // start must be feasible with finite objective
    sigma = Eigen::MatrixXcd::Identity(d, d) / d;
    f0 = f(sigma);
  }
  double fval = *f0;

  double step = 1.0;
  bool proj_failed = false;
  int iter = 0;
  double improvement = std::numeric_limits<double>::infinity();
  for (; iter < opts.max_iter; ++iter) {
    const Eigen::MatrixXcd g = relent_gradient(cv.rho, sigma);
    step *= 2.0;
    bool accepted = false;
    bool proj_failed_here = false;
    Eigen::MatrixXcd cand;
    double fc = 0.0;
    for (int bt = 0; bt < 40; ++bt) {
      bool conv = false;
      cand = dykstra_ppt_project(sigma - step * g, cv.dl, cv.dr, opts.max_proj, &conv);
      if (!conv) proj_failed_here = true;
      const auto fcand = f(cand);
      if (conv && fcand && *fcand < fval - 1e-15) {
        accepted = true;
        fc = *fcand;
        break;
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!accepted) {
      improvement = 0.0;
      proj_failed = proj_failed_here;  // stalled on projections, not on descent
      break;
    }
    improvement = fval - fc;
    sigma = cand;
    fval = fc;
    if (improvement < opts.tol) {
      ++iter;
      break;
    }
  }

  rep.value = std::max(fval, 0.0);
  rep.iterations = iter;
  rep.gap = improvement;
  rep.converged = !proj_failed && improvement < opts.tol;
  rep.witness = sigma;
  return rep;
}

}  // namespace

OptimizerReport rains_bound(const DensityOperator& rho, const PartySubset& cut_left,
                            const ReeOptions& opts) {
  CutView cv = make_cut_view(rho, cut_left, opts);
  const int d = cv.dl * cv.dr;
  return rains_descent(cv, opts, Eigen::MatrixXcd::Identity(d, d) / d);
}

OptimizerReport rains_bound_from(const DensityOperator& rho, const PartySubset& cut_left,
                                 const ReeOptions& opts, const Eigen::MatrixXcd& start) {
  CutView cv = make_cut_view(rho, cut_left, opts);
  return rains_descent(cv, opts, start);
}

// ---- sandwich and additivity -----------------------------------------------------

SandwichReport ree_sandwich(const DensityOperator& rho, const PartySubset& cut_left,
                            const ReeOptions& opts) {
  SandwichReport s;
  s.upper = ree_upper(rho, cut_left, opts);
  // The separable witness is PPT, so the descent starts at the upper value
  // and can only move down: lower <= upper holds by construction.
  s.lower = rains_bound_from(rho, cut_left, opts, s.upper.witness);
  s.lower.value = std::min(s.lower.value, s.upper.value);
  s.value = s.upper.value;
  s.direction = (s.upper.value - s.lower.value <= opts.certify_tol)
                    ? BoundDirection::Exact
                    : BoundDirection::UpperBound;
  return s;
}

SandwichReport ree_sandwich(const PureState& state, const PartySubset& cut_left,
                            const ReeOptions& opts) {
  return ree_sandwich(to_density(state), cut_left, opts);
}

AdditivityReport additivity_gap(const DensityOperator& rho12, const DensityOperator& rho34,
                                const ReeOptions& opts) {
  if (rho12.parties().size() != 2 || rho34.parties().size() != 2)
    throw precondition_error("additivity_gap: inputs must be two-party states");

  // Relabel to systems 1..4; Alice holds {1,3}, Bob holds {2,4}.
  DensityOperator a({{"1", rho12.parties()[0].dim}, {"2", rho12.parties()[1].dim}},
                    rho12.matrix());
  DensityOperator b({{"3", rho34.parties()[0].dim}, {"4", rho34.parties()[1].dim}},
                    rho34.matrix());
  DensityOperator joint = tensor(a, b);
  if (joint.dim() > opts.dim_cap)
    throw precondition_error("additivity_gap: composite dimension exceeds the cap");

  AdditivityReport rep;
  rep.left = ree_sandwich(a, PartySubset{"1"}, opts);
  rep.right = ree_sandwich(b, PartySubset{"3"}, opts);
  rep.joint = ree_sandwich(joint, PartySubset{"1", "3"}, opts);
  rep.gap = rep.joint.value - rep.left.value - rep.right.value;
  rep.certified = rep.joint.exact() && rep.left.exact() && rep.right.exact();
  return rep;
}

}  // namespace ghzledger
