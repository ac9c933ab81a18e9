#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

#include "pdmeans/divergences.hpp"
#include "pdmeans/error.hpp"
#include "pdmeans/structure.hpp"
#include "verify_internal.hpp"

namespace pdmeans::detail {

namespace {

constexpr double kCertificateTol = 1e-9;    // fixed-point residuals of a converged mean
constexpr double kDetEqualityTol = 1e-9;    // det R vs prod det A_j on all-equal tuples
constexpr double kTraceStepTol = 1e-10;     // absolute, per K step
constexpr double kCrossSolverTol = 1e-7;    // Omega vs R_{1/2,1/2}
constexpr double kPhiZeroTol = 1e-12;       // Phi(A, A)
constexpr double kUnitaryTol = 1e-9;        // Phi under unitary congruence
constexpr double kBuresTol = 1e-10;         // Phi_{1/2,1/2} vs d_W^2
constexpr double kAlphaFloor = 0.05;

std::vector<int> capped(const std::vector<int>& values, int cap) {
  if (cap <= 0) return values;
  std::vector<int> out;
  for (int v : values) {
    if (v <= cap) out.push_back(v);
  }
  if (out.empty()) out.push_back(std::min(cap, *std::min_element(values.begin(), values.end())));
  return out;
}

PDMatrix identity_like(const PDTuple& t) { return PDMatrix::identity(t.dim()); }

PDMatrix scalar_identity(int dim, double c) { return scale(PDMatrix::identity(dim), c); }

// --- right mean: defining equations and lemma items ---------------------------

void equation_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const PDMatrix x = ctx.right(p, w, t);
  ctx.check("defining-residual", -right_mean_residual(p, w, t, x), kCertificateTol);
  ctx.check("geometric-form-residual", -right_mean_residual_geomform(p, w, t, x),
            kCertificateTol);
}

void commuting_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const Matrix u = random_unitary(ctx.rng(), dim);
  std::vector<PDMatrix> items;
  std::vector<RealVector> spectra;
  for (int j = 0; j < n; ++j) {
    spectra.push_back(ctx.sample_spectrum(dim, cond));
    items.push_back(PDMatrix::from_spectrum(u, spectra.back()));
  }
  const WeightVector w = ctx.sample_weights(n);
  const double q = 1.0 - p.alpha();
  RealVector acc = RealVector::Zero(dim);
  for (int j = 0; j < n; ++j) acc += w[static_cast<std::size_t>(j)] * spectra[j].array().pow(q).matrix();
  const PDMatrix expected = PDMatrix::from_spectrum(u, acc.array().pow(1.0 / q).matrix());
  const PDMatrix x = ctx.right(p, w, PDTuple(std::move(items)));
  ctx.close("commuting-closed-form", x.matrix(), expected.matrix(), ctx.opts().slack);
}

void homogeneity_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const PDMatrix x = ctx.right(p, w, t);
  for (double c : {0.1, 3.0}) {
    const PDMatrix xc = ctx.right(p, w, scaled(t, c));
    ctx.close(fmt::format("scale-{}", c), xc.matrix(), c * x.matrix(), ctx.opts().slack);
  }
}

void permutation_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  std::vector<std::size_t> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  for (int i = n - 1; i > 0; --i) {
    std::swap(sigma[static_cast<std::size_t>(i)],
              sigma[static_cast<std::size_t>(ctx.rng().uniform_int(0, i))]);
  }
  std::vector<double> ws;
  std::vector<PDMatrix> ts;
  for (std::size_t k : sigma) {
    ws.push_back(w[k]);
    ts.push_back(t[k]);
  }
  const PDMatrix x = ctx.right(p, w, t);
  const PDMatrix xs = ctx.right(p, WeightVector(ws), PDTuple(ts));
  ctx.close("permuted", xs.matrix(), x.matrix(), ctx.opts().slack);
}

void repetition_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const PDMatrix x = ctx.right(p, w, t);
  for (int k : {2, 3}) {
    std::vector<double> wk;
    std::vector<PDMatrix> tk;
    for (int r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        wk.push_back(w[j] / k);
        tk.push_back(t[j]);
      }
    }
    const PDMatrix xk = ctx.right(p, WeightVector(wk), PDTuple(tk));
    ctx.close(fmt::format("repeat-{}", k), xk.matrix(), x.matrix(), ctx.opts().slack);
  }
}

void unitary_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const int dim = ctx.sample_dim();
  const PDTuple t = ctx.sample_tuple(dim, n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const Matrix u = random_unitary(ctx.rng(), dim);
  const PDMatrix x = ctx.right(p, w, t);
  const PDMatrix xu = ctx.right(p, w, congruence(u, t));
  ctx.close("unitary-congruence", xu.matrix(), u * x.matrix() * u.adjoint(), ctx.opts().slack);
}

void determinant_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const PDTuple t = ctx.sample_tuple(dim, n, cond);
  const WeightVector w = ctx.sample_weights(n);
  double weighted = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) weighted += w[j] * log_det(t[j]);
  const double gap = log_det(ctx.right(p, w, t)) - weighted;
  ctx.check("det-lower-bound", gap / (1.0 + std::abs(weighted)), ctx.opts().slack);
  ctx.strictly_positive("strict-for-distinct", gap);

  const PDMatrix a = random_pd(ctx.rng(), dim, cond);
  const PDTuple same(std::vector<PDMatrix>(static_cast<std::size_t>(n), a));
  const double eq_gap = log_det(ctx.right(p, w, same)) - log_det(a);
  // |log(det R / prod det A_j)| approximates the relative determinant error.
  ctx.check("equality-when-equal", -std::abs(eq_gap), kDetEqualityTol);
}

void self_consistency_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  std::vector<double> head_w(w.begin(), w.end() - 1);
  std::vector<PDMatrix> head(t.begin(), t.end() - 1);
  const PDMatrix y = ctx.right(p, WeightVector(head_w), PDTuple(head));
  head.push_back(y);
  ctx.check("n-ary-residual-at-reduced-mean", -right_mean_residual(p, w, PDTuple(head), y),
            ctx.opts().slack);
}

void collapse_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = std::max(3, ctx.sample_size());
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const int k = ctx.rng().uniform_int(2, n - 1);
  const PDTuple base = ctx.sample_tuple(dim, n - k + 1, cond);
  std::vector<PDMatrix> full(static_cast<std::size_t>(k), base[0]);
  for (std::size_t j = 1; j < base.size(); ++j) full.push_back(base[j]);
  const WeightVector w = ctx.sample_weights(n);
  std::vector<double> merged{std::accumulate(w.begin(), w.begin() + k, 0.0)};
  merged.insert(merged.end(), w.begin() + k, w.end());
  const PDMatrix x = ctx.right(p, w, PDTuple(full));
  const PDMatrix xm = ctx.right(p, WeightVector(merged), base);
  ctx.close("merged-leading-entries", x.matrix(), xm.matrix(), ctx.opts().slack);
}

void boundedness_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const PDMatrix x = ctx.right(p, w, t);
  const SpectralBounds b = spectral_bounds(t);
  ctx.leq("lower", scalar_identity(t.dim(), b.lower), x);
  ctx.leq("upper", x, scalar_identity(t.dim(), b.upper));
}

// --- power means --------------------------------------------------------------

void para_monotonicity_body(TrialContext& ctx) {
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  std::vector<std::pair<std::string, PDMatrix>> chain;
  for (double s : {-1.0, -0.5, -0.25}) chain.emplace_back(fmt::format("P{}", s), ctx.power(s, w, t));
  chain.emplace_back("Cartan", ctx.cartan(w, t));
  for (double s : {0.25, 0.5, 1.0}) chain.emplace_back(fmt::format("P{}", s), ctx.power(s, w, t));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      ctx.leq(chain[i].first + "<=" + chain[j].first, chain[i].second, chain[j].second);
    }
  }
}

void a_r_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const double r = (1.0 - p.alpha()) / p.z();
  ctx.leq("R^r<=A(A^r)", mpow(ctx.right(p, w, t), r), arithmetic_mean(w, powered(t, r)));
}

// Rescales the tuple so that R <= I (divide by b) or R >= I (divide by a).
struct Branch {
  const char* name;
  bool below_identity;
};
constexpr Branch kBranches[] = {{"R<=I", true}, {"R>=I", false}};

PDTuple branch_tuple(const PDTuple& t, const Branch& br) {
  const SpectralBounds b = spectral_bounds(t);
  return scaled(t, 1.0 / (br.below_identity ? b.upper : b.lower));
}

void inequalities2_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t0 = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  for (const Branch& br : kBranches) {
    const PDTuple t = branch_tuple(t0, br);
    const PDMatrix lhs = mpow(ctx.right(p, w, t), 1.0 - p.alpha() / p.z());
    const PDMatrix am = arithmetic_mean(w, powered(t, 1.0 - p.alpha()));
    if (br.below_identity) {
      ctx.leq(std::string(br.name) + ":A(A^(1-a))<=R^(1-a/z)", am, lhs);
    } else {
      ctx.leq(std::string(br.name) + ":R^(1-a/z)<=A(A^(1-a))", lhs, am);
    }
  }
}

void renyi_power_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t0 = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const double r = (1.0 - p.alpha()) / p.z();
  for (const Branch& br : kBranches) {
    const PDTuple t = branch_tuple(t0, br);
    const PDMatrix lhs = mpow(ctx.right(p, w, t), 1.0 - p.alpha() / p.z());
    const PDMatrix pz = ctx.power(p.z(), w, powered(t, r));
    if (br.below_identity) {
      ctx.leq(std::string(br.name) + ":Pz<=R^(1-a/z)", pz, lhs);
    } else {
      ctx.leq(std::string(br.name) + ":R^(1-a/z)<=Pz", lhs, pz);
    }
  }
}

void log_majorization_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = branch_tuple(ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond()),
                                 kBranches[0]);
  const WeightVector w = ctx.sample_weights(n);
  const double r = (1.0 - p.alpha()) / p.z();
  const RealVector lr = ctx.right(p, w, t).eigen().values;
  const PDTuple tr = powered(t, r);
  ctx.majorization("arithmetic", lr, arithmetic_mean(w, powered(t, 1.0 - p.alpha())).eigen().values);
  ctx.majorization("power", lr, ctx.power(p.z(), w, tr).eigen().values);
  ctx.majorization("cartan", lr, ctx.cartan(w, tr).eigen().values);
}

void scaled_bounds_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const double al = p.alpha();
  const double z = p.z();
  const double r = (1.0 - al) / z;
  const SpectralBounds b = spectral_bounds(t);
  const PDMatrix mid = mpow(ctx.right(p, w, t), 1.0 - al / z);
  const PDMatrix am = arithmetic_mean(w, powered(t, 1.0 - al));
  const PDTuple tr = powered(t, r);
  const PDMatrix pz = ctx.power(z, w, tr);
  const double ea = al * (1.0 - 1.0 / z);
  const double ep = 1.0 - 1.0 / z;
  ctx.leq("b^(a(1-1/z))A<=R^(1-a/z)", scale(am, std::pow(b.upper, ea)), mid);
  ctx.leq("R^(1-a/z)<=a^(a(1-1/z))A", mid, scale(am, std::pow(b.lower, ea)));
  ctx.leq("b^(1-1/z)Pz<=R^(1-a/z)", scale(pz, std::pow(b.upper, ep)), mid);
  ctx.leq("R^(1-a/z)<=a^(1-1/z)Pz", mid, scale(pz, std::pow(b.lower, ep)));
  ctx.leq("b^(1-1/z)H<=R^(1-a/z)", scale(harmonic_mean(w, tr), std::pow(b.upper, ep)), mid);
  ctx.leq("R^(1-a/z)<=a^(1-1/z)A", mid, scale(arithmetic_mean(w, tr), std::pow(b.lower, ep)));
}

// --- Wasserstein mean -----------------------------------------------------------

void iteration_body(TrialContext& ctx) {
  const int n = ctx.sample_size();
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const PDTuple t = ctx.sample_tuple(dim, n, cond);
  const WeightVector w = ctx.sample_weights(n);
  const double omega_trace = trace(ctx.right(AlphaZ(0.5, 0.5), w, t).hermitian());
  const std::pair<const char*, PDMatrix> starts[] = {
      {"identity", identity_like(t)},
      {"arithmetic", arithmetic_mean(w, t)},
      {"random", random_pd(ctx.rng(), dim, cond)}};
  for (const auto& [name, s0] : starts) {
    const std::vector<double> tr = ctx.wasserstein(w, t, s0).traces;
    // Monotonicity is claimed from S_1 on: K is scale invariant, so the
    // first step may lower the trace of an arbitrary start.
    double worst_step = std::numeric_limits<double>::infinity();
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 1; r < tr.size(); ++r) {
      if (r + 1 < tr.size()) worst_step = std::min(worst_step, tr[r + 1] - tr[r]);
      top = std::max(top, tr[r]);
    }
    if (std::isfinite(worst_step)) ctx.check(fmt::format("{}:nondecreasing", name), worst_step, kTraceStepTol);
    if (std::isfinite(top)) ctx.check(fmt::format("{}:below-omega", name), omega_trace - top, 1e-8);
  }
}

void wass_renyi_body(TrialContext& ctx) {
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  for (double p : {1.0, 1.25, 1.5, 1.9}) {
    const PDMatrix x = ctx.right(AlphaZ(1.0 - p / 2.0, 0.5), w, t);
    const double lhs = x.eigen().values.array().pow(p).sum();
    const double rhs = trace(ctx.wasserstein(w, powered(t, p)).value.hermitian());
    ctx.check(fmt::format("p={}", p), (rhs - lhs) / (1.0 + std::abs(rhs)), ctx.opts().slack);
  }
}

void wass_renyi_remark_body(TrialContext& ctx) {
  const int n = ctx.sample_size();
  // Spectra use condition cond^{1/2}, so A^p stays within cond^2 for p < 4.
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, std::sqrt(ctx.sample_cond()));
  const WeightVector w = ctx.sample_weights(n);
  const PDTuple sq = powered(t, 2.0);
  for (double p : {2.0, 2.5, 3.0, 3.5, 3.9}) {
    const PDMatrix x = ctx.right(AlphaZ(1.0 - p / 4.0, 0.5), w, sq);
    const double lhs = x.eigen().values.array().pow(p / 2.0).sum();
    const double rhs = trace(ctx.wasserstein(w, powered(t, p)).value.hermitian());
    ctx.check(fmt::format("k=2,p={}", p), (rhs - lhs) / (1.0 + std::abs(rhs)), ctx.opts().slack);
  }
}

void wasserstein_identity_body(TrialContext& ctx) {
  const int n = ctx.sample_size();
  const PDTuple t = ctx.sample_tuple(ctx.sample_dim(), n, ctx.sample_cond());
  const WeightVector w = ctx.sample_weights(n);
  const PDMatrix omega = ctx.wasserstein(w, t).value;
  const PDMatrix r = ctx.right(AlphaZ(0.5, 0.5), w, t);
  ctx.close("omega-vs-right-mean", r.matrix(), omega.matrix(), kCrossSolverTol);
}

// --- tensor and Hadamard products -----------------------------------------------

void psi_body(TrialContext& ctx) {
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const PDMatrix a = random_pd(ctx.rng(), dim, cond);
  const PDMatrix b = random_pd(ctx.rng(), dim, cond);
  const Matrix diff = psi_extract(tensor_product(a.matrix(), b.matrix())) -
                      hadamard_product(a.matrix(), b.matrix());
  ctx.check("psi(AxB)=AoB", -diff.cwiseAbs().maxCoeff(), 0.0);
  const Matrix unit = psi_extract(Matrix::Identity(dim * dim, dim * dim)) - Matrix::Identity(dim, dim);
  ctx.check("unital", -unit.cwiseAbs().maxCoeff(), 0.0);
  const PDMatrix big = random_pd(ctx.rng(), dim * dim, cond);
  ctx.strictly_positive("strictly-positive", eigenvalues(hermitian_part(psi_extract(big.matrix()))).minCoeff());
}

struct TensorPair {
  PDTuple a;
  PDTuple b;
  WeightVector w;
  WeightVector mu;
};

TensorPair sample_pair(TrialContext& ctx, int cap) {
  const int n = ctx.sample_size(cap);
  const int dim = ctx.sample_dim(cap);
  PDTuple a = ctx.sample_tuple(dim, n, ctx.sample_cond());
  PDTuple b = ctx.sample_tuple(dim, n, ctx.sample_cond());
  WeightVector w = ctx.sample_weights(n);
  WeightVector mu = ctx.sample_weights(n);
  return {std::move(a), std::move(b), std::move(w), std::move(mu)};
}

void tensor_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const TensorPair s = sample_pair(ctx, 3);
  const PDMatrix lhs = tensor_product(ctx.right(p, s.w, s.a), ctx.right(p, s.mu, s.b));
  const PDMatrix rhs = ctx.right(p, weight_tensor(s.w, s.mu), tuple_tensor(s.a, s.b));
  ctx.close("tensor-identity", lhs.matrix(), rhs.matrix(), ctx.opts().slack);
}

void hada1_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const TensorPair s = sample_pair(ctx, 0);
  const double r = (1.0 - p.alpha()) / p.z();
  const PDMatrix lhs =
      hadamard_product(mpow(ctx.right(p, s.w, s.a), r), mpow(ctx.right(p, s.mu, s.b), r));
  const PDMatrix rhs =
      arithmetic_mean(weight_tensor(s.w, s.mu), tuple_hadamard(powered(s.a, r), powered(s.b, r)));
  ctx.leq("hadamard<=A", lhs, rhs);
}

void hadamard_power_bound(TrialContext& ctx, const AlphaZ& p, const TensorPair& s,
                          double factor, const std::string& name) {
  const double r = (1.0 - p.alpha()) / p.z();
  const double e = 1.0 - p.alpha() / p.z();
  const PDMatrix ra = ctx.right(p, s.w, s.a);
  const PDMatrix rb = ctx.right(p, s.mu, s.b);
  const PDMatrix lhs = hadamard_product(mpow(ra, e), mpow(rb, e));
  const PDMatrix pz = ctx.power(p.z(), weight_tensor(s.w, s.mu),
                                tuple_hadamard(powered(s.a, r), powered(s.b, r)));
  ctx.leq(name, lhs, scale(pz, factor));
}

void hada2_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  TensorPair s = sample_pair(ctx, 0);
  s.a = branch_tuple(s.a, kBranches[1]);
  s.b = branch_tuple(s.b, kBranches[1]);
  hadamard_power_bound(ctx, p, s, 1.0, "hadamard<=Pz");
}

void hadamard_scaled_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const TensorPair s = sample_pair(ctx, 0);
  const double ab = spectral_bounds(s.a).lower * spectral_bounds(s.b).lower;
  hadamard_power_bound(ctx, p, s, std::pow(ab, 1.0 - 1.0 / p.z()), "hadamard<=(ab)^(1-1/z)Pz");
}

// --- divergence -------------------------------------------------------------------

void divergence_body(TrialContext& ctx) {
  const AlphaZ p = ctx.sample_alpha_z();
  const int dim = ctx.sample_dim();
  const double cond = ctx.sample_cond();
  const PDMatrix a = random_pd(ctx.rng(), dim, cond);
  const PDMatrix b = random_pd(ctx.rng(), dim, cond);
  const double phi = phi_alpha_z(p, a, b);
  const double size = trace(a.hermitian()) + trace(b.hermitian());
  ctx.check("nonnegative", phi / (1.0 + size), 0.0);
  ctx.check("zero-at-equal", -std::abs(phi_alpha_z(p, a, a)), kPhiZeroTol);

  const PDMatrix h = random_pd(ctx.rng(), dim, cond);
  const double eps = 1e-2 * a.lambda_min() / h.lambda_max();
  const PDMatrix near(hermitian_part(a.matrix() + eps * h.matrix()));
  ctx.strictly_positive("positive-when-perturbed", phi_alpha_z(p, a, near));

  const Matrix u = random_unitary(ctx.rng(), dim);
  const double phi_u = phi_alpha_z(p, congruence(u, a), congruence(u, b));
  ctx.check("unitary-invariance", -std::abs(phi_u - phi) / std::max(std::abs(phi), 1e-300),
            kUnitaryTol);

  const PDMatrix rho_raw = random_pd(ctx.rng(), 2, cond);
  const PDMatrix rho = scale(rho_raw, 1.0 / trace(rho_raw.hermitian()));
  const double phi_t = phi_alpha_z(p, tensor_product(a, rho), tensor_product(b, rho));
  ctx.check("tensor-with-density", -std::abs(phi_t - phi) / std::max(std::abs(phi), 1e-300),
            kUnitaryTol);

  const AlphaZ half(0.5, 0.5);
  const double dw = bures_wasserstein_distance(a, b);
  const double phi_half = phi_alpha_z(half, a, b);
  ctx.check("phi-half-equals-dw-squared",
            -std::abs(phi_half - dw * dw) / std::max(std::abs(phi_half), 1e-300), kBuresTol);
}

std::vector<TheoremEntry> build_entries() {
  const std::set<Region> all{Region::A, Region::B, Region::C};
  const std::set<Region> ab{Region::A, Region::B};
  const std::set<Region> bc{Region::B, Region::C};
  const std::optional<std::pair<double, double>> domain = kDomainZ;
  const std::optional<std::pair<double, double>> domain_claim = std::pair{0.0, 1.0};
  const std::optional<std::pair<double, double>> upper = std::pair{0.5, 0.95};
  const std::optional<std::pair<double, double>> upper_claim = std::pair{0.5, 1.0};
  const std::optional<std::pair<double, double>> none;

  auto entry = [](std::string id, std::string statement, std::set<Region> regions,
                  std::optional<std::pair<double, double>> z_sample,
                  std::optional<std::pair<double, double>> z_claim,
                  std::vector<std::string> aliases, TrialBody body) {
    return TheoremEntry{TheoremInfo{std::move(id), std::move(statement), std::move(regions), z_sample},
                        z_claim, std::move(aliases), body};
  };

  return {
      entry("L:equation", "the right mean solves both the defining and the geometric-mean equation",
            all, domain, domain_claim, {}, equation_body),
      entry("properties-1", "commuting tuples: R = (sum w_j A_j^{1-alpha})^{1/(1-alpha)}", all,
            domain, domain_claim, {"properties-1-commuting"}, commuting_body),
      entry("properties-2", "homogeneity R(w; cA) = c R(w; A)", all, domain, domain_claim,
            {"properties-2-homogeneity"}, homogeneity_body),
      entry("properties-3", "invariance under a joint permutation of weights and matrices", all,
            domain, domain_claim, {"properties-3-permutation"}, permutation_body),
      entry("properties-4", "repetition R(w^(k); A^(k)) = R(w; A) for k = 2, 3", all, domain,
            domain_claim, {"properties-4-repetition"}, repetition_body),
      entry("properties-5", "unitary equivariance R(w; UAU*) = U R(w; A) U*", all, domain,
            domain_claim, {"properties-5-unitary"}, unitary_body),
      entry("properties-6", "det R >= prod (det A_j)^{w_j}, equality for equal entries", all,
            domain, domain_claim, {"properties-6-determinant"}, determinant_body),
      entry("properties-7", "self-consistency of the reduced mean", all, domain, domain_claim,
            {"properties-7-self-consistency"}, self_consistency_body),
      entry("properties-8", "equal leading entries collapse into one with the summed weight", all,
            domain, domain_claim, {"properties-8-collapse"}, collapse_body),
      entry("L:boundedness", "a I <= A_j <= b I implies a I <= R <= b I", all, domain,
            domain_claim, {}, boundedness_body),
      entry("para-monotonicity", "H <= P_-t <= P_-s <= Cartan <= P_s <= P_t <= A", {}, none, none,
            {}, para_monotonicity_body),
      entry("T:A-R", "R^{(1-alpha)/z} <= A(w; A^{(1-alpha)/z}) for z >= 1/2", ab, upper,
            upper_claim, {"T:A-R ineq"}, a_r_body),
      entry("T:inequalities-2", "R <= I: R^{1-alpha/z} >= A(w; A^{1-alpha}); reversed if R >= I",
            all, domain, domain_claim, {}, inequalities2_body),
      entry("T:Renyi-power", "R >= I: R^{1-alpha/z} <= P_z(w; A^{(1-alpha)/z}); reversed if R <= I",
            all, domain, domain_claim, {}, renyi_power_body),
      entry("C:log-majorization",
            "after scaling to R <= I: eigenvalues of A(A^{1-alpha}), P_z and the Cartan mean of "
            "A^{(1-alpha)/z} are weakly log-majorized by those of R",
            all, domain, domain_claim, {}, log_majorization_body),
      entry("remark-scaled-bounds", "two-sided bounds on R^{1-alpha/z} with constants a and b", all,
            domain, domain_claim, {}, scaled_bounds_body),
      entry("T:iteration", "tr S_r is nondecreasing along K iterates and bounded by tr Omega", {},
            none, none, {}, iteration_body),
      entry("T:Wass-Renyi", "tr R_{1-p/2,1/2}(w; A)^p <= tr Omega(w; A^p), p in {1, 1.25, 1.5, 1.9}",
            bc, none, none, {}, wass_renyi_body),
      entry("remark-Wass-Renyi", "tr R_{1-p/4,1/2}(w; A^2)^{p/2} <= tr Omega(w; A^p) for p in [2, 4)",
            bc, none, none, {}, wass_renyi_remark_body),
      entry("wasserstein-identity", "Omega = R_{1/2,1/2}", all, none, none, {},
            wasserstein_identity_body),
      entry("L:An", "Psi(A (x) B) = A o B, Psi unital and strictly positive", {}, none, none, {},
            psi_body),
      entry("T:Tensor", "R(w; A) (x) R(mu; B) = R(w (x) mu; A (x) B)", all, domain, domain_claim,
            {}, tensor_body),
      entry("T:Hada1", "R(A)^{(1-alpha)/z} o R(B)^{(1-alpha)/z} <= A(w (x) mu; A^r o B^r), z >= 1/2",
            ab, upper, upper_claim, {}, hada1_body),
      entry("T:Hada2", "R(A), R(B) >= I: R(A)^{1-alpha/z} o R(B)^{1-alpha/z} <= P_z(w (x) mu; A^r o B^r)",
            all, domain, domain_claim, {}, hada2_body),
      entry("C:Hadamard-scaled",
            "A_j >= a I, B_j >= b I: R(A)^{1-alpha/z} o R(B)^{1-alpha/z} <= (ab)^{1-1/z} P_z(...)",
            all, domain, domain_claim, {}, hadamard_scaled_body),
      entry("divergence-axioms",
            "Phi >= 0 with equality iff A = B, unitary and tensor invariance, Phi_{1/2,1/2} = d_W^2",
            all, domain, domain_claim, {}, divergence_body),
  };
}

}  // namespace

// --- TrialContext --------------------------------------------------------------------

TrialContext::TrialContext(std::uint64_t seed, const CheckOptions& opts,
                           std::optional<std::pair<double, double>> z_interval, TrialOutcome& out)
    : rng_(seed), opts_(opts), z_interval_(z_interval), out_(out) {}

AlphaZ TrialContext::sample_alpha_z() {
  const auto [lo, hi] = z_interval_.value_or(kDomainZ);
  const double z = rng_.uniform(lo, hi);
  const double alpha = rng_.uniform(std::min(kAlphaFloor, z), z);
  return AlphaZ(alpha, z);
}

int TrialContext::sample_dim(int cap) { return rng_.pick(capped(opts_.sampling.dims, cap)); }

int TrialContext::sample_size(int cap) { return rng_.pick(capped(opts_.sampling.sizes, cap)); }

double TrialContext::sample_cond() { return rng_.pick(opts_.sampling.conds); }

PDTuple TrialContext::sample_tuple(int dim, int n, double cond) {
  std::vector<PDMatrix> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) items.push_back(random_pd(rng_, dim, cond));
  return PDTuple(std::move(items));
}

WeightVector TrialContext::sample_weights(int n) { return WeightVector(random_weights(rng_, n)); }

RealVector TrialContext::sample_spectrum(int dim, double cond) {
  RealVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::exp(rng_.uniform(-std::log(cond), 0.0));
  return v;
}

PDMatrix TrialContext::right(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple) {
  const std::set<Region> regions = region_classify(p);
  try {
    MeanResult r = right_mean(p, w, tuple, opts_.solver);
    for (Region g : regions) {
      RegionStats& s = out_.region_stats[g];
      ++s.solves;
      s.total_iterations += r.report.iterations;
      s.max_iterations = std::max(s.max_iterations, r.report.iterations);
      s.damping_activations += r.report.damping_activations;
    }
    return std::move(r.value);
  } catch (const ConvergenceError& e) {
    for (Region g : regions) {
      RegionStats& s = out_.region_stats[g];
      ++s.solves;
      ++s.failures;
      s.total_iterations += e.report().iterations;
      s.max_iterations = std::max(s.max_iterations, e.report().iterations);
      s.damping_activations += e.report().damping_activations;
    }
    throw;
  }
}

PDMatrix TrialContext::power(double t, const WeightVector& w, const PDTuple& tuple) {
  return power_mean(t, w, tuple, opts_.solver).value;
}

PDMatrix TrialContext::cartan(const WeightVector& w, const PDTuple& tuple) {
  return cartan_mean(w, tuple, opts_.solver).value;
}

WassersteinResult TrialContext::wasserstein(const WeightVector& w, const PDTuple& tuple,
                                            const std::optional<PDMatrix>& start) {
  return wasserstein_mean(w, tuple, opts_.solver, start);
}

void TrialContext::leq(const std::string& name, const HermitianMatrix& a,
                       const HermitianMatrix& b) {
  check(name, loewner_margin(a, b), opts_.slack);
}

void TrialContext::close(const std::string& name, const Matrix& x, const Matrix& ref,
                         double tol) {
  check(name, -relative_difference(x, ref), tol);
}

void TrialContext::check(const std::string& name, double margin, double tol) {
  out_.parts.push_back(CheckPart{name, margin, tol, !(margin >= -tol)});
}

void TrialContext::strictly_positive(const std::string& name, double value) {
  out_.parts.push_back(CheckPart{name, value, 0.0, !(value > 0.0)});
}

void TrialContext::majorization(const std::string& name, const RealVector& y,
                                const RealVector& x) {
  const MajorizationVerdict v = weak_log_majorizes(y, x, opts_.slack);
  out_.parts.push_back(CheckPart{name, v.worst_margin, opts_.slack, !v.holds});
}

const std::vector<TheoremEntry>& theorem_entries() {
  static const std::vector<TheoremEntry> entries = build_entries();
  return entries;
}

const TheoremEntry& find_entry(std::string_view id) {
  for (const auto& e : theorem_entries()) {
    if (e.info.id == id) return e;
    for (const auto& a : e.aliases) {
      if (a == id) return e;
    }
  }
  std::string known;
  for (const auto& e : theorem_entries()) {
    if (!known.empty()) known += ", ";
    known += e.info.id;
  }
  throw DomainError(fmt::format("unknown theorem id '{}'; known ids: {}", id, known));
}

}  // namespace pdmeans::detail
