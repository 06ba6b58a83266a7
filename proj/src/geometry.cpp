#include "cvx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "cvx/simplex_lp.hpp"

namespace cvx {

// ---------------------------------------------------------------------------
// rational sphere points
// ---------------------------------------------------------------------------
namespace {
long long igcd(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

std::vector<RationalPoint> rational_sphere_points(int bound) {
  require(bound >= 1, "rational_sphere_points: bound must be >= 1");
  std::vector<std::pair<long long, long long>> fracs;  // reduced p/q
  for (long long q = 1; q <= bound; ++q)
    for (long long p = -bound; p <= bound; ++p)
      if (igcd(p, q) == 1) fracs.emplace_back(p, q);

  std::vector<RationalPoint> out;
  for (auto [p, q] : fracs)
    for (auto [r, t] : fracs) {
      // image of (u,v) = (p/q, r/t): common denominator D = p^2 t^2 + r^2 q^2 + q^2 t^2
      long long D = p * p * t * t + r * r * q * q + q * q * t * t;
      RationalPoint pt;
      pt.x = 2 * r * q * q * t;
      pt.y = 2 * p * q * t * t;
      pt.z = p * p * t * t + r * r * q * q - q * q * t * t;
      pt.den = D;
      long long g = igcd(igcd(igcd(pt.x, pt.y), pt.z), pt.den);
      pt.x /= g;
      pt.y /= g;
      pt.z /= g;
      pt.den /= g;
      using I = __int128;
      I check = I(pt.x) * pt.x + I(pt.y) * pt.y + I(pt.z) * pt.z;
      require(check == I(pt.den) * pt.den,
              "rational_sphere_points: exactness violated");
      out.push_back(pt);
    }
  std::sort(out.begin(), out.end(), [](const RationalPoint& a,
                                       const RationalPoint& b) {
    return std::tie(a.den, a.x, a.y, a.z) < std::tie(b.den, b.x, b.y, b.z);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RationalPoint& a, const RationalPoint& b) {
                          return a.x == b.x && a.y == b.y && a.z == b.z &&
                                 a.den == b.den;
                        }),
            out.end());
  return out;
}

double covering_radius(const std::vector<RationalPoint>& pts, int probes) {
  const double golden = 2.399963229728653;
  double worst = 0;
  for (int i = 0; i < probes; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / probes;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double az = golden * i;
    Vector3d d(r * std::cos(az), r * std::sin(az), z);
    double best = 4.0;
    for (const auto& p : pts) best = std::min(best, (d - p.approx()).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// charts
// ---------------------------------------------------------------------------
Matrix3d projection_matrix(const Vector3i& k) {
  Vector3d khat = k.cast<double>().normalized();
  return Matrix3d::Identity() - khat * khat.transpose();
}

double sym_op_norm(const Matrix3d& m) {
  Eigen::SelfAdjointEigenSolver<Matrix3d> es;
  es.computeDirect(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

int parity_class(const Vector3i& l) {
  auto bit = [](int v) { return ((v % 2) + 2) % 2; };
  return bit(l[0]) + 2 * bit(l[1]) + 4 * bit(l[2]);
}

namespace {
using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 vec6(const Matrix3d& m) {
  Vec6 v;
  v << m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(0, 2), m(1, 2);
  return v;
}

Matrix3d mat_from_vec6(const Vec6& v) {
  Matrix3d m;
  m << v[0], v[3], v[4], v[3], v[1], v[5], v[4], v[5], v[2];
  return m;
}

// isometric embedding (off-diagonals scaled by sqrt(2)); Frobenius-faithful
Vec6 vec6iso(const Matrix3d& m) {
  const double s = std::sqrt(2.0);
  Vec6 v;
  v << m(0, 0), m(1, 1), m(2, 2), s * m(0, 1), s * m(0, 2), s * m(1, 2);
  return v;
}

double nuclear_norm(const Matrix3d& m) {
  Eigen::SelfAdjointEigenSolver<Matrix3d> es;
  es.computeDirect(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

const char* kFmt = "%.17g";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), kFmt, v);
  return buf;
}
}  // namespace

Eigen::Matrix<double, 7, 1> SimplexChart::beta_of(const Matrix3d& R) const {
  Matrix3d x = alpha * R;
  Eigen::Matrix<double, 7, 1> rhs;
  rhs.head<6>() = vec6(x);
  rhs[6] = solve_mat.row(6).transpose().dot(beta0);
  return solve_mat.partialPivLu().solve(rhs);
}

Eigen::VectorXd SimplexChart::lambdas(const Matrix3d& R) const {
  Matrix3d e = R - Matrix3d::Identity();
  Eigen::VectorXd out(base.size());
  for (std::size_t p = 0; p < base.size(); ++p)
    out[int(p)] = base[p] + gmat[p].cwiseProduct(e).sum();
  return out;
}

double center_margin(const std::vector<Vector3i>& pair_reps,
                     Eigen::VectorXd* weights) {
  const int P = int(pair_reps.size());
  require(P >= 1, "center_margin: empty pair set");
  const Matrix3d center = SimplexChart::kAlpha * Matrix3d::Identity();
  // max m  s.t.  sum c_p M_p = center, sum c_p = 1, c_p >= m >= 0
  int nv = 2 * P + 1;  // c_p, m, slack_p
  int rows = 7 + P;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, nv);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (int p = 0; p < P; ++p) {
    Vec6 v = vec6(projection_matrix(pair_reps[p]));
    for (int r = 0; r < 6; ++r) A(r, p) = v[r];
    A(6, p) = 1.0;
    A(7 + p, p) = 1.0;
    A(7 + p, P) = -1.0;
    A(7 + p, P + 1 + p) = -1.0;
  }
  b.head<6>() = vec6(center);
  b[6] = 1.0;
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(nv);
  obj[P] = -1.0;
  LpResult lp = solve_lp(A, b, obj);
  if (!lp.feasible) return 0.0;
  if (weights) *weights = lp.x.head(P);
  return lp.x[P];
}

SimplexChart build_chart(const std::vector<Vector3i>& pair_reps) {
  const int P = int(pair_reps.size());
  if (P < 6) throw ChartError("fewer than 6 direction pairs");
  const double alpha = SimplexChart::kAlpha;
  const Matrix3d center = alpha * Matrix3d::Identity();

  std::vector<Matrix3d> M(P);
  for (int p = 0; p < P; ++p) M[p] = projection_matrix(pair_reps[p]);

  {
    Eigen::VectorXd c0;
    double margin = center_margin(pair_reps, &c0);
    if (margin <= 1e-9)
      throw ChartError("center not strictly inside the projection hull");

    SimplexChart chart;
    chart.lp_margin = margin;
    Matrix3d resid = -center;
    for (int p = 0; p < P; ++p) resid += c0[p] * M[p];
    require(resid.norm() < 1e-8, "chart: center combination residual");

    // greedy choice of six projections affinely spanning the trace-2 plane
    std::vector<int> chosen;
    {
      int first = 0;
      double best = -1;
      for (int p = 0; p < P; ++p) {
        double d = (M[p] - center).norm();
        if (d > best + 1e-12) {
          best = d;
          first = p;
        }
      }
      chosen.push_back(first);
      std::vector<Vec6> Q;
      Vec6 origin = vec6iso(M[first]);
      while (int(chosen.size()) < 6) {
        int pick = -1;
        double score = 1e-6;
        Vec6 picked_dir = Vec6::Zero();
        for (int p = 0; p < P; ++p) {
          if (std::find(chosen.begin(), chosen.end(), p) != chosen.end())
            continue;
          Vec6 d = vec6iso(M[p]) - origin;
          for (const auto& q : Q) d -= q.dot(d) * q;
          double s = d.norm();
          if (s > score + 1e-12) {
            score = s;
            pick = p;
            picked_dir = d / s;
          }
        }
        if (pick < 0)
          throw ChartError("pair projections do not affinely span");
        chosen.push_back(pick);
        Q.push_back(picked_dir);
      }
    }

    const double eps = 0.1;
    for (int i = 0; i < 6; ++i)
      chart.vertices[i] = (1 - eps) * M[chosen[i]] + eps * center;
    Matrix3d centroid = Matrix3d::Zero();
    for (int i = 0; i < 6; ++i) centroid += chart.vertices[i] / 6.0;

    // seventh vertex on the far side of the center, still a positive
    // combination of the projections
    double s_par = std::min(0.25, 3.0 * margin / (1 - eps));
    Eigen::VectorXd w7;
    for (;; s_par *= 0.5) {
      chart.vertices[6] = (1 + s_par) * center - s_par * centroid;
      w7 = (1 + s_par * (1 - eps)) * c0;
      for (int i = 0; i < 6; ++i) w7[chosen[i]] -= s_par * (1 - eps) / 6.0;
      if (w7.minCoeff() > 0) break;
      if (s_par < 1e-12) throw ChartError("no positive seventh vertex");
    }

    for (int i = 0; i < 6; ++i) {
      chart.carath[i].assign(P, 0.0);
      for (int p = 0; p < P; ++p) chart.carath[i][p] = eps * c0[p];
      chart.carath[i][chosen[i]] += 1 - eps;
    }
    chart.carath[6].assign(w7.data(), w7.data() + P);

    chart.beta0.head<6>().setConstant(s_par / (6.0 * (1 + s_par)));
    chart.beta0[6] = 1.0 / (1 + s_par);

    // pinned solve: six component rows plus the frozen null direction
    Eigen::MatrixXd vmat(6, 7);
    for (int i = 0; i < 7; ++i) vmat.col(i) = vec6(chart.vertices[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(vmat);
    lu.setThreshold(1e-9);
    if (lu.rank() != 6) throw ChartError("vertex matrix rank deficient");
    Eigen::VectorXd null = lu.kernel().col(0);
    for (int i = 0; i < 7; ++i) {
      if (std::abs(null[i]) > 1e-12) {
        if (null[i] < 0) null = -null;
        break;
      }
    }
    null.normalize();
    chart.solve_mat.topRows<6>() = vmat;
    chart.solve_mat.row(6) = null.transpose();
    Eigen::FullPivLU<Eigen::Matrix<double, 7, 7>> check(chart.solve_mat);
    if (!check.isInvertible()) throw ChartError("pinned solve singular");

    // consolidated affine coefficient map
    auto lambda_at = [&](const Matrix3d& R) {
      auto beta = chart.beta_of(R);
      Eigen::VectorXd lam = Eigen::VectorXd::Zero(P);
      for (int i = 0; i < 7; ++i)
        for (int p = 0; p < P; ++p)
          lam[p] += beta[i] * chart.carath[i][p] / alpha;
      return lam;
    };
    Eigen::VectorXd base = lambda_at(Matrix3d::Identity());
    chart.base.assign(base.data(), base.data() + P);
    chart.gmat.assign(P, Matrix3d::Zero());
    for (int a = 0; a < 3; ++a)
      for (int bb = a; bb < 3; ++bb) {
        Matrix3d E = Matrix3d::Zero();
        E(a, bb) = E(bb, a) = 1.0;
        Eigen::VectorXd lam = lambda_at(Matrix3d::Identity() + E);
        for (int p = 0; p < P; ++p) {
          double diff = lam[p] - base[p];
          if (a == bb)
            chart.gmat[p](a, a) = diff;
          else
            chart.gmat[p](a, bb) = chart.gmat[p](bb, a) = diff / 2.0;
        }
      }

    // certified radii: coefficient positivity over operator-norm balls, and
    // the inner radius of the simplex around the center
    double r_pos = 1e30;
    for (int p = 0; p < P; ++p) {
      double nn = nuclear_norm(chart.gmat[p]);
      if (nn > 0) r_pos = std::min(r_pos, chart.base[p] / nn);
    }
    Eigen::Matrix<double, 7, 7> inv =
        chart.solve_mat.partialPivLu().inverse();
    double theta = 1e30;
    for (int i = 0; i < 7; ++i) {
      Vec6 h = inv.row(i).head<6>().transpose();
      Vec6 hm;
      hm << h[0], h[1], h[2], h[3] / 2, h[4] / 2, h[5] / 2;
      Matrix3d H = mat_from_vec6(hm);
      Matrix3d Ht = H - (H.trace() / 3.0) * Matrix3d::Identity();
      double hn = Ht.norm();
      if (hn > 0) theta = std::min(theta, chart.beta0[i] / hn);
    }
    chart.theta = theta;
    chart.r0 = std::min(theta / (2 * alpha), r_pos);
    if (!(chart.r0 > 0)) throw ChartError("vanishing chart radius");
    return chart;
  }
}

std::vector<Vector3i> DirectionFamily::all_vectors() const {
  std::vector<Vector3i> out;
  for (const auto& k : pair_reps) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

int DirectionFamily::pair_index(const Vector3i& k) const {
  Vector3i c = lex_positive(k) ? k : Vector3i(-k);
  for (std::size_t i = 0; i < pair_reps.size(); ++i)
    if (pair_reps[i] == c) return int(i);
  return -1;
}

int DirectionSystem::family_of(const Vector3i& k) const {
  for (int j = 0; j < 8; ++j)
    if (families[j].pair_index(k) >= 0) return j;
  return -1;
}

double gamma_coeff(const DirectionSystem& sys, int family, const Vector3i& k,
                   const Matrix3d& R) {
  require(family >= 0 && family < 8, "gamma_coeff: family index");
  const DirectionFamily& fam = sys.families[family];
  int p = fam.pair_index(k);
  require(p >= 0, "gamma_coeff: direction not in family");
  Matrix3d e = R - Matrix3d::Identity();
  if (sym_op_norm(e) >= fam.chart.r0)
    throw std::domain_error("gamma_coeff: matrix outside the chart domain");
  double lam =
      fam.chart.base[p] + fam.chart.gmat[p].cwiseProduct(e).sum();
  require(lam > 0, "gamma_coeff: nonpositive coefficient inside domain");
  return std::sqrt(lam);
}

Matrix3d reconstruct(const DirectionFamily& fam, const Matrix3d& R) {
  Eigen::VectorXd lam = fam.chart.lambdas(R);
  Matrix3d out = Matrix3d::Zero();
  for (std::size_t p = 0; p < fam.pair_reps.size(); ++p)
    out += lam[int(p)] * projection_matrix(fam.pair_reps[p]);
  return out;
}

double compute_eta(const DirectionSystem& sys, double energy_min) {
  require(energy_min > 0, "compute_eta: energy_min must be positive");
  return sys.r0 * energy_min / (24.0 * kBoxVolume);
}

// ---------------------------------------------------------------------------
// system search
// ---------------------------------------------------------------------------
namespace {
std::vector<Vector3i> canonical_pairs(int shell_norm) {
  std::vector<Vector3i> reps;
  for (const auto& k : shell_vectors(shell_norm))
    if (lex_positive(k)) reps.push_back(k);
  return reps;
}

// spherical-spread ordering: golden-angle azimuth phase, then polar angle
void sort_by_spread(std::vector<Vector3i>& reps) {
  const double golden = 2.399963229728653;
  std::sort(reps.begin(), reps.end(), [&](const Vector3i& a,
                                          const Vector3i& b) {
    auto key = [&](const Vector3i& k) {
      Vector3d d = k.cast<double>().normalized();
      double az = std::atan2(d[1], d[0]);
      double phase = (az + kTwoPi) / golden;
      phase -= std::floor(phase);
      double polar = std::acos(std::clamp(d[2], -1.0, 1.0));
      return std::make_pair(phase, polar);
    };
    auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                        b.data() + 3);
  });
}

double chart_min_r0(const DirectionSystem& sys) {
  double r0 = 1e30;
  bool any = false;
  for (const auto& f : sys.families)
    if (!f.empty()) {
      r0 = std::min(r0, f.chart.r0);
      any = true;
    }
  require(any, "system has no populated family");
  return r0;
}

// LP margin of a hand, zeroed when the projections fail to affinely span
double hand_score(const std::vector<Vector3i>& reps) {
  if (reps.size() < 6) return 0.0;
  double margin = center_margin(reps);
  if (margin <= 1e-9) return 0.0;
  Eigen::MatrixXd d(6, int(reps.size()) - 1);
  Vec6 first = vec6iso(projection_matrix(reps[0]));
  for (std::size_t p = 1; p < reps.size(); ++p)
    d.col(int(p) - 1) = vec6iso(projection_matrix(reps[p])) - first;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  lu.setThreshold(1e-7);
  if (lu.rank() < 5) return 0.0;
  return margin;
}

// greedy pair exchange lifting the weakest hand's margin
bool repair_hands(std::array<std::vector<Vector3i>, 8>& hands) {
  std::array<double, 8> score;
  for (int j = 0; j < 8; ++j) score[j] = hand_score(hands[j]);
  for (int iter = 0; iter < 400; ++iter) {
    int worst = 0;
    for (int j = 1; j < 8; ++j)
      if (score[j] < score[worst]) worst = j;
    if (score[worst] > 1e-6) return true;

    double best_gain = score[worst] + 1e-9;
    int best_o = -1, best_i = -1, best_k = -1;
    for (int o = 0; o < 8; ++o) {
      if (o == worst) continue;
      for (std::size_t i = 0; i < hands[worst].size(); ++i)
        for (std::size_t k = 0; k < hands[o].size(); ++k) {
          std::swap(hands[worst][i], hands[o][k]);
          double sw = hand_score(hands[worst]);
          double so = hand_score(hands[o]);
          std::swap(hands[worst][i], hands[o][k]);
          double gain = std::min(sw, so);
          if (gain > best_gain) {
            best_gain = gain;
            best_o = o;
            best_i = int(i);
            best_k = int(k);
          }
        }
    }
    if (best_o < 0) return false;
    std::swap(hands[worst][best_i], hands[best_o][best_k]);
    score[worst] = hand_score(hands[worst]);
    score[best_o] = hand_score(hands[best_o]);
  }
  return false;
}
}  // namespace

DirectionSystem find_direction_system(int search_bound) {
  require(search_bound >= 1, "find_direction_system: bound must be positive");
  std::vector<std::string> reasons;
  for (int s = 2; s <= search_bound * search_bound; ++s) {
    auto reps = canonical_pairs(s);
    if (reps.empty()) continue;
    if (int(reps.size()) < 48) {
      reasons.push_back("norm " + std::to_string(s) + ": only " +
                        std::to_string(reps.size()) + " pairs (need 48)");
      continue;
    }
    sort_by_spread(reps);
    std::string fail;
    for (int strategy = 0; strategy < 8 && fail.empty(); ++strategy) {
      std::array<std::vector<Vector3i>, 8> hands;
      for (std::size_t i = 0; i < reps.size(); ++i)
        hands[(i + strategy) % 8].push_back(reps[i]);
      if (!repair_hands(hands)) {
        if (strategy == 7)
          fail = "norm " + std::to_string(s) +
                 ": no dealing reached strictly interior hulls";
        continue;
      }
      DirectionSystem sys;
      sys.shell_norm = s;
      sys.lambda0 = std::sqrt(double(s));
      bool ok = true;
      for (int j = 0; j < 8 && ok; ++j) {
        auto& fam = sys.families[j];
        fam.pair_reps = hands[j];
        std::sort(fam.pair_reps.begin(), fam.pair_reps.end(),
                  [](const Vector3i& a, const Vector3i& b) {
                    return std::lexicographical_compare(
                        a.data(), a.data() + 3, b.data(), b.data() + 3);
                  });
        try {
          fam.chart = build_chart(fam.pair_reps);
        } catch (const ChartError& e) {
          if (strategy == 7)
            fail = "norm " + std::to_string(s) + ": family " +
                   std::to_string(j + 1) + ": " + e.what();
          ok = false;
        }
      }
      if (ok) {
        sys.partial = false;
        sys.r0 = chart_min_r0(sys);
        return sys;
      }
    }
    if (!fail.empty()) reasons.push_back(fail);
  }
  std::string msg = "no feasible direction system up to bound " +
                    std::to_string(search_bound);
  for (const auto& r : reasons) msg += "\n  " + r;
  throw SystemSearchError(msg);
}

DirectionSystem make_preset_system(const std::string& name) {
  DirectionSystem sys;
  sys.partial = true;
  auto fill = [&](int family, std::vector<Vector3i> reps) {
    std::sort(reps.begin(), reps.end(), [](const Vector3i& a,
                                           const Vector3i& b) {
      return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                          b.data() + 3);
    });
    sys.families[family].pair_reps = reps;
    sys.families[family].chart = build_chart(sys.families[family].pair_reps);
  };
  if (name == "shell2_single") {
    sys.shell_norm = 2;
    fill(0, canonical_pairs(2));
  } else if (name == "shell5_single") {
    sys.shell_norm = 5;
    fill(0, canonical_pairs(5));
  } else if (name == "shell5_pair") {
    sys.shell_norm = 5;
    // two halves of the |k|^2 = 5 shell, each summing k k^T to 10 Id;
    // assigned to the parity classes of l = (0,0,0) and l = (0,0,1)
    std::vector<Vector3i> fam_a = {{2, 1, 0},  {1, -2, 0}, {0, 2, 1},
                                   {0, 1, -2}, {2, 0, -1}, {1, 0, 2}};
    std::vector<Vector3i> fam_b;
    for (const auto& k : canonical_pairs(5)) {
      bool in_a = false;
      for (const auto& a : fam_a)
        if (a == k) in_a = true;
      if (!in_a) fam_b.push_back(k);
    }
    require(fam_b.size() == 6, "shell5_pair: unexpected shell layout");
    fill(parity_class(Vector3i(0, 0, 0)), fam_a);
    fill(parity_class(Vector3i(0, 0, 1)), fam_b);
  } else {
    throw std::invalid_argument("unknown preset system: " + name);
  }
  sys.lambda0 = std::sqrt(double(sys.shell_norm));
  sys.r0 = chart_min_r0(sys);
  return sys;
}

void validate_system(const DirectionSystem& sys, std::uint64_t seed,
                     int samples, double tol) {
  require(sys.shell_norm >= 1, "system: shell norm");
  require(sys.r0 > 0, "system: r0 must be positive");
  std::vector<Vector3i> seen;
  for (int j = 0; j < 8; ++j) {
    const auto& fam = sys.families[j];
    require(int(fam.pair_reps.size()) * 2 <= 98, "family too large");
    if (fam.empty()) {
      require(sys.partial, "full system has an empty family");
      continue;
    }
    for (const auto& k : fam.pair_reps) {
      require(k.squaredNorm() == sys.shell_norm, "direction off the shell");
      require(lex_positive(k), "non-canonical representative stored");
      for (const auto& s : seen)
        require(s != k, "families are not pairwise disjoint");
      seen.push_back(k);
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int j = 0; j < 8; ++j) {
    const auto& fam = sys.families[j];
    if (fam.empty()) continue;
    for (int trial = 0; trial < samples; ++trial) {
      Matrix3d e;
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) e(a, b) = e(b, a) = dist(rng);
      double norm = sym_op_norm(e);
      if (norm > 0) e *= (sys.r0 * unif(rng) * 0.999) / norm;
      Matrix3d R = Matrix3d::Identity() + e;
      Matrix3d rec = reconstruct(fam, R);
      require((rec - R).norm() <= tol * std::max(1.0, R.norm()),
              "reconstruction identity violated");
      Eigen::VectorXd lam = fam.chart.lambdas(R);
      require(lam.minCoeff() > 0, "nonpositive coefficient inside domain");
    }
  }
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------
std::string serialize(const DirectionSystem& sys) {
  std::ostringstream os;
  os << "cvx-direction-system v1\n";
  os << "shell_norm " << sys.shell_norm << "\n";
  os << "lambda0 " << fmt(sys.lambda0) << "\n";
  os << "r0 " << fmt(sys.r0) << "\n";
  os << "partial " << (sys.partial ? 1 : 0) << "\n";
  for (int j = 0; j < 8; ++j) {
    const auto& fam = sys.families[j];
    os << "family " << (j + 1) << " pairs " << fam.pair_reps.size() << "\n";
    for (const auto& k : fam.pair_reps)
      os << "pair " << k[0] << " " << k[1] << " " << k[2] << "\n";
    if (!fam.empty()) {
      const auto& ch = fam.chart;
      os << "alpha " << fmt(ch.alpha) << "\n";
      os << "theta " << fmt(ch.theta) << "\n";
      os << "chart_r0 " << fmt(ch.r0) << "\n";
      os << "margin " << fmt(ch.lp_margin) << "\n";
      os << "beta0";
      for (int i = 0; i < 7; ++i) os << " " << fmt(ch.beta0[i]);
      os << "\n";
      for (int i = 0; i < 7; ++i) {
        const Matrix3d& v = ch.vertices[i];
        os << "vertex " << i << " " << fmt(v(0, 0)) << " " << fmt(v(1, 1))
           << " " << fmt(v(2, 2)) << " " << fmt(v(0, 1)) << " "
           << fmt(v(0, 2)) << " " << fmt(v(1, 2)) << "\n";
      }
      for (int i = 0; i < 7; ++i) {
        os << "carath " << i;
        for (double w : ch.carath[i]) os << " " << fmt(w);
        os << "\n";
      }
      os << "nullrow";
      for (int i = 0; i < 7; ++i) os << " " << fmt(ch.solve_mat(6, i));
      os << "\n";
      os << "base";
      for (double b : ch.base) os << " " << fmt(b);
      os << "\n";
      for (std::size_t p = 0; p < ch.gmat.size(); ++p) {
        const Matrix3d& g = ch.gmat[p];
        os << "gmat " << p << " " << fmt(g(0, 0)) << " " << fmt(g(1, 1))
           << " " << fmt(g(2, 2)) << " " << fmt(g(0, 1)) << " "
           << fmt(g(0, 2)) << " " << fmt(g(1, 2)) << "\n";
      }
    }
    os << "end_family\n";
  }
  os << "end\n";
  return os.str();
}

namespace {
Matrix3d sym_from_six(double m11, double m22, double m33, double m12,
                      double m13, double m23) {
  Matrix3d m;
  m << m11, m12, m13, m12, m22, m23, m13, m23, m33;
  return m;
}
}  // namespace

DirectionSystem parse_direction_system(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  auto expect = [&](const std::string& want) {
    is >> tok;
    require(tok == want, "direction system parse: expected '" + want +
                             "', got '" + tok + "'");
  };
  expect("cvx-direction-system");
  expect("v1");
  DirectionSystem sys;
  int partial = 0;
  expect("shell_norm");
  is >> sys.shell_norm;
  expect("lambda0");
  is >> sys.lambda0;
  expect("r0");
  is >> sys.r0;
  expect("partial");
  is >> partial;
  sys.partial = partial != 0;
  for (int j = 0; j < 8; ++j) {
    expect("family");
    int idx, npairs;
    is >> idx;
    require(idx == j + 1, "direction system parse: family order");
    expect("pairs");
    is >> npairs;
    auto& fam = sys.families[j];
    for (int p = 0; p < npairs; ++p) {
      expect("pair");
      Vector3i k;
      is >> k[0] >> k[1] >> k[2];
      fam.pair_reps.push_back(k);
    }
    if (npairs > 0) {
      auto& ch = fam.chart;
      expect("alpha");
      is >> ch.alpha;
      expect("theta");
      is >> ch.theta;
      expect("chart_r0");
      is >> ch.r0;
      expect("margin");
      is >> ch.lp_margin;
      expect("beta0");
      for (int i = 0; i < 7; ++i) is >> ch.beta0[i];
      for (int i = 0; i < 7; ++i) {
        expect("vertex");
        int vi;
        double a, b, c, d, e, f;
        is >> vi >> a >> b >> c >> d >> e >> f;
        ch.vertices[i] = sym_from_six(a, b, c, d, e, f);
      }
      for (int i = 0; i < 7; ++i) {
        expect("carath");
        int ci;
        is >> ci;
        ch.carath[i].resize(npairs);
        for (int p = 0; p < npairs; ++p) is >> ch.carath[i][p];
      }
      expect("nullrow");
      Eigen::Matrix<double, 7, 1> null;
      for (int i = 0; i < 7; ++i) is >> null[i];
      for (int i = 0; i < 7; ++i)
        ch.solve_mat.col(i).head<6>() = vec6(ch.vertices[i]);
      ch.solve_mat.row(6) = null.transpose();
      expect("base");
      ch.base.resize(npairs);
      for (int p = 0; p < npairs; ++p) is >> ch.base[p];
      ch.gmat.resize(npairs);
      for (int p = 0; p < npairs; ++p) {
        expect("gmat");
        int gi;
        double a, b, c, d, e, f;
        is >> gi >> a >> b >> c >> d >> e >> f;
        ch.gmat[p] = sym_from_six(a, b, c, d, e, f);
      }
    }
    expect("end_family");
  }
  expect("end");
  require(bool(is), "direction system parse: truncated input");
  return sys;
}

}  // namespace cvx
