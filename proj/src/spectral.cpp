#include "drum/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "drum/error.hpp"

namespace drum {

namespace {

double asDouble(const Rational& x) { return x.get_d(); }
double asDouble(double x) { return x; }

Rational boundarySlack(const Polygon<Rational>&) { return Rational(0); }
double boundarySlack(const Polygon<double>& poly) {
  double extent = 0;
  for (const auto& p : poly) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  return 1e-12 * std::max(extent, 1.0);
}

template <class T>
T absOf(const T& x) {
  return x < 0 ? T(-x) : x;
}

// floor(x / h) for positive h, as an index count.
std::size_t stepsWithin(const Rational& span, const Rational& h) {
  Rational q = span / h;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_ui();
}
std::size_t stepsWithin(double span, double h) {
  return static_cast<std::size_t>(std::floor(span / h + 1e-9));
}

}  // namespace

std::size_t GridMask::interiorCount() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
}

template <class T>
GridMask rasterize(const Polygon<T>& polygon, const T& h, const RasterOptions& options) {
  if (!(h > 0)) fail(ErrorKind::InvalidInput, "grid spacing must be positive");
  if (polygon.size() < 3 || doubledSignedArea(polygon) == 0) {
    fail(ErrorKind::InvalidInput, "degenerate polygon");
  }
  T minX = polygon[0].x, maxX = minX, minY = polygon[0].y, maxY = minY;
  for (const auto& p : polygon) {
    if (p.x < minX) minX = p.x;
    if (p.x > maxX) maxX = p.x;
    if (p.y < minY) minY = p.y;
    if (p.y > maxY) maxY = p.y;
  }
  const T spanX = maxX - minX, spanY = maxY - minY;
  if (asDouble(spanX) / asDouble(h) >= static_cast<double>(options.maxNodesPerAxis) ||
      asDouble(spanY) / asDouble(h) >= static_cast<double>(options.maxNodesPerAxis)) {
    fail(ErrorKind::BudgetExceeded, "grid too large for the configured cap");
  }
  GridMask mask;
  mask.h = asDouble(h);
  mask.origin = {asDouble(minX), asDouble(minY)};
  mask.nx = stepsWithin(spanX, h) + 1;
  mask.ny = stepsWithin(spanY, h) + 1;
  mask.inside.assign(mask.nx * mask.ny, 0);

  const T slack = boundarySlack(polygon);
  const std::size_t n = polygon.size();
  std::vector<T> crossings;
  std::vector<T> onEdge;                     // boundary x positions in the row
  std::vector<std::pair<T, T>> onSpan;       // horizontal boundary spans
  T y = minY;
  for (std::size_t j = 0; j < mask.ny; ++j, y += h) {
    crossings.clear();
    onEdge.clear();
    onSpan.clear();
    for (std::size_t e = 0; e < n; ++e) {
      const auto& p = polygon[e];
      const auto& q = polygon[(e + 1) % n];
      if (absOf(T(p.y - q.y)) <= slack) {
        if (absOf(T(y - p.y)) <= slack) {
          onSpan.emplace_back(p.x < q.x ? p.x : q.x, p.x < q.x ? q.x : p.x);
        }
        continue;
      }
      const T lo = p.y < q.y ? p.y : q.y, hi = p.y < q.y ? q.y : p.y;
      if (y < lo - slack || y > hi + slack) continue;
      const T x = p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y);
      onEdge.push_back(x);
      if ((p.y > y) != (q.y > y)) crossings.push_back(x);
    }
    std::sort(crossings.begin(), crossings.end());
    std::size_t passed = 0;  // crossings at or left of x
    T x = minX;
    for (std::size_t i = 0; i < mask.nx; ++i, x += h) {
      while (passed < crossings.size() && crossings[passed] <= x) ++passed;
      const bool boundary =
          std::any_of(onEdge.begin(), onEdge.end(),
                      [&](const T& b) { return absOf(T(b - x)) <= slack; }) ||
          std::any_of(onSpan.begin(), onSpan.end(), [&](const auto& s) {
            return x >= s.first - slack && x <= s.second + slack;
          });
      if (!boundary && (crossings.size() - passed) % 2 == 1) {
        mask.inside[j * mask.nx + i] = 1;
      }
    }
  }
  return mask;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

SparseMatrix assemble(const GridMask& mask, std::vector<std::ptrdiff_t>& index) {
  index.assign(mask.inside.size(), -1);
  std::ptrdiff_t count = 0;
  for (std::size_t k = 0; k < mask.inside.size(); ++k) {
    if (mask.inside[k]) index[k] = count++;
  }
  const double diag = 4.0 / (mask.h * mask.h);
  const double off = -1.0 / (mask.h * mask.h);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(count) * 5);
  for (std::size_t j = 0; j < mask.ny; ++j) {
    for (std::size_t i = 0; i < mask.nx; ++i) {
      const auto row = index[j * mask.nx + i];
      if (row < 0) continue;
      triplets.emplace_back(row, row, diag);
      const auto link = [&](std::size_t ii, std::size_t jj) {
        const auto col = index[jj * mask.nx + ii];
        if (col >= 0) triplets.emplace_back(row, col, off);
      };
      if (i > 0) link(i - 1, j);
      if (i + 1 < mask.nx) link(i + 1, j);
      if (j > 0) link(i, j - 1);
      if (j + 1 < mask.ny) link(i, j + 1);
    }
  }
  SparseMatrix a(count, count);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

std::vector<double> residualsOf(const SparseMatrix& a, const Eigen::MatrixXd& vectors,
                                const Eigen::VectorXd& values, std::size_t k) {
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd v = vectors.col(idx);
    out[i] = (a * v - values(idx) * v).norm() / (std::abs(values(idx)) * v.norm());
  }
  return out;
}

}  // namespace

Spectrum dirichletEigenvalues(const GridMask& mask, std::size_t k,
                              const EigenOptions& options) {
  std::vector<std::ptrdiff_t> index;
  const SparseMatrix a = assemble(mask, index);
  const auto n = static_cast<std::size_t>(a.rows());
  if (n == 0) fail(ErrorKind::InvalidInput, "mask has no interior nodes");
  if (k == 0 || k > n) {
    fail(ErrorKind::InvalidInput, "requested " + std::to_string(k) +
                                      " eigenvalues from " + std::to_string(n) + " unknowns");
  }
  Spectrum out;
  out.h = mask.h;
  out.unknowns = n;

  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  if (n < options.denseThreshold) {
    const Eigen::MatrixXd denseA(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(denseA);
    if (solver.info() != Eigen::Success) {
      fail(ErrorKind::NotConverged, "dense eigensolver failed");
    }
    values = solver.eigenvalues().head(static_cast<Eigen::Index>(k));
    vectors = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
    out.method = "dense";
  } else {
    // Shift-invert block subspace iteration with Rayleigh–Ritz; the block
    // carries extra vectors so clustered and repeated eigenvalues converge.
    Eigen::SimplicialLDLT<SparseMatrix> factor(a);
    if (factor.info() != Eigen::Success) {
      fail(ErrorKind::NotConverged, "sparse factorization failed");
    }
    const auto block = static_cast<Eigen::Index>(std::min(n, std::max(2 * k, k + 8)));
    std::mt19937_64 rng(20110818);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), block);
    for (Eigen::Index c = 0; c < block; ++c) {
      for (Eigen::Index r = 0; r < x.rows(); ++r) x(r, c) = uniform(rng);
    }
    bool converged = false;
    for (std::size_t iter = 0; iter < options.maxIterations; ++iter) {
      const Eigen::MatrixXd y = factor.solve(x);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
      const Eigen::MatrixXd q =
          qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), block);
      const Eigen::MatrixXd projected = q.transpose() * (a * q);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(
          0.5 * (projected + projected.transpose()));
      x = q * ritz.eigenvectors();
      values = ritz.eigenvalues().head(static_cast<Eigen::Index>(k));
      vectors = x.leftCols(static_cast<Eigen::Index>(k));
      const auto res = residualsOf(a, vectors, values, k);
      if (*std::max_element(res.begin(), res.end()) <= options.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      fail(ErrorKind::NotConverged, "subspace iteration did not reach tolerance");
    }
    out.method = "shift-invert subspace";
  }
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.residuals = residualsOf(a, vectors, values, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(out.eigenvalues[i] > 0)) {
      fail(ErrorKind::NotConverged, "non-positive Dirichlet eigenvalue");
    }
    if (out.residuals[i] > options.residualContract) {
      fail(ErrorKind::NotConverged, "eigenpair residual above contract");
    }
  }
  return out;
}

SpectrumComparison compareSpectra(const Spectrum& a, const Spectrum& b, double relTol) {
  if (a.eigenvalues.size() != b.eigenvalues.size()) {
    fail(ErrorKind::InvalidInput, "spectra have different lengths");
  }
  if (a.h != b.h) fail(ErrorKind::InvalidInput, "spectra computed at different h");
  SpectrumComparison out;
  out.relTol = relTol;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    const double d = std::abs(a.eigenvalues[i] - b.eigenvalues[i]) / a.eigenvalues[i];
    out.relativeDifferences.push_back(d);
    out.maxRelativeDifference = std::max(out.maxRelativeDifference, d);
  }
  out.pass = out.maxRelativeDifference <= relTol;
  return out;
}

template <class T>
RefinementStudy refinementStudy(const Polygon<T>& polygon, const std::vector<T>& hs,
                                std::size_t k, const EigenOptions& options) {
  if (hs.empty()) fail(ErrorKind::InvalidInput, "no grid spacings given");
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (!(hs[i] < hs[i - 1])) fail(ErrorKind::InvalidInput, "spacings must descend");
  }
  RefinementStudy study;
  for (const auto& h : hs) {
    study.hs.push_back(asDouble(h));
    study.spectra.push_back(dirichletEigenvalues(rasterize(polygon, h), k, options));
  }
  const std::size_t m = hs.size();
  if (m >= 2) {
    const auto& coarse = study.spectra[m - 2].eigenvalues;
    const auto& fine = study.spectra[m - 1].eigenvalues;
    const double r = study.hs[m - 2] / study.hs[m - 1];
    for (std::size_t i = 0; i < k; ++i) {
      study.extrapolated.push_back((r * r * fine[i] - coarse[i]) / (r * r - 1));
    }
  }
  if (m >= 3) {
    const auto& l1 = study.spectra[m - 3].eigenvalues;
    const auto& l2 = study.spectra[m - 2].eigenvalues;
    const auto& l3 = study.spectra[m - 1].eigenvalues;
    const double r = study.hs[m - 3] / study.hs[m - 2];
    for (std::size_t i = 0; i < k; ++i) {
      study.observedOrder.push_back(
          std::log(std::abs(l1[i] - l2[i]) / std::abs(l2[i] - l3[i])) / std::log(r));
    }
  }
  return study;
}

template <class T>
PairStudy pairStudy(const Polygon<T>& a, const Polygon<T>& b, const std::vector<T>& hs,
                    std::size_t k, double relTol, const EigenOptions& options) {
  PairStudy out;
  out.a = refinementStudy(a, hs, k, options);
  out.b = refinementStudy(b, hs, k, options);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    out.comparisons.push_back(compareSpectra(out.a.spectra[i], out.b.spectra[i], relTol));
  }
  out.gapShrinks = out.comparisons.size() >= 2;
  for (std::size_t i = 1; i < out.comparisons.size(); ++i) {
    out.gapShrinks = out.gapShrinks && out.comparisons[i].maxRelativeDifference <
                                           out.comparisons[i - 1].maxRelativeDifference;
  }
  return out;
}

template GridMask rasterize<Rational>(const Polygon<Rational>&, const Rational&,
                                      const RasterOptions&);
template GridMask rasterize<double>(const Polygon<double>&, const double&,
                                    const RasterOptions&);
template RefinementStudy refinementStudy<Rational>(const Polygon<Rational>&,
                                                   const std::vector<Rational>&,
                                                   std::size_t, const EigenOptions&);
template RefinementStudy refinementStudy<double>(const Polygon<double>&,
                                                 const std::vector<double>&, std::size_t,
                                                 const EigenOptions&);
template PairStudy pairStudy<Rational>(const Polygon<Rational>&, const Polygon<Rational>&,
                                       const std::vector<Rational>&, std::size_t, double,
                                       const EigenOptions&);
template PairStudy pairStudy<double>(const Polygon<double>&, const Polygon<double>&,
                                     const std::vector<double>&, std::size_t, double,
                                     const EigenOptions&);

}  // namespace drum
