#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "drum/geometry.hpp"

namespace drum {

/// Lattice nodes origin + (i·h, j·h), 0 ≤ i < nx, 0 ≤ j < ny, flagged when
/// strictly inside the polygon. Nodes on the boundary count as outside.
struct GridMask {
  double h = 0;
  Point2<double> origin;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::uint8_t> inside;  // row-major: j * nx + i

  bool at(std::size_t i, std::size_t j) const { return inside[j * nx + i] != 0; }
  std::size_t interiorCount() const;
};

struct RasterOptions {
  std::size_t maxNodesPerAxis = 4096;
};

/// Lattice anchored at the bounding-box corner (min x, min y). Exact
/// point-in-polygon for Rational input (crossing number), 1e-12-relative
/// boundary slack for double input.
template <class T>
GridMask rasterize(const Polygon<T>& polygon, const T& h,
                   const RasterOptions& options = {});

struct EigenOptions {
  std::size_t denseThreshold = 2000;  // dense solver below this many unknowns
  double tolerance = 1e-10;           // relative residual to stop iterating
  double residualContract = 1e-8;     // reported pairs must meet this
  std::size_t maxIterations = 2000;
};

/// Lowest eigenvalues of the 5-point Dirichlet Laplacian on a mask.
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ‖Av − λv‖ / λ per eigenpair
  double h = 0;
  std::size_t unknowns = 0;
  std::string method;  // "dense" or "shift-invert subspace"
};

/// Throws Error(InvalidInput) for an empty mask or k out of range and
/// Error(NotConverged) if the iteration stalls.
Spectrum dirichletEigenvalues(const GridMask& mask, std::size_t k,
                              const EigenOptions& options = {});

struct SpectrumComparison {
  std::vector<double> relativeDifferences;  // |λa − λb| / λa
  double maxRelativeDifference = 0;
  double relTol = 0;
  bool pass = false;
};

/// Throws Error(InvalidInput) on mismatched k or h.
SpectrumComparison compareSpectra(const Spectrum& a, const Spectrum& b, double relTol);

struct RefinementStudy {
  std::vector<double> hs;
  std::vector<Spectrum> spectra;
  /// Richardson limit from the two finest grids assuming O(h²) error.
  std::vector<double> extrapolated;
  /// log(|λ(h1)−λ(h2)| / |λ(h2)−λ(h3)|) / log(h1/h2) over the three finest
  /// grids; empty with fewer than three grids.
  std::vector<double> observedOrder;
};

/// `hs` must be strictly descending.
template <class T>
RefinementStudy refinementStudy(const Polygon<T>& polygon, const std::vector<T>& hs,
                                std::size_t k, const EigenOptions& options = {});

struct PairStudy {
  RefinementStudy a;
  RefinementStudy b;
  std::vector<SpectrumComparison> comparisons;  // one per h
  /// Max relative gap strictly decreases from each h to the next finer one.
  bool gapShrinks = false;
};

template <class T>
PairStudy pairStudy(const Polygon<T>& a, const Polygon<T>& b,
                    const std::vector<T>& hs, std::size_t k, double relTol,
                    const EigenOptions& options = {});

}  // namespace drum
