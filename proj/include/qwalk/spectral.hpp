#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/quantum.hpp"

namespace qwalk {

inline constexpr double kDefaultDegeneracyTol = 1e-8;

// Spectral decomposition U = sum_r exp(i theta_r) v_r v_r^dagger of a dense
// unitary. Eigenphases are sorted ascending in (-pi, pi]; eigenvector
// columns are orthonormal. Phases whose circular distance is within the
// degeneracy tolerance share a class; each class has one spectral idempotent
// F = sum over members of v_r v_r^dagger.
struct SpectralData {
    std::vector<double> eigenphases;
    ComplexMatrix eigenvectors;
    std::vector<std::vector<std::size_t>> classes;
    // class_of[r] indexes `classes`.
    std::vector<std::size_t> class_of;

    std::size_t order() const { return eigenphases.size(); }
    bool non_degenerate() const { return classes.size() == eigenphases.size(); }
    // Idempotent of one class as a dense matrix.
    ComplexMatrix projector(std::size_t cls) const;
};

// Circular distance between two angles, in [0, pi].
double circular_distance(double a, double b);

// Throws ValidationError if U is not unitary to 1e-10 and NumericalError if
// the eigenpairs miss 1e-8.
SpectralData eigendecompose(const ComplexMatrix& u, double degeneracy_tol = kDefaultDegeneracyTol);

// sum over classes of <x| F D_v F |x>.
double idempotent_quadratic_form(const SpectralData& sd, const ArcState& x, VertexId v, const Graph& g);

// The same quantity for every vertex at once (the limiting time-averaged
// distribution).
std::vector<double> limiting_distribution(const SpectralData& sd, const ArcState& x, const Graph& g);

// (k / 2E, sqrt(k) / 2E); sigma * sqrt(2E) == sqrt(mean) by construction.
std::pair<double, double> predicted_mean_sigma(const Graph& g, int degree);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> counts;
    // counts normalized so that sum(density) * width == 1.
    std::vector<double> density;

    double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double center(std::size_t b) const { return lo + (static_cast<double>(b) + 0.5) * width(); }
};

// Pairwise spacings omega = (theta_s - theta_r) mod 2 pi over ordered pairs
// r != s, binned on [0, 2 pi).
Histogram eigenphase_spacing_density(const SpectralData& sd, std::size_t bins);
Histogram eigenphase_spacing_density(const std::vector<double>& phases, std::size_t bins);

// Binned eigenphase density sigma(theta) on [-pi, pi).
Histogram eigenphase_density(const std::vector<double>& phases, std::size_t bins);

// Spacing density predicted from a binned phase density by the circular
// autocorrelation integral of sigma(theta) sigma(theta + omega), normalized to
// unit mass. Bins line up with eigenphase_spacing_density.
std::vector<double> spacing_density_from_phase_density(const Histogram& sigma);

// sum over r != s of exp(i t (theta_s - theta_r)) = |sum_r exp(i t theta_r)|^2 - M.
std::complex<double> offdiagonal_signal(const SpectralData& sd, long long t);
std::complex<double> offdiagonal_signal(const std::vector<double>& phases, long long t);

struct SignalComparison {
    std::complex<double> exact;
    std::complex<double> approximation;
    double relative_deviation = 0.0;
};

// Compares the exact pair sum against (M^2 - M) * integral of Omega(omega)
// exp(i t omega) evaluated on the binned spacing density.
SignalComparison compare_offdiagonal_signal(const SpectralData& sd, const Histogram& spacing, long long t);

// For each eigenvector r, the weight sum over arcs of vertices of degree k
// of |v_ar|^2. Returns (min, max, mean) across r; the mean is k |S_k| / M.
struct WeightSpread {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};
WeightSpread degree_class_weight_spread(const SpectralData& sd, const Graph& g, int degree);

// CSV "r,theta_r,class_id".
void write_eigenphases_csv(const SpectralData& sd, std::ostream& out);

}  // namespace qwalk
