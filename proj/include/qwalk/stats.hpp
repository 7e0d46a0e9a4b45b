#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qwalk/series.hpp"

namespace qwalk {

// Per-vertex population mean and standard deviation over the post-transient
// rows of a series.
struct MomentTable {
    std::vector<VertexId> vertices;
    std::vector<int> degrees;
    std::vector<double> mean;
    std::vector<double> sigma;
    std::size_t samples = 0;
};

// Throws ArgumentError with fewer than two post-transient samples.
MomentTable series_moments(const VertexSeries& series);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    // RMS residual divided by the mean of y.
    double relative_residual = 0.0;
    std::size_t points = 0;
};

// Least squares y = slope * x (+ intercept). Throws FitError when x has no
// spread.
LineFit fit_line(std::span<const double> x, std::span<const double> y, bool through_origin = false,
                 std::span<const double> weights = {});

// sigma_i against sqrt(mean_i) over all vertices. Needs at least three
// distinct degrees.
LineFit flux_fluctuation_fit(const MomentTable& moments, bool through_origin = true);

// Extreme events: per-vertex threshold q_i = mean_i + m sigma_i; a sample is
// an exceedance when strictly above q_i.
struct EEReport {
    double m = 0.0;
    std::vector<VertexId> vertices;
    std::vector<int> degrees;
    std::vector<double> threshold;
    std::vector<std::size_t> count;
    std::vector<double> probability;
    std::size_t samples = 0;
};

EEReport ee_detect(const VertexSeries& series, double m);
EEReport ee_detect(const VertexSeries& series, const MomentTable& moments, double m);

// Exceedance counts against explicit per-column thresholds (m is recorded as
// given).
EEReport ee_detect_with_thresholds(const VertexSeries& series, std::span<const double> thresholds, double m);

// Per-vertex exceedance indicator averaged over the recorded vertices at each
// post-transient step. Its time mean equals the vertex-averaged F.
std::vector<double> exceedance_fraction_series(const VertexSeries& series, const EEReport& report);

struct ProfileOptions {
    // Degrees with fewer vertices are averaged but not fitted.
    std::size_t min_vertices = 3;
    // Weight each degree by its vertex count in the log-log fit.
    bool weighted = false;
};

// Degree-resolved mean exceedance probability and the power-law fit
// log F(k) = gamma log k + c.
struct DegreeProfile {
    double m = 0.0;
    std::vector<int> degrees;
    std::vector<double> mean;
    std::vector<double> sem;
    std::vector<std::size_t> vertex_count;
    std::vector<int> fit_degrees;
    double gamma = 0.0;
    double log_amplitude = 0.0;
    double r_squared = 0.0;

    // Mean F at degree k, or a negative value if k is absent.
    double at(int k) const;
};

// Throws FitError with fewer than four fittable degrees.
DegreeProfile degree_profile(const EEReport& report, const ProfileOptions& options = {});

inline constexpr double kCollapseSpreadLimit = 0.25;

struct CollapseResult {
    std::vector<int> degrees;
    // rescaled[p][d]: profile p at degrees[d] times k^-gamma_p / exp(c_p).
    std::vector<std::vector<double>> rescaled;
    // Max over degrees of (max - min) / mean across profiles.
    double spread = 0.0;
    bool collapsed = false;
};

// Rescales each profile by its own fitted power law and measures how far the
// curves stay apart on the degrees fitted in every profile.
CollapseResult scaling_collapse(std::span<const DegreeProfile> profiles);

struct CorrelationProfile {
    VertexId i = 0;
    VertexId j = 0;
    bool normalized = true;
    std::size_t samples = 0;
    // values[tau] for tau = 0 .. tau_max.
    std::vector<double> values;
};

// C_ij(tau) = < X_i(t) X_j(t + tau) >_t over post-transient samples. The
// normalized form subtracts the means and divides by sigma_i sigma_j.
CorrelationProfile cross_correlation(const VertexSeries& series, VertexId i, VertexId j, std::size_t tau_max,
                                     bool normalized = true);

struct DecayFit {
    double rate = 0.0;
    double amplitude = 0.0;
    double r_squared = 0.0;
    std::size_t first_lag = 0;
    std::size_t last_lag = 0;
};

// Fits C(tau) = A exp(-rate tau) by least squares on log C over the initial
// decay window: lags from 0 up to (excluding) the first lag where C falls
// below `floor_fraction` * C(0). With stride 2 only even lags are used, which
// follows the envelope of the period-2 oscillation seen on (nearly) bipartite
// graphs.
DecayFit fit_exponential_decay(const CorrelationProfile& profile, double floor_fraction = 0.1,
                               std::size_t stride = 1);

struct VertexRecurrence {
    VertexId vertex = 0;
    int degree = 0;
    std::vector<std::size_t> intervals;
    double mean_interval = 0.0;
    // Maximum-likelihood exponential rate 1 / mean.
    double rate = 0.0;
    // False when the vertex has fewer exceedances than the minimum.
    bool sufficient = false;
};

struct RecurrenceReport {
    std::size_t min_exceedances = 10;
    std::vector<VertexRecurrence> vertices;
};

// Steps between consecutive exceedances at each vertex.
RecurrenceReport recurrence_statistics(const EEReport& report, const VertexSeries& series,
                                       std::size_t min_exceedances = 10);

struct GoodnessOfFit {
    double chi_squared = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::size_t bins = 0;
};

// Chi-squared test of integer intervals against the geometric law
// P(tau = j) = p (1-p)^(j-1) with p = 1 / mean (the discrete exponential).
// Adjacent bins are merged until each expects at least `min_expected`.
GoodnessOfFit exponential_interval_test(std::span<const std::size_t> intervals, double min_expected = 5.0);

// Chi-squared test of integer occupation samples against Binomial(W, p) with
// p known. Bins are merged upward in w until each expects `min_expected`.
GoodnessOfFit binomial_occupation_test(std::span<const double> counts, std::size_t walkers, double p,
                                       double min_expected = 5.0);

// hist[j] counts intervals of length j; index 0 is always 0.
std::vector<std::size_t> interval_histogram(std::span<const std::size_t> intervals);

// Standard error of the mean of a correlated series from `batches`
// non-overlapping batch means.
double batch_means_standard_error(std::span<const double> x, std::size_t batches = 50);

// Chi-squared upper tail probability.
double chi_squared_sf(double statistic, int dof);

// CSV writers.
void write_moments_csv(const MomentTable& moments, std::ostream& out);
void write_ee_csv(const EEReport& report, std::ostream& out);
void write_profiles_csv(std::span<const DegreeProfile> profiles, std::ostream& out);
void write_correlation_csv(const CorrelationProfile& profile, std::ostream& out);
void write_recurrence_csv(const RecurrenceReport& report, std::ostream& out);

}  // namespace qwalk
