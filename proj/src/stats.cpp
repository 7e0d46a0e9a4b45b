#include "qwalk/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

std::string fmt(double x) {
    if (std::isnan(x)) return "NA";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

}  // namespace

MomentTable series_moments(const VertexSeries& series) {
    const std::size_t n = series.samples();
    if (n < 2) throw ArgumentError("need at least two post-transient samples");
    const std::size_t cols = series.cols();
    MomentTable mt;
    mt.vertices = series.vertices;
    mt.degrees = series.degrees;
    mt.samples = n;
    mt.mean.assign(cols, 0.0);
    mt.sigma.assign(cols, 0.0);
    for (std::size_t r = series.transient; r < series.rows(); ++r) {
        const auto row = series.row(r);
        for (std::size_t c = 0; c < cols; ++c) mt.mean[c] += row[c];
    }
    for (double& m : mt.mean) m /= static_cast<double>(n);
    for (std::size_t r = series.transient; r < series.rows(); ++r) {
        const auto row = series.row(r);
        for (std::size_t c = 0; c < cols; ++c) {
            const double d = row[c] - mt.mean[c];
            mt.sigma[c] += d * d;
        }
    }
    for (double& s : mt.sigma) s = std::sqrt(s / static_cast<double>(n));
    return mt;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y, bool through_origin,
                 std::span<const double> weights) {
    if (x.size() != y.size() || (!weights.empty() && weights.size() != x.size()))
        throw ShapeError("fit_line: input lengths differ");
    if (x.size() < 2) throw FitError("need at least two points");
    auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w(i);
        sx += w(i) * x[i];
        sy += w(i) * y[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0, syy = 0, s_x2 = 0, s_xy0 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w(i) * (x[i] - mx) * (x[i] - mx);
        sxy += w(i) * (x[i] - mx) * (y[i] - my);
        syy += w(i) * (y[i] - my) * (y[i] - my);
        s_x2 += w(i) * x[i] * x[i];
        s_xy0 += w(i) * x[i] * y[i];
    }
    if (!(sxx > 0.0)) throw FitError("abscissa has no spread");

    LineFit fit;
    fit.points = x.size();
    if (through_origin) {
        fit.slope = s_xy0 / s_x2;
        fit.intercept = 0.0;
    } else {
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += w(i) * r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.relative_residual = std::sqrt(ss_res / sw) / std::abs(my);
    return fit;
}

LineFit flux_fluctuation_fit(const MomentTable& moments, bool through_origin) {
    std::set<int> distinct(moments.degrees.begin(), moments.degrees.end());
    if (distinct.size() < 3) throw FitError("flux-fluctuation fit needs at least three distinct degrees");
    std::vector<double> x(moments.mean.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sqrt(std::max(0.0, moments.mean[i]));
    return fit_line(x, moments.sigma, through_origin);
}

EEReport ee_detect_with_thresholds(const VertexSeries& series, std::span<const double> thresholds, double m) {
    if (thresholds.size() != series.cols()) throw ShapeError("one threshold per recorded vertex required");
    const std::size_t n = series.samples();
    if (n == 0) throw ArgumentError("series has no post-transient samples");
    EEReport rep;
    rep.m = m;
    rep.vertices = series.vertices;
    rep.degrees = series.degrees;
    rep.threshold.assign(thresholds.begin(), thresholds.end());
    rep.count.assign(series.cols(), 0);
    rep.samples = n;
    for (std::size_t r = series.transient; r < series.rows(); ++r) {
        const auto row = series.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] > rep.threshold[c]) ++rep.count[c];
    }
    rep.probability.resize(series.cols());
    for (std::size_t c = 0; c < series.cols(); ++c)
        rep.probability[c] = static_cast<double>(rep.count[c]) / static_cast<double>(n);
    return rep;
}

EEReport ee_detect(const VertexSeries& series, const MomentTable& moments, double m) {
    if (!(m >= 0.0)) throw ArgumentError("extreme-event multiplier m must be non-negative");
    if (moments.mean.size() != series.cols()) throw ShapeError("moments do not match series");
    std::vector<double> q(series.cols());
    for (std::size_t c = 0; c < q.size(); ++c) q[c] = moments.mean[c] + m * moments.sigma[c];
    return ee_detect_with_thresholds(series, q, m);
}

EEReport ee_detect(const VertexSeries& series, double m) {
    if (!(m >= 0.0)) throw ArgumentError("extreme-event multiplier m must be non-negative");
    return ee_detect(series, series_moments(series), m);
}

std::vector<double> exceedance_fraction_series(const VertexSeries& series, const EEReport& report) {
    if (report.threshold.size() != series.cols()) throw ShapeError("report does not match series");
    std::vector<double> out;
    out.reserve(series.samples());
    for (std::size_t r = series.transient; r < series.rows(); ++r) {
        const auto row = series.row(r);
        std::size_t hits = 0;
        for (std::size_t c = 0; c < row.size(); ++c) hits += row[c] > report.threshold[c] ? 1 : 0;
        out.push_back(static_cast<double>(hits) / static_cast<double>(row.size()));
    }
    return out;
}

double DegreeProfile::at(int k) const {
    const auto it = std::find(degrees.begin(), degrees.end(), k);
    return it == degrees.end() ? -1.0 : mean[static_cast<std::size_t>(it - degrees.begin())];
}

DegreeProfile degree_profile(const EEReport& report, const ProfileOptions& options) {
    std::map<int, std::vector<double>> groups;
    for (std::size_t i = 0; i < report.probability.size(); ++i) groups[report.degrees[i]].push_back(report.probability[i]);

    DegreeProfile prof;
    prof.m = report.m;
    std::vector<double> lx, ly, lw;
    for (const auto& [k, values] : groups) {
        const double n = static_cast<double>(values.size());
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        const double sem = values.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
        prof.degrees.push_back(k);
        prof.mean.push_back(mean);
        prof.sem.push_back(sem);
        prof.vertex_count.push_back(values.size());
        if (values.size() >= options.min_vertices && mean > 0.0 && k > 0) {
            prof.fit_degrees.push_back(k);
            lx.push_back(std::log(static_cast<double>(k)));
            ly.push_back(std::log(mean));
            lw.push_back(n);
        }
    }
    if (prof.fit_degrees.size() < 4)
        throw FitError("degree profile needs at least four degrees with " + std::to_string(options.min_vertices) +
                       " vertices and non-zero F");
    const auto fit = fit_line(lx, ly, false, options.weighted ? std::span<const double>(lw) : std::span<const double>{});
    prof.gamma = fit.slope;
    prof.log_amplitude = fit.intercept;
    prof.r_squared = fit.r_squared;
    return prof;
}

CollapseResult scaling_collapse(std::span<const DegreeProfile> profiles) {
    if (profiles.size() < 2) throw ArgumentError("scaling collapse needs at least two profiles");
    std::set<int> common;
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        if (profiles[p].fit_degrees.empty()) throw ArgumentError("profile without a power-law fit");
        std::set<int> ks(profiles[p].fit_degrees.begin(), profiles[p].fit_degrees.end());
        if (p == 0) {
            common = ks;
        } else {
            std::set<int> both;
            std::set_intersection(common.begin(), common.end(), ks.begin(), ks.end(), std::inserter(both, both.end()));
            common = both;
        }
    }
    if (common.empty()) throw ArgumentError("profiles share no fitted degree");

    CollapseResult out;
    out.degrees.assign(common.begin(), common.end());
    out.rescaled.resize(profiles.size());
    for (std::size_t p = 0; p < profiles.size(); ++p)
        for (int k : out.degrees)
            out.rescaled[p].push_back(profiles[p].at(k) * std::pow(static_cast<double>(k), -profiles[p].gamma) /
                                      std::exp(profiles[p].log_amplitude));
    for (std::size_t d = 0; d < out.degrees.size(); ++d) {
        double lo = 1e300, hi = -1e300, sum = 0.0;
        for (std::size_t p = 0; p < profiles.size(); ++p) {
            lo = std::min(lo, out.rescaled[p][d]);
            hi = std::max(hi, out.rescaled[p][d]);
            sum += out.rescaled[p][d];
        }
        out.spread = std::max(out.spread, (hi - lo) / (sum / static_cast<double>(profiles.size())));
    }
    out.collapsed = out.spread < kCollapseSpreadLimit;
    return out;
}

CorrelationProfile cross_correlation(const VertexSeries& series, VertexId i, VertexId j, std::size_t tau_max,
                                     bool normalized) {
    const auto a = series.column(series.column_of(i));
    const auto b = series.column(series.column_of(j));
    const std::size_t n = a.size();
    if (2 * tau_max >= n) throw ArgumentError("tau_max must be below half the post-transient length");

    double ma = 0, mb = 0, sa = 1, sb = 1;
    if (normalized) {
        ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
        mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
        double va = 0, vb = 0;
        for (std::size_t t = 0; t < n; ++t) {
            va += (a[t] - ma) * (a[t] - ma);
            vb += (b[t] - mb) * (b[t] - mb);
        }
        sa = std::sqrt(va / static_cast<double>(n));
        sb = std::sqrt(vb / static_cast<double>(n));
        if (!(sa > 0.0) || !(sb > 0.0)) throw DegenerateSeries("zero-variance series in normalized correlation");
    }
    CorrelationProfile prof{i, j, normalized, n, std::vector<double>(tau_max + 1, 0.0)};
    for (std::size_t tau = 0; tau <= tau_max; ++tau) {
        double acc = 0.0;
        for (std::size_t t = 0; t + tau < n; ++t) acc += (a[t] - ma) * (b[t + tau] - mb);
        prof.values[tau] = acc / static_cast<double>(n - tau) / (sa * sb);
    }
    return prof;
}

DecayFit fit_exponential_decay(const CorrelationProfile& profile, double floor_fraction, std::size_t stride) {
    if (stride == 0) throw ArgumentError("lag stride must be positive");
    if (profile.values.empty() || !(profile.values[0] > 0.0)) throw FitError("correlation at lag 0 is not positive");
    const double floor = floor_fraction * profile.values[0];
    std::vector<double> x, y;
    for (std::size_t tau = 0; tau < profile.values.size(); tau += stride) {
        if (!(profile.values[tau] > floor) || profile.values[tau] <= 0.0) break;
        x.push_back(static_cast<double>(tau));
        y.push_back(std::log(profile.values[tau]));
    }
    if (x.size() < 3) throw FitError("initial decay window has fewer than three lags");
    const auto fit = fit_line(x, y, false);
    return {-fit.slope, std::exp(fit.intercept), fit.r_squared, 0, static_cast<std::size_t>(x.back())};
}

RecurrenceReport recurrence_statistics(const EEReport& report, const VertexSeries& series,
                                       std::size_t min_exceedances) {
    if (report.threshold.size() != series.cols()) throw ShapeError("report does not match series");
    RecurrenceReport out;
    out.min_exceedances = min_exceedances;
    out.vertices.resize(series.cols());
    std::vector<long long> last(series.cols(), -1);
    std::vector<std::size_t> hits(series.cols(), 0);
    for (std::size_t c = 0; c < series.cols(); ++c) {
        out.vertices[c].vertex = series.vertices[c];
        out.vertices[c].degree = series.degrees.empty() ? 0 : series.degrees[c];
    }
    for (std::size_t r = series.transient; r < series.rows(); ++r) {
        const auto row = series.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!(row[c] > report.threshold[c])) continue;
            if (last[c] >= 0) out.vertices[c].intervals.push_back(static_cast<std::size_t>(static_cast<long long>(r) - last[c]));
            last[c] = static_cast<long long>(r);
            ++hits[c];
        }
    }
    for (std::size_t c = 0; c < series.cols(); ++c) {
        auto& v = out.vertices[c];
        v.sufficient = hits[c] >= min_exceedances;
        if (v.intervals.empty()) {
            v.mean_interval = std::nan("");
            v.rate = std::nan("");
            continue;
        }
        v.mean_interval = static_cast<double>(std::accumulate(v.intervals.begin(), v.intervals.end(), std::size_t{0})) /
                          static_cast<double>(v.intervals.size());
        v.rate = 1.0 / v.mean_interval;
    }
    return out;
}

double chi_squared_sf(double statistic, int dof) {
    if (dof < 1) throw ArgumentError("chi-squared needs at least one degree of freedom");
    const boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

GoodnessOfFit exponential_interval_test(std::span<const std::size_t> intervals, double min_expected) {
    if (intervals.size() < 10) throw ArgumentError("too few intervals for a goodness-of-fit test");
    const double n = static_cast<double>(intervals.size());
    const double mean = static_cast<double>(std::accumulate(intervals.begin(), intervals.end(), std::size_t{0})) / n;
    const double p = 1.0 / mean;
    const auto hist = interval_histogram(intervals);

    // Bins [start, end) over interval lengths; the last bin is the open tail.
    std::vector<double> observed, expected;
    double obs = 0.0, exp = 0.0;
    double tail = n;  // expected count of intervals >= j
    std::size_t j = 1;
    for (; j < hist.size(); ++j) {
        const double e = n * p * std::pow(1.0 - p, static_cast<double>(j - 1));
        obs += static_cast<double>(hist[j]);
        exp += e;
        tail -= e;
        if (exp >= min_expected && tail >= min_expected) {
            observed.push_back(obs);
            expected.push_back(exp);
            obs = exp = 0.0;
        }
    }
    // Everything from j on, plus any partially filled bin, goes into the tail.
    double tail_obs = obs, tail_exp = exp + tail;
    for (std::size_t r = j; r < hist.size(); ++r) tail_obs += static_cast<double>(hist[r]);
    observed.push_back(tail_obs);
    expected.push_back(tail_exp);
    if (expected.back() < min_expected && expected.size() > 1) {
        observed[observed.size() - 2] += observed.back();
        expected[expected.size() - 2] += expected.back();
        observed.pop_back();
        expected.pop_back();
    }

    GoodnessOfFit g;
    g.bins = observed.size();
    for (std::size_t b = 0; b < observed.size(); ++b) {
        const double d = observed[b] - expected[b];
        g.chi_squared += d * d / expected[b];
    }
    // One fitted parameter.
    g.dof = static_cast<int>(observed.size()) - 2;
    if (g.dof < 1) throw FitError("too few bins for a goodness-of-fit test");
    g.p_value = chi_squared_sf(g.chi_squared, g.dof);
    return g;
}

GoodnessOfFit binomial_occupation_test(std::span<const double> counts, std::size_t walkers, double p,
                                       double min_expected) {
    if (counts.size() < 10) throw ArgumentError("too few samples for a goodness-of-fit test");
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError("probability must lie in (0, 1)");
    std::vector<double> hist(walkers + 1, 0.0);
    for (double c : counts) {
        if (!(c >= 0.0) || c > static_cast<double>(walkers) || c != std::floor(c))
            throw ArgumentError("counts must be integers in [0, W]");
        hist[static_cast<std::size_t>(c)] += 1.0;
    }
    const double n = static_cast<double>(counts.size());
    const boost::math::binomial_distribution<double> dist(static_cast<double>(walkers), p);
    std::vector<double> observed, expected;
    double obs = 0.0, exp = 0.0;
    for (std::size_t w = 0; w <= walkers; ++w) {
        obs += hist[w];
        exp += n * boost::math::pdf(dist, static_cast<double>(w));
        const double rest = n * boost::math::cdf(boost::math::complement(dist, static_cast<double>(w)));
        if (exp >= min_expected && rest >= min_expected) {
            observed.push_back(obs);
            expected.push_back(exp);
            obs = exp = 0.0;
        }
    }
    // The remainder, always under min_expected, joins the last full bin.
    if (expected.empty()) throw FitError("too few bins for a goodness-of-fit test");
    observed.back() += obs;
    expected.back() += exp;

    GoodnessOfFit g;
    g.bins = observed.size();
    for (std::size_t b = 0; b < observed.size(); ++b) {
        const double d = observed[b] - expected[b];
        g.chi_squared += d * d / expected[b];
    }
    g.dof = static_cast<int>(observed.size()) - 1;
    if (g.dof < 1) throw FitError("too few bins for a goodness-of-fit test");
    g.p_value = chi_squared_sf(g.chi_squared, g.dof);
    return g;
}

std::vector<std::size_t> interval_histogram(std::span<const std::size_t> intervals) {
    std::size_t longest = 0;
    for (std::size_t x : intervals) longest = std::max(longest, x);
    std::vector<std::size_t> hist(longest + 1, 0);
    for (std::size_t x : intervals) ++hist[x];
    return hist;
}

double batch_means_standard_error(std::span<const double> x, std::size_t batches) {
    if (batches < 2) throw ArgumentError("need at least two batches");
    const std::size_t size = x.size() / batches;
    if (size == 0) throw ArgumentError("series shorter than the batch count");
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        for (std::size_t i = 0; i < size; ++i) means[b] += x[b * size + i];
        means[b] /= static_cast<double>(size);
    }
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(batches);
    double var = 0.0;
    for (double m : means) var += (m - grand) * (m - grand);
    var /= static_cast<double>(batches - 1);
    return std::sqrt(var / static_cast<double>(batches));
}

void write_moments_csv(const MomentTable& moments, std::ostream& out) {
    out << "v,k,mean,sigma\n";
    for (std::size_t i = 0; i < moments.vertices.size(); ++i)
        out << moments.vertices[i] << ',' << moments.degrees[i] << ',' << fmt(moments.mean[i]) << ','
            << fmt(moments.sigma[i]) << '\n';
}

void write_ee_csv(const EEReport& report, std::ostream& out) {
    out << "v,k,q,count,F,m\n";
    for (std::size_t i = 0; i < report.vertices.size(); ++i)
        out << report.vertices[i] << ',' << report.degrees[i] << ',' << fmt(report.threshold[i]) << ','
            << report.count[i] << ',' << fmt(report.probability[i]) << ',' << fmt(report.m) << '\n';
}

void write_profiles_csv(std::span<const DegreeProfile> profiles, std::ostream& out) {
    out << "k,F_mean,F_sem,m\n";
    for (const auto& p : profiles)
        for (std::size_t d = 0; d < p.degrees.size(); ++d)
            out << p.degrees[d] << ',' << fmt(p.mean[d]) << ',' << fmt(p.sem[d]) << ',' << fmt(p.m) << '\n';
}

void write_correlation_csv(const CorrelationProfile& profile, std::ostream& out) {
    out << "tau,C\n";
    for (std::size_t tau = 0; tau < profile.values.size(); ++tau) out << tau << ',' << fmt(profile.values[tau]) << '\n';
}

void write_recurrence_csv(const RecurrenceReport& report, std::ostream& out) {
    out << "v,k,mean_rec,rate\n";
    for (const auto& v : report.vertices) {
        const bool ok = v.sufficient && !v.intervals.empty();
        out << v.vertex << ',' << v.degree << ',' << fmt(ok ? v.mean_interval : std::nan("")) << ','
            << fmt(ok ? v.rate : std::nan("")) << '\n';
    }
}

}  // namespace qwalk
