#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double theta) {
    // (-pi, pi]
    return theta <= -std::numbers::pi ? theta + kTwoPi : theta;
}

}  // namespace

double circular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

ComplexMatrix SpectralData::projector(std::size_t cls) const {
    const auto m = static_cast<Eigen::Index>(order());
    ComplexMatrix f = ComplexMatrix::Zero(m, m);
    for (std::size_t r : classes.at(cls)) {
        const auto col = eigenvectors.col(static_cast<Eigen::Index>(r));
        f.noalias() += col * col.adjoint();
    }
    return f;
}

SpectralData eigendecompose(const ComplexMatrix& u, double degeneracy_tol) {
    if (u.rows() != u.cols() || u.rows() == 0) throw ValidationError("eigendecompose needs a square matrix");
    if (unitarity_defect(u) > 1e-10) throw ValidationError("matrix is not unitary to 1e-10");
    if (!(degeneracy_tol >= 0.0)) throw ArgumentError("degeneracy tolerance must be non-negative");

    // A normal matrix has a diagonal Schur form, so the Schur vectors are an
    // orthonormal eigenbasis even inside degenerate eigenspaces.
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();

    const auto m = static_cast<std::size_t>(u.rows());
    std::vector<double> raw(m);
    for (std::size_t r = 0; r < m; ++r) raw[r] = wrap_phase(std::arg(t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r))));
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

    SpectralData sd;
    sd.eigenphases.resize(m);
    sd.eigenvectors.resize(u.rows(), u.cols());
    for (std::size_t r = 0; r < m; ++r) {
        sd.eigenphases[r] = raw[order[r]];
        sd.eigenvectors.col(static_cast<Eigen::Index>(r)) = q.col(static_cast<Eigen::Index>(order[r]));
    }

    for (std::size_t r = 0; r < m; ++r) {
        const auto v = sd.eigenvectors.col(static_cast<Eigen::Index>(r));
        const double residual = (u * v - std::polar(1.0, sd.eigenphases[r]) * v).norm();
        if (residual > 1e-8) {
            std::ostringstream msg;
            msg << "eigenpair " << r << " residual " << residual << " exceeds 1e-8";
            throw NumericalError(msg.str());
        }
    }
    if (unitarity_defect(sd.eigenvectors) > 1e-8) throw NumericalError("eigenvectors are not orthonormal");

    sd.class_of.assign(m, 0);
    sd.classes.push_back({0});
    for (std::size_t r = 1; r < m; ++r) {
        if (circular_distance(sd.eigenphases[r], sd.eigenphases[r - 1]) > degeneracy_tol)
            sd.classes.emplace_back();
        sd.classes.back().push_back(r);
        sd.class_of[r] = sd.classes.size() - 1;
    }
    // A cluster straddling +-pi is split by the sort; join its two ends.
    if (sd.classes.size() > 1 &&
        circular_distance(sd.eigenphases.front(), sd.eigenphases.back()) <= degeneracy_tol) {
        auto tail = std::move(sd.classes.back());
        sd.classes.pop_back();
        for (std::size_t r : tail) sd.class_of[r] = 0;
        sd.classes.front().insert(sd.classes.front().end(), tail.begin(), tail.end());
    }
    return sd;
}

std::vector<double> limiting_distribution(const SpectralData& sd, const ArcState& x, const Graph& g) {
    if (x.size() != sd.order() || g.arc_count() != sd.order())
        throw ShapeError("state, graph and spectrum dimensions differ");
    const ComplexVector coeff = sd.eigenvectors.adjoint() * x.amplitudes;
    std::vector<double> arc_weight(sd.order(), 0.0);
    ComplexVector fx(static_cast<Eigen::Index>(sd.order()));
    for (const auto& cls : sd.classes) {
        fx.setZero();
        for (std::size_t r : cls) {
            const auto idx = static_cast<Eigen::Index>(r);
            fx.noalias() += coeff[idx] * sd.eigenvectors.col(idx);
        }
        for (std::size_t a = 0; a < sd.order(); ++a) arc_weight[a] += std::norm(fx[static_cast<Eigen::Index>(a)]);
    }
    std::vector<double> z(g.vertex_count(), 0.0);
    for (std::size_t a = 0; a < sd.order(); ++a) z[static_cast<std::size_t>(g.arc(static_cast<ArcId>(a)).tail)] += arc_weight[a];
    return z;
}

double idempotent_quadratic_form(const SpectralData& sd, const ArcState& x, VertexId v, const Graph& g) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) throw IndexError("vertex out of range");
    return limiting_distribution(sd, x, g)[static_cast<std::size_t>(v)];
}

std::pair<double, double> predicted_mean_sigma(const Graph& g, int degree) {
    if (degree < 1) throw ArgumentError("degree must be positive");
    const double two_e = static_cast<double>(g.arc_count());
    return {degree / two_e, std::sqrt(static_cast<double>(degree)) / two_e};
}

Histogram eigenphase_spacing_density(const std::vector<double>& phases, std::size_t bins) {
    if (bins < 8) throw ArgumentError("need at least 8 bins");
    if (phases.size() < 2) throw ArgumentError("need at least two eigenphases");
    Histogram h{0.0, kTwoPi, std::vector<double>(bins, 0.0), {}};
    const double w = h.width();
    for (std::size_t r = 0; r < phases.size(); ++r)
        for (std::size_t s = 0; s < phases.size(); ++s) {
            if (r == s) continue;
            double omega = std::fmod(phases[s] - phases[r], kTwoPi);
            if (omega < 0.0) omega += kTwoPi;
            const auto b = std::min(bins - 1, static_cast<std::size_t>(omega / w));
            h.counts[b] += 1.0;
        }
    const double pairs = static_cast<double>(phases.size()) * static_cast<double>(phases.size() - 1);
    h.density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) h.density[b] = h.counts[b] / (pairs * w);
    return h;
}

Histogram eigenphase_spacing_density(const SpectralData& sd, std::size_t bins) {
    return eigenphase_spacing_density(sd.eigenphases, bins);
}

Histogram eigenphase_density(const std::vector<double>& phases, std::size_t bins) {
    if (bins < 1) throw ArgumentError("need at least one bin");
    if (phases.empty()) throw ArgumentError("no eigenphases");
    Histogram h{-std::numbers::pi, std::numbers::pi, std::vector<double>(bins, 0.0), {}};
    const double w = h.width();
    for (double theta : phases) {
        double x = std::fmod(theta + std::numbers::pi, kTwoPi);
        if (x < 0.0) x += kTwoPi;
        h.counts[std::min(bins - 1, static_cast<std::size_t>(x / w))] += 1.0;
    }
    h.density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) h.density[b] = h.counts[b] / (static_cast<double>(phases.size()) * w);
    return h;
}

std::vector<double> spacing_density_from_phase_density(const Histogram& sigma) {
    const std::size_t bins = sigma.density.size();
    const double w = sigma.width();
    // Circular autocorrelation at lag j * w.
    std::vector<double> lag(bins, 0.0);
    for (std::size_t j = 0; j < bins; ++j)
        for (std::size_t i = 0; i < bins; ++i) lag[j] += sigma.density[i] * sigma.density[(i + j) % bins] * w;
    // Differences of points drawn from bins i and i + j spread triangularly
    // over [(j-1)w, (j+1)w), so spacing bin b takes half of lags b and b+1.
    std::vector<double> omega(bins);
    double mass = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        omega[b] = 0.5 * (lag[b] + lag[(b + 1) % bins]);
        mass += omega[b] * w;
    }
    for (double& x : omega) x /= mass;
    return omega;
}

std::complex<double> offdiagonal_signal(const std::vector<double>& phases, long long t) {
    std::complex<double> sum = 0.0;
    for (double theta : phases) sum += std::polar(1.0, static_cast<double>(t) * theta);
    return {std::norm(sum) - static_cast<double>(phases.size()), 0.0};
}

std::complex<double> offdiagonal_signal(const SpectralData& sd, long long t) {
    return offdiagonal_signal(sd.eigenphases, t);
}

SignalComparison compare_offdiagonal_signal(const SpectralData& sd, const Histogram& spacing, long long t) {
    SignalComparison out;
    out.exact = offdiagonal_signal(sd, t);
    const double m = static_cast<double>(sd.order());
    std::complex<double> integral = 0.0;
    for (std::size_t b = 0; b < spacing.density.size(); ++b)
        integral += spacing.density[b] * spacing.width() * std::polar(1.0, static_cast<double>(t) * spacing.center(b));
    out.approximation = (m * m - m) * integral;
    const double scale = std::max(std::abs(out.exact), 1.0);
    out.relative_deviation = std::abs(out.exact - out.approximation) / scale;
    return out;
}

WeightSpread degree_class_weight_spread(const SpectralData& sd, const Graph& g, int degree) {
    if (g.arc_count() != sd.order()) throw ShapeError("graph and spectrum dimensions differ");
    std::vector<Eigen::Index> rows;
    for (std::size_t a = 0; a < g.arc_count(); ++a)
        if (g.degree(g.arc(static_cast<ArcId>(a)).tail) == degree) rows.push_back(static_cast<Eigen::Index>(a));
    if (rows.empty()) throw ArgumentError("no vertex has degree " + std::to_string(degree));
    WeightSpread out{1e300, -1e300, 0.0};
    for (std::size_t r = 0; r < sd.order(); ++r) {
        double w = 0.0;
        for (Eigen::Index a : rows) w += std::norm(sd.eigenvectors(a, static_cast<Eigen::Index>(r)));
        out.min = std::min(out.min, w);
        out.max = std::max(out.max, w);
        out.mean += w;
    }
    out.mean /= static_cast<double>(sd.order());
    return out;
}

void write_eigenphases_csv(const SpectralData& sd, std::ostream& out) {
    out << "r,theta_r,class_id\n";
    out.precision(17);
    for (std::size_t r = 0; r < sd.order(); ++r) out << r << ',' << sd.eigenphases[r] << ',' << sd.class_of[r] << '\n';
}

}  // namespace qwalk
