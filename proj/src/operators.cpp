#include "qwalk/operators.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

CoinSpec CoinSpec::parse(std::string_view text) {
    if (text == "grover") return grover();
    if (text == "fourier") return fourier();
    if (text.starts_with("fourier:")) {
        const std::string value(text.substr(8));
        try {
            std::size_t used = 0;
            const double theta = std::stod(value, &used);
            if (used == value.size() && std::isfinite(theta)) return fourier(theta);
        } catch (const std::exception&) {
        }
        throw ArgumentError("bad Fourier angle '" + value + "'");
    }
    throw ArgumentError("unknown coin '" + std::string(text) + "' (expected fourier, fourier:<theta> or grover)");
}

std::string CoinSpec::name() const {
    if (kind == Kind::Grover) return "grover";
    if (theta == 2.0 * std::numbers::pi) return "fourier";
    std::ostringstream out;
    out.precision(17);
    out << "fourier:" << theta;
    return out.str();
}

ComplexMatrix fourier_coin(int k, double theta) {
    if (k < 1) throw ArgumentError("coin order must be positive");
    if (!std::isfinite(theta)) throw ArgumentError("Fourier angle must be finite");
    ComplexMatrix m(k, k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            // Reduce a*b mod k first so large orders keep full phase accuracy
            // in the 2*pi case.
            const double exponent = theta == 2.0 * std::numbers::pi
                                        ? 2.0 * std::numbers::pi * static_cast<double>((a * b) % k) / k
                                        : theta * static_cast<double>(a * b) / k;
            m(a, b) = std::polar(scale, exponent);
        }
    return m;
}

ComplexMatrix grover_coin(int k) {
    if (k < 1) throw ArgumentError("coin order must be positive");
    ComplexMatrix m = ComplexMatrix::Constant(k, k, Complex(2.0 / k, 0.0));
    for (int a = 0; a < k; ++a) m(a, a) = Complex((2.0 - k) / k, 0.0);
    return m;
}

ComplexMatrix coin_block(const CoinSpec& spec, int k) {
    return spec.kind == CoinSpec::Kind::Grover ? grover_coin(k) : fourier_coin(k, spec.theta);
}

double unitarity_defect(const ComplexMatrix& m) {
    const ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff();
}

WalkOperator::WalkOperator(std::shared_ptr<const Graph> graph, CoinSpec coin)
    : graph_(std::move(graph)), coin_(coin) {
    if (!graph_) throw ArgumentError("walk operator needs a graph");
    int k_max = 0;
    for (int k : graph_->degrees()) k_max = std::max(k_max, k);
    by_degree_.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k : graph_->degrees()) {
        auto& block = by_degree_[static_cast<std::size_t>(k)];
        if (block.size() != 0) continue;
        block = coin_block(coin_, k);
        const double defect = unitarity_defect(block);
        if (!(defect <= kBlockUnitarityTol)) {
            std::ostringstream msg;
            msg << coin_.name() << " block of order " << k << " is not unitary (defect " << defect << ")";
            throw NonUnitary(msg.str());
        }
    }
}

const ComplexMatrix& WalkOperator::block(VertexId v) const {
    return by_degree_[static_cast<std::size_t>(graph_->degree(v))];
}

WalkOperator assemble_walk_operator(std::shared_ptr<const Graph> graph, const CoinSpec& spec) {
    return WalkOperator(std::move(graph), spec);
}

ComplexMatrix dense_shift(const Graph& g) {
    const auto m = static_cast<Eigen::Index>(g.arc_count());
    ComplexMatrix s = ComplexMatrix::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) s(g.reversal(a), a) = 1.0;
    return s;
}

ComplexMatrix dense_coin(const WalkOperator& op) {
    const Graph& g = op.graph();
    const auto m = static_cast<Eigen::Index>(g.arc_count());
    ComplexMatrix c = ComplexMatrix::Zero(m, m);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        const auto k = g.degree(vid);
        c.block(g.arc_offset(vid), g.arc_offset(vid), k, k) = op.block(vid);
    }
    return c;
}

ComplexMatrix dense_unitary(const WalkOperator& op, std::size_t max_order) {
    if (op.dimension() > max_order)
        throw SizeGuard("dense unitary of order " + std::to_string(op.dimension()) + " exceeds guard " +
                        std::to_string(max_order));
    // S is a permutation: row reversal(a) of S*C is row a of C.
    const ComplexMatrix coin = dense_coin(op);
    ComplexMatrix u(coin.rows(), coin.cols());
    for (Eigen::Index a = 0; a < coin.rows(); ++a) u.row(op.graph().reversal(a)) = coin.row(a);
    return u;
}

}  // namespace qwalk
