#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"

namespace qwalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct CoinSpec {
    enum class Kind { Fourier, Grover };

    Kind kind = Kind::Fourier;
    // Only meaningful for Fourier. 2*pi turns each block into the DFT matrix.
    double theta = 2.0 * std::numbers::pi;

    static CoinSpec fourier(double theta = 2.0 * std::numbers::pi) { return {Kind::Fourier, theta}; }
    static CoinSpec grover() { return {Kind::Grover, 2.0 * std::numbers::pi}; }

    // "fourier", "fourier:<theta>" or "grover".
    static CoinSpec parse(std::string_view text);
    std::string name() const;

    bool operator==(const CoinSpec&) const = default;
};

// (1/sqrt(k)) exp(i a b theta / k), a, b in [0, k).
ComplexMatrix fourier_coin(int k, double theta = 2.0 * std::numbers::pi);

// (2 - k)/k on the diagonal, 2/k elsewhere.
ComplexMatrix grover_coin(int k);

ComplexMatrix coin_block(const CoinSpec& spec, int k);

// max |(B^dagger B - I)_ij|
double unitarity_defect(const ComplexMatrix& m);

inline constexpr double kBlockUnitarityTol = 1e-12;
inline constexpr std::size_t kDenseGuard = 8192;

// One-step walk unitary U = S C on arc space: a block-diagonal coin (one
// block of order k_v per vertex, rows following the vertex's arc order)
// followed by the arc-reversal shift. Blocks depend only on degree, so one
// matrix is kept per distinct degree.
class WalkOperator {
public:
    WalkOperator(std::shared_ptr<const Graph> graph, CoinSpec coin);

    const Graph& graph() const { return *graph_; }
    std::shared_ptr<const Graph> graph_ptr() const { return graph_; }
    const CoinSpec& coin() const { return coin_; }
    std::size_t dimension() const { return graph_->arc_count(); }

    const ComplexMatrix& block(VertexId v) const;
    std::span<const ArcId> shift() const { return graph_->reversals(); }

private:
    std::shared_ptr<const Graph> graph_;
    CoinSpec coin_;
    std::vector<ComplexMatrix> by_degree_;
};

// Throws NonUnitary when a block misses kBlockUnitarityTol.
WalkOperator assemble_walk_operator(std::shared_ptr<const Graph> graph, const CoinSpec& spec);

// Permutation matrix of the shift in global arc order: column a has its one
// at row reversal(a).
ComplexMatrix dense_shift(const Graph& g);
ComplexMatrix dense_coin(const WalkOperator& op);

// S * C as a dense 2E x 2E matrix. Throws SizeGuard when 2E > max_order.
ComplexMatrix dense_unitary(const WalkOperator& op, std::size_t max_order = kDenseGuard);

}  // namespace qwalk
