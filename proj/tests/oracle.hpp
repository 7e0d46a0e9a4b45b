#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"

// Reference constructions written straight from the definitions, sharing no
// code with the library.
namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat fourier(int k) {
    Mat m(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            m(a, b) = std::polar(1.0 / std::sqrt(double(k)), 2.0 * std::numbers::pi * a * b / k);
    return m;
}

inline Mat grover(int k) {
    Mat m = Mat::Constant(k, k, 2.0 / k);
    for (int a = 0; a < k; ++a) m(a, a) -= 1.0;
    return m;
}

// Arc index lookup by (tail, head) with a linear scan.
inline long find_arc(const qwalk::Graph& g, int tail, int head) {
    for (std::size_t a = 0; a < g.arc_count(); ++a)
        if (g.arc(long(a)).tail == tail && g.arc(long(a)).head == head) return long(a);
    return -1;
}

inline Mat walk(const qwalk::Graph& g, bool grover_coin) {
    const long d = long(g.arc_count());
    Mat coin = Mat::Zero(d, d);
    for (int v = 0; v < int(g.vertex_count()); ++v) {
        std::vector<long> out;
        for (long a = 0; a < d; ++a)
            if (g.arc(a).tail == v) out.push_back(a);
        const int k = int(out.size());
        const Mat b = grover_coin ? grover(k) : fourier(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) coin(out[i], out[j]) = b(i, j);
    }
    Mat shift = Mat::Zero(d, d);
    for (long a = 0; a < d; ++a) shift(find_arc(g, g.arc(a).head, g.arc(a).tail), a) = 1.0;
    return shift * coin;
}

inline Vec localized(const qwalk::Graph& g, int v) {
    Vec x = Vec::Zero(long(g.arc_count()));
    const double amp = 1.0 / std::sqrt(double(g.degree(v)));
    for (long a = 0; a < long(g.arc_count()); ++a)
        if (g.arc(a).tail == v) x(a) = amp;
    return x;
}

inline std::vector<double> vertex_probs(const qwalk::Graph& g, const Vec& psi) {
    std::vector<double> z(g.vertex_count(), 0.0);
    for (long a = 0; a < psi.size(); ++a) z[std::size_t(g.arc(a).tail)] += std::norm(psi(a));
    return z;
}

}  // namespace oracle
