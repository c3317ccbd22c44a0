#include "tflats/surface.hpp"

#include <algorithm>
#include <cmath>

#include "tflats/estimate.hpp"
#include "tflats/parallel.hpp"

namespace tflats {

namespace {
constexpr std::size_t kChunk = 512;
}

std::vector<double> integrate_surface(const ConvexBody& body, const QuadratureGrid& grid, int count,
                                      const std::function<void(const SurfaceNode&, double*)>& fn,
                                      unsigned workers) {
    const std::size_t nodes = grid.size();
    const std::size_t chunks = (nodes + kChunk - 1) / kChunk;
    auto partial = parallel_map<std::vector<double>>(chunks, workers, [&](std::size_t c) {
        std::vector<double> acc(count, 0.0), out(count);
        SurfaceNode node;
        Vec s;
        Mat ds;
        const std::size_t end = std::min(nodes, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            grid.point(i, s, ds);
            body.chart(s, ds, node.x, node.dx);
            node.index = i;
            const Mat gram = node.dx.transpose() * node.dx;
            node.quad_weight = grid.weight(i);
            node.weight = grid.weight(i) * std::sqrt(std::max(0.0, gram.determinant()));
            std::fill(out.begin(), out.end(), 0.0);
            fn(node, out.data());
            for (int q = 0; q < count; ++q) acc[q] += out[q];
        }
        return acc;
    });
    std::vector<double> result(count), column(chunks);
    for (int q = 0; q < count; ++q) {
        for (std::size_t c = 0; c < chunks; ++c) column[c] = partial[c][q];
        result[q] = pairwise_sum(column);
    }
    return result;
}

QuadratureGrid comparison_grid(const QuadratureGrid& grid) {
    return QuadratureGrid::make(grid.sphere_dim(), grid.level() > 0 ? grid.level() - 1 : 1);
}

}  // namespace tflats
