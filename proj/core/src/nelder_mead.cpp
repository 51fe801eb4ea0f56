#include "normlab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normlab/errors.hpp"

namespace normlab {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const SimplexOptions& opts) {
    const std::size_t n = start.size();
    if (n == 0) throw input_error("nelder_mead requires at least one variable");

    // dimension-adaptive coefficients (Gao & Han schedule)
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / nd;
    const double beta = 0.75 - 1.0 / (2.0 * nd);
    const double delta = 1.0 - 1.0 / nd;

    std::vector<std::vector<double>> verts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        double step = opts.init_step;
        if (verts[i + 1][i] == 0.0) step = opts.init_step * 0.5;
        verts[i + 1][i] += step;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xt(n);

    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    SimplexResult res;
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        sort_order();
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        double fspread = std::abs(fv[worst] - fv[best]);
        double xspread = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                xspread = std::max(xspread, std::abs(verts[i][k] - verts[best][k]));
        if (fspread <= opts.ftol && xspread <= opts.xtol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += verts[i][k];
        }
        for (std::size_t k = 0; k < n; ++k) centroid[k] /= nd;

        for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + alpha * (centroid[k] - verts[worst][k]);
        const double fr = f(xr);

        if (fr < fv[best]) {
            for (std::size_t k = 0; k < n; ++k) xt[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
            const double fe = f(xt);
            if (fe < fr) {
                verts[worst] = xt;
                fv[worst] = fe;
            } else {
                verts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            verts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            if (outside) {
                for (std::size_t k = 0; k < n; ++k) xt[k] = centroid[k] + beta * (xr[k] - centroid[k]);
            } else {
                for (std::size_t k = 0; k < n; ++k)
                    xt[k] = centroid[k] - beta * (centroid[k] - verts[worst][k]);
            }
            const double fc = f(xt);
            if (fc < std::min(fr, fv[worst])) {
                verts[worst] = xt;
                fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        verts[i][k] = verts[best][k] + delta * (verts[i][k] - verts[best][k]);
                    fv[i] = f(verts[i]);
                }
            }
        }
    }

    sort_order();
    res.x = verts[order[0]];
    res.value = fv[order[0]];
    res.iterations = iter;
    return res;
}

}  // namespace normlab
