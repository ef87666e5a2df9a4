#include "flownav/flow.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "flownav/errors.hpp"

namespace flownav::flow {

Gradients gradients(const Frame& prev, const Frame& next) {
    if (!prev.g.same_shape(next.g))
        throw ValidationError("gradients: frame dimensions differ");
    const int w = prev.g.width;
    const int h = prev.g.height;
    Gradients g{Grid(w, h), Grid(w, h), Grid(w, h)};

    // Temporal mean image; spatial derivatives by central differences with
    // replicated borders, so the stencil stays symmetric everywhere.
    Grid mean(w, h);
    for (std::size_t i = 0; i < mean.size(); ++i)
        mean.data[i] = 0.5 * (prev.g.data[i] + next.g.data[i]);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            g.ix.at(x, y) = 0.5 * (mean.at_clamped(x + 1, y) - mean.at_clamped(x - 1, y));
            g.iy.at(x, y) = 0.5 * (mean.at_clamped(x, y + 1) - mean.at_clamped(x, y - 1));
            g.it.at(x, y) = next.g.at(x, y) - prev.g.at(x, y);
        }
    }
    return g;
}

namespace {

/// Both solvers take their gradients in 8-bit luminance units: alpha and the
/// eigenvalue threshold follow the conventional 0..255 intensity scale, while
/// frames stay in [0,1].
Gradients gradients_8bit(const Frame& prev, const Frame& next) {
    Gradients g = gradients(prev, next);
    for (double& v : g.ix.data) v *= 255.0;
    for (double& v : g.iy.data) v *= 255.0;
    for (double& v : g.it.data) v *= 255.0;
    return g;
}

}  // namespace

FlowField horn_schunck(const Frame& prev, const Frame& next, const FlowParams& params,
                       const SweepObserver& observer) {
    if (params.alpha <= 0.0) throw ValidationError("horn_schunck: alpha must be > 0");
    if (params.iterations < 1) throw ValidationError("horn_schunck: iterations must be >= 1");

    Gradients g = gradients_8bit(prev, next);
    const int w = g.ix.width;
    const int h = g.ix.height;
    const double alpha2 = params.alpha * params.alpha;

    // Per-pixel constants of the coupled update.
    Grid rx(w, h), ry(w, h);
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double inv_den = 1.0 / (alpha2 + g.ix.data[i] * g.ix.data[i] +
                                g.iy.data[i] * g.iy.data[i]);
        rx.data[i] = g.ix.data[i] * inv_den;
        ry.data[i] = g.iy.data[i] * inv_den;
    }

    FlowField cur{Grid(w, h), Grid(w, h)};
    FlowField nxt{Grid(w, h), Grid(w, h)};

    for (int sweep = 0; sweep < params.iterations; ++sweep) {
        // Jacobi: every output row reads only the previous iterate, so row
        // parallelism is bit-identical to the sequential sweep.
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double ubar = 0.25 * ((cur.u.at_clamped(x - 1, y) + cur.u.at_clamped(x + 1, y)) +
                                      (cur.u.at_clamped(x, y - 1) + cur.u.at_clamped(x, y + 1)));
                double vbar = 0.25 * ((cur.v.at_clamped(x - 1, y) + cur.v.at_clamped(x + 1, y)) +
                                      (cur.v.at_clamped(x, y - 1) + cur.v.at_clamped(x, y + 1)));
                double drive = g.ix.at(x, y) * ubar + g.iy.at(x, y) * vbar + g.it.at(x, y);
                nxt.u.at(x, y) = ubar - rx.at(x, y) * drive;
                nxt.v.at(x, y) = vbar - ry.at(x, y) * drive;
            }
        }
        std::swap(cur, nxt);
        if (observer) observer(sweep, cur);
    }
    return cur;
}

FlowField lucas_kanade(const Frame& prev, const Frame& next, const FlowParams& params) {
    if (params.window < 3 || params.window % 2 == 0)
        throw ValidationError("lucas_kanade: window must be odd and >= 3");
    if (params.eig_threshold < 0.0)
        throw ValidationError("lucas_kanade: eig_threshold must be >= 0");

    Gradients g = gradients_8bit(prev, next);
    const int w = g.ix.width;
    const int h = g.ix.height;
    const int r = params.window / 2;
    FlowField out{Grid(w, h), Grid(w, h)};

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // Window sums, accumulated as centre + (left,right) pairs per row
            // so a horizontal mirror of the inputs reorders no additions.
            double sxx = 0.0, sxy = 0.0, syy = 0.0, sxt = 0.0, syt = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                double rxx, rxy, ryy, rxt, ryt;
                {
                    double ix = g.ix.at_clamped(x, y + dy);
                    double iy = g.iy.at_clamped(x, y + dy);
                    double it = g.it.at_clamped(x, y + dy);
                    rxx = ix * ix;
                    rxy = ix * iy;
                    ryy = iy * iy;
                    rxt = ix * it;
                    ryt = iy * it;
                }
                for (int dx = 1; dx <= r; ++dx) {
                    double ixl = g.ix.at_clamped(x - dx, y + dy);
                    double iyl = g.iy.at_clamped(x - dx, y + dy);
                    double itl = g.it.at_clamped(x - dx, y + dy);
                    double ixr = g.ix.at_clamped(x + dx, y + dy);
                    double iyr = g.iy.at_clamped(x + dx, y + dy);
                    double itr = g.it.at_clamped(x + dx, y + dy);
                    rxx += ixl * ixl + ixr * ixr;
                    rxy += ixl * iyl + ixr * iyr;
                    ryy += iyl * iyl + iyr * iyr;
                    rxt += ixl * itl + ixr * itr;
                    ryt += iyl * itl + iyr * itr;
                }
                sxx += rxx;
                sxy += rxy;
                syy += ryy;
                sxt += rxt;
                syt += ryt;
            }

            // Minimum eigenvalue of [sxx sxy; sxy syy].
            double half_trace = 0.5 * (sxx + syy);
            double half_diff = 0.5 * (sxx - syy);
            double lambda_min =
                half_trace - std::sqrt(half_diff * half_diff + sxy * sxy);
            if (lambda_min < params.eig_threshold) continue;  // aperture: leave (0,0)

            double det = sxx * syy - sxy * sxy;
            out.u.at(x, y) = (-syy * sxt + sxy * syt) / det;
            out.v.at(x, y) = (sxy * sxt - sxx * syt) / det;
        }
    }
    return out;
}

FlowField compute_flow(const Frame& prev, const Frame& next, const FlowParams& params) {
    return params.algorithm == Algorithm::horn_schunck ? horn_schunck(prev, next, params)
                                                       : lucas_kanade(prev, next, params);
}

const char* algorithm_name(Algorithm a) {
    return a == Algorithm::horn_schunck ? "horn_schunck" : "lucas_kanade";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "horn_schunck" || name == "hs") return Algorithm::horn_schunck;
    if (name == "lucas_kanade" || name == "lk") return Algorithm::lucas_kanade;
    throw ValidationError("unknown flow algorithm '" + name + "'");
}

}  // namespace flownav::flow
