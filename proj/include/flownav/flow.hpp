#pragma once

#include <functional>
#include <string>

#include "flownav/grid.hpp"
#include "flownav/image.hpp"

namespace flownav::flow {

enum class Algorithm { horn_schunck, lucas_kanade };

/// alpha and eig_threshold follow the conventional 8-bit luminance scale:
/// the solvers convert the [0,1] frame gradients to 0..255 units, so alpha
/// is comparable to classic implementations.
struct FlowParams {
    Algorithm algorithm = Algorithm::horn_schunck;
    double alpha = 15.0;         // Horn-Schunck smoothness weight
    int iterations = 100;        // Horn-Schunck Jacobi sweeps
    int window = 5;              // Lucas-Kanade window side, odd
    double eig_threshold = 1e-4; // Lucas-Kanade minimum-eigenvalue gate
};

/// Dense motion field in pixels/frame. u positive rightward, v positive
/// downward. Finite everywhere by construction.
struct FlowField {
    Grid u, v;
};

struct Gradients {
    Grid ix, iy, it;
};

/// Ix, Iy: central differences of the temporal mean image (replicated
/// border); It = next - prev. Throws ValidationError on shape mismatch.
Gradients gradients(const Frame& prev, const Frame& next);

/// Called with the current field after every Jacobi sweep (test hook).
using SweepObserver = std::function<void(int sweep, const FlowField&)>;

/// Jacobi iteration of the classic coupled update
///   u <- ubar - Ix (Ix ubar + Iy vbar + It) / (alpha^2 + Ix^2 + Iy^2)
/// (and symmetrically for v), starting from zero flow. ubar/vbar are
/// 4-neighbour averages with replicated borders. Deterministic and
/// bit-identical regardless of row-level parallelism.
FlowField horn_schunck(const Frame& prev, const Frame& next, const FlowParams& params,
                       const SweepObserver& observer = {});

/// Windowed least squares: solves the window-summed 2x2 normal equations per
/// pixel; pixels whose structure matrix has min eigenvalue below
/// eig_threshold report zero flow (aperture guard).
FlowField lucas_kanade(const Frame& prev, const Frame& next, const FlowParams& params);

/// Dispatch on params.algorithm.
FlowField compute_flow(const Frame& prev, const Frame& next, const FlowParams& params);

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);  // throws ValidationError

}  // namespace flownav::flow
