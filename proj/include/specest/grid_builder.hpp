#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "specest/empirical_spectrum.hpp"

namespace specest {

// A matched pair (z, v = v_{F_p}(z)), both in the upper half-plane and
// self-consistent to 1e-9 for the spectrum that produced them.
struct GridPair {
    std::complex<double> z;
    std::complex<double> v;
};

enum class GridMode { VFirst, ZFirst };

struct GridConfig {
    GridMode mode = GridMode::VFirst;
    double real_spacing = 0.02;
    double real_min = 0.0;
    double real_max = 1.0;
    std::vector<double> imag_levels = {1e-3, 1e-2};
    double newton_tol = 1e-12;
    int newton_max_iter = 100;

    void validate() const;
};

// The v-targets: one horizontal segment per imaginary level, real parts
// equally spaced on [real_min, real_max]. Defaults give 51 points at
// Im = 1e-3 plus their vertical translate at Im = 1e-2 (102 targets).
std::vector<std::complex<double>> build_v_targets(const GridConfig& cfg);

// Solves v_{F_p}(z) = v_target for z in the upper half-plane by complex
// Newton iteration with the analytic derivative, starting from z0 = -1/v.
// Iterates that exit the upper half-plane are clamped to Im z >= 1e-8.
// Empty result means no convergence within max_iter; callers drop the pair.
std::optional<std::complex<double>> invert_v(const EmpiricalSpectrum& spec,
                                             std::complex<double> v_target,
                                             double tol = 1e-12, int max_iter = 100);

// VFirst: invert each v-target, keep converged pairs (v stored as the
// achieved companion transform). ZFirst: rectangular z-grid from the same
// spacing parameters, keep all. Throws TooFewPairsError below 10 pairs.
std::vector<GridPair> build_grid(const EmpiricalSpectrum& spec, const GridConfig& cfg);

// Diagnostic dump: "re_z,im_z,re_v,im_v".
void write_grid_csv(std::ostream& out, std::span<const GridPair> pairs);

}  // namespace specest
