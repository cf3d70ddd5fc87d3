#pragma once

#include <vector>

#include "sonoqed/specfun.hpp"

namespace sonoqed {

// Radial eigenmode of one angular momentum for a sphere of index n_inside
// embedded in n_outside:
//   r < R : A j_l(n_inside w r / c)
//   r > R : A [B j_l(n_outside w r / c) + C y_l(n_outside w r / c)]
// a_nu_sq is |A|^2 in the cylinder-function convention of the finite-volume
// spectrum, n_outside / (n_inside (B^2 + C^2)); it is 1 without an interface.
// docs/normalization.md has the derivation.
struct ModeMatch {
    int l;
    double omega;
    double n_inside;
    double n_outside;
    double amp_regular;   // B
    double amp_irregular; // C
    double a_nu_sq;
};

ModeMatch match_modes(int l, double omega, double n_inside, double n_outside, double radius);

// Dimensionless matching at x = w R / c with every large or small factor kept
// as an explicit power of two:
//   B = b 2^eB, C = c 2^eC, dB/dx = db 2^eB, dC/dx = dc 2^eC.
struct MatchParts {
    int l;
    double x;
    double n_inside, n_outside;
    double b, c, db, dc;
    int eB, eC;
    ScaledPair interior; // j_l(n_inside x)

    double c_scale() const;    // 2^(eC - eB)
    double rho_sq_reduced() const; // (B^2 + C^2) / 2^(2 eB)
};

MatchParts match_parts(int l, double x, double n_inside, double n_outside);

// |A|^2 J_nu and |A|^2 J'_nu at the wall without forming |A|^2 itself:
// returns A J_nu(n_inside x), A J'_nu(n_inside x).
struct InteriorValue {
    double g;
    double dg;
};
InteriorValue normalized_interior(const MatchParts& p);

double a_nu_sq(const MatchParts& p);

// Continuity defects of the value and radial derivative at the wall, relative
// to the size of the terms involved.
struct JunctionResiduals {
    double value;
    double derivative;
};
JunctionResiduals junction_residuals(int l, double x, double n_inside, double n_outside);

// Minimum of B^2 + C^2, i.e. a peak of |A|^2 in x.
struct Resonance {
    double x;
    double width;       // Lorentzian half width in x
    double weight;      // integral of |A|^2 over the peak in x
    InteriorValue point; // sqrt(weight) J_nu, sqrt(weight) J'_nu at the peak
};

std::vector<Resonance> find_resonances(int l, double n_inside, double n_outside, double x_lo, double x_hi);

} // namespace sonoqed
