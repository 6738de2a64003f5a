#pragma once

namespace slantmap {

// Global defaults. Every checker takes an override.
struct Tolerances {
  double ortho = 1e-10;      // orthonormality of produced frames
  double identity = 1e-10;   // algebraic identity residuals
  double pd = 1e-12;         // smallest admissible metric eigenvalue
  double rank = 1e-12;       // Gram determinant floor
  double sym = 1e-10;        // metric symmetry
  double iso = 1e-9;         // Riemannian-map isometry on the horizontal frame
  double sff = 1e-8;         // symmetry of the second fundamental form
  double structure = 1e-10;  // almost-contact identities
  double cluster = 1e-6;     // eigenvalue clustering in the slant spectrum
  double inequality = 1e-9;  // slack floor for inequality verdicts
};

inline constexpr Tolerances kDefaultTolerances{};

// Finite-difference steps.
inline constexpr double kFirstDerivativeStep = 1e-4;
inline constexpr double kCurvatureStep = 1e-3;
inline constexpr double kJacobianStep = 1e-6;
inline constexpr double kSingularValueFloor = 1e-9;

}  // namespace slantmap
