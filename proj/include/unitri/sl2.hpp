#pragma once

#include "unitri/matrix.hpp"

#include <array>

namespace unitri {

/// Right multipliers of the three elimination steps for a 2x2 matrix of
/// determinant 1 over a stable rank 1 ring:
///
///   g * t21(z) * t12(l) * t21(theta) = t12(b)
///
/// z makes the south-west entry a unit, l makes the south-east entry 1 and
/// theta clears the south-west entry.
struct Sl2Trace {
  Element z;
  Element l;
  Element theta;
  Element b;
};

/// Runs the three steps; throws capability_missing without stable rank 1.
Sl2Trace sl2_trace(const Matrix &g);

/// g * t21(z) * t12(l) * t21(theta).
Matrix replay_sl2(const Matrix &g, const Sl2Trace &trace);

/// The three steps with a caller-supplied witness z; c + d*z must be a
/// unit. Needs no stable rank 1 capability.
Sl2Trace sl2_trace_with(const Matrix &g, const Element &z);

/// t12(b) t21(-theta) t12(-l) t21(-z) as four slot matrices.
std::array<Matrix, 4> sl2_slots_from(const Sl2Trace &trace);

/// Four blocks U L U L (identity blocks allowed) with product g. Already
/// unitriangular inputs skip the stable rank 1 machinery.
std::array<Matrix, 4> sl2_slots(const Matrix &g);

enum class Sl2Lead { upper, lower };

/// Length <= 4 factorisation g = t12(b) t21(-theta) t12(-l) t21(-z) with
/// identity blocks pruned. Sl2Lead::lower runs the mirrored algorithm and
/// returns a pattern starting with L.
Factorisation factor_sl2(const Matrix &g, Sl2Lead lead = Sl2Lead::upper);

/// diag(eps, eps^-1) = t12(-1) t21(1-eps) t12(eps^-1) t21(eps(eps-1)).
Factorisation torus4(const Element &eps);

/// diag(eps, eps^-1) = t12(eps) t21(-eps^-1) t12(eps-1) t21(1) t12(-1),
/// i.e. w(eps) w(-1) written out.
Factorisation torus5(const Element &eps);

struct WeylElement {
  Matrix matrix;
  Factorisation factorisation;
};

/// w(eps) = t12(eps) t21(-eps^-1) t12(eps) = [[0, eps], [-eps^-1, 0]].
WeylElement weyl(const Element &eps);

} // namespace unitri
