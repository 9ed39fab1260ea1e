#pragma once

#include <complex>
#include <utility>

#include "synchrony/spacetime.hpp"

// Momentum-space integrand of the iepsilon-regulated scalar propagator,
//   exp(-i k.x) / (omega^2 - |k|^2 - m^2 + i eps),
// and the forms it takes under a resynchronization. No (2 pi)^-4 factor is
// applied. Phases are accumulated in long double so that algebraically equal
// forms agree to well below double rounding of the phase.

namespace synchrony::propagator {

using Complex = std::complex<double>;

/// A point of the momentum integration domain.
struct MomentumSample {
  double omega = 0.0;
  Vec3 k{};
};

struct PropagatorPoint {
  Event4 x;
  double mass = 0.0;
  double eps = 1e-3;

  /// Throws InvalidArgument unless eps > 0 and mass >= 0.
  void validate() const;
};

/// Phase omega t - k.x for an Einstein-convention point.
long double phase_einstein(const MomentumSample& k, const Event4& x);

/// Phase omega''(t' - a.x') - k''.x' for a point in convention a.
long double phase_resynced(const MomentumSample& k, const Event4& x);

/// First form: requires p.x in the Einstein convention.
Complex integrand_einstein(const MomentumSample& k, const PropagatorPoint& p);

/// Third form, after the change of variables k'' = k' - a omega'. p.x is read
/// in its own convention a.
Complex integrand_resynced(const MomentumSample& k, const PropagatorPoint& p);

/// Second form, exp(-i(omega' t' - k'.x')) / (omega'^2 - |k' - a omega'|^2 - m^2 + i eps),
/// at a primed-frame momentum.
Complex integrand_middle(const MomentumSample& k, const PropagatorPoint& p);

/// k'' = k' - a omega' for a point in convention a.
MomentumSample shift_to_unprimed(const MomentumSample& k, const SyncParam& convention);

/// (second form at k', third form at k'' = k' - a omega'). The substitution
/// is carried in extended precision so the pair differs only by rounding of
/// the final result.
std::pair<Complex, Complex> middle_form_check(const MomentumSample& k, const PropagatorPoint& p);

/// |z1 - z2| / max(|z1|, |z2|), zero when both vanish.
double relative_gap(Complex z1, Complex z2);

struct QuadratureGrid {
  double cutoff = 20.0;
  int n = 512;
};

/// 1+1-D midpoint-rule integral over [-K, K]^2 of the third-form integrand at
/// the physical point (t, x), given in Einstein coordinates and resynchronized
/// to the scalar convention a before integration.
Complex propagator_quadrature_1p1(double t, double x, double mass, double eps, double a,
                                  const QuadratureGrid& grid = {});

}  // namespace synchrony::propagator
