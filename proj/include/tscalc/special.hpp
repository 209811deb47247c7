#pragma once

#include "tscalc/timescale.hpp"

namespace tscalc {

// Trigonometric and hyperbolic analogues parameterized by graininess. At
// mu = 0 (within the quotient threshold) they reduce to the classical
// functions; on scattered points they carry the lattice correction.
double ts_sin_at(double t, double mu);
double ts_cos_at(double t, double mu);
double ts_sinh_at(double t, double mu);
double ts_cosh_at(double t, double mu);

// Scale-bound forms: mu is read off the scale at t.
double ts_sin(const TimeScale& ts, double t);
double ts_cos(const TimeScale& ts, double t);
double ts_sinh(const TimeScale& ts, double t);
double ts_cosh(const TimeScale& ts, double t);

// How far the classical identities drift on a scattered scale. The right
// side depends on the graininess only.
struct DefectReport {
    double t = 0.0;
    double mu = 0.0;
    double lhs = 0.0;
    double rhs = 1.0;
    double gap = 0.0;
};

// lhs = ts_sin^2 + ts_cos^2, rhs = 2 (1 - cos mu) / mu^2.
DefectReport pythagorean_defect(const TimeScale& ts, double t);
DefectReport pythagorean_defect_at(double t, double mu);

// lhs = ts_cosh^2 - ts_sinh^2, rhs = (e^mu + e^{-mu} - 2) / mu^2.
DefectReport hyperbolic_defect(const TimeScale& ts, double t);
DefectReport hyperbolic_defect_at(double t, double mu);

}  // namespace tscalc
