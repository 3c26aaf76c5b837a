#pragma once

// The Sol-manifold T_A: the 1-forms beta_+/-, the bi-contact pair
// alpha_+/- = beta_+ +- beta_-, structure equations, Geiges identities,
// and the convergence of the Anosov suspension flow.

#include <vector>

#include "cusplink/forms.hpp"
#include "cusplink/monodromy.hpp"
#include "cusplink/verify.hpp"

namespace cusplink {

// Chart coordinates (x, y, z); z is the suspension direction.
// beta_+ = a^{-z} dx^dy(v_+, .), beta_- = -a^{z} dx^dy(v_-, .).
struct SolModel {
  Mat2Z monodromy;
  double a = 0.0;
  double ln_a = 0.0;
  std::array<double, 2> v_plus{}, v_minus{};
  FormField beta_plus, beta_minus, alpha_plus, alpha_minus, alpha3;

  // (beta_+, beta_-, dz) applied to v at p: a g-orthonormal coframe triplet.
  std::array<double, 3> coframe(const Point& p, const Vec& v) const;
  VectorFieldSpec frame_e(int index) const;  // left-invariant Sol frame e_1, e_2, e_3
};

SolModel build_sol_model(const Mat2Z& a);
// Explicit frame (e.g. the link normalization v_+ = (1,w0)/s).
SolModel build_sol_model(const Mat2Z& a, double a_real, std::array<double, 2> v_plus,
                         std::array<double, 2> v_minus);

Point canonical_point(const SolModel& m, const Point& p);
Vec canonical_pushforward(const SolModel& m, const Point& p, const Vec& v);

enum class ContactFormChoice { plus, minus };
double contact_volume(const SolModel& m, ContactFormChoice which, const Point& p);

// Constancy / magnitude 2 ln a / exact cancellation of the volume coefficients.
std::vector<Report> volume_checks(const SolModel& m, const SamplePlan& plan);
Report geiges_check(const SolModel& m, const SamplePlan& plan);
std::vector<Report> structure_equation_check(const SolModel& m, const SamplePlan& plan);
Report frame_bracket_check(const SolModel& m, const SamplePlan& plan);
// Invariance of all five form fields under the mapping-torus identification.
Report invariance_check(const SolModel& m, const SamplePlan& plan);
Report transversality_check(const SolModel& m, const SamplePlan& plan);
Report anosov_convergence(const SolModel& m, const SamplePlan& plan,
                          const std::vector<double>& t_values);

// Everything above at the default thresholds, in deterministic order.
std::vector<Report> sol_suite(const SolModel& m, const SamplePlan& plan);

}  // namespace cusplink
