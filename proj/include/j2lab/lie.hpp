#pragma once

// Poisson brackets and Lie-series corrections between the osculating, prime
// and mean charts.
//
// For an observable u and generators W1, W2 the maps are
//   direct:  u + J2 {u,W1} + J2^2/2 ({{u,W1},W1} + {u,W2})
//   inverse: u - J2 {u,W1} + J2^2/2 ({{u,W1},W1} - {u,W2})
// with {f,g} = grad f . J grad g. The nested bracket only needs first and
// second derivatives:
//   grad {u,W} = H_u J grad W - H_W J grad u.

#include "j2lab/dsvars.hpp"
#include "j2lab/jet.hpp"

namespace j2lab {

enum class Direction { direct, inverse };
enum class PeriodKind { short_period, long_period };

struct CorrectionOptions {
  bool drop_hidden = false;  // delta = upsilon = 0 inside second-order long-period terms
};

struct CorrectionVector {
  Vec8 delta = Vec8::Zero();
  int order = 1;
  PeriodKind kind = PeriodKind::short_period;
  Direction direction = Direction::direct;
};

template <JetType A, JetType B>
double poisson(const A& f, const B& g) {
  return f.g.dot(symplectic(g.g));
}

// Bracket of two fields of the canonical point, evaluated at ds.
template <class F, class G>
double poisson(F&& f, G&& g, const DSState& ds, const GravityModel& model) {
  const CanonicalPoint<Jet1> pt = seed<Jet1>(ds, model);
  return poisson(f(pt), g(pt));
}

inline Vec8 bracket_gradient(const Jet2& u, const Jet2& w) {
  return u.h * symplectic(w.g) - w.h * symplectic(u.g);
}

// First-order generator with its Hessian and, at second order, the gradient
// of the second-order generator. nested_source is the first-order generator
// used inside the nested bracket; it differs from first only when the
// simplification switch is on.
struct GeneratorSet {
  Jet2 first;
  Jet2 nested_source;
  Vec8 second_grad = Vec8::Zero();
  int order = 1;
};

struct LieTerms {
  double first = 0.0;
  double nested = 0.0;
  double second = 0.0;
};

LieTerms lie_terms(const Jet2& u, const GeneratorSet& gen);

// Combines the bracket terms into the increment of the observable.
double lie_increment(const LieTerms& terms, double j2, int order, Direction direction);

GeneratorSet eps_generators(const DSState& ds, const GravityModel& model, PeriodKind kind, int order,
                            const CorrectionOptions& options = {});

// delta_1 for every canonical variable, unscaled by J2.
CorrectionVector first_order_correction(PeriodKind kind, const DSState& ds, const GravityModel& model,
                                        const CorrectionOptions& options = {});

// delta_2 (direct) or delta_2' (inverse) for every canonical variable.
CorrectionVector second_order_correction(PeriodKind kind, const DSState& ds, Direction direction,
                                         const GravityModel& model, const CorrectionOptions& options = {});

struct MapResult {
  RegularState state;
  double lambda_increment = 0.0;  // also folded into state.lambda
};

// Maps the regular observables (theta, C, S, h, lambda, G); H and Lambda are
// invariant. Chart tags: short direct prime->osculating, short inverse
// osculating->prime, long direct mean->prime, long inverse prime->mean.
MapResult apply_map(const RegularState& reg, PeriodKind kind, Direction direction, int order,
                    const GravityModel& model, const CorrectionOptions& options = {});

DSState apply_map(const DSState& ds, PeriodKind kind, Direction direction, int order, const GravityModel& model,
                  const CorrectionOptions& options = {});

}  // namespace j2lab
