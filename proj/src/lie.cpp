#include "j2lab/lie.hpp"

#include "j2lab/errors.hpp"
#include "j2lab/hamiltonians.hpp"

namespace j2lab {

namespace {

void check_order(int order) {
  if (order != 1 && order != 2) throw ConfigError("Lie map order must be 1 or 2");
}

Chart source_chart(PeriodKind kind, Direction direction) {
  if (kind == PeriodKind::short_period) return direction == Direction::direct ? Chart::prime : Chart::osculating;
  return direction == Direction::direct ? Chart::mean : Chart::prime;
}

Chart target_chart(PeriodKind kind, Direction direction) {
  if (kind == PeriodKind::short_period) return direction == Direction::direct ? Chart::osculating : Chart::prime;
  return direction == Direction::direct ? Chart::prime : Chart::mean;
}

}  // namespace

LieTerms lie_terms(const Jet2& u, const GeneratorSet& gen) {
  LieTerms t;
  t.first = poisson(u, gen.first);
  if (gen.order >= 2) {
    t.nested = bracket_gradient(u, gen.nested_source).dot(symplectic(gen.nested_source.g));
    t.second = u.g.dot(symplectic(gen.second_grad));
  }
  return t;
}

double lie_increment(const LieTerms& terms, double j2, int order, Direction direction) {
  const double sign = direction == Direction::direct ? 1.0 : -1.0;
  double inc = sign * j2 * terms.first;
  if (order >= 2) inc += 0.5 * j2 * j2 * (terms.nested + sign * terms.second);
  return inc;
}

GeneratorSet eps_generators(const DSState& ds, const GravityModel& model, PeriodKind kind, int order,
                            const CorrectionOptions& options) {
  check_order(order);
  GeneratorSet gen;
  gen.order = order;
  const CanonicalPoint<Jet2> p2 = seed<Jet2>(ds, model);
  if (kind == PeriodKind::short_period) {
    gen.first = w1(p2);
    gen.nested_source = gen.first;
    if (order == 2) gen.second_grad = w2(seed<Jet1>(ds, model)).g;
  } else {
    gen.first = v1(p2);
    gen.nested_source = options.drop_hidden ? v1(p2, true) : gen.first;
    if (order == 2) gen.second_grad = v2(seed<Jet1>(ds, model), options.drop_hidden).g;
  }
  return gen;
}

CorrectionVector first_order_correction(PeriodKind kind, const DSState& ds, const GravityModel& model,
                                        const CorrectionOptions& options) {
  const GeneratorSet gen = eps_generators(ds, model, kind, 1, options);
  CorrectionVector c;
  c.delta = symplectic(gen.first.g);
  c.order = 1;
  c.kind = kind;
  c.direction = Direction::direct;
  return c;
}

CorrectionVector second_order_correction(PeriodKind kind, const DSState& ds, Direction direction,
                                         const GravityModel& model, const CorrectionOptions& options) {
  const GeneratorSet gen = eps_generators(ds, model, kind, 2, options);
  // For a coordinate function u = x_i the Hessian vanishes, so the nested
  // bracket collapses to (J H_W J grad W)_i.
  const Vec8 a = symplectic(gen.nested_source.g);
  const Vec8 nested = symplectic(gen.nested_source.h * a);
  const Vec8 second = symplectic(gen.second_grad);
  CorrectionVector c;
  c.delta = direction == Direction::direct ? Vec8(nested + second) : Vec8(nested - second);
  c.order = 2;
  c.kind = kind;
  c.direction = direction;
  return c;
}

MapResult apply_map(const RegularState& reg, PeriodKind kind, Direction direction, int order,
                    const GravityModel& model, const CorrectionOptions& options) {
  check_order(order);
  if (reg.chart != source_chart(kind, direction)) throw ChartError("apply_map: input chart does not match the map");
  MapResult out;
  out.state = reg;
  out.state.chart = target_chart(kind, direction);
  if (model.j2 == 0.0) return out;

  const DSState ds = ds_from_regular(reg, model);
  const GeneratorSet gen = eps_generators(ds, model, kind, order, options);
  const CanonicalPoint<Jet2> pt = seed<Jet2>(ds, model);
  const AuxSet<Jet2> a = auxiliary(pt);
  const Jet2 ecc = a.e;
  const Jet2 theta = pt.phi + pt.g;
  const Jet2 C = ecc * cos(pt.g);
  const Jet2 S = ecc * sin(pt.g);

  auto increment = [&](const Jet2& u) { return lie_increment(lie_terms(u, gen), model.j2, order, direction); };
  out.state.theta += increment(theta);
  out.state.C += increment(C);
  out.state.S += increment(S);
  out.state.h += increment(pt.h);
  out.lambda_increment = increment(pt.lambda);
  out.state.lambda += out.lambda_increment;
  out.state.G += increment(pt.G);
  return out;
}

DSState apply_map(const DSState& ds, PeriodKind kind, Direction direction, int order, const GravityModel& model,
                  const CorrectionOptions& options) {
  const MapResult r = apply_map(nonsingular_of(ds, model), kind, direction, order, model, options);
  return ds_from_regular(r.state, model);
}

}  // namespace j2lab
