#include "unitri/sl2.hpp"

#include "unitri/error.hpp"

#include <stdexcept>

namespace unitri {

namespace {

Matrix t12(const Element &x) { return Transvection{0, 1, x}.matrix(2); }
Matrix t21(const Element &x) { return Transvection{1, 0, x}.matrix(2); }

void require_sl2(const Matrix &g) {
  if (g.size() != 2)
    throw Error(errc::dimension_mismatch, "expected a 2x2 matrix");
  if (!det(g).is_one())
    throw Error(errc::not_sl, "determinant is " + det(g).to_string());
}

void require_unit(const Element &eps) {
  if (!eps.is_unit())
    throw Error(errc::not_a_unit, eps.to_string() + " is not a unit");
}

Factorisation raw(std::vector<Block> blocks, Matrix target) {
  Factorisation f{std::move(blocks), std::move(target), {}};
  return f;
}

} // namespace

Sl2Trace sl2_trace(const Matrix &g) {
  require_sl2(g);
  const Ring &ring = g.ring();
  if (!ring.has_sr1())
    throw Error(errc::capability_missing, ring.name() + " has no stable rank 1 witness");
  return sl2_trace_with(g, sr1_witness(g(1, 0), g(1, 1)));
}

Sl2Trace sl2_trace_with(const Matrix &g, const Element &z) {
  require_sl2(g);
  const Ring &ring = g.ring();
  const Element &c = g(1, 0);
  const Element &d = g(1, 1);
  Element c1 = c + d * z;
  Element l = c1.inverse() * (ring.one() - d);
  Element theta = -c1;
  Sl2Trace trace{z, l, theta, ring.zero()};
  Matrix residual = replay_sl2(g, trace);
  if (!is_upper_unitriangular(residual))
    throw std::logic_error("sl2 elimination left " + residual.to_string());
  trace.b = residual(0, 1);
  return trace;
}

Matrix replay_sl2(const Matrix &g, const Sl2Trace &trace) {
  Matrix h = apply_transvection(g, {1, 0, trace.z}, ApplySide::right);
  h = apply_transvection(h, {0, 1, trace.l}, ApplySide::right);
  return apply_transvection(h, {1, 0, trace.theta}, ApplySide::right);
}

std::array<Matrix, 4> sl2_slots(const Matrix &g) {
  require_sl2(g);
  const Matrix e = Matrix::identity(g.ring(), 2);
  if (is_upper_unitriangular(g))
    return {g, e, e, e};
  if (is_lower_unitriangular(g))
    return {e, g, e, e};
  return sl2_slots_from(sl2_trace(g));
}

std::array<Matrix, 4> sl2_slots_from(const Sl2Trace &tr) {
  return {t12(tr.b), t21(-tr.theta), t12(-tr.l), t21(-tr.z)};
}

Factorisation factor_sl2(const Matrix &g, Sl2Lead lead) {
  require_sl2(g);
  if (lead == Sl2Lead::lower) {
    Factorisation mirrored = factor_sl2(reverse_conjugate(g));
    std::vector<Block> blocks;
    for (const auto &b : mirrored.blocks)
      blocks.push_back({opposite(b.side), reverse_conjugate(b.mat)});
    return compact(std::move(blocks), g);
  }
  auto slots = sl2_slots(g);
  return compact({{Side::upper, slots[0]},
                  {Side::lower, slots[1]},
                  {Side::upper, slots[2]},
                  {Side::lower, slots[3]}},
                 g);
}

Factorisation torus4(const Element &eps) {
  require_unit(eps);
  const Ring &ring = eps.ring();
  const Element one = ring.one();
  const Element inv = eps.inverse();
  return raw({{Side::upper, t12(-one)},
              {Side::lower, t21(one - eps)},
              {Side::upper, t12(inv)},
              {Side::lower, t21(eps * (eps - one))}},
             Matrix::diagonal(std::vector<Element>{eps, inv}));
}

Factorisation torus5(const Element &eps) {
  require_unit(eps);
  const Ring &ring = eps.ring();
  const Element one = ring.one();
  const Element inv = eps.inverse();
  return raw({{Side::upper, t12(eps)},
              {Side::lower, t21(-inv)},
              {Side::upper, t12(eps - one)},
              {Side::lower, t21(one)},
              {Side::upper, t12(-one)}},
             Matrix::diagonal(std::vector<Element>{eps, inv}));
}

WeylElement weyl(const Element &eps) {
  require_unit(eps);
  const Ring &ring = eps.ring();
  Matrix w(ring, 2);
  w.set(0, 1, eps);
  w.set(1, 0, -eps.inverse());
  Factorisation f = raw({{Side::upper, t12(eps)},
                         {Side::lower, t21(-eps.inverse())},
                         {Side::upper, t12(eps)}},
                        w);
  return {w, std::move(f)};
}

} // namespace unitri
