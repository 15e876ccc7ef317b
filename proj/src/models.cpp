#include "pkit/models.hpp"

namespace pkit::models {

namespace {

CMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

Realization example1() {
  const CMatrix j = mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CMatrix a = CMatrix::Zero(4, 4);
  a(2, 3) = 1.0;
  const CMatrix g = mat({{1, 0}, {0, 1}, {0, 1}, {1, 0}});
  return Realization::bounded(PontryaginSpace(j), a, g);
}

CMatrix example1_closed_form(cplx z) {
  CMatrix q(2, 2);
  q(0, 0) = 1.0 / z + 1.0 / (z * z);
  q(0, 1) = 1.0 / z;
  q(1, 0) = 1.0 / z;
  q(1, 1) = 1.0 / z;
  return -q;
}

Realization example1_first() {
  return Realization::bounded(PontryaginSpace::hilbert(2), CMatrix::Zero(2, 2),
                              CMatrix::Identity(2, 2));
}

Realization example1_second() {
  const CMatrix swap = mat({{0, 1}, {1, 0}});
  return Realization::bounded(PontryaginSpace(swap), mat({{0, 1}, {0, 0}}), swap);
}

Realization diag_model() {
  const CMatrix j = mat({{1, 0}, {0, -1}});
  return Realization::bounded(PontryaginSpace(j), j, CMatrix::Identity(2, 2));
}

Realization jordan_model(double scale) {
  return Realization::bounded(PontryaginSpace(mat({{0, 1}, {1, 0}})), mat({{0, 1}, {0, 0}}),
                              scale * CMatrix::Identity(2, 2));
}

Realization coupled_model() {
  return Realization::bounded(PontryaginSpace(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})),
                              mat({{0, 0, 1}, {0, 2, 0}, {-1, 0, -3}}),
                              mat({{1, 0}, {0, 1}, {0, 0}}));
}

Realization scalar_pole_model(double a, double sign) {
  return Realization::bounded(PontryaginSpace(mat({{sign}})), mat({{a}}), mat({{1}}));
}

}  // namespace pkit::models
