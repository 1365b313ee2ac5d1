#include "ffmean/rational.hpp"

namespace ffmean {

Rational rational_from_double(double x) {
  Rational r(x);  // mpq_set_d is exact
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace ffmean
