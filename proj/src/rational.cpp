#include "matlang/rational.hpp"

#include "matlang/errors.hpp"

namespace matlang {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw Error("division by zero");
  mpq_class norm = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::to_string() const {
  if (im == 0) return rational_to_string(re);
  std::string imag;
  if (im == 1) {
    imag = "i";
  } else if (im == -1) {
    imag = "-i";
  } else {
    imag = rational_to_string(im) + "i";
  }
  if (re == 0) return imag;
  std::string out = rational_to_string(re);
  if (im > 0) out += "+";
  return out + imag;
}

}  // namespace matlang
