#include "carleman/measure.hpp"

#include <iomanip>
#include <ostream>

namespace carleman {

double DiscreteMeasure::mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

cplx DiscreteMeasure::moment(int k) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) acc += weights[i] * ipow(points[i], k);
  return acc;
}

void DiscreteMeasure::write_csv(std::ostream& os) const {
  os << "re,im,weight\n" << std::setprecision(17);
  for (std::size_t i = 0; i < points.size(); ++i)
    os << points[i].real() << ',' << points[i].imag() << ',' << weights[i] << '\n';
}

}  // namespace carleman
