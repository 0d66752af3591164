#include "mmimo/beamforming.hpp"

#include <cmath>
#include <string>

namespace mmimo {

ComplexMatrix zf_precoder(const ComplexMatrix& h) {
  if (h.rows() > h.cols()) {
    throw ConfigError("zf_precoder: k exceeds m (" + std::to_string(h.rows()) + " > " +
                      std::to_string(h.cols()) + ")");
  }
  return matmul(hermitian(h), invert_hpd(gram_rows(h)));
}

ComplexMatrix mrt_precoder(const ComplexMatrix& h) { return hermitian(h); }

ComplexMatrix normalize(const ComplexMatrix& f, Normalization mode) {
  ComplexMatrix g = f;
  const std::size_t k = f.cols();
  switch (mode) {
    case Normalization::Vector: {
      const double sqrt_k = std::sqrt(static_cast<double>(k));
      for (std::size_t j = 0; j < k; ++j) {
        const double norm_sq = column_norm_sq(f, j);
        if (!(norm_sq > 0.0))
          throw DegenerateChannel("normalize: column " + std::to_string(j) + " is zero");
        const double scale = 1.0 / (sqrt_k * std::sqrt(norm_sq));
        for (std::size_t i = 0; i < f.rows(); ++i) g(i, j) *= scale;
      }
      return g;
    }
    case Normalization::Matrix: {
      const double fro_sq = frobenius_norm_sq(f);
      if (!(fro_sq > 0.0)) throw DegenerateChannel("normalize: matrix is zero");
      const double scale = 1.0 / std::sqrt(fro_sq);
      for (cplx& z : g.data()) z *= scale;
      return g;
    }
    case Normalization::None:
      break;
  }
  throw ConfigError("normalize: mode must be Vector or Matrix");
}

ComplexMatrix zf_combiner(const ComplexMatrix& h) {
  // (H^H H)^{-1} H^H restricted to the row space of H is H^H (H H^H)^{-1}.
  return zf_precoder(h);
}

ComplexMatrix mrc_combiner(const ComplexMatrix& h) { return hermitian(h); }

BeamformerSet make_precoder(const ComplexMatrix& h, Scheme scheme, Normalization mode) {
  check_combination(LinkDirection::Downlink, scheme, mode);
  ComplexMatrix f = scheme == Scheme::ZF ? zf_precoder(h) : mrt_precoder(h);
  return {normalize(f, mode), scheme, mode, LinkDirection::Downlink};
}

BeamformerSet make_combiner(const ComplexMatrix& h, Scheme scheme) {
  check_combination(LinkDirection::Uplink, scheme, Normalization::None);
  ComplexMatrix w = scheme == Scheme::ZF ? zf_combiner(h) : mrc_combiner(h);
  return {std::move(w), scheme, Normalization::None, LinkDirection::Uplink};
}

}  // namespace mmimo
