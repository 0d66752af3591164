#pragma once

#include "mmimo/linalg.hpp"
#include "mmimo/types.hpp"

namespace mmimo {

/// M x K beamformer: column k is the precoder g_k (downlink) or the combiner
/// w_k (uplink).
struct BeamformerSet {
  ComplexMatrix matrix;
  Scheme scheme = Scheme::ZF;
  Normalization normalization = Normalization::Vector;
  LinkDirection direction = LinkDirection::Downlink;
};

/// F = H^H (H H^H)^{-1}, so that H F = I_K. Requires K <= M.
/// Propagates NotPositiveDefinite from the Gram inversion.
ComplexMatrix zf_precoder(const ComplexMatrix& h);

/// F = H^H.
ComplexMatrix mrt_precoder(const ComplexMatrix& h);

/// Vector: column k scaled by 1/(sqrt(K) ||f_k||). Matrix: F / ||F||_F.
/// Either way the total power sum_k ||g_k||^2 is one. A zero column (Vector)
/// or zero matrix (Matrix) raises DegenerateChannel; Normalization::None is a
/// ConfigError.
ComplexMatrix normalize(const ComplexMatrix& f, Normalization mode);

/// Combiner with w_i^T h_j = delta_ij, computed through the K x K Gram
/// system. Equal to zf_precoder(h).
ComplexMatrix zf_combiner(const ComplexMatrix& h);

/// W = H^H, so that w_k^T h_k = ||h_k||^2.
ComplexMatrix mrc_combiner(const ComplexMatrix& h);

/// Normalized downlink precoder for `scheme` in {ZF, MRT}.
BeamformerSet make_precoder(const ComplexMatrix& h, Scheme scheme, Normalization mode);

/// Unnormalized uplink combiner for `scheme` in {ZF, MRC}.
BeamformerSet make_combiner(const ComplexMatrix& h, Scheme scheme);

}  // namespace mmimo
