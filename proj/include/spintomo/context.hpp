#pragma once

#include "spintomo/qudit_frame.hpp"
#include "spintomo/quadrature.hpp"

namespace spintomo {

/// Grids and the qudit quantizer family shared by the tomographic routines.
struct TomographyContext {
  QuadratureGrid sphere;  // one sphere, for the qudit
  QuadratureGrid pair;    // product of two spheres, for two qubits
  QuditFrame frame;

  static TomographyContext make(int n_azimuth = kMinAzimuthNodes, int n_polar = kMinPolarNodes);
};

inline TomographyContext TomographyContext::make(int n_azimuth, int n_polar) {
  QuadratureGrid sphere = make_grid(n_azimuth, n_polar, 1);
  QuadratureGrid pair = make_grid(n_azimuth, n_polar, 2);
  QuditFrame frame = QuditFrame::build(sphere);
  return {std::move(sphere), std::move(pair), std::move(frame)};
}

}  // namespace spintomo
