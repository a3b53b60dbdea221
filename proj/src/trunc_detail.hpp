#pragma once

#include "isv/trunc.hpp"

namespace isv::detail {

/// Hyperbolic volume of a Klein-chart polytope as a boundary flux: a sum of
/// adaptive 2D integrals over the facets. `tol` is relative per facet.
VolumeResult flux_volume(const ConvexPolytope3& poly, double tol);

/// Same boundary flux with a fixed 4^levels refinement of each facet fan
/// triangle: biased low near the sphere, but smooth in the vertex positions.
VolumeResult flux_volume_uniform(const ConvexPolytope3& poly, int levels);

}  // namespace isv::detail
