#pragma once

#include "specmap/cube.hpp"

#include <span>

namespace specmap {

/// Infers the unobserved target layer from the other layers of `estimates`.
/// Per cell, fits value = alpha + beta * 10 log10(f) by ordinary least
/// squares over the sampled layers and evaluates the line at the target
/// frequency. Exact when layers differ only by a free-space frequency term,
/// i.e. when every transmitter is broadband and shadowing is off.
RealMap complete_target_layer(const FrequencySpaceCube& estimates, std::span<const double> frequencies_mhz,
                              int target_index);

} // namespace specmap
