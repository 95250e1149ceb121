#pragma once

#include <random>

#include "dsc/core.hpp"

namespace dsc {

// Random valid DSC on single-letter labels. Depsets of event i only mention
// earlier events and are closed before use, so D0-D3 always hold.
// max_choices = 1 yields a DSNC.
Dsc random_dsc(std::mt19937& rng, std::size_t n_events, std::size_t max_choices = 3);

}  // namespace dsc
