#pragma once

#include "strokelab/kinematics.hpp"

#include <span>
#include <vector>

namespace strokelab {

struct Peak {
    std::size_t index = 0; // into the sample array
    double time = 0.0;
    double value = 0.0;
    double prominence = 0.0;
};

// Samples strictly greater than both neighbours. A flat top takes the index of
// the plateau midpoint. End samples are never peaks. Prominence is the height
// above the higher of the two lowest points reached before a strictly higher
// sample (or the series end) on each side.
std::vector<Peak> find_local_maxima(std::span<const AngleSample> samples);

// Drops peaks below min_prominence, then keeps peaks greedily by descending
// value, rejecting any closer than min_separation seconds to a kept one.
// Result is ordered by time.
std::vector<Peak> select_peaks(std::vector<Peak> peaks, double min_prominence, double min_separation);

} // namespace strokelab
