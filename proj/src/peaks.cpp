#include "strokelab/peaks.hpp"

#include <algorithm>
#include <cmath>

namespace strokelab {

std::vector<Peak> find_local_maxima(std::span<const AngleSample> s) {
    std::vector<Peak> peaks;
    const std::size_t n = s.size();
    if (n < 3)
        return peaks;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(s[i].angle > s[i - 1].angle)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && s[j + 1].angle == s[i].angle)
            ++j;
        if (j + 1 < n && s[j + 1].angle < s[i].angle) {
            const std::size_t mid = i + (j - i) / 2;
            peaks.push_back({mid, s[mid].timestamp, s[mid].angle, 0.0});
        }
        i = j + 1;
    }

    for (auto& p : peaks) {
        double left_min = p.value;
        for (std::size_t k = p.index; k-- > 0;) {
            if (s[k].angle > p.value)
                break;
            left_min = std::min(left_min, s[k].angle);
        }
        double right_min = p.value;
        for (std::size_t k = p.index + 1; k < n; ++k) {
            if (s[k].angle > p.value)
                break;
            right_min = std::min(right_min, s[k].angle);
        }
        p.prominence = p.value - std::max(left_min, right_min);
    }
    return peaks;
}

std::vector<Peak> select_peaks(std::vector<Peak> peaks, double min_prominence, double min_separation) {
    std::erase_if(peaks, [&](const Peak& p) { return p.prominence < min_prominence; });
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.value > b.value; });

    std::vector<Peak> kept;
    for (const auto& p : peaks) {
        const bool crowded = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
            return std::abs(q.time - p.time) < min_separation;
        });
        if (!crowded)
            kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const Peak& a, const Peak& b) { return a.time < b.time; });
    return kept;
}

} // namespace strokelab
