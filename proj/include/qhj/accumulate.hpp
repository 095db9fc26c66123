#pragma once

namespace qhj {

// Compensated (Kahan) accumulator; grid reductions use it so results are
// deterministic and accurate independent of grid size.
struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace qhj
