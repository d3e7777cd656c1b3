#pragma once

#include <cmath>
#include <string>

#include "contracta/errors.hpp"

namespace contracta {

/// Dimension d in (0, n] split into integer part d0 and fractional part s = d - d0.
/// When d == n the split is (n, 0) and the (d0+1)-th factor of the volume
/// functional is never referenced.
struct FractionalDimension {
    double d;
    int d0;
    double s;
    int n;

    static FractionalDimension of(double d, int n) {
        if (n <= 0) throw InputError("FractionalDimension: ambient dimension must be positive");
        if (!(d > 0.0) || !(d <= static_cast<double>(n)) || !std::isfinite(d))
            throw InputError("FractionalDimension: d must lie in (0, " + std::to_string(n) + "]");
        FractionalDimension out;
        out.d = d;
        out.n = n;
        out.d0 = static_cast<int>(std::floor(d));
        out.s = d - static_cast<double>(out.d0);
        if (out.d0 == n) out.s = 0.0;  // d == n exactly
        return out;
    }

    bool is_integer() const { return s == 0.0; }
};

}  // namespace contracta
