#include "kgw/float_pipeline.hpp"

#include <cmath>
#include <numbers>

namespace kgw {

std::vector<std::complex<double>> float_reduced_sum(const std::vector<std::int64_t>& u, int d, unsigned p,
                                                    unsigned k) {
    using cd = std::complex<double>;
    const int n = static_cast<int>(u.size());
    std::vector<cd> t(u.size());
    for (int j = 0; j < n; ++j) {
        // Reduce the exponent first so that the angle stays in [0, 2 pi).
        long long x = (static_cast<long long>(k) * (u[j] % static_cast<long long>(p))) % static_cast<long long>(p);
        if (x < 0) x += p;
        t[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(p));
    }
    const cd w = std::pow(t[0], d - 1) * t[1];
    std::vector<cd> total(static_cast<std::size_t>(std::max(n - 2, 0)) + 1, cd(0.0));

    for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == i2 || i2 == (i1 + 1) % n || i1 == (i2 + 1) % n) continue;
            cd num(1.0);
            for (int a = 0; a <= d; ++a) num *= 1.0 - std::pow(t[i1], a) * std::pow(t[i2], d - a) / w;
            cd den = 2.0 - t[i1] / t[i2] - t[i2] / t[i1];
            for (int m = 0; m < n; ++m) {
                if (m == i1 || m == i2) continue;
                den *= 1.0 - t[i1] / t[m] - t[i2] / t[m] + t[i1] * t[i2] / (t[m] * t[m]);
            }
            std::vector<cd> poly{cd(1.0)};
            for (int m = 0; m < n; ++m) {
                if (m == i1 || m == (i1 + 1) % n || m == i2) continue;
                const cd c = t[i1] / t[m];
                std::vector<cd> next(poly.size() + 1, cd(0.0));
                for (std::size_t s = 0; s < poly.size(); ++s) {
                    next[s] += poly[s];
                    next[s + 1] += c * poly[s];
                }
                poly = std::move(next);
            }
            const cd scale = num / den;
            for (std::size_t s = 0; s < poly.size() && s < total.size(); ++s) total[s] += scale * poly[s];
        }
    }
    return total;
}

}  // namespace kgw
