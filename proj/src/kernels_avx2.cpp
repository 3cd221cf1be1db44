// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "chernlink/kernels.hpp"

namespace chernlink::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_min_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_min_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

PairFluxResult pair_flux_avx2(Soa3View p, Soa3View u, Soa3View q, Soa3View v) {
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    const std::size_t m4 = m - m % 4;
    double total = 0.0;
    double min_d2 = std::numeric_limits<double>::infinity();
    __m256d vmin = _mm256_set1_pd(min_d2);

    for (std::size_t i = 0; i < n; ++i) {
        const __m256d px = _mm256_set1_pd(p.x[i]);
        const __m256d py = _mm256_set1_pd(p.y[i]);
        const __m256d pz = _mm256_set1_pd(p.z[i]);
        const __m256d ux = _mm256_set1_pd(u.x[i]);
        const __m256d uy = _mm256_set1_pd(u.y[i]);
        const __m256d uz = _mm256_set1_pd(u.z[i]);
        __m256d acc = _mm256_setzero_pd();

        for (std::size_t j = 0; j < m4; j += 4) {
            const __m256d qx = _mm256_loadu_pd(q.x.data() + j);
            const __m256d qy = _mm256_loadu_pd(q.y.data() + j);
            const __m256d qz = _mm256_loadu_pd(q.z.data() + j);
            const __m256d vx = _mm256_loadu_pd(v.x.data() + j);
            const __m256d vy = _mm256_loadu_pd(v.y.data() + j);
            const __m256d vz = _mm256_loadu_pd(v.z.data() + j);

            const __m256d dx = _mm256_sub_pd(px, qx);
            const __m256d dy = _mm256_sub_pd(py, qy);
            const __m256d dz = _mm256_sub_pd(pz, qz);
            const __m256d cx = _mm256_fmsub_pd(uy, vz, _mm256_mul_pd(uz, vy));
            const __m256d cy = _mm256_fmsub_pd(uz, vx, _mm256_mul_pd(ux, vz));
            const __m256d cz = _mm256_fmsub_pd(ux, vy, _mm256_mul_pd(uy, vx));

            const __m256d d2 = _mm256_fmadd_pd(dz, dz, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx)));
            vmin = _mm256_min_pd(vmin, d2);
            const __m256d num = _mm256_fmadd_pd(dz, cz, _mm256_fmadd_pd(dy, cy, _mm256_mul_pd(dx, cx)));
            const __m256d den = _mm256_mul_pd(d2, _mm256_sqrt_pd(d2));
            acc = _mm256_add_pd(acc, _mm256_div_pd(num, den));
        }

        double row = hsum(acc);
        for (std::size_t j = m4; j < m; ++j) {
            const double dx = p.x[i] - q.x[j];
            const double dy = p.y[i] - q.y[j];
            const double dz = p.z[i] - q.z[j];
            const double cx = u.y[i] * v.z[j] - u.z[i] * v.y[j];
            const double cy = u.z[i] * v.x[j] - u.x[i] * v.z[j];
            const double cz = u.x[i] * v.y[j] - u.y[i] * v.x[j];
            const double d2 = dx * dx + dy * dy + dz * dz;
            min_d2 = std::min(min_d2, d2);
            row += (dx * cx + dy * cy + dz * cz) / (d2 * std::sqrt(d2));
        }
        total += row;
    }
    return {total, std::min(min_d2, hmin(vmin))};
}

} // namespace chernlink::kernels
