// AVX2 variants of the stepper kernels. Compiled with -mavx2 only (no FMA) so
// the linear kernels round exactly like the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>

#include "bhs/simd/kernels.hpp"

namespace bhs::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d bits_to_pd(std::int64_t bits) {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(bits));
}

// Natural log for positive normal inputs (fdlibm e_log.c reduction and
// polynomial, < 1 ulp).
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  // biased | 2^52 as a double is 2^52 + biased exactly.
  const __m256d magic = bits_to_pd(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))),
      splat(4503599627370496.0 + 1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  const __m256d big = _mm256_cmp_pd(m, splat(1.41421356237309504880), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

  const __m256d f = _mm256_sub_pd(m, splat(1.0));
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(splat(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);

  __m256d t1 = _mm256_add_pd(splat(2.222219843214978396e-01),
                             _mm256_mul_pd(w, splat(1.531383769920937332e-01)));
  t1 = _mm256_add_pd(splat(3.999999999940941908e-01), _mm256_mul_pd(w, t1));
  t1 = _mm256_mul_pd(w, t1);

  __m256d t2 = _mm256_add_pd(splat(1.818357216161805012e-01),
                             _mm256_mul_pd(w, splat(1.479819860511658591e-01)));
  t2 = _mm256_add_pd(splat(2.857142874366239149e-01), _mm256_mul_pd(w, t2));
  t2 = _mm256_add_pd(splat(6.666666666666735130e-01), _mm256_mul_pd(w, t2));
  t2 = _mm256_mul_pd(z, t2);

  const __m256d r = _mm256_add_pd(t2, t1);
  const __m256d hfsq = _mm256_mul_pd(splat(0.5), _mm256_mul_pd(f, f));

  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                      _mm256_mul_pd(e, splat(ln2_lo)));
  const __m256d corr = _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f);
  return _mm256_sub_pd(_mm256_mul_pd(e, splat(ln2_hi)), corr);
}

// exp(y) for y <= 709; y < -708 flushes to 0 (no subnormal results).
inline __m256d exp_pd(__m256d y) {
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const __m256d under = _mm256_cmp_pd(y, splat(-708.0), _CMP_LT_OQ);
  const __m256d yc = _mm256_min_pd(_mm256_max_pd(y, splat(-708.0)), splat(709.0));

  const __m256d nf = _mm256_round_pd(_mm256_mul_pd(yc, splat(1.44269504088896338700)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(yc, _mm256_mul_pd(nf, splat(ln2_hi)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(nf, splat(ln2_lo)));

  // Taylor to degree 13 on |r| <= ln2/2, truncation below 1e-17.
  static constexpr double coef[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        0.5,
      1.0,                1.0};
  __m256d poly = splat(coef[0]);
  for (std::size_t i = 1; i < std::size(coef); ++i) {
    poly = _mm256_add_pd(_mm256_mul_pd(poly, r), splat(coef[i]));
  }

  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  const __m256d scaled = _mm256_mul_pd(poly, _mm256_castsi256_pd(n64));
  return _mm256_andnot_pd(under, scaled);
}

void pressure(std::span<const double> n, std::span<double> p, double k) {
  const double km1 = k - 1.0;
  const double coef = k / km1;
  const __m256d vkm1 = splat(km1);
  const __m256d vcoef = splat(coef);
  const __m256d tiny = splat(DBL_MIN);
  std::size_t i = 0;
  for (; i + kLanes <= n.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(n.data() + i);
    const __m256d live = _mm256_cmp_pd(x, tiny, _CMP_GE_OQ);
    // Dead lanes go through log(1) to keep the arithmetic finite.
    const __m256d safe = _mm256_blendv_pd(splat(1.0), x, live);
    const __m256d v = _mm256_mul_pd(vcoef, exp_pd(_mm256_mul_pd(vkm1, log_pd(safe))));
    _mm256_storeu_pd(p.data() + i, _mm256_and_pd(live, v));
  }
  for (; i < n.size(); ++i) {
    p[i] = n[i] < DBL_MIN ? 0.0 : coef * std::exp(km1 * std::log(n[i]));
  }
}

void face_velocity(std::span<const double> w, std::span<double> u, double inv_dx) {
  const __m256d vinv = splat(inv_dx);
  const __m256d sign = splat(-0.0);
  std::size_t f = 0;
  for (; f + kLanes <= u.size(); f += kLanes) {
    const __m256d left = _mm256_loadu_pd(w.data() + f);
    const __m256d right = _mm256_loadu_pd(w.data() + f + 1);
    const __m256d grad = _mm256_mul_pd(_mm256_sub_pd(right, left), vinv);
    _mm256_storeu_pd(u.data() + f, _mm256_xor_pd(grad, sign));
  }
  for (; f < u.size(); ++f) u[f] = -((w[f + 1] - w[f]) * inv_dx);
}

void upwind_flux(std::span<const double> u, std::span<const double> n, std::span<double> flux) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t f = 0;
  for (; f + kLanes <= u.size(); f += kLanes) {
    const __m256d vu = _mm256_loadu_pd(u.data() + f);
    const __m256d up = _mm256_mul_pd(_mm256_max_pd(zero, vu), _mm256_loadu_pd(n.data() + f));
    const __m256d down =
        _mm256_mul_pd(_mm256_min_pd(zero, vu), _mm256_loadu_pd(n.data() + f + 1));
    _mm256_storeu_pd(flux.data() + f, _mm256_add_pd(up, down));
  }
  for (; f < u.size(); ++f) {
    flux[f] = std::max(u[f], 0.0) * n[f] + std::min(u[f], 0.0) * n[f + 1];
  }
}

void affine_growth(std::span<const double> p, std::span<double> g, double g0, double g1) {
  const __m256d v0 = splat(g0);
  const __m256d v1 = splat(g1);
  std::size_t i = 0;
  for (; i + kLanes <= g.size(); i += kLanes) {
    _mm256_storeu_pd(g.data() + i,
                     _mm256_add_pd(v0, _mm256_mul_pd(v1, _mm256_loadu_pd(p.data() + i))));
  }
  for (; i < g.size(); ++i) g[i] = g0 + g1 * p[i];
}

void upwind_update(std::span<const double> n, std::span<const double> flux,
                   std::span<const double> g, std::span<double> out, double ratio, double dt) {
  const __m256d vr = splat(ratio);
  const __m256d vdt = splat(dt);
  std::size_t i = 0;
  for (; i + kLanes <= out.size(); i += kLanes) {
    const __m256d vn = _mm256_loadu_pd(n.data() + i);
    const __m256d fl = _mm256_loadu_pd(flux.data() + i);
    const __m256d fr = _mm256_loadu_pd(flux.data() + i + 1);
    const __m256d div = _mm256_mul_pd(vr, _mm256_sub_pd(fr, fl));
    const __m256d react = _mm256_mul_pd(_mm256_mul_pd(vdt, vn), _mm256_loadu_pd(g.data() + i));
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(_mm256_sub_pd(vn, div), react));
  }
  for (; i < out.size(); ++i) {
    const double div = ratio * (flux[i + 1] - flux[i]);
    const double react = (dt * n[i]) * g[i];
    out[i] = (n[i] - div) + react;
  }
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum(std::span<const double> v) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= v.size(); i += kLanes) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v.data() + i));
  double total = horizontal_sum(acc);
  for (; i < v.size(); ++i) total += v[i];
  return total;
}

double max(std::span<const double> v) {
  __m256d acc = splat(-HUGE_VAL);
  std::size_t i = 0;
  for (; i + kLanes <= v.size(); i += kLanes) acc = _mm256_max_pd(acc, _mm256_loadu_pd(v.data() + i));
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  double m = *std::max_element(lanes, lanes + kLanes);
  for (; i < v.size(); ++i) m = std::max(m, v[i]);
  return m;
}

double weighted_abs_residual(std::span<const double> p, std::span<const double> w, double nu,
                             double g0, double g1) {
  const __m256d vnu = splat(nu);
  const __m256d v0 = splat(g0);
  const __m256d v1 = splat(g1);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= p.size(); i += kLanes) {
    const __m256d vp = _mm256_loadu_pd(p.data() + i);
    const __m256d vw = _mm256_loadu_pd(w.data() + i);
    const __m256d grow = _mm256_mul_pd(vnu, _mm256_add_pd(v0, _mm256_mul_pd(v1, vp)));
    const __m256d q = _mm256_add_pd(_mm256_sub_pd(vw, vp), grow);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vp, _mm256_and_pd(q, abs_mask)));
  }
  double total = horizontal_sum(acc);
  for (; i < p.size(); ++i) {
    const double q = (w[i] - p[i]) + nu * (g0 + g1 * p[i]);
    total += p[i] * std::abs(q);
  }
  return total;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Backend::Avx2, "avx2", pressure,  face_velocity,
                                 upwind_flux,   affine_growth, upwind_update, sum,
                                 max,           weighted_abs_residual};
  return table;
}

}  // namespace bhs::simd
