//! Special functions, elementary distributions and log-space combinatorics
//! shared by the chain and boundary modules.
//!
//! All binomial and factorial quantities are computed through log-gamma
//! style expansions so that participant counts up to ~1e13 neither overflow
//! nor lose the relative accuracy the kernel computations need.

use crate::error::{Error, Result};
use crate::types::Theta;

/// Euler's constant, gamma = lim (H_n - log n).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_TWO_PI: f64 = 1.837_877_066_409_345_3;

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

/// Neumaier-compensated accumulator; error stays O(eps) independent of the
/// number of terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator.
pub fn kahan_sum(it: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::new();
    for x in it {
        acc.add(x);
    }
    acc.value()
}

// ---------------------------------------------------------------------------
// Elementary maps
// ---------------------------------------------------------------------------

/// Scale factor `-1/ln(1-theta)` converting natural logarithms into
/// logarithms with base `1/(1-theta)`; strictly positive.
pub fn log_scale(theta: Theta) -> f64 {
    -1.0 / theta.ln_survival()
}

/// The nth harmonic number `1 + 1/2 + ... + 1/n`. O(n); summed smallest
/// term first under compensation.
pub fn harmonic_number(n: u64) -> f64 {
    assert!(n >= 1, "harmonic_number requires n >= 1");
    let mut acc = KahanSum::new();
    for k in (1..=n).rev() {
        acc.add(1.0 / k as f64);
    }
    acc.value()
}

/// Number-of-failures geometric pmf `(1-eta)^i eta`.
pub fn geo0_pmf(eta: f64, i: u64) -> f64 {
    geo0_log_pmf(eta, i).exp()
}

/// Log of [`geo0_pmf`], stable for very large `i`.
pub fn geo0_log_pmf(eta: f64, i: u64) -> f64 {
    assert!(eta > 0.0 && eta < 1.0, "geo0 parameter must lie in (0,1)");
    i as f64 * (-eta).ln_1p() + eta.ln()
}

/// Parameter `eta` such that binomial thinning (per-element survival
/// `1-theta`) of a Geo0(`eta`) count is Geo0(`zeta`) distributed:
/// `eta = zeta(1-theta) / (1 - zeta*theta)`.
///
/// Continuous and strictly increasing on [0,1] with fixed points 0 and 1.
pub fn geo0_prethin_param(theta: Theta, zeta: f64) -> f64 {
    assert!((0.0..=1.0).contains(&zeta), "zeta must lie in [0,1]");
    zeta * theta.survival() / (1.0 - zeta * theta.value())
}

// ---------------------------------------------------------------------------
// Stirling-series machinery and binomial pmfs
// ---------------------------------------------------------------------------

/// stirlerr(n) = lgamma(n+1) - ((n+1/2) ln n - n + ln(2 pi)/2) for n = 1..15.
const STIRLERR_TABLE: [f64; 16] = [
    f64::INFINITY, // n = 0, never used
    0.081_061_466_795_327_26,
    0.041_340_695_955_409_29,
    0.027_677_925_684_998_34,
    0.020_790_672_103_765_093,
    0.016_644_691_189_821_193,
    0.013_876_128_823_070_748,
    0.011_896_709_945_891_77,
    0.010_411_265_261_972_097,
    0.009_255_462_182_712_733,
    0.008_330_563_433_362_871,
    0.007_573_675_487_951_841,
    0.006_942_840_107_209_53,
    0.006_408_994_188_004_207,
    0.005_951_370_112_758_848,
    0.005_554_733_551_962_801,
];

/// Error of the Stirling approximation to `lgamma(n+1)`.
fn stirlerr(n: f64) -> f64 {
    if n <= 15.0 {
        return STIRLERR_TABLE[n as usize];
    }
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let nn = n * n;
    (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
}

/// `ln(n!)` through the Stirling expansion; exact table below 16.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let nf = n as f64;
    (nf + 0.5) * nf.ln() - nf + 0.5 * LN_TWO_PI + stirlerr(nf)
}

/// Saddle-point deviance term `x ln(x/np) + np - x`, evaluated through a
/// series when `x` is close to `np` to avoid cancellation.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1u32;
        loop {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1;
        }
    }
    x * (x / np).ln() + np - x
}

/// Log of the Binomial(n, p) pmf at k, by the saddle-point method.
///
/// `n` and `k` are integral values passed as f64 so counts up to the f64
/// integer range stay exact; relative accuracy is a few ulps even for
/// n ~ 1e13, which plain log-gamma differences cannot deliver.
pub fn binom_log_pmf(k: f64, n: f64, p: f64) -> f64 {
    debug_assert!(k >= 0.0 && n >= 0.0 && k <= n);
    debug_assert!((0.0..=1.0).contains(&p));
    if n == 0.0 {
        return 0.0;
    }
    if p == 0.0 {
        return if k == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if p == 1.0 {
        return if k == n { 0.0 } else { f64::NEG_INFINITY };
    }
    if k == 0.0 {
        return n * (-p).ln_1p();
    }
    if k == n {
        return n * p.ln();
    }
    let q = 1.0 - p;
    let lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(k, n * p) - bd0(n - k, n * q);
    let lf = LN_TWO_PI + k.ln() + (-k / n).ln_1p();
    lc - 0.5 * lf
}

/// Binomial(n, p) pmf at k.
pub fn binom_pmf(k: u64, n: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    binom_log_pmf(k as f64, n as f64, p).exp()
}

/// One-step thinning probability: from `i` participants to `j`, each one
/// independently kept with probability `1-theta`:
/// `C(i,j) theta^(i-j) (1-theta)^j` for `j <= i`, the absorbing unit mass
/// for `i = j = 0`, and zero otherwise.
pub fn thinning_pmf(i: u64, j: u64, theta: Theta) -> f64 {
    binom_pmf(j, i, theta.survival())
}

// ---------------------------------------------------------------------------
// Binomial coefficient ratios
// ---------------------------------------------------------------------------

/// `C(n-m, l-k) / C(n, l)` computed in log space.
///
/// For the small `m`, `k` the kernel formulas use, the ratio reduces to
/// falling-factorial products of length `m + k`, which keeps the relative
/// error near machine precision for `n` up to ~1e13. Returns 0 for
/// combinatorially impossible configurations.
pub fn binom_ratio(n: u64, m: u64, l: u64, k: u64) -> f64 {
    if k > l || l > n || m > n || l - k > n - m {
        return 0.0;
    }
    if m + k <= 10_000 {
        // C(n-m, l-k)/C(n, l) = l^(k) * (n-l)^(m-k) / n^(m)  (falling powers)
        let mut acc = KahanSum::new();
        for t in 0..k {
            acc.add(((l - t) as f64).ln());
        }
        if m >= k {
            for t in 0..(m - k) {
                acc.add(((n - l - t) as f64).ln());
            }
        } else {
            for t in 1..=(k - m) {
                acc.add(-(((n - l + t) as f64).ln()));
            }
        }
        for t in 0..m {
            acc.add(-(((n - t) as f64).ln()));
        }
        acc.value().exp()
    } else {
        (ln_binom(n - m, l - k) - ln_binom(n, l)).exp()
    }
}

/// `ln C(n, k)`; log-gamma based fallback path.
fn ln_binom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

// ---------------------------------------------------------------------------
// Gamma-family special functions
// ---------------------------------------------------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(x)` for x > 0 (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0");
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * LN_TWO_PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized upper incomplete gamma function `Q(a, x)`, a > 0, x >= 0.
///
/// Series for `x < a + 1`, Lentz continued fraction otherwise.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q requires a > 0, x >= 0");
    if x == 0.0 {
        return 1.0;
    }
    let log_prefix = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        // lower series, complemented
        let mut ap = a;
        let mut sum = 1.0 / a;
        let mut del = sum;
        for _ in 0..500 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        1.0 - sum * log_prefix.exp()
    } else {
        const FPMIN: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        log_prefix.exp() * h
    }
}

/// Exponential integral `E1(x) = int_x^inf e^-t / t dt`, x > 0.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "exp_integral_e1 requires x > 0");
    if x <= 1.0 {
        // -gamma - ln x + sum (-1)^(k+1) x^k / (k k!)
        let mut sum = 0.0;
        let mut pow = 1.0; // x^k / k!
        let mut sign = 1.0;
        for k in 1..200u32 {
            pow *= x / k as f64;
            let term = sign * pow / k as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
            sign = -sign;
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        // Lentz continued fraction for E1
        const FPMIN: f64 = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500u32 {
            let a = -((i as f64) * (i as f64));
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

// ---------------------------------------------------------------------------
// Gumbel-type order densities
// ---------------------------------------------------------------------------

/// Density `f_l(x) = exp(-l x - e^-x) / (l-1)!` of the order-`l` extreme
/// value limit (`l = 1` is the standard Gumbel density).
pub fn gumbel_order_pdf(l: u32, x: f64) -> f64 {
    assert!(l >= 1, "order must be >= 1");
    let e = (-x).exp();
    if e.is_infinite() {
        return 0.0; // double-exponential left tail
    }
    (-(l as f64) * x - e - ln_factorial(l as u64 - 1)).exp()
}

/// Distribution function of [`gumbel_order_pdf`]:
/// `P(W_l <= x) = Q(l, e^-x)` with `Q` the regularized upper incomplete
/// gamma function (the variable is `-ln G` for a Gamma(l, 1) draw `G`).
pub fn gumbel_order_cdf(l: u32, x: f64) -> f64 {
    assert!(l >= 1, "order must be >= 1");
    let e = (-x).exp();
    if e.is_infinite() {
        return 0.0;
    }
    gamma_q(l as f64, e)
}

/// Exact tail of the truncated geometric series:
/// `sum_{j >= j0} theta (1-theta)^(j-1) = (1-theta)^(j0-1)`.
pub fn geometric_tail(theta: Theta, j0: u32) -> f64 {
    debug_assert!(j0 >= 1);
    let _ = theta;
    theta.survival().powi(j0 as i32 - 1)
}

/// Smallest `j` such that `(1 - (1-theta)^j)^n >= 1 - tail_eps`, i.e. the
/// truncation level for the running maximum of `n` geometric draws.
pub fn max_truncation_level(n: u64, theta: Theta, tail_eps: f64) -> Result<u32> {
    if !(tail_eps > 0.0 && tail_eps < 1.0) {
        return Err(Error::InvalidTailEps(tail_eps));
    }
    // q^J <= 1 - (1-eps)^(1/n), solved in logs
    let bound = -((-tail_eps).ln_1p() / n as f64).exp_m1();
    let j = (bound.ln() / theta.ln_survival()).ceil();
    Ok((j.max(1.0)) as u32)
}
