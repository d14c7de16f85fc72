//! Globally adaptive 7/15-point Gauss–Kronrod quadrature for complex-valued
//! integrands on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Absolute and relative stopping criteria; refinement stops once the
/// estimated error is below `max(abs, rel·|I|)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn abs(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }

    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GkResult {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
    pub converged: bool,
    /// Stopped because every remaining panel was at its roundoff floor
    /// (`50ε ∫|f|`); `error` is then the attainable accuracy.
    pub roundoff_limited: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [Complex64::new(0.0, 0.0); 15];
    fv[7] = f(center);
    for j in 0..7 {
        let dx = half * XGK[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }
    let mut kron = fv[7] * WGK[7];
    let mut gauss = fv[7] * WG[3];
    for j in 0..7 {
        let pair = fv[j] + fv[14 - j];
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[7] * (fv[7] - mean).norm();
    let mut resabs = WGK[7] * fv[7].norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).norm() + (fv[14 - j] - mean).norm());
        resabs += WGK[j] * (fv[j].norm() + fv[14 - j].norm());
    }
    let scale = half.abs();
    resasc *= scale;
    resabs *= scale;
    let mut err = ((kron - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Panel {
        a,
        b,
        value: kron * half,
        error: err,
        floor,
    }
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the
/// tolerance is met or `max_evals` integrand calls have been spent.
pub fn integrate<F: FnMut(f64) -> Complex64>(f: F, a: f64, b: f64, tol: Tolerance, max_evals: usize) -> GkResult {
    integrate_breaks(f, &[a, b], tol, max_evals)
}

/// Like [`integrate`] over `[breaks[0], breaks[last]]`, with the initial
/// panels split at the given (monotone) breakpoints — where the integrand
/// has kinks.
pub fn integrate_breaks<F: FnMut(f64) -> Complex64>(mut f: F, breaks: &[f64], tol: Tolerance, max_evals: usize) -> GkResult {
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for w in breaks.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let p = kronrod_panel(&mut f, w[0], w[1]);
        evals += 15;
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    if heap.is_empty() {
        return GkResult {
            value,
            error,
            evals,
            converged: true,
            roundoff_limited: false,
        };
    }
    while error > tol.target(value.norm()) {
        if evals + 30 > max_evals {
            return GkResult {
                value,
                error,
                evals,
                converged: false,
                roundoff_limited: false,
            };
        }
        if heap.peek().is_some_and(|w| w.error <= w.floor * (1.0 + 1e-9)) {
            // the largest error is pure roundoff: bisecting cannot reduce it
            return GkResult {
                value: heap.iter().map(|p| p.value).sum(),
                error: heap.iter().map(|p| p.error).sum(),
                evals,
                converged: true,
                roundoff_limited: true,
            };
        }
        let worst = heap.pop().expect("heap holds every panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // interval exhausted at machine resolution
            heap.push(worst);
            return GkResult {
                value,
                error,
                evals,
                converged: false,
                roundoff_limited: false,
            };
        }
        let left = kronrod_panel(&mut f, worst.a, mid);
        let right = kronrod_panel(&mut f, mid, worst.b);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // re-sum periodically so the running error does not drift through cancellation
        if heap.len() % 64 == 0 {
            error = heap.iter().map(|p| p.error).sum();
            value = heap.iter().map(|p| p.value).sum();
        }
    }
    let error_sum: f64 = heap.iter().map(|p| p.error).sum();
    let value_sum: Complex64 = heap.iter().map(|p| p.value).sum();
    GkResult {
        value: value_sum,
        error: error_sum,
        evals,
        converged: true,
        roundoff_limited: false,
    }
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance, max_evals: usize) -> GkResult {
    integrate(|t| Complex64::new(f(t), 0.0), a, b, tol, max_evals)
}
