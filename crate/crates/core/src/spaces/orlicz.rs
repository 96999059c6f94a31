//! Orlicz functions `N` on `[0, 1]`, the Luxemburg gauge they induce, and the
//! numerically conjugated generator used for Koethe duals.
//!
//! Every generator satisfies `N(0) = 0`, `N(1) = 1` and is nondecreasing, so
//! norms only ever consult `N` on arguments in `[0, 1]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seq::FiniteSeq;

/// Points used to check monotonicity when a generator is built.
const VALIDATION_GRID: usize = 10_000;

/// Relative bracket width at which the Luxemburg bisection stops.
const LUXEMBURG_TOL: f64 = 1e-12;

/// Scan resolution for locating the Young-conjugate maximizer.
const CONJUGATE_SCAN: usize = 1_000;

#[derive(Debug, Clone)]
pub enum OrliczKind {
    /// `N(t) = t^p`, `p >= 1`.
    Power { p: f64 },
    /// `N(t) = t^p log^a(e/t)` on `(0, 1]`; `p > 1` with any `a` passing the
    /// monotonicity check, or `p = 1` with `a <= 0`.
    PowerLog { p: f64, a: f64 },
    /// Young conjugate of `base`, rescaled in its argument so the value at 1
    /// is 1: `N(t) = conj_base(scale * t)`.
    Conjugate { base: Arc<OrliczGenerator>, scale: f64 },
}

#[derive(Debug, Clone)]
pub struct OrliczGenerator {
    kind: OrliczKind,
    /// Relative bracket width at which the Luxemburg bisection stops.
    tol: f64,
}

impl PartialEq for OrliczGenerator {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (OrliczKind::Power { p }, OrliczKind::Power { p: q }) => p == q,
            (OrliczKind::PowerLog { p, a }, OrliczKind::PowerLog { p: q, a: b }) => {
                p == q && a == b
            }
            (
                OrliczKind::Conjugate { base, scale },
                OrliczKind::Conjugate { base: b2, scale: s2 },
            ) => base.as_ref() == b2.as_ref() && scale == s2,
            _ => false,
        }
    }
}

impl OrliczGenerator {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::invalid(format!("orlicz power needs p >= 1, got {p}")));
        }
        Ok(OrliczGenerator {
            kind: OrliczKind::Power { p },
            tol: LUXEMBURG_TOL,
        })
    }

    pub fn power_log(p: f64, a: f64) -> Result<Self> {
        if !p.is_finite() || !a.is_finite() {
            return Err(Error::invalid("orlicz power-log parameters must be finite"));
        }
        if p < 1.0 {
            return Err(Error::invalid(format!("power-log needs p >= 1, got {p}")));
        }
        if p == 1.0 && a > 0.0 {
            return Err(Error::invalid("power-log with p = 1 needs a <= 0"));
        }
        let gen = OrliczGenerator {
            kind: OrliczKind::PowerLog { p, a },
            tol: LUXEMBURG_TOL,
        };
        gen.check_monotone_on_grid()?;
        Ok(gen)
    }

    /// Numeric Young conjugate of `base`, argument-rescaled so `N(1) = 1`.
    pub fn conjugate_of(base: &OrliczGenerator) -> Result<Self> {
        // conj(1) < 1 <= conj(2), and conj is continuous nondecreasing, so
        // the rescaling factor lives in [1, 2].
        let base = Arc::new(base.clone());
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if conjugate_value(&base, mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-13 {
                break;
            }
        }
        let scale = 0.5 * (lo + hi);
        Ok(OrliczGenerator {
            kind: OrliczKind::Conjugate { base, scale },
            tol: LUXEMBURG_TOL,
        })
    }

    pub fn kind(&self) -> &OrliczKind {
        &self.kind
    }

    /// Override the Luxemburg bisection tolerance (default 1e-12).
    pub fn with_bisection_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::invalid(format!("bisection tolerance must lie in (0,1), got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    /// `N(t)` for `t` in `[0, 1]` (conjugate wrappers may be consulted
    /// slightly above 1 internally).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        if t <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            OrliczKind::Power { p } => t.powf(*p),
            OrliczKind::PowerLog { p, a } => {
                let log_e_over_t = 1.0 - t.ln();
                t.powf(*p) * log_e_over_t.powf(*a)
            }
            OrliczKind::Conjugate { base, scale } => conjugate_value(base, scale * t),
        }
    }

    /// Inverse `N^{-1}(y)` for `y` in `(0, 1]` by bisection; `N` is
    /// continuous and nondecreasing with `N(0) = 0`, `N(1) = 1`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::invalid(format!("inverse needs y in (0,1], got {y}")));
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi.max(1e-300) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn check_monotone_on_grid(&self) -> Result<()> {
        let mut prev = 0.0f64;
        for i in 0..VALIDATION_GRID {
            // Log-spaced from 1e-10 up to 1.
            let t = 10f64.powf(-10.0 * (1.0 - i as f64 / (VALIDATION_GRID - 1) as f64));
            let v = self.eval(t);
            if v + 1e-12 < prev {
                return Err(Error::invalid(format!(
                    "orlicz function is not nondecreasing near t = {t}"
                )));
            }
            prev = prev.max(v);
        }
        if (self.eval(1.0) - 1.0).abs() > 1e-9 {
            return Err(Error::Internal("orlicz normalization N(1) = 1 violated".into()));
        }
        Ok(())
    }
}

impl fmt::Display for OrliczGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OrliczKind::Power { p } => write!(f, "power(p={p})"),
            OrliczKind::PowerLog { p, a } => write!(f, "powerlog(p={p},a={a})"),
            OrliczKind::Conjugate { base, .. } => write!(f, "conjugate({base})"),
        }
    }
}

/// `sup { s t - N(s) : s in (0, 1] }` for arbitrary `t >= 0`: a coarse scan
/// locates the maximizer, golden-section search refines it. The sup is
/// never below 0 because `s t - N(s) -> 0` as `s -> 0`.
pub(crate) fn conjugate_value(n: &OrliczGenerator, t: f64) -> f64 {
    let obj = |s: f64| s * t - n.eval(s);
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    let step = 1.0 / CONJUGATE_SCAN as f64;
    for i in 1..=CONJUGATE_SCAN {
        let v = obj(i as f64 * step);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = ((best_i as f64 - 1.0) * step).max(0.0);
    let hi = ((best_i as f64 + 1.0) * step).min(1.0);
    let refined = golden_max(&obj, lo, hi, 1e-10);
    refined.max(best).max(0.0)
}

/// Young conjugate `conj_N(t)` for `t` in `(0, 1]`.
pub fn young_conjugate(n: &OrliczGenerator, t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::invalid(format!(
            "young conjugate argument must lie in (0,1], got {t}"
        )));
    }
    Ok(conjugate_value(n, t))
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// The Luxemburg gauge `inf { u > 0 : sum N(|a_k| / u) <= 1 }`.
///
/// The modular is nonincreasing in `u` and brackets cleanly: at
/// `u = max |a_k|` it is at least `N(1) = 1`, and at `u = sum |a_k|` it is at
/// most 1 whenever `N(t) <= t`, which holds for every convex normalized `N`.
/// A doubling guard covers non-convex generators.
pub fn luxemburg_norm(n: &OrliczGenerator, a: &FiniteSeq) -> f64 {
    let abs: Vec<f64> = a
        .entries()
        .iter()
        .map(|x| x.abs())
        .filter(|x| *x > 0.0)
        .collect();
    if abs.is_empty() {
        return 0.0;
    }
    let sup = abs.iter().fold(0.0f64, |m, x| m.max(*x));
    let sum: f64 = abs.iter().sum();
    if abs.len() == 1 {
        // Single atom: modular = N(|c|/u), and N(1) = 1 makes the norm |c|.
        return sup;
    }
    let modular = |u: f64| -> f64 { abs.iter().map(|&x| n.eval(x / u)).sum() };
    let mut lo = sup;
    let mut hi = sum;
    while modular(hi) > 1.0 {
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if modular(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= n.tol * hi {
            return 0.5 * (lo + hi);
        }
    }
}
