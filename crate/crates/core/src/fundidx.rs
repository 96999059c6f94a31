//! Fundamental functions, dilation functions, fundamental indices, and
//! Grobler-Dodds index reporting for the concrete space families.
//!
//! Indices are growth exponents of the dilation functions along the dyadic
//! ladder. The data carries a slowly decaying logarithmic transient for the
//! weight families without closed-form partial sums, so the slope extraction
//! fits `y = s n + c + d log2(n + G) + e/(n + G)` over the last half of the
//! ladder, with the offset `G` read off the recorded dilation argmax. The
//! fit is exact on exactly-linear data and removes the transient to well
//! inside the documented tolerances where plain least squares does not.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::FiniteSeq;
use crate::spaces::{OrliczGenerator, SpaceDescriptor, WeightGenerator};

/// Caps beyond this many weight terms are refused outright.
const INDEX_SUM_CAP: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexMethod {
    ClosedForm,
    SlopeRegression,
    GridExtremum,
}

/// A fundamental-index estimate in `[0, 1]` with its method and residual.
#[derive(Debug, Clone, Serialize)]
pub struct IndexEstimate {
    pub value: f64,
    pub method: IndexMethod,
    pub n_cap: u32,
    pub m_cap: u64,
    /// RMS regression residual, or the grid-refinement delta for grid
    /// extrema.
    pub residual: f64,
}

impl IndexEstimate {
    fn clamped(value: f64, method: IndexMethod, n_cap: u32, m_cap: u64, residual: f64) -> Self {
        IndexEstimate {
            value: value.clamp(0.0, 1.0),
            method,
            n_cap,
            m_cap,
            residual,
        }
    }
}

/// `phi_E(n)`, via the closed form of each family.
pub fn fundamental_function(space: &SpaceDescriptor, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("fundamental function needs n >= 1"));
    }
    match space {
        SpaceDescriptor::Lp { p } => Ok(power_phi(n, *p)),
        SpaceDescriptor::Lpq { p, .. } => Ok(power_phi(n, *p)),
        SpaceDescriptor::LorentzLambda { q, weight } => {
            if let Some(len) = weight.explicit_len() {
                if n > len as u64 {
                    return Err(Error::limit(format!(
                        "fundamental function at {n} beyond explicit weight length {len}"
                    )));
                }
            }
            Ok(weight.partial_sum(n).powf(1.0 / q))
        }
        SpaceDescriptor::Orlicz { n: gen } => Ok(1.0 / gen.inverse(1.0 / n as f64)?),
    }
}

/// `phi_E(n)` evaluated as the norm of the flat vector; the slow path that
/// cross-checks the closed forms.
pub fn fundamental_function_by_norm(space: &SpaceDescriptor, n: usize) -> Result<f64> {
    space.norm(&FiniteSeq::ones(n))
}

fn power_phi(n: u64, p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else {
        (n as f64).powf(1.0 / p)
    }
}

/// Truncated dilation functions
/// `(M0(n), Minf(n)) = (sup_m phi(m)/phi(mn), sup_m phi(mn)/phi(m))`
/// over `m <= m_cap`; lower bounds of the true suprema.
pub fn dilation_functions(space: &SpaceDescriptor, n: u64, m_cap: u64) -> Result<(f64, f64)> {
    let (m0, minf) = dilation_with_argmax(space, n, m_cap)?;
    Ok((m0.0, minf.0))
}

/// Dilation suprema together with the maximizing `m`, which the index
/// regression uses as its offset hint.
fn dilation_with_argmax(
    space: &SpaceDescriptor,
    n: u64,
    m_cap: u64,
) -> Result<((f64, u64), (f64, u64))> {
    if n == 0 || m_cap == 0 {
        return Err(Error::invalid("dilation needs n >= 1 and m_cap >= 1"));
    }
    let top = m_cap
        .checked_mul(n)
        .filter(|t| *t <= INDEX_SUM_CAP)
        .ok_or_else(|| {
            Error::limit(format!("dilation index m_cap * n = {m_cap} * {n} beyond cap"))
        })?;
    if let SpaceDescriptor::LorentzLambda { weight, .. } = space {
        if let Some(len) = weight.explicit_len() {
            if top > len as u64 {
                return Err(Error::limit(format!(
                    "dilation index {top} beyond explicit weight length {len}"
                )));
            }
        }
    }
    let mut best0 = (f64::NEG_INFINITY, 1u64);
    let mut bestinf = (f64::NEG_INFINITY, 1u64);
    for m in 1..=m_cap {
        let phi_m = fundamental_function(space, m)?;
        let phi_mn = fundamental_function(space, m * n)?;
        let r0 = phi_m / phi_mn;
        let rinf = phi_mn / phi_m;
        if r0 > best0.0 {
            best0 = (r0, m);
        }
        if rinf > bestinf.0 {
            bestinf = (rinf, m);
        }
    }
    Ok((best0, bestinf))
}

/// Fundamental indices `(mu, nu)` of the space from the dyadic dilation
/// ladder `n = 1..=n_cap` with suprema truncated at `m_cap`.
pub fn fundamental_indices(
    space: &SpaceDescriptor,
    n_cap: u32,
    m_cap: u64,
) -> Result<(IndexEstimate, IndexEstimate)> {
    if n_cap < 4 {
        return Err(Error::invalid("fundamental indices need n_cap >= 4"));
    }
    let mut y0 = Vec::with_capacity(n_cap as usize);
    let mut yinf = Vec::with_capacity(n_cap as usize);
    let mut g0 = 1.0f64;
    let mut ginf = 1.0f64;
    for n in 1..=n_cap {
        let (b0, binf) = dilation_with_argmax(space, 1u64 << n, m_cap)?;
        y0.push(-(b0.0.log2()));
        yinf.push(binf.0.log2());
        if n == n_cap {
            g0 = ((2 * b0.1) as f64).log2();
            ginf = ((2 * binf.1) as f64).log2();
        }
    }
    let (mu, res0) = slope_estimate(&y0, g0);
    let (nu, resinf) = slope_estimate(&yinf, ginf);
    Ok((
        IndexEstimate::clamped(mu, IndexMethod::SlopeRegression, n_cap, m_cap, res0),
        IndexEstimate::clamped(nu, IndexMethod::SlopeRegression, n_cap, m_cap, resinf),
    ))
}

/// Lorentz indices straight from the partial-sum ratio formulas
/// `sup_j (S_j / S_{2^n j})^{1/q}` and `sup_j (S_{2^n j} / S_j)^{1/q}`.
pub fn lorentz_indices(
    q: f64,
    weight: &WeightGenerator,
    n_cap: u32,
    j_cap: u64,
) -> Result<(IndexEstimate, IndexEstimate)> {
    if n_cap < 4 || j_cap < 4 {
        return Err(Error::invalid("lorentz indices need n_cap >= 4, j_cap >= 4"));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::invalid(format!(
            "lorentz indices need finite q >= 1, got {q}"
        )));
    }
    let top = j_cap
        .checked_mul(1u64 << n_cap)
        .filter(|t| *t <= INDEX_SUM_CAP)
        .ok_or_else(|| Error::limit("lorentz index ladder beyond partial-sum cap"))?;
    if let Some(len) = weight.explicit_len() {
        if top > len as u64 {
            return Err(Error::limit(format!(
                "index ladder {top} beyond explicit weight length {len}"
            )));
        }
    }
    let mut y0 = Vec::new();
    let mut yinf = Vec::new();
    let mut g0 = 1.0f64;
    let mut ginf = 1.0f64;
    for n in 1..=n_cap {
        let scale = 1u64 << n;
        let mut best0 = (f64::NEG_INFINITY, 1u64);
        let mut bestinf = (f64::NEG_INFINITY, 1u64);
        for j in 1..=j_cap {
            let sj = weight.partial_sum(j);
            let sjn = weight.partial_sum(j * scale);
            let r0 = sj / sjn;
            let rinf = sjn / sj;
            if r0 > best0.0 {
                best0 = (r0, j);
            }
            if rinf > bestinf.0 {
                bestinf = (rinf, j);
            }
        }
        y0.push(-(best0.0.powf(1.0 / q).log2()));
        yinf.push(bestinf.0.powf(1.0 / q).log2());
        if n == n_cap {
            g0 = ((2 * best0.1) as f64).log2();
            ginf = ((2 * bestinf.1) as f64).log2();
        }
    }
    let (mu, res0) = slope_estimate(&y0, g0);
    let (nu, resinf) = slope_estimate(&yinf, ginf);
    Ok((
        IndexEstimate::clamped(mu, IndexMethod::SlopeRegression, n_cap, j_cap, res0),
        IndexEstimate::clamped(nu, IndexMethod::SlopeRegression, n_cap, j_cap, resinf),
    ))
}

/// Orlicz fundamental indices from the two-sided growth exponent
/// `r(s, t) = log(N(st)/N(s)) / log t`.
///
/// The admissible-exponent conditions constrain `r` only as `t -> 0`, so the
/// extrema are taken over the `s`-grid at three trailing depths of `t` and
/// extrapolated against `r(u) = P - (gamma + beta ln u)/u`, `u = |ln t|`,
/// which is the exact transient shape of the power-log family and degrades
/// to a no-op on exact powers. Returns `(mu, nu) = (1/P_sup, 1/P_inf)`.
pub fn orlicz_indices(
    gen: &OrliczGenerator,
    grid: usize,
) -> Result<(IndexEstimate, IndexEstimate)> {
    if grid < 100 {
        return Err(Error::invalid("orlicz indices need grid >= 100"));
    }
    let (p_inf, p_sup) = orlicz_limits(gen, grid);
    let (p_inf2, p_sup2) = orlicz_limits(gen, 2 * grid);
    let delta = (p_inf - p_inf2).abs().max((p_sup - p_sup2).abs());
    let mu = 1.0 / p_sup2;
    let nu = 1.0 / p_inf2;
    Ok((
        IndexEstimate::clamped(mu, IndexMethod::GridExtremum, grid as u32, 0, delta),
        IndexEstimate::clamped(nu, IndexMethod::GridExtremum, grid as u32, 0, delta),
    ))
}

/// Extrapolated limits of `(inf_s r, sup_s r)` as `t` deepens; grid floor
/// 1e-8, below which the log factors start losing double-precision accuracy.
fn orlicz_limits(gen: &OrliczGenerator, grid: usize) -> (f64, f64) {
    let u_max = -(1e-8f64.ln());
    let depths = [u_max / 2.25, u_max / 1.5, u_max];
    let mut mins = Vec::with_capacity(3);
    let mut maxs = Vec::with_capacity(3);
    for &u in &depths {
        let t = (-u).exp();
        let ln_t = t.ln();
        let mut rmin = f64::INFINITY;
        let mut rmax = f64::NEG_INFINITY;
        let mut scan = |s: f64| {
            let r = ((gen.eval(s * t)).ln() - (gen.eval(s)).ln()) / ln_t;
            rmin = rmin.min(r);
            rmax = rmax.max(r);
        };
        for i in 0..grid {
            scan(10f64.powf(-8.0 * (1.0 - i as f64 / (grid as f64 - 1.0)) - 1e-9));
        }
        // The transient model assumes samples hugging s = 1.
        scan(1.0 - 1e-3);
        scan(1.0 - 1e-6);
        mins.push(rmin);
        maxs.push(rmax);
    }
    (
        extrapolate_depth(&depths, &mins),
        extrapolate_depth(&depths, &maxs),
    )
}

/// The transient of `inf_s r` / `sup_s r` is carried by the two corners of
/// the `s`-grid: `ln(1 + u)/u` at `s -> 1` and `ln(1 + u/K)/u` at the grid
/// floor, `K = 1 + |ln floor|`. Fitting `P - c1 g1(u) - c2 g2(u)` through
/// three depths is exact on both shapes and a no-op on constant data.
fn extrapolate_depth(u: &[f64; 3], r: &[f64]) -> f64 {
    let spread = r
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if spread.1 - spread.0 < 1e-12 {
        return r[2];
    }
    let k = 1.0 + 8.0 * 10f64.ln();
    let g1 = |x: f64| (1.0 + x).ln() / x;
    let g2 = |x: f64| (1.0 + x / k).ln() / x;
    let a11 = g1(u[0]) - g1(u[2]);
    let a12 = g2(u[0]) - g2(u[2]);
    let b1 = r[2] - r[0];
    let a21 = g1(u[1]) - g1(u[2]);
    let a22 = g2(u[1]) - g2(u[2]);
    let b2 = r[2] - r[1];
    let det = a11 * a22 - a12 * a21;
    if det.abs() < 1e-14 {
        return r[2];
    }
    let c1 = (b1 * a22 - a12 * b2) / det;
    let c2 = (a11 * b2 - b1 * a21) / det;
    r[2] + c1 * g1(u[2]) + c2 * g2(u[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexProvenance {
    ClosedForm,
    Estimated,
}

/// Grobler-Dodds indices `(delta, sigma)` with per-value provenance.
#[derive(Debug, Clone, Serialize)]
pub struct GroblerDodds {
    pub delta: f64,
    pub sigma: f64,
    pub delta_provenance: IndexProvenance,
    pub sigma_provenance: IndexProvenance,
    pub note: String,
}

/// Default ladder caps.
pub const DEFAULT_N_CAP: u32 = 14;
pub const DEFAULT_M_CAP: u64 = 1 << 12;
pub const DEFAULT_ORLICZ_GRID: usize = 200;

pub fn grobler_dodds(space: &SpaceDescriptor) -> Result<GroblerDodds> {
    match space {
        SpaceDescriptor::Lp { p } => Ok(GroblerDodds {
            delta: *p,
            sigma: *p,
            delta_provenance: IndexProvenance::ClosedForm,
            sigma_provenance: IndexProvenance::ClosedForm,
            note: "l_p satisfies exact upper and lower p-estimates".into(),
        }),
        SpaceDescriptor::Lpq { p, q } => Ok(GroblerDodds {
            delta: p.min(*q),
            sigma: p.max(*q),
            delta_provenance: IndexProvenance::ClosedForm,
            sigma_provenance: IndexProvenance::ClosedForm,
            note: "delta = min(p,q), sigma = max(p,q)".into(),
        }),
        SpaceDescriptor::LorentzLambda { q, weight } => {
            let (mu, _) = lorentz_indices(*q, weight, DEFAULT_N_CAP, DEFAULT_M_CAP)?;
            let sigma_raw = 1.0 / mu.value;
            // sigma >= delta always; the estimate is clamped to respect it.
            let sigma = sigma_raw.max(*q);
            Ok(GroblerDodds {
                delta: *q,
                sigma,
                delta_provenance: IndexProvenance::ClosedForm,
                sigma_provenance: IndexProvenance::Estimated,
                note: format!(
                    "delta = q; sigma = 1/mu with mu estimated as {:.6}",
                    mu.value
                ),
            })
        }
        SpaceDescriptor::Orlicz { n } => {
            let (mu, nu) = orlicz_indices(n, DEFAULT_ORLICZ_GRID)?;
            let delta = 1.0 / nu.value;
            let sigma = (1.0 / mu.value).max(delta);
            Ok(GroblerDodds {
                delta,
                sigma,
                delta_provenance: IndexProvenance::Estimated,
                sigma_provenance: IndexProvenance::Estimated,
                note: format!(
                    "delta = 1/nu, sigma = 1/mu with (mu, nu) estimated as ({:.6}, {:.6})",
                    mu.value, nu.value
                ),
            })
        }
    }
}

/// Slope of a dyadic-ladder sequence `y_n`, `n = 1..`, with its fit
/// residual. Last-half least squares against `{n, 1, log2(n+g), 1/(n+g)}`;
/// plain least squares when the window is too short for the full model.
fn slope_estimate(ys: &[f64], g: f64) -> (f64, f64) {
    let n = ys.len();
    let window: Vec<(f64, f64)> = (n / 2..n).map(|i| ((i + 1) as f64, ys[i])).collect();
    // Exactly linear ladders (closed-form fundamental functions) short-cut
    // to the plain line, which is well conditioned.
    let scale = window.iter().fold(1.0f64, |m, p| m.max(p.1.abs()));
    let line = ls_line(&window);
    if line.1 <= 1e-11 * scale {
        return line;
    }
    if window.len() >= 5 {
        if let Some((slope, residual)) = fit_model(&window, g) {
            return (slope, residual);
        }
    }
    line
}

fn fit_model(pts: &[(f64, f64)], g: f64) -> Option<(f64, f64)> {
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for &(x, y) in pts {
        let row = [x, 1.0, (x + g).log2(), 1.0 / (x + g)];
        for r in 0..4 {
            for c in 0..4 {
                ata[r][c] += row[r] * row[c];
            }
            atb[r] += row[r] * y;
        }
    }
    let coef = solve4(ata, atb)?;
    let mut ss = 0.0;
    for &(x, y) in pts {
        let fit = coef[0] * x + coef[1] + coef[2] * (x + g).log2() + coef[3] / (x + g);
        ss += (y - fit) * (y - fit);
    }
    Some((coef[0], (ss / pts.len() as f64).sqrt()))
}

fn solve4(mut m: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&r1, &r2| {
            m[r1][col].abs().partial_cmp(&m[r2][col].abs()).unwrap()
        })?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..4 {
            let f = m[r][col] / m[col][col];
            let pivot_row = m[col];
            for (c, entry) in m[r].iter_mut().enumerate().skip(col) {
                *entry -= f * pivot_row[c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for r in (0..4).rev() {
        let mut acc = b[r];
        for c in (r + 1)..4 {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Some(x)
}

fn ls_line(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let icept = (sy - slope * sx) / n;
    let mut ss = 0.0;
    for &(x, y) in pts {
        let e = y - slope * x - icept;
        ss += e * e;
    }
    (slope, (ss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: f64) -> SpaceDescriptor {
        SpaceDescriptor::lp(p).unwrap()
    }

    #[test]
    fn fundamental_function_closed_forms() {
        assert_eq!(fundamental_function(&lp(1.0), 7).unwrap(), 7.0);
        let lorentz =
            SpaceDescriptor::lorentz(2.0, WeightGenerator::power_alpha(0.5).unwrap()).unwrap();
        // n^{alpha/q} = n^{1/4}.
        assert!((fundamental_function(&lorentz, 16).unwrap() - 2.0).abs() < 1e-12);
        let orlicz = SpaceDescriptor::orlicz(OrliczGenerator::power(3.0).unwrap()).unwrap();
        assert!((fundamental_function(&orlicz, 8).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_agrees_with_norm_path() {
        let spaces = [
            lp(1.5),
            SpaceDescriptor::lpq(2.0, 1.0).unwrap(),
            SpaceDescriptor::lpq(2.0, f64::INFINITY).unwrap(),
            SpaceDescriptor::lorentz(2.0, WeightGenerator::inv_log()).unwrap(),
            SpaceDescriptor::orlicz(OrliczGenerator::power_log(2.0, 1.0).unwrap()).unwrap(),
        ];
        for space in &spaces {
            for n in [1u64, 2, 5, 17, 64] {
                let fast = fundamental_function(space, n).unwrap();
                let slow = fundamental_function_by_norm(space, n as usize).unwrap();
                assert!(
                    (fast - slow).abs() <= 1e-9 * fast.max(1.0),
                    "{space} at {n}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn phi_monotone_and_concave_ratio() {
        let spaces = [
            lp(2.0),
            SpaceDescriptor::lorentz(1.0, WeightGenerator::inv_log()).unwrap(),
            SpaceDescriptor::orlicz(OrliczGenerator::power_log(2.0, -1.0).unwrap()).unwrap(),
        ];
        for space in &spaces {
            let mut prev = fundamental_function(space, 1).unwrap();
            let mut prev_ratio = prev;
            let mut prev_n = 1u64;
            for n in [2u64, 3, 5, 9, 17, 40, 97, 311, 1009, 4093, 10_000] {
                let phi = fundamental_function(space, n).unwrap();
                assert!(phi + 1e-12 >= prev, "{space}: phi not monotone at {n}");
                let ratio = phi / n as f64;
                assert!(
                    ratio <= prev_ratio * (1.0 + 1e-9),
                    "{space}: phi(n)/n increased from {prev_n} to {n}"
                );
                prev = phi;
                prev_ratio = ratio;
                prev_n = n;
            }
        }
    }

    #[test]
    fn dilation_exact_for_lp() {
        let space = lp(2.0);
        for m_cap in [1u64, 16, 256] {
            let (m0, minf) = dilation_functions(&space, 4, m_cap).unwrap();
            assert!((minf - 2.0).abs() < 1e-12);
            assert!((m0 - 0.5).abs() < 1e-12);
        }
        let (m0, minf) = dilation_functions(&space, 1, 64).unwrap();
        assert_eq!((m0, minf), (1.0, 1.0));
    }

    #[test]
    fn dilation_matches_direct_scan() {
        let space = SpaceDescriptor::lorentz(1.0, WeightGenerator::inv_log()).unwrap();
        let m_cap = 10_000u64;
        let (_, minf) = dilation_functions(&space, 2, m_cap).unwrap();
        let w = WeightGenerator::inv_log();
        let mut direct: f64 = 0.0;
        for m in 1..=m_cap {
            direct = direct.max(w.partial_sum(2 * m) / w.partial_sum(m));
        }
        assert!((minf - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn dilation_monotone_in_m_cap() {
        let space = SpaceDescriptor::lorentz(2.0, WeightGenerator::inv_log()).unwrap();
        let mut prev = (0.0, 0.0);
        for m_cap in [4u64, 16, 64, 256] {
            let cur = dilation_functions(&space, 8, m_cap).unwrap();
            assert!(cur.0 >= prev.0 && cur.1 >= prev.1);
            prev = cur;
        }
    }

    #[test]
    fn dilation_resource_limit() {
        let space = lp(2.0);
        assert!(matches!(
            dilation_functions(&space, 1 << 40, 1 << 40),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn indices_exact_for_lp() {
        for p in [1.0, 1.5, 2.0, 3.0] {
            let (mu, nu) = fundamental_indices(&lp(p), 12, 64).unwrap();
            assert!((mu.value - 1.0 / p).abs() < 1e-6, "mu for p={p}: {}", mu.value);
            assert!((nu.value - 1.0 / p).abs() < 1e-6, "nu for p={p}: {}", nu.value);
        }
        // l_inf has zero indices.
        let (mu, nu) = fundamental_indices(&lp(f64::INFINITY), 12, 64).unwrap();
        assert_eq!((mu.value, nu.value), (0.0, 0.0));
    }

    #[test]
    fn indices_power_alpha() {
        for (alpha, q) in [(0.5, 1.0), (0.5, 2.0), (0.8, 1.0), (0.8, 2.0)] {
            let w = WeightGenerator::power_alpha(alpha).unwrap();
            let space = SpaceDescriptor::lorentz(q, w.clone()).unwrap();
            let truth = alpha / q;
            let (mu, nu) = fundamental_indices(&space, DEFAULT_N_CAP, DEFAULT_M_CAP).unwrap();
            assert!((mu.value - truth).abs() <= 0.02, "mu {}", mu.value);
            assert!((nu.value - truth).abs() <= 0.02, "nu {}", nu.value);
            let (mu2, nu2) = lorentz_indices(q, &w, DEFAULT_N_CAP, DEFAULT_M_CAP).unwrap();
            assert!((mu2.value - truth).abs() <= 1e-9);
            assert!((nu2.value - truth).abs() <= 1e-9);
        }
    }

    #[test]
    fn indices_invlog() {
        for q in [1.0, 2.0] {
            let w = WeightGenerator::inv_log();
            let space = SpaceDescriptor::lorentz(q, w.clone()).unwrap();
            let truth = 1.0 / q;
            let (mu, nu) = fundamental_indices(&space, DEFAULT_N_CAP, DEFAULT_M_CAP).unwrap();
            assert!((mu.value - truth).abs() <= 0.03, "mu {} truth {truth}", mu.value);
            assert!((nu.value - truth).abs() <= 0.03, "nu {} truth {truth}", nu.value);
            // Formula route agrees with the dilation route.
            let (mu2, nu2) = lorentz_indices(q, &w, DEFAULT_N_CAP, DEFAULT_M_CAP).unwrap();
            assert!((mu.value - mu2.value).abs() <= 0.01);
            assert!((nu.value - nu2.value).abs() <= 0.01);
            assert!(mu.value <= nu.value + 0.01);
        }
    }

    #[test]
    fn indices_constant_weight() {
        let w = WeightGenerator::constant();
        let (mu, nu) = lorentz_indices(2.0, &w, 12, 256).unwrap();
        assert!((mu.value - 0.5).abs() < 1e-9);
        assert!((nu.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn orlicz_indices_power_exact() {
        for p in [1.0, 2.0, 3.0] {
            let (mu, nu) = orlicz_indices(&OrliczGenerator::power(p).unwrap(), 200).unwrap();
            assert!((mu.value - 1.0 / p).abs() < 1e-9);
            assert!((nu.value - 1.0 / p).abs() < 1e-9);
            assert!(mu.residual < 1e-9);
        }
    }

    #[test]
    fn orlicz_indices_power_log() {
        for (p, a) in [
            (2.0, 1.0),
            (2.0, -1.0),
            (3.0, 1.0),
            (3.0, -1.0),
            (1.0, -1.0),
        ] {
            let gen = OrliczGenerator::power_log(p, a).unwrap();
            let (mu, nu) = orlicz_indices(&gen, 200).unwrap();
            assert!(
                (mu.value - 1.0 / p).abs() <= 0.02,
                "mu for ({p},{a}): {}",
                mu.value
            );
            assert!(
                (nu.value - 1.0 / p).abs() <= 0.02,
                "nu for ({p},{a}): {}",
                nu.value
            );
            assert!(mu.residual < 0.01, "refinement delta {}", mu.residual);
            assert!(mu.value <= nu.value + 0.01);
        }
    }

    #[test]
    fn grobler_dodds_families() {
        let g = grobler_dodds(&SpaceDescriptor::lpq(3.0, 2.0).unwrap()).unwrap();
        assert_eq!((g.delta, g.sigma), (2.0, 3.0));
        let g = grobler_dodds(&lp(2.5)).unwrap();
        assert_eq!((g.delta, g.sigma), (2.5, 2.5));
        let w = WeightGenerator::power_alpha(0.5).unwrap();
        let g = grobler_dodds(&SpaceDescriptor::lorentz(2.0, w).unwrap()).unwrap();
        assert_eq!(g.delta, 2.0);
        assert!((g.sigma - 4.0).abs() < 0.2, "sigma {}", g.sigma);
        let g = grobler_dodds(
            &SpaceDescriptor::orlicz(OrliczGenerator::power_log(2.0, 1.0).unwrap()).unwrap(),
        )
        .unwrap();
        assert!((g.delta - 2.0).abs() < 0.1);
        assert!((g.sigma - 2.0).abs() < 0.1);
        assert!(g.delta <= g.sigma);
    }
}
