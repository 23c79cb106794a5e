//! The pressure equation t(beta), its Legendre transform, and the
//! spectrum range.
//!
//! `solve_t` inverts P(t*phi + beta*psi) = 0 by bisection (pressure is
//! strictly decreasing in t because phi < 0). The Legendre spectrum is
//! computed twice on purpose: parametrically as f = t + beta*alpha
//! along the curve, and directly as the infimum of t(b) + b*alpha over
//! the grid; the two routes must agree within the grid-curvature
//! tolerance or the curve is rejected.

use crate::error::{Error, Result};
use crate::symbolic::PotentialSpec;
use crate::thermo::{equilibrium_integrals, spectral_data, CombinedPotential};
use rayon::prelude::*;

/// Residual target for the pressure root.
pub const SOLVE_RESIDUAL: f64 = 1e-10;

const CENTRAL_DIFF_H: f64 = 1e-4;

fn combined_pressure_fn(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    depth: usize,
) -> Result<impl Fn(f64, f64) -> Result<f64>> {
    if depth == 0 {
        return Err(Error::invalid("pressure depth must be >= 1"));
    }
    let s = phi.alphabet().size();
    if psi.alphabet() != phi.alphabet() {
        return Err(Error::invalid("phi and psi must live on the same alphabet"));
    }
    let phi_tab = phi.locally_constant_table(depth)?;
    let psi_tab = psi.locally_constant_table(depth)?;
    if phi_tab.iter().any(|&v| !(v < 0.0)) {
        return Err(Error::invalid(
            "the geometric part must be strictly negative",
        ));
    }
    Ok(move |t: f64, beta: f64| -> Result<f64> {
        let table: Vec<f64> = phi_tab
            .iter()
            .zip(psi_tab.iter())
            .map(|(a, b)| t * a + beta * b)
            .collect();
        Ok(spectral_data(&table, s, depth)?.log_radius)
    })
}

/// Root of a strictly decreasing function, found by bisection from an
/// expanding initial bracket. Returns the point and the residual left
/// there.
pub(crate) fn bisect_root(press: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    // Pressure decreasing in t: find press(lo) > 0 > press(hi).
    let mut lo = -1.0f64;
    let mut hi = 2.0f64;
    let mut p_lo = press(lo)?;
    let mut p_hi = press(hi)?;
    for _ in 0..64 {
        if p_lo > 0.0 {
            break;
        }
        lo -= 2.0 * (hi - lo);
        p_lo = press(lo)?;
    }
    for _ in 0..64 {
        if p_hi < 0.0 {
            break;
        }
        hi += 2.0 * (hi - lo);
        p_hi = press(hi)?;
    }
    if !(p_lo > 0.0 && p_hi < 0.0) {
        return Err(Error::numerical(
            "pressure does not change sign over any expanded bracket",
        ));
    }
    if p_lo == 0.0 {
        return Ok((lo, 0.0));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = press(mid)?;
        if p.abs() <= SOLVE_RESIDUAL || hi - lo <= f64::EPSILON * (1.0 + mid.abs()) {
            return Ok((mid, p));
        }
        if p > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::numerical("pressure root bisection stalled"))
}

/// Root of P(t*phi + beta*psi) = 0, with an error bound derived from
/// the residual and the slope floor |dP/dt| >= |sup phi|.
pub fn solve_t(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    beta: f64,
    depth: usize,
) -> Result<(f64, f64)> {
    let press = combined_pressure_fn(phi, psi, depth)?;
    let (t, residual) = bisect_root(|t| press(t, beta))?;
    let env = phi.depth_envelope(1)?;
    let sup_phi = env.hi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let err = residual.abs() / sup_phi.abs().max(f64::MIN_POSITIVE);
    Ok((t, err))
}

/// Certified enclosure of the root: the same bisection run on the
/// lower and upper envelope pressures. Their roots straddle the true
/// one because envelope pressures straddle the true pressure at every
/// t; each end is widened by the bisection residual over the slope
/// floor |dP/dt| >= |sup phi|.
pub fn solve_t_enclosure(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    beta: f64,
    depth: usize,
) -> Result<(f64, f64)> {
    let s = phi.alphabet().size();
    let ep = phi.depth_envelope(depth)?;
    let eq = psi.depth_envelope(depth)?;
    let sup_phi = ep.hi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(sup_phi < 0.0) {
        return Err(Error::invalid(
            "the geometric part must be strictly negative",
        ));
    }
    let bound = |low_side: bool| -> Result<f64> {
        let press = |t: f64| -> Result<f64> {
            let n = ep.lo.len();
            let mut table = vec![0.0; n];
            for r in 0..n {
                let p = if (t >= 0.0) == low_side {
                    ep.lo[r]
                } else {
                    ep.hi[r]
                };
                let q = if (beta >= 0.0) == low_side {
                    eq.lo[r]
                } else {
                    eq.hi[r]
                };
                table[r] = t * p + beta * q;
            }
            let d = spectral_data(&table, s, depth)?;
            Ok(if low_side { d.cw_lower } else { d.cw_upper })
        };
        let (t, residual) = bisect_root(press)?;
        let slack = (residual.abs() + 1e-12) / sup_phi.abs();
        Ok(if low_side { t - slack } else { t + slack })
    };
    let t_lo = bound(true)?;
    let t_hi = bound(false)?;
    Ok((t_lo.min(t_hi), t_lo.max(t_hi)))
}

#[derive(Clone, Copy, Debug)]
pub struct AlphaSample {
    pub alpha: f64,
    /// Central-difference slope -t'(beta), an independent check on
    /// the integral route.
    pub crosscheck: f64,
}

impl AlphaSample {
    pub fn deviation(&self) -> f64 {
        (self.alpha - self.crosscheck).abs()
    }
}

/// alpha(beta) as a ratio of equilibrium integrals, crosschecked by
/// numerically differentiating t.
pub fn alpha_of_beta(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    beta: f64,
    depth: usize,
) -> Result<AlphaSample> {
    let (t, _) = solve_t(phi, psi, beta, depth)?;
    let f = CombinedPotential::new(phi.clone(), psi.clone(), t, beta)?;
    let (int_phi, int_psi) = equilibrium_integrals(&f, depth)?;
    if !(int_phi < 0.0) {
        return Err(Error::numerical("phi integral must be negative"));
    }
    let alpha = int_psi / int_phi;
    let h = CENTRAL_DIFF_H;
    let (t_plus, _) = solve_t(phi, psi, beta + h, depth)?;
    let (t_minus, _) = solve_t(phi, psi, beta - h, depth)?;
    let crosscheck = -(t_plus - t_minus) / (2.0 * h);
    Ok(AlphaSample { alpha, crosscheck })
}

/// t(beta) and alpha(beta) sampled along a grid.
#[derive(Clone, Debug)]
pub struct PressureCurve {
    pub beta: Vec<f64>,
    pub t: Vec<f64>,
    pub alpha: Vec<f64>,
    /// Per-sample bound on the t error (residual over slope floor).
    pub err: Vec<f64>,
    pub degenerate: bool,
}

impl PressureCurve {
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    fn index_of(&self, beta: f64) -> Option<usize> {
        self.beta.iter().position(|&b| (b - beta).abs() < 1e-12)
    }

    /// Convexity of t and monotonicity of alpha along the grid.
    pub fn validate(&self) -> Result<()> {
        for i in 1..self.len().saturating_sub(1) {
            let second = self.t[i + 1] - 2.0 * self.t[i] + self.t[i - 1];
            if second < -1e-8 {
                return Err(Error::numerical(format!(
                    "pressure curve not convex at beta = {}: second difference {second}",
                    self.beta[i]
                )));
            }
        }
        for i in 1..self.len() {
            if self.alpha[i] > self.alpha[i - 1] + 1e-8 {
                return Err(Error::numerical(format!(
                    "alpha not nonincreasing at beta = {}",
                    self.beta[i]
                )));
            }
        }
        Ok(())
    }
}

/// Solve the pressure equation across a sorted beta grid. Grid points
/// are independent and solved in parallel; results keep grid order.
pub fn pressure_curve(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    grid: &[f64],
    depth: usize,
) -> Result<PressureCurve> {
    if grid.is_empty() {
        return Err(Error::invalid("beta grid is empty"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().any(|b| !b.is_finite()) {
        return Err(Error::invalid("beta grid must be finite and strictly increasing"));
    }
    let rows: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&beta| {
            let (t, err) = solve_t(phi, psi, beta, depth)?;
            let f = CombinedPotential::new(phi.clone(), psi.clone(), t, beta)?;
            let (int_phi, int_psi) = equilibrium_integrals(&f, depth)?;
            if !(int_phi < 0.0) {
                return Err(Error::numerical("phi integral must be negative"));
            }
            Ok((t, int_psi / int_phi, err))
        })
        .collect::<Result<_>>()?;
    let t: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let alpha: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let err: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let spread = alpha.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - alpha.iter().cloned().fold(f64::INFINITY, f64::min);
    let curve = PressureCurve {
        beta: grid.to_vec(),
        t,
        alpha,
        err,
        degenerate: spread <= 1e-6,
    };
    curve.validate()?;
    Ok(curve)
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumSample {
    pub beta: f64,
    pub alpha: f64,
    /// Clamped at zero for reporting.
    pub f: f64,
    /// Raw Legendre value; negative means the level set is empty.
    pub f_raw: f64,
}

#[derive(Clone, Debug)]
pub struct SpectrumCurve {
    pub samples: Vec<SpectrumSample>,
    pub apex: (f64, f64),
    /// Largest gap between the parametric and direct Legendre routes.
    pub direct_max_gap: f64,
}

/// Legendre spectrum from a pressure curve, parametric route checked
/// against the direct infimum route sample by sample.
pub fn legendre_spectrum(curve: &PressureCurve) -> Result<SpectrumCurve> {
    curve.validate()?;
    let i0 = curve
        .index_of(0.0)
        .ok_or_else(|| Error::invalid("beta grid must contain 0"))?;
    if curve.index_of(1.0).is_none() {
        return Err(Error::invalid("beta grid must contain 1"));
    }
    let t0 = curve.t[i0];
    let n = curve.len();
    let mut max_secdiff = 0.0f64;
    for i in 1..n.saturating_sub(1) {
        max_secdiff =
            max_secdiff.max((curve.t[i + 1] - 2.0 * curve.t[i] + curve.t[i - 1]).abs());
    }
    let beta_span = curve
        .beta
        .iter()
        .fold(0.0f64, |acc, b| acc.max(b.abs()));
    // One grid step of curvature plus the alpha-vs-grid-slope
    // mismatch, scaled by how far the tangent gets extrapolated.
    let tol = 2.0 * max_secdiff + 1e-7 * (1.0 + beta_span);

    let mut samples = Vec::with_capacity(n);
    let mut max_gap = 0.0f64;
    for i in 0..n {
        let alpha = curve.alpha[i];
        let f_raw = curve.t[i] + curve.beta[i] * alpha;
        let direct = (0..n)
            .map(|j| curve.t[j] + curve.beta[j] * alpha)
            .fold(f64::INFINITY, f64::min);
        let gap = f_raw - direct;
        if gap < -1e-9 {
            return Err(Error::numerical(
                "direct Legendre route exceeded the parametric value",
            ));
        }
        if gap > tol {
            return Err(Error::numerical(format!(
                "Legendre routes disagree at beta = {}: gap {gap} > tol {tol}",
                curve.beta[i]
            )));
        }
        max_gap = max_gap.max(gap.abs());
        if f_raw > t0 + 1e-8 {
            return Err(Error::numerical(
                "spectrum exceeds the dimension of the attractor",
            ));
        }
        samples.push(SpectrumSample {
            beta: curve.beta[i],
            alpha,
            f: f_raw.max(0.0),
            f_raw,
        });
    }
    Ok(SpectrumCurve {
        samples,
        apex: (curve.alpha[i0], t0),
        direct_max_gap: max_gap,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumRange {
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    /// Extremes of Birkhoff ratios over cycles of length <= L.
    pub cycle: (f64, f64),
    /// alpha at -beta_max and +beta_max.
    pub asymptotic: (f64, f64),
    pub cycle_length: usize,
    pub beta_max: f64,
    pub disagreement: f64,
}

/// Range of attainable alpha by two routes: extremal Birkhoff ratios
/// over short cycles, and the asymptotic slopes of the pressure curve
/// at +-beta_max. Reports the wider hull and how much the routes
/// disagree.
pub fn spectrum_range(
    phi: &PotentialSpec,
    psi: &PotentialSpec,
    cycle_length: usize,
    beta_max: f64,
    depth: usize,
) -> Result<SpectrumRange> {
    if cycle_length == 0 {
        return Err(Error::invalid("cycle length must be >= 1"));
    }
    if !(beta_max > 0.0) {
        return Err(Error::invalid("beta_max must be positive"));
    }
    let alphabet = phi.alphabet();
    let mut cyc_lo = f64::INFINITY;
    let mut cyc_hi = f64::NEG_INFINITY;
    for ell in 1..=cycle_length {
        let count = alphabet.count_words(ell)?;
        let (lo, hi) = (0..count)
            .into_par_iter()
            .map(|r| {
                let w = alphabet.word_from_rank(ell, r);
                let sp = phi.birkhoff_sum_periodic(&w)?;
                let sq = psi.birkhoff_sum_periodic(&w)?;
                if !(sp < 0.0) {
                    return Err(Error::numerical("cycle phi sum must be negative"));
                }
                let ratio = sq / sp;
                Ok((ratio, ratio))
            })
            .try_reduce(
                || (f64::INFINITY, f64::NEG_INFINITY),
                |a, b| Ok((a.0.min(b.0), a.1.max(b.1))),
            )?;
        cyc_lo = cyc_lo.min(lo);
        cyc_hi = cyc_hi.max(hi);
    }
    let plus_side = alpha_of_beta(phi, psi, beta_max, depth)?.alpha;
    let minus_side = alpha_of_beta(phi, psi, -beta_max, depth)?.alpha;
    let (asym_lo, asym_hi) = (plus_side.min(minus_side), plus_side.max(minus_side));
    let disagreement = (cyc_lo - asym_lo).abs().max((cyc_hi - asym_hi).abs());
    Ok(SpectrumRange {
        alpha_minus: cyc_lo.min(asym_lo),
        alpha_plus: cyc_hi.max(asym_hi),
        cycle: (cyc_lo, cyc_hi),
        asymptotic: (asym_lo, asym_hi),
        cycle_length,
        beta_max,
        disagreement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumClass {
    Degenerate,
    Nondegenerate,
}

/// Degenerate means the spectrum collapses to one exponent, which
/// must then equal the attractor dimension t(0).
pub fn classify_spectrum(range: &SpectrumRange, t0: f64) -> Result<SpectrumClass> {
    if range.alpha_plus - range.alpha_minus <= 1e-6 {
        if (range.alpha_minus - t0).abs() > 1e-5 {
            return Err(Error::numerical(format!(
                "degenerate spectrum at alpha = {} does not match t(0) = {t0}",
                range.alpha_minus
            )));
        }
        Ok(SpectrumClass::Degenerate)
    } else {
        Ok(SpectrumClass::Nondegenerate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{BranchMap, IfsSpec};

    fn dyadic_ifs() -> IfsSpec {
        IfsSpec::new(
            vec![
                BranchMap::affine(0.5, 0.0).unwrap(),
                BranchMap::affine(0.5, 0.5).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap()
    }

    fn binomial_parts() -> (PotentialSpec, PotentialSpec) {
        let ifs = dyadic_ifs();
        let a = ifs.alphabet();
        (
            PotentialSpec::geometric(ifs),
            PotentialSpec::symbol_log_weights(a, vec![0.3f64.ln(), 0.7f64.ln()]).unwrap(),
        )
    }

    fn symmetric_parts() -> (PotentialSpec, PotentialSpec) {
        let ifs = dyadic_ifs();
        let a = ifs.alphabet();
        (
            PotentialSpec::geometric(ifs),
            PotentialSpec::symbol_log_weights(a, vec![0.5f64.ln(), 0.5f64.ln()]).unwrap(),
        )
    }

    fn closed_form_t(beta: f64) -> f64 {
        (0.3f64.powf(beta) + 0.7f64.powf(beta)).log2()
    }

    #[test]
    fn solve_t_matches_closed_form_points() {
        let (phi, psi) = binomial_parts();
        let (t0, _) = solve_t(&phi, &psi, 0.0, 1).unwrap();
        let (t1, _) = solve_t(&phi, &psi, 1.0, 1).unwrap();
        let (t2, _) = solve_t(&phi, &psi, 2.0, 1).unwrap();
        assert!((t0 - 1.0).abs() < 1e-9, "t(0) = {t0}");
        assert!(t1.abs() < 1e-9, "t(1) = {t1}");
        assert!((t2 - 0.58f64.log2()).abs() < 1e-9, "t(2) = {t2}");
    }

    #[test]
    fn solve_t_curve_matches_closed_form() {
        let (phi, psi) = binomial_parts();
        let grid: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.5).collect();
        let curve = pressure_curve(&phi, &psi, &grid, 1).unwrap();
        for (b, t) in curve.beta.iter().zip(curve.t.iter()) {
            assert!(
                (t - closed_form_t(*b)).abs() < 1e-9,
                "beta {b}: {t} vs {}",
                closed_form_t(*b)
            );
        }
        assert!(!curve.degenerate);
    }

    #[test]
    fn moran_dimension() {
        let ifs = IfsSpec::new(
            vec![
                BranchMap::affine(1.0 / 3.0, 0.0).unwrap(),
                BranchMap::affine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let a = ifs.alphabet();
        let phi = PotentialSpec::geometric(ifs);
        let psi = PotentialSpec::symbol_log_weights(a, vec![-(2.0f64.ln()); 2]).unwrap();
        let (t0, _) = solve_t(&phi, &psi, 0.0, 1).unwrap();
        assert!((t0 - 2.0f64.ln() / 3.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn alpha_routes_agree() {
        let (phi, psi) = binomial_parts();
        let a0 = alpha_of_beta(&phi, &psi, 0.0, 1).unwrap();
        let expect0 = (0.3f64.ln() + 0.7f64.ln()) / (2.0 * 0.5f64.ln());
        assert!((a0.alpha - expect0).abs() < 1e-9, "alpha(0) = {}", a0.alpha);
        assert!(a0.deviation() < 1e-5);

        let a1 = alpha_of_beta(&phi, &psi, 1.0, 1).unwrap();
        let expect1 = (0.3 * 0.3f64.ln() + 0.7 * 0.7f64.ln()) / 0.5f64.ln();
        assert!((a1.alpha - expect1).abs() < 1e-9);
        assert!((a1.alpha - 0.881291).abs() < 1e-6);
        assert!(a1.deviation() < 1e-5);
    }

    #[test]
    fn symmetric_alpha_is_one() {
        let (phi, psi) = symmetric_parts();
        for beta in [-2.0, 0.0, 1.0, 3.0] {
            let a = alpha_of_beta(&phi, &psi, beta, 1).unwrap();
            assert!((a.alpha - 1.0).abs() < 1e-10, "beta {beta}");
        }
    }

    #[test]
    fn certified_enclosure_contains_root() {
        let (phi, psi) = binomial_parts();
        let (lo, hi) = solve_t_enclosure(&phi, &psi, 2.0, 1).unwrap();
        let truth = closed_form_t(2.0);
        assert!(lo <= truth + 1e-12 && truth <= hi + 1e-12, "[{lo}, {hi}]");
        assert!(hi - lo < 1e-6);
    }

    #[test]
    fn legendre_spectrum_shape() {
        let (phi, psi) = binomial_parts();
        let grid: Vec<f64> = (-30..=30).map(|k| k as f64 * 0.1).collect();
        let curve = pressure_curve(&phi, &psi, &grid, 1).unwrap();
        let spec = legendre_spectrum(&curve).unwrap();
        let (a0, t0) = spec.apex;
        assert!((t0 - 1.0).abs() < 1e-9);
        let apex_sample = spec
            .samples
            .iter()
            .find(|s| (s.alpha - a0).abs() < 1e-12)
            .unwrap();
        assert!((apex_sample.f - 1.0).abs() < 1e-9);
        // Tangency to the diagonal at beta = 1.
        let s1 = spec.samples.iter().find(|s| (s.beta - 1.0).abs() < 1e-12).unwrap();
        assert!((s1.f - s1.alpha).abs() < 1e-8, "f {} alpha {}", s1.f, s1.alpha);
        for s in &spec.samples {
            assert!(s.f_raw <= t0 + 1e-8);
            assert!(s.f >= 0.0);
        }
        assert!(spec.direct_max_gap < 1e-3);
    }

    #[test]
    fn symmetric_spectrum_collapses() {
        let (phi, psi) = symmetric_parts();
        let grid: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.25).collect();
        let curve = pressure_curve(&phi, &psi, &grid, 1).unwrap();
        assert!(curve.degenerate);
        let spec = legendre_spectrum(&curve).unwrap();
        // f = t + beta inherits the solver residual scaled by beta.
        for s in &spec.samples {
            assert!((s.alpha - 1.0).abs() < 1e-10);
            assert!((s.f - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn range_and_classification() {
        let (phi, psi) = binomial_parts();
        let r = spectrum_range(&phi, &psi, 1, 20.0, 1).unwrap();
        let lo = 0.7f64.ln() / 0.5f64.ln();
        let hi = 0.3f64.ln() / 0.5f64.ln();
        assert!((r.cycle.0 - lo).abs() < 1e-12);
        assert!((r.cycle.1 - hi).abs() < 1e-12);
        assert!((r.asymptotic.0 - lo).abs() < 5e-3);
        assert!((r.asymptotic.1 - hi).abs() < 5e-3);
        assert!(r.alpha_minus <= lo && r.alpha_plus >= hi);
        assert!(r.disagreement < 1e-2);
        let (t0, _) = solve_t(&phi, &psi, 0.0, 1).unwrap();
        assert_eq!(
            classify_spectrum(&r, t0).unwrap(),
            SpectrumClass::Nondegenerate
        );
    }

    #[test]
    fn degenerate_ranges_sit_at_the_dimension() {
        let (phi, psi) = symmetric_parts();
        let r = spectrum_range(&phi, &psi, 2, 10.0, 1).unwrap();
        assert!(r.alpha_plus - r.alpha_minus <= 1e-6);
        assert_eq!(
            classify_spectrum(&r, 1.0).unwrap(),
            SpectrumClass::Degenerate
        );

        // psi proportional to phi: cohomologous, degenerate at t(0).
        let ifs = IfsSpec::new(
            vec![
                BranchMap::affine(1.0 / 3.0, 0.0).unwrap(),
                BranchMap::affine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let a = ifs.alphabet();
        let phi = PotentialSpec::geometric(ifs);
        let psi = PotentialSpec::symbol_log_weights(a, vec![-(2.0f64.ln()); 2]).unwrap();
        let r = spectrum_range(&phi, &psi, 2, 15.0, 1).unwrap();
        let t0 = 2.0f64.ln() / 3.0f64.ln();
        assert!((r.alpha_minus - t0).abs() < 1e-9);
        assert_eq!(
            classify_spectrum(&r, t0).unwrap(),
            SpectrumClass::Degenerate
        );
    }
}
