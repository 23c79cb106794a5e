//! The coding-preserving map between two expanding systems: read a
//! point's digits under the base system, reinterpret them in the
//! target system. When the target tiles [0, 1] this map coincides
//! with a distribution function, and its Hoelder spectrum is a
//! pressure-equation spectrum with both potentials geometric.

use crate::distribution::distribution_function;
use crate::error::{Error, Result};
use crate::ifs::IfsSpec;
use crate::spectrum::{legendre_spectrum, pressure_curve, PressureCurve, SpectrumCurve};
use crate::symbolic::{PotentialSpec, Word};
use crate::thermo::MarkovMeasure;

const TILING_TOL: f64 = 1e-12;

/// Base system (attractor may have gaps) and a target system whose
/// branch images tile [0, 1] with touching endpoints.
#[derive(Clone, Debug)]
pub struct ConjugacyPair {
    ifs_f: IfsSpec,
    ifs_g: IfsSpec,
    /// Leftmost and rightmost attractor points of the base system.
    base_span: (f64, f64),
}

impl ConjugacyPair {
    pub fn new(ifs_f: IfsSpec, ifs_g: IfsSpec) -> Result<Self> {
        if ifs_f.alphabet() != ifs_g.alphabet() {
            return Err(Error::invalid(
                "base and target must have the same number of branches",
            ));
        }
        let (g_lo, g_hi) = ifs_g.hull();
        if g_lo.abs() > TILING_TOL || (g_hi - 1.0).abs() > TILING_TOL {
            return Err(Error::invalid("target hull must be [0, 1]"));
        }
        let gap = ifs_g.tiling_gap();
        if gap > TILING_TOL {
            return Err(Error::invalid(format!(
                "target branch images leave gaps of size {gap:.3e}"
            )));
        }
        let a = ifs_f.alphabet();
        let s = a.size() as u8;
        let lo = ifs_f.composition_fixed_point(&Word::new(&a, vec![1])?)?;
        let hi = ifs_f.composition_fixed_point(&Word::new(&a, vec![s])?)?;
        Ok(ConjugacyPair {
            ifs_f,
            ifs_g,
            base_span: (lo, hi),
        })
    }

    pub fn base(&self) -> &IfsSpec {
        &self.ifs_f
    }

    pub fn target(&self) -> &IfsSpec {
        &self.ifs_g
    }

    /// Geometric potentials of the two systems, the axes of the
    /// conjugacy pressure equation.
    pub fn potentials(&self) -> (PotentialSpec, PotentialSpec) {
        (
            PotentialSpec::geometric(self.ifs_f.clone()),
            PotentialSpec::geometric(self.ifs_g.clone()),
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ThetaSample {
    pub x: f64,
    pub value: f64,
    pub error: f64,
}

/// Digits of x under the base system, re-read as a target cylinder.
/// Returns its midpoint and half-diameter. Points left or right of
/// the base attractor clamp to 0 or 1 (monotone extension); interior
/// gap points keep the gap error from the digit decoder. Boundary
/// points carry two codings whose target cylinders must touch; the
/// enclosure hull of both is returned.
pub fn theta(pair: &ConjugacyPair, x: f64, depth: usize) -> Result<ThetaSample> {
    if depth == 0 {
        return Err(Error::invalid("depth must be >= 1"));
    }
    let (hull_lo, hull_hi) = pair.ifs_f.hull();
    if !(x >= hull_lo && x <= hull_hi) {
        return Err(Error::invalid(format!("x = {x} outside the base hull")));
    }
    let (span_lo, span_hi) = pair.base_span;
    if x <= span_lo {
        return Ok(ThetaSample { x, value: 0.0, error: 0.0 });
    }
    if x >= span_hi {
        return Ok(ThetaSample { x, value: 1.0, error: 0.0 });
    }
    let digits = pair.ifs_f.digits_of_point(x, depth)?;
    let first = pair.ifs_g.cylinder_interval(&digits.primary);
    let (mut lo, mut hi) = (first.cert_lo(), first.cert_hi());
    if let Some(second) = &digits.secondary {
        let other = pair.ifs_g.cylinder_interval(second);
        if other.cert_lo() > hi + TILING_TOL || lo > other.cert_hi() + TILING_TOL {
            return Err(Error::numerical(format!(
                "boundary codings of x = {x} map to disjoint target cylinders",
            )));
        }
        lo = lo.min(other.cert_lo());
        hi = hi.max(other.cert_hi());
    }
    Ok(ThetaSample {
        x,
        value: 0.5 * (lo + hi),
        error: 0.5 * (hi - lo),
    })
}

/// The same map evaluated as the distribution function of the target
/// Gibbs measure pushed through the base coding. Returns the value
/// and its deviation from [`theta`], which must stay within the two
/// error fields (plus a measure-approximation term when the target
/// potential has no exact finite depth).
pub fn theta_as_distribution(
    pair: &ConjugacyPair,
    x: f64,
    depth: usize,
) -> Result<(f64, f64)> {
    let psi_g = PotentialSpec::geometric(pair.ifs_g.clone());
    let exact = psi_g.value_depth();
    let m = exact.unwrap_or_else(|| depth.min(6)).max(1);
    let mu = MarkovMeasure::new(&psi_g, m)?;
    let fs = distribution_function(&mu, &pair.ifs_f, x, depth)?;
    let th = theta(pair, x, depth)?;
    let residual = (fs.f - th.value).abs();
    let mut budget = fs.error + th.error + 1e-9;
    if exact.is_none() {
        // Approximate measure: cylinder masses drift from target
        // lengths by up to depth times the envelope width.
        let env = psi_g.depth_envelope(m)?;
        let width = env
            .hi
            .iter()
            .zip(env.lo.iter())
            .map(|(h, l)| h - l)
            .fold(0.0f64, f64::max);
        budget += depth as f64 * width;
    }
    if residual > budget {
        return Err(Error::numerical(format!(
            "theta routes disagree at x = {x}: residual {residual:.3e} > budget {budget:.3e}"
        )));
    }
    Ok((fs.f, residual))
}

/// Max residual of theta(branch_i(x)) = target_branch_i(theta(x))
/// over all branches and sample points. Each residual is checked
/// against its own error budget; the max is returned for reporting.
pub fn functional_equation_residual(
    pair: &ConjugacyPair,
    points: &[f64],
    depth: usize,
) -> Result<f64> {
    let s = pair.ifs_f.alphabet().size() as u8;
    let mut max_residual = 0.0f64;
    for &x in points {
        let base = theta(pair, x, depth)?;
        for sym in 1..=s {
            let pushed = theta(pair, pair.ifs_f.apply_branch(sym, x), depth)?;
            let mapped = pair.ifs_g.apply_branch(sym, base.value);
            let residual = (pushed.value - mapped).abs();
            // Target branches are contractions, so the base error
            // passes through with factor < 1.
            let budget = pushed.error + base.error + 1e-9;
            if residual > budget {
                return Err(Error::numerical(format!(
                    "conjugacy equation fails at x = {x}, branch {sym}: \
                     residual {residual:.3e} > budget {budget:.3e}"
                )));
            }
            max_residual = max_residual.max(residual);
        }
    }
    Ok(max_residual)
}

/// Spectrum of pointwise Hoelder exponents of the conjugacy map: the
/// pressure equation with both axes geometric, at a shared
/// approximation depth.
pub fn conjugacy_spectrum(
    pair: &ConjugacyPair,
    grid: &[f64],
    depth: usize,
) -> Result<(PressureCurve, SpectrumCurve)> {
    let (phi, psi) = pair.potentials();
    let curve = pressure_curve(&phi, &psi, grid, depth)?;
    let spectrum = legendre_spectrum(&curve)?;
    Ok((curve, spectrum))
}
