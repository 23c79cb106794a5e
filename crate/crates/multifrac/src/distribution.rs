//! Distribution function of the pushforward measure, ball masses,
//! pointwise Hoelder slopes, and the box-counting coarse spectrum.
//!
//! F(x) is computed as a certified interval: masses of depth-n
//! cylinders fully left of x, with the straddling cylinder attributed
//! by enclosure. Ball masses and Hoelder slopes inherit those
//! brackets. The coarse spectrum solves the partition-function root
//! sum mu[w]^q diam[w]^T = 1 and never consults the pressure solver,
//! so the two stay independent checks on each other.

use crate::error::{Error, Result};
use crate::ifs::IfsSpec;
use crate::spectrum::bisect_root;
use crate::symbolic::Word;
use crate::thermo::MarkovMeasure;
use rayon::prelude::*;

/// One point of the (possibly singular) distribution function.
#[derive(Clone, Copy, Debug)]
pub struct StaircaseSample {
    pub x: f64,
    pub f: f64,
    pub error: f64,
}

/// Certified enclosure of F(x) from a depth-n cylinder sweep.
#[derive(Clone, Copy, Debug)]
struct FBracket {
    lo: f64,
    hi: f64,
}

impl FBracket {
    fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

fn check_compatible(mu: &MarkovMeasure, spec: &IfsSpec) -> Result<()> {
    if mu.alphabet() != spec.alphabet() {
        return Err(Error::invalid(
            "measure and system must share the alphabet",
        ));
    }
    Ok(())
}

/// Walk down the cylinder tree keeping a running enclosure of
/// mu((-inf, x]). At each level the children are spatially ordered by
/// symbol; fully-left children contribute their whole mass, the
/// straddling child is descended into. Cylinder bounds carry slack, so
/// two children can both claim the point; the walk then stops and
/// charges every claimant to the enclosure width.
fn f_bracket(mu: &MarkovMeasure, spec: &IfsSpec, x: f64, depth: usize) -> Result<FBracket> {
    let (hull_lo, hull_hi) = spec.hull();
    if x < hull_lo {
        return Ok(FBracket { lo: 0.0, hi: 0.0 });
    }
    if x >= hull_hi {
        return Ok(FBracket { lo: 1.0, hi: 1.0 });
    }
    let alphabet = spec.alphabet();
    let s = alphabet.size() as u8;
    let mut left_mass = 0.0f64;
    let mut prefix: Vec<u8> = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut straddle: Option<(Vec<u8>, f64)> = None;
        let mut extra = 0.0f64;
        for sym in 1..=s {
            let mut child = prefix.clone();
            child.push(sym);
            let w = Word::new(&alphabet, child.clone())?;
            let iv = spec.cylinder_interval(&w);
            if iv.cert_hi() <= x {
                left_mass += mu.cylinder_mass(&w)?;
            } else if iv.cert_lo() > x {
                break;
            } else {
                let m = mu.cylinder_mass(&w)?;
                if straddle.is_none() {
                    straddle = Some((child, m));
                } else {
                    extra += m;
                }
            }
        }
        match straddle {
            None => return Ok(FBracket { lo: left_mass, hi: left_mass }),
            Some((child, m)) => {
                if extra > 0.0 {
                    return Ok(FBracket {
                        lo: left_mass,
                        hi: (left_mass + m + extra).min(1.0),
                    });
                }
                prefix = child;
            }
        }
    }
    let w = Word::new(&alphabet, prefix)?;
    let m = mu.cylinder_mass(&w)?;
    Ok(FBracket {
        lo: left_mass,
        hi: (left_mass + m).min(1.0),
    })
}

/// F(x) = mu((-inf, x]) to depth n, as midpoint plus half-width of the
/// certified enclosure. Points outside the hull clamp to 0 or 1 with
/// no error.
pub fn distribution_function(
    mu: &MarkovMeasure,
    spec: &IfsSpec,
    x: f64,
    depth: usize,
) -> Result<StaircaseSample> {
    check_compatible(mu, spec)?;
    if depth == 0 {
        return Err(Error::invalid("depth must be >= 1"));
    }
    let b = f_bracket(mu, spec, x, depth)?;
    Ok(StaircaseSample {
        x,
        f: b.midpoint().clamp(0.0, 1.0),
        error: b.half_width(),
    })
}

/// The staircase sampled at every depth-n cylinder endpoint, in
/// spatial order. Masses are accumulated in rank order, which equals
/// spatial order because branch images increase with the symbol, so
/// endpoint values are exact partial sums.
pub fn staircase(mu: &MarkovMeasure, spec: &IfsSpec, depth: usize) -> Result<Vec<StaircaseSample>> {
    check_compatible(mu, spec)?;
    if depth == 0 {
        return Err(Error::invalid("depth must be >= 1"));
    }
    let alphabet = spec.alphabet();
    let count = alphabet.count_words(depth)?;
    let rows: Vec<(f64, f64, f64)> = (0..count)
        .into_par_iter()
        .map(|r| {
            let w = alphabet.word_from_rank(depth, r);
            let iv = spec.cylinder_interval(&w);
            let m = mu.cylinder_mass(&w)?;
            Ok((iv.cert_lo(), iv.cert_hi(), m))
        })
        .collect::<Result<_>>()?;
    let mut samples = Vec::with_capacity(rows.len() * 2);
    let mut cum = 0.0f64;
    for (lo, hi, m) in rows {
        samples.push(StaircaseSample { x: lo, f: cum.clamp(0.0, 1.0), error: 0.0 });
        cum += m;
        samples.push(StaircaseSample { x: hi, f: cum.clamp(0.0, 1.0), error: 0.0 });
    }
    samples.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.f.total_cmp(&b.f)));
    samples.dedup_by(|a, b| a.x == b.x && a.f == b.f);
    if let Some(last) = samples.last() {
        if (last.f - 1.0).abs() > 1e-9 {
            return Err(Error::numerical(format!(
                "staircase mass defect: final F = {}",
                last.f
            )));
        }
    }
    Ok(samples)
}

/// Bracket of mu(B(x, r)) from the F enclosures at x - r and x + r.
pub fn ball_measure(
    mu: &MarkovMeasure,
    spec: &IfsSpec,
    x: f64,
    r: f64,
    depth: usize,
) -> Result<(f64, f64)> {
    check_compatible(mu, spec)?;
    if !(r > 0.0) {
        return Err(Error::invalid("ball radius must be positive"));
    }
    let right = f_bracket(mu, spec, x + r, depth)?;
    let left = f_bracket(mu, spec, x - r, depth)?;
    let lo = (right.lo - left.hi).max(0.0);
    let hi = (right.hi - left.lo).clamp(lo, 1.0);
    Ok((lo, hi))
}

/// Geometric radius schedule r_k = r0 * rho^k for k = 1..=count, with
/// trailing windows of `window` slopes averaged for the liminf/limsup
/// estimates.
#[derive(Clone, Copy, Debug)]
pub struct RadiusSchedule {
    pub r0: f64,
    pub rho: f64,
    pub count: usize,
    pub window: usize,
}

impl RadiusSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r0.is_finite()) {
            return Err(Error::invalid("r0 must be positive"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::invalid("rho must lie in (0, 1)"));
        }
        if self.window == 0 || self.count < 2 * self.window {
            return Err(Error::invalid(
                "need count >= 2 * window and window >= 1",
            ));
        }
        Ok(())
    }
}

/// One radius of the slope data: log r against the certified bracket
/// of log mu(B(x, r)).
#[derive(Clone, Copy, Debug)]
pub struct SlopeSample {
    pub log_r: f64,
    pub log_mass_lo: f64,
    pub log_mass_hi: f64,
}

impl SlopeSample {
    fn log_mass_mid(&self) -> f64 {
        0.5 * (self.log_mass_lo + self.log_mass_hi)
    }

    /// Ratio log mass / log r at this radius alone. Carries an O(1/k)
    /// bias from the multiplicative constant in the mass, so the
    /// liminf/limsup estimates use finite differences instead.
    pub fn raw_ratio(&self) -> f64 {
        self.log_mass_mid() / self.log_r
    }
}

#[derive(Clone, Debug)]
pub struct HoelderEstimate {
    pub x: f64,
    pub samples: Vec<SlopeSample>,
    pub liminf_est: f64,
    pub limsup_est: f64,
    /// Largest slope half-spread induced by the mass brackets.
    pub uncertainty: f64,
    pub window: usize,
    /// True when a ball bracket touched zero (the point sits in a
    /// measure gap) and the schedule was cut short.
    pub truncated: bool,
}

/// Depth at which cylinder diameters drop a few levels below r, so
/// the straddling-cylinder error is a small fraction of the ball
/// mass.
fn depth_for_radius(spec: &IfsSpec, r: f64) -> usize {
    let lambda = spec.max_contraction();
    let (hull_lo, hull_hi) = spec.hull();
    let mut diam = hull_hi - hull_lo;
    let mut n = 0usize;
    while diam > r && n < 120 {
        diam *= lambda;
        n += 1;
    }
    (n + 4).min(120)
}

/// Windowed slope statistics of r -> mu(B(x, r)) along a geometric
/// schedule. Each window mean averages per-step finite differences,
/// which makes it the secant slope across the window; the
/// multiplicative constant in the mass cancels, unlike in the raw
/// ratios.
pub fn pointwise_hoelder(
    mu: &MarkovMeasure,
    spec: &IfsSpec,
    x: f64,
    schedule: &RadiusSchedule,
) -> Result<HoelderEstimate> {
    check_compatible(mu, spec)?;
    schedule.validate()?;
    let mut samples = Vec::with_capacity(schedule.count);
    let mut truncated = false;
    for k in 1..=schedule.count {
        let r = schedule.r0 * schedule.rho.powi(k as i32);
        let depth = depth_for_radius(spec, r);
        let (lo, hi) = ball_measure(mu, spec, x, r, depth)?;
        if !(lo > 0.0) {
            truncated = true;
            break;
        }
        samples.push(SlopeSample {
            log_r: r.ln(),
            log_mass_lo: lo.ln(),
            log_mass_hi: hi.ln(),
        });
    }
    let w = schedule.window;
    if samples.len() < w + 1 {
        return Err(Error::numerical(
            "too few usable radii before the schedule was truncated",
        ));
    }
    let mut diffs = Vec::with_capacity(samples.len() - 1);
    let mut uncertainty = 0.0f64;
    for pair in samples.windows(2) {
        let dr = pair[1].log_r - pair[0].log_r;
        diffs.push((pair[1].log_mass_mid() - pair[0].log_mass_mid()) / dr);
        let spread = 0.5 * (pair[1].log_mass_hi - pair[1].log_mass_lo)
            + 0.5 * (pair[0].log_mass_hi - pair[0].log_mass_lo);
        uncertainty = uncertainty.max(spread / dr.abs());
    }
    let mut liminf = f64::INFINITY;
    let mut limsup = f64::NEG_INFINITY;
    for end in w..=diffs.len() {
        let mean = diffs[end - w..end].iter().sum::<f64>() / w as f64;
        liminf = liminf.min(mean);
        limsup = limsup.max(mean);
    }
    Ok(HoelderEstimate {
        x,
        samples,
        liminf_est: liminf,
        limsup_est: limsup,
        uncertainty,
        window: w,
        truncated,
    })
}

/// Empirical coarse spectrum at one depth: T_n(q) roots of the
/// partition function, with alpha and f by central differences along
/// the q grid.
#[derive(Clone, Debug)]
pub struct CoarseSpectrum {
    pub q: Vec<f64>,
    pub t: Vec<f64>,
    pub alpha: Vec<f64>,
    pub f: Vec<f64>,
    pub depth: usize,
}

fn logsumexp(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + terms.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// For each q, the unique T with sum over depth-n words of
/// mu[w]^q * diam[w]^T = 1, found by bisection in the log domain.
pub fn coarse_spectrum(
    mu: &MarkovMeasure,
    spec: &IfsSpec,
    depth: usize,
    q_grid: &[f64],
) -> Result<CoarseSpectrum> {
    check_compatible(mu, spec)?;
    if depth == 0 {
        return Err(Error::invalid("depth must be >= 1"));
    }
    if q_grid.is_empty() || q_grid.iter().any(|q| !q.is_finite()) {
        return Err(Error::invalid("q grid must be nonempty and finite"));
    }
    if q_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("q grid must be strictly increasing"));
    }
    let alphabet = spec.alphabet();
    let count = alphabet.count_words(depth)?;
    let cells: Vec<(f64, f64)> = (0..count)
        .into_par_iter()
        .map(|r| {
            let w = alphabet.word_from_rank(depth, r);
            let log_mass = mu.log_cylinder_mass(&w)?;
            let diam = spec.cylinder_interval(&w).diameter();
            if !(diam > 0.0) || diam >= 1.0 {
                return Err(Error::numerical(format!(
                    "degenerate cylinder diameter {diam} at depth {depth}"
                )));
            }
            Ok((log_mass, diam.ln()))
        })
        .collect::<Result<_>>()?;
    let t: Vec<f64> = q_grid
        .par_iter()
        .map(|&q| {
            let partition = |tt: f64| -> Result<f64> {
                let terms: Vec<f64> =
                    cells.iter().map(|&(lm, ld)| q * lm + tt * ld).collect();
                Ok(logsumexp(&terms))
            };
            let (root, _) = bisect_root(partition)?;
            Ok(root)
        })
        .collect::<Result<_>>()?;
    let n = q_grid.len();
    let mut alpha = vec![0.0f64; n];
    for i in 0..n {
        let (a, b) = if i == 0 {
            (0, 1.min(n - 1))
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        alpha[i] = if a == b {
            0.0
        } else {
            -(t[b] - t[a]) / (q_grid[b] - q_grid[a])
        };
    }
    let f = (0..n).map(|i| t[i] + q_grid[i] * alpha[i]).collect();
    Ok(CoarseSpectrum {
        q: q_grid.to_vec(),
        t,
        alpha,
        f,
        depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{BranchMap, IfsSpec};
    use crate::symbolic::PotentialSpec;

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

    fn binomial_measure() -> MarkovMeasure {
        let a = dyadic_ifs().alphabet();
        let psi =
            PotentialSpec::symbol_log_weights(a, vec![0.3f64.ln(), 0.7f64.ln()]).unwrap();
        MarkovMeasure::new(&psi, 1).unwrap()
    }

    fn uniform_measure() -> MarkovMeasure {
        let a = dyadic_ifs().alphabet();
        let psi =
            PotentialSpec::symbol_log_weights(a, vec![0.5f64.ln(), 0.5f64.ln()]).unwrap();
        MarkovMeasure::new(&psi, 1).unwrap()
    }

    #[test]
    fn cascade_values_by_hand() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        for (x, want) in [(0.25, 0.09), (0.5, 0.3), (0.75, 0.51)] {
            let s = distribution_function(&mu, &spec, x, 24).unwrap();
            assert!((s.f - want).abs() < 1e-9, "F({x}) = {} want {want}", s.f);
            assert!(s.error < 1e-9);
            assert!((s.f - want).abs() <= s.error + 1e-12);
        }
    }

    #[test]
    fn clamps_outside_the_hull() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let left = distribution_function(&mu, &spec, -0.5, 6).unwrap();
        assert_eq!(left.f, 0.0);
        assert_eq!(left.error, 0.0);
        let right = distribution_function(&mu, &spec, 1.5, 6).unwrap();
        assert_eq!(right.f, 1.0);
        assert_eq!(right.error, 0.0);
        let at_end = distribution_function(&mu, &spec, 1.0, 6).unwrap();
        assert_eq!(at_end.f, 1.0);
    }

    #[test]
    fn gap_points_are_exact() {
        let spec = IfsSpec::new(
            vec![
                BranchMap::affine(1.0 / 3.0, 0.0).unwrap(),
                BranchMap::affine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let a = spec.alphabet();
        let psi =
            PotentialSpec::symbol_log_weights(a, vec![0.5f64.ln(), 0.5f64.ln()]).unwrap();
        let mu = MarkovMeasure::new(&psi, 1).unwrap();
        let s = distribution_function(&mu, &spec, 0.5, 8).unwrap();
        assert_eq!(s.f, 0.5);
        assert_eq!(s.error, 0.0);
    }

    #[test]
    fn staircase_binomial_depth_two() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let samples = staircase(&mu, &spec, 2).unwrap();
        for (x, want) in [(0.25, 0.09), (0.5, 0.3), (0.75, 0.51)] {
            let s = samples.iter().find(|s| s.x == x).unwrap();
            assert!((s.f - want).abs() < 1e-12, "F({x}) = {}", s.f);
            assert_eq!(s.error, 0.0);
        }
        assert!(samples.first().unwrap().f >= 0.0);
        assert!((samples.last().unwrap().f - 1.0).abs() < 1e-12);
        assert!(samples.windows(2).all(|w| w[0].f <= w[1].f));
    }

    #[test]
    fn uniform_staircase_is_the_identity() {
        let spec = dyadic_ifs();
        let mu = uniform_measure();
        for s in staircase(&mu, &spec, 3).unwrap() {
            assert!((s.f - s.x).abs() < 1e-12, "F({}) = {}", s.x, s.f);
        }
    }

    #[test]
    fn ball_brackets_match_staircase_differences() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let (lo, hi) = ball_measure(&mu, &spec, 0.5, 0.25, 16).unwrap();
        assert!(lo <= 0.42 + 1e-12 && 0.42 <= hi + 1e-12, "[{lo}, {hi}]");
        assert!(hi - lo < 1e-6);

        let (lo, hi) = ball_measure(&uniform_measure(), &spec, 0.5, 0.1, 14).unwrap();
        assert!(lo <= 0.2 && 0.2 <= hi);
        assert!(hi - lo < 1e-3);

        let (lo, hi) = ball_measure(&mu, &spec, 0.5, 2.0, 4).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
        assert!(ball_measure(&mu, &spec, 0.5, 0.0, 4).is_err());
    }

    #[test]
    fn ball_brackets_grow_with_radius_and_nest_in_depth() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let mut prev_lo = 0.0;
        for k in 1..=6 {
            let r = 0.03 * k as f64;
            let (lo, _) = ball_measure(&mu, &spec, 0.4, r, 12).unwrap();
            assert!(lo >= prev_lo - 1e-15, "r = {r}");
            prev_lo = lo;
        }
        let (lo8, hi8) = ball_measure(&mu, &spec, 0.4, 0.07, 8).unwrap();
        let (lo12, hi12) = ball_measure(&mu, &spec, 0.4, 0.07, 12).unwrap();
        assert!(lo12 >= lo8 - 1e-15 && hi12 <= hi8 + 1e-15);
    }

    #[test]
    fn error_field_dominates_refinement() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let mut state = 0x2545f4914f6cdd1du64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = (state >> 11) as f64 / (1u64 << 53) as f64;
            let coarse = distribution_function(&mu, &spec, x, 8).unwrap();
            let fine = distribution_function(&mu, &spec, x, 12).unwrap();
            assert!(
                (fine.f - coarse.f).abs() <= coarse.error + 1e-15,
                "x = {x}: moved {} with error {}",
                (fine.f - coarse.f).abs(),
                coarse.error
            );
        }
    }

    #[test]
    fn hoelder_at_the_left_endpoint() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let schedule = RadiusSchedule { r0: 0.5, rho: 0.5, count: 20, window: 3 };
        let est = pointwise_hoelder(&mu, &spec, 0.0, &schedule).unwrap();
        let want = 0.3f64.ln() / 0.5f64.ln();
        assert!(!est.truncated);
        assert!(est.liminf_est <= est.limsup_est);
        assert!((est.liminf_est - want).abs() < 0.05, "{}", est.liminf_est);
        assert!((est.limsup_est - want).abs() < 0.05, "{}", est.limsup_est);
    }

    #[test]
    fn hoelder_of_lebesgue_is_one() {
        let spec = dyadic_ifs();
        let mu = uniform_measure();
        let schedule = RadiusSchedule { r0: 0.5, rho: 0.5, count: 24, window: 4 };
        let est = pointwise_hoelder(&mu, &spec, 0.3, &schedule).unwrap();
        assert!((est.liminf_est - 1.0).abs() < 0.02, "{}", est.liminf_est);
        assert!((est.limsup_est - 1.0).abs() < 0.02, "{}", est.limsup_est);
    }

    #[test]
    fn gap_point_truncates_the_schedule() {
        let spec = IfsSpec::new(
            vec![
                BranchMap::affine(1.0 / 3.0, 0.0).unwrap(),
                BranchMap::affine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let a = spec.alphabet();
        let psi =
            PotentialSpec::symbol_log_weights(a, vec![0.5f64.ln(), 0.5f64.ln()]).unwrap();
        let mu = MarkovMeasure::new(&psi, 1).unwrap();
        let schedule = RadiusSchedule { r0: 0.5, rho: 0.5, count: 12, window: 2 };
        let err = pointwise_hoelder(&mu, &spec, 0.5, &schedule);
        // Every ball around the gap midpoint with r < 1/6 misses the
        // attractor entirely, so the schedule cannot fill one window.
        assert!(err.is_err() || err.unwrap().truncated);
    }

    #[test]
    fn divergence_point_from_block_coding() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let mut syms = Vec::new();
        for (j, sym) in [(1u32, 1u8), (2, 2), (3, 1), (4, 2)] {
            syms.extend(std::iter::repeat(sym).take(4usize.pow(j)));
        }
        let w = Word::new(&spec.alphabet(), syms).unwrap();
        let x = spec.coding_point(&w).0;
        let schedule = RadiusSchedule { r0: 0.5, rho: 0.5, count: 24, window: 3 };
        let est = pointwise_hoelder(&mu, &spec, x, &schedule).unwrap();
        assert!(
            est.limsup_est - est.liminf_est >= 0.1,
            "spread {} too small",
            est.limsup_est - est.liminf_est
        );
    }

    #[test]
    fn coarse_exponents_match_the_product_structure() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let q = vec![-2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for depth in [4, 8] {
            let cs = coarse_spectrum(&mu, &spec, depth, &q).unwrap();
            for (i, &qi) in q.iter().enumerate() {
                let want = (0.3f64.powf(qi) + 0.7f64.powf(qi)).log2();
                assert!(
                    (cs.t[i] - want).abs() < 1e-9,
                    "depth {depth} q {qi}: {} want {want}",
                    cs.t[i]
                );
            }
        }
    }

    #[test]
    fn coarse_pins_at_q_zero_and_one() {
        let spec = dyadic_ifs();
        let mu = binomial_measure();
        let cs = coarse_spectrum(&mu, &spec, 6, &[0.0, 1.0]).unwrap();
        assert!((cs.t[0] - 1.0).abs() < 1e-9);
        assert!(cs.t[1].abs() < 1e-9);
    }
}
