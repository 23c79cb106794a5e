//! Finitely generated conformal iterated function systems on the
//! line: orientation-preserving affine and Moebius contractions with
//! the open set condition, cylinder geometry, coding and digit maps,
//! and log-derivatives along codings.
//!
//! Interval endpoints are ordinary doubles plus a tracked outward
//! error slack. Compositions that happen to be exact in binary
//! floating point (dyadic affine data, for instance) keep slack zero,
//! so equality comparisons against exact endpoints stay meaningful;
//! everything else accumulates a certified outward bound instead.

use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, Word};
use std::fmt;

const EPS: f64 = f64::EPSILON;

/// One increasing contracting branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BranchMap {
    /// `x -> ratio*x + offset`, `ratio` in (0,1).
    Affine { ratio: f64, offset: f64 },
    /// `x -> (a x + b)/(c x + d)` with `a d - b c > 0`.
    Moebius { a: f64, b: f64, c: f64, d: f64 },
}

impl BranchMap {
    pub fn affine(ratio: f64, offset: f64) -> Result<Self> {
        if !(ratio.is_finite() && offset.is_finite()) {
            return Err(Error::invalid("affine branch parameters must be finite"));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::invalid(format!(
                "affine ratio must lie in (0,1), got {ratio}"
            )));
        }
        Ok(BranchMap::Affine { ratio, offset })
    }

    pub fn moebius(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("moebius branch parameters must be finite"));
        }
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(Error::invalid(format!(
                "moebius branch needs a*d - b*c > 0, got {det}"
            )));
        }
        Ok(BranchMap::Moebius { a, b, c, d })
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, BranchMap::Affine { .. })
    }

    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            BranchMap::Affine { ratio, offset } => ratio * x + offset,
            BranchMap::Moebius { a, b, c, d } => (a * x + b) / (c * x + d),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            BranchMap::Affine { ratio, .. } => ratio,
            BranchMap::Moebius { a, b, c, d } => {
                let den = c * x + d;
                (a * d - b * c) / (den * den)
            }
        }
    }

    pub fn log_derivative(&self, x: f64) -> f64 {
        match *self {
            BranchMap::Affine { ratio, .. } => ratio.ln(),
            BranchMap::Moebius { a, b, c, d } => {
                let den = (c * x + d).abs();
                (a * d - b * c).ln() - 2.0 * den.ln()
            }
        }
    }

    /// Apply with propagated error slack: returns the image value and
    /// a certified bound for its absolute error given an input error
    /// bound of `slack`.
    fn apply_tracked(&self, x: f64, slack: f64, sup_der: f64) -> (f64, f64) {
        match *self {
            BranchMap::Affine { ratio, offset } => {
                let p = ratio * x;
                let y = p + offset;
                let mul_exact = ratio.mul_add(x, -p) == 0.0;
                let add_exact = (y - p) == offset && (y - offset) == p;
                let rounding = if mul_exact && add_exact {
                    0.0
                } else {
                    EPS * (p.abs() + y.abs())
                };
                (y, sup_der * slack + rounding)
            }
            BranchMap::Moebius { a, b, c, d } => {
                let num = a * x + b;
                let den = c * x + d;
                let y = num / den;
                // Crude but certified forward bound: ~1.5 ulp per
                // affine form plus the division rounding.
                let rounding = EPS
                    * (y.abs()
                        + 1.5
                            * y.abs()
                            * (((a * x).abs() + b.abs()) / num.abs().max(f64::MIN_POSITIVE)
                                + ((c * x).abs() + d.abs()) / den.abs().max(f64::MIN_POSITIVE)));
                (y, sup_der * slack + rounding)
            }
        }
    }

    /// The pole `-d/c` for genuinely fractional branches.
    fn pole(&self) -> Option<f64> {
        match *self {
            BranchMap::Affine { .. } => None,
            BranchMap::Moebius { c, d, .. } => {
                if c == 0.0 {
                    None
                } else {
                    Some(-d / c)
                }
            }
        }
    }

    /// `sup |phi''/phi'| = sup |2c/(cx+d)|` over an interval
    /// (monotone there, so endpoint evaluation suffices).
    fn lip_log_derivative_on(&self, lo: f64, hi: f64) -> f64 {
        match *self {
            BranchMap::Affine { .. } => 0.0,
            BranchMap::Moebius { c, d, .. } => {
                let f = |x: f64| (2.0 * c / (c * x + d)).abs();
                f(lo).max(f(hi))
            }
        }
    }

    /// Attracting fixed point, used only to derive a default hull.
    fn attracting_fixed_point(&self) -> Result<f64> {
        match *self {
            BranchMap::Affine { ratio, offset } => Ok(offset / (1.0 - ratio)),
            BranchMap::Moebius { a, b, c, d } => {
                if c == 0.0 {
                    // (a x + b)/d = x
                    let ratio = a / d;
                    if !(ratio.abs() < 1.0) {
                        return Err(Error::invalid("branch is not a contraction"));
                    }
                    return Ok(b / (d - a));
                }
                // c x^2 + (d - a) x - b = 0
                let bb = d - a;
                let disc = bb * bb + 4.0 * c * b;
                if disc <= 0.0 {
                    return Err(Error::invalid("branch has no real fixed point"));
                }
                let sq = disc.sqrt();
                let q = -0.5 * (bb + bb.signum() * sq);
                let r1 = if c != 0.0 { q / c } else { f64::INFINITY };
                let r2 = if q != 0.0 { -b / q } else { f64::INFINITY };
                for r in [r1, r2] {
                    if r.is_finite() && self.derivative(r).abs() < 1.0 {
                        return Ok(r);
                    }
                }
                Err(Error::invalid("branch has no attracting fixed point"))
            }
        }
    }
}

impl fmt::Display for BranchMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BranchMap::Affine { ratio, offset } => write!(f, "affine({ratio}*x + {offset})"),
            BranchMap::Moebius { a, b, c, d } => {
                write!(f, "moebius(({a}x + {b})/({c}x + {d}))")
            }
        }
    }
}

/// Raw, not-yet-validated system description.
#[derive(Clone, Debug)]
pub struct IfsDefinition {
    pub branches: Vec<BranchMap>,
    pub hull: Option<(f64, f64)>,
    pub osc: Option<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of geometric validation; `contraction[i]` is the certified
/// sup of branch `i`'s derivative on the hull when the branch checks
/// passed.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub pass: bool,
    pub hull: Option<(f64, f64)>,
    pub osc: Option<(f64, f64)>,
    pub contraction: Vec<f64>,
    pub checks: Vec<Check>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "validation: {}", if self.pass { "pass" } else { "FAIL" })?;
        if let Some((a, b)) = self.hull {
            writeln!(f, "  hull: [{a}, {b}]")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

impl IfsDefinition {
    pub fn new(
        branches: Vec<BranchMap>,
        hull: Option<(f64, f64)>,
        osc: Option<(f64, f64)>,
    ) -> Self {
        IfsDefinition {
            branches,
            hull,
            osc,
        }
    }

    /// Geometric validation: each branch increasing, contracting, and
    /// hull-preserving; branch images in increasing index order and
    /// disjoint inside the open set. Never errors; failures are
    /// reported per branch or per pair.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut contraction = vec![f64::NAN; self.branches.len()];
        let mut pass = true;
        let fail = |checks: &mut Vec<Check>, name: &str, detail: String| {
            checks.push(Check {
                name: name.to_string(),
                pass: false,
                detail,
            });
        };
        let ok = |checks: &mut Vec<Check>, name: &str, detail: String| {
            checks.push(Check {
                name: name.to_string(),
                pass: true,
                detail,
            });
        };

        if self.branches.len() < 2 {
            fail(
                &mut checks,
                "alphabet",
                format!("need at least 2 branches, got {}", self.branches.len()),
            );
            return ValidationReport {
                pass: false,
                hull: None,
                osc: None,
                contraction,
                checks,
            };
        }

        // Hull: given, or the span of attracting fixed points.
        let hull = match self.hull {
            Some((a, b)) if a.is_finite() && b.is_finite() && a < b => (a, b),
            Some((a, b)) => {
                fail(&mut checks, "hull", format!("degenerate hull [{a}, {b}]"));
                return ValidationReport {
                    pass: false,
                    hull: None,
                    osc: None,
                    contraction,
                    checks,
                };
            }
            None => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for (i, br) in self.branches.iter().enumerate() {
                    match br.attracting_fixed_point() {
                        Ok(p) => {
                            lo = lo.min(p);
                            hi = hi.max(p);
                        }
                        Err(e) => {
                            fail(&mut checks, "hull", format!("branch {}: {e}", i + 1));
                            return ValidationReport {
                                pass: false,
                                hull: None,
                                osc: None,
                                contraction,
                                checks,
                            };
                        }
                    }
                }
                if !(lo < hi) {
                    fail(
                        &mut checks,
                        "hull",
                        format!("default hull degenerate: [{lo}, {hi}]"),
                    );
                    return ValidationReport {
                        pass: false,
                        hull: None,
                        osc: None,
                        contraction,
                        checks,
                    };
                }
                (lo, hi)
            }
        };
        let (x0, x1) = hull;

        let osc = match self.osc {
            Some((a, b)) => (a, b),
            None => hull,
        };
        let (u0, u1) = osc;
        if !(u0.is_finite() && u1.is_finite() && u0 < u1 && u0 >= x0 && u1 <= x1) {
            fail(
                &mut checks,
                "open-set",
                format!("open set ({u0}, {u1}) must be a nondegenerate subinterval of the hull"),
            );
            pass = false;
        }

        for (i, br) in self.branches.iter().enumerate() {
            let label = format!("branch {} {br}", i + 1);
            if let Some(p) = br.pole() {
                if p >= x0 && p <= x1 {
                    fail(
                        &mut checks,
                        "pole",
                        format!("{label}: pole {p} inside hull"),
                    );
                    pass = false;
                    continue;
                }
            }
            let d0 = br.derivative(x0);
            let d1 = br.derivative(x1);
            if !(d0.is_finite() && d1.is_finite() && d0 > 0.0 && d1 > 0.0) {
                fail(
                    &mut checks,
                    "increasing",
                    format!("{label}: derivative not positive on hull ({d0}, {d1})"),
                );
                pass = false;
                continue;
            }
            let sup = d0.max(d1);
            contraction[i] = sup;
            if !(sup < 1.0) {
                fail(
                    &mut checks,
                    "contraction",
                    format!("{label}: sup derivative {sup} >= 1"),
                );
                pass = false;
            }
            let (y0, y1) = (br.apply(x0), br.apply(x1));
            if !(y0 >= x0 && y1 <= x1) {
                fail(
                    &mut checks,
                    "hull-invariance",
                    format!("{label}: image [{y0}, {y1}] escapes hull [{x0}, {x1}]"),
                );
                pass = false;
            }
        }

        if pass {
            // Open set condition on (u0, u1): containment plus
            // pairwise disjoint open images, images in index order.
            for (i, br) in self.branches.iter().enumerate() {
                let (v0, v1) = (br.apply(u0), br.apply(u1));
                if !(v0 >= u0 && v1 <= u1) {
                    fail(
                        &mut checks,
                        "open-set",
                        format!(
                            "branch {}: image ({v0}, {v1}) not inside ({u0}, {u1})",
                            i + 1
                        ),
                    );
                    pass = false;
                }
            }
            for i in 0..self.branches.len() - 1 {
                let hi_i = self.branches[i].apply(u1);
                let lo_j = self.branches[i + 1].apply(u0);
                if !(hi_i <= lo_j) {
                    fail(
                        &mut checks,
                        "disjointness",
                        format!(
                            "branches {} and {}: images overlap ({hi_i} > {lo_j})",
                            i + 1,
                            i + 2
                        ),
                    );
                    pass = false;
                }
            }
        }

        if pass {
            ok(
                &mut checks,
                "geometry",
                format!(
                    "{} increasing contracting branches, ordered and disjoint on ({u0}, {u1})",
                    self.branches.len()
                ),
            );
        }
        ValidationReport {
            pass,
            hull: Some(hull),
            osc: Some(osc),
            contraction,
            checks,
        }
    }

    pub fn build(self) -> Result<IfsSpec> {
        let report = self.validate();
        if !report.pass {
            let msg = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::Validation(msg));
        }
        let hull = report.hull.expect("pass implies hull");
        let osc = report.osc.expect("pass implies osc");
        let alphabet = Alphabet::new(self.branches.len())?;
        let lip_logd = self
            .branches
            .iter()
            .map(|b| b.lip_log_derivative_on(hull.0, hull.1))
            .collect();
        Ok(IfsSpec {
            branches: self.branches,
            hull,
            osc,
            alphabet,
            contraction: report.contraction,
            lip_logd,
        })
    }
}

/// Validated system; constructing one proves the geometry checks
/// passed, so downstream operations never re-validate.
#[derive(Clone, Debug)]
pub struct IfsSpec {
    branches: Vec<BranchMap>,
    hull: (f64, f64),
    osc: (f64, f64),
    alphabet: Alphabet,
    contraction: Vec<f64>,
    lip_logd: Vec<f64>,
}

/// Cylinder interval with certified outward slack per endpoint.
#[derive(Clone, Copy, Debug)]
pub struct CylinderInterval {
    pub lo: f64,
    pub hi: f64,
    pub slack_lo: f64,
    pub slack_hi: f64,
}

impl CylinderInterval {
    pub fn cert_lo(&self) -> f64 {
        self.lo - self.slack_lo
    }

    pub fn cert_hi(&self) -> f64 {
        self.hi + self.slack_hi
    }

    pub fn diameter(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Half-diameter plus slack: an error radius around the midpoint
    /// covering the whole certified interval.
    pub fn radius(&self) -> f64 {
        0.5 * self.diameter() + self.slack_lo.max(self.slack_hi)
    }

    pub fn contains_cert(&self, x: f64) -> bool {
        x >= self.cert_lo() && x <= self.cert_hi()
    }
}

/// Result of coding a point back into symbols.
#[derive(Clone, Debug)]
pub struct Digits {
    /// Lexicographically smallest word whose cylinder contains the
    /// point.
    pub primary: Word,
    /// Second word at shared cylinder endpoints.
    pub secondary: Option<Word>,
}

impl Digits {
    pub fn boundary(&self) -> bool {
        self.secondary.is_some()
    }
}

impl IfsSpec {
    pub fn new(
        branches: Vec<BranchMap>,
        hull: Option<(f64, f64)>,
        osc: Option<(f64, f64)>,
    ) -> Result<Self> {
        IfsDefinition::new(branches, hull, osc).build()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branch(&self, sym: u8) -> &BranchMap {
        &self.branches[sym as usize - 1]
    }

    pub fn hull(&self) -> (f64, f64) {
        self.hull
    }

    pub fn open_set(&self) -> (f64, f64) {
        self.osc
    }

    pub fn all_affine(&self) -> bool {
        self.branches.iter().all(|b| b.is_affine())
    }

    /// Certified sup of branch derivatives on the hull.
    pub fn max_contraction(&self) -> f64 {
        self.contraction.iter().cloned().fold(0.0, f64::max)
    }

    pub fn contraction(&self, sym: u8) -> f64 {
        self.contraction[sym as usize - 1]
    }

    pub fn apply_branch(&self, sym: u8, x: f64) -> f64 {
        self.branch(sym).apply(x)
    }

    /// `phi_word(x)`: innermost symbol applied first.
    pub fn apply_word(&self, word: &Word, x: f64) -> f64 {
        let mut cur = x;
        for &c in word.syms().iter().rev() {
            cur = self.branch(c).apply(cur);
        }
        cur
    }

    pub fn branch_log_derivative(&self, sym: u8, x: f64) -> Result<f64> {
        let v = self.branch(sym).log_derivative(x);
        if !v.is_finite() {
            return Err(Error::numerical(format!(
                "log derivative of branch {sym} not finite at {x}"
            )));
        }
        Ok(v)
    }

    /// Image of the hull under `phi_word`, with certified slack.
    pub fn cylinder_interval(&self, word: &Word) -> CylinderInterval {
        let mut lo = self.hull.0;
        let mut hi = self.hull.1;
        let mut slack_lo = 0.0;
        let mut slack_hi = 0.0;
        for &c in word.syms().iter().rev() {
            let br = self.branch(c);
            let sup = self.contraction[c as usize - 1];
            let (nlo, slo) = br.apply_tracked(lo, slack_lo, sup);
            let (nhi, shi) = br.apply_tracked(hi, slack_hi, sup);
            lo = nlo;
            hi = nhi;
            slack_lo = slo;
            slack_hi = shi;
        }
        CylinderInterval {
            lo,
            hi,
            slack_lo,
            slack_hi,
        }
    }

    /// Coding map: midpoint of the cylinder and an error radius that
    /// covers it.
    pub fn coding_point(&self, word: &Word) -> (f64, f64) {
        let iv = self.cylinder_interval(word);
        (iv.midpoint(), iv.radius())
    }

    /// All depth-`n` words whose (certified) cylinders contain `x`;
    /// at most two for points on shared endpoints.
    pub fn digits_of_point(&self, x: f64, n: usize) -> Result<Digits> {
        if n == 0 {
            return Err(Error::invalid("digit depth must be >= 1"));
        }
        if !x.is_finite() || x < self.hull.0 || x > self.hull.1 {
            return Err(Error::invalid(format!(
                "point {x} outside hull [{}, {}]",
                self.hull.0, self.hull.1
            )));
        }
        // Refining a candidate prefix appends the new symbol on the
        // inside of the composition, so each child cylinder is
        // recomputed from scratch; depths stay small enough that the
        // quadratic cost is irrelevant.
        let mut frontier: Vec<Vec<u8>> = vec![Vec::new()];
        for depth in 1..=n {
            let mut next: Vec<Vec<u8>> = Vec::new();
            let mut left_flank = f64::NEG_INFINITY;
            let mut right_flank = f64::INFINITY;
            for prefix in &frontier {
                for sym in 1..=self.branches.len() as u8 {
                    let mut syms = prefix.clone();
                    syms.push(sym);
                    let child = self.cylinder_interval(&Word::new(&self.alphabet, syms.clone())?);
                    if child.contains_cert(x) {
                        next.push(syms);
                    } else if child.cert_hi() < x {
                        left_flank = left_flank.max(child.cert_hi());
                    } else {
                        right_flank = right_flank.min(child.cert_lo());
                    }
                }
            }
            if next.is_empty() {
                return Err(Error::GapPoint {
                    x,
                    depth,
                    left: left_flank,
                    right: right_flank,
                });
            }
            // Shared endpoints give two chains; anything beyond that
            // is slack-degenerate, keep the lexicographic extremes.
            if next.len() > 2 {
                next.sort();
                let last = next.pop().expect("nonempty");
                next.truncate(1);
                next.push(last);
            }
            frontier = next;
        }
        frontier.sort();
        let mut words = frontier.into_iter();
        let primary = Word::new(&self.alphabet, words.next().expect("nonempty"))?;
        let secondary = match words.next() {
            Some(syms) => Some(Word::new(&self.alphabet, syms)?),
            None => None,
        };
        Ok(Digits { primary, secondary })
    }

    /// Fixed point of `phi_word`: closed form for affine
    /// compositions, bisection inside the cylinder otherwise
    /// (absolute tolerance 1e-14).
    pub fn composition_fixed_point(&self, word: &Word) -> Result<f64> {
        if word.syms().iter().all(|&c| self.branch(c).is_affine()) {
            let mut ratio = 1.0;
            let mut offset = 0.0;
            for &c in word.syms().iter().rev() {
                if let BranchMap::Affine { ratio: r, offset: a } = *self.branch(c) {
                    ratio *= r;
                    offset = r * offset + a;
                }
            }
            return Ok(offset / (1.0 - ratio));
        }
        let iv = self.cylinder_interval(word);
        let mut lo = iv.cert_lo().max(self.hull.0);
        let mut hi = iv.cert_hi().min(self.hull.1);
        if hi - lo <= 1e-14 {
            return Ok(0.5 * (lo + hi));
        }
        let g = |x: f64| self.apply_word(word, x) - x;
        let (mut glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            return Ok(lo);
        }
        if ghi == 0.0 {
            return Ok(hi);
        }
        if glo.signum() == ghi.signum() {
            // Both residuals on the same side only happens when the
            // cylinder is already at rounding scale.
            return Ok(0.5 * (lo + hi));
        }
        for _ in 0..200 {
            if hi - lo <= 1e-14 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let gm = g(mid);
            if gm == 0.0 {
                return Ok(mid);
            }
            if gm.signum() == glo.signum() {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Coding point of the shifted periodic word, `pi(sigma w^inf)`:
    /// the fixed point of the rotated composition.
    pub fn periodic_tail_point(&self, word: &Word) -> Result<f64> {
        let n = word.len();
        let rotated: Vec<u8> = (0..n).map(|k| word.syms()[(k + 1) % n]).collect();
        self.composition_fixed_point(&Word::new(&self.alphabet, rotated)?)
    }

    /// Birkhoff sum of the geometric potential at the periodic point
    /// of `word`: the log-derivative of the composed map at its fixed
    /// point, via the chain rule.
    pub fn log_derivative_at(&self, word: &Word) -> Result<f64> {
        let fix = self.composition_fixed_point(word)?;
        let (sum, _) = self.log_derivative_chain(word, fix)?;
        Ok(sum)
    }

    /// `log (phi_word)'(z)` unrolled along the orbit, with a
    /// certified evaluation-error margin.
    pub fn log_derivative_chain(&self, word: &Word, z: f64) -> Result<(f64, f64)> {
        let mut cur = z;
        let mut cur_err: f64 = 0.0;
        let mut sum = 0.0;
        let mut margin = 0.0;
        for &c in word.syms().iter().rev() {
            let term = self.branch_log_derivative(c, cur)?;
            let lip = self.lip_logd[c as usize - 1];
            margin += lip * cur_err + 4.0 * EPS * (1.0 + term.abs());
            sum += term;
            let sup = self.contraction[c as usize - 1];
            let (nxt, nerr) = self.branch(c).apply_tracked(cur, cur_err, sup);
            cur = nxt;
            cur_err = nerr;
        }
        margin += EPS * sum.abs() * (word.len() as f64).max(1.0);
        Ok((sum, margin))
    }

    /// Outermost certified endpoints of the union of depth-`e`
    /// cylinders (the hull for `e = 0`). The attractor lives inside.
    pub fn cover_extremes(&self, e: usize) -> Result<(f64, f64)> {
        if e == 0 {
            return Ok(self.hull);
        }
        let s = self.branches.len() as u8;
        let first = Word::new(&self.alphabet, vec![1u8; e])?;
        let last = Word::new(&self.alphabet, vec![s; e])?;
        Ok((
            self.cylinder_interval(&first).cert_lo(),
            self.cylinder_interval(&last).cert_hi(),
        ))
    }

    /// Per-cylinder envelope of the geometric potential at depth `m`:
    /// on `[u]` the value is `log phi'_{u1}(z)` with `z` in the
    /// cylinder of `u_2..u_m`, and the branch log-derivative is
    /// monotone in `z`.
    pub(crate) fn geometric_envelope(
        &self,
        m: usize,
        lo: &mut [f64],
        hi: &mut [f64],
    ) -> Result<()> {
        let count = self.alphabet.count_words(m)? as usize;
        debug_assert_eq!(lo.len(), count);
        for r in 0..count {
            let u = self.alphabet.word_from_rank(m, r as u64);
            let sym = u.syms()[0];
            let (z_lo, z_hi) = if m == 1 {
                self.hull
            } else {
                let rest = Word::new(&self.alphabet, u.syms()[1..].to_vec())?;
                let iv = self.cylinder_interval(&rest);
                (
                    iv.cert_lo().max(self.hull.0),
                    iv.cert_hi().min(self.hull.1),
                )
            };
            if self.branch(sym).is_affine() {
                let v = self.branch_log_derivative(sym, z_lo)?;
                lo[r] = v;
                hi[r] = v;
                continue;
            }
            let a = self.branch_log_derivative(sym, z_lo)?;
            let b = self.branch_log_derivative(sym, z_hi)?;
            let margin = 4.0 * EPS * (1.0 + a.abs().max(b.abs()));
            lo[r] = a.min(b) - margin;
            hi[r] = a.max(b) + margin;
        }
        Ok(())
    }

    /// Largest gap left by the branch images tiling the hull:
    /// zero (up to tolerance) means the system has no holes, which
    /// the conjugacy target requires.
    pub fn tiling_gap(&self) -> f64 {
        let (x0, x1) = self.hull;
        let mut gap = (self.branches[0].apply(x0) - x0).abs();
        for i in 0..self.branches.len() - 1 {
            let hi_i = self.branches[i].apply(x1);
            let lo_j = self.branches[i + 1].apply(x0);
            gap = gap.max((lo_j - hi_i).abs());
        }
        gap = gap.max((x1 - self.branches[self.branches.len() - 1].apply(x1)).abs());
        gap
    }
}
