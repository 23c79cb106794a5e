//! Symbolic dynamics over a finite alphabet: word enumeration,
//! Birkhoff sums at periodic points, and certified bounds for
//! Birkhoff sums over cylinder sets.
//!
//! Symbols are `1..=s`. Words are finite, nonempty, and ordered
//! lexicographically. The potential of an iterated function system
//! (its log-derivative along codings) is handled through the same
//! interface as locally constant data, so the thermodynamic layer
//! never needs to know which kind it is looking at.

use crate::error::{Error, Result};
use crate::ifs::IfsSpec;

/// Hard cap on the number of words any enumeration may touch.
pub const WORD_BUDGET: u64 = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    /// `size` symbols `1..=size`; at least two, at most 64.
    pub fn new(size: usize) -> Result<Self> {
        if !(2..=64).contains(&size) {
            return Err(Error::invalid(format!(
                "alphabet size must be in 2..=64, got {size}"
            )));
        }
        Ok(Alphabet { size: size as u8 })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    /// `size^n`, rejected if it exceeds [`WORD_BUDGET`].
    pub fn count_words(&self, n: usize) -> Result<u64> {
        let s = self.size as u128;
        let mut c: u128 = 1;
        for _ in 0..n {
            c *= s;
            if c > WORD_BUDGET as u128 {
                return Err(Error::Budget {
                    requested: c,
                    budget: WORD_BUDGET,
                });
            }
        }
        Ok(c as u64)
    }

    /// All words of length `n` in lexicographic order.
    pub fn words(&self, n: usize) -> Result<Vec<Word>> {
        if n == 0 {
            return Err(Error::invalid("word length must be at least 1"));
        }
        let count = self.count_words(n)?;
        let mut out = Vec::with_capacity(count as usize);
        for rank in 0..count {
            out.push(self.word_from_rank(n, rank));
        }
        Ok(out)
    }

    /// Rank `0..size^n` to word, lexicographic (first symbol most
    /// significant).
    pub fn word_from_rank(&self, n: usize, rank: u64) -> Word {
        let s = self.size as u64;
        let mut syms = vec![0u8; n];
        let mut r = rank;
        for k in (0..n).rev() {
            syms[k] = (r % s) as u8 + 1;
            r /= s;
        }
        Word(syms)
    }
}

/// Nonempty word over an alphabet; `Ord` is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(alphabet: &Alphabet, syms: Vec<u8>) -> Result<Self> {
        if syms.is_empty() {
            return Err(Error::invalid("word must be nonempty"));
        }
        let s = alphabet.size() as u8;
        if let Some(&bad) = syms.iter().find(|&&c| c == 0 || c > s) {
            return Err(Error::invalid(format!(
                "symbol {bad} outside alphabet 1..={s}"
            )));
        }
        Ok(Word(syms))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syms(&self) -> &[u8] {
        &self.0
    }

    /// Lexicographic rank among words of the same length.
    pub fn rank(&self, alphabet: &Alphabet) -> u64 {
        let s = alphabet.size() as u64;
        self.0.iter().fold(0u64, |acc, &c| acc * s + (c as u64 - 1))
    }
}

/// Rank of the length-`m` window starting at `start` (0-based) of the
/// periodic extension of `syms`.
fn cyclic_window_rank(syms: &[u8], start: usize, m: usize, s: usize) -> usize {
    let n = syms.len();
    let mut r = 0usize;
    for j in 0..m {
        r = r * s + (syms[(start + j) % n] as usize - 1);
    }
    r
}

/// Certified lower/upper bounds for a Birkhoff sum over a cylinder.
#[derive(Clone, Copy, Debug)]
pub struct CylinderBounds {
    pub lower: f64,
    pub upper: f64,
    /// False would mark an empirical estimate; every route currently
    /// implemented is certified (exact tables, a stated Hoelder
    /// bound, or monotone composed derivatives).
    pub certified: bool,
}

impl CylinderBounds {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Clone, Debug)]
enum PotentialKind {
    /// One value per symbol; depends on the first coordinate only.
    SymbolLogWeights(Vec<f64>),
    /// Depends on the first `depth` coordinates; `table` has
    /// `s^depth` entries in lexicographic order of the window.
    LocallyConstant { depth: usize, table: Vec<f64> },
    /// Log-derivative of the system's branch maps along the coding,
    /// `f(w) = log phi'_{w1}(pi(sigma w))`.
    Geometric(IfsSpec),
}

/// A real potential on the full shift, in one of three concrete forms.
#[derive(Clone, Debug)]
pub struct PotentialSpec {
    alphabet: Alphabet,
    kind: PotentialKind,
    /// Optional variation bound `var_n(f) <= c * theta^n`, trusted as
    /// given.
    hoelder_bound: Option<(f64, f64)>,
}

impl PotentialSpec {
    pub fn symbol_log_weights(alphabet: Alphabet, values: Vec<f64>) -> Result<Self> {
        if values.len() != alphabet.size() {
            return Err(Error::invalid(format!(
                "need {} symbol values, got {}",
                alphabet.size(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("symbol log-weights must be finite"));
        }
        Ok(PotentialSpec {
            alphabet,
            kind: PotentialKind::SymbolLogWeights(values),
            hoelder_bound: None,
        })
    }

    pub fn locally_constant(alphabet: Alphabet, depth: usize, table: Vec<f64>) -> Result<Self> {
        if depth == 0 {
            return Err(Error::invalid("locally constant depth must be >= 1"));
        }
        let want = alphabet.count_words(depth)?;
        if table.len() as u64 != want {
            return Err(Error::invalid(format!(
                "locally constant table needs {want} entries, got {}",
                table.len()
            )));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("potential table must be finite"));
        }
        Ok(PotentialSpec {
            alphabet,
            kind: PotentialKind::LocallyConstant { depth, table },
            hoelder_bound: None,
        })
    }

    pub fn geometric(ifs: IfsSpec) -> Self {
        PotentialSpec {
            alphabet: ifs.alphabet(),
            kind: PotentialKind::Geometric(ifs),
            hoelder_bound: None,
        }
    }

    pub fn with_hoelder_bound(mut self, c: f64, theta: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) || !(theta > 0.0 && theta < 1.0) {
            return Err(Error::invalid(
                "hoelder bound needs c >= 0 and theta in (0,1)",
            ));
        }
        self.hoelder_bound = Some((c, theta));
        Ok(self)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn hoelder_bound(&self) -> Option<(f64, f64)> {
        self.hoelder_bound
    }

    /// Smallest depth at which the potential is exactly locally
    /// constant, if there is one.
    pub fn value_depth(&self) -> Option<usize> {
        match &self.kind {
            PotentialKind::SymbolLogWeights(_) => Some(1),
            PotentialKind::LocallyConstant { depth, .. } => Some(*depth),
            PotentialKind::Geometric(ifs) => {
                if ifs.all_affine() {
                    Some(1)
                } else {
                    None
                }
            }
        }
    }

    /// The underlying system when the potential is geometric.
    pub fn geometric_system(&self) -> Option<&IfsSpec> {
        match &self.kind {
            PotentialKind::Geometric(ifs) => Some(ifs),
            _ => None,
        }
    }

    /// `S_n f` at the periodic point of `word` (`n = |word|`).
    pub fn birkhoff_sum_periodic(&self, word: &Word) -> Result<f64> {
        let n = word.len();
        let s = self.alphabet.size();
        match &self.kind {
            PotentialKind::SymbolLogWeights(vals) => Ok(word
                .syms()
                .iter()
                .map(|&c| vals[c as usize - 1])
                .sum()),
            PotentialKind::LocallyConstant { depth, table } => {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += table[cyclic_window_rank(word.syms(), k, *depth, s)];
                }
                Ok(acc)
            }
            PotentialKind::Geometric(ifs) => ifs.log_derivative_at(word),
        }
    }

    /// Certified bounds for `sup/inf` of `S_{|word|} f` over the
    /// cylinder `[word]`, probing the tail to `probe_depth` symbols.
    pub fn cylinder_bounds(&self, word: &Word, probe_depth: usize) -> Result<CylinderBounds> {
        let n = word.len();
        if probe_depth < n {
            return Err(Error::invalid(format!(
                "probe depth {probe_depth} below word length {n}"
            )));
        }
        if let Some((c, theta)) = self.hoelder_bound {
            // |S_n f(w) - S_n f(w')| over [word] is at most
            // sum_{j=1..n} var_j(f) <= c*theta*(1-theta^n)/(1-theta).
            let center = self.birkhoff_sum_periodic(word)?;
            let var = c * theta * (1.0 - theta.powi(n as i32)) / (1.0 - theta);
            return Ok(CylinderBounds {
                lower: center - var,
                upper: center + var,
                certified: true,
            });
        }
        match &self.kind {
            PotentialKind::SymbolLogWeights(_) => {
                let v = self.birkhoff_sum_periodic(word)?;
                Ok(CylinderBounds {
                    lower: v,
                    upper: v,
                    certified: true,
                })
            }
            PotentialKind::LocallyConstant { depth, table } => {
                self.bounds_locally_constant(word, probe_depth, *depth, table)
            }
            PotentialKind::Geometric(ifs) => bounds_geometric(ifs, word, probe_depth),
        }
    }

    fn bounds_locally_constant(
        &self,
        word: &Word,
        probe_depth: usize,
        m: usize,
        table: &[f64],
    ) -> Result<CylinderBounds> {
        let s = self.alphabet.size();
        let n = word.len();
        // No window reaches past n+m-1 symbols; deeper probes add nothing.
        let probe = probe_depth.min(n + m - 1);
        let ext_len = probe - n;
        let ext_count = self.alphabet.count_words(ext_len).unwrap_or(u64::MAX);
        if ext_count > WORD_BUDGET {
            return Err(Error::Budget {
                requested: ext_count as u128,
                budget: WORD_BUDGET,
            });
        }
        let (minv, maxv) = prefix_envelopes(table, s, m);
        let mut syms = word.syms().to_vec();
        syms.resize(probe, 0);
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for ext_rank in 0..ext_count {
            let mut r = ext_rank;
            for k in (n..probe).rev() {
                syms[k] = (r % s as u64) as u8 + 1;
                r /= s as u64;
            }
            let mut lo_sum = 0.0;
            let mut hi_sum = 0.0;
            for k in 0..n {
                if k + m <= probe {
                    let v = table[window_rank(&syms, k, m, s)];
                    lo_sum += v;
                    hi_sum += v;
                } else {
                    // Window sticks out past the probe; bound the
                    // unseen suffix by the table envelope under the
                    // seen prefix.
                    let seen = probe - k;
                    let pr = window_rank(&syms, k, seen, s);
                    lo_sum += minv[seen][pr];
                    hi_sum += maxv[seen][pr];
                }
            }
            lower = lower.min(lo_sum);
            upper = upper.max(hi_sum);
        }
        Ok(CylinderBounds {
            lower,
            upper,
            certified: true,
        })
    }
}

/// Non-cyclic window rank: symbols `start..start+m` of `syms`.
fn window_rank(syms: &[u8], start: usize, m: usize, s: usize) -> usize {
    let mut r = 0usize;
    for j in 0..m {
        r = r * s + (syms[start + j] as usize - 1);
    }
    r
}

/// For each prefix length `l` and prefix rank, min/max of the table
/// over all completions to a full depth-`m` window.
fn prefix_envelopes(table: &[f64], s: usize, m: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut minv: Vec<Vec<f64>> = vec![Vec::new(); m + 1];
    let mut maxv: Vec<Vec<f64>> = vec![Vec::new(); m + 1];
    minv[m] = table.to_vec();
    maxv[m] = table.to_vec();
    for l in (0..m).rev() {
        let len = minv[l + 1].len() / s;
        let mut lo = vec![f64::INFINITY; len];
        let mut hi = vec![f64::NEG_INFINITY; len];
        for r in 0..len {
            for j in 0..s {
                lo[r] = lo[r].min(minv[l + 1][r * s + j]);
                hi[r] = hi[r].max(maxv[l + 1][r * s + j]);
            }
        }
        minv[l] = lo;
        maxv[l] = hi;
    }
    (minv, maxv)
}

/// Bounds for the geometric potential: over `[word]` the sum equals
/// `log (phi_word)'(z)` with `z` ranging over the attractor, which is
/// covered by the depth-`(probe-n)` cylinders. The composed
/// derivative is monotone in `z`, so extremes sit at the outermost
/// cover endpoints.
fn bounds_geometric(ifs: &IfsSpec, word: &Word, probe_depth: usize) -> Result<CylinderBounds> {
    let e = probe_depth - word.len();
    let (z_lo, z_hi) = ifs.cover_extremes(e)?;
    let (a, ea) = ifs.log_derivative_chain(word, z_lo)?;
    let (b, eb) = ifs.log_derivative_chain(word, z_hi)?;
    Ok(CylinderBounds {
        lower: a.min(b) - ea.max(eb),
        upper: a.max(b) + ea.max(eb),
        certified: true,
    })
}

/// Per-cylinder envelope of the potential itself (not its Birkhoff
/// sums) at a fixed depth: entry `r` bounds `f` on the rank-`r`
/// depth-`m` cylinder. This is what the certified pressure brackets
/// are built from.
pub(crate) struct DepthEnvelope {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl PotentialSpec {
    pub(crate) fn depth_envelope(&self, m: usize) -> Result<DepthEnvelope> {
        let s = self.alphabet.size();
        let count = self.alphabet.count_words(m)? as usize;
        let mut lo = vec![0.0; count];
        let mut hi = vec![0.0; count];
        match &self.kind {
            PotentialKind::SymbolLogWeights(vals) => {
                let per = count / s;
                for r in 0..count {
                    lo[r] = vals[r / per];
                    hi[r] = vals[r / per];
                }
            }
            PotentialKind::LocallyConstant { depth, table } => {
                if *depth <= m {
                    let tail = s.pow((m - depth) as u32);
                    for r in 0..count {
                        lo[r] = table[r / tail];
                        hi[r] = table[r / tail];
                    }
                } else {
                    let (minv, maxv) = prefix_envelopes(table, s, *depth);
                    lo.copy_from_slice(&minv[m]);
                    hi.copy_from_slice(&maxv[m]);
                }
            }
            PotentialKind::Geometric(ifs) => {
                ifs.geometric_envelope(m, &mut lo, &mut hi)?;
            }
        }
        if let Some((c, theta)) = self.hoelder_bound {
            // The stated variation bound may beat the structural one;
            // keep whichever is tighter per cylinder.
            let var = c * theta.powi(m as i32);
            let alphabet = self.alphabet;
            for r in 0..count {
                let word = alphabet.word_from_rank(m, r as u64);
                let center = self.birkhoff_value_first(&word)?;
                lo[r] = lo[r].max(center - var);
                hi[r] = hi[r].min(center + var);
                if lo[r] > hi[r] {
                    let mid = 0.5 * (lo[r] + hi[r]);
                    lo[r] = mid;
                    hi[r] = mid;
                }
            }
        }
        Ok(DepthEnvelope { lo, hi })
    }

    /// `f` evaluated at the periodic point of `word` (first term of
    /// the Birkhoff sum only).
    fn birkhoff_value_first(&self, word: &Word) -> Result<f64> {
        match &self.kind {
            PotentialKind::SymbolLogWeights(vals) => Ok(vals[word.syms()[0] as usize - 1]),
            PotentialKind::LocallyConstant { depth, table } => Ok(table
                [cyclic_window_rank(word.syms(), 0, *depth, self.alphabet.size())]),
            PotentialKind::Geometric(ifs) => {
                let z = ifs.periodic_tail_point(word)?;
                ifs.branch_log_derivative(word.syms()[0], z)
            }
        }
    }

    /// Depth-`m` locally constant stand-in: cylinder-envelope
    /// midpoints. Exact whenever [`value_depth`](Self::value_depth)
    /// is `<= m`.
    pub fn locally_constant_table(&self, m: usize) -> Result<Vec<f64>> {
        let env = self.depth_envelope(m)?;
        Ok(env
            .lo
            .iter()
            .zip(env.hi.iter())
            .map(|(a, b)| 0.5 * (a + b))
            .collect())
    }
}
