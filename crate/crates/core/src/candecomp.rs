//! Canonical decomposition of dimension vectors.
//!
//! The engine runs a Derksen–Weyman style loop on weak Schur sequences:
//! start from the simple roots, and while some pair violates finality,
//! replace it by the canonical decomposition of its span. Pairs of real roots
//! are resolved in closed form through the `t`-arrow Kronecker quiver; other
//! pairs by a bounded search in the rank-two lattice. Every answer is checked
//! against Kac's criterion before it is returned.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::homext::HomExtError;
use crate::quiver_core::DimVector;
use crate::roots::{is_schur, root_classify, RootError, RootKind};
use crate::QuiverContext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandecompError {
    #[error("{0} is not a positive vector")]
    NotPositive(DimVector),
    #[error("pair ({alpha}, {beta}) is not left orthogonal with ⟨β,α⟩ < 0")]
    NotOrthogonalPair { alpha: DimVector, beta: DimVector },
    #[error("no finite decomposition after {0} iterations")]
    IterationCapExceeded(u64),
    #[error("result failed the Kac criterion: {}", .0.join("; "))]
    Verification(Vec<String>),
    #[error("no decomposition found in the span of {alpha} and {beta}")]
    SearchFailed { alpha: DimVector, beta: DimVector },
    #[error("no real Schur pair refines entry {0}")]
    NoRefinementFound(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    HomExt(#[from] HomExtError),
}

/// A root with multiplicity. Strictly imaginary roots always carry
/// multiplicity 1: `p·σ` is stored as the single root `pσ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Summand {
    pub root: DimVector,
    pub mult: u64,
    #[serde(rename = "class")]
    pub kind: RootKind,
}

impl Summand {
    pub fn new(root: DimVector, mult: u64, kind: RootKind) -> Self {
        Summand { root, mult, kind }
    }

    /// `mult · root`.
    pub fn total(&self) -> DimVector {
        self.root.scale(&BigInt::from(self.mult))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}×{}", self.root, self.mult)
    }
}

/// Ordered roots with multiplicities driving the decomposition loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurSequenceState {
    pub entries: Vec<Summand>,
}

impl SchurSequenceState {
    pub fn total(&self, n: usize) -> DimVector {
        self.entries
            .iter()
            .fold(DimVector::zero(n), |acc, s| &acc + &s.total())
    }

    pub fn roots(&self) -> Vec<DimVector> {
        self.entries.iter().map(|s| s.root.clone()).collect()
    }

    /// Weak Schur sequence check: `root_i ⊥ root_j` for all `i < j`.
    pub fn is_weak_schur(&self, ctx: &QuiverContext) -> Result<bool, HomExtError> {
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                if !ctx
                    .homext()
                    .left_orthogonal(&self.entries[i].root, &self.entries[j].root)?
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Result of the canonical decomposition, in a final weak Schur order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub summands: Vec<Summand>,
}

impl CanonicalDecomposition {
    pub fn has_strict_imaginary(&self) -> bool {
        self.summands
            .iter()
            .any(|s| s.kind == RootKind::StrictImaginary)
    }

    pub fn total(&self, n: usize) -> DimVector {
        self.summands
            .iter()
            .fold(DimVector::zero(n), |acc, s| &acc + &s.total())
    }

    /// Summands sorted by root, for order-independent comparison.
    pub fn sorted(&self) -> Vec<Summand> {
        let mut v = self.summands.clone();
        v.sort_by(|a, b| a.root.cmp(&b.root));
        v
    }
}

impl fmt::Display for CanonicalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Simple roots with multiplicities `d_i`, sinks first, zero entries
/// dropped. Sinks-first order makes `e_i ⊥ e_j` whenever `e_i` precedes `e_j`.
pub fn trivial_schur_sequence(ctx: &QuiverContext, d: &DimVector) -> SchurSequenceState {
    let n = ctx.n();
    let entries = ctx
        .quiver()
        .sinks_first_order()
        .into_iter()
        .filter(|&v| d[v].is_positive())
        .map(|v| {
            Summand::new(
                DimVector::unit(n, v),
                d[v].to_u64().expect("multiplicity fits in u64"),
                RootKind::Real,
            )
        })
        .collect();
    SchurSequenceState { entries }
}

/// Final: `⟨root_j, root_i⟩ ≥ 0` for all `i < j`.
pub fn is_final(ctx: &QuiverContext, s: &SchurSequenceState) -> bool {
    first_violation(ctx, s).is_none()
}

/// Violating pair with minimal `j − i`, then minimal `i`.
fn first_violation(ctx: &QuiverContext, s: &SchurSequenceState) -> Option<(usize, usize)> {
    let m = s.entries.len();
    for gap in 1..m {
        for i in 0..m - gap {
            let j = i + gap;
            if ctx
                .forms()
                .euler_form(&s.entries[j].root, &s.entries[i].root)
                .is_negative()
            {
                return Some((i, j));
            }
        }
    }
    None
}

/// The ladder `c₀ = 0, c₁ = 1, c_{m+1} = t·c_m − c_{m−1}` up to index `len`.
fn ladder(t: &BigInt, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(), BigInt::from(1)];
    while c.len() <= len {
        let k = c.len();
        let next = t * &c[k - 1] - &c[k - 2];
        c.push(next);
    }
    c
}

/// Canonical decomposition of `x = (x₁, x₂)` in the `t`-arrow Kronecker
/// quiver, as `(local root, multiplicity, kind)` in weak Schur order, where
/// `(0,1)` is the sink simple. Zero multiplicities are dropped.
fn kronecker_local(
    x1: &BigInt,
    x2: &BigInt,
    t: &BigInt,
) -> Vec<((BigInt, BigInt), BigInt, RootKind)> {
    let one = BigInt::from(1);
    let zero = BigInt::zero();
    let qv = x1 * x1 + x2 * x2 - t * x1 * x2;
    let mut out: Vec<((BigInt, BigInt), BigInt, RootKind)> = Vec::new();
    if x1.is_zero() && x2.is_zero() {
        return out;
    }
    if qv.is_negative() {
        out.push(((x1.clone(), x2.clone()), one, RootKind::StrictImaginary));
        return out;
    }
    if qv.is_zero() {
        // Only t = 2 and x₁ = x₂ reach this branch.
        out.push(((one.clone(), one.clone()), x1.clone(), RootKind::Isotropic));
        return out;
    }
    if *t == one {
        if x1 >= x2 {
            out.push(((one.clone(), zero.clone()), x1 - x2, RootKind::Real));
            out.push(((one.clone(), one.clone()), x2.clone(), RootKind::Real));
        } else {
            out.push(((one.clone(), one.clone()), x1.clone(), RootKind::Real));
            out.push(((zero.clone(), one.clone()), x2 - x1, RootKind::Real));
        }
        out.retain(|e| e.1.is_positive());
        return out;
    }
    // t ≥ 2: on the side x₁ > x₂ the ladder is ρ_m = (c_{m+1}, c_m); the other
    // side is the mirror image.
    let swapped = x1 < x2;
    let (y1, y2) = if swapped { (x2, x1) } else { (x1, x2) };
    let mut c = ladder(t, 3);
    let mut m = 0usize;
    loop {
        if c.len() < m + 3 {
            c = ladder(t, m + 3);
        }
        // Unimodular: c_{m+1}² − c_m c_{m+2} = 1.
        let m1 = &c[m + 1] * y1 - &c[m + 2] * y2;
        let m2 = -&c[m] * y1 + &c[m + 1] * y2;
        if !m1.is_negative() && !m2.is_negative() {
            let r0 = (c[m + 1].clone(), c[m].clone());
            let r1 = (c[m + 2].clone(), c[m + 1].clone());
            let mut pair = vec![(r0, m1), (r1, m2)];
            if swapped {
                // Preprojective side: the later ladder root comes first.
                pair = pair
                    .into_iter()
                    .map(|((a, b), k)| ((b, a), k))
                    .rev()
                    .collect();
            }
            for (r, k) in pair {
                if k.is_positive() {
                    out.push((r, k, RootKind::Real));
                }
            }
            return out;
        }
        m += 1;
    }
}

/// Closed-form resolution of `p·α ⊕ q·β` for real Schur roots with `α ⊥ β`
/// and `t = −⟨β,α⟩ ≥ 1`, through local coordinates `(x₁, x₂) = (q, p)`.
pub fn resolve_rank2(
    alpha: &DimVector,
    p: u64,
    beta: &DimVector,
    q: u64,
    t: u64,
) -> Result<Vec<Summand>, CandecompError> {
    if t == 0 {
        return Err(CandecompError::NotOrthogonalPair {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    let local = kronecker_local(&BigInt::from(q), &BigInt::from(p), &BigInt::from(t));
    Ok(local
        .into_iter()
        .map(|((a, b), k, kind)| {
            let root = &beta.scale(&a) + &alpha.scale(&b);
            Summand::new(root, k.to_u64().expect("multiplicity fits in u64"), kind)
        })
        .collect())
}

/// [`resolve_rank2`] after checking `α ⊥ β` and computing `t`.
pub fn resolve_rank2_checked(
    ctx: &QuiverContext,
    alpha: &DimVector,
    p: u64,
    beta: &DimVector,
    q: u64,
) -> Result<Vec<Summand>, CandecompError> {
    let t = -ctx.forms().euler_form(beta, alpha);
    if !t.is_positive() || !ctx.homext().left_orthogonal(alpha, beta)? {
        return Err(CandecompError::NotOrthogonalPair {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    resolve_rank2(alpha, p, beta, q, t.to_u64().expect("t fits in u64"))
}

/// Options for [`canonical_decomposition_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecompOptions {
    /// Iteration cap; `None` means `64·n·s(d)`.
    pub iteration_cap: Option<u64>,
}

pub fn canonical_decomposition(
    ctx: &QuiverContext,
    d: &DimVector,
) -> Result<CanonicalDecomposition, CandecompError> {
    canonical_decomposition_with(ctx, d, DecompOptions::default())
}

pub fn canonical_decomposition_with(
    ctx: &QuiverContext,
    d: &DimVector,
    opts: DecompOptions,
) -> Result<CanonicalDecomposition, CandecompError> {
    if !d.is_positive() {
        return Err(CandecompError::NotPositive(d.clone()));
    }
    let start = trivial_schur_sequence(ctx, d);
    run_loop(ctx, start, d, opts)
}

/// Runs the loop from a caller-supplied starting sequence whose total is `d`.
pub fn canonical_decomposition_from(
    ctx: &QuiverContext,
    start: SchurSequenceState,
    d: &DimVector,
    opts: DecompOptions,
) -> Result<CanonicalDecomposition, CandecompError> {
    if start.total(ctx.n()) != *d {
        return Err(CandecompError::Precondition(
            "starting sequence does not sum to d".into(),
        ));
    }
    run_loop(ctx, start, d, opts)
}

fn run_loop(
    ctx: &QuiverContext,
    mut s: SchurSequenceState,
    d: &DimVector,
    opts: DecompOptions,
) -> Result<CanonicalDecomposition, CandecompError> {
    let cap = opts.iteration_cap.unwrap_or_else(|| {
        let h = d.height().to_u64().unwrap_or(u64::MAX / 128);
        64 * ctx.n() as u64 * h.max(1)
    });
    fold_imaginary(&mut s);
    merge_duplicates(&mut s);
    let mut iterations = 0u64;
    while let Some((mut i, mut j)) = first_violation(ctx, &s) {
        iterations += 1;
        if iterations > cap {
            return Err(CandecompError::IterationCapExceeded(cap));
        }
        // Bring the pair together through entries orthogonal in both orders.
        while j > i + 1 && both_ways_orthogonal(ctx, &s.entries[j - 1].root, &s.entries[j].root)? {
            s.entries.swap(j - 1, j);
            j -= 1;
        }
        while j > i + 1 && both_ways_orthogonal(ctx, &s.entries[i].root, &s.entries[i + 1].root)? {
            s.entries.swap(i, i + 1);
            i += 1;
        }
        if j > i + 1 {
            let e = s.entries.remove(j);
            s.entries.insert(i + 1, e);
        }
        let a = s.entries[i].clone();
        let b = s.entries[i + 1].clone();
        let replacement = resolve_pair(ctx, &a, &b)?;
        s.entries.splice(i..=i + 1, replacement);
        merge_duplicates(&mut s);
    }
    let cand = CanonicalDecomposition {
        summands: s.entries,
    };
    let report = verify_kac_criterion(ctx, &cand, d)?;
    if !report.ok {
        return Err(CandecompError::Verification(report.reasons));
    }
    Ok(cand)
}

fn both_ways_orthogonal(
    ctx: &QuiverContext,
    a: &DimVector,
    b: &DimVector,
) -> Result<bool, HomExtError> {
    Ok(ctx.homext().left_orthogonal(a, b)? && ctx.homext().left_orthogonal(b, a)?)
}

fn resolve_pair(
    ctx: &QuiverContext,
    a: &Summand,
    b: &Summand,
) -> Result<Vec<Summand>, CandecompError> {
    if a.kind == RootKind::Real && b.kind == RootKind::Real && a.root != b.root {
        match resolve_rank2_checked(ctx, &a.root, a.mult, &b.root, b.mult) {
            Ok(v) => return Ok(v),
            Err(CandecompError::NotOrthogonalPair { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let target = &a.total() + &b.total();
    decompose_in_span(ctx, &a.root, &b.root, &target)
}

/// Strictly imaginary entries with multiplicity `p` become the root `pσ`.
fn fold_imaginary(s: &mut SchurSequenceState) {
    for e in &mut s.entries {
        if e.kind == RootKind::StrictImaginary && e.mult > 1 {
            e.root = e.total();
            e.mult = 1;
        }
    }
}

/// Merges repeated real or isotropic roots into their first occurrence.
fn merge_duplicates(s: &mut SchurSequenceState) {
    let mut i = 0;
    while i < s.entries.len() {
        let mut j = i + 1;
        while j < s.entries.len() {
            if s.entries[j].root == s.entries[i].root
                && s.entries[i].kind != RootKind::StrictImaginary
            {
                let extra = s.entries.remove(j).mult;
                s.entries[i].mult += extra;
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

/// Integer vectors `0 ≤ w ≤ target` in the rational span of `a` and `b`.
fn span_points(a: &DimVector, b: &DimVector, target: &DimVector) -> Vec<DimVector> {
    let n = target.len();
    let t: Vec<i64> = target
        .to_i64()
        .expect("bounded search works on small vectors");
    let (av, bv) = (a.to_i64().expect("small"), b.to_i64().expect("small"));
    // w is in span{a,b} iff every 3×3 minor of [a b w] vanishes; with rank
    // two or less of [a b], test via the 2×2 minors when a ∥ b.
    let minor2 = |u: &[i64], v: &[i64], i: usize, j: usize| u[i] * v[j] - u[j] * v[i];
    let independent = (0..n).any(|i| (i + 1..n).any(|j| minor2(&av, &bv, i, j) != 0));
    let in_span = |w: &[i64]| -> bool {
        if independent {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let det = av[i] * (bv[j] * w[k] - bv[k] * w[j])
                            - av[j] * (bv[i] * w[k] - bv[k] * w[i])
                            + av[k] * (bv[i] * w[j] - bv[j] * w[i]);
                        if det != 0 {
                            return false;
                        }
                    }
                }
            }
            true
        } else {
            let base = if av.iter().any(|&x| x != 0) { &av } else { &bv };
            (0..n).all(|i| (i + 1..n).all(|j| minor2(base, w, i, j) == 0))
        }
    };
    let mut out = Vec::new();
    let mut w = vec![0i64; n];
    loop {
        if w.iter().any(|&x| x != 0) && in_span(&w) {
            out.push(DimVector::from_i64(&w));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if w[i] < t[i] {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Bounded search for the canonical decomposition of `target` among
/// combinations of `a` and `b`: Schur roots in the span with pairwise
/// vanishing ext.
fn decompose_in_span(
    ctx: &QuiverContext,
    a: &DimVector,
    b: &DimVector,
    target: &DimVector,
) -> Result<Vec<Summand>, CandecompError> {
    let mut cands: Vec<(DimVector, RootKind)> = Vec::new();
    for w in span_points(a, b, target) {
        let kind = root_classify(ctx, &w)?;
        if kind.is_root() && ctx.homext().is_schur_vector(&w)? {
            cands.push((w, kind));
        }
    }
    // Larger roots first: the decomposition tends to use few, large summands.
    cands.sort_by(|x, y| y.0.height().cmp(&x.0.height()).then_with(|| x.0.cmp(&y.0)));
    let mut chosen: Vec<Summand> = Vec::new();
    if !search(ctx, &cands, 0, target, &mut chosen)? {
        return Err(CandecompError::SearchFailed {
            alpha: a.clone(),
            beta: b.clone(),
        });
    }
    order_weak_schur(ctx, chosen)
}

fn search(
    ctx: &QuiverContext,
    cands: &[(DimVector, RootKind)],
    start: usize,
    remaining: &DimVector,
    chosen: &mut Vec<Summand>,
) -> Result<bool, CandecompError> {
    if remaining.is_zero() {
        return Ok(true);
    }
    for k in start..cands.len() {
        let (w, kind) = &cands[k];
        if !w.le(remaining) {
            continue;
        }
        let mut compatible = true;
        for c in chosen.iter() {
            if !ctx.homext().ext_vanishes(w, &c.root)? || !ctx.homext().ext_vanishes(&c.root, w)? {
                compatible = false;
                break;
            }
        }
        if !compatible {
            continue;
        }
        let max_mult = if *kind == RootKind::StrictImaginary {
            1
        } else {
            let mut m = 0u64;
            let mut acc = w.clone();
            while acc.le(remaining) {
                m += 1;
                acc = &acc + w;
            }
            if m > 1 && !ctx.homext().ext_vanishes(w, w)? {
                1
            } else {
                m
            }
        };
        for m in (1..=max_mult).rev() {
            let rest = remaining - &w.scale(&BigInt::from(m));
            chosen.push(Summand::new(w.clone(), m, *kind));
            if search(ctx, cands, k + 1, &rest, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Orders summands so that `hom(r_i, r_j) = 0` for `i < j`, when possible.
fn order_weak_schur(
    ctx: &QuiverContext,
    mut items: Vec<Summand>,
) -> Result<Vec<Summand>, CandecompError> {
    let mut out = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let mut pick = None;
        for (x, cand) in items.iter().enumerate() {
            let mut ok = true;
            for (y, other) in items.iter().enumerate() {
                if x != y && ctx.homext().hom_generic(&cand.root, &other.root)? != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                pick = Some(x);
                break;
            }
        }
        out.push(items.remove(pick.unwrap_or(0)));
    }
    Ok(out)
}

/// Outcome of [`verify_kac_criterion`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KacReport {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Kac's criterion: the summands add up to `d`, each root is Schur, and
/// `ext` vanishes between any two distinct summand copies.
pub fn verify_kac_criterion(
    ctx: &QuiverContext,
    cand: &CanonicalDecomposition,
    d: &DimVector,
) -> Result<KacReport, CandecompError> {
    let mut reasons = Vec::new();
    let total = cand.total(ctx.n());
    if total != *d {
        reasons.push(format!("summands add up to {total}, not {d}"));
    }
    for s in &cand.summands {
        if s.mult == 0 {
            reasons.push(format!("{} has multiplicity 0", s.root));
            continue;
        }
        if !s.root.is_positive() {
            reasons.push(format!("{} is not positive", s.root));
            continue;
        }
        match is_schur(ctx, &s.root) {
            Ok(true) => {}
            Ok(false) => reasons.push(format!("{} is not a Schur root", s.root)),
            Err(RootError::NotARoot(_)) => reasons.push(format!("{} is not a root", s.root)),
            Err(e) => return Err(e.into()),
        }
        let kind = root_classify(ctx, &s.root)?;
        if kind != s.kind {
            reasons.push(format!("{} is {kind}, labelled {}", s.root, s.kind));
        }
        if s.mult > 1 && !ctx.homext().ext_vanishes(&s.root, &s.root)? {
            reasons.push(format!(
                "ext({0},{0}) ≠ 0 but multiplicity is {1}",
                s.root, s.mult
            ));
        }
    }
    for (i, a) in cand.summands.iter().enumerate() {
        for (j, b) in cand.summands.iter().enumerate() {
            if i == j || !a.root.is_nonnegative() || !b.root.is_nonnegative() {
                continue;
            }
            let e = ctx.homext().ext_generic(&a.root, &b.root)?;
            if e != 0 {
                reasons.push(format!("ext({},{}) = {e}", a.root, b.root));
            }
        }
    }
    Ok(KacReport {
        ok: reasons.is_empty(),
        reasons,
    })
}

/// Replaces the isotropic entry `i` by a pair of real Schur roots `(β, γ)`
/// with `β + γ = α_i`, `β ⊥ γ`, `⟨γ,β⟩ = −2`, keeping left orthogonality
/// with every other entry. Both new entries inherit the multiplicity of `α_i`.
pub fn refine_isotropic(
    ctx: &QuiverContext,
    s: &SchurSequenceState,
    i: usize,
) -> Result<SchurSequenceState, CandecompError> {
    let entry = s
        .entries
        .get(i)
        .ok_or_else(|| CandecompError::Precondition(format!("no entry {i}")))?;
    if entry.kind != RootKind::Isotropic {
        return Err(CandecompError::Precondition(format!(
            "entry {i} ({}) is not isotropic",
            entry.root
        )));
    }
    if s.entries
        .iter()
        .any(|e| e.kind == RootKind::StrictImaginary)
    {
        return Err(CandecompError::Precondition(
            "sequence contains a strictly imaginary root".into(),
        ));
    }
    let (beta, gamma) = real_pair_below(ctx, s, i)?.ok_or(CandecompError::NoRefinementFound(i))?;
    let mut out = s.clone();
    let mult = entry.mult;
    out.entries.splice(
        i..=i,
        [
            Summand::new(beta, mult, RootKind::Real),
            Summand::new(gamma, mult, RootKind::Real),
        ],
    );
    Ok(out)
}

fn real_pair_below(
    ctx: &QuiverContext,
    s: &SchurSequenceState,
    i: usize,
) -> Result<Option<(DimVector, DimVector)>, CandecompError> {
    let delta = &s.entries[i].root;
    let one = BigInt::from(1);
    let minus_two = BigInt::from(-2);
    let hx = ctx.homext();
    let dv = delta.to_i64().expect("isotropic root of moderate size");
    let mut x = vec![0i64; dv.len()];
    loop {
        let beta = DimVector::from_i64(&x);
        if beta.is_positive() && beta != *delta {
            let gamma = delta - &beta;
            let f = ctx.forms();
            if f.tits_form(&beta) == one
                && f.tits_form(&gamma) == one
                && f.euler_form(&gamma, &beta) == minus_two
                && root_classify(ctx, &beta)? == RootKind::Real
                && root_classify(ctx, &gamma)? == RootKind::Real
                && hx.is_schur_vector(&beta)?
                && hx.is_schur_vector(&gamma)?
                && hx.left_orthogonal(&beta, &gamma)?
            {
                let mut fits = true;
                for (k, e) in s.entries.iter().enumerate() {
                    if k == i {
                        continue;
                    }
                    let ok = if k < i {
                        hx.left_orthogonal(&e.root, &beta)?
                            && hx.left_orthogonal(&e.root, &gamma)?
                    } else {
                        hx.left_orthogonal(&beta, &e.root)?
                            && hx.left_orthogonal(&gamma, &e.root)?
                    };
                    if !ok {
                        fits = false;
                        break;
                    }
                }
                if fits {
                    return Ok(Some((beta, gamma)));
                }
            }
        }
        let mut k = 0;
        loop {
            if k == dv.len() {
                return Ok(None);
            }
            if x[k] < dv[k] {
                x[k] += 1;
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::from_i64(x)
    }

    fn ctx(name: &str) -> QuiverContext {
        QuiverContext::new(corpus::get(name).unwrap())
    }

    fn s(root: &[i64], mult: u64, kind: RootKind) -> Summand {
        Summand::new(dv(root), mult, kind)
    }

    #[test]
    fn trivial_sequence_kronecker() {
        let k = ctx("kronecker");
        let t = trivial_schur_sequence(&k, &dv(&[3, 1]));
        assert_eq!(
            t.entries,
            vec![s(&[0, 1], 1, RootKind::Real), s(&[1, 0], 3, RootKind::Real)]
        );
        assert!(t.is_weak_schur(&k).unwrap());
        assert_eq!(trivial_schur_sequence(&k, &dv(&[0, 1])).entries.len(), 1);
        let d4 = ctx("d4");
        assert_eq!(
            trivial_schur_sequence(&d4, &dv(&[1, 1, 1, 1]))
                .entries
                .len(),
            4
        );
    }

    #[test]
    fn finality() {
        let k = ctx("kronecker");
        let seq = |v: Vec<Summand>| SchurSequenceState { entries: v };
        assert!(!is_final(
            &k,
            &seq(vec![
                s(&[0, 1], 1, RootKind::Real),
                s(&[1, 0], 1, RootKind::Real)
            ])
        ));
        assert!(is_final(&k, &seq(vec![s(&[0, 1], 1, RootKind::Real)])));
        assert!(is_final(
            &k,
            &seq(vec![
                s(&[1, 0], 1, RootKind::Real),
                s(&[2, 1], 1, RootKind::Real)
            ])
        ));
    }

    #[test]
    fn rank2_closed_forms() {
        // Local coordinates: α = (0,1), β = (1,0).
        let (a, b) = (dv(&[0, 1]), dv(&[1, 0]));
        assert_eq!(
            resolve_rank2(&a, 1, &b, 1, 2).unwrap(),
            vec![s(&[1, 1], 1, RootKind::Isotropic)]
        );
        assert_eq!(
            resolve_rank2(&a, 3, &b, 1, 2).unwrap(),
            vec![s(&[1, 2], 1, RootKind::Real), s(&[0, 1], 1, RootKind::Real)]
        );
        assert_eq!(
            resolve_rank2(&a, 1, &b, 1, 3).unwrap(),
            vec![s(&[1, 1], 1, RootKind::StrictImaginary)]
        );
        assert_eq!(
            resolve_rank2(&a, 1, &b, 3, 2).unwrap(),
            vec![s(&[1, 0], 1, RootKind::Real), s(&[2, 1], 1, RootKind::Real)]
        );
        assert_eq!(
            resolve_rank2(&a, 1, &b, 2, 1).unwrap(),
            vec![s(&[1, 0], 1, RootKind::Real), s(&[1, 1], 1, RootKind::Real)]
        );
        assert!(resolve_rank2(&a, 1, &b, 1, 0).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let k = ctx("kronecker");
        let c = canonical_decomposition(&k, &dv(&[3, 1])).unwrap();
        assert_eq!(
            c.sorted(),
            vec![s(&[1, 0], 1, RootKind::Real), s(&[2, 1], 1, RootKind::Real)]
        );
        let c = canonical_decomposition(&k, &dv(&[2, 2])).unwrap();
        assert_eq!(c.summands, vec![s(&[1, 1], 2, RootKind::Isotropic)]);
        let t3 = ctx("theta-3");
        let c = canonical_decomposition(&t3, &dv(&[1, 1])).unwrap();
        assert_eq!(c.summands, vec![s(&[1, 1], 1, RootKind::StrictImaginary)]);
        let c = canonical_decomposition(&t3, &dv(&[2, 2])).unwrap();
        assert_eq!(c.summands, vec![s(&[2, 2], 1, RootKind::StrictImaginary)]);
    }

    #[test]
    fn kac_verifier() {
        let k = ctx("kronecker");
        let good = CanonicalDecomposition {
            summands: vec![s(&[1, 0], 1, RootKind::Real), s(&[2, 1], 1, RootKind::Real)],
        };
        assert!(verify_kac_criterion(&k, &good, &dv(&[3, 1])).unwrap().ok);
        let not_schur = CanonicalDecomposition {
            summands: vec![s(&[2, 2], 1, RootKind::Isotropic)],
        };
        assert!(
            !verify_kac_criterion(&k, &not_schur, &dv(&[2, 2]))
                .unwrap()
                .ok
        );
        let ext = CanonicalDecomposition {
            summands: vec![s(&[1, 0], 3, RootKind::Real), s(&[0, 1], 1, RootKind::Real)],
        };
        assert!(!verify_kac_criterion(&k, &ext, &dv(&[3, 1])).unwrap().ok);
    }

    #[test]
    fn refinement() {
        let k = ctx("kronecker");
        let seq = SchurSequenceState {
            entries: vec![s(&[1, 1], 1, RootKind::Isotropic)],
        };
        let r = refine_isotropic(&k, &seq, 0).unwrap();
        assert_eq!(r.roots(), vec![dv(&[0, 1]), dv(&[1, 0])]);
        let real = SchurSequenceState {
            entries: vec![s(&[1, 0], 1, RootKind::Real)],
        };
        assert!(matches!(
            refine_isotropic(&k, &real, 0),
            Err(CandecompError::Precondition(_))
        ));
        let tri = ctx("euclidean-a2-triangle");
        let seq = SchurSequenceState {
            entries: vec![s(&[1, 1, 1], 1, RootKind::Isotropic)],
        };
        let r = refine_isotropic(&tri, &seq, 0).unwrap();
        let (b, g) = (&r.entries[0].root, &r.entries[1].root);
        assert_eq!(&(b + g), &dv(&[1, 1, 1]));
        assert_eq!(tri.forms().euler_form(g, b), BigInt::from(-2));
        assert!(r.is_weak_schur(&tri).unwrap());
    }
}
