//! Rational accumulation points and their witness sequences.

use num_bigint::BigInt;
use serde::Serialize;

use super::AccError;
use crate::candecomp::{canonical_decomposition, refine_isotropic, SchurSequenceState, Summand};
use crate::quiver_core::{classify, DimVector};
use crate::roots::{is_schur, root_classify, RootKind};
use crate::QuiverContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RationalAccumulation {
    Yes,
    No,
    /// Every summand is isotropic and the summands are pairwise Euler
    /// orthogonal; whether the ray accumulates is not decided.
    NecessaryConditionHolds,
}

/// Whether the vector `d` is a rational accumulation point.
///
/// `Yes` exactly for isotropic Schur roots. The answer is about the vector:
/// a multiple `pδ` of an isotropic Schur root shares its ray but reports
/// `NecessaryConditionHolds`. On at most weakly hyperbolic quivers a
/// decomposition into two or more distinct isotropic roots reports `No`.
pub fn is_rational_accumulation(
    ctx: &QuiverContext,
    d: &DimVector,
) -> Result<RationalAccumulation, AccError> {
    if !d.is_positive() {
        return Err(AccError::NotPositive(d.clone()));
    }
    let kind = root_classify(ctx, d)?;
    if kind == RootKind::Isotropic && is_schur(ctx, d)? {
        return Ok(RationalAccumulation::Yes);
    }
    let dec = canonical_decomposition(ctx, d)?;
    if dec.summands.iter().any(|s| s.kind != RootKind::Isotropic) {
        return Ok(RationalAccumulation::No);
    }
    let forms = ctx.forms();
    let zero = BigInt::from(0);
    for (i, a) in dec.summands.iter().enumerate() {
        for b in &dec.summands[i + 1..] {
            if forms.euler_form(&a.root, &b.root) != zero
                || forms.euler_form(&b.root, &a.root) != zero
            {
                return Ok(RationalAccumulation::No);
            }
        }
    }
    if dec.summands.len() >= 2 && classify(ctx.quiver()).at_most_weakly_hyperbolic {
        return Ok(RationalAccumulation::No);
    }
    Ok(RationalAccumulation::NecessaryConditionHolds)
}

/// Vectors with at most this many subvectors get a direct Schur test.
const DIRECT_SCHUR_BOX: u64 = 40_000;

fn box_size(v: &DimVector) -> u64 {
    v.to_i64()
        .map(|x| {
            x.iter()
                .fold(1u64, |acc, &e| acc.saturating_mul(e as u64 + 1))
        })
        .unwrap_or(u64::MAX)
}

/// Real Schur roots `m·β + (m+1)·γ` and `(m+1)·β + m·γ` for
/// `m = 0, …, count`, where `(β, γ)` refines `δ`. Within each `m` the root of
/// smaller height comes first, so distances to the ray of `δ` never increase.
///
/// Each root is checked real by descent. Schur is checked directly while the
/// vector is small; beyond that it follows from the exceptional pair
/// `(β, γ)`: the pair generates a subcategory equivalent to representations
/// of the Kronecker quiver, whose roots `(m, m+1)` and `(m+1, m)` are real
/// Schur.
pub fn isotropic_witness_sequence(
    ctx: &QuiverContext,
    delta: &DimVector,
    count: usize,
) -> Result<Vec<DimVector>, AccError> {
    if !delta.is_positive()
        || root_classify(ctx, delta)? != RootKind::Isotropic
        || !is_schur(ctx, delta)?
    {
        return Err(AccError::NotIsotropicSchur(delta.clone()));
    }
    let seq = SchurSequenceState {
        entries: vec![Summand::new(delta.clone(), 1, RootKind::Isotropic)],
    };
    let refined = refine_isotropic(ctx, &seq, 0)?;
    let (beta, gamma) = (&refined.entries[0].root, &refined.entries[1].root);
    let mut out = Vec::with_capacity(2 * count + 2);
    for m in 0..=count as i64 {
        let a = &beta.scale_i64(m) + &gamma.scale_i64(m + 1);
        let b = &beta.scale_i64(m + 1) + &gamma.scale_i64(m);
        let pair = if b.height() < a.height() {
            [b, a]
        } else {
            [a, b]
        };
        for v in pair {
            if root_classify(ctx, &v)? != RootKind::Real {
                return Err(AccError::NotRealSchur(v));
            }
            if box_size(&v) <= DIRECT_SCHUR_BOX && !is_schur(ctx, &v)? {
                return Err(AccError::NotRealSchur(v));
            }
            out.push(v);
        }
    }
    Ok(out)
}
