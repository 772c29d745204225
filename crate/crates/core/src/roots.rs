//! Root classification by reflection descent, Schur tests, enumeration of
//! real Schur roots and normalized rays.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::homext::HomExtError;
use crate::quiver_core::DimVector;
use crate::QuiverContext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("zero vector")]
    ZeroVector,
    #[error("{0} is not a root")]
    NotARoot(DimVector),
    #[error("{0} is not a positive vector")]
    NotPositive(DimVector),
    #[error(transparent)]
    HomExt(#[from] HomExtError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    NotRoot,
    Real,
    Isotropic,
    StrictImaginary,
}

impl RootKind {
    pub fn is_root(self) -> bool {
        self != RootKind::NotRoot
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::NotRoot => "not_root",
            RootKind::Real => "real",
            RootKind::Isotropic => "isotropic",
            RootKind::StrictImaginary => "strict_imaginary",
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Root kind together with the Schur flag (always `false` for non-roots).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootClass {
    pub kind: RootKind,
    pub schur: bool,
}

/// Classifies `d` by descending to the fundamental set or to a simple root.
///
/// Negative vectors are classified through `−d`.
pub fn root_classify(ctx: &QuiverContext, d: &DimVector) -> Result<RootKind, RootError> {
    if d.is_zero() {
        return Err(RootError::ZeroVector);
    }
    let mut d = if d.is_nonpositive() { -d } else { d.clone() };
    if !d.is_nonnegative() {
        return Ok(RootKind::NotRoot);
    }
    let forms = ctx.forms();
    let n = d.len();
    let q = ctx.quiver();
    loop {
        let supp = d.support();
        if supp.len() == 1 && d[supp[0]] == BigInt::from(1) {
            return Ok(RootKind::Real);
        }
        let pairings: Vec<BigInt> = (0..n).map(|i| forms.pairing_with_simple(&d, i)).collect();
        // Largest positive pairing, smallest index on ties.
        let pivot = pairings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_positive())
            .fold(None::<(usize, &BigInt)>, |best, (i, c)| match best {
                Some((_, b)) if b >= c => best,
                _ => Some((i, c)),
            });
        match pivot {
            None => {
                if !q.is_connected_subset(&supp) {
                    return Ok(RootKind::NotRoot);
                }
                let t = forms.tits_form(&d);
                return Ok(if t.is_zero() {
                    RootKind::Isotropic
                } else {
                    RootKind::StrictImaginary
                });
            }
            Some((i, _)) => {
                d = forms.simple_reflection(i, &d);
                if !d.is_positive() {
                    return Ok(RootKind::NotRoot);
                }
            }
        }
    }
}

/// Schur test: the generic representation of dimension `d` has trivial
/// endomorphism ring. See [`HomExtTable::is_schur_vector`].
///
/// [`HomExtTable::is_schur_vector`]: crate::homext::HomExtTable::is_schur_vector
pub fn is_schur(ctx: &QuiverContext, d: &DimVector) -> Result<bool, RootError> {
    if !d.is_positive() {
        return Err(RootError::NotPositive(d.clone()));
    }
    if root_classify(ctx, d)? == RootKind::NotRoot {
        return Err(RootError::NotARoot(d.clone()));
    }
    Ok(ctx.homext().is_schur_vector(d)?)
}

/// Kind and Schur flag; the Schur test is skipped for non-roots.
pub fn root_class(ctx: &QuiverContext, d: &DimVector) -> Result<RootClass, RootError> {
    let kind = root_classify(ctx, d)?;
    let schur = if kind.is_root() && d.is_positive() {
        ctx.homext().is_schur_vector(d)?
    } else {
        false
    };
    Ok(RootClass { kind, schur })
}

/// All positive real roots of height at most `h`, by closure of the simple
/// roots under reflections that stay positive and within the bound.
pub fn enumerate_real_roots(ctx: &QuiverContext, h: u64) -> Vec<DimVector> {
    let n = ctx.quiver().vertex_count();
    let bound = BigInt::from(h);
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    if h >= 1 {
        for i in 0..n {
            let e = DimVector::unit(n, i);
            seen.insert(e.clone());
            queue.push_back(e);
        }
    }
    while let Some(d) = queue.pop_front() {
        for j in 0..n {
            let r = ctx.forms().simple_reflection(j, &d);
            if r.is_positive() && r.height() <= bound && !seen.contains(&r) {
                seen.insert(r.clone());
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// Positive real Schur roots of height at most `h`, sorted lexicographically.
pub fn enumerate_real_schur_roots(
    ctx: &QuiverContext,
    h: u64,
) -> Result<Vec<DimVector>, RootError> {
    let mut out = Vec::new();
    for d in enumerate_real_roots(ctx, h) {
        if ctx.homext().is_schur_vector(&d)? {
            out.push(d);
        }
    }
    Ok(out)
}

/// A point of `Δ(1)`: either exact rational or a float vector with an error
/// bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Ray {
    Rational(Vec<BigRational>),
    Approx { coords: Vec<f64>, eps: f64 },
}

impl Ray {
    pub fn is_rational(&self) -> bool {
        matches!(self, Ray::Rational(_))
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match self {
            Ray::Rational(v) => Some(v),
            Ray::Approx { .. } => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Ray::Rational(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            Ray::Approx { coords, .. } => coords.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Ray::Rational(v) => v.len(),
            Ray::Approx { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Normalizes a strictly positive-sum float vector onto `Δ(1)`.
    pub fn from_f64(v: &[f64], eps: f64) -> Ray {
        let s: f64 = v.iter().sum();
        Ray::Approx {
            coords: v.iter().map(|x| x / s).collect(),
            eps,
        }
    }

    /// ℓ∞ distance in `Δ(1)`, computed in floats.
    pub fn dist_inf(&self, other: &Ray) -> f64 {
        self.to_f64()
            .iter()
            .zip(other.to_f64())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Exact ℓ∞ distance when both rays are rational.
    pub fn dist_inf_exact(&self, other: &Ray) -> Option<BigRational> {
        let (a, b) = (self.exact()?, other.exact()?);
        Some(
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(BigRational::zero(), |m, x| if x > m { x } else { m }),
        )
    }

    /// Entries as strings: `"p/q"` for rational rays, decimals otherwise.
    pub fn to_strings(&self) -> Vec<String> {
        match self {
            Ray::Rational(v) => v.iter().map(rational_string).collect(),
            Ray::Approx { coords, .. } => coords.iter().map(|x| format!("{x:.12}")).collect(),
        }
    }
}

/// `p/q` form, or just `p` for integers.
pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `ď = d / s(d)`.
pub fn normalize(d: &DimVector) -> Result<Ray, RootError> {
    if !d.is_positive() {
        return Err(RootError::NotPositive(d.clone()));
    }
    let s = d.height();
    Ok(Ray::Rational(
        d.entries()
            .iter()
            .map(|x| BigRational::new(x.clone(), s.clone()))
            .collect(),
    ))
}

/// `q` evaluated on a rational vector.
pub fn tits_rational(ctx: &QuiverContext, v: &[BigRational]) -> BigRational {
    let e = ctx.forms().euler_matrix();
    let n = v.len();
    let mut acc = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            let c = e.get(i, j);
            if !c.is_zero() {
                acc += &v[i] * &v[j] * BigRational::from_integer(c.clone());
            }
        }
    }
    acc
}

/// `q` evaluated on a float vector.
pub fn tits_f64(ctx: &QuiverContext, v: &[f64]) -> f64 {
    let e = ctx.forms().euler_matrix().to_f64();
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| v[i] * e[i][j] * v[j]).sum::<f64>())
        .sum()
}
