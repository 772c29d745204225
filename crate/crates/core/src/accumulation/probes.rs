//! Numerical probes of structural statements about the quadric.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{special_eigenvectors, AccError, RankTwoInfo, PROPERTY_TOL};
use crate::candecomp::canonical_decomposition;
use crate::quiver_core::{classify, BaseType, DimVector, FormData};
use crate::roots::{normalize, rational_string, RootKind};
use crate::QuiverContext;

/// Quadric membership tolerance for normalized float vectors.
const QUADRIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborhoodReport {
    pub radius: String,
    pub samples: usize,
    pub with_strict_imaginary: usize,
    pub fraction: f64,
    pub violators: Vec<DimVector>,
    /// Largest ℓ∞ distance of a sample ray to the ray of `d`.
    pub max_distance: f64,
}

/// Samples integer vectors whose rays lie within `radius` (ℓ∞, on `Δ(1)`)
/// of the ray of `d` and reports how many decompose with a strictly
/// imaginary summand.
///
/// Samples are `k·d + e` with `k ∈ {N, …, 2N}`, `N = ⌈1/radius⌉`, and
/// `|e_i| ≤ ⌊radius·k·s(d)/2⌋`, negative entries clipped to zero; samples
/// outside the radius are redrawn. Radius 0 gives the multiples `d, 2d, …`.
pub fn strict_imaginary_neighborhood_probe(
    ctx: &QuiverContext,
    d: &DimVector,
    radius: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<NeighborhoodReport, AccError> {
    if !d.is_positive() {
        return Err(AccError::NotPositive(d.clone()));
    }
    if radius.is_negative() {
        return Err(AccError::PreconditionFailed(
            "radius must be nonnegative".into(),
        ));
    }
    if !canonical_decomposition(ctx, d)?.has_strict_imaginary() {
        return Err(AccError::PreconditionFailed(format!(
            "the canonical decomposition of {d} has no strictly imaginary summand"
        )));
    }
    let center = normalize(d)?;
    let center_exact = center.exact().expect("normalize is exact").to_vec();
    let dd = d
        .to_i64()
        .ok_or_else(|| AccError::PreconditionFailed(format!("{d} is too large")))?;
    let s: i64 = dd.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<DimVector> = Vec::with_capacity(samples);
    if radius.is_zero() {
        for k in 1..=samples as i64 {
            points.push(d.scale_i64(k));
        }
    } else {
        let n_min = (BigRational::from_integer(1.into()) / radius)
            .ceil()
            .to_integer()
            .to_i64()
            .unwrap_or(i64::MAX / 4);
        let rad = radius.to_f64().unwrap_or(0.0);
        let mut attempts = 0usize;
        while points.len() < samples {
            attempts += 1;
            if attempts > samples * 100 {
                return Err(AccError::PreconditionFailed(
                    "could not draw samples in the radius".into(),
                ));
            }
            let k = rng.gen_range(n_min..=2 * n_min);
            let bound = (rad * (k * s) as f64 / 2.0).floor() as i64;
            let f: Vec<i64> = dd
                .iter()
                .map(|&x| (k * x + rng.gen_range(-bound..=bound)).max(0))
                .collect();
            let fv = DimVector::from_i64(&f);
            if !fv.is_positive() {
                continue;
            }
            let ray = normalize(&fv)?;
            let dist = ray
                .exact()
                .expect("exact")
                .iter()
                .zip(&center_exact)
                .map(|(a, b)| (a - b).abs())
                .fold(BigRational::zero(), |m, x| if x > m { x } else { m });
            if &dist <= radius {
                points.push(fv);
            }
        }
    }
    let mut hits = 0;
    let mut violators = Vec::new();
    let mut max_distance: f64 = 0.0;
    for f in points {
        max_distance = max_distance.max(normalize(&f)?.dist_inf(&center));
        let dec = canonical_decomposition(ctx, &f)?;
        if dec
            .summands
            .iter()
            .any(|x| x.kind == RootKind::StrictImaginary)
        {
            hits += 1;
        } else {
            violators.push(f);
        }
    }
    Ok(NeighborhoodReport {
        radius: rational_string(radius),
        samples,
        with_strict_imaginary: hits,
        fraction: if samples == 0 {
            1.0
        } else {
            hits as f64 / samples as f64
        },
        violators,
        max_distance,
    })
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Relative distance of `a` from the line spanned by `b`; 1 when `b ≈ 0`.
fn parallel_residual(a: &[f64], b: &[f64]) -> f64 {
    let bb: f64 = b.iter().map(|x| x * x).sum();
    let na = norm2(a);
    if bb <= f64::EPSILON || na <= f64::EPSILON {
        return 1.0;
    }
    let c = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / bb;
    let r: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - c * y).collect();
    norm2(&r) / na
}

fn tits(forms: &FormData, v: &[f64]) -> f64 {
    let e = forms.euler_matrix().to_f64();
    let ev = mat_vec(&e, v);
    v.iter().zip(&ev).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangencyReport {
    /// `C·v ∥ v`.
    pub is_eigenvector: bool,
    /// `E·v ∥ A·v`: the hyperplane `⟨x, v⟩ = 0` is tangent to `q = 0` at `v`.
    pub is_tangent: bool,
    pub eigen_residual: f64,
    pub tangent_residual: f64,
}

pub fn tangency_report(forms: &FormData, v: &[f64]) -> Result<TangencyReport, AccError> {
    let nv = v.iter().map(|x| x * x).sum::<f64>();
    let qv = tits(forms, v);
    if nv == 0.0 || qv.abs() > QUADRIC_TOL * nv {
        return Err(AccError::NotOnQuadric(qv.abs()));
    }
    let c = forms.coxeter_matrix().to_f64();
    let e = forms.euler_matrix().to_f64();
    let a = forms.symmetric_matrix().to_f64();
    let eigen_residual = parallel_residual(&mat_vec(&c, v), v);
    let tangent_residual = parallel_residual(&mat_vec(&e, v), &mat_vec(&a, v));
    Ok(TangencyReport {
        is_eigenvector: eigen_residual <= PROPERTY_TOL,
        is_tangent: tangent_residual <= PROPERTY_TOL,
        eigen_residual,
        tangent_residual,
    })
}

/// Points of `q = 0` scaled to unit ℓ∞ norm: roots `s` of `q(u + s·w) = 0`
/// on random lines.
pub fn quadric_samples(forms: &FormData, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = forms.n();
    let a = forms.symmetric_matrix().to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let (qu, qw) = (tits(forms, &u), tits(forms, &w));
        let uw: f64 = u.iter().zip(mat_vec(&a, &w)).map(|(x, y)| x * y).sum();
        let disc = uw * uw - 4.0 * qw * qu;
        if qw.abs() < 1e-3 || disc < 0.0 {
            continue;
        }
        for sign in [-1.0, 1.0] {
            let s = (-uw + sign * disc.sqrt()) / (2.0 * qw);
            let v: Vec<f64> = u.iter().zip(&w).map(|(x, y)| x + s * y).collect();
            let m = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            if m > 0.0 && out.len() < count {
                out.push(v.iter().map(|x| x / m).collect());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentReport {
    pub max_q: f64,
    pub min_q: f64,
    /// `(c₁, c₂)` for the symmetric form.
    pub pairing: f64,
    /// All grid values vanish within tolerance.
    pub boundary_only: bool,
    pub pairing_zero: bool,
    /// `boundary_only` agrees with `pairing_zero`.
    pub consistent: bool,
}

/// `q` on `grid + 1` evenly spaced points of the segment from `c₁` to `c₂`.
pub fn segment_sign_probe(
    forms: &FormData,
    c1: &[f64],
    c2: &[f64],
    grid: usize,
) -> Result<SegmentReport, AccError> {
    for c in [c1, c2] {
        let qc = tits(forms, c);
        if qc.abs() > QUADRIC_TOL {
            return Err(AccError::NotOnQuadric(qc.abs()));
        }
        if c.iter().any(|&x| x < -QUADRIC_TOL) {
            return Err(AccError::PreconditionFailed(
                "rays must be nonnegative".into(),
            ));
        }
    }
    let grid = grid.max(1);
    let mut max_q = f64::NEG_INFINITY;
    let mut min_q = f64::INFINITY;
    for k in 0..=grid {
        let u = k as f64 / grid as f64;
        let p: Vec<f64> = c1
            .iter()
            .zip(c2)
            .map(|(a, b)| (1.0 - u) * a + u * b)
            .collect();
        let q = tits(forms, &p);
        max_q = max_q.max(q);
        min_q = min_q.min(q);
    }
    let a = forms.symmetric_matrix().to_f64();
    let pairing: f64 = c1.iter().zip(mat_vec(&a, c2)).map(|(x, y)| x * y).sum();
    let boundary_only = max_q.abs() <= PROPERTY_TOL && min_q.abs() <= PROPERTY_TOL;
    let pairing_zero = pairing.abs() <= PROPERTY_TOL;
    Ok(SegmentReport {
        max_q,
        min_q,
        pairing,
        boundary_only,
        pairing_zero,
        consistent: boundary_only == pairing_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AvoidanceStatus {
    Checked,
    /// Fewer than three vertices.
    SkippedSmallQuiver,
    /// Euclidean or Dynkin: `y±` are rational or absent.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidanceReport {
    pub status: AvoidanceStatus,
    pub notice: Option<String>,
    /// Per pair, the smaller ℓ∞ distance from `y⁻` or `y⁺` to the segment.
    pub margins: Vec<f64>,
    pub min_margin: Option<f64>,
}

/// ℓ∞ distance from `y` to the segment `[a, b]`, by ternary search on the
/// convex distance function.
fn dist_to_segment(a: &[f64], b: &[f64], y: &[f64]) -> f64 {
    let f = |u: f64| {
        a.iter()
            .zip(b)
            .zip(y)
            .map(|((p, q), r)| ((1.0 - u) * p + u * q - r).abs())
            .fold(0.0, f64::max)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f((lo + hi) / 2.0).min(f(0.0)).min(f(1.0))
}

/// Distance from `y⁻` and `y⁺` to each segment `ℓ_{α,β}` in `Δ(1)`.
pub fn y_pm_avoidance_check(
    ctx: &QuiverContext,
    pairs: &[RankTwoInfo],
) -> Result<AvoidanceReport, AccError> {
    if ctx.n() < 3 {
        return Ok(AvoidanceReport {
            status: AvoidanceStatus::SkippedSmallQuiver,
            notice: Some("needs at least three vertices".into()),
            margins: Vec::new(),
            min_margin: None,
        });
    }
    if !ctx.quiver().is_connected() {
        return Err(AccError::Disconnected);
    }
    if classify(ctx.quiver()).base() != Some(BaseType::Wild) {
        return Ok(AvoidanceReport {
            status: AvoidanceStatus::Vacuous,
            notice: Some("y± are not irrational points for Dynkin or Euclidean quivers".into()),
            margins: Vec::new(),
            min_margin: None,
        });
    }
    let eig = special_eigenvectors(ctx)?;
    let (ym, yp) = (eig.y_minus.to_f64(), eig.y_plus.to_f64());
    let ray = |d: &DimVector| normalize(d).map(|r| r.to_f64());
    let mut margins = Vec::with_capacity(pairs.len());
    for p in pairs {
        let (a, b) = (ray(&p.alpha)?, ray(&p.beta)?);
        margins.push(dist_to_segment(&a, &b, &ym).min(dist_to_segment(&a, &b, &yp)));
    }
    let min_margin = margins.iter().copied().reduce(f64::min);
    Ok(AvoidanceReport {
        status: AvoidanceStatus::Checked,
        notice: None,
        margins,
        min_margin,
    })
}
