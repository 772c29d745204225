//! Special eigenvectors of the Coxeter matrix and τ-orbits of real Schur roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{AccError, POWER_TOL, PROPERTY_TOL};
use crate::quiver_core::{classify, BaseType, DimVector};
use crate::roots::{is_schur, normalize, root_classify, Ray, RootKind};
use crate::QuiverContext;

/// Iteration cap for power iteration.
const POWER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialEigenData {
    pub lambda_plus: f64,
    /// From power iteration on `C⁻¹`, so `λ₊λ₋ = 1` is a genuine check.
    pub lambda_minus: f64,
    pub y_minus: Ray,
    pub y_plus: Ray,
    pub euclidean_degenerate: bool,
    /// `‖C·y⁺ − λ₊·y⁺‖∞` and `‖C·y⁻ − λ₋·y⁻‖∞`.
    pub residual_plus: f64,
    pub residual_minus: f64,
    /// The null root in the Euclidean case.
    pub delta: Option<DimVector>,
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Dominant eigenpair by power iteration from the all-ones vector, iterates
/// normalized to coordinate sum 1.
fn power_iterate(m: &[Vec<f64>]) -> Result<(Vec<f64>, f64), AccError> {
    let n = m.len();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..POWER_CAP {
        let w = mat_vec(m, &v);
        let s: f64 = w.iter().sum();
        let w: Vec<f64> = w.iter().map(|x| x / s).collect();
        let step = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = w;
        if step <= POWER_TOL {
            let cv = mat_vec(m, &v);
            let lambda = cv.iter().sum::<f64>() / v.iter().sum::<f64>();
            return Ok((v, lambda));
        }
    }
    Err(AccError::NoConvergence(POWER_CAP))
}

fn residual(m: &[Vec<f64>], v: &[f64], lambda: f64) -> f64 {
    mat_vec(m, v)
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max)
}

pub fn special_eigenvectors(ctx: &QuiverContext) -> Result<SpecialEigenData, AccError> {
    let class = classify(ctx.quiver());
    let base = class.base().ok_or(AccError::Disconnected)?;
    let forms = ctx.forms();
    match base {
        BaseType::Dynkin => Err(AccError::DynkinInput),
        BaseType::Euclidean => {
            let mut k = forms
                .symmetric_matrix()
                .kernel()
                .into_iter()
                .next()
                .expect("Euclidean forms have a radical");
            if k.iter().any(|x| x.is_negative()) {
                k = k.into_iter().map(|x| -x).collect();
            }
            let delta = DimVector::new(k);
            let ray = normalize(&delta)?;
            Ok(SpecialEigenData {
                lambda_plus: 1.0,
                lambda_minus: 1.0,
                y_minus: ray.clone(),
                y_plus: ray,
                euclidean_degenerate: true,
                residual_plus: 0.0,
                residual_minus: 0.0,
                delta: Some(delta),
            })
        }
        BaseType::Wild => {
            let c = forms.coxeter_matrix().to_f64();
            let ci = forms.coxeter_inverse().to_f64();
            let (yp, lp) = power_iterate(&c)?;
            let (ym, mu) = power_iterate(&ci)?;
            let lm = 1.0 / mu;
            Ok(SpecialEigenData {
                lambda_plus: lp,
                lambda_minus: lm,
                residual_plus: residual(&c, &yp, lp),
                residual_minus: residual(&c, &ym, lm),
                y_minus: Ray::Approx {
                    coords: ym,
                    eps: POWER_TOL,
                },
                y_plus: Ray::Approx {
                    coords: yp,
                    eps: POWER_TOL,
                },
                euclidean_degenerate: false,
                delta: None,
            })
        }
    }
}

/// `Forward` applies `τ` (the Coxeter matrix), `Inverse` applies `τ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// `y⁺` for forward orbits, `y⁻` for inverse ones; `None` for Dynkin
    /// or disconnected quivers.
    pub target: Option<Ray>,
    /// ℓ∞ distance of each ray to the target.
    pub distances: Vec<f64>,
    /// Step at which the orbit left the positive orthant.
    pub aborted_at: Option<usize>,
    /// First step with distance at most [`PROPERTY_TOL`].
    pub first_within: Option<usize>,
    /// Start of the final strictly decreasing run of distances.
    pub monotone_from: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauOrbit {
    pub vectors: Vec<DimVector>,
    pub rays: Vec<Ray>,
    pub report: ConvergenceReport,
}

/// The rays of `d, τ^{∓1}d, …` for `steps` steps (the start is included).
pub fn tau_orbit(
    ctx: &QuiverContext,
    d: &DimVector,
    direction: Direction,
    steps: usize,
) -> Result<TauOrbit, AccError> {
    if !d.is_positive() || root_classify(ctx, d)? != RootKind::Real || !is_schur(ctx, d)? {
        return Err(AccError::NotRealSchur(d.clone()));
    }
    let target = match special_eigenvectors(ctx) {
        Ok(e) => Some(match direction {
            Direction::Forward => e.y_plus,
            Direction::Inverse => e.y_minus,
        }),
        Err(AccError::DynkinInput | AccError::Disconnected) => None,
        Err(e) => return Err(e),
    };
    let forms = ctx.forms();
    let mut vectors = vec![d.clone()];
    let mut aborted_at = None;
    for k in 1..=steps {
        let last = vectors.last().expect("nonempty");
        let next = match direction {
            Direction::Forward => forms.coxeter_apply(last),
            Direction::Inverse => forms.coxeter_inverse_apply(last),
        };
        if !next.is_positive() {
            aborted_at = Some(k);
            break;
        }
        vectors.push(next);
    }
    let rays: Vec<Ray> = vectors
        .iter()
        .map(|v| normalize(v).expect("orbit vectors are positive"))
        .collect();
    let distances: Vec<f64> = match &target {
        Some(t) => rays
            .iter()
            .map(|r| {
                r.dist_inf_exact(t)
                    .and_then(|x: BigRational| x.to_f64())
                    .unwrap_or_else(|| r.dist_inf(t))
            })
            .collect(),
        None => Vec::new(),
    };
    let first_within = distances.iter().position(|&x| x <= PROPERTY_TOL);
    let monotone_from = if distances.is_empty() {
        None
    } else {
        let mut k = distances.len() - 1;
        while k > 0 && distances[k] < distances[k - 1] {
            k -= 1;
        }
        Some(k)
    };
    Ok(TauOrbit {
        vectors,
        rays,
        report: ConvergenceReport {
            target,
            distances,
            aborted_at,
            first_within,
            monotone_from,
        },
    })
}

/// `λ₊` as the largest real root of the exact characteristic polynomial of
/// `C`, for cross-checking power iteration. Euclidean quivers have the double
/// root 1, which sign changes cannot see; it is confirmed by `p(1) = 0`.
pub fn lambda_plus_from_char_poly(ctx: &QuiverContext) -> Option<f64> {
    let p = crate::linalg::char_poly(ctx.forms().coxeter_matrix());
    let at_one: BigInt = p.iter().sum();
    match crate::linalg::largest_real_root(&p, 1e-13) {
        Some(r) if r > 1.0 + 1e-9 => Some(r),
        _ if at_one == BigInt::from(0) => Some(1.0),
        other => other,
    }
}
