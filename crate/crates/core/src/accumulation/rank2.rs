//! Rank-two subcategories generated by exceptional pairs and the Acc₂ scan.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::surd::{exact_sqrt, segment_point, squarefree_split};
use super::{AccError, AccRay};
use crate::quiver_core::{DimVector, FormData};
use crate::roots::enumerate_real_schur_roots;
use crate::QuiverContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CategoryType {
    Finite,
    Tame,
    Wild,
}

impl CategoryType {
    pub fn from_t(t: u64) -> Self {
        match t {
            0 | 1 => CategoryType::Finite,
            2 => CategoryType::Tame,
            _ => CategoryType::Wild,
        }
    }
}

/// An exceptional pair `α ⊥ β` of real Schur roots, relative simples of the
/// rank-two subcategory they generate.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoInfo {
    pub alpha: DimVector,
    pub beta: DimVector,
    /// `t = −⟨β,α⟩`.
    pub t: u64,
    pub category_type: CategoryType,
    /// `[a, b, c]` with `q(sα + (1−s)β) = a·s² + b·s + c`.
    pub quadratic: [BigInt; 3],
    pub isotropic_rays: Vec<AccRay>,
}

fn segment_quadratic(forms: &FormData, alpha: &DimVector, beta: &DimVector) -> [BigInt; 3] {
    let qa = forms.tits_form(alpha);
    let qb = forms.tits_form(beta);
    let ab = forms.symmetric_form(alpha, beta);
    [&qa + &qb - &ab, &ab - &qb * 2, qb]
}

fn isotropic_points(alpha: &DimVector, beta: &DimVector, quad: &[BigInt; 3]) -> Vec<AccRay> {
    let [a, b, c] = quad;
    if a.is_zero() {
        // Linear: only when q is affine along the segment.
        if b.is_zero() {
            return Vec::new();
        }
        let s = BigRational::new(-c, b.clone());
        if s.is_negative() || s > BigRational::one() {
            return Vec::new();
        }
        return vec![segment_point(
            alpha,
            beta,
            &s,
            &BigRational::zero(),
            &BigInt::one(),
        )];
    }
    let disc: BigInt = b * b - a * c * 4;
    if disc.is_negative() {
        return Vec::new();
    }
    let p = BigRational::new(-b, a * 2);
    let in_unit = |x: f64| (-1e-12..=1.0 + 1e-12).contains(&x);
    if disc.is_zero() {
        return vec![segment_point(
            alpha,
            beta,
            &p,
            &BigRational::zero(),
            &BigInt::one(),
        )];
    }
    let mut out = Vec::new();
    if let Some(r) = exact_sqrt(&disc) {
        for sign in [-1, 1] {
            let s = &p + BigRational::new(r.clone() * sign, a * 2);
            if !s.is_negative() && s <= BigRational::one() {
                out.push(segment_point(
                    alpha,
                    beta,
                    &s,
                    &BigRational::zero(),
                    &BigInt::one(),
                ));
            }
        }
        return out;
    }
    let (f, d0) = squarefree_split(&disc);
    for sign in [-1, 1] {
        let r = BigRational::new(f.clone() * sign, a * 2);
        let s = p.to_f64().unwrap_or(f64::NAN)
            + r.to_f64().unwrap_or(f64::NAN) * d0.to_f64().unwrap_or(f64::NAN).sqrt();
        if in_unit(s) {
            out.push(segment_point(alpha, beta, &p, &r, &d0));
        }
    }
    out
}

/// Isotropic points of the segment between `α` and `β`: none for finite
/// pairs, the rational ray of `α+β` for tame ones, two quadratic
/// irrationals for wild ones.
pub fn rank2_isotropic_rays(forms: &FormData, info: &RankTwoInfo) -> Vec<AccRay> {
    let quad = segment_quadratic(forms, &info.alpha, &info.beta);
    isotropic_points(&info.alpha, &info.beta, &quad)
}

fn make_info(forms: &FormData, alpha: DimVector, beta: DimVector, t: u64) -> RankTwoInfo {
    let quadratic = segment_quadratic(forms, &alpha, &beta);
    let isotropic_rays = isotropic_points(&alpha, &beta, &quadratic);
    RankTwoInfo {
        alpha,
        beta,
        t,
        category_type: CategoryType::from_t(t),
        quadratic,
        isotropic_rays,
    }
}

/// Ordered pairs `(α, β)` of real Schur roots of height at most `h` with
/// `α ⊥ β` and `⟨β,α⟩ ≤ 0`.
pub fn enumerate_exceptional_pairs(
    ctx: &QuiverContext,
    h: u64,
) -> Result<Vec<RankTwoInfo>, AccError> {
    let roots = enumerate_real_schur_roots(ctx, h)?;
    let forms = ctx.forms();
    let mut out = Vec::new();
    for a in &roots {
        for b in &roots {
            if a == b {
                continue;
            }
            let ba = forms.euler_form(b, a);
            if ba.is_positive() || !ctx.homext().left_orthogonal(a, b)? {
                continue;
            }
            let t = (-ba).to_u64().expect("t fits in u64");
            out.push(make_info(forms, a.clone(), b.clone(), t));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Acc2Entry {
    pub ray: AccRay,
    pub alpha: DimVector,
    pub beta: DimVector,
    pub t: u64,
}

impl Acc2Entry {
    pub fn rational(&self) -> bool {
        self.ray.is_rational()
    }
}

/// Isotropic rays of all tame and wild exceptional pairs up to height `h`,
/// duplicates merged (first generating pair kept).
pub fn acc2_scan(ctx: &QuiverContext, h: u64) -> Result<Vec<Acc2Entry>, AccError> {
    let mut out: Vec<Acc2Entry> = Vec::new();
    for info in enumerate_exceptional_pairs(ctx, h)? {
        if info.category_type == CategoryType::Finite {
            continue;
        }
        for ray in info.isotropic_rays {
            if out.iter().any(|e| e.ray.same_point(&ray)) {
                continue;
            }
            out.push(Acc2Entry {
                ray,
                alpha: info.alpha.clone(),
                beta: info.beta.clone(),
                t: info.t,
            });
        }
    }
    Ok(out)
}
