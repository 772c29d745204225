//! Exact points of `Δ(1)` with coordinates in `Q` or `Q(√D)`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::quiver_core::{DimVector, FormData};
use crate::roots::{rational_string, Ray};

/// `a + b√D` for a fixed squarefree `D > 1` carried alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadSurd {
    pub fn rational(a: BigRational) -> Self {
        QuadSurd {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self, disc: &BigInt) -> f64 {
        let r = disc.to_f64().unwrap_or(f64::NAN).sqrt();
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * r
    }

    fn mul_in(&self, o: &QuadSurd, disc: &BigInt) -> QuadSurd {
        let d = BigRational::from_integer(disc.clone());
        QuadSurd {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn div_in(&self, o: &QuadSurd, disc: &BigInt) -> QuadSurd {
        let d = BigRational::from_integer(disc.clone());
        let norm = &o.a * &o.a - &o.b * &o.b * d;
        let conj = QuadSurd {
            a: o.a.clone(),
            b: -o.b.clone(),
        };
        let num = self.mul_in(&conj, disc);
        QuadSurd {
            a: num.a / &norm,
            b: num.b / norm,
        }
    }

    fn scale(&self, k: &BigRational) -> QuadSurd {
        QuadSurd {
            a: &self.a * k,
            b: &self.b * k,
        }
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul<&BigRational> for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, k: &BigRational) -> QuadSurd {
        self.scale(k)
    }
}

/// Writes `m = f²·D` with `D` squarefree; `m > 0`.
pub(crate) fn squarefree_split(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.clone();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            f *= &p;
        }
        p += 1;
    }
    (f, rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactPoint {
    Rational(Vec<BigRational>),
    Quadratic { disc: BigInt, coords: Vec<QuadSurd> },
}

/// An accumulation ray: float coordinates on `Δ(1)` plus the exact point.
#[derive(Debug, Clone, PartialEq)]
pub struct AccRay {
    pub coords: Vec<f64>,
    pub exact: ExactPoint,
}

impl AccRay {
    pub fn from_rational(v: Vec<BigRational>) -> Self {
        let coords = v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        AccRay {
            coords,
            exact: ExactPoint::Rational(v),
        }
    }

    /// The normalized ray of a positive vector.
    pub fn from_vector(d: &DimVector) -> Self {
        let s = d.height();
        AccRay::from_rational(
            d.entries()
                .iter()
                .map(|x| BigRational::new(x.clone(), s.clone()))
                .collect(),
        )
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.exact, ExactPoint::Rational(_))
    }

    pub fn to_ray(&self) -> Ray {
        match &self.exact {
            ExactPoint::Rational(v) => Ray::Rational(v.clone()),
            ExactPoint::Quadratic { .. } => Ray::Approx {
                coords: self.coords.clone(),
                eps: 1e-14,
            },
        }
    }

    pub fn dist_inf(&self, other: &[f64]) -> f64 {
        self.coords
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Same point of `Δ(1)`: float proximity first, then exact equality.
    pub fn same_point(&self, other: &AccRay) -> bool {
        self.dist_inf(&other.coords) <= super::MERGE_TOL && self.exact == other.exact
    }

    /// `q` of the exact point is zero.
    pub fn on_quadric_exact(&self, forms: &FormData) -> bool {
        let e = forms.euler_matrix();
        let n = self.coords.len();
        match &self.exact {
            ExactPoint::Rational(v) => {
                let mut acc = BigRational::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &v[i] * &v[j] * BigRational::from_integer(e.get(i, j).clone());
                    }
                }
                acc.is_zero()
            }
            ExactPoint::Quadratic { disc, coords } => {
                let mut acc = QuadSurd::rational(BigRational::zero());
                for i in 0..n {
                    for j in 0..n {
                        let c = BigRational::from_integer(e.get(i, j).clone());
                        if !c.is_zero() {
                            acc = &acc + &coords[i].mul_in(&coords[j], disc).scale(&c);
                        }
                    }
                }
                acc.is_zero()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.exact {
            ExactPoint::Rational(v) => Value::Array(
                v.iter()
                    .map(|x| Value::String(rational_string(x)))
                    .collect(),
            ),
            ExactPoint::Quadratic { .. } => json!(self.coords),
        }
    }

    /// Exact data for irrational rays: `x_i = a_i + b_i·√disc`.
    pub fn exact_json(&self) -> Value {
        match &self.exact {
            ExactPoint::Rational(_) => Value::Null,
            ExactPoint::Quadratic { disc, coords } => json!({
                "disc": disc.to_string(),
                "coords": coords
                    .iter()
                    .map(|c| vec![rational_string(&c.a), rational_string(&c.b)])
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

/// Normalized point `sα + (1−s)β` for `s = p + r·f·√D` given by a rational
/// part `p`, the coefficient `r·f` and squarefree `D` (`D = 1` means rational).
pub(crate) fn segment_point(
    alpha: &DimVector,
    beta: &DimVector,
    p: &BigRational,
    r: &BigRational,
    disc: &BigInt,
) -> AccRay {
    let n = alpha.len();
    let to_q = |x: &BigInt| BigRational::from_integer(x.clone());
    if r.is_zero() || disc.is_one() {
        let s = p + r;
        let v: Vec<BigRational> = (0..n)
            .map(|i| to_q(&beta[i]) + (to_q(&alpha[i]) - to_q(&beta[i])) * &s)
            .collect();
        let sum: BigRational = v.iter().fold(BigRational::zero(), |a, x| a + x);
        return AccRay::from_rational(v.into_iter().map(|x| x / &sum).collect());
    }
    let v: Vec<QuadSurd> = (0..n)
        .map(|i| {
            let diff = to_q(&alpha[i]) - to_q(&beta[i]);
            QuadSurd {
                a: to_q(&beta[i]) + &diff * p,
                b: diff * r,
            }
        })
        .collect();
    let sum = v
        .iter()
        .fold(QuadSurd::rational(BigRational::zero()), |a, x| &a + x);
    let coords: Vec<QuadSurd> = v.iter().map(|x| x.div_in(&sum, disc)).collect();
    AccRay {
        coords: coords.iter().map(|c| c.to_f64(disc)).collect(),
        exact: ExactPoint::Quadratic {
            disc: disc.clone(),
            coords,
        },
    }
}

/// Integer square root when `m` is a perfect square.
pub(crate) fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(&BigInt::from(5)), (1.into(), 5.into()));
        assert_eq!(squarefree_split(&BigInt::from(12)), (2.into(), 3.into()));
        assert_eq!(squarefree_split(&BigInt::from(72)), (6.into(), 2.into()));
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(7.into()));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
    }

    #[test]
    fn surd_division() {
        let d = BigInt::from(5);
        let q = |a: i64, b: i64| QuadSurd {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        };
        // (1 + √5)(1 − √5) = −4
        let x = q(1, 1).mul_in(&q(1, -1), &d);
        assert_eq!(x, q(-4, 0));
        let y = q(3, 1).div_in(&q(3, 1), &d);
        assert_eq!(y, q(1, 0));
        assert!((q(1, 1).to_f64(&d) - (1.0 + 5f64.sqrt())).abs() < 1e-15);
    }
}
