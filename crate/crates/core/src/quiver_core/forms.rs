use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DimVector, Quiver};
use crate::linalg::IntMatrix;

/// Euler–Ringel matrix `E`, symmetrization `A = E + Eᵀ` and Coxeter matrix
/// `C = −E⁻¹Eᵀ` of a quiver, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormData {
    n: usize,
    euler: IntMatrix,
    sym: IntMatrix,
    coxeter: IntMatrix,
    coxeter_inv: IntMatrix,
}

impl FormData {
    pub fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut euler = IntMatrix::identity(n);
        for &(t, h) in q.arrows() {
            let v = euler.get(t, h) - BigInt::one();
            euler.set(t, h, v);
        }
        let sym = euler.add(&euler.transpose());
        // E is a permuted unitriangular matrix, so its inverse is integral.
        let e_inv = euler
            .inverse_integral()
            .expect("Euler matrix of an acyclic quiver is unimodular");
        let coxeter = e_inv.mul(&euler.transpose()).neg();
        let et_inv = euler
            .transpose()
            .inverse_integral()
            .expect("Euler matrix of an acyclic quiver is unimodular");
        let coxeter_inv = et_inv.mul(&euler).neg();
        FormData {
            n,
            euler,
            sym,
            coxeter,
            coxeter_inv,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn euler_matrix(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn symmetric_matrix(&self) -> &IntMatrix {
        &self.sym
    }

    pub fn coxeter_matrix(&self) -> &IntMatrix {
        &self.coxeter
    }

    pub fn coxeter_inverse(&self) -> &IntMatrix {
        &self.coxeter_inv
    }

    fn check(&self, d: &DimVector) {
        assert_eq!(d.len(), self.n, "dimension vector has wrong length");
    }

    /// `⟨d,e⟩ = dᵀ E e`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> BigInt {
        self.check(d);
        self.check(e);
        self.euler.bilinear(d.entries(), e.entries())
    }

    /// `(d,e) = dᵀ A e`.
    pub fn symmetric_form(&self, d: &DimVector, e: &DimVector) -> BigInt {
        self.check(d);
        self.check(e);
        self.sym.bilinear(d.entries(), e.entries())
    }

    /// `(d, e_i)`, i.e. row `i` of `A` applied to `d`.
    pub fn pairing_with_simple(&self, d: &DimVector, i: usize) -> BigInt {
        self.check(d);
        self.sym
            .row(i)
            .iter()
            .zip(d.entries())
            .fold(BigInt::zero(), |acc, (a, x)| acc + a * x)
    }

    /// Tits form `q(d) = ⟨d,d⟩`.
    pub fn tits_form(&self, d: &DimVector) -> BigInt {
        self.euler_form(d, d)
    }

    /// Reflection `𝔖_i d = d − (d, e_i) e_i` (0-based `i`).
    pub fn simple_reflection(&self, i: usize, d: &DimVector) -> DimVector {
        assert!(i < self.n, "vertex index out of range");
        let c = self.pairing_with_simple(d, i);
        let mut v = d.clone().into_entries();
        v[i] -= c;
        DimVector::new(v)
    }

    /// `C d`, the action of τ on dimension vectors.
    pub fn coxeter_apply(&self, d: &DimVector) -> DimVector {
        self.check(d);
        DimVector::new(self.coxeter.mul_vec(d.entries()))
    }

    /// `C⁻¹ d`, the action of τ⁻¹.
    pub fn coxeter_inverse_apply(&self, d: &DimVector) -> DimVector {
        self.check(d);
        DimVector::new(self.coxeter_inv.mul_vec(d.entries()))
    }

    /// Euler matrix as `i64` rows for the hot loops of the hom/ext engine.
    pub(crate) fn euler_i64(&self) -> Vec<Vec<i64>> {
        self.euler
            .to_i64_rows()
            .expect("Euler matrix entries are arrow counts")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> FormData {
        FormData::new(&Quiver::new(2, &[(1, 2), (1, 2)]).unwrap())
    }

    fn dv(x: &[i64]) -> DimVector {
        DimVector::from_i64(x)
    }

    #[test]
    fn kronecker_euler_values() {
        let f = kronecker();
        assert_eq!(f.euler_form(&dv(&[1, 1]), &dv(&[1, 1])), BigInt::from(0));
        assert_eq!(f.euler_form(&dv(&[1, 0]), &dv(&[0, 1])), BigInt::from(-2));
        assert_eq!(f.euler_form(&dv(&[0, 1]), &dv(&[1, 0])), BigInt::from(0));
    }

    #[test]
    fn tits_values() {
        let f = kronecker();
        assert_eq!(f.tits_form(&dv(&[1, 1])), BigInt::from(0));
        let t3 = FormData::new(&Quiver::new(2, &[(1, 2), (1, 2), (1, 2)]).unwrap());
        assert_eq!(t3.tits_form(&dv(&[1, 1])), BigInt::from(-1));
        assert_eq!(t3.tits_form(&dv(&[0, 1])), BigInt::from(1));
    }

    #[test]
    fn kronecker_coxeter() {
        let f = kronecker();
        assert_eq!(
            f.coxeter_matrix(),
            &IntMatrix::from_rows(&[vec![3, -2], vec![2, -1]])
        );
        assert_eq!(f.coxeter_apply(&dv(&[0, 1])), dv(&[-2, -1]));
        assert_eq!(f.coxeter_matrix().det(), BigInt::from(1));
        assert_eq!(
            f.coxeter_matrix().mul(f.coxeter_inverse()),
            IntMatrix::identity(2)
        );
    }

    #[test]
    fn reflections() {
        let f = kronecker();
        assert_eq!(f.simple_reflection(0, &dv(&[1, 0])), dv(&[-1, 0]));
        assert_eq!(f.simple_reflection(0, &dv(&[1, 1])), dv(&[1, 1]));
        assert_eq!(f.simple_reflection(0, &dv(&[2, 1])), dv(&[0, 1]));
    }
}
