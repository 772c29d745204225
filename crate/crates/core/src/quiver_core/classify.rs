use num_bigint::BigInt;
use serde::Serialize;

use super::signature::{signature, Signature};
use super::{FormData, Quiver};

/// Signature-based type of a connected quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BaseType {
    Dynkin,
    Euclidean,
    Wild,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    /// 0-based vertices of the component.
    pub vertices: Vec<usize>,
    pub base: BaseType,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverClass {
    pub components: Vec<ComponentClass>,
    pub signature: Signature,
    pub at_most_weakly_hyperbolic: bool,
    pub weakly_hyperbolic: bool,
    pub connected: bool,
}

impl QuiverClass {
    /// Base type of a connected quiver; `None` when there are several
    /// components.
    pub fn base(&self) -> Option<BaseType> {
        match self.components.as_slice() {
            [c] => Some(c.base),
            _ => None,
        }
    }
}

pub fn base_type(sig: &Signature) -> BaseType {
    if sig.neg == 0 && sig.zero == 0 {
        BaseType::Dynkin
    } else if sig.neg == 0 && sig.zero == 1 {
        BaseType::Euclidean
    } else {
        BaseType::Wild
    }
}

pub fn classify(q: &Quiver) -> QuiverClass {
    let forms = FormData::new(q);
    let a = forms.symmetric_matrix();
    let sig = signature(a).expect("A is symmetric by construction");
    let components = q
        .components()
        .into_iter()
        .map(|vs| {
            let s = signature(&a.principal(&vs)).expect("principal minor of symmetric A");
            ComponentClass {
                base: base_type(&s),
                vertices: vs,
                signature: s,
            }
        })
        .collect();
    QuiverClass {
        components,
        at_most_weakly_hyperbolic: sig.neg + sig.zero <= 1,
        weakly_hyperbolic: sig.neg == 1 && sig.zero == 0,
        connected: q.is_connected(),
        signature: sig,
    }
}

/// `det(A_Q)`.
pub fn sym_det(q: &Quiver) -> BigInt {
    FormData::new(q).symmetric_matrix().det()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_is_euclidean() {
        let c = classify(&Quiver::new(2, &[(1, 2), (1, 2)]).unwrap());
        assert_eq!(c.base(), Some(BaseType::Euclidean));
        assert!(c.at_most_weakly_hyperbolic);
        assert!(!c.weakly_hyperbolic);
    }

    #[test]
    fn triangle_is_euclidean() {
        let q = Quiver::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(classify(&q).base(), Some(BaseType::Euclidean));
        assert_eq!(sym_det(&q), BigInt::from(0));
    }

    #[test]
    fn double_then_single_is_weakly_hyperbolic() {
        let q = Quiver::new(3, &[(1, 2), (1, 2), (2, 3)]).unwrap();
        let c = classify(&q);
        assert_eq!(c.base(), Some(BaseType::Wild));
        assert!(c.weakly_hyperbolic);
        assert_eq!(sym_det(&q), BigInt::from(-2));
    }

    #[test]
    fn disconnected_components() {
        let q = Quiver::new(3, &[(1, 2)]).unwrap();
        let c = classify(&q);
        assert!(!c.connected);
        assert_eq!(c.components.len(), 2);
        assert!(c.components.iter().all(|k| k.base == BaseType::Dynkin));
        assert_eq!(c.base(), None);
    }
}
