//! Named quivers shipped with the tool.

use crate::quiver_core::{sym_det, Quiver};

/// `(name, vertex count, 1-based arrows)`.
type Entry = (&'static str, usize, &'static [(usize, usize)]);

const ENTRIES: &[Entry] = &[
    ("kronecker", 2, &[(1, 2), (1, 2)]),
    ("theta-3", 2, &[(1, 2), (1, 2), (1, 2)]),
    ("theta-4", 2, &[(1, 2), (1, 2), (1, 2), (1, 2)]),
    ("a2", 2, &[(1, 2)]),
    ("d4", 4, &[(2, 1), (3, 1), (4, 1)]),
    ("euclidean-a2-triangle", 3, &[(1, 2), (2, 3), (1, 3)]),
    (
        "example-2-5-1",
        4,
        &[(1, 2), (1, 2), (1, 2), (2, 3), (3, 4), (3, 4), (3, 4)],
    ),
    // Top row 1 → 2 → 3 ⇉ 4, bottom row 5 → 6, verticals 5 → 2 and 6 ⇉ 3.
    (
        "example-2-5-2",
        6,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (3, 4),
            (5, 2),
            (5, 6),
            (6, 3),
            (6, 3),
        ],
    ),
    // Contains the Kronecker subquiver on {1,2}, hence the isotropic root (1,1,0).
    ("wild-3-isotropic", 3, &[(1, 2), (1, 2), (2, 3)]),
    // q(x) = x1² + x2² + x3² − 3x1x2 − x2x3 has no nonzero isotropic vectors.
    ("wild-3-anisotropic", 3, &[(1, 2), (1, 2), (1, 2), (2, 3)]),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

/// Looks up a corpus quiver by name.
pub fn get(name: &str) -> Option<Quiver> {
    let &(_, n, arrows) = ENTRIES.iter().find(|e| e.0 == name)?;
    let q = Quiver::new(n, arrows).expect("corpus quivers are valid");
    if name == "example-2-5-2" {
        // The arrow set is read off a picture; the determinant sign is the
        // property the example relies on.
        assert!(sym_det(&q) < 0.into(), "example-2-5-2 must have det(A) < 0");
    }
    Some(q)
}

/// All corpus quivers in a fixed order.
pub fn all() -> Vec<(&'static str, Quiver)> {
    names()
        .into_iter()
        .map(|n| (n, get(n).expect("listed name")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contents() {
        assert_eq!(all().len(), 10);
        let q = get("example-2-5-1").unwrap();
        assert_eq!((q.vertex_count(), q.arrows().len()), (4, 7));
        let t = get("theta-3").unwrap();
        assert_eq!((t.vertex_count(), t.arrow_count(0, 1)), (2, 3));
        assert!(get("nope").is_none());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for (_, q) in all() {
            let text = q.to_json();
            let back = Quiver::from_json(&text).unwrap();
            assert_eq!(back.to_json(), text);
            assert_eq!(back, q);
        }
    }
}
