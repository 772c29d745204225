use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quiver_roots::candecomp::{
    canonical_decomposition, canonical_decomposition_from, refine_isotropic, DecompOptions,
    SchurSequenceState, Summand,
};
use quiver_roots::quiver_core::DimVector;
use quiver_roots::roots::{
    enumerate_real_roots, is_schur, normalize, root_classify, tits_rational, RootKind,
};
use quiver_roots::{corpus, QuiverContext};

fn contexts() -> &'static Vec<(&'static str, QuiverContext)> {
    static CTX: OnceLock<Vec<(&'static str, QuiverContext)>> = OnceLock::new();
    CTX.get_or_init(|| {
        corpus::all()
            .into_iter()
            .map(|(name, q)| (name, QuiverContext::new(q)))
            .collect()
    })
}

/// A corpus quiver index and a positive vector with small height.
fn corpus_vector() -> impl Strategy<Value = (usize, DimVector)> {
    (0..contexts().len()).prop_flat_map(|k| {
        let n = contexts()[k].1.n();
        let top = if n <= 3 { 4 } else { 2 };
        prop::collection::vec(0i64..=top, n)
            .prop_filter("positive", |v| v.iter().any(|&x| x > 0))
            .prop_map(move |v| (k, DimVector::from_i64(&v)))
    })
}

fn has_connected_support(ctx: &QuiverContext, d: &DimVector) -> bool {
    ctx.quiver().is_connected_subset(&d.support())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kind_matches_quadratic_form((k, d) in corpus_vector()) {
        let ctx = &contexts()[k].1;
        let q = ctx.forms().tits_form(&d);
        match root_classify(ctx, &d).unwrap() {
            RootKind::Real => prop_assert_eq!(&q, &BigInt::one()),
            RootKind::Isotropic => prop_assert_eq!(&q, &BigInt::zero()),
            RootKind::StrictImaginary => prop_assert!(q < BigInt::zero()),
            RootKind::NotRoot => {}
        }
        // Fundamental set: connected support and (d, e_i) ≤ 0 for every i.
        let fundamental = has_connected_support(ctx, &d)
            && (0..ctx.n()).all(|i| ctx.forms().pairing_with_simple(&d, i) <= BigInt::zero());
        if fundamental {
            let kind = root_classify(ctx, &d).unwrap();
            prop_assert!(matches!(kind, RootKind::Isotropic | RootKind::StrictImaginary));
        }
    }

    #[test]
    fn kind_is_weyl_invariant((k, d) in corpus_vector(), i in 0usize..6) {
        let ctx = &contexts()[k].1;
        let i = i % ctx.n();
        let kind = root_classify(ctx, &d).unwrap();
        prop_assume!(kind.is_root());
        let r = ctx.forms().simple_reflection(i, &d);
        prop_assert_eq!(root_classify(ctx, &r).unwrap(), kind);
    }

    #[test]
    fn hom_minus_ext_is_euler((k, a) in corpus_vector(), seed in any::<u64>()) {
        let ctx = &contexts()[k].1;
        let n = ctx.n();
        let top = if n <= 3 { 4 } else { 2 };
        let b: Vec<i64> = (0..n).map(|j| ((seed >> (4 * j)) % (top + 1)) as i64).collect();
        let b = DimVector::from_i64(&b);
        let hom = ctx.homext().hom_generic(&a, &b).unwrap();
        let ext = ctx.homext().ext_generic(&a, &b).unwrap();
        prop_assert_eq!(BigInt::from(hom) - BigInt::from(ext), ctx.forms().euler_form(&a, &b));
    }

    #[test]
    fn generic_subvectors_have_no_ext((k, d) in corpus_vector()) {
        let ctx = &contexts()[k].1;
        for s in ctx.homext().generic_subvectors(&d).unwrap() {
            prop_assert_eq!(ctx.homext().ext_generic(&s, &(&d - &s)).unwrap(), 0);
        }
    }

    #[test]
    fn scaling_law((k, d) in corpus_vector(), p in 2i64..=3) {
        let ctx = &contexts()[k].1;
        let base = canonical_decomposition(ctx, &d).unwrap();
        let scaled = canonical_decomposition(ctx, &d.scale_i64(p)).unwrap();
        let mut expect: Vec<Summand> = base
            .summands
            .iter()
            .map(|s| match s.kind {
                RootKind::StrictImaginary => Summand::new(s.root.scale_i64(p), 1, s.kind),
                _ => Summand::new(s.root.clone(), s.mult * p as u64, s.kind),
            })
            .collect();
        let mut got = scaled.summands.clone();
        let key = |s: &Summand| (s.root.entries().to_vec(), s.mult);
        expect.sort_by_key(key);
        got.sort_by_key(key);
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn negative_q_gives_strict_imaginary_summand((k, d) in corpus_vector()) {
        let ctx = &contexts()[k].1;
        prop_assume!(ctx.forms().tits_form(&d) < BigInt::zero());
        prop_assert!(canonical_decomposition(ctx, &d).unwrap().has_strict_imaginary());
    }

    #[test]
    fn final_order_property((k, d) in corpus_vector()) {
        let ctx = &contexts()[k].1;
        let dec = canonical_decomposition(ctx, &d).unwrap();
        let s = &dec.summands;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                prop_assert!(ctx.forms().euler_form(&s[j].root, &s[i].root) >= BigInt::zero());
                prop_assert!(ctx.homext().left_orthogonal(&s[i].root, &s[j].root).unwrap());
            }
        }
    }

    #[test]
    fn seeded_strict_imaginary_survives((k, d) in corpus_vector(), p in 1u64..=3) {
        let ctx = &contexts()[k].1;
        prop_assume!(root_classify(ctx, &d).unwrap() == RootKind::StrictImaginary);
        prop_assume!(is_schur(ctx, &d).unwrap());
        let start = SchurSequenceState { entries: vec![Summand::new(d.clone(), p, RootKind::StrictImaginary)] };
        let target = d.scale_i64(p as i64);
        let dec = canonical_decomposition_from(ctx, start, &target, DecompOptions::default()).unwrap();
        prop_assert!(dec.has_strict_imaginary());
    }

    #[test]
    fn simple_roots_are_schur(k in 0usize..10, i in 0usize..6) {
        let ctx = &contexts()[k].1;
        let i = i % ctx.n();
        prop_assert!(is_schur(ctx, &DimVector::unit(ctx.n(), i)).unwrap());
    }
}

#[test]
fn real_roots_normalize_onto_quadric_level() {
    for (_, ctx) in contexts() {
        for d in enumerate_real_roots(ctx, 12) {
            let r = normalize(&d).unwrap();
            let s = BigRational::from_integer(d.height());
            let coords = r.exact().unwrap();
            assert_eq!(
                coords.iter().fold(BigRational::zero(), |a, x| a + x),
                BigRational::one()
            );
            assert_eq!(tits_rational(ctx, coords), BigRational::one() / (&s * &s));
        }
    }
}

#[test]
fn refinement_preserves_sum_and_weak_schur() {
    let mut checked = 0;
    for (name, ctx) in contexts() {
        let n = ctx.n();
        let top = if n <= 3 { 6 } else { 3 };
        let mut stack = vec![vec![0i64; n]];
        let mut all = Vec::new();
        while let Some(v) = stack.pop() {
            let last = v.iter().rposition(|&x| x > 0).map(|i| i + 1).unwrap_or(0);
            for i in last.saturating_sub(1)..n {
                let mut w = v.clone();
                w[i] += 1;
                if w.iter().sum::<i64>() <= top && !all.contains(&w) {
                    all.push(w.clone());
                    stack.push(w);
                }
            }
        }
        for v in all {
            let d = DimVector::from_i64(&v);
            if root_classify(ctx, &d).unwrap() != RootKind::Isotropic || !is_schur(ctx, &d).unwrap()
            {
                continue;
            }
            for mult in [1, 2] {
                let seq = SchurSequenceState {
                    entries: vec![Summand::new(d.clone(), mult, RootKind::Isotropic)],
                };
                let r = refine_isotropic(ctx, &seq, 0).unwrap();
                assert_eq!(r.total(n), d.scale_i64(mult as i64), "{name} {d}");
                assert!(r.is_weak_schur(ctx).unwrap(), "{name} {d}");
                let (b, g) = (&r.entries[0].root, &r.entries[1].root);
                assert_eq!(ctx.forms().euler_form(g, b), BigInt::from(-2));
                for e in &r.entries {
                    assert_eq!(root_classify(ctx, &e.root).unwrap(), RootKind::Real);
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} refinements checked");
}

/// Negative `q` with connected support is not enough for a root: a
/// reflection can produce mixed signs.
#[test]
fn negative_q_connected_support_can_fail_to_be_a_root() {
    let ctx = contexts()
        .iter()
        .find(|c| c.0 == "example-2-5-2")
        .map(|c| &c.1)
        .unwrap();
    let d = DimVector::from_i64(&[2, 1, 2, 1, 0, 1]);
    assert!(ctx.forms().tits_form(&d) < BigInt::zero());
    assert!(has_connected_support(ctx, &d));
    assert_eq!(
        ctx.forms().simple_reflection(0, &d),
        DimVector::from_i64(&[-1, 1, 2, 1, 0, 1])
    );
    assert_eq!(root_classify(ctx, &d).unwrap(), RootKind::NotRoot);
}
