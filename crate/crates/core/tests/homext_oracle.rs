//! The subvector recursion against the randomized intertwiner oracle.

use quiver_roots::corpus;
use quiver_roots::homext::{end_randomized, hom_randomized, RandomizedOptions};
use quiver_roots::quiver_core::DimVector;
use quiver_roots::roots::root_classify;
use quiver_roots::QuiverContext;

/// Nonnegative nonzero vectors of length `n` with entry sum at most `h`.
fn vectors_up_to(n: usize, h: i64) -> Vec<DimVector> {
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(DimVector::from_i64(cur));
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, h, &mut vec![0; n], &mut out);
    out
}

#[test]
fn hom_matches_randomized_on_small_pairs() {
    let opts = RandomizedOptions::default();
    for (name, q) in corpus::all() {
        let ctx = QuiverContext::new(q.clone());
        let bound = if q.vertex_count() > 4 { 3 } else { 4 };
        let vs = vectors_up_to(q.vertex_count(), bound);
        for a in &vs {
            for b in &vs {
                if a.height() + b.height() > (bound + 1).into() {
                    continue;
                }
                let h = ctx.homext().hom_generic(a, b).unwrap();
                let e = ctx.homext().ext_generic(a, b).unwrap();
                let r = hom_randomized(&q, a, b, opts).unwrap();
                assert_eq!(h, r, "{name}: hom({a},{b})");
                let euler = ctx.forms().euler_form(a, b);
                assert_eq!(
                    num_bigint::BigInt::from(h) - num_bigint::BigInt::from(e),
                    euler,
                    "{name}: hom − ext ≠ ⟨{a},{b}⟩"
                );
            }
        }
    }
}

#[test]
fn schur_test_matches_randomized_endomorphisms() {
    let opts = RandomizedOptions::default();
    for (name, q) in corpus::all() {
        let ctx = QuiverContext::new(q.clone());
        let bound = if q.vertex_count() > 4 { 5 } else { 6 };
        for d in vectors_up_to(q.vertex_count(), bound) {
            if !root_classify(&ctx, &d).unwrap().is_root() {
                continue;
            }
            let schur = ctx.homext().is_schur_vector(&d).unwrap();
            let end = end_randomized(&q, &d, opts).unwrap();
            assert_eq!(schur, end == 1, "{name}: {d} end = {end}");
        }
    }
}

#[test]
fn generic_subvectors_are_consistent() {
    for (_, q) in corpus::all() {
        let ctx = QuiverContext::new(q.clone());
        for b in vectors_up_to(q.vertex_count(), 4) {
            for sub in ctx.homext().generic_subvectors(&b).unwrap() {
                let rest = &b - &sub;
                assert_eq!(ctx.homext().ext_generic(&sub, &rest).unwrap(), 0);
            }
        }
    }
}
