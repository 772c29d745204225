use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use quiver_roots::accumulation::{
    acc2_scan, enumerate_exceptional_pairs, lambda_plus_from_char_poly, quadric_samples,
    special_eigenvectors, tangency_report, CategoryType, MERGE_TOL,
};
use quiver_roots::quiver_core::{classify, BaseType, DimVector};
use quiver_roots::roots::{is_schur, normalize, tits_f64, Ray};
use quiver_roots::{corpus, QuiverContext};

fn ctx(name: &str) -> QuiverContext {
    QuiverContext::new(corpus::get(name).unwrap())
}

fn non_dynkin() -> Vec<(&'static str, QuiverContext)> {
    corpus::all()
        .into_iter()
        .filter(|(_, q)| classify(q).base() != Some(BaseType::Dynkin))
        .map(|(n, q)| (n, QuiverContext::new(q)))
        .collect()
}

#[test]
fn acc2_rays_lie_on_the_quadric() {
    for (name, c) in non_dynkin() {
        let h = if c.n() <= 3 { 6 } else { 3 };
        for e in acc2_scan(&c, h).unwrap() {
            assert!(
                e.ray.on_quadric_exact(c.forms()),
                "{name}: {:?}",
                e.ray.coords
            );
            assert!(tits_f64(&c, &e.ray.coords).abs() <= 1e-9, "{name}");
            let s: f64 = e.ray.coords.iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn acc2_grows_monotonically_in_height() {
    for name in [
        "kronecker",
        "theta-3",
        "euclidean-a2-triangle",
        "wild-3-isotropic",
        "wild-3-anisotropic",
    ] {
        let c = ctx(name);
        let mut prev = acc2_scan(&c, 1).unwrap();
        for h in 2..=6 {
            let next = acc2_scan(&c, h).unwrap();
            for e in &prev {
                assert!(
                    next.iter().any(|f| f.ray.same_point(&e.ray)),
                    "{name}: lost a ray at H = {h}"
                );
            }
            prev = next;
        }
    }
}

#[test]
fn pair_type_determines_isotropic_points() {
    for (name, c) in non_dynkin() {
        let h = if c.n() <= 3 { 5 } else { 3 };
        for p in enumerate_exceptional_pairs(&c, h).unwrap() {
            let rays = &p.isotropic_rays;
            match p.category_type {
                CategoryType::Finite => assert!(rays.is_empty(), "{name}"),
                CategoryType::Tame => {
                    assert_eq!(rays.len(), 1, "{name}");
                    assert!(rays[0].is_rational());
                    let sum = &p.alpha + &p.beta;
                    assert_eq!(rays[0].to_ray(), normalize(&sum).unwrap());
                }
                CategoryType::Wild => {
                    assert_eq!(rays.len(), 2, "{name}");
                    assert!(rays.iter().all(|r| !r.is_rational()));
                }
            }
        }
    }
}

/// Rational Acc₂ rays against an independent lattice scan for isotropic
/// Schur roots.
#[test]
fn rational_rays_are_isotropic_schur_roots() {
    for (name, c) in non_dynkin() {
        if !classify(c.quiver()).at_most_weakly_hyperbolic {
            continue;
        }
        let s_max: i64 = if c.n() <= 3 { 8 } else { 5 };
        let n = c.n();
        let mut lattice = BTreeSet::new();
        let mut x = vec![0i64; n];
        'outer: loop {
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                x[i] += 1;
                if x.iter().sum::<i64>() <= s_max {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            let d = DimVector::from_i64(&x);
            if d.content() == BigInt::from(1)
                && c.forms().tits_form(&d).is_zero()
                && matches!(is_schur(&c, &d), Ok(true))
            {
                lattice.insert(normalize(&d).unwrap().to_strings());
            }
        }
        let scan: BTreeSet<Vec<String>> = acc2_scan(&c, s_max as u64 - 1)
            .unwrap()
            .into_iter()
            .filter(|e| e.rational())
            .map(|e| e.ray.to_ray())
            .filter(|r| match r {
                // The lcm of the denominators is the height of the primitive vector.
                Ray::Rational(v) => {
                    v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom())) <= BigInt::from(s_max)
                }
                Ray::Approx { .. } => false,
            })
            .map(|r| r.to_strings())
            .collect();
        assert_eq!(scan, lattice, "{name}");
    }
}

#[test]
fn lambda_plus_matches_characteristic_polynomial() {
    for (name, c) in non_dynkin() {
        let e = special_eigenvectors(&c).unwrap();
        let cp = lambda_plus_from_char_poly(&c).unwrap();
        assert!(
            (e.lambda_plus - cp).abs() <= 1e-9,
            "{name}: {} vs {cp}",
            e.lambda_plus
        );
        assert!(
            (e.lambda_plus * e.lambda_minus - 1.0).abs() <= 1e-10,
            "{name}"
        );
        if !e.euclidean_degenerate {
            assert!(e.lambda_plus > 1.0);
            assert!(
                e.residual_plus <= 1e-9 && e.residual_minus <= 1e-9,
                "{name}"
            );
            assert!(e.y_plus.to_f64().iter().all(|&x| x > 0.0));
            assert!(e.y_minus.to_f64().iter().all(|&x| x > 0.0));
        } else {
            let delta = e.delta.unwrap();
            assert!(c.forms().tits_form(&delta).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tangent_points_are_eigenvectors(seed in any::<u64>(), k in 0usize..4) {
        let name = ["theta-3", "wild-3-isotropic", "wild-3-anisotropic", "example-2-5-1"][k];
        let c = ctx(name);
        for v in quadric_samples(c.forms(), 20, seed) {
            let r = tangency_report(c.forms(), &v).unwrap();
            prop_assert!(r.is_eigenvector || !r.is_tangent);
        }
    }

    #[test]
    fn quadric_samples_are_on_the_quadric(seed in any::<u64>()) {
        let c = ctx("example-2-5-2");
        for v in quadric_samples(c.forms(), 10, seed) {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            prop_assert!(tits_f64(&c, &v).abs() <= MERGE_TOL * norm);
        }
    }
}
