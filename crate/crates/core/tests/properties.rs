//! Randomized invariants across the engine.

use std::sync::OnceLock;

use extremal_lab::curve::{
    adjoint_integrate, develop, find_abnormal_covectors, find_goh_covectors, random_control_law, random_covector,
    strictness_check, verify_master_identity, ControlLaw, Strictness,
};
use extremal_lab::exact::{int, rat, MultiIndex, PolyVectorField, Polynomial, Rational, UniPoly};
use extremal_lab::hall::{witt_dimensions, HallBasis};
use extremal_lab::quotient::{
    check_corank_monotone, check_flow_commutation, check_pullback, quotient_dual_check, quotient_dual_curve,
    QuotientGroup,
};
use extremal_lab::GroupContext;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(r: usize, s: usize) -> &'static GroupContext {
    static CELLS: [OnceLock<GroupContext>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match (r, s) {
        (2, 3) => 0,
        (2, 4) => 1,
        (3, 3) => 2,
        (2, 5) => 3,
        _ => panic!("no cached group ({r}, {s})"),
    };
    CELLS[slot].get_or_init(|| GroupContext::new(r, s).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn polynomial(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), rational()), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                nvars,
                terms.into_iter().map(|(e, c)| (MultiIndex::from_exponents(e), c)),
            )
            .unwrap()
        },
    )
}

/// Fields on R^3 with components of total degree at most 2.
fn field() -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(polynomial(3, 1, 3), 3).prop_map(|c| {
        let c = c
            .into_iter()
            .map(|p| {
                Polynomial::from_terms(
                    3,
                    p.terms()
                        .filter(|(a, _)| a.total() <= 2)
                        .map(|(a, c)| (a.clone(), c.clone())),
                )
                .unwrap()
            })
            .collect();
        PolyVectorField::new(c).unwrap()
    })
}

fn small_group() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 3)), Just((2, 4)), Just((3, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in polynomial(3, 2, 4), q in polynomial(3, 2, 4), r in polynomial(3, 2, 4)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in polynomial(3, 2, 4), q in polynomial(3, 2, 4), x in prop::collection::vec(rational(), 3)) {
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), p.eval(&x).unwrap() * q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), p.eval(&x).unwrap() + q.eval(&x).unwrap());
    }

    #[test]
    fn bracket_jacobi_and_antisymmetry(x in field(), y in field(), z in field()) {
        let xy_z = x.bracket(&y).unwrap().bracket(&z).unwrap();
        let yz_x = y.bracket(&z).unwrap().bracket(&x).unwrap();
        let zx_y = z.bracket(&x).unwrap().bracket(&y).unwrap();
        let mut sum = xy_z;
        sum.add_scaled(&yz_x, &int(1));
        sum.add_scaled(&zx_y, &int(1));
        prop_assert!(sum.is_zero());
        let mut anti = x.bracket(&y).unwrap();
        anti.add_scaled(&y.bracket(&x).unwrap(), &int(1));
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn specialization_is_linear_in_v((r, s) in small_group(), a in rational(), b in rational(), seed in any::<u64>()) {
        let g = group(r, s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_covector(&mut rng, g.dim());
        let w = random_covector(&mut rng, g.dim());
        let mix: Vec<Rational> = u.iter().zip(&w).map(|(x, y)| &a * x + &b * y).collect();
        let degrees = g.degrees();
        for i in 0..g.dim() {
            let ep = g.extremal_polynomial(i).unwrap();
            let lhs = ep.specialize_v(&mix).unwrap();
            let rhs = &ep.specialize_v(&u).unwrap().scale(&a) + &ep.specialize_v(&w).unwrap().scale(&b);
            prop_assert_eq!(&lhs, &rhs);
            let bound = s - degrees[i];
            prop_assert!(lhs.weighted_degree(&degrees).unwrap().is_none_or(|d| d <= bound));
        }
    }

    #[test]
    fn horizontal_closure((r, s) in small_group(), seed in any::<u64>()) {
        let g = group(r, s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = random_covector(&mut rng, g.dim());
        for x in v.iter_mut().take(r) {
            *x = int(0);
        }
        prop_assert!(g.check_horizontal_closure(&v).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn master_identity((r, s) in prop_oneof![Just((2, 3)), Just((2, 4)), Just((2, 5)), Just((3, 3))], seed in any::<u64>()) {
        let g = group(r, s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_control_law(&mut rng, r, 3);
        let v0 = random_covector(&mut rng, g.dim());
        let curve = develop(g, &h).unwrap();
        prop_assert!(verify_master_identity(g, &curve, &v0).unwrap());
        let dual = adjoint_integrate(g, &curve, &v0).unwrap();
        prop_assert_eq!(dual.lambda.iter().map(|l| l.eval(&int(0))).collect::<Vec<_>>(), v0);
    }

    #[test]
    fn corank_dominates_goh((r, s) in small_group(), seed in any::<u64>(), degree in 0usize..=2) {
        let g = group(r, s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let curve = develop(g, &random_control_law(&mut rng, r, degree)).unwrap();
        let abnormal = find_abnormal_covectors(g, &curve).unwrap();
        let goh = find_goh_covectors(g, &curve).unwrap();
        prop_assert!(abnormal.len() >= goh.len());
        for v in &goh {
            prop_assert!(extremal_lab::exact::linalg::in_span(&abnormal, v).unwrap());
        }
    }

    #[test]
    fn reparametrization(seed in any::<u64>(), a in (-9i64..=9).prop_map(|k| rat(k, 10))) {
        // phi(t) = t + a t (1 - t) fixes 0 and 1 and is monotone for |a| < 1.
        let phi = UniPoly::from_coeffs(vec![int(0), &int(1) + &a, -a.clone()]);
        let g = group(2, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_control_law(&mut rng, 2, 2);
        let gamma = develop(g, &h).unwrap();
        let eta = develop(g, &h.reparametrize(&phi).unwrap()).unwrap();
        for (gk, ek) in gamma.gamma.iter().zip(&eta.gamma) {
            prop_assert_eq!(&gk.pieces()[0].compose(&phi), &ek.pieces()[0]);
        }
        // Membership in Z_v survives the time change.
        let gk = ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::t()]);
        let slow = develop(g, &gk.reparametrize(&phi).unwrap()).unwrap();
        let mut v = vec![int(0); g.dim()];
        v[4] = int(1);
        v[5] = int(1);
        for p in g.abnormal_variety_generators(&v).unwrap() {
            prop_assert!(slow.compose(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_dual_curves_pull_back(seed in any::<u64>(), which in 0usize..3) {
        let (g, q) = match which {
            0 => { let g = group(2, 3); (g, QuotientGroup::coordinate(g, vec![0, 1, 2]).unwrap()) }
            1 => { let g = group(2, 4); (g, QuotientGroup::coordinate(g, (0..6).collect()).unwrap()) }
            _ => {
                let g = group(2, 4);
                let mut z = vec![vec![int(0); 5]; 8];
                for (i, j) in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4), (7, 4)] {
                    z[i][j] = int(1);
                }
                (g, QuotientGroup::new(g, vec![0, 1, 2, 3, 5], z).unwrap())
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_control_law(&mut rng, 2, 2);
        let l0 = random_covector(&mut rng, q.dim());
        prop_assert!(quotient_dual_check(&q, &h, &l0).unwrap());
        prop_assert!(check_pullback(&q, &quotient_dual_curve(&q, &h, &l0).unwrap()));
        prop_assert!(check_corank_monotone(&q, &h).unwrap());
        prop_assert!(check_flow_commutation(&q, &h, 3).unwrap());
        prop_assert_eq!(g.rank(), 2);
    }
}

#[test]
fn hall_structure() {
    for r in 2..=4 {
        for s in 1..=6 {
            let b = HallBasis::build(r, s).unwrap();
            assert_eq!(b.layer_dims(), witt_dimensions(r, s).as_slice(), "({r}, {s})");
            for e in b.elements() {
                if let Some((i, j)) = e.children {
                    assert_eq!(b.degree(i) + b.degree(j), e.degree);
                }
                for j in 0..e.index {
                    if b.precedes(j, e.index).unwrap() {
                        assert!(
                            b.element(j).unwrap().multi.le(&e.multi),
                            "I(X{}) <= I(X{})",
                            j + 1,
                            e.index + 1
                        );
                    }
                }
            }
        }
    }
    let a = serde_json::to_string(&HallBasis::build(3, 4).unwrap().to_json()).unwrap();
    let b = serde_json::to_string(&HallBasis::build(3, 4).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn constant_tables() {
    for (r, s) in [(2, 4), (3, 3), (2, 5)] {
        let g = group(r, s);
        assert!(g.check_jacobi());
        assert!(g.check_grading());
        let b = g.basis();
        for l in b.elements() {
            for i in 0..=l.index {
                if !b.precedes(i, l.index).unwrap() {
                    continue;
                }
                let alpha = l.multi.sub(&b.element(i).unwrap().multi).unwrap();
                let c = g.gsc(i, &alpha);
                assert_eq!(c.len(), 1, "c(X{}; {:?})", i + 1, alpha);
                assert_eq!(c.get(&l.index), Some(&int(1)));
            }
        }
    }
}

#[test]
fn coordinate_lines() {
    let g = group(2, 4);
    for j in 0..2 {
        let mut h = vec![UniPoly::zero(); 2];
        h[j] = UniPoly::one();
        let line = develop(g, &ControlLaw::polynomial(h)).unwrap();
        assert_eq!(line.gamma[j].pieces()[0], UniPoly::t());
        let st = strictness_check(g, &line).unwrap();
        assert_eq!(st.verdict, Strictness::NormalCapable);
        let ab = find_abnormal_covectors(g, &line).unwrap();
        assert!(ab.len() >= find_goh_covectors(g, &line).unwrap().len());
    }
}
