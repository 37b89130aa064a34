//! Property-based invariants of the exact and jet layers.

use biharm_core::exact::{rat, solve_quadratic_exact, RootKind, Surd};
use biharm_core::jet::{jet_at, Expr, JetSpace};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-1000i64..1000, 1i64..1000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Exact surd/rational ordering agrees with a 50-digit decimal
    /// evaluation.
    #[test]
    fn surd_ordering_matches_decimal((p, q) in small_rational(),
                                     (qp, qq) in small_rational(),
                                     d in 0i64..500,
                                     (rp, rq) in small_rational()) {
        let s = Surd::new(rat(p, q), rat(qp, qq), rat(d, 1)).unwrap();
        let r = Surd::from_rational(rat(rp, rq));
        let exact = s.try_cmp(&r).unwrap();
        let sd = s.to_decimal(50);
        let rd = r.to_decimal(50);
        // The decimal strings have equal precision; parse back to compare.
        let sv: f64 = sd.parse().unwrap();
        let rv: f64 = rd.parse().unwrap();
        if (sv - rv).abs() > 1e-12 {
            let decimal_order = sv.partial_cmp(&rv).unwrap();
            prop_assert_eq!(exact, decimal_order,
                "surd {} vs rational {}: exact {:?} decimal {:?}", s, r, exact, decimal_order);
        }
    }

    /// Roots returned by the exact quadratic solver substitute back to an
    /// exact zero in surd arithmetic.
    #[test]
    fn quadratic_roots_substitute_to_zero(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        prop_assume!(a != 0);
        let (ar, br, cr) = (rat(a, 1), rat(b, 1), rat(c, 1));
        let rs = solve_quadratic_exact(&ar, &br, &cr).unwrap();
        match rs.kind {
            RootKind::None => prop_assert!(rs.discriminant < rat(0, 1)),
            _ => {
                for z in &rs.roots {
                    let val = &(&z.try_mul(z).unwrap().scale(&ar) + &z.scale(&br))
                        + &Surd::from_rational(cr.clone());
                    prop_assert!(val.is_zero(), "residue {} for root {}", val, z);
                }
                if rs.kind == RootKind::Pair {
                    prop_assert!(rs.roots[0].try_cmp(&rs.roots[1]).unwrap() == core::cmp::Ordering::Less);
                }
            }
        }
    }

    /// Jets truncated from order 6 agree exactly with jets computed at the
    /// lower order, across a family of random two-variable expressions.
    #[test]
    fn jet_truncation_is_exact(ax in -3i64..4, bx in -3i64..4, cx in 1i64..5,
                               px in 0.1f64..2.9, py in 0.1f64..2.9,
                               low in 1usize..5) {
        let e = Expr::coord(0).sin().mul(Expr::constant(Surd::from_int(ax)))
            .add(Expr::coord(1).cos().mul(Expr::constant(Surd::from_int(bx))))
            .add(Expr::coord(0).mul(Expr::coord(1)).div(Expr::constant(Surd::from_int(cx))))
            .add(Expr::constant(Surd::from_int(2)).add(Expr::coord(0).sin().powi(2)).sqrt());
        let hi_space = JetSpace::new(2, 6);
        let lo_space = JetSpace::new(2, low);
        let point = [px, py];
        let hi = jet_at::<f64>(&e, &hi_space, &point).unwrap().truncated(low);
        let lo = jet_at::<f64>(&e, &lo_space, &point).unwrap();
        for alpha in lo_space.indices() {
            prop_assert_eq!(hi.coeff(alpha), lo.coeff(alpha), "mismatch at {:?}", alpha);
        }
    }

    /// Canonicalization is idempotent.
    #[test]
    fn surd_canonicalization_idempotent((p, q) in small_rational(),
                                        (qp, qq) in small_rational(),
                                        d in 0i64..2000) {
        let s = Surd::new(rat(p, q), rat(qp, qq), rat(d, 1)).unwrap();
        let again = Surd::new(
            s.rational_part().clone(),
            s.surd_coeff().clone(),
            s.radicand(),
        ).unwrap();
        prop_assert_eq!(s, again);
    }
}
