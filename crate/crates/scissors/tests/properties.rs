use proptest::prelude::*;
use scissors::delta_homology::{delta_squared_vanishes, homology, two_is_boundary, ChainBasis};
use scissors::exact_geometry::linalg::{format_rational, parse_rational, rank_i, rank_q, to_q, IVec};
use scissors::exact_geometry::SimplicialComplex;
use scissors::ring_values::{Policy, RingValue};
use scissors::suites::random::{random_cone_element, random_polytope_element, stream};
use scissors::Rational;

/// Z/2 Betti numbers by elimination over bitmasks.
fn z2_betti(k: &SimplicialComplex) -> Vec<usize> {
    let top = k.dim().unwrap_or(0);
    let index = |s: &[usize], d: usize| k.of_dim(d).iter().position(|t| t == s).unwrap();
    let rank = |d: usize| -> usize {
        if d == 0 || d > top {
            return 0;
        }
        let mut rows: Vec<u128> = k
            .of_dim(d)
            .iter()
            .map(|s| (0..s.len()).fold(0u128, |m, i| {
                let mut f = s.clone();
                f.remove(i);
                m | 1 << index(&f, d - 1)
            }))
            .collect();
        let mut r = 0;
        for bit in 0..128 {
            let Some(p) = (r..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[r];
                }
            }
            r += 1;
        }
        r
    };
    (0..=top).map(|d| k.of_dim(d).len() - rank(d) - rank(d + 1)).collect()
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=3), 1..5)
        .prop_map(|sets| SimplicialComplex::from_maximal(&sets.into_iter().map(|s| s.into_iter().collect()).collect::<Vec<_>>()))
}

fn poly() -> impl Strategy<Value = RingValue> {
    prop::collection::vec((-5i64..=5, 1i64..=4, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RingValue::zero(), |acc, (p, q, i, j)| {
            let c = RingValue::from(Rational::new(p.into(), q.into()));
            let m = RingValue::var("x").pow(i).unwrap().mul(&RingValue::var("y").pow(j).unwrap()).unwrap();
            acc.add(&c.mul(&m).unwrap()).unwrap()
        })
    })
}

fn same(a: &RingValue, b: &RingValue) -> bool {
    a.eq_within(b, 0.0, Policy::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn delta_homology_matches_z2_betti(k in complex()) {
        let betti = z2_betti(&k);
        let basis = ChainBasis::new(k).unwrap();
        for n in 0..5 {
            let h = homology(&basis, n);
            let want: usize = (0..=n / 2).filter_map(|j| betti.get(n - 2 * j)).sum();
            prop_assert_eq!(h.z2_rank(), want, "n={}", n);
            prop_assert!(h.killed_by_two());
            prop_assert!(delta_squared_vanishes(&basis, n));
            prop_assert!(two_is_boundary(&basis, n));
        }
    }

    #[test]
    fn cone_involutions(seed in any::<u64>(), d in 0usize..=3) {
        let x = random_cone_element(&mut stream(seed, "prop/cone"), d);
        prop_assert!(x.interior().interior().sub(&x).is_zero());
        prop_assert!(x.dual().dual().sub(&x).is_zero());
        prop_assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn polytope_interior_is_involution(seed in any::<u64>(), d in 0usize..=3) {
        let x = random_polytope_element(&mut stream(seed, "prop/polytope"), d);
        prop_assert!(x.interior().interior().sub(&x).is_zero());
        let two = Rational::from_integer(2.into());
        let half = Rational::new(1.into(), 2.into());
        prop_assert!(x.dilate(&two).unwrap().dilate(&half).unwrap().sub(&x).is_zero());
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert!(same(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
        prop_assert!(same(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
        prop_assert!(same(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap()));
        let lhs = a.add(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(same(&a.sub(&a).unwrap(), &RingValue::zero()));
    }

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&x)), Some(x));
    }

    #[test]
    fn integer_and_rational_rank_agree(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..5)) {
        let iv: Vec<IVec> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let qv: Vec<_> = iv.iter().map(|r| to_q(r)).collect();
        prop_assert_eq!(rank_i(&iv, 4), rank_q(&qv, 4));
    }
}
