use crossbraid::pointed::PointedCat;
use crossbraid::quadforms::{quadratic_forms_with, symmetric_nondegenerate};
use crossbraid::skeletal::pentagon_check;
use crossbraid::tycat::make_ty;
use crossbraid::{AbGroup, BigRational, Cochain, Root};
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = AbGroup> {
    prop::sample::select(vec![vec![2u64], vec![3], vec![4], vec![2, 2], vec![5], vec![6], vec![2, 4]])
        .prop_map(|f| AbGroup::new(f).unwrap())
}

fn group_with_cochain(degree: usize) -> impl Strategy<Value = (AbGroup, Vec<i64>)> {
    small_group().prop_flat_map(move |g| {
        let cells = (g.order() as usize).pow(degree as u32);
        (Just(g), prop::collection::vec(0i64..64, cells))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn index_arithmetic_is_a_group(g in small_group(), seed in any::<[u8; 3]>()) {
        let n = g.order() as usize;
        let [a, b, c] = seed.map(|s| s as usize % n);
        prop_assert_eq!(g.add_idx(g.add_idx(a, b), c), g.add_idx(a, g.add_idx(b, c)));
        prop_assert_eq!(g.add_idx(a, b), g.add_idx(b, a));
        prop_assert_eq!(g.add_idx(a, g.neg_idx(a)), 0);
        prop_assert_eq!(g.sub_idx(g.add_idx(a, b), b), a);
    }

    #[test]
    fn coboundaries_are_closed_and_exact((g, raw) in group_with_cochain(2)) {
        let l = 2 * g.exponent();
        let n = g.order() as usize;
        let beta = Cochain::from_roots(2, &g, l, |args| {
            if args.contains(&0) { Root::ONE } else { Root::new(raw[args[0] * n + args[1]], l) }
        }).unwrap();
        let d = beta.differential().unwrap();
        prop_assert!(d.is_cocycle());
        prop_assert!(d.is_coboundary().unwrap().is_some());
    }

    #[test]
    fn twisting_preserves_the_class((g, raw) in group_with_cochain(2), k in 0u64..4) {
        let k = k % g.invariant_factors()[0];
        let base = PointedCat::standard(&g, &vec![k; g.rank()], &[], &[]).unwrap();
        let l = base.value_order();
        let n = g.order() as usize;
        let beta = Cochain::from_roots(2, &g, l, |args| {
            if args.contains(&0) { Root::ONE } else { Root::new(raw[args[0] * n + args[1]], l) }
        }).unwrap();
        let twisted = base.twisted_by(&beta).unwrap();
        prop_assert!(twisted.omega().is_cocycle());
        prop_assert!(twisted.omega().same_class(base.omega()).unwrap());
    }

    #[test]
    fn forms_refine_their_bicharacter(g in small_group(), pick in any::<prop::sample::Index>()) {
        let chis = symmetric_nondegenerate(&g);
        let chi = pick.get(&chis);
        let n = g.order() as usize;
        for q in quadratic_forms_with(chi) {
            prop_assert!(q.is_quadratic());
            prop_assert!(q.compatible_with(chi));
            for a in 0..n {
                prop_assert_eq!(q.value(g.neg_idx(a)), q.value(a));
                for b in 0..n {
                    prop_assert_eq!(q.w(a, b), chi.eval(a, b).inv());
                }
            }
        }
    }

    #[test]
    fn ty_pentagon_holds(g in small_group(), pick in any::<prop::sample::Index>(), sign in prop::sample::select(vec![1i8, -1])) {
        let chis = symmetric_nondegenerate(&g);
        let ty = make_ty::<BigRational>(pick.get(&chis), sign).unwrap();
        prop_assert!(pentagon_check(&ty).unwrap().holds);
    }
}
