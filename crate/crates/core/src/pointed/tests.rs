use super::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(f: &[u64]) -> AbGroup {
    AbGroup::new(f.to_vec()).unwrap()
}

fn random_beta(group: &AbGroup, l: u64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::from_roots(2, group, l, |args| {
        if args.contains(&0) { Root::ONE } else { Root::new(rng.gen_range(0..l as i64), l) }
    }).unwrap()
}

/// Class representatives of H³ on a cyclic group, each twisted by a random coboundary.
fn cyclic_instances(n: u64, twists: usize, seed: u64) -> Vec<PointedCat> {
    let grp = g(&[n]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..n {
        let base = PointedCat::standard(&grp, &[k], &[], &[]).unwrap();
        out.push(base.clone());
        for _ in 0..twists {
            let beta = random_beta(&grp, base.value_order(), &mut rng);
            out.push(base.twisted_by(&beta).unwrap());
        }
    }
    out
}

#[test]
fn untwisted_data_is_trivial() {
    let cat = PointedCat::untwisted(&g(&[3])).unwrap();
    let d = crossed_data(&cat);
    assert!(d.gamma.iter().chain(&d.mu).all(|r| r.is_one()));
    let eta = solve_eta(&cat).unwrap().unwrap();
    assert!(eta.is_identity());
    assert!(pointed_obstruction(&cat, &eta).unwrap().is_identity());
}

#[test]
fn semion_data() {
    let cat = PointedCat::standard(&g(&[2]), &[1], &[], &[]).unwrap();
    assert_eq!(cat.w(1, 1, 1), Root::MINUS_ONE);
    let d = crossed_data(&cat);
    assert_eq!(d.gamma(1, 1, 1), Root::MINUS_ONE);
    let eta = solve_eta(&cat).unwrap().unwrap();
    let v = eta.root_value(&[1, 1]);
    assert!(v == Root::new(1, 4) || v == Root::new(3, 4));
    let b = pointed_obstruction(&cat, &eta).unwrap();
    assert!(b.is_coboundary().unwrap().is_some());
}

#[test]
fn standard_cocycles_are_closed() {
    for f in [&[2u64, 2][..], &[2, 4], &[2, 2, 2]] {
        let grp = g(f);
        let r = f.len();
        let pairs: Vec<_> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j, 1))).collect();
        let triples = if r == 3 { vec![(0, 1, 2, 1)] } else { vec![] };
        let cat = PointedCat::standard(&grp, &vec![1; r], &pairs, &triples).unwrap();
        assert!(cat.omega().is_cocycle());
    }
}

#[test]
fn crossed_structure_is_valid() {
    for n in [2u64, 3, 4] {
        for cat in cyclic_instances(n, 2, 7 + n) {
            let ctx = crossed_context::<BigRational>(&cat).unwrap();
            let report = ctx.action().check::<BigRational, _>(&cat).unwrap();
            assert!(report.holds(), "{report:?}");
            let c = trivial_crossed_braiding(&cat);
            let v = ctx.verify_braiding(&c, &Scope::Full).unwrap();
            assert!(v.holds, "{:?}", v.failure);
        }
    }
}

#[test]
fn perturbed_t2_breaks_the_action() {
    let cat = PointedCat::standard(&g(&[4]), &[1], &[], &[]).unwrap();
    let act = crossed_action(&cat, &crossed_data(&cat)).unwrap();
    let bad = act.with_t2_scaled(1, 2, 1, Root::MINUS_ONE);
    assert!(!bad.check::<BigRational, _>(&cat).unwrap().holds());
}

#[test]
fn brute_force_counts() {
    let plain = PointedCat::untwisted(&g(&[2])).unwrap();
    let (bs, _) = braidings_pointed(&plain).unwrap();
    let diag: Vec<Root> = bs.iter().map(|c| diagonal(&plain, c)[1]).collect();
    assert_eq!(diag, vec![Root::ONE, Root::MINUS_ONE]);

    let semion = PointedCat::standard(&g(&[2]), &[1], &[], &[]).unwrap();
    let (bs, _) = braidings_pointed(&semion).unwrap();
    let diag: Vec<Root> = bs.iter().map(|c| diagonal(&semion, c)[1]).collect();
    assert_eq!(diag, vec![Root::new(1, 4), Root::new(3, 4)]);

    let (bs, _) = braidings_pointed(&PointedCat::untwisted(&g(&[3])).unwrap()).unwrap();
    assert_eq!(bs.len(), 3);
}

#[test]
fn oracle_equivalence_and_dual_path() {
    for n in [2u64, 3, 4] {
        for cat in cyclic_instances(n, 2, 100 + n) {
            let (brute, _) = braidings_pointed(&cat).unwrap();
            let eta = solve_eta(&cat).unwrap();
            let vanishes = match &eta {
                Some(eta) => {
                    let b = pointed_obstruction(&cat, eta).unwrap();
                    assert!(b.is_cocycle());
                    assert_eq!(b, engine_obstruction(&cat, eta).unwrap());
                    b.is_coboundary().unwrap().is_some()
                }
                None => false,
            };
            assert_eq!(!brute.is_empty(), vanishes);
            assert_eq!(braidings_from_trivializations(&cat).unwrap(), brute);
            for c in &brute {
                let d = diagonal(&cat, c);
                let q = crate::quadforms::QuadraticForm::new(cat.group(), d).unwrap();
                assert!(q.is_quadratic());
            }
        }
    }
}

#[test]
fn klein_four_has_unbraidable_cocycles() {
    let grp = g(&[2, 2]);
    let mut no_eta = 0;
    let mut nonzero = 0;
    let mut braided = 0;
    for k0 in 0..2 {
        for k1 in 0..2 {
            for k2 in 0..2 {
                let cat = PointedCat::standard(&grp, &[k0, k1], &[(0, 1, k2)], &[]).unwrap();
                match solve_eta(&cat).unwrap() {
                    None => no_eta += 1,
                    Some(eta) => {
                        let b = pointed_obstruction(&cat, &eta).unwrap();
                        if b.is_coboundary().unwrap().is_some() {
                            braided += 1;
                            assert!(!braidings_pointed(&cat).unwrap().0.is_empty());
                        } else {
                            nonzero += 1;
                            assert!(trivializations(&cat).unwrap().is_empty());
                            assert!(braidings_pointed(&cat).unwrap().0.is_empty());
                        }
                    }
                }
            }
        }
    }
    eprintln!("no η: {no_eta}, nonzero class: {nonzero}, braided: {braided}");
    assert!(no_eta + nonzero > 0);
}

#[test]
fn trilinear_cocycle_has_no_eta() {
    // on ℤ/2×ℤ/2 every γ(g|−,−) is cohomologically trivial; the trilinear
    // cocycle on (ℤ/2)³ is the smallest instance where some g_* ≇ Id
    let cat = PointedCat::standard(&g(&[2, 2, 2]), &[], &[], &[(0, 1, 2, 1)]).unwrap();
    assert!(solve_eta(&cat).unwrap().is_none());
    assert!(braidings_pointed(&cat).unwrap().0.is_empty());
    assert!(trivializations(&cat).unwrap().is_empty());
}
