//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use crossbraid::cohomology::all_cochains;
use crossbraid::pointed::{self, PointedCat};
use crossbraid::quadforms::{quadratic_forms_with, symmetric_nondegenerate};
use crossbraid::skeletal::{self, pentagon_check, Instance, IdAutos};
use crossbraid::tycat::{self, make_ty};
use crossbraid::{AbGroup, Bicharacter, Cochain, CycField, CycNumber, Root, TyCategory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(f: &[u64]) -> AbGroup {
    AbGroup::new(f.to_vec()).unwrap()
}

fn ty(chi: &Bicharacter, sign: i8) -> TyCategory {
    make_ty(chi, sign).unwrap()
}

/// Groups with |A| ≤ 8.
fn small_groups() -> Vec<AbGroup> {
    [&[2u64][..], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2]].iter().map(|f| g(f)).collect()
}

fn random_beta(group: &AbGroup, l: u64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::from_roots(2, group, l, |args| {
        if args.contains(&0) {
            Root::ONE
        } else {
            Root::new(rng.gen_range(0..l as i64), l)
        }
    })
    .unwrap()
}

/// Closed normalized ω for criterion 6: all of them on ℤ/2; on ℤ/3 and ℤ/4
/// every class representative, untwisted and twisted by random coboundaries.
fn pointed_instances() -> Vec<PointedCat> {
    let mut out = Vec::new();
    let z2 = g(&[2]);
    let coeff = AbGroup::cyclic(pointed::default_value_order(&z2));
    for w in all_cochains(3, &z2, &coeff).unwrap() {
        if w.is_cocycle() {
            out.push(PointedCat::new(w).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [3u64, 4] {
        let grp = g(&[n]);
        for k in 0..n {
            let base = PointedCat::standard(&grp, &[k], &[], &[]).unwrap();
            for _ in 0..3 {
                let beta = random_beta(&grp, base.value_order(), &mut rng);
                out.push(base.twisted_by(&beta).unwrap());
            }
            out.push(base);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cats = 0;
    let mut mutations = 0;
    for f in [&[2u64][..], &[3], &[4], &[2, 2]] {
        for chi in symmetric_nondegenerate(&g(f)) {
            for sign in [1, -1] {
                let t = ty(&chi, sign);
                let r = pentagon_check(&t).unwrap();
                ensure(r.holds, || format!("pentagon fails on {f:?}, τ sign {sign}: {:?}", r.failures.first()))?;
                cats += 1;
                let n = t.m();
                for a in 0..n {
                    for b in 0..n {
                        let r = pentagon_check(&t.with_flipped_entry(a, b)).unwrap();
                        ensure(!r.holds, || format!("mutation ({a},{b}) on {f:?} not detected"))?;
                        mutations += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{cats} categories hold, {mutations} mutations all fail, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let r = tycat::ising_report().unwrap();
    let t = &r.totals;
    ensure((t.fusion, t.braided, t.ribbon) == (2, 8, 16), || format!("totals {t:?}"))?;
    for c in &r.categories {
        ensure(c.pentagon && c.braidings.len() == 4, || format!("τ sign {}", c.tau_sign))?;
        for b in &c.braidings {
            ensure(b.hexagons && b.ribbons.len() == 2 && b.ribbons.iter().all(|x| x.verified), || {
                format!("braiding q(ψ)={} α={}", b.q_psi, b.alpha)
            })?;
        }
    }
    Ok("2 fusion categories, 8 braided, 16 ribbon".into())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for f in [&[3u64][..], &[4]] {
        for chi in symmetric_nondegenerate(&g(f)) {
            for sign in [1, -1] {
                let t = ty(&chi, sign);
                ensure(tycat::braidings(&t).unwrap().is_empty(), || format!("formula braidings on {f:?}"))?;
                let (brute, _) = tycat::brute_force_braidings(&t).unwrap();
                ensure(brute.is_empty(), || format!("brute-force braidings on {f:?}"))?;
            }
        }
        notes.push(format!("{f:?}: 0"));
    }
    for f in [&[2u64][..], &[2, 2]] {
        for chi in symmetric_nondegenerate(&g(f)) {
            for sign in [1, -1] {
                let t = ty(&chi, sign);
                let formula: Vec<_> = tycat::braidings(&t).unwrap().into_iter().map(|c| c.table).collect();
                let (brute, _) = tycat::brute_force_braidings(&t).unwrap();
                let nq = quadratic_forms_with(&chi).len();
                ensure(!formula.is_empty() && formula.len() == 2 * nq, || format!("{f:?}: {} vs 2·{nq}", formula.len()))?;
                ensure(formula == brute, || format!("{f:?}: formula and brute force differ"))?;
            }
        }
        notes.push(format!("{f:?}: 2·#q"));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Outcome {
    let mut instances = 0;
    let mut total = 0;
    for grp in small_groups() {
        for chi in symmetric_nondegenerate(&grp) {
            for sign in [1, -1] {
                let t = ty(&chi, sign);
                let [strict, twisted] = tycat::z2_actions(&t).unwrap();
                let formula: Vec<_> = tycat::crossed_braidings(&t).unwrap().into_iter().map(|c| c.table).collect();
                let (brute, _) = tycat::brute_force_crossed_braidings(&t, &strict).unwrap();
                ensure(formula == brute, || {
                    format!("{:?}: formula {} vs brute {}", grp.invariant_factors(), formula.len(), brute.len())
                })?;
                let (none, _) = tycat::brute_force_crossed_braidings(&t, &twisted).unwrap();
                ensure(none.is_empty(), || format!("{:?}: non-strict action admits solutions", grp.invariant_factors()))?;
                instances += 1;
                total += formula.len();
            }
        }
    }
    Ok(format!("{instances} instances with |A| ≤ 8, {total} crossed braidings matched"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cats = Vec::new();
    for (f, reps) in [
        (&[2u64][..], vec![(vec![0u64], vec![]), (vec![1], vec![])]),
        (&[3], vec![(vec![0], vec![]), (vec![1], vec![]), (vec![2], vec![])]),
        (&[4], vec![(vec![0], vec![]), (vec![1], vec![]), (vec![2], vec![]), (vec![3], vec![])]),
        (&[2, 2], (0..8).map(|k: u64| (vec![k & 1, (k >> 1) & 1], vec![(0usize, 1usize, k >> 2)])).collect()),
    ] {
        let grp = g(f);
        for (single, pairs) in reps {
            let base = PointedCat::standard(&grp, &single, &pairs, &[]).unwrap();
            for _ in 0..2 {
                let beta = random_beta(&grp, base.value_order(), &mut rng);
                cats.push(base.twisted_by(&beta).unwrap());
            }
        }
    }
    ensure(cats.len() >= 20, || format!("only {} instances", cats.len()))?;
    let (mut trivial, mut obstructed, mut skipped) = (0, 0, 0);
    for cat in &cats {
        let Some(eta) = pointed::solve_eta(cat).unwrap() else {
            skipped += 1;
            continue;
        };
        let act = pointed::crossed_action(cat, &pointed::crossed_data(cat)).unwrap();
        let fd = skeletal::FusionData::pointed(cat.group());
        let autos = IdAutos::new(&fd).unwrap();
        let choices = pointed::choices_from_eta(cat, &eta);
        let b = skeletal::obstruction_cocycle(&act, &fd, &autos, &choices).unwrap();
        ensure(b.is_cocycle(), || "obstruction not closed".into())?;
        for _ in 0..5 {
            let mut other = choices.clone();
            for row in other.iter_mut().skip(1) {
                let u = autos.function(rng.gen_range(0..autos.functions().len()));
                for (x, v) in row.iter_mut().enumerate() {
                    *v = v.mul(u[x]);
                }
            }
            let b2 = skeletal::obstruction_cocycle(&act, &fd, &autos, &other).unwrap();
            ensure(b2.is_cocycle() && b.same_class(&b2).unwrap(), || "class changed under re-choice".into())?;
        }
        let ts = skeletal::trivializations(&act, &fd, &choices).unwrap();
        let vanishes = b.is_coboundary().unwrap().is_some();
        ensure(ts.is_empty() != vanishes, || "trivializations vs class mismatch".into())?;
        if vanishes {
            let homs = cat.group().homs(autos.group()).unwrap().len();
            ensure(ts.len() == homs, || format!("{} trivializations, |Hom| = {homs}", ts.len()))?;
            ensure(ts.iter().all(|t| t.verify(&act, &fd).unwrap()), || "invalid trivialization".into())?;
            trivial += 1;
        } else {
            obstructed += 1;
        }
    }
    Ok(format!(
        "{} instances: {trivial} trivializable, {obstructed} obstructed, {skipped} without η",
        cats.len()
    ))
}

fn criterion_6_and_7() -> (Outcome, Outcome) {
    let mut c6: Result<(), String> = Ok(());
    let mut c7: Result<(), String> = Ok(());
    let insts = pointed_instances();
    let mut braided = 0;
    let mut z2_counts = Vec::new();
    for cat in &insts {
        let (brute, _) = pointed::braidings_pointed(cat).unwrap();
        let eta = pointed::solve_eta(cat).unwrap();
        let vanishes = match &eta {
            Some(eta) => {
                let b = pointed::pointed_obstruction(cat, eta).unwrap();
                let engine = pointed::engine_obstruction(cat, eta).unwrap();
                if c7.is_ok() && b != engine {
                    c7 = Err(format!("obstructions differ on {:?}", cat.group().invariant_factors()));
                }
                b.is_coboundary().unwrap().is_some()
            }
            None => false,
        };
        if c6.is_ok() && brute.is_empty() == vanishes {
            c6 = Err(format!("existence mismatch on {:?}", cat.group().invariant_factors()));
        }
        if c6.is_ok() && pointed::braidings_from_trivializations(cat).unwrap() != brute {
            c6 = Err("trivialization braidings differ from brute force".into());
        }
        if !brute.is_empty() {
            braided += 1;
        }
        if cat.group().order() == 2 {
            z2_counts.push(brute.len());
        }
    }
    if c6.is_ok() && z2_counts != [2, 2] {
        c6 = Err(format!("ℤ/2 braiding counts {z2_counts:?}"));
    }
    (
        c6.map(|_| format!("{} instances, {braided} braided; ℤ/2 counts {z2_counts:?}", insts.len())),
        c7.map(|_| format!("{} instances, formula = engine entrywise", insts.len())),
    )
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for grp in small_groups() {
        let n = grp.order();
        let field = CycField::new(CycField::conductor_for_group(n, grp.exponent())).unwrap();
        let target = CycNumber::from_integer(&field, (n * n * n * n) as i64);
        for chi in symmetric_nondegenerate(&grp) {
            for q in quadratic_forms_with(&chi) {
                let s: CycNumber = q.gauss_sum(&field).unwrap();
                ensure(s.pow(8).unwrap() == target, || format!("{:?}: (Σq)^8 ≠ |A|^4", grp.invariant_factors()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} forms satisfy (Σq)^8 = |A|^4"))
}

fn criterion_9() -> Outcome {
    let mut crossed = 0;
    for f in [&[2u64][..], &[3], &[4], &[2, 2]] {
        for chi in symmetric_nondegenerate(&g(f)) {
            for sign in [1, -1] {
                let t = ty(&chi, sign);
                for cb in tycat::crossed_braidings(&t).unwrap() {
                    let tws = tycat::twists(&t, &cb).unwrap();
                    ensure(tws.len() == 2, || format!("{f:?}: {} twists", tws.len()))?;
                    let (brute, _) = tycat::brute_force_twists(&t, &cb).unwrap();
                    ensure(brute == tws.iter().map(|w| w.theta.clone()).collect::<Vec<_>>(), || {
                        format!("{f:?}: brute-force ribbons differ")
                    })?;
                    for tw in &tws {
                        ensure(tycat::twist_failures(&t, &cb, &tw.theta).unwrap().is_empty(), || "twist fails".into())?;
                        for x in 1..=t.m() {
                            for r in [Root::new(1, 4), Root::new(1, 3)] {
                                let mut v = tw.theta.clone();
                                v.values[x] = v.values[x].mul(r);
                                let fails = tycat::twist_failures(&t, &cb, &v).unwrap();
                                ensure(fails.iter().any(|i| matches!(i, Instance::Tw3 { .. })), || {
                                    format!("{f:?}: perturbing θ_{x} by {r} passes Tw3")
                                })?;
                            }
                        }
                    }
                    crossed += 1;
                }
            }
        }
    }
    let report = tycat::ising_report().unwrap();
    let alpha_note: Vec<String> = report
        .displayed_alpha
        .iter()
        .map(|c| {
            format!(
                "q(ψ)={}: displayed α² = {} vs τΣq = {} ({})",
                c.q_psi,
                c.displayed_squared,
                c.required_square,
                if c.consistent { "consistent" } else { "discrepancy" }
            )
        })
        .collect();
    Ok(format!("{crossed} crossed braidings × 2 ribbons; displayed Ising α: {}", alpha_note.join("; ")))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    report(name, out, start.elapsed())
}

fn report(name: &str, out: Outcome, elapsed: Duration) -> bool {
    match out {
        Ok(msg) => {
            println!("PASS {name}: {msg} [{:.2}s]", elapsed.as_secs_f64());
            true
        }
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run("criterion 1 (pentagon suite)", criterion_1);
    ok &= run("criterion 2 (Ising counts)", criterion_2);
    ok &= run("criterion 3 (braidings need an elementary abelian 2-group)", criterion_3);
    ok &= run("criterion 4 (crossed braidings: formula = brute force)", criterion_4);
    ok &= run("criterion 5 (obstruction theorem suite)", criterion_5);
    let start = Instant::now();
    let (c6, c7) = panic::catch_unwind(criterion_6_and_7).unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    let elapsed = start.elapsed();
    ok &= report("criterion 6 (pointed braidings: existence ⇔ trivial obstruction)", c6, elapsed);
    ok &= report("criterion 7 (obstruction formula = engine obstruction)", c7, elapsed);
    ok &= run("criterion 8 (Gauss sums: (Σq)^8 = |A|^4)", criterion_8);
    ok &= run("criterion 9 (ribbon suite)", criterion_9);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
