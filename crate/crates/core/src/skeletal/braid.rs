//! Crossed braidings and twists on skeletal data: cell-level hexagon
//! identities, verification, and an exhaustive propagation solver.
//!
//! A crossed braiding is stored as scalars `R^{XY}_Z` for the component of
//! `c_{X,Y}: X⊗Y → g(Y)⊗X` (with `g = deg X`) on the summand `Z`; both sides
//! carry the same channel label. With the trivial action of the trivial group
//! the identities below are the two ordinary hexagons.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Associator, FusionData, GActionData, SkeletalError};
use crate::abgroup::AbGroup;
use crate::cyclotomic::{Coeff, Cyc, CycField, Root, RootSum};

// ---------------------------------------------------------------------------
// Tables

/// Braiding scalars `R^{XY}_Z`, defined exactly on admissible triples.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BraidingTable {
    n: usize,
    entries: Vec<Option<Root>>,
}

impl BraidingTable {
    pub fn from_fn(fd: &FusionData, mut f: impl FnMut(usize, usize, usize) -> Root) -> Self {
        let n = fd.len();
        let mut entries = vec![None; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    entries[(x * n + y) * n + z] = Some(f(x, y, z));
                }
            }
        }
        BraidingTable { n, entries }
    }

    /// Only rows whose first label satisfies `keep` are filled.
    pub fn from_fn_rows(
        fd: &FusionData,
        keep: impl Fn(usize) -> bool,
        mut f: impl FnMut(usize, usize, usize) -> Root,
    ) -> Self {
        let n = fd.len();
        let mut entries = vec![None; n * n * n];
        for x in (0..n).filter(|&x| keep(x)) {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    entries[(x * n + y) * n + z] = Some(f(x, y, z));
                }
            }
        }
        BraidingTable { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> Option<Root> {
        self.entries[(x * self.n + y) * self.n + z]
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, x: usize, y: usize, z: usize, r: Root) -> Self {
        let mut out = self.clone();
        out.entries[(x * self.n + y) * self.n + z] = Some(r);
        out
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, usize, Root) -> Root) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let i = (x * n + y) * n + z;
                    if let Some(c) = self.entries[i] {
                        out.entries[i] = Some(f(x, y, z, c));
                    }
                }
            }
        }
        out
    }

    /// Image under a strict functor with the given label permutation:
    /// `R'^{pX,pY}_{pZ} = R^{XY}_Z`.
    pub fn transport(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = vec![None; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    entries[(perm[x] * n + perm[y]) * n + perm[z]] = self.entries[(x * n + y) * n + z];
                }
            }
        }
        BraidingTable { n, entries }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, Root)> + '_ {
        let n = self.n;
        self.entries.iter().enumerate().filter_map(move |(i, c)| c.map(|c| (i / (n * n), (i / n) % n, i % n, c)))
    }
}

#[derive(Serialize)]
struct EntryRepr {
    x: usize,
    y: usize,
    z: usize,
    value: Root,
}

impl Serialize for BraidingTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<EntryRepr> = self.iter().map(|(x, y, z, value)| EntryRepr { x, y, z, value }).collect();
        let mut st = s.serialize_struct("BraidingTable", 1)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Twist scalars `θ_X`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct TwistTable {
    pub values: Vec<Root>,
}

/// A cell of a partially known table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cell {
    Absent,
    Known(Root),
    /// unknown number `u`; the solver assigns unknowns in increasing order
    Unknown(u32),
}

/// Which hexagon instances apply.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scope {
    /// Every instance, plus compatibility with the action.
    Full,
    /// Relative braiding with first argument in the given subset of labels:
    /// the first hexagon for `X` in the subset, the second for `X, Y` in it.
    Relative(Vec<bool>),
}

/// One scalar identity of the axioms.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "diagram")]
pub enum Instance {
    HH1 { x: usize, y: usize, z: usize, w: usize, e: usize, k: usize },
    HH2 { x: usize, y: usize, z: usize, w: usize, f: usize, k: usize },
    ActionCompat { g: usize, x: usize, z: usize, w: usize },
    Tw1,
    Tw2 { g: usize, x: usize },
    Tw3 { x: usize, y: usize, z: usize },
    Ribbon { x: usize },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::HH1 { .. } => "HH1",
            Instance::HH2 { .. } => "HH2",
            Instance::ActionCompat { .. } => "action",
            Instance::Tw1 => "Tw1",
            Instance::Tw2 { .. } => "Tw2",
            Instance::Tw3 { .. } => "Tw3",
            Instance::Ribbon { .. } => "ribbon",
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instance::HH1 { x, y, z, w, e, k } => write!(f, "HH1({x},{y},{z}) at W={w}, E={e}, K={k}"),
            Instance::HH2 { x, y, z, w, f: ff, k } => write!(f, "HH2({x},{y},{z}) at W={w}, F={ff}, K={k}"),
            Instance::ActionCompat { g, x, z, w } => write!(f, "action compatibility g={g} on ({x},{z}) at W={w}"),
            Instance::Tw1 => write!(f, "Tw1"),
            Instance::Tw2 { g, x } => write!(f, "Tw2(g={g}, X={x})"),
            Instance::Tw3 { x, y, z } => write!(f, "Tw3({x},{y}) at Z={z}"),
            Instance::Ribbon { x } => write!(f, "ribbon(X={x})"),
        }
    }
}

/// Verification transcript.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub holds: bool,
    /// instances evaluated per diagram kind
    pub checked: BTreeMap<&'static str, usize>,
    pub failure: Option<Instance>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SolveStats {
    pub unknowns: usize,
    pub equations: usize,
    pub nodes: u64,
    pub forced: u64,
}

// ---------------------------------------------------------------------------
// Symbolic products

type Mono = Vec<(u32, i32)>;

fn mono_mul(a: &Mono, b: &Mono, sign: i32) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, sign * b[j].1));
            j += 1;
        } else {
            let e = a[i].1 + sign * b[j].1;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `Σ coeff · Π u^e` over unknowns `u`.
#[derive(Clone, Debug)]
pub(crate) struct Sym<T> {
    terms: Vec<(Mono, RootSum<T>)>,
}

impl<T: Coeff> Sym<T> {
    fn zero() -> Self {
        Sym { terms: Vec::new() }
    }

    fn constant(c: RootSum<T>) -> Self {
        if c.is_syntactically_zero() {
            Self::zero()
        } else {
            Sym { terms: vec![(Vec::new(), c)] }
        }
    }

    fn root(r: Root) -> Self {
        Self::constant(RootSum::root(r))
    }

    fn var(u: u32) -> Self {
        Sym { terms: vec![(vec![(u, 1)], RootSum::one())] }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                terms.push((mono_mul(m1, m2, 1), c1.mul(c2)));
            }
        }
        Self::normalized(terms)
    }

    fn mul_const(&self, c: &RootSum<T>) -> Self {
        Self::normalized(self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect())
    }

    fn mul_root(&self, r: Root) -> Self {
        Sym { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_root(r))).collect() }
    }

    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::normalized(terms)
    }

    fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().map(|(m, c)| (m.clone(), c.neg())));
        Self::normalized(terms)
    }

    fn normalized(mut terms: Vec<(Mono, RootSum<T>)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, RootSum<T>)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_syntactically_zero());
        Sym { terms: out }
    }
}

/// A compiled scalar identity `Σ c_i Π u^e = 0`.
#[derive(Clone, Debug)]
enum Equation<T> {
    Trivial,
    Impossible,
    /// `Π u^e = value`
    Binomial { mono: Mono, value: Root },
    General { terms: Vec<(Mono, RootSum<T>)> },
}

fn as_root_ratio<T: Coeff>(num: &RootSum<T>, den: &RootSum<T>, field: &std::sync::Arc<CycField>) -> Result<Option<Root>, SkeletalError> {
    if let (Some(a), Some(b)) = (num.as_root(), den.as_root()) {
        return Ok(Some(a.div(b)));
    }
    let q: Cyc<T> = num.to_cyc(field)?.try_div(&den.to_cyc(field)?)?;
    Ok(Root::from_cyc(&q).ok())
}

fn compile<T: Coeff>(d: Sym<T>, field: &std::sync::Arc<CycField>) -> Result<Equation<T>, SkeletalError> {
    let mut terms = Vec::with_capacity(d.terms.len());
    for (m, c) in d.terms {
        if !c.is_zero_in(field)? {
            terms.push((m, c));
        }
    }
    Ok(match terms.len() {
        0 => Equation::Trivial,
        1 => Equation::Impossible,
        2 => {
            // c1 m1 + c2 m2 = 0  ⇔  m1 / m2 = -c2 / c1
            let (m1, c1) = &terms[0];
            let (m2, c2) = &terms[1];
            match as_root_ratio(&c2.neg(), c1, field)? {
                None => Equation::Impossible,
                Some(value) => {
                    let mono = mono_mul(m1, m2, -1);
                    if mono.is_empty() {
                        if value.is_one() {
                            Equation::Trivial
                        } else {
                            Equation::Impossible
                        }
                    } else {
                        Equation::Binomial { mono, value }
                    }
                }
            }
        }
        _ => Equation::General { terms },
    })
}

fn mono_value(m: &Mono, vals: &[Root]) -> Root {
    m.iter().fold(Root::ONE, |acc, &(u, e)| acc.mul(vals[u as usize].pow(e as i64)))
}

impl<T: Coeff> Equation<T> {
    fn max_var(&self) -> Option<u32> {
        match self {
            Equation::Binomial { mono, .. } => mono.last().map(|x| x.0),
            Equation::General { terms } => terms.iter().filter_map(|(m, _)| m.last().map(|x| x.0)).max(),
            _ => None,
        }
    }

    fn holds(&self, vals: &[Root], field: &std::sync::Arc<CycField>) -> Result<bool, SkeletalError> {
        Ok(match self {
            Equation::Trivial => true,
            Equation::Impossible => false,
            Equation::Binomial { mono, value } => mono_value(mono, vals) == *value,
            Equation::General { terms } => {
                let mut s = RootSum::zero();
                for (m, c) in terms {
                    s = s.add(&c.mul_root(mono_value(m, vals)));
                }
                s.is_zero_in(field)?
            }
        })
    }
}

/// All assignments of roots to unknowns `0..count` satisfying every equation.
///
/// Unknowns are assigned in index order. Each equation is checked as soon as
/// its last unknown is assigned. When an equation is a binomial `u^k · (known) = ρ`
/// in the current unknown `u`, only its `|k|` solutions are tried; otherwise
/// every candidate is.
fn solve<T: Coeff>(
    count: usize,
    eqs: &[(Instance, Equation<T>)],
    candidates: &[Root],
    field: &std::sync::Arc<CycField>,
) -> Result<(Vec<Vec<Root>>, SolveStats), SkeletalError> {
    let mut stats = SolveStats { unknowns: count, equations: eqs.len(), ..Default::default() };
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, (_, eq)) in eqs.iter().enumerate() {
        match eq.max_var() {
            Some(u) => attached[u as usize].push(i),
            None => {
                if !eq.holds(&[], field)? {
                    return Ok((Vec::new(), stats));
                }
            }
        }
    }
    // for each unknown, the binomial with the smallest nonzero exponent in it
    let forcing: Vec<Option<(usize, i32)>> = (0..count)
        .map(|u| {
            attached[u]
                .iter()
                .filter_map(|&i| match &eqs[i].1 {
                    Equation::Binomial { mono, .. } => {
                        mono.last().filter(|(v, _)| *v as usize == u).map(|&(_, e)| (i, e))
                    }
                    _ => None,
                })
                .min_by_key(|(_, e)| e.abs())
        })
        .collect();

    let mut out = Vec::new();
    let mut vals = vec![Root::ONE; count];
    let mut stack: Vec<(usize, Vec<Root>, usize)> = Vec::new();
    if count == 0 {
        out.push(Vec::new());
        return Ok((out, stats));
    }
    let options = |u: usize, vals: &[Root], stats: &mut SolveStats| -> Vec<Root> {
        match forcing[u] {
            Some((i, e)) => {
                stats.forced += 1;
                let Equation::Binomial { mono, value } = &eqs[i].1 else { unreachable!() };
                let rest = mono_value(&mono[..mono.len() - 1].to_vec(), vals);
                let target = value.div(rest);
                let target = if e < 0 { target.inv() } else { target };
                let k = e.unsigned_abs() as u64;
                let mut rs: Vec<Root> = (0..k)
                    .map(|j| Root::new(target.exp() as i64 + (j * target.order()) as i64, k * target.order()))
                    .collect();
                rs.sort();
                rs.dedup();
                rs
            }
            None => candidates.to_vec(),
        }
    };
    let first = options(0, &vals, &mut stats);
    stack.push((0, first, 0));
    while let Some((u, opts, pos)) = stack.last_mut() {
        let u = *u;
        if *pos >= opts.len() {
            stack.pop();
            continue;
        }
        let v = opts[*pos];
        *pos += 1;
        vals[u] = v;
        stats.nodes += 1;
        let mut ok = true;
        for &i in &attached[u] {
            if !eqs[i].1.holds(&vals, field)? {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if u + 1 == count {
            out.push(vals.clone());
        } else {
            let next = options(u + 1, &vals, &mut stats);
            stack.push((u + 1, next, 0));
        }
    }
    Ok((out, stats))
}

// ---------------------------------------------------------------------------
// The crossed hexagons

/// Associator, action and grading: everything needed to state the crossed
/// braiding and twist axioms.
pub struct CrossedContext<'a, T: Coeff, A: Associator<T>> {
    assoc: &'a A,
    action: GActionData,
    degree: Vec<usize>,
    _t: PhantomData<T>,
}

impl<'a, T: Coeff, A: Associator<T>> CrossedContext<'a, T, A> {
    /// Checks that the grading is multiplicative, preserved by the action,
    /// and that `Z ≤ X⊗Y` implies `Z ≤ g(Y)⊗X` for `g = deg X`.
    pub fn new(assoc: &'a A, action: GActionData, degree: Vec<usize>) -> Result<Self, SkeletalError> {
        let fd = assoc.fusion();
        let n = fd.len();
        let g = action.group();
        if degree.len() != n || degree[0] != 0 || degree.iter().any(|&d| d >= g.order() as usize) {
            return Err(SkeletalError::Grading("degree map has the wrong shape".into()));
        }
        if action.functors().iter().any(|f| f.len() != n) {
            return Err(SkeletalError::BaseMismatch);
        }
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    if degree[z] != g.add_idx(degree[x], degree[y]) {
                        return Err(SkeletalError::Grading(format!("deg {z} ≠ deg {x} + deg {y}")));
                    }
                    let gy = action.functor(degree[x]).apply(y);
                    if !fd.admits(gy, x, z) {
                        return Err(SkeletalError::Grading(format!("{z} ≤ {x}⊗{y} but not ≤ {gy}⊗{x}")));
                    }
                }
            }
            for f in action.functors() {
                if degree[f.apply(x)] != degree[x] {
                    return Err(SkeletalError::Grading(format!("action moves the degree of {x}")));
                }
            }
        }
        Ok(CrossedContext { assoc, action, degree, _t: PhantomData })
    }

    /// Ordinary braidings: trivial group, trivial grading.
    pub fn ordinary(assoc: &'a A) -> Self {
        let fd = assoc.fusion();
        let action = GActionData::trivial(&AbGroup::trivial(), fd);
        Self::new(assoc, action, vec![0; fd.len()]).expect("trivial grading")
    }

    pub fn fusion(&self) -> &FusionData {
        self.assoc.fusion()
    }

    pub fn action(&self) -> &GActionData {
        &self.action
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    fn f(&self, x: usize, y: usize, z: usize, w: usize, e: usize, f: usize) -> Sym<T> {
        Sym::constant(self.assoc.f(x, y, z, w, e, f))
    }

    fn fi(&self, x: usize, y: usize, z: usize, w: usize, f: usize, e: usize) -> Sym<T> {
        Sym::constant(self.assoc.f_inv(x, y, z, w, f, e))
    }

    fn braid_instances(
        &self,
        r: &dyn Fn(usize, usize, usize) -> Sym<T>,
        scope: &Scope,
        out: &mut Vec<(Instance, Sym<T>, Sym<T>)>,
    ) {
        let fd = self.fusion();
        let n = fd.len();
        let act = &self.action;
        let in_scope = |x: usize| match scope {
            Scope::Full => true,
            Scope::Relative(s) => s[x],
        };
        // HH1
        for x in (0..n).filter(|&x| in_scope(x)) {
            let g = self.degree[x];
            let tg = act.functor(g);
            for y in 0..n {
                let gy = tg.apply(y);
                for z in 0..n {
                    let gz = tg.apply(z);
                    for &e in fd.product(x, y) {
                        for &w in fd.product(e, z) {
                            for &k in fd.product(x, z) {
                                if !fd.admits(gy, k, w) {
                                    continue;
                                }
                                let mut lhs = Sym::zero();
                                for &f in fd.product(y, z) {
                                    if !fd.admits(x, f, w) {
                                        continue;
                                    }
                                    let t = self
                                        .f(x, y, z, w, e, f)
                                        .mul(&r(x, f, w))
                                        .mul_root(tg.j(y, z, f).inv())
                                        .mul(&self.f(gy, gz, x, w, tg.apply(f), k));
                                    lhs = lhs.add(&t);
                                }
                                let rhs = r(x, y, e).mul(&self.f(gy, x, z, w, e, k)).mul(&r(x, z, k));
                                out.push((Instance::HH1 { x, y, z, w, e, k }, lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        // HH2
        for x in (0..n).filter(|&x| in_scope(x)) {
            let g = self.degree[x];
            for y in (0..n).filter(|&y| in_scope(y)) {
                let h = self.degree[y];
                let gh = act.group().add_idx(g, h);
                for z in 0..n {
                    let hz = act.functor(h).apply(z);
                    let ghz = act.functor(gh).apply(z);
                    let t = act.t2(g, h, z);
                    for &f in fd.product(y, z) {
                        for &w in fd.product(x, f) {
                            for &k in fd.product(x, hz) {
                                if !fd.admits(k, y, w) {
                                    continue;
                                }
                                let mut lhs = Sym::zero();
                                for &e in fd.product(x, y) {
                                    if !fd.admits(e, z, w) {
                                        continue;
                                    }
                                    let term = self
                                        .fi(x, y, z, w, f, e)
                                        .mul(&r(e, z, w))
                                        .mul_root(t)
                                        .mul(&self.fi(ghz, x, y, w, e, k));
                                    lhs = lhs.add(&term);
                                }
                                let rhs = r(y, z, f).mul(&self.fi(x, hz, y, w, f, k)).mul(&r(x, hz, k));
                                out.push((Instance::HH2 { x, y, z, w, f, k }, lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        // compatibility with the action:
        // R^{gX,gZ}_{gW} = R^{XZ}_W · j^g_{X,Z;W} / j^g_{hZ,X;W} · t2(h,g)_Z / t2(g,h)_Z
        if *scope == Scope::Full {
            for g in 0..act.group().order() as usize {
                let tg = act.functor(g);
                for x in 0..n {
                    let h = self.degree[x];
                    let hz_of = |z: usize| act.functor(h).apply(z);
                    for z in 0..n {
                        for &w in fd.product(x, z) {
                            let lhs = r(tg.apply(x), tg.apply(z), tg.apply(w));
                            let factor = tg
                                .j(x, z, w)
                                .div(tg.j(hz_of(z), x, w))
                                .mul(act.t2(h, g, z))
                                .div(act.t2(g, h, z));
                            let rhs = r(x, z, w).mul_root(factor);
                            out.push((Instance::ActionCompat { g, x, z, w }, lhs, rhs));
                        }
                    }
                }
            }
        }
    }

    /// The twist axioms for a known braiding, plus the ribbon condition
    /// `θ_{X*} = θ_X · coev_X ev_X (F^{X*,X,X*}_{X*})^{-1}[1,1]`.
    fn twist_instances(
        &self,
        braiding: &BraidingTable,
        theta: &dyn Fn(usize) -> Sym<T>,
        ribbon: bool,
        out: &mut Vec<(Instance, Sym<T>, Sym<T>)>,
    ) {
        let fd = self.fusion();
        let n = fd.len();
        let act = &self.action;
        let r = |x: usize, y: usize, z: usize| braiding.get(x, y, z).map_or(Sym::zero(), Sym::root);
        out.push((Instance::Tw1, theta(0), Sym::root(Root::ONE)));
        for g in 0..act.group().order() as usize {
            for x in 0..n {
                out.push((Instance::Tw2 { g, x }, theta(act.functor(g).apply(x)), theta(x)));
            }
        }
        for x in 0..n {
            let a = self.degree[x];
            for y in 0..n {
                let ay = act.functor(a).apply(y);
                for &z in fd.product(x, y) {
                    let rhs = r(x, y, z).mul(&r(ay, x, z)).mul(&theta(x)).mul(&theta(y));
                    out.push((Instance::Tw3 { x, y, z }, theta(z), rhs));
                }
            }
        }
        if ribbon {
            for x in 0..n {
                let d = fd.dual(x);
                let snake = self.assoc.coev(x).mul(&self.assoc.ev(x)).mul(&self.assoc.f_inv(d, x, d, d, 0, 0));
                out.push((Instance::Ribbon { x }, theta(d), theta(x).mul_const(&snake)));
            }
        }
    }

    fn compile_all(
        &self,
        raw: Vec<(Instance, Sym<T>, Sym<T>)>,
    ) -> Result<(Vec<(Instance, Equation<T>)>, BTreeMap<&'static str, usize>), SkeletalError> {
        let field = self.assoc.field();
        let mut counts = BTreeMap::new();
        let mut eqs = Vec::with_capacity(raw.len());
        for (inst, l, r) in raw {
            if l.is_zero() && r.is_zero() {
                continue;
            }
            *counts.entry(inst.kind()).or_insert(0) += 1;
            let eq = compile(l.sub(&r), field)?;
            if !matches!(eq, Equation::Trivial) {
                eqs.push((inst, eq));
            }
        }
        Ok((eqs, counts))
    }

    fn report(&self, raw: Vec<(Instance, Sym<T>, Sym<T>)>) -> Result<VerifyReport, SkeletalError> {
        let (eqs, checked) = self.compile_all(raw)?;
        let field = self.assoc.field();
        for (inst, eq) in &eqs {
            if !eq.holds(&[], field)? {
                return Ok(VerifyReport { holds: false, checked, failure: Some(*inst) });
            }
        }
        Ok(VerifyReport { holds: true, checked, failure: None })
    }

    /// Exhaustive check of every hexagon instance in scope (and, for the
    /// full scope, compatibility with the action).
    pub fn verify_braiding(&self, table: &BraidingTable, scope: &Scope) -> Result<VerifyReport, SkeletalError> {
        let r = |x: usize, y: usize, z: usize| table.get(x, y, z).map_or(Sym::zero(), Sym::root);
        let mut raw = Vec::new();
        self.braid_instances(&r, scope, &mut raw);
        self.report(raw)
    }

    /// Tw1–Tw3, and the ribbon condition if requested.
    pub fn verify_twist(&self, braiding: &BraidingTable, twist: &TwistTable, ribbon: bool) -> Result<VerifyReport, SkeletalError> {
        let theta = |x: usize| Sym::root(twist.values[x]);
        let mut raw = Vec::new();
        self.twist_instances(braiding, &theta, ribbon, &mut raw);
        self.report(raw)
    }

    /// Every failing twist instance (not just the first).
    pub fn twist_failures(&self, braiding: &BraidingTable, twist: &TwistTable, ribbon: bool) -> Result<Vec<Instance>, SkeletalError> {
        let theta = |x: usize| Sym::root(twist.values[x]);
        let mut raw = Vec::new();
        self.twist_instances(braiding, &theta, ribbon, &mut raw);
        let (eqs, _) = self.compile_all(raw)?;
        let field = self.assoc.field();
        let mut out = Vec::new();
        for (inst, eq) in &eqs {
            if !eq.holds(&[], field)? {
                out.push(*inst);
            }
        }
        Ok(out)
    }

    /// All braidings whose cells are given by `cells` (dense `(x·n+y)·n+z`),
    /// unknown cells ranging over `candidates` unless forced.
    pub fn solve_braidings(
        &self,
        cells: &[Cell],
        candidates: &[Root],
        scope: &Scope,
    ) -> Result<(Vec<BraidingTable>, SolveStats), SkeletalError> {
        let n = self.fusion().len();
        let count = cells.iter().filter(|c| matches!(c, Cell::Unknown(_))).count();
        let r = |x: usize, y: usize, z: usize| match cells[(x * n + y) * n + z] {
            Cell::Absent => Sym::zero(),
            Cell::Known(v) => Sym::root(v),
            Cell::Unknown(u) => Sym::var(u),
        };
        let mut raw = Vec::new();
        self.braid_instances(&r, scope, &mut raw);
        let (eqs, _) = self.compile_all(raw)?;
        let (sols, stats) = solve(count, &eqs, candidates, self.assoc.field())?;
        let mut tables: Vec<BraidingTable> = sols
            .into_iter()
            .map(|vals| BraidingTable {
                n,
                entries: cells
                    .iter()
                    .map(|c| match *c {
                        Cell::Absent => None,
                        Cell::Known(v) => Some(v),
                        Cell::Unknown(u) => Some(vals[u as usize]),
                    })
                    .collect(),
            })
            .collect();
        tables.sort();
        Ok((tables, stats))
    }

    /// All twists (ribbons if `ribbon`) for a known braiding.
    pub fn solve_twists(
        &self,
        braiding: &BraidingTable,
        order: &[usize],
        candidates: &[Root],
        ribbon: bool,
    ) -> Result<(Vec<TwistTable>, SolveStats), SkeletalError> {
        let n = self.fusion().len();
        let mut id = vec![0u32; n];
        for (k, &x) in order.iter().enumerate() {
            id[x] = k as u32;
        }
        let theta = |x: usize| Sym::var(id[x]);
        let mut raw = Vec::new();
        self.twist_instances(braiding, &theta, ribbon, &mut raw);
        let (eqs, _) = self.compile_all(raw)?;
        let (sols, stats) = solve(n, &eqs, candidates, self.assoc.field())?;
        let mut out: Vec<TwistTable> =
            sols.into_iter().map(|v| TwistTable { values: (0..n).map(|x| v[id[x] as usize]).collect() }).collect();
        out.sort();
        Ok((out, stats))
    }
}
