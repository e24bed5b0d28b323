//! Tambara–Yamagami categories `TY(A, χ, τ)`.
//!
//! Labels are the elements of `A` (by index) followed by `m`. Nontrivial
//! associator components:
//!
//! * `F^{a m b}_m = χ(a,b)`
//! * `F^{m a m}_b = χ(a,b)`
//! * `F^{m m m}_m[a,b] = τ χ(a,b)^{-1}`, with inverse `τ χ(b,a)`
//!
//! and `ev_m = τ^{-1}`. The group `ℤ/2` acts through `T(a) = -a`, `T(m) = m`
//! with `A` in degree 0 and `m` in degree 1.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbGroup, GroupError, Hom};
use crate::cyclotomic::{sqrt_of_natural, square_roots_unitary, Coeff, Cyc, CycError, CycField, Root, RootSum};
use crate::quadforms::{aut_preserving, orbits, quadratic_forms_with, Bicharacter, FormError, QuadraticForm};
use crate::skeletal::{
    Associator, BraidingTable, Cell, CrossedContext, FusionData, GActionData, IdAutos, Instance, MonFunctor, NatIso,
    Scope, SkeletalError, SolveStats, TwistTable, VerifyReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TyError {
    #[error("χ is not symmetric: χ({a},{b}) ≠ χ({b},{a})")]
    Asymmetric { a: usize, b: usize },
    #[error("χ is degenerate: {a} pairs trivially with every element")]
    Degenerate { a: usize },
    #[error("χ is defined on a different group")]
    GroupMismatch,
    #[error("τ sign must be +1 or -1")]
    BadTauSign,
    #[error("τ·Σq = {0} is not a root of unity of order ≤ 32")]
    NoAlpha(String),
    #[error("brute-force search limited to |A| ≤ {0}")]
    TooLarge(u64),
    #[error(transparent)]
    Skeletal(#[from] SkeletalError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// Largest `|A|` for the brute-force solvers.
pub const BRUTE_FORCE_LIMIT: u64 = 8;

/// Structure constants of `TY(A, χ, τ)`.
#[derive(Clone, Debug)]
pub struct TyData<T: Coeff> {
    group: AbGroup,
    chi: Bicharacter,
    tau_sign: i8,
    tau: Cyc<T>,
    tau_rs: RootSum<T>,
    tau_inv_rs: RootSum<T>,
    fd: FusionData,
    field: Arc<CycField>,
    /// `F^{mmm}_m[a,b]` negated (test mutations)
    flipped: Option<(usize, usize)>,
}

/// JSON description of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TyInstance {
    pub chi: Bicharacter,
    pub tau_sign: i8,
}

/// `TY(A, χ, τ)` with `τ = tau_sign / √|A|`.
pub fn make_ty<T: Coeff>(chi: &Bicharacter, tau_sign: i8) -> Result<TyData<T>, TyError> {
    if tau_sign != 1 && tau_sign != -1 {
        return Err(TyError::BadTauSign);
    }
    match chi.defect_witness() {
        Some((a, Some(b))) => return Err(TyError::Asymmetric { a, b }),
        Some((a, None)) => return Err(TyError::Degenerate { a }),
        None => {}
    }
    let group = chi.group().clone();
    let n = group.order();
    let field = CycField::new(CycField::conductor_for_group(n, group.exponent()))?;
    let root_n = sqrt_of_natural::<T>(&field, n)?;
    let tau = root_n.inv()?.scale(&T::from_i64(tau_sign as i64).unwrap());
    let tau_inv = tau.inv()?;
    Ok(TyData {
        fd: FusionData::tambara_yamagami(&group),
        tau_rs: RootSum::from_cyc(&tau),
        tau_inv_rs: RootSum::from_cyc(&tau_inv),
        tau,
        group,
        chi: chi.clone(),
        tau_sign,
        field,
        flipped: None,
    })
}

impl<T: Coeff> TyData<T> {
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi
    }

    pub fn tau(&self) -> &Cyc<T> {
        &self.tau
    }

    pub fn tau_sign(&self) -> i8 {
        self.tau_sign
    }

    pub fn fusion_data(&self) -> &FusionData {
        &self.fd
    }

    pub fn cyc_field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Label of the non-invertible simple.
    pub fn m(&self) -> usize {
        self.group.order() as usize
    }

    /// `deg a = 0`, `deg m = 1`.
    pub fn degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.fd.len()];
        d[self.m()] = 1;
        d
    }

    /// Copy with `F^{mmm}_m[a,b]` negated.
    pub fn with_flipped_entry(&self, a: usize, b: usize) -> Self {
        TyData { flipped: Some((a, b)), ..self.clone() }
    }

    pub fn instance(&self) -> TyInstance {
        TyInstance { chi: self.chi.clone(), tau_sign: self.tau_sign }
    }

    /// Every element of `μ_N` for the field conductor `N`.
    pub fn candidates(&self) -> Vec<Root> {
        let c = self.field.conductor();
        (0..c).map(|k| Root::new(k as i64, c)).collect()
    }

    /// `τ · Σ_a q(a)` as a root of unity (Gauss–Milgram).
    pub fn tau_gauss(&self, q: &QuadraticForm) -> Result<Root, TyError> {
        let z = self.tau.try_mul(&q.gauss_sum(&self.field)?)?;
        Root::from_cyc(&z).map_err(|_| TyError::NoAlpha(z.to_string()))
    }
}

impl<T: Coeff> Associator<T> for TyData<T> {
    fn fusion(&self) -> &FusionData {
        &self.fd
    }

    fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    fn f(&self, x: usize, y: usize, z: usize, w: usize, e: usize, f: usize) -> RootSum<T> {
        let fd = &self.fd;
        if !(fd.admits(x, y, e) && fd.admits(e, z, w) && fd.admits(y, z, f) && fd.admits(x, f, w)) {
            return RootSum::zero();
        }
        let m = self.m();
        match (x == m, y == m, z == m) {
            (false, true, false) => RootSum::root(self.chi.eval(x, z)),
            (true, false, true) => RootSum::root(self.chi.eval(y, w)),
            (true, true, true) => {
                let v = self.tau_rs.mul_root(self.chi.eval(e, f).inv());
                if self.flipped == Some((e, f)) {
                    v.neg()
                } else {
                    v
                }
            }
            _ => RootSum::one(),
        }
    }

    fn f_inv(&self, x: usize, y: usize, z: usize, w: usize, f: usize, e: usize) -> RootSum<T> {
        let fd = &self.fd;
        if !(fd.admits(x, y, e) && fd.admits(e, z, w) && fd.admits(y, z, f) && fd.admits(x, f, w)) {
            return RootSum::zero();
        }
        let m = self.m();
        match (x == m, y == m, z == m) {
            (false, true, false) => RootSum::root(self.chi.eval(x, z).inv()),
            (true, false, true) => RootSum::root(self.chi.eval(y, w).inv()),
            (true, true, true) => self.tau_rs.mul_root(self.chi.eval(f, e)),
            _ => RootSum::one(),
        }
    }

    fn ev(&self, x: usize) -> RootSum<T> {
        if x == self.m() {
            self.tau_inv_rs.clone()
        } else {
            RootSum::one()
        }
    }
}

// ---------------------------------------------------------------------------
// Functors and actions

/// The strict functor `F_f`: `a ↦ f(a)`, `m ↦ m`, trivial tensorator.
pub fn f_functor<T: Coeff>(ty: &TyData<T>, f: &Hom) -> Result<MonFunctor, TyError> {
    let m = ty.m();
    let perm = (0..=m).map(|x| if x == m { m } else { f.apply_idx(x) }).collect();
    Ok(MonFunctor::new(&ty.fd, perm, |_, _, _| Root::ONE)?)
}

fn negation(group: &AbGroup) -> Hom {
    let images = (0..group.rank()).map(|i| group.neg(&group.generator(i)).expect("generator")).collect();
    Hom::new(group.clone(), group.clone(), images)
}

/// The two `ℤ/2`-actions with `T(1)(a) = -a`: the strict one, and the one
/// with `t2(1,1)_m = -1`.
pub fn z2_actions<T: Coeff>(ty: &TyData<T>) -> Result<[GActionData; 2], TyError> {
    let z2 = AbGroup::cyclic(2);
    let n = ty.fd.len();
    let functors = vec![MonFunctor::identity(&ty.fd), f_functor(ty, &negation(&ty.group))?];
    let strict = GActionData::new(&z2, functors, vec![NatIso::identity(n); 4])?;
    let twisted = strict.with_t2_scaled(1, 1, ty.m(), Root::MINUS_ONE);
    Ok([strict, twisted])
}

/// Two actions with the same functors are equivalent iff some
/// `u: G → Aut⊗(Id)` (with `u(0) = 1`) satisfies
/// `t2'(g,h)_X / t2(g,h)_X = u_g(T_h X) u_h(X) / u_{gh}(X)`.
pub fn actions_equivalent(fd: &FusionData, a: &GActionData, b: &GActionData) -> Result<bool, TyError> {
    if a.functors() != b.functors() || a.group() != b.group() {
        return Ok(false);
    }
    let autos = IdAutos::new(fd)?;
    let gn = a.group().order() as usize;
    let k = autos.functions().len();
    let mut pick = vec![0usize; gn];
    loop {
        let u = |g: usize, x: usize| autos.function(pick[g])[x];
        let ok = (0..gn).all(|g| {
            (0..gn).all(|h| {
                let gh = a.group().add_idx(g, h);
                (0..fd.len()).all(|x| {
                    b.t2(g, h, x).div(a.t2(g, h, x)) == u(g, a.functor(h).apply(x)).mul(u(h, x)).div(u(gh, x))
                })
            })
        });
        if ok {
            return Ok(true);
        }
        let mut i = 1;
        loop {
            if i >= gn {
                return Ok(false);
            }
            pick[i] += 1;
            if pick[i] < k {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// The crossed context for one of the `ℤ/2`-actions.
pub fn context<T: Coeff>(ty: &TyData<T>, action: GActionData) -> Result<CrossedContext<'_, T, TyData<T>>, TyError> {
    Ok(CrossedContext::new(ty, action, ty.degree())?)
}

fn strict_context<T: Coeff>(ty: &TyData<T>) -> Result<CrossedContext<'_, T, TyData<T>>, TyError> {
    let [strict, _] = z2_actions(ty)?;
    context(ty, strict)
}

// ---------------------------------------------------------------------------
// Relative and crossed braidings

/// `c_{a,b} = χ(a,b)`, `c_{a,m} = q(a)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RelBraiding {
    pub q: QuadraticForm,
    pub table: BraidingTable,
}

fn relative_scope<T: Coeff>(ty: &TyData<T>) -> Scope {
    let m = ty.m();
    Scope::Relative((0..=m).map(|x| x != m).collect())
}

/// One relative braiding per quadratic form compatible with `χ`, each
/// verified against both hexagons.
pub fn relative_braidings<T: Coeff>(ty: &TyData<T>) -> Result<Vec<RelBraiding>, TyError> {
    let ctx = strict_context(ty)?;
    let scope = relative_scope(ty);
    let m = ty.m();
    let mut out = Vec::new();
    for q in quadratic_forms_with(&ty.chi) {
        let table = BraidingTable::from_fn_rows(&ty.fd, |x| x != m, |x, y, _| {
            if y == m {
                q.value(x)
            } else {
                ty.chi.eval(x, y)
            }
        });
        let report = ctx.verify_braiding(&table, &scope)?;
        if !report.holds {
            return Err(SkeletalError::InvalidAction(format!("relative braiding fails at {:?}", report.failure)).into());
        }
        out.push(RelBraiding { q, table });
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

/// Which cells of a braiding table are unknown, in solver order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Block {
    AB,
    AM,
    MA,
    MM,
}

fn cells_for<T: Coeff>(ty: &TyData<T>, blocks: &[Block]) -> Vec<Cell> {
    let n = ty.fd.len();
    let m = ty.m();
    let mut cells = vec![Cell::Absent; n * n * n];
    let mut next = 0u32;
    for block in blocks {
        for x in 0..n {
            for y in 0..n {
                let b = match (x == m, y == m) {
                    (false, false) => Block::AB,
                    (false, true) => Block::AM,
                    (true, false) => Block::MA,
                    (true, true) => Block::MM,
                };
                if b != *block {
                    continue;
                }
                for &z in ty.fd.product(x, y) {
                    cells[(x * n + y) * n + z] = Cell::Unknown(next);
                    next += 1;
                }
            }
        }
    }
    cells
}

fn check_size<T: Coeff>(ty: &TyData<T>) -> Result<(), TyError> {
    if ty.group.order() > BRUTE_FORCE_LIMIT {
        return Err(TyError::TooLarge(BRUTE_FORCE_LIMIT));
    }
    Ok(())
}

/// Relative braidings by exhaustive search over `μ_N`-valued cells.
pub fn brute_force_relative_braidings<T: Coeff>(ty: &TyData<T>) -> Result<(Vec<BraidingTable>, SolveStats), TyError> {
    check_size(ty)?;
    let ctx = strict_context(ty)?;
    let cells = cells_for(ty, &[Block::AM, Block::AB]);
    Ok(ctx.solve_braidings(&cells, &ty.candidates(), &relative_scope(ty))?)
}

/// The `ℤ/2`-crossed braiding attached to `(q, α)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CrossedBraiding {
    pub q: QuadraticForm,
    pub alpha: Root,
    pub table: BraidingTable,
}

/// `c_{a,b} = χ(a,b)`, `c_{a,m} = c_{m,a} = q(a)`, `c_{m,m}|_a = α q(a)^{-1}`.
pub fn crossed_table<T: Coeff>(ty: &TyData<T>, q: &QuadraticForm, alpha: Root) -> BraidingTable {
    let m = ty.m();
    BraidingTable::from_fn(&ty.fd, |x, y, z| match (x == m, y == m) {
        (false, false) => ty.chi.eval(x, y),
        (false, true) => q.value(x),
        (true, false) => q.value(y),
        (true, true) => alpha.div(q.value(z)),
    })
}

/// The square roots of `τ Σ q`.
pub fn alphas<T: Coeff>(ty: &TyData<T>, q: &QuadraticForm) -> Result<Vec<Root>, TyError> {
    let z = Cyc::<T>::from_root(&ty.field, ty.tau_gauss(q)?)?;
    let roots = square_roots_unitary(&z, 32)?;
    let mut out = roots.iter().map(Root::from_cyc).collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}

/// All crossed braidings for the strict action, from the closed formulas;
/// each is verified exhaustively.
pub fn crossed_braidings<T: Coeff>(ty: &TyData<T>) -> Result<Vec<CrossedBraiding>, TyError> {
    let ctx = strict_context(ty)?;
    let mut out = Vec::new();
    for q in quadratic_forms_with(&ty.chi) {
        for alpha in alphas(ty, &q)? {
            let table = crossed_table(ty, &q, alpha);
            let report = ctx.verify_braiding(&table, &Scope::Full)?;
            if !report.holds {
                return Err(SkeletalError::InvalidAction(format!("crossed braiding fails at {:?}", report.failure)).into());
            }
            out.push(CrossedBraiding { q: q.clone(), alpha, table });
        }
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

/// HH1, HH2 and compatibility with the action, over every triple.
pub fn verify_crossed_braiding<T: Coeff>(
    ty: &TyData<T>,
    action: &GActionData,
    table: &BraidingTable,
) -> Result<VerifyReport, TyError> {
    Ok(context(ty, action.clone())?.verify_braiding(table, &Scope::Full)?)
}

/// Crossed braidings by exhaustive search (`|A| ≤ 8`).
pub fn brute_force_crossed_braidings<T: Coeff>(
    ty: &TyData<T>,
    action: &GActionData,
) -> Result<(Vec<BraidingTable>, SolveStats), TyError> {
    check_size(ty)?;
    let ctx = context(ty, action.clone())?;
    let cells = cells_for(ty, &[Block::AM, Block::AB, Block::MA, Block::MM]);
    Ok(ctx.solve_braidings(&cells, &ty.candidates(), &Scope::Full)?)
}

/// Ordinary braidings: nonempty only for elementary abelian 2-groups, where
/// the strict action is trivial. Each result is re-verified against the
/// ordinary hexagons.
pub fn braidings<T: Coeff>(ty: &TyData<T>) -> Result<Vec<CrossedBraiding>, TyError> {
    if !ty.group.is_elementary_2() {
        return Ok(Vec::new());
    }
    let ordinary = CrossedContext::ordinary(ty);
    let out = crossed_braidings(ty)?;
    for cb in &out {
        let report = ordinary.verify_braiding(&cb.table, &Scope::Full)?;
        if !report.holds {
            return Err(SkeletalError::InvalidAction(format!("hexagon fails at {:?}", report.failure)).into());
        }
    }
    Ok(out)
}

/// Ordinary braidings by exhaustive search over the plain hexagons.
pub fn brute_force_braidings<T: Coeff>(ty: &TyData<T>) -> Result<(Vec<BraidingTable>, SolveStats), TyError> {
    check_size(ty)?;
    let ordinary = CrossedContext::ordinary(ty);
    let cells = cells_for(ty, &[Block::AM, Block::AB, Block::MA, Block::MM]);
    Ok(ordinary.solve_braidings(&cells, &ty.candidates(), &Scope::Full)?)
}

// ---------------------------------------------------------------------------
// Twists

/// `θ_a = q(a)^{-2}`, `θ_m = β` with `β^{-2} = τ Σ q`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Twist {
    pub beta: Root,
    pub theta: TwistTable,
}

/// Both twists of a crossed braiding, each verified against Tw1–Tw3 and the
/// ribbon condition.
pub fn twists<T: Coeff>(ty: &TyData<T>, cb: &CrossedBraiding) -> Result<Vec<Twist>, TyError> {
    let ctx = strict_context(ty)?;
    let s = ty.tau_gauss(&cb.q)?;
    let mut out = Vec::new();
    for beta in s.inv().square_roots() {
        let mut values: Vec<Root> = cb.q.values().iter().map(|v| v.pow(-2)).collect();
        values.push(beta);
        let theta = TwistTable { values };
        let report = ctx.verify_twist(&cb.table, &theta, true)?;
        if !report.holds {
            return Err(SkeletalError::InvalidAction(format!("twist fails at {:?}", report.failure)).into());
        }
        out.push(Twist { beta, theta });
    }
    out.sort_by(|a, b| a.theta.cmp(&b.theta));
    Ok(out)
}

/// Ribbon twists by exhaustive search over `μ_N`.
pub fn brute_force_twists<T: Coeff>(ty: &TyData<T>, cb: &CrossedBraiding) -> Result<(Vec<TwistTable>, SolveStats), TyError> {
    check_size(ty)?;
    let ctx = strict_context(ty)?;
    let order: Vec<usize> = (0..ty.fd.len()).collect();
    Ok(ctx.solve_twists(&cb.table, &order, &ty.candidates(), true)?)
}

/// Twist verification transcript (all failing instances).
pub fn twist_failures<T: Coeff>(ty: &TyData<T>, cb: &CrossedBraiding, theta: &TwistTable) -> Result<Vec<Instance>, TyError> {
    Ok(strict_context(ty)?.twist_failures(&cb.table, theta, true)?)
}

// ---------------------------------------------------------------------------
// Equivalence

/// Partition of crossed braidings into equivalence classes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classes {
    /// classes from the invariant (orbit of `q` under `Aut(A,χ)`, `α`)
    pub by_invariant: Vec<Vec<usize>>,
    /// classes from explicit transport along the functors `F_f`
    pub by_transport: Vec<Vec<usize>>,
}

impl Classes {
    pub fn agree(&self) -> bool {
        self.by_invariant == self.by_transport
    }
}

/// Classes of crossed braidings over the same `TY` data, both by the orbit
/// invariant and by transporting tables along the monoidal functors `F_f`.
pub fn equivalence_classes<T: Coeff>(ty: &TyData<T>, items: &[CrossedBraiding]) -> Result<Classes, TyError> {
    let auts = aut_preserving(&ty.chi)?;
    let mut forms: Vec<QuadraticForm> = Vec::new();
    for it in items {
        if !forms.contains(&it.q) {
            forms.push(it.q.clone());
        }
    }
    let orbit_of = {
        let orbs = orbits(&forms, &auts);
        move |q: &QuadraticForm| {
            let i = forms.iter().position(|f| f == q).expect("listed");
            orbs.iter().position(|o| o.contains(&i)).expect("covered")
        }
    };
    let by_invariant = partition(items.len(), |i, j| {
        orbit_of(&items[i].q) == orbit_of(&items[j].q) && items[i].alpha == items[j].alpha
    });

    let mut perms = Vec::with_capacity(auts.len());
    for f in &auts {
        let func = f_functor(ty, f)?;
        if let Some(w) = func.is_monoidal(ty)? {
            return Err(SkeletalError::InvalidAction(format!("F_f is not monoidal at {w:?}")).into());
        }
        perms.push(func.perm().to_vec());
    }
    let by_transport =
        partition(items.len(), |i, j| perms.iter().any(|p| items[i].table.transport(p) == items[j].table));
    Ok(Classes { by_invariant, by_transport })
}

fn partition(n: usize, related: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if label[i] != usize::MAX {
            continue;
        }
        label[i] = out.len();
        let mut members = vec![i];
        for j in i + 1..n {
            if label[j] == usize::MAX && related(i, j) {
                label[j] = out.len();
                members.push(j);
            }
        }
        out.push(members);
    }
    out
}

// ---------------------------------------------------------------------------
// Ising

/// Values of `α` as displayed for the Ising example, for `q(ψ) = i` and
/// `q(ψ) = -i` respectively: `±e^{2πi/8}` and `±e^{3πi/8}`.
pub fn displayed_ising_alphas() -> [(Root, [Root; 2]); 2] {
    [
        (Root::new(1, 4), [Root::new(1, 8), Root::new(5, 8)]),
        (Root::new(3, 4), [Root::new(3, 16), Root::new(11, 16)]),
    ]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsingRibbon {
    pub beta: Root,
    pub theta_psi: Root,
    pub verified: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsingBraiding {
    pub q_psi: Root,
    pub alpha: Root,
    /// `τ Σ q`
    pub alpha_squared: Root,
    pub hexagons: bool,
    pub ribbons: Vec<IsingRibbon>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsingCategory {
    pub tau_sign: i8,
    pub pentagon: bool,
    pub braidings: Vec<IsingBraiding>,
}

/// Whether the displayed `α` values square to `τ Σ q` for `τ = +1/√2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AlphaCheck {
    pub q_psi: Root,
    pub displayed: [Root; 2],
    pub displayed_squared: Root,
    pub required_square: Root,
    pub consistent: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Totals {
    pub fusion: usize,
    pub braided: usize,
    pub ribbon: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsingReport {
    pub totals: Totals,
    pub categories: Vec<IsingCategory>,
    pub displayed_alpha: Vec<AlphaCheck>,
    /// some displayed `α` disagrees with `α² = τ Σ q`
    pub alpha_discrepancy: bool,
}

/// Both Ising categories with all braidings and ribbons, every verification
/// bit recorded.
pub fn ising_report() -> Result<IsingReport, TyError> {
    let group = AbGroup::cyclic(2);
    let chi = Bicharacter::new(&group, vec![vec![Root::MINUS_ONE]])?;
    let mut categories = Vec::new();
    let mut totals = Totals { fusion: 0, braided: 0, ribbon: 0 };
    let mut displayed_alpha = Vec::new();
    for sign in [1i8, -1] {
        let ty = make_ty::<BigRational>(&chi, sign)?;
        let pentagon = crate::skeletal::pentagon_check(&ty)?.holds;
        if pentagon {
            totals.fusion += 1;
        }
        let ordinary = CrossedContext::ordinary(&ty);
        let mut list = Vec::new();
        for cb in braidings(&ty)? {
            let hexagons = ordinary.verify_braiding(&cb.table, &Scope::Full)?.holds;
            let mut ribbons = Vec::new();
            for tw in twists(&ty, &cb)? {
                let verified = twist_failures(&ty, &cb, &tw.theta)?.is_empty();
                ribbons.push(IsingRibbon { beta: tw.beta, theta_psi: tw.theta.values[1], verified });
            }
            totals.braided += 1;
            totals.ribbon += ribbons.len();
            list.push(IsingBraiding {
                q_psi: cb.q.value(1),
                alpha: cb.alpha,
                alpha_squared: ty.tau_gauss(&cb.q)?,
                hexagons,
                ribbons,
            });
        }
        if sign == 1 {
            for (q_psi, displayed) in displayed_ising_alphas() {
                let q = QuadraticForm::new(&group, vec![Root::ONE, q_psi])?;
                let required_square = ty.tau_gauss(&q)?;
                let displayed_squared = displayed[0].pow(2);
                displayed_alpha.push(AlphaCheck {
                    q_psi,
                    displayed,
                    displayed_squared,
                    required_square,
                    consistent: displayed.iter().all(|d| d.pow(2) == required_square),
                });
            }
        }
        categories.push(IsingCategory { tau_sign: sign, pentagon, braidings: list });
    }
    let alpha_discrepancy = displayed_alpha.iter().any(|c| !c.consistent);
    Ok(IsingReport { totals, categories, displayed_alpha, alpha_discrepancy })
}
