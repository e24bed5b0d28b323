//! Skeletal multiplicity-free monoidal data.
//!
//! Conventions used throughout:
//! * `F^{XYZ}_W[E,F]` is the associator component from `(X⊗Y)_E ⊗ Z` to
//!   `X ⊗ (Y⊗Z)_F` inside the `W`-isotypic part.
//! * A monoidal functor's tensorator `j_{X,Y;Z}` is the component of
//!   `J: T(X)⊗T(Y) → T(X⊗Y)` on the summand `Z`.
//! * For an action, `t2(g,h)` is the natural isomorphism `T(gh) → T(g)∘T(h)`;
//!   the obstruction uses its inverse.

mod braid;

pub use braid::{
    BraidingTable, Cell, CrossedContext, Instance, Scope, SolveStats, TwistTable, VerifyReport,
};

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{AbGroup, GroupError};
use crate::cohomology::{Cochain, CohomologyError};
use crate::cyclotomic::{Coeff, CycError, CycField, Root, RootSum};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletalError {
    #[error("fusion rules: {0}")]
    BadFusion(String),
    #[error("label {0} out of range")]
    BadLabel(usize),
    #[error("permutation does not preserve the fusion rules")]
    PermNotFusionPreserving,
    #[error("functors or isomorphisms live over different fusion data")]
    BaseMismatch,
    #[error("action not pointwise trivializable: T({g}) moves simple objects")]
    NotPointwiseTrivializable { g: usize },
    #[error("choice for g = {g} is not a monoidal isomorphism T(g) → Id (fails at {x} ⊗ {y} ⊃ {z})")]
    ChoiceNotMonoidal { g: usize, x: usize, y: usize, z: usize },
    #[error("action data invalid: {0}")]
    InvalidAction(String),
    #[error("grading incompatible with fusion or action: {0}")]
    Grading(String),
    #[error("component {0} is not in Aut⊗(Id)")]
    NotInAutId(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] CycError),
}

// ---------------------------------------------------------------------------
// Fusion rules

/// Simple labels `0..n` (label 0 is the unit) and multiplicity-free products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionData {
    labels: Vec<String>,
    products: Vec<Vec<Vec<usize>>>,
    admits: Vec<bool>,
    duals: Vec<usize>,
}

impl FusionData {
    pub fn new(labels: Vec<String>, mut products: Vec<Vec<Vec<usize>>>) -> Result<Self, SkeletalError> {
        let n = labels.len();
        if n == 0 || products.len() != n || products.iter().any(|r| r.len() != n) {
            return Err(SkeletalError::BadFusion("product table must be n×n with n ≥ 1".into()));
        }
        let mut admits = vec![false; n * n * n];
        for x in 0..n {
            for y in 0..n {
                let p = &mut products[x][y];
                p.sort_unstable();
                if p.windows(2).any(|w| w[0] == w[1]) {
                    return Err(SkeletalError::BadFusion(format!("{x}⊗{y} has a repeated summand")));
                }
                if p.is_empty() || p.iter().any(|z| *z >= n) {
                    return Err(SkeletalError::BadFusion(format!("{x}⊗{y} has an invalid summand list")));
                }
                for z in p.iter() {
                    admits[(x * n + y) * n + z] = true;
                }
            }
        }
        for x in 0..n {
            if products[0][x] != [x] || products[x][0] != [x] {
                return Err(SkeletalError::BadFusion(format!("label 0 is not a unit for {x}")));
            }
        }
        let mut duals = vec![usize::MAX; n];
        for x in 0..n {
            let ds: Vec<usize> = (0..n).filter(|&y| admits[(x * n + y) * n]).collect();
            if ds.len() != 1 || !admits[(ds[0] * n + x) * n] {
                return Err(SkeletalError::BadFusion(format!("{x} has no unique two-sided dual")));
            }
            duals[x] = ds[0];
        }
        let fd = FusionData { labels, products, admits, duals };
        // associativity of the fusion ring: Σ_E N_{XY}^E N_{EZ}^W = Σ_F N_{YZ}^F N_{XF}^W
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let l = fd.product(x, y).iter().filter(|&&e| fd.admits(e, z, w)).count();
                        let r = fd.product(y, z).iter().filter(|&&f| fd.admits(x, f, w)).count();
                        if l != r {
                            return Err(SkeletalError::BadFusion(format!("({x}{y}){z} and {x}({y}{z}) differ at {w}")));
                        }
                    }
                }
            }
        }
        Ok(fd)
    }

    /// `Vec_A`: one simple per element, `a ⊗ b = a + b`.
    pub fn pointed(group: &AbGroup) -> Self {
        let n = group.order() as usize;
        let labels = (0..n).map(|i| elem_label(group, i)).collect();
        let products = (0..n).map(|a| (0..n).map(|b| vec![group.add_idx(a, b)]).collect()).collect();
        Self::new(labels, products).expect("pointed fusion rules")
    }

    /// Tambara–Yamagami rules on `A ∪ {m}`, with `m` the last label.
    pub fn tambara_yamagami(group: &AbGroup) -> Self {
        let k = group.order() as usize;
        let m = k;
        let mut labels: Vec<String> = (0..k).map(|i| elem_label(group, i)).collect();
        labels.push("m".into());
        let mut products = vec![vec![Vec::new(); k + 1]; k + 1];
        for a in 0..k {
            for b in 0..k {
                products[a][b] = vec![group.add_idx(a, b)];
            }
            products[a][m] = vec![m];
            products[m][a] = vec![m];
        }
        products[m][m] = (0..k).collect();
        Self::new(labels, products).expect("TY fusion rules")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, x: usize, y: usize) -> &[usize] {
        &self.products[x][y]
    }

    /// `z ≤ x ⊗ y`.
    #[inline]
    pub fn admits(&self, x: usize, y: usize, z: usize) -> bool {
        let n = self.labels.len();
        self.admits[(x * n + y) * n + z]
    }

    pub fn dual(&self, x: usize) -> usize {
        self.duals[x]
    }

    /// A bijection of labels compatible with fusion.
    pub fn is_fusion_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n || perm[0] != 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.admits(x, y, z) == self.admits(perm[x], perm[y], perm[z]))))
    }
}

fn elem_label(group: &AbGroup, i: usize) -> String {
    let c = group.elem_at(i).coords;
    match c.len() {
        0 => "e".into(),
        1 => c[0].to_string(),
        _ => format!("({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    }
}

// ---------------------------------------------------------------------------
// Associators

/// Scalar structure constants of a skeletal monoidal category.
///
/// Both `f` and `f_inv` return zero on inadmissible index sets.
pub trait Associator<T: Coeff> {
    fn fusion(&self) -> &FusionData;
    fn field(&self) -> &Arc<CycField>;
    /// `F^{xyz}_w[e,f]`.
    fn f(&self, x: usize, y: usize, z: usize, w: usize, e: usize, f: usize) -> RootSum<T>;
    /// `(F^{xyz}_w)^{-1}[f,e]`, from `x ⊗ (y⊗z)_f` back to `(x⊗y)_e ⊗ z`.
    fn f_inv(&self, x: usize, y: usize, z: usize, w: usize, f: usize, e: usize) -> RootSum<T>;
    /// Evaluation `x* ⊗ x → 1` as a scalar.
    fn ev(&self, _x: usize) -> RootSum<T> {
        RootSum::one()
    }
    /// Coevaluation `1 → x ⊗ x*` as a scalar.
    fn coev(&self, _x: usize) -> RootSum<T> {
        RootSum::one()
    }
}

/// A failing pentagon component, indexed as `((XY)_E Z)_G W → X(Y(ZW)_L)_K` in `U`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PentagonFailure {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    pub u: usize,
    pub e: usize,
    pub g: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PentagonReport {
    pub holds: bool,
    /// number of scalar identities evaluated
    pub checked: usize,
    pub failures: Vec<PentagonFailure>,
}

/// `F^{EZW}_U[G,L] F^{XYL}_U[E,K] = Σ_H F^{XYZ}_G[E,H] F^{XHW}_U[G,K] F^{YZW}_K[H,L]`
/// for every admissible index set.
pub fn pentagon_check<T: Coeff, A: Associator<T>>(a: &A) -> Result<PentagonReport, SkeletalError> {
    let fd = a.fusion();
    let field = a.field();
    let n = fd.len();
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for &e in fd.product(x, y) {
                        for &g in fd.product(e, z) {
                            for &u in fd.product(g, w) {
                                for &l in fd.product(z, w) {
                                    for &k in fd.product(y, l) {
                                        if !fd.admits(x, k, u) {
                                            continue;
                                        }
                                        let lhs = a.f(e, z, w, u, g, l).mul(&a.f(x, y, l, u, e, k));
                                        let mut rhs = RootSum::zero();
                                        for &h in fd.product(y, z) {
                                            if fd.admits(x, h, g) && fd.admits(h, w, k) {
                                                let t = a.f(x, y, z, g, e, h).mul(&a.f(x, h, w, u, g, k)).mul(&a.f(y, z, w, k, h, l));
                                                rhs = rhs.add(&t);
                                            }
                                        }
                                        checked += 1;
                                        if !lhs.eq_in(&rhs, field)? {
                                            failures.push(PentagonFailure { x, y, z, w, u, e, g, k, l });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(PentagonReport { holds: failures.is_empty(), checked, failures })
}

/// `Σ_F F[E,F] F^{-1}[F,E'] = δ_{E,E'}` for every block; returns the first
/// failing `(x,y,z,w)`.
pub fn inverse_check<T: Coeff, A: Associator<T>>(a: &A) -> Result<Option<(usize, usize, usize, usize)>, SkeletalError> {
    let fd = a.fusion();
    let n = fd.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let es: Vec<usize> = fd.product(x, y).iter().copied().filter(|&e| fd.admits(e, z, w)).collect();
                    let fs: Vec<usize> = fd.product(y, z).iter().copied().filter(|&f| fd.admits(x, f, w)).collect();
                    for &e in &es {
                        for &e2 in &es {
                            let mut s = RootSum::zero();
                            for &f in &fs {
                                s = s.add(&a.f(x, y, z, w, e, f).mul(&a.f_inv(x, y, z, w, f, e2)));
                            }
                            let target = if e == e2 { RootSum::one() } else { RootSum::zero() };
                            if !s.eq_in(&target, a.field())? {
                                return Ok(Some((x, y, z, w)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Monoidal functors and natural isomorphisms

/// A monoidal autoequivalence: a fusion-preserving permutation plus a
/// root-of-unity tensorator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MonFunctor {
    perm: Vec<usize>,
    /// dense `(x·n + y)·n + z`; inadmissible cells hold 1
    tensorator: Vec<Root>,
}

impl MonFunctor {
    pub fn identity(fd: &FusionData) -> Self {
        let n = fd.len();
        MonFunctor { perm: (0..n).collect(), tensorator: vec![Root::ONE; n * n * n] }
    }

    pub fn new(
        fd: &FusionData,
        perm: Vec<usize>,
        mut j: impl FnMut(usize, usize, usize) -> Root,
    ) -> Result<Self, SkeletalError> {
        if !fd.is_fusion_automorphism(&perm) {
            return Err(SkeletalError::PermNotFusionPreserving);
        }
        let n = fd.len();
        let mut tensorator = vec![Root::ONE; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    tensorator[(x * n + y) * n + z] = j(x, y, z);
                }
            }
        }
        Ok(MonFunctor { perm, tensorator })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn is_identity_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, p)| i == *p)
    }

    #[inline]
    pub fn j(&self, x: usize, y: usize, z: usize) -> Root {
        let n = self.perm.len();
        self.tensorator[(x * n + y) * n + z]
    }

    /// `self ∘ inner`: `j_{X,Y;Z} = j^{self}_{inner X, inner Y; inner Z} · j^{inner}_{X,Y;Z}`.
    pub fn compose(&self, inner: &MonFunctor) -> Result<MonFunctor, SkeletalError> {
        let n = self.perm.len();
        if inner.perm.len() != n {
            return Err(SkeletalError::BaseMismatch);
        }
        let perm = (0..n).map(|x| self.perm[inner.perm[x]]).collect();
        let mut tensorator = vec![Root::ONE; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    tensorator[(x * n + y) * n + z] =
                        self.j(inner.apply(x), inner.apply(y), inner.apply(z)).mul(inner.j(x, y, z));
                }
            }
        }
        Ok(MonFunctor { perm, tensorator })
    }

    /// The inverse functor with `F^{-1} ∘ F` equal to the identity data.
    pub fn inverse(&self) -> MonFunctor {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (x, &p) in self.perm.iter().enumerate() {
            inv[p] = x;
        }
        let mut tensorator = vec![Root::ONE; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    tensorator[(x * n + y) * n + z] = self.j(inv[x], inv[y], inv[z]).inv();
                }
            }
        }
        MonFunctor { perm: inv, tensorator }
    }

    /// The unique tensorator on the same underlying functor making `gamma`
    /// (components `F(X) → H(X)`) monoidal:
    /// `j^H_{X,Y;Z} = γ(Z) j^F_{X,Y;Z} / (γ(X) γ(Y))`.
    pub fn transport(&self, fd: &FusionData, gamma: &[Root]) -> Result<MonFunctor, SkeletalError> {
        let n = self.perm.len();
        if gamma.len() != n || fd.len() != n {
            return Err(SkeletalError::BaseMismatch);
        }
        let mut tensorator = self.tensorator.clone();
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    let c = &mut tensorator[(x * n + y) * n + z];
                    *c = gamma[z].mul(*c).div(gamma[x].mul(gamma[y]));
                }
            }
        }
        Ok(MonFunctor { perm: self.perm.clone(), tensorator })
    }

    /// Monoidal-functor axiom
    /// `j_{XY;E} j_{EZ;W} F^{XYZ}_W[E,F] = F^{TX,TY,TZ}_{TW}[TE,TF] j_{YZ;F} j_{XF;W}`.
    /// Returns a failing `(x,y,z,w,e,f)` if any.
    pub fn is_monoidal<T: Coeff, A: Associator<T>>(
        &self,
        a: &A,
    ) -> Result<Option<[usize; 6]>, SkeletalError> {
        let fd = a.fusion();
        let n = fd.len();
        if n != self.perm.len() {
            return Err(SkeletalError::BaseMismatch);
        }
        let p = |x: usize| self.perm[x];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for &e in fd.product(x, y) {
                        for &w in fd.product(e, z) {
                            for &f in fd.product(y, z) {
                                if !fd.admits(x, f, w) {
                                    continue;
                                }
                                let lhs = a.f(x, y, z, w, e, f).mul_root(self.j(x, y, e).mul(self.j(e, z, w)));
                                let rhs = a.f(p(x), p(y), p(z), p(w), p(e), p(f)).mul_root(self.j(y, z, f).mul(self.j(x, f, w)));
                                if !lhs.eq_in(&rhs, a.field())? {
                                    return Ok(Some([x, y, z, w, e, f]));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Components of a natural isomorphism between functors with equal permutation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct NatIso {
    pub comps: Vec<Root>,
}

impl NatIso {
    pub fn identity(n: usize) -> Self {
        NatIso { comps: vec![Root::ONE; n] }
    }

    /// `comps(Z) j^{src}_{X,Y;Z} = j^{tgt}_{X,Y;Z} comps(X) comps(Y)`; returns a
    /// failing `(x, y, z)`.
    pub fn monoidal_failure(
        &self,
        fd: &FusionData,
        src: &MonFunctor,
        tgt: &MonFunctor,
    ) -> Result<Option<(usize, usize, usize)>, SkeletalError> {
        let n = fd.len();
        if src.perm != tgt.perm || self.comps.len() != n || src.len() != n {
            return Err(SkeletalError::BaseMismatch);
        }
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    if self.comps[z].mul(src.j(x, y, z)) != tgt.j(x, y, z).mul(self.comps[x].mul(self.comps[y])) {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_monoidal(&self, fd: &FusionData, src: &MonFunctor, tgt: &MonFunctor) -> Result<bool, SkeletalError> {
        Ok(self.monoidal_failure(fd, src, tgt)?.is_none())
    }
}

// ---------------------------------------------------------------------------
// Aut⊗(Id)

/// The group of monoidal automorphisms of the identity functor, i.e. scalar
/// functions `λ` on simples with `λ(Z) = λ(X) λ(Y)` for `Z ≤ X ⊗ Y`.
///
/// It is the character group of the universal grading group, computed from
/// the Smith normal form of the grading relations.
#[derive(Clone, Debug)]
pub struct IdAutos {
    group: AbGroup,
    functions: Vec<Vec<Root>>,
    lookup: HashMap<Vec<Root>, usize>,
}

impl IdAutos {
    pub fn new(fd: &FusionData) -> Result<Self, SkeletalError> {
        let n = fd.len();
        let mut rows: Vec<Vec<i64>> = vec![{
            let mut r = vec![0; n];
            r[0] = 1;
            r
        }];
        for x in 0..n {
            for y in 0..n {
                for &z in fd.product(x, y) {
                    let mut r = vec![0i64; n];
                    r[z] += 1;
                    r[x] -= 1;
                    r[y] -= 1;
                    if r.iter().any(|v| *v != 0) {
                        rows.push(r);
                    }
                }
            }
        }
        let (diag, q) = linalg::smith_columns(&rows, n);
        let mut cols = Vec::new();
        let mut factors = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            if d == 0 {
                return Err(SkeletalError::BadFusion("universal grading group is infinite".into()));
            }
            if d > 1 {
                cols.push(i);
                factors.push(d as u64);
            }
        }
        if diag.len() < n {
            return Err(SkeletalError::BadFusion("universal grading group is infinite".into()));
        }
        let group = AbGroup::new(factors.clone())?;
        let mut functions = Vec::with_capacity(group.order() as usize);
        let mut lookup = HashMap::new();
        for idx in 0..group.order() as usize {
            let k = group.elem_at(idx).coords;
            let f: Vec<Root> = (0..n)
                .map(|x| {
                    cols.iter().zip(&factors).zip(&k).fold(Root::ONE, |acc, ((&c, &d), &ki)| {
                        acc.mul(Root::new((ki as i64 * q[x][c]).rem_euclid(d as i64), d))
                    })
                })
                .collect();
            lookup.insert(f.clone(), idx);
            functions.push(f);
        }
        let autos = IdAutos { group, functions, lookup };
        debug_assert!(autos.functions.iter().all(|f| autos.is_multiplicative(fd, f)));
        Ok(autos)
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn function(&self, idx: usize) -> &[Root] {
        &self.functions[idx]
    }

    pub fn functions(&self) -> &[Vec<Root>] {
        &self.functions
    }

    pub fn identify(&self, f: &[Root]) -> Option<usize> {
        self.lookup.get(f).copied()
    }

    pub fn is_multiplicative(&self, fd: &FusionData, f: &[Root]) -> bool {
        f[0].is_one()
            && (0..fd.len()).all(|x| (0..fd.len()).all(|y| fd.product(x, y).iter().all(|&z| f[z] == f[x].mul(f[y]))))
    }
}

/// `Aut⊗(Id)` for the given fusion rules.
pub fn monoidal_id_autos(fd: &FusionData) -> Result<IdAutos, SkeletalError> {
    IdAutos::new(fd)
}

// ---------------------------------------------------------------------------
// Group actions

/// A normalized categorical action of an abelian group: functors `T(g)` and
/// isomorphisms `t2(g,h): T(gh) → T(g)∘T(h)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GActionData {
    group: AbGroup,
    functors: Vec<MonFunctor>,
    /// `t2[g·|G| + h]`
    t2: Vec<NatIso>,
}

/// Outcome of [`GActionData::check`]; every flag must hold.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ActionReport {
    pub normalized: bool,
    pub functors_monoidal: bool,
    pub composition_perms: bool,
    pub t2_monoidal: bool,
    pub coherent: bool,
    /// first failing coherence instance `(g, h, k, X)`
    pub witness: Option<(usize, usize, usize, usize)>,
}

impl ActionReport {
    pub fn holds(&self) -> bool {
        self.normalized && self.functors_monoidal && self.composition_perms && self.t2_monoidal && self.coherent
    }
}

impl GActionData {
    pub fn new(group: &AbGroup, functors: Vec<MonFunctor>, t2: Vec<NatIso>) -> Result<Self, SkeletalError> {
        let g = group.order() as usize;
        if functors.len() != g || t2.len() != g * g {
            return Err(SkeletalError::InvalidAction("need |G| functors and |G|² isomorphisms".into()));
        }
        let n = functors[0].len();
        if functors.iter().any(|f| f.len() != n) || t2.iter().any(|t| t.comps.len() != n) {
            return Err(SkeletalError::BaseMismatch);
        }
        Ok(GActionData { group: group.clone(), functors, t2 })
    }

    /// Every `T(g)` the identity, every `t2` trivial.
    pub fn trivial(group: &AbGroup, fd: &FusionData) -> Self {
        let g = group.order() as usize;
        GActionData {
            group: group.clone(),
            functors: vec![MonFunctor::identity(fd); g],
            t2: vec![NatIso::identity(fd.len()); g * g],
        }
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn functor(&self, g: usize) -> &MonFunctor {
        &self.functors[g]
    }

    pub fn functors(&self) -> &[MonFunctor] {
        &self.functors
    }

    #[inline]
    pub fn t2(&self, g: usize, h: usize, x: usize) -> Root {
        self.t2[g * self.group.order() as usize + h].comps[x]
    }

    pub fn t2_iso(&self, g: usize, h: usize) -> &NatIso {
        &self.t2[g * self.group.order() as usize + h]
    }

    /// Copy with one `t2` component multiplied by `r`.
    pub fn with_t2_scaled(&self, g: usize, h: usize, x: usize, r: Root) -> Self {
        let mut out = self.clone();
        let k = g * self.group.order() as usize + h;
        out.t2[k].comps[x] = out.t2[k].comps[x].mul(r);
        out
    }

    pub fn check<T: Coeff, A: Associator<T>>(&self, a: &A) -> Result<ActionReport, SkeletalError> {
        let fd = a.fusion();
        let gn = self.group.order() as usize;
        let n = fd.len();
        let id = MonFunctor::identity(fd);
        let normalized = self.functors[0] == id
            && (0..gn).all(|g| (0..n).all(|x| self.t2(0, g, x).is_one() && self.t2(g, 0, x).is_one()));
        let mut functors_monoidal = true;
        for f in &self.functors {
            if !fd.is_fusion_automorphism(f.perm()) || f.is_monoidal(a)?.is_some() {
                functors_monoidal = false;
            }
        }
        let mut composition_perms = true;
        let mut t2_monoidal = true;
        for g in 0..gn {
            for h in 0..gn {
                let gh = self.group.add_idx(g, h);
                let comp = self.functors[g].compose(&self.functors[h])?;
                if comp.perm() != self.functors[gh].perm() {
                    composition_perms = false;
                    continue;
                }
                if !self.t2_iso(g, h).is_monoidal(fd, &self.functors[gh], &comp)? {
                    t2_monoidal = false;
                }
            }
        }
        let mut witness = None;
        'outer: for g in 0..gn {
            for h in 0..gn {
                for k in 0..gn {
                    let gh = self.group.add_idx(g, h);
                    let hk = self.group.add_idx(h, k);
                    for x in 0..n {
                        let l = self.t2(g, h, self.functors[k].apply(x)).mul(self.t2(gh, k, x));
                        let r = self.t2(h, k, x).mul(self.t2(g, hk, x));
                        if l != r {
                            witness = Some((g, h, k, x));
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(ActionReport { normalized, functors_monoidal, composition_perms, t2_monoidal, coherent: witness.is_none(), witness })
    }
}

// ---------------------------------------------------------------------------
// Obstruction and trivializations

fn check_choices(act: &GActionData, fd: &FusionData, choices: &[Vec<Root>]) -> Result<(), SkeletalError> {
    let gn = act.group.order() as usize;
    if choices.len() != gn || choices.iter().any(|c| c.len() != fd.len()) {
        return Err(SkeletalError::BaseMismatch);
    }
    let id = MonFunctor::identity(fd);
    for g in 0..gn {
        if !act.functor(g).is_identity_perm() {
            return Err(SkeletalError::NotPointwiseTrivializable { g });
        }
        let iso = NatIso { comps: choices[g].clone() };
        if let Some((x, y, z)) = iso.monoidal_failure(fd, act.functor(g), &id)? {
            return Err(SkeletalError::ChoiceNotMonoidal { g, x, y, z });
        }
    }
    if choices[0].iter().any(|r| !r.is_one()) {
        return Err(SkeletalError::InvalidAction("choice at the identity must be trivial".into()));
    }
    Ok(())
}

/// The scalar function `b(g,h)_S = χ_{gh,S} t2(g,h)_S^{-1} χ_{g,S}^{-1} χ_{h,S}^{-1}`.
pub fn obstruction_values(act: &GActionData, choices: &[Vec<Root>], g: usize, h: usize) -> Vec<Root> {
    let gh = act.group.add_idx(g, h);
    (0..choices[0].len())
        .map(|s| choices[gh][s].div(act.t2(g, h, s)).div(choices[g][s].mul(choices[h][s])))
        .collect()
}

/// The obstruction 2-cocycle with coefficients in `Aut⊗(Id)`, for monoidal
/// choices `χ_g: T(g) → Id` (identity permutations required).
pub fn obstruction_cocycle(
    act: &GActionData,
    fd: &FusionData,
    autos: &IdAutos,
    choices: &[Vec<Root>],
) -> Result<Cochain, SkeletalError> {
    check_choices(act, fd, choices)?;
    let gn = act.group.order() as usize;
    let mut table = vec![vec![0u64; autos.group.rank()]; gn * gn];
    for g in 0..gn {
        for h in 0..gn {
            let f = obstruction_values(act, choices, g, h);
            let idx = autos.identify(&f).ok_or_else(|| SkeletalError::NotInAutId(format!("b({g},{h}) = {f:?}")))?;
            table[g * gn + h] = autos.group.elem_at(idx).coords;
        }
    }
    Ok(Cochain::from_fn(2, &act.group, &autos.group, |args| table[args[0] * gn + args[1]].clone())?)
}

/// Monoidal isomorphisms `η_g: T(g) → Id` with `η_g η_h = η_{gh} t2(g,h)^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Trivialization {
    pub etas: Vec<Vec<Root>>,
}

impl Trivialization {
    /// Checks monoidality of every `η_g` and the compatibility with `t2`.
    pub fn verify(&self, act: &GActionData, fd: &FusionData) -> Result<bool, SkeletalError> {
        match check_choices(act, fd, &self.etas) {
            Ok(()) => {}
            Err(SkeletalError::ChoiceNotMonoidal { .. }) | Err(SkeletalError::InvalidAction(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
        let gn = act.group.order() as usize;
        for g in 0..gn {
            for h in 0..gn {
                let gh = act.group.add_idx(g, h);
                for x in 0..fd.len() {
                    if self.etas[g][x].mul(self.etas[h][x]) != self.etas[gh][x].div(act.t2(g, h, x)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// All trivializations: one from a primitive of the obstruction, then its
/// orbit under `Hom(G, Aut⊗(Id))`. Empty iff the obstruction class is nonzero.
pub fn trivializations(
    act: &GActionData,
    fd: &FusionData,
    choices: &[Vec<Root>],
) -> Result<Vec<Trivialization>, SkeletalError> {
    let autos = IdAutos::new(fd)?;
    let b = obstruction_cocycle(act, fd, &autos, choices)?;
    let Some(p) = b.is_coboundary()? else {
        return Ok(Vec::new());
    };
    let gn = act.group.order() as usize;
    let agroup = autos.group();
    let base: Vec<Vec<Root>> = (0..gn)
        .map(|g| {
            let pg = agroup.index(&agroup.elem(p.value(&[g]).to_vec()).expect("coefficient element"));
            let lam = autos.function(pg);
            (0..fd.len()).map(|x| lam[x].mul(choices[g][x])).collect()
        })
        .collect();
    let mut out = Vec::new();
    for u in act.group.homs(agroup)? {
        let etas = (0..gn)
            .map(|g| {
                let lam = autos.function(u.apply_idx(g));
                base[g].iter().zip(lam).map(|(e, l)| e.mul(*l)).collect()
            })
            .collect();
        out.push(Trivialization { etas });
    }
    out.sort_by(|a, b| a.etas.cmp(&b.etas));
    Ok(out)
}

/// `c^{(η)}_{X,Y;Z} = η(deg X)_Y · c_{X,Y;Z}`.
pub fn braiding_from_trivialization(
    crossed: &BraidingTable,
    triv: &Trivialization,
    degree: &[usize],
) -> Result<BraidingTable, SkeletalError> {
    let n = crossed.len();
    if degree.len() != n || triv.etas.iter().any(|e| e.len() != n) || degree.iter().any(|&g| g >= triv.etas.len()) {
        return Err(SkeletalError::Grading("degree map does not match the trivialization".into()));
    }
    Ok(crossed.map(|x, y, _z, c| c.mul(triv.etas[degree[x]][y])))
}
