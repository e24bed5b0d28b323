//! The pointed categories `Vec_A^ω` and their canonical braided `A`-crossed
//! structure.
//!
//! Simple objects are the elements of `A` (label = element index) and the
//! associator is `F^{abc} = ω(a,b,c)`. The crossed structure lets `A` act on
//! itself by functors with identity permutation and tensorator
//! `j_g(a,b) = γ(g|a,b)^{-1}`, with `t2(g,h)_a = μ(g,h|a)^{-1}`, where
//!
//! * `γ(g|a,b) = ω(a,g,b) / (ω(g,a,b) ω(a,b,g))`
//! * `μ(g,h|a) = ω(g,a,h) / (ω(g,h,a) ω(a,g,h))`
//!
//! and the `A`-braiding is trivial.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{AbGroup, GroupError};
use crate::cohomology::{Cochain, CochainFile, CohomologyError};
use crate::cyclotomic::{Coeff, CycError, CycField, Root, RootSum};
use crate::skeletal::{
    self, Associator, BraidingTable, Cell, CrossedContext, FusionData, GActionData, IdAutos, MonFunctor, NatIso,
    Scope, SkeletalError, SolveStats, Trivialization,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointedError {
    #[error("ω must be a 3-cochain on the grading group with cyclic coefficients")]
    BadOmega,
    #[error("ω is not closed")]
    NotClosed,
    #[error("η does not solve δ_v(η) = γ (first failure at g={g}, a={a}, b={b})")]
    BadEta { g: usize, a: usize, b: usize },
    #[error("brute-force search limited to |A| ≤ {0}")]
    TooLarge(u64),
    #[error(transparent)]
    Skeletal(#[from] SkeletalError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// Largest group handled by the brute-force braiding search.
pub const BRUTE_FORCE_LIMIT: u64 = 16;

/// `Vec_A^ω` with `ω` valued in `μ_L`.
#[derive(Clone, Debug)]
pub struct PointedCat {
    group: AbGroup,
    omega: Cochain,
    fd: FusionData,
    field: Arc<CycField>,
}

/// Default value group order `L = 2·exp(A)·|A|` for 3-cocycles.
pub fn default_value_order(group: &AbGroup) -> u64 {
    2 * group.exponent().max(1) * group.order()
}

impl PointedCat {
    pub fn new(omega: Cochain) -> Result<Self, PointedError> {
        if omega.degree() != 3 || omega.coeff().rank() > 1 {
            return Err(PointedError::BadOmega);
        }
        if !omega.is_cocycle() {
            return Err(PointedError::NotClosed);
        }
        let group = omega.source().clone();
        let l = omega.coeff().order();
        let conductor = CycField::conductor_for_group(group.order(), group.exponent()).lcm(&(l * group.exponent().max(1)));
        Ok(PointedCat { fd: FusionData::pointed(&group), field: CycField::new(conductor)?, group, omega })
    }

    /// `Vec_A` with trivial associator.
    pub fn untwisted(group: &AbGroup) -> Result<Self, PointedError> {
        Self::new(Cochain::identity(3, group, &AbGroup::cyclic(default_value_order(group))))
    }

    /// The standard normalized cocycle with parameters for each cyclic factor
    /// (`ζ_{n_i²}^{k a_i (b_i + c_i − [b_i + c_i])}`), each pair of factors
    /// (`ζ_{n_i n_j}^{k a_i (b_j + c_j − [b_j + c_j])}`) and each triple
    /// (`ζ_{gcd}^{k a_i b_j c_l}`), valued in `μ_L`, `L = 2·exp(A)·|A|`.
    pub fn standard(
        group: &AbGroup,
        single: &[u64],
        pairs: &[(usize, usize, u64)],
        triples: &[(usize, usize, usize, u64)],
    ) -> Result<Self, PointedError> {
        let f = group.invariant_factors().to_vec();
        let r = f.len();
        if single.len() > r
            || pairs.iter().any(|&(i, j, _)| i >= j || j >= r)
            || triples.iter().any(|&(i, j, l, _)| !(i < j && j < l && l < r))
        {
            return Err(PointedError::BadOmega);
        }
        let omega = Cochain::from_roots(3, group, default_value_order(group), |args| {
            let [a, b, c] = [args[0], args[1], args[2]].map(|x| group.elem_at(x).coords);
            let mut acc = Root::ONE;
            let carry = |j: usize| ((b[j] + c[j]) / f[j]) as i64;
            for (i, &k) in single.iter().enumerate() {
                acc = acc.mul(Root::new(k as i64 * a[i] as i64 * carry(i) * f[i] as i64, f[i] * f[i]));
            }
            for &(i, j, k) in pairs {
                acc = acc.mul(Root::new(k as i64 * a[i] as i64 * carry(j), f[i]));
            }
            for &(i, j, l, k) in triples {
                let d = f[i].gcd(&f[j]).gcd(&f[l]);
                acc = acc.mul(Root::new((k * a[i] * b[j] * c[l]) as i64, d));
            }
            acc
        })?;
        Self::new(omega)
    }

    /// `ω · dβ` for a 2-cochain `β` with values in the same `μ_L`.
    pub fn twisted_by(&self, beta: &Cochain) -> Result<Self, PointedError> {
        Self::new(self.omega.mul(&beta.differential()?)?)
    }

    pub fn from_file(file: &CochainFile) -> Result<Self, PointedError> {
        Self::new(file.to_cochain()?)
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    /// Order `L` of the value group of `ω`.
    pub fn value_order(&self) -> u64 {
        self.omega.coeff().order()
    }

    #[inline]
    pub fn w(&self, a: usize, b: usize, c: usize) -> Root {
        self.omega.root_value(&[a, b, c])
    }

    /// Values of `η` and of braidings lie in `μ_{L·exp(A)}`.
    pub fn search_order(&self) -> u64 {
        self.value_order() * self.group.exponent().max(1)
    }

    /// Every element of `μ_{L·exp(A)}`, in increasing order.
    pub fn candidates(&self) -> Vec<Root> {
        let m = self.search_order();
        (0..m).map(|k| Root::new(k as i64, m)).collect()
    }

    /// Identity grading: `deg a = a`.
    pub fn degree(&self) -> Vec<usize> {
        (0..self.fd.len()).collect()
    }
}

impl<T: Coeff> Associator<T> for PointedCat {
    fn fusion(&self) -> &FusionData {
        &self.fd
    }

    fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    fn f(&self, x: usize, y: usize, z: usize, w: usize, e: usize, f: usize) -> RootSum<T> {
        let g = &self.group;
        if e == g.add_idx(x, y) && f == g.add_idx(y, z) && w == g.add_idx(e, z) {
            RootSum::root(self.w(x, y, z))
        } else {
            RootSum::zero()
        }
    }

    fn f_inv(&self, x: usize, y: usize, z: usize, w: usize, f: usize, e: usize) -> RootSum<T> {
        let g = &self.group;
        if e == g.add_idx(x, y) && f == g.add_idx(y, z) && w == g.add_idx(e, z) {
            RootSum::root(self.w(x, y, z).inv())
        } else {
            RootSum::zero()
        }
    }
}

/// `γ(g|a,b)` and `μ(g,h|a)` as dense tables.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CrossedDataPointed {
    n: usize,
    /// `gamma[(g·n + a)·n + b]`
    pub gamma: Vec<Root>,
    /// `mu[(g·n + h)·n + a]`
    pub mu: Vec<Root>,
}

impl CrossedDataPointed {
    pub fn gamma(&self, g: usize, a: usize, b: usize) -> Root {
        self.gamma[(g * self.n + a) * self.n + b]
    }

    pub fn mu(&self, g: usize, h: usize, a: usize) -> Root {
        self.mu[(g * self.n + h) * self.n + a]
    }

    /// `γ(g|−,−)` as a 2-cochain with values in `μ_L`.
    pub fn gamma_cochain(&self, cat: &PointedCat, g: usize) -> Result<Cochain, PointedError> {
        Ok(Cochain::from_roots(2, &cat.group, cat.value_order(), |args| self.gamma(g, args[0], args[1]))?)
    }
}

/// `γ` and `μ` from the formulas in the module documentation.
pub fn crossed_data(cat: &PointedCat) -> CrossedDataPointed {
    let n = cat.group.order() as usize;
    let mut gamma = Vec::with_capacity(n * n * n);
    let mut mu = Vec::with_capacity(n * n * n);
    for g in 0..n {
        for a in 0..n {
            for b in 0..n {
                gamma.push(cat.w(a, g, b).div(cat.w(g, a, b).mul(cat.w(a, b, g))));
            }
        }
    }
    for g in 0..n {
        for h in 0..n {
            for a in 0..n {
                mu.push(cat.w(g, a, h).div(cat.w(g, h, a).mul(cat.w(a, g, h))));
            }
        }
    }
    CrossedDataPointed { n, gamma, mu }
}

/// The action of `A` on `Vec_A^ω` assembled from `γ` and `μ`.
pub fn crossed_action(cat: &PointedCat, data: &CrossedDataPointed) -> Result<GActionData, PointedError> {
    let n = cat.group.order() as usize;
    let mut functors = Vec::with_capacity(n);
    for g in 0..n {
        functors.push(MonFunctor::new(&cat.fd, (0..n).collect(), |a, b, _| data.gamma(g, a, b).inv())?);
    }
    let mut t2 = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            t2.push(NatIso { comps: (0..n).map(|a| data.mu(g, h, a).inv()).collect() });
        }
    }
    Ok(GActionData::new(&cat.group, functors, t2)?)
}

/// The trivial `A`-braiding table `c ≡ 1`.
pub fn trivial_crossed_braiding(cat: &PointedCat) -> BraidingTable {
    BraidingTable::from_fn(&cat.fd, |_, _, _| Root::ONE)
}

/// The crossed context (associator, action, grading) of the canonical structure.
pub fn crossed_context<T: Coeff>(cat: &PointedCat) -> Result<CrossedContext<'_, T, PointedCat>, PointedError> {
    let data = crossed_data(cat);
    Ok(CrossedContext::new(cat, crossed_action(cat, &data)?, cat.degree())?)
}

/// A 2-cochain `η` with `η(g,a)η(g,b)/η(g,a+b) = γ(g|a,b)`, with values in
/// `μ_{L·exp(A)}`, or `None` if some `γ(g|−,−)` has nonzero class.
pub fn solve_eta(cat: &PointedCat) -> Result<Option<Cochain>, PointedError> {
    let data = crossed_data(cat);
    let n = cat.group.order() as usize;
    let e = cat.group.exponent().max(1);
    let m = cat.search_order();
    let mut rows = vec![vec![Root::ONE; n]; n];
    for (g, row) in rows.iter_mut().enumerate().skip(1) {
        let gc = data.gamma_cochain(cat, g)?.enlarge_cyclic(e);
        let Some(p) = gc.is_coboundary()? else {
            return Ok(None);
        };
        for (a, v) in row.iter_mut().enumerate() {
            *v = p.root_value(&[a]);
        }
    }
    Ok(Some(Cochain::from_roots(2, &cat.group, m, |args| rows[args[0]][args[1]])?))
}

/// Checks `δ_v(η) = γ`.
pub fn check_eta(cat: &PointedCat, data: &CrossedDataPointed, eta: &Cochain) -> Result<(), PointedError> {
    let n = cat.group.order() as usize;
    if eta.degree() != 2 || eta.source() != &cat.group || eta.coeff().rank() > 1 {
        return Err(PointedError::BadEta { g: 0, a: 0, b: 0 });
    }
    for g in 0..n {
        for a in 0..n {
            for b in 0..n {
                let ab = cat.group.add_idx(a, b);
                let dv = eta.root_value(&[g, a]).mul(eta.root_value(&[g, b])).div(eta.root_value(&[g, ab]));
                if dv != data.gamma(g, a, b) {
                    return Err(PointedError::BadEta { g, a, b });
                }
            }
        }
    }
    Ok(())
}

/// The choices `χ_g = η(g,−)^{-1}: T(g) → Id`.
pub fn choices_from_eta(cat: &PointedCat, eta: &Cochain) -> Vec<Vec<Root>> {
    let n = cat.group.order() as usize;
    (0..n).map(|g| (0..n).map(|a| eta.root_value(&[g, a]).inv()).collect()).collect()
}

/// `b(η)(g,h|a) = η(g,a)η(h,a)/η(g+h,a) · μ(g,h|a)`, a 2-cocycle with values
/// in the characters of `A` (coordinates as in [`IdAutos`]).
pub fn pointed_obstruction(cat: &PointedCat, eta: &Cochain) -> Result<Cochain, PointedError> {
    let data = crossed_data(cat);
    check_eta(cat, &data, eta)?;
    let autos = IdAutos::new(&cat.fd)?;
    let n = cat.group.order() as usize;
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let gh = cat.group.add_idx(g, h);
            let f: Vec<Root> = (0..n)
                .map(|a| {
                    eta.root_value(&[g, a])
                        .mul(eta.root_value(&[h, a]))
                        .div(eta.root_value(&[gh, a]))
                        .mul(data.mu(g, h, a))
                })
                .collect();
            let idx = autos
                .identify(&f)
                .ok_or_else(|| SkeletalError::NotInAutId(format!("b(η)({g},{h}) = {f:?}")))?;
            table.push(autos.group().elem_at(idx).coords);
        }
    }
    Ok(Cochain::from_fn(2, &cat.group, autos.group(), |args| table[args[0] * n + args[1]].clone())?)
}

/// The engine obstruction for the crossed action with choices from `η`.
pub fn engine_obstruction(cat: &PointedCat, eta: &Cochain) -> Result<Cochain, PointedError> {
    let act = crossed_action(cat, &crossed_data(cat))?;
    let autos = IdAutos::new(&cat.fd)?;
    Ok(skeletal::obstruction_cocycle(&act, &cat.fd, &autos, &choices_from_eta(cat, eta))?)
}

/// All trivializations of the crossed action (empty if `η` does not exist or
/// the obstruction class is nonzero).
pub fn trivializations(cat: &PointedCat) -> Result<Vec<Trivialization>, PointedError> {
    let Some(eta) = solve_eta(cat)? else {
        return Ok(Vec::new());
    };
    let act = crossed_action(cat, &crossed_data(cat))?;
    Ok(skeletal::trivializations(&act, &cat.fd, &choices_from_eta(cat, &eta))?)
}

/// Braidings `c(a,b) = η_a(b)` obtained from the trivializations.
pub fn braidings_from_trivializations(cat: &PointedCat) -> Result<Vec<BraidingTable>, PointedError> {
    let crossed = trivial_crossed_braiding(cat);
    let mut out = trivializations(cat)?
        .iter()
        .map(|t| skeletal::braiding_from_trivialization(&crossed, t, &cat.degree()))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}

/// All braidings on `Vec_A^ω` by exhaustive search over `μ_{L·exp(A)}`.
pub fn braidings_pointed(cat: &PointedCat) -> Result<(Vec<BraidingTable>, SolveStats), PointedError> {
    if cat.group.order() > BRUTE_FORCE_LIMIT {
        return Err(PointedError::TooLarge(BRUTE_FORCE_LIMIT));
    }
    let n = cat.fd.len();
    let mut cells = vec![Cell::Absent; n * n * n];
    let mut next = 0u32;
    for a in 0..n {
        for b in 0..n {
            let z = cat.group.add_idx(a, b);
            cells[(a * n + b) * n + z] = Cell::Unknown(next);
            next += 1;
        }
    }
    let ctx = CrossedContext::<num_rational::BigRational, _>::ordinary(cat);
    Ok(ctx.solve_braidings(&cells, &cat.candidates(), &Scope::Full)?)
}

/// Diagonal `a ↦ c(a,a)` of a braiding.
pub fn diagonal(cat: &PointedCat, c: &BraidingTable) -> Vec<Root> {
    (0..cat.fd.len()).map(|a| c.get(a, a, cat.group.add_idx(a, a)).expect("admissible")).collect()
}

#[cfg(test)]
mod tests;
