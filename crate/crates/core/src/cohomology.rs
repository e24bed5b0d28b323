//! Normalized group cochains with values in a finite abelian group (trivial
//! action): bar differential, cocycle test, coboundary solving.
//!
//! The coefficient group `M` is written additively. Scalar-valued cochains are
//! stored through `μ_L ≅ ℤ/L` (see [`Cochain::from_roots`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbGroup, GroupError};
use crate::cyclotomic::Root;
use crate::linalg;

/// Bound on the number of candidate primitives tried by exhaustive search.
pub const EXHAUSTIVE_BOUND: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cochain is not normalized: value at {0:?} is not the identity")]
    NotNormalized(Vec<usize>),
    #[error("cochain degree {0} outside the supported range 0..=4")]
    BadDegree(usize),
    #[error("value {value:?} is not an element of the coefficient group {coeff}")]
    BadValue { value: Vec<u64>, coeff: AbGroup },
    #[error("root of unity {0} does not lie in μ_{1}")]
    RootOutsideCoefficients(Root, u64),
    #[error("cochains are incompatible (degree, source or coefficients differ)")]
    Incompatible,
    #[error("exhaustive search over {0} primitives exceeds the bound; use the linear-algebra path or a smaller instance")]
    SearchTooLarge(u128),
    #[error("coboundary problem requires a cocycle")]
    NotACocycle,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A normalized `n`-cochain `G^n → M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    degree: usize,
    source: AbGroup,
    coeff: AbGroup,
    /// flat table: tuple index · rank(M) + coordinate
    values: Vec<u64>,
}

impl Cochain {
    /// Build from a function on index tuples returning coefficient coordinates.
    pub fn from_fn(
        degree: usize,
        source: &AbGroup,
        coeff: &AbGroup,
        mut f: impl FnMut(&[usize]) -> Vec<u64>,
    ) -> Result<Self, CohomologyError> {
        if degree > 4 {
            return Err(CohomologyError::BadDegree(degree));
        }
        let g = source.order() as usize;
        let rank = coeff.rank();
        let count = g.pow(degree as u32);
        let mut values = Vec::with_capacity(count * rank);
        let mut args = vec![0usize; degree];
        for t in 0..count {
            decode(t, g, &mut args);
            let v = f(&args);
            if v.len() != rank || v.iter().zip(coeff.invariant_factors()).any(|(a, n)| a >= n) {
                return Err(CohomologyError::BadValue { value: v, coeff: coeff.clone() });
            }
            if args.contains(&0) && v.iter().any(|a| *a != 0) {
                return Err(CohomologyError::NotNormalized(args.clone()));
            }
            values.extend(v);
        }
        Ok(Cochain { degree, source: source.clone(), coeff: coeff.clone(), values })
    }

    /// A `μ_L`-valued cochain, stored with coefficients `ℤ/L`.
    pub fn from_roots(
        degree: usize,
        source: &AbGroup,
        l: u64,
        mut f: impl FnMut(&[usize]) -> Root,
    ) -> Result<Self, CohomologyError> {
        let coeff = AbGroup::cyclic(l);
        let mut err = None;
        let c = Self::from_fn(degree, source, &coeff, |args| {
            let r = f(args);
            match r.exponent_mod(l) {
                Some(e) if l > 1 => vec![e],
                Some(_) => vec![],
                None => {
                    err.get_or_insert(CohomologyError::RootOutsideCoefficients(r, l));
                    vec![0; coeff.rank()]
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(c),
        }
    }

    pub fn identity(degree: usize, source: &AbGroup, coeff: &AbGroup) -> Self {
        Self::from_fn(degree, source, coeff, |_| vec![0; coeff.rank()]).expect("identity cochain")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn coeff(&self) -> &AbGroup {
        &self.coeff
    }

    fn slot(&self, args: &[usize]) -> usize {
        let g = self.source.order() as usize;
        args.iter().fold(0, |acc, a| acc * g + a) * self.coeff.rank()
    }

    /// Coordinates of the value at an index tuple.
    pub fn value(&self, args: &[usize]) -> &[u64] {
        debug_assert_eq!(args.len(), self.degree);
        let s = self.slot(args);
        &self.values[s..s + self.coeff.rank()]
    }

    /// Value as a root of unity, for cyclic coefficients `ℤ/L ≅ μ_L`.
    pub fn root_value(&self, args: &[usize]) -> Root {
        match self.coeff.invariant_factors() {
            [] => Root::ONE,
            [l] => Root::new(self.value(args)[0] as i64, *l),
            _ => panic!("root_value on non-cyclic coefficients"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }

    fn compatible(&self, other: &Self) -> Result<(), CohomologyError> {
        if self.degree != other.degree || self.source != other.source || self.coeff != other.coeff {
            return Err(CohomologyError::Incompatible);
        }
        Ok(())
    }

    /// Pointwise product (sum in `M`).
    pub fn mul(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.compatible(other)?;
        let f = self.coeff.invariant_factors();
        let r = f.len();
        let values =
            self.values.iter().zip(&other.values).enumerate().map(|(i, (a, b))| (a + b) % f[i % r]).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn inverse(&self) -> Self {
        let f = self.coeff.invariant_factors();
        let r = f.len();
        let values = self.values.iter().enumerate().map(|(i, a)| (f[i % r] - a) % f[i % r]).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn div(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.mul(&other.inverse())
    }

    /// Re-embed `ℤ/L` coefficients into `ℤ/(L·k)` (i.e. `μ_L ⊆ μ_{Lk}`).
    pub fn enlarge_cyclic(&self, k: u64) -> Self {
        let l = self.coeff.order();
        let coeff = AbGroup::cyclic(l * k);
        let values = if coeff.rank() == 0 {
            vec![]
        } else if self.coeff.rank() == 0 {
            vec![0; self.values.len().max(self.source.order().pow(self.degree as u32) as usize)]
        } else {
            self.values.iter().map(|v| v * k).collect()
        };
        Cochain { degree: self.degree, source: self.source.clone(), coeff, values }
    }

    /// `(dc)(g_1..g_{n+1}) = c(g_2..) + Σ_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{n+1} c(g_1..g_n)`.
    pub fn differential(&self) -> Result<Cochain, CohomologyError> {
        let n = self.degree;
        let coeff = self.coeff.clone();
        Cochain::from_fn(n + 1, &self.source, &coeff, |args| self.differential_at(args))
    }

    fn differential_at(&self, args: &[usize]) -> Vec<u64> {
        let f = self.coeff.invariant_factors();
        let mut acc = vec![0i128; f.len()];
        let n = self.degree;
        if n == 0 {
            return vec![0; f.len()];
        }
        let mut face = vec![0usize; n];
        for i in 0..=n + 1 {
            let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
            if i == 0 {
                face.copy_from_slice(&args[1..]);
            } else if i == n + 1 {
                face.copy_from_slice(&args[..n]);
            } else {
                let mut k = 0;
                let mut j = 0;
                while j < n + 1 {
                    if j == i - 1 {
                        face[k] = self.source.add_idx(args[j], args[j + 1]);
                        j += 2;
                    } else {
                        face[k] = args[j];
                        j += 1;
                    }
                    k += 1;
                }
            }
            for (a, v) in acc.iter_mut().zip(self.value(&face)) {
                *a += sign * *v as i128;
            }
        }
        acc.iter().zip(f).map(|(a, m)| a.rem_euclid(*m as i128) as u64).collect()
    }

    /// `dc` is identically trivial (evaluated tuple by tuple, stopping early).
    pub fn is_cocycle(&self) -> bool {
        let g = self.source.order() as usize;
        let m = self.degree + 1;
        let mut args = vec![0usize; m];
        (0..g.pow(m as u32)).all(|t| {
            decode(t, g, &mut args);
            args.contains(&0) || self.differential_at(&args).iter().all(|v| *v == 0)
        })
    }

    /// A primitive `p` with `dp = self`, via Smith normal form over each
    /// cyclic factor of `M`.
    pub fn is_coboundary(&self) -> Result<Option<Cochain>, CohomologyError> {
        if !self.is_cocycle() {
            return Err(CohomologyError::NotACocycle);
        }
        let n = self.degree;
        let g = self.source.order() as usize;
        if n == 0 {
            return Ok(self.is_identity().then(|| self.clone()));
        }
        let pdeg = n - 1;
        // unknowns: primitive values at tuples with no identity entry
        let nz = g - 1;
        let ucount = nz.pow(pdeg as u32);
        let unknown_of = |args: &[usize]| -> Option<usize> {
            args.iter().try_fold(0usize, |acc, &a| (a != 0).then(|| acc * nz + (a - 1)))
        };
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut row_args: Vec<Vec<usize>> = Vec::new();
        let mut args = vec![0usize; n];
        for t in 0..g.pow(n as u32) {
            decode(t, g, &mut args);
            if args.contains(&0) {
                continue;
            }
            let mut row = vec![0i64; ucount];
            let mut face = vec![0usize; pdeg];
            for i in 0..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                if i == 0 {
                    face.copy_from_slice(&args[1..]);
                } else if i == n {
                    face.copy_from_slice(&args[..pdeg]);
                } else {
                    let mut k = 0;
                    let mut j = 0;
                    while j < n {
                        if j == i - 1 {
                            face[k] = self.source.add_idx(args[j], args[j + 1]);
                            j += 2;
                        } else {
                            face[k] = args[j];
                            j += 1;
                        }
                        k += 1;
                    }
                }
                if let Some(u) = unknown_of(&face) {
                    row[u] += sign;
                }
            }
            rows.push(row);
            row_args.push(args.clone());
        }
        let factors = self.coeff.invariant_factors().to_vec();
        let mut sol = vec![vec![0u64; factors.len()]; ucount];
        for (c, &m) in factors.iter().enumerate() {
            let rhs: Vec<i64> = row_args.iter().map(|a| self.value(a)[c] as i64).collect();
            match linalg::solve_mod(&rows, &rhs, ucount, m) {
                Some(x) => {
                    for (u, v) in x.into_iter().enumerate() {
                        sol[u][c] = v as u64;
                    }
                }
                None => return Ok(None),
            }
        }
        let p = Cochain::from_fn(pdeg, &self.source, &self.coeff, |a| match unknown_of(a) {
            Some(u) if pdeg > 0 => sol[u].clone(),
            _ => vec![0; factors.len()],
        })?;
        debug_assert_eq!(&p.differential()?, self);
        Ok(Some(p))
    }

    /// Exhaustive search for a primitive; independent oracle for
    /// [`Cochain::is_coboundary`] on small instances.
    pub fn is_coboundary_exhaustive(&self) -> Result<Option<Cochain>, CohomologyError> {
        let n = self.degree;
        if n == 0 {
            return Ok(self.is_identity().then(|| self.clone()));
        }
        let g = self.source.order() as usize;
        let m = self.coeff.order() as u128;
        let cells = (g - 1).pow((n - 1) as u32);
        let total = m.checked_pow(cells as u32).unwrap_or(u128::MAX);
        if total > EXHAUSTIVE_BOUND {
            return Err(CohomologyError::SearchTooLarge(total));
        }
        let elems = self.coeff.enumerate()?;
        let nz = g - 1;
        let mut pick = vec![0usize; cells];
        loop {
            let p = Cochain::from_fn(n - 1, &self.source, &self.coeff, |a| {
                match a.iter().try_fold(0usize, |acc, &x| (x != 0).then(|| acc * nz + (x - 1))) {
                    Some(u) if n > 1 => elems[pick[u]].coords.clone(),
                    _ => vec![0; self.coeff.rank()],
                }
            })?;
            if &p.differential()? == self {
                return Ok(Some(p));
            }
            let mut i = cells;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < elems.len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// `c1 / c2` is a coboundary.
    pub fn same_class(&self, other: &Self) -> Result<bool, CohomologyError> {
        Ok(self.div(other)?.is_coboundary()?.is_some())
    }

    /// Serializable form with root values, for cyclic coefficients.
    pub fn to_file(&self) -> CochainFile {
        let g = self.source.order() as usize;
        let l = self.coeff.order();
        let mut entries = Vec::new();
        let mut args = vec![0usize; self.degree];
        for t in 0..g.pow(self.degree as u32) {
            decode(t, g, &mut args);
            let r = self.root_value(&args);
            if !r.is_one() {
                entries.push(CochainEntry {
                    args: args.iter().map(|a| self.source.elem_at(*a).coords).collect(),
                    value: r,
                });
            }
        }
        CochainFile {
            degree: self.degree,
            group: self.source.invariant_factors().to_vec(),
            coeff_order: l,
            entries,
        }
    }
}

/// Cochain file format; omitted entries are the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub degree: usize,
    pub group: Vec<u64>,
    #[serde(rename = "coeff_order")]
    pub coeff_order: u64,
    #[serde(default)]
    pub entries: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntry {
    pub args: Vec<Vec<u64>>,
    pub value: Root,
}

impl CochainFile {
    pub fn to_cochain(&self) -> Result<Cochain, CohomologyError> {
        let group = AbGroup::new(self.group.clone())?;
        let g = group.order() as usize;
        let mut table = vec![Root::ONE; g.pow(self.degree as u32)];
        for e in &self.entries {
            if e.args.len() != self.degree {
                return Err(CohomologyError::BadDegree(e.args.len()));
            }
            let mut t = 0usize;
            for a in &e.args {
                let x = group.elem(a.clone())?;
                t = t * g + group.index(&x);
            }
            table[t] = e.value;
        }
        Cochain::from_roots(self.degree, &group, self.coeff_order, |args| {
            table[args.iter().fold(0, |acc, a| acc * g + a)]
        })
    }
}

fn decode(mut t: usize, g: usize, args: &mut [usize]) {
    for a in args.iter_mut().rev() {
        *a = t % g;
        t /= g;
    }
}

/// All normalized cochains of a degree (small instances only).
pub fn all_cochains(degree: usize, source: &AbGroup, coeff: &AbGroup) -> Result<Vec<Cochain>, CohomologyError> {
    let g = source.order() as usize;
    let cells = (g - 1).pow(degree as u32);
    let m = coeff.order() as u128;
    let total = m.checked_pow(cells as u32).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_BOUND {
        return Err(CohomologyError::SearchTooLarge(total));
    }
    let elems = coeff.enumerate()?;
    let nz = g - 1;
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total as usize {
        out.push(Cochain::from_fn(degree, source, coeff, |a| {
            match a.iter().try_fold(0usize, |acc, &x| (x != 0).then(|| acc * nz + (x - 1))) {
                Some(u) => elems[(code / elems.len().pow(u as u32)) % elems.len()].coords.clone(),
                None => vec![0; coeff.rank()],
            }
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(f: &[u64]) -> AbGroup {
        AbGroup::new(f.to_vec()).unwrap()
    }

    fn random(degree: usize, src: &AbGroup, coeff: &AbGroup, rng: &mut ChaCha8Rng) -> Cochain {
        Cochain::from_fn(degree, src, coeff, |a| {
            if a.contains(&0) {
                vec![0; coeff.rank()]
            } else {
                coeff.invariant_factors().iter().map(|n| rng.gen_range(0..*n)).collect()
            }
        })
        .unwrap()
    }

    #[test]
    fn normalization_enforced() {
        let z2 = g(&[2]);
        let err = Cochain::from_fn(2, &z2, &z2, |_| vec![1]).unwrap_err();
        assert!(matches!(err, CohomologyError::NotNormalized(_)));
    }

    #[test]
    fn identity_examples() {
        let z4 = g(&[4]);
        let id = Cochain::identity(2, &z4, &z4);
        assert!(id.differential().unwrap().is_identity());
        assert!(id.is_cocycle());
        assert!(id.is_coboundary().unwrap().unwrap().is_identity());
    }

    #[test]
    fn one_cochain_differential() {
        let z6 = g(&[6]);
        let m = g(&[6]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random(1, &z6, &m, &mut rng);
        let du = u.differential().unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let expect = (u.value(&[a])[0] + u.value(&[b])[0] + 6 - u.value(&[z6.add_idx(a, b)])[0]) % 6;
                assert_eq!(du.value(&[a, b])[0], expect);
            }
        }
    }

    #[test]
    fn d_squared_vanishes() {
        let z4 = g(&[4]);
        let m = g(&[2, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for deg in 1..=3 {
            for _ in 0..10 {
                let c = random(deg, &z4, &m, &mut rng);
                if deg < 3 {
                    assert!(c.differential().unwrap().differential().unwrap().is_identity());
                }
                assert!(c.differential().unwrap().is_cocycle());
            }
        }
    }

    #[test]
    fn semion_cocycle() {
        let z2 = g(&[2]);
        let omega = Cochain::from_roots(3, &z2, 4, |a| if a == [1, 1, 1] { Root::MINUS_ONE } else { Root::ONE }).unwrap();
        assert!(omega.is_cocycle());
        assert_eq!(omega.is_coboundary().unwrap(), None);
        assert_eq!(omega.is_coboundary_exhaustive().unwrap(), None);
        assert!(!omega.same_class(&Cochain::identity(3, &z2, omega.coeff())).unwrap());
    }

    #[test]
    fn perturbed_coboundary_is_not_closed() {
        let z4 = g(&[4]);
        let m = g(&[4]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random(1, &z4, &m, &mut rng);
        let du = u.differential().unwrap();
        let bumped = Cochain::from_fn(2, &z4, &m, |a| {
            let v = du.value(a)[0];
            vec![if a == [1, 2] { (v + 1) % 4 } else { v }]
        })
        .unwrap();
        assert!(!bumped.is_cocycle());
        assert_eq!(bumped.is_coboundary(), Err(CohomologyError::NotACocycle));
    }

    #[test]
    fn coboundary_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (src, m) in [(g(&[4]), g(&[4])), (g(&[2, 2]), g(&[2, 4])), (g(&[3]), g(&[9])), (g(&[2, 4]), g(&[8]))] {
            for deg in 1..=2 {
                for _ in 0..5 {
                    let p = random(deg, &src, &m, &mut rng);
                    let dp = p.differential().unwrap();
                    let q = dp.is_coboundary().unwrap().expect("primitive exists");
                    assert_eq!(q.differential().unwrap(), dp);
                }
            }
        }
    }

    #[test]
    fn class_comparisons() {
        let z4 = g(&[4]);
        let m = g(&[4]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = random(1, &z4, &m, &mut rng).differential().unwrap().mul(&Cochain::from_fn(2, &z4, &m, |a| {
            // the nontrivial extension class: carry of a + b ≥ 4
            vec![if a[0] + a[1] >= 4 { 1 } else { 0 }]
        }).unwrap()).unwrap();
        assert!(b.same_class(&b).unwrap());
        let u = random(1, &z4, &m, &mut rng);
        assert!(b.same_class(&b.mul(&u.differential().unwrap()).unwrap()).unwrap());
        assert!(!b.same_class(&Cochain::identity(2, &z4, &m)).unwrap());
    }

    #[test]
    fn h2_z2_z2_has_order_two() {
        let z2 = g(&[2]);
        let all = all_cochains(2, &z2, &z2).unwrap();
        assert_eq!(all.len(), 2);
        let cocycles: Vec<_> = all.iter().filter(|c| c.is_cocycle()).collect();
        let boundaries: std::collections::HashSet<Vec<u64>> =
            all_cochains(1, &z2, &z2).unwrap().iter().map(|u| u.differential().unwrap().values).collect();
        assert_eq!(cocycles.len() / boundaries.len(), 2);
        // classes via the solver agree
        let mut classes: Vec<&Cochain> = Vec::new();
        for c in &cocycles {
            if !classes.iter().any(|r| r.same_class(c).unwrap()) {
                classes.push(c);
            }
        }
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn solver_matches_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (src, m) in [(g(&[2]), g(&[4])), (g(&[3]), g(&[3])), (g(&[4]), g(&[2])), (g(&[2, 2]), g(&[2])), (g(&[4]), g(&[4]))] {
            // degree 2: every cocycle, decided both ways
            for c in all_cochains(2, &src, &m).unwrap().into_iter().filter(|c| c.is_cocycle()) {
                assert_eq!(c.is_coboundary().unwrap().is_some(), c.is_coboundary_exhaustive().unwrap().is_some());
            }
            // degree 3: random closed cochains
            for _ in 0..20 {
                let c = random(3, &src, &m, &mut rng);
                if c.is_cocycle() {
                    if let Ok(ex) = c.is_coboundary_exhaustive() {
                        assert_eq!(c.is_coboundary().unwrap().is_some(), ex.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let z2 = g(&[2]);
        let omega = Cochain::from_roots(3, &z2, 8, |a| if a == [1, 1, 1] { Root::MINUS_ONE } else { Root::ONE }).unwrap();
        let f = omega.to_file();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"degree":3,"group":[2],"coeff_order":8,"entries":[{"args":[[1],[1],[1]],"value":{"order":2,"exp":1}}]}"#);
        let back: CochainFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_cochain().unwrap(), omega);
    }
}
