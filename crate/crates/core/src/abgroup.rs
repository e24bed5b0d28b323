//! Finite abelian groups in invariant-factor form.
//!
//! Elements are coordinate vectors; inner loops work with the lexicographic
//! index of an element instead (identity = 0).

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::Root;

/// Default bound on `|A|` for enumeration.
pub const ENUMERATION_BOUND: u64 = 256;
/// Bound on `|A|` for brute-force automorphism enumeration.
pub const AUTOMORPHISM_BOUND: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factors {0:?} are not a divisibility chain of integers ≥ 2")]
    NotInvariantForm(Vec<u64>),
    #[error("malformed group literal {0:?}")]
    BadLiteral(String),
    #[error("element {coords:?} does not belong to the group with invariant factors {factors:?}")]
    NotAnElement { coords: Vec<u64>, factors: Vec<u64> },
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    TooLarge { order: u64, bound: u64 },
    #[error("group of order {0} exceeds the brute-force automorphism bound 64; restrict to generator images instead")]
    TooLargeForAut(u64),
}

/// `ℤ/n_1 × … × ℤ/n_k` with `n_1 | n_2 | … | n_k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem {
    pub coords: Vec<u64>,
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl AbGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self, GroupError> {
        let ok = invariant_factors.iter().all(|&n| n >= 2)
            && invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(GroupError::NotInvariantForm(invariant_factors));
        }
        Ok(AbGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        AbGroup { invariant_factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            AbGroup { invariant_factors: vec![n] }
        }
    }

    /// Parse `"2,2"`; `"1"` or `""` is the trivial group.
    pub fn parse(literal: &str) -> Result<Self, GroupError> {
        let s = literal.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| GroupError::BadLiteral(literal.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Every element has order at most 2.
    pub fn is_elementary_2(&self) -> bool {
        self.exponent() <= 2
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { coords: vec![0; self.rank()] }
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElem { coords: c }
    }

    pub fn elem(&self, coords: Vec<u64>) -> Result<GroupElem, GroupError> {
        let e = GroupElem { coords };
        self.check(&e)?;
        Ok(e)
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        x.coords.len() == self.rank() && x.coords.iter().zip(&self.invariant_factors).all(|(c, n)| c < n)
    }

    fn check(&self, x: &GroupElem) -> Result<(), GroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GroupError::NotAnElement { coords: x.coords.clone(), factors: self.invariant_factors.clone() })
        }
    }

    pub fn add(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElem {
            coords: x.coords.iter().zip(&y.coords).zip(&self.invariant_factors).map(|((a, b), n)| (a + b) % n).collect(),
        })
    }

    pub fn neg(&self, x: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(x)?;
        Ok(GroupElem { coords: x.coords.iter().zip(&self.invariant_factors).map(|(a, n)| (n - a) % n).collect() })
    }

    /// `k · x`.
    pub fn scale(&self, x: &GroupElem, k: i64) -> Result<GroupElem, GroupError> {
        self.check(x)?;
        Ok(GroupElem {
            coords: x
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(a, n)| ((*a as i128 * k as i128).rem_euclid(*n as i128)) as u64)
                .collect(),
        })
    }

    pub fn elem_order(&self, x: &GroupElem) -> Result<u64, GroupError> {
        self.check(x)?;
        Ok(x.coords.iter().zip(&self.invariant_factors).fold(1, |acc, (a, n)| acc.lcm(&(n / a.gcd(n)))))
    }

    /// Lexicographic index (first coordinate most significant).
    pub fn index(&self, x: &GroupElem) -> usize {
        x.coords.iter().zip(&self.invariant_factors).fold(0usize, |acc, (c, n)| acc * *n as usize + *c as usize)
    }

    pub fn elem_at(&self, mut idx: usize) -> GroupElem {
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.invariant_factors[i] as usize;
            coords[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElem { coords }
    }

    pub fn add_idx(&self, i: usize, j: usize) -> usize {
        let (mut i, mut j) = (i, j);
        let mut out = 0usize;
        let mut stride = 1usize;
        for n in self.invariant_factors.iter().rev() {
            let n = *n as usize;
            out += ((i % n + j % n) % n) * stride;
            stride *= n;
            i /= n;
            j /= n;
        }
        out
    }

    pub fn neg_idx(&self, i: usize) -> usize {
        let mut i = i;
        let mut out = 0usize;
        let mut stride = 1usize;
        for n in self.invariant_factors.iter().rev() {
            let n = *n as usize;
            out += ((n - i % n) % n) * stride;
            stride *= n;
            i /= n;
        }
        out
    }

    pub fn sub_idx(&self, i: usize, j: usize) -> usize {
        self.add_idx(i, self.neg_idx(j))
    }

    /// All elements in lexicographic order, identity first.
    pub fn enumerate(&self) -> Result<Vec<GroupElem>, GroupError> {
        self.enumerate_bounded(ENUMERATION_BOUND)
    }

    pub fn enumerate_bounded(&self, bound: u64) -> Result<Vec<GroupElem>, GroupError> {
        let order = self.order();
        if order > bound {
            return Err(GroupError::TooLarge { order, bound });
        }
        Ok((0..order as usize).map(|i| self.elem_at(i)).collect())
    }

    /// All characters; `characters()[k]` has exponent vector `elem_at(k)`.
    pub fn characters(&self) -> Result<Vec<Character>, GroupError> {
        Ok(self.enumerate()?.into_iter().map(|e| Character { group: self.clone(), exps: e.coords }).collect())
    }

    /// Homomorphisms `self → target`, determined by generator images.
    pub fn homs(&self, target: &AbGroup) -> Result<Vec<Hom>, GroupError> {
        let tgt = target.enumerate()?;
        self.enumerate()?;
        let mut choices: Vec<Vec<GroupElem>> = Vec::new();
        for &n in &self.invariant_factors {
            choices.push(
                tgt.iter().filter(|y| target.scale(y, n as i64).unwrap() == target.identity()).cloned().collect(),
            );
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let images: Vec<GroupElem> = pick.iter().zip(&choices).map(|(k, c)| c[*k].clone()).collect();
            out.push(Hom::new(self.clone(), target.clone(), images));
            let mut i = choices.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// All automorphisms (brute force over generator images).
    pub fn automorphisms(&self) -> Result<Vec<Hom>, GroupError> {
        if self.order() > AUTOMORPHISM_BOUND {
            return Err(GroupError::TooLargeForAut(self.order()));
        }
        Ok(self.homs(self)?.into_iter().filter(|h| h.is_bijective()).collect())
    }
}

/// `a ↦ Π ζ_{n_i}^{exps[i]·a_i}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Character {
    pub group: AbGroup,
    pub exps: Vec<u64>,
}

impl Character {
    pub fn value(&self, a: &GroupElem) -> Root {
        self.group.invariant_factors.iter().zip(&self.exps).zip(&a.coords).fold(Root::ONE, |acc, ((n, e), c)| {
            acc.mul(Root::new((e * c % n) as i64, *n))
        })
    }

    pub fn value_idx(&self, i: usize) -> Root {
        self.value(&self.group.elem_at(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }
}

/// A homomorphism given by the images of the standard generators, with its
/// full index table cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Hom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub images: Vec<GroupElem>,
    #[serde(skip)]
    table: Vec<usize>,
}

impl Hom {
    pub fn new(source: AbGroup, target: AbGroup, images: Vec<GroupElem>) -> Hom {
        let table = (0..source.order() as usize)
            .map(|i| {
                let x = source.elem_at(i);
                let mut acc = target.identity();
                for (c, img) in x.coords.iter().zip(&images) {
                    acc = target.add(&acc, &target.scale(img, *c as i64).unwrap()).unwrap();
                }
                target.index(&acc)
            })
            .collect();
        Hom { source, target, images, table }
    }

    pub fn identity(group: &AbGroup) -> Hom {
        Hom::new(group.clone(), group.clone(), (0..group.rank()).map(|i| group.generator(i)).collect())
    }

    pub fn apply(&self, x: &GroupElem) -> Result<GroupElem, GroupError> {
        self.source.check(x)?;
        Ok(self.target.elem_at(self.table[self.source.index(x)]))
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Hom) -> Hom {
        let images = other.images.iter().map(|y| self.apply(y).unwrap()).collect();
        Hom::new(other.source.clone(), self.target.clone(), images)
    }
}
