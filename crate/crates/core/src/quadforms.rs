//! Bicharacters, quadratic forms and Gauss sums on finite abelian groups.
//!
//! Sign convention: a form `q` is *compatible* with `χ` when
//! `χ(a,b) = q(a)q(b)/q(a+b)`. The associated bilinear form
//! `w(a,b) = q(a+b)/(q(a)q(b))` is therefore `χ^{-1}`; both are available.

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbGroup, GroupError, Hom};
use crate::cyclotomic::{Coeff, Cyc, CycError, CycField, Root};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("generator matrix has shape {rows}x{cols}, expected {rank}x{rank}")]
    BadShape { rows: usize, cols: usize, rank: usize },
    #[error("χ(e_{i}, e_{j}) = {value} has order not dividing gcd(n_{i}, n_{j})")]
    NotBiadditive { i: usize, j: usize, value: Root },
    #[error("value table has {got} entries, group has {expected} elements")]
    BadTable { got: usize, expected: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// A bicharacter `A × A → μ`, given by its values on pairs of generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BicharacterRepr", into = "BicharacterRepr")]
pub struct Bicharacter {
    group: AbGroup,
    gens: Vec<Vec<Root>>,
    table: Vec<Root>,
}

#[derive(Serialize, Deserialize)]
struct BicharacterRepr {
    group: Vec<u64>,
    gens: Vec<Vec<Root>>,
}

impl TryFrom<BicharacterRepr> for Bicharacter {
    type Error = FormError;
    fn try_from(r: BicharacterRepr) -> Result<Self, FormError> {
        Bicharacter::new(&AbGroup::new(r.group)?, r.gens)
    }
}

impl From<Bicharacter> for BicharacterRepr {
    fn from(b: Bicharacter) -> Self {
        BicharacterRepr { group: b.group.invariant_factors().to_vec(), gens: b.gens }
    }
}

/// Result of [`Bicharacter::check`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct BicharacterFlags {
    pub symmetric: bool,
    pub nondegenerate: bool,
}

impl Bicharacter {
    pub fn new(group: &AbGroup, gens: Vec<Vec<Root>>) -> Result<Self, FormError> {
        let rank = group.rank();
        if gens.len() != rank || gens.iter().any(|r| r.len() != rank) {
            return Err(FormError::BadShape { rows: gens.len(), cols: gens.first().map_or(0, |r| r.len()), rank });
        }
        let f = group.invariant_factors();
        for i in 0..rank {
            for j in 0..rank {
                let v = gens[i][j];
                if !v.pow(f[i] as i64).is_one() || !v.pow(f[j] as i64).is_one() {
                    return Err(FormError::NotBiadditive { i, j, value: v });
                }
            }
        }
        let n = group.order() as usize;
        let elems = group.enumerate()?;
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                let mut acc = Root::ONE;
                for i in 0..rank {
                    for j in 0..rank {
                        acc = acc.mul(gens[i][j].pow((a.coords[i] * b.coords[j]) as i64));
                    }
                }
                table.push(acc);
            }
        }
        Ok(Bicharacter { group: group.clone(), gens, table })
    }

    /// `χ(e_i, e_j) = exp(2πi · num_ij / den_ij)`.
    pub fn from_turns(group: &AbGroup, turns: &[Vec<(i64, u64)>]) -> Result<Self, FormError> {
        let gens = turns.iter().map(|row| row.iter().map(|&(n, d)| Root::from_turn(n, d)).collect()).collect();
        Self::new(group, gens)
    }

    /// The bicharacter `(a,b) ↦ Π_i ζ_{n_i}^{a_i b_i}` (nondegenerate and symmetric).
    pub fn standard(group: &AbGroup) -> Self {
        let f = group.invariant_factors();
        let gens = (0..f.len())
            .map(|i| (0..f.len()).map(|j| if i == j { Root::new(1, f[i]) } else { Root::ONE }).collect())
            .collect();
        Self::new(group, gens).expect("standard pairing")
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn generator_matrix(&self) -> &[Vec<Root>] {
        &self.gens
    }

    /// `χ(a, b)` on element indices.
    pub fn eval(&self, a: usize, b: usize) -> Root {
        self.table[a * self.group.order() as usize + b]
    }

    pub fn check(&self) -> BicharacterFlags {
        let n = self.group.order() as usize;
        let symmetric = (0..n).all(|a| (0..n).all(|b| self.eval(a, b) == self.eval(b, a)));
        // a ↦ χ(a,−) injective iff only the identity pairs trivially with everything
        let nondegenerate = (1..n).all(|a| (0..n).any(|b| !self.eval(a, b).is_one()));
        BicharacterFlags { symmetric, nondegenerate }
    }

    /// A pair `(a, b)` witnessing asymmetry, or an `a ≠ 0` in the radical.
    pub fn defect_witness(&self) -> Option<(usize, Option<usize>)> {
        let n = self.group.order() as usize;
        for a in 0..n {
            for b in 0..n {
                if self.eval(a, b) != self.eval(b, a) {
                    return Some((a, Some(b)));
                }
            }
        }
        (1..n).find(|&a| (0..n).all(|b| self.eval(a, b).is_one())).map(|a| (a, None))
    }

    /// Bicharacter laws, checked exhaustively.
    pub fn is_biadditive(&self) -> bool {
        let g = &self.group;
        let n = g.order() as usize;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.eval(g.add_idx(a, b), c) == self.eval(a, c).mul(self.eval(b, c))
                        && self.eval(a, g.add_idx(b, c)) == self.eval(a, b).mul(self.eval(a, c))
                })
            })
        })
    }

    pub fn preserved_by(&self, f: &Hom) -> bool {
        let n = self.group.order() as usize;
        (0..n).all(|a| (0..n).all(|b| self.eval(f.apply_idx(a), f.apply_idx(b)) == self.eval(a, b)))
    }
}

/// A function `q: A → μ` with values indexed by element index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct QuadraticForm {
    group: AbGroup,
    values: Vec<Root>,
}

impl QuadraticForm {
    pub fn new(group: &AbGroup, values: Vec<Root>) -> Result<Self, FormError> {
        let n = group.order() as usize;
        if values.len() != n {
            return Err(FormError::BadTable { got: values.len(), expected: n });
        }
        Ok(QuadraticForm { group: group.clone(), values })
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn values(&self) -> &[Root] {
        &self.values
    }

    pub fn value(&self, a: usize) -> Root {
        self.values[a]
    }

    /// `w(a,b) = q(a+b) / (q(a) q(b))`.
    pub fn w(&self, a: usize, b: usize) -> Root {
        self.values[self.group.add_idx(a, b)].div(self.values[a].mul(self.values[b]))
    }

    /// `q(0) = 1`, `q(-a) = q(a)`, and `w` is a bicharacter.
    pub fn is_quadratic(&self) -> bool {
        let g = &self.group;
        let n = g.order() as usize;
        if !self.values[0].is_one() || (0..n).any(|a| self.values[g.neg_idx(a)] != self.values[a]) {
            return false;
        }
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.w(g.add_idx(a, b), c) == self.w(a, c).mul(self.w(b, c))))
        })
    }

    /// `χ(a,b) = q(a)q(b)/q(a+b)` for all `a, b`.
    pub fn compatible_with(&self, chi: &Bicharacter) -> bool {
        let n = self.group.order() as usize;
        chi.group == self.group && (0..n).all(|a| (0..n).all(|b| self.w(a, b).inv() == chi.eval(a, b)))
    }

    /// `a ↦ q(f(a))`.
    pub fn precompose(&self, f: &Hom) -> QuadraticForm {
        let values = (0..self.values.len()).map(|a| self.values[f.apply_idx(a)]).collect();
        QuadraticForm { group: self.group.clone(), values }
    }

    /// `Σ_a q(a)` in the given field.
    pub fn gauss_sum<T: Coeff>(&self, field: &Arc<CycField>) -> Result<Cyc<T>, FormError> {
        gauss_sum(self, field)
    }
}

/// All forms compatible with a symmetric `χ`. Generator values range over
/// `μ_{2·exp(A)}`; the rest of the table is forced by
/// `q(x + e_i) = q(x) q(e_i) / χ(x, e_i)` and then checked in full.
pub fn quadratic_forms_with(chi: &Bicharacter) -> Vec<QuadraticForm> {
    let g = chi.group();
    let n = g.order() as usize;
    let rank = g.rank();
    let m = 2 * g.exponent();
    let gen_idx: Vec<usize> = (0..rank).map(|i| g.index(&g.generator(i))).collect();
    let mut out = Vec::new();
    let mut pick = vec![0u64; rank];
    'outer: loop {
        let mut values = vec![None::<Root>; n];
        values[0] = Some(Root::ONE);
        for x in 1..n {
            // peel the last nonzero coordinate
            let coords = g.elem_at(x).coords;
            let i = (0..rank).rev().find(|&i| coords[i] != 0).unwrap();
            let y = g.sub_idx(x, gen_idx[i]);
            let qy = values[y].expect("lexicographic order visits x − e_i first");
            let qe = Root::new(pick[i] as i64, m);
            values[x] = Some(qy.mul(qe).div(chi.eval(y, gen_idx[i])));
        }
        let q = QuadraticForm { group: g.clone(), values: values.into_iter().map(Option::unwrap).collect() };
        if q.compatible_with(chi) && (0..n).all(|a| q.values[g.neg_idx(a)] == q.values[a]) {
            out.push(q);
        }
        let mut i = rank;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < m {
                break;
            }
            pick[i] = 0;
        }
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

/// `Σ_{a ∈ A} q(a)`.
pub fn gauss_sum<T: Coeff>(q: &QuadraticForm, field: &Arc<CycField>) -> Result<Cyc<T>, FormError> {
    let mut acc = Cyc::zero(field);
    for r in &q.values {
        acc = acc.try_add(&Cyc::from_root(field, *r)?)?;
    }
    Ok(acc)
}

/// Every symmetric nondegenerate bicharacter on `A`, enumerated through its
/// generator matrix (entries `χ(e_i, e_j) ∈ μ_{gcd(n_i, n_j)}`).
pub fn symmetric_nondegenerate(group: &AbGroup) -> Vec<Bicharacter> {
    let f = group.invariant_factors();
    let r = f.len();
    let slots: Vec<(usize, usize, u64)> =
        (0..r).flat_map(|i| (i..r).map(move |j| (i, j, f[i].gcd(&f[j])))).collect();
    let mut pick = vec![0u64; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut gens = vec![vec![Root::ONE; r]; r];
        for (&(i, j, d), &k) in slots.iter().zip(&pick) {
            gens[i][j] = Root::new(k as i64, d);
            gens[j][i] = gens[i][j];
        }
        let chi = Bicharacter::new(group, gens).expect("entries have admissible orders");
        if chi.check().nondegenerate {
            out.push(chi);
        }
        let mut s = 0;
        loop {
            if s == slots.len() {
                return out;
            }
            pick[s] += 1;
            if pick[s] < slots[s].2 {
                break;
            }
            pick[s] = 0;
            s += 1;
        }
    }
}

/// `Aut(A, χ)`: automorphisms `f` with `χ(f a, f b) = χ(a, b)`.
pub fn aut_preserving(chi: &Bicharacter) -> Result<Vec<Hom>, FormError> {
    Ok(chi.group().automorphisms()?.into_iter().filter(|f| chi.preserved_by(f)).collect())
}

/// Partition forms into orbits: `q ~ q'` iff `q'(f(a)) = q(a)` for some `f`.
/// Returns lists of indices into `forms`, each sorted, ordered by first member.
pub fn orbits(forms: &[QuadraticForm], auts: &[Hom]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; forms.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..forms.len() {
        if label[i] != usize::MAX {
            continue;
        }
        let k = out.len();
        let mut members = vec![i];
        label[i] = k;
        for f in auts {
            for j in 0..forms.len() {
                // q_j ∘ f = q_i  ⇔  q_j(f(a)) = q_i(a)
                if label[j] == usize::MAX && forms[j].precompose(f) == forms[i] {
                    label[j] = k;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn g(f: &[u64]) -> AbGroup {
        AbGroup::new(f.to_vec()).unwrap()
    }

    fn hyperbolic() -> Bicharacter {
        Bicharacter::new(&g(&[2, 2]), vec![vec![Root::ONE, Root::MINUS_ONE], vec![Root::MINUS_ONE, Root::ONE]]).unwrap()
    }

    fn z4_i() -> Bicharacter {
        Bicharacter::new(&g(&[4]), vec![vec![Root::new(1, 4)]]).unwrap()
    }

    /// Every function `A → μ_m`, filtered by the defining relations.
    fn forms_oracle(chi: &Bicharacter, m: u64) -> Vec<QuadraticForm> {
        let grp = chi.group();
        let n = grp.order() as usize;
        let mut out = Vec::new();
        for code in 0..(m as usize).pow(n as u32 - 1) {
            let mut values = vec![Root::ONE];
            values.extend((0..n - 1).map(|k| Root::new(((code / (m as usize).pow(k as u32)) % m as usize) as i64, m)));
            let q = QuadraticForm::new(grp, values).unwrap();
            if q.compatible_with(chi) && (0..n).all(|a| q.value(grp.neg_idx(a)) == q.value(a)) {
                out.push(q);
            }
        }
        out.sort_by(|a, b| a.values.cmp(&b.values));
        out
    }

    #[test]
    fn check_examples() {
        let ising = Bicharacter::new(&g(&[2]), vec![vec![Root::MINUS_ONE]]).unwrap();
        assert_eq!(ising.check(), BicharacterFlags { symmetric: true, nondegenerate: true });
        let triv = Bicharacter::new(&g(&[2]), vec![vec![Root::ONE]]).unwrap();
        assert_eq!(triv.check(), BicharacterFlags { symmetric: true, nondegenerate: false });
        assert_eq!(triv.defect_witness(), Some((1, None)));
        assert_eq!(z4_i().check(), BicharacterFlags { symmetric: true, nondegenerate: true });
        let asym = Bicharacter::new(&g(&[2, 2]), vec![vec![Root::ONE, Root::MINUS_ONE], vec![Root::ONE, Root::ONE]]).unwrap();
        assert!(!asym.check().symmetric);
        for chi in [ising, z4_i(), hyperbolic(), asym] {
            assert!(chi.is_biadditive());
        }
    }

    #[test]
    fn rejects_non_biadditive_generators() {
        let err = Bicharacter::new(&g(&[2, 4]), vec![vec![Root::ONE, Root::new(1, 4)], vec![Root::new(1, 4), Root::ONE]]);
        assert!(matches!(err, Err(FormError::NotBiadditive { .. })));
    }

    #[test]
    fn ising_forms() {
        let chi = Bicharacter::new(&g(&[2]), vec![vec![Root::MINUS_ONE]]).unwrap();
        let forms = quadratic_forms_with(&chi);
        let psi: Vec<Root> = forms.iter().map(|q| q.value(1)).collect();
        assert_eq!(psi, vec![Root::new(1, 4), Root::new(3, 4)]);
        let field = CycField::new(16).unwrap();
        let sums: Vec<Cyc<BigRational>> = forms.iter().map(|q| q.gauss_sum(&field).unwrap()).collect();
        let i = Cyc::root_of_unity(&field, 4, 1).unwrap();
        assert_eq!(sums[0], Cyc::one(&field).try_add(&i).unwrap());
        assert_eq!(sums[1], Cyc::one(&field).try_sub(&i).unwrap());
    }

    #[test]
    fn z4_forms() {
        let forms = quadratic_forms_with(&z4_i());
        assert_eq!(forms.len(), 2);
        assert!(forms.iter().all(|q| q.value(2) == Root::MINUS_ONE));
        assert_eq!(forms, forms_oracle(&z4_i(), 8));
    }

    #[test]
    fn hyperbolic_forms() {
        let forms = quadratic_forms_with(&hyperbolic());
        assert_eq!(forms.len(), 4);
        assert_eq!(forms, forms_oracle(&hyperbolic(), 4));
    }

    #[test]
    fn generator_propagation_matches_full_search() {
        for chi in [
            Bicharacter::standard(&g(&[3])),
            Bicharacter::from_turns(&g(&[3]), &[vec![(2, 3)]]).unwrap(),
            Bicharacter::standard(&g(&[2, 2])),
            Bicharacter::standard(&g(&[5])),
            Bicharacter::from_turns(&g(&[4]), &[vec![(3, 4)]]).unwrap(),
            Bicharacter::from_turns(&g(&[2, 2]), &[vec![(1, 2), (1, 2)], vec![(1, 2), (0, 1)]]).unwrap(),
        ] {
            let m = 2 * chi.group().exponent();
            assert_eq!(quadratic_forms_with(&chi), forms_oracle(&chi, m), "{:?}", chi.generator_matrix());
        }
    }

    #[test]
    fn form_invariants() {
        let field = CycField::new(48).unwrap();
        for chi in [
            z4_i(),
            hyperbolic(),
            Bicharacter::standard(&g(&[3])),
            Bicharacter::standard(&g(&[2, 4])),
            Bicharacter::standard(&g(&[6])),
            Bicharacter::standard(&g(&[2, 2, 2])),
        ] {
            let forms = quadratic_forms_with(&chi);
            assert!(!forms.is_empty());
            let n = chi.group().order() as usize;
            let nn = Cyc::<BigRational>::from_integer(&field, n as i64);
            for q in &forms {
                assert!(q.is_quadratic());
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(q.w(a, b), chi.eval(a, b).inv());
                    }
                }
                let s: Cyc<BigRational> = q.gauss_sum(&field).unwrap();
                assert_eq!(s.try_mul(&s.conj()).unwrap(), nn);
                assert_eq!(s.pow(8).unwrap(), nn.pow(4).unwrap());
                // two compatible forms differ by a character of order ≤ 2
                for q2 in &forms {
                    let ratio: Vec<Root> = (0..n).map(|a| q2.value(a).div(q.value(a))).collect();
                    for a in 0..n {
                        assert!(ratio[a].pow(2).is_one());
                        for b in 0..n {
                            assert_eq!(ratio[chi.group().add_idx(a, b)], ratio[a].mul(ratio[b]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_group_gauss_sum() {
        let field = CycField::new(16).unwrap();
        let q = QuadraticForm::new(&AbGroup::trivial(), vec![Root::ONE]).unwrap();
        assert!(q.gauss_sum::<BigRational>(&field).unwrap().is_one());
    }

    #[test]
    fn automorphisms_and_orbits() {
        let ising = Bicharacter::new(&g(&[2]), vec![vec![Root::MINUS_ONE]]).unwrap();
        assert_eq!(aut_preserving(&ising).unwrap().len(), 1);
        let forms = quadratic_forms_with(&ising);
        assert_eq!(orbits(&forms, &aut_preserving(&ising).unwrap()), vec![vec![0], vec![1]]);
        assert_eq!(orbits(&forms[..1], &[]), vec![vec![0]]);

        // every automorphism of F_2² preserves the hyperbolic pairing
        let auts = aut_preserving(&hyperbolic()).unwrap();
        assert_eq!(auts.len(), 6);
        let forms = quadratic_forms_with(&hyperbolic());
        let orbs = orbits(&forms, &auts);
        assert_eq!(orbs.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 1]);
        // the singleton orbit is the Arf-invariant-one form (q = -1 off zero)
        let lone = &forms[orbs.iter().find(|o| o.len() == 1).unwrap()[0]];
        assert!((1..4).all(|a| lone.value(a) == Root::MINUS_ONE));

        // negation preserves any bicharacter; on ℤ/4 that is all of Aut(ℤ/4)
        assert_eq!(aut_preserving(&z4_i()).unwrap().len(), 2);
    }

    #[test]
    fn serde_round_trip() {
        let chi = z4_i();
        let json = serde_json::to_string(&chi).unwrap();
        assert_eq!(json, r#"{"group":[4],"gens":[[{"order":4,"exp":1}]]}"#);
        let back: Bicharacter = serde_json::from_str(&json).unwrap();
        assert_eq!(back, chi);
    }
}
