//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial `Φ_N`, so equality is coefficient-wise. The
//! coefficient type is generic over any exact rational type implementing
//! [`Coeff`].
//!
//! Two auxiliary representations keep the categorical engines fast:
//! [`Root`] is an exact root of unity (an element of `Q/Z`), and [`RootSum`]
//! is an unreduced linear combination of roots that is only reduced to the
//! power basis when an equality cannot be decided syntactically.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational coefficient type usable in a cyclotomic field.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor mismatch: {0} vs {1}; lift both operands to a common conductor first")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity of order {order} does not lie in Q(ζ_{conductor}); lift to a conductor divisible by {order}")]
    RootNotInField { order: u64, conductor: u64 },
    #[error("conductor {conductor} too small: need a multiple of {required}")]
    ConductorTooSmall { conductor: u64, required: u64 },
    #[error("cannot lift from conductor {from} to {to}: {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("element is not a root of unity of order at most {0}")]
    NotRootOfUnity(u64),
    #[error("invalid coefficient literal {0:?}")]
    BadLiteral(String),
    #[error("expected {expected} coefficients, got {got}")]
    BadLength { expected: usize, got: usize },
}

// ---------------------------------------------------------------------------
// Roots of unity

/// The root of unity `exp(2πi · exp/order)`, kept as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    order: u64,
    exp: u64,
}

impl Root {
    pub const ONE: Root = Root { order: 1, exp: 0 };
    pub const MINUS_ONE: Root = Root { order: 2, exp: 1 };

    /// `ζ_order^exp`.
    pub fn new(exp: i64, order: u64) -> Root {
        assert!(order > 0, "root of unity of order zero");
        let e = exp.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        Root { order: order / g, exp: e / g }
    }

    /// Root given by a rational turn `num/den` (taken mod 1).
    pub fn from_turn(num: i64, den: u64) -> Root {
        Root::new(num, den)
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.order
    }

    /// Numerator of the reduced turn; the root is `ζ_order^exp`.
    pub fn exp(self) -> u64 {
        self.exp
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    pub fn mul(self, other: Root) -> Root {
        let l = self.order.lcm(&other.order);
        let e = self.exp * (l / self.order) + other.exp * (l / other.order);
        Root::new((e % l) as i64, l)
    }

    pub fn div(self, other: Root) -> Root {
        self.mul(other.inv())
    }

    pub fn inv(self) -> Root {
        Root::new(-(self.exp as i64), self.order)
    }

    pub fn pow(self, k: i64) -> Root {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        Root::new(e as i64, self.order)
    }

    /// Exponent of this root as a power of `ζ_n`, if `order | n`.
    pub fn exponent_mod(self, n: u64) -> Option<u64> {
        (n % self.order == 0).then(|| self.exp * (n / self.order))
    }

    /// Both square roots, as an unordered pair `(r, -r)`.
    pub fn square_roots(self) -> [Root; 2] {
        let r = Root::new(self.exp as i64, 2 * self.order);
        [r, r.mul(Root::MINUS_ONE)]
    }

    /// Recognize a field element as a root of unity.
    pub fn from_cyc<T: Coeff>(x: &Cyc<T>) -> Result<Root, CycError> {
        let f = &x.field;
        for k in 0..f.root_group_order() {
            let r = Root::new(k as i64, f.root_group_order());
            let v = f.root_vec(r).expect("root of the field");
            if v.iter().zip(&x.coeffs).all(|(a, c)| T::from_i64(*a).unwrap() == *c) {
                return Ok(r);
            }
        }
        Err(CycError::NotRootOfUnity(f.root_group_order()))
    }

    /// Complex embedding for display purposes only.
    pub fn to_complex(self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.exp as f64 / self.order as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (n, 1) => write!(f, "ζ{n}"),
            (n, e) => write!(f, "ζ{n}^{e}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Fields

/// The field `Q(ζ_N)` together with a table of reduced root powers.
#[derive(Debug)]
pub struct CycField {
    conductor: u64,
    minimal_poly: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycField {
    pub fn new(conductor: u64) -> Result<Arc<CycField>, CycError> {
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        let minimal_poly = cyclotomic_poly(conductor);
        let deg = minimal_poly.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by ζ and reduce the overflow with the monic Φ_N
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1] - top * minimal_poly[i];
            }
            cur[0] = -top * minimal_poly[0];
        }
        Ok(Arc::new(CycField { conductor, minimal_poly, powers }))
    }

    /// Conductor policy for a group of the given order and exponent.
    pub fn conductor_for_group(order: u64, exponent: u64) -> u64 {
        16u64.lcm(&(4 * order)).lcm(&(2 * exponent.max(1)))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.len() - 1
    }

    /// Coefficients of `Φ_N`, constant term first.
    pub fn minimal_poly(&self) -> &[i64] {
        &self.minimal_poly
    }

    /// Order of the group of roots of unity in the field, `lcm(2, N)`.
    pub fn root_group_order(&self) -> u64 {
        self.conductor.lcm(&2)
    }

    pub fn contains_root(&self, r: Root) -> bool {
        self.root_group_order() % r.order() == 0
    }

    /// Power-basis vector of a root of unity.
    pub fn root_vec(&self, r: Root) -> Result<std::borrow::Cow<'_, [i64]>, CycError> {
        let n = self.conductor;
        if let Some(k) = r.exponent_mod(n) {
            return Ok(std::borrow::Cow::Borrowed(&self.powers[k as usize]));
        }
        if self.contains_root(r) {
            // odd conductor: ζ_{2N}^j = -ζ_N^{(j+N)/2} for odd j
            let j = r.exponent_mod(2 * n).unwrap();
            let k = ((j + n) / 2) % n;
            return Ok(std::borrow::Cow::Owned(self.powers[k as usize].iter().map(|c| -c).collect()));
        }
        Err(CycError::RootNotInField { order: r.order(), conductor: n })
    }

    fn reduce<T: Coeff>(&self, mut poly: Vec<T>) -> Vec<T> {
        let deg = self.degree();
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], T::zero());
            if c.is_zero() {
                continue;
            }
            for (j, p) in self.minimal_poly[..deg].iter().enumerate() {
                if *p != 0 {
                    let t = c.clone() * T::from_i64(*p).unwrap();
                    poly[i - deg + j] = poly[i - deg + j].clone() - t;
                }
            }
        }
        poly.truncate(deg);
        poly.resize(deg, T::zero());
        poly
    }
}

/// `Φ_n` by exact division of `x^n - 1` by `Φ_d` for proper divisors `d`.
fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "inexact cyclotomic division");
    quot
}

// ---------------------------------------------------------------------------
// Field elements

/// An element of `Q(ζ_N)` in canonical power-basis form.
#[derive(Clone)]
pub struct Cyc<T> {
    field: Arc<CycField>,
    coeffs: Vec<T>,
}

impl<T: Coeff> PartialEq for Cyc<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl<T: Coeff> fmt::Debug for Cyc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coeff> fmt::Display for Cyc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.field.conductor)?,
                _ => write!(f, "({c})ζ{}^{i}", self.field.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Coeff> Cyc<T> {
    pub fn zero(field: &Arc<CycField>) -> Self {
        Cyc { field: field.clone(), coeffs: vec![T::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, T::one())
    }

    pub fn from_rational(field: &Arc<CycField>, c: T) -> Self {
        let mut x = Self::zero(field);
        x.coeffs[0] = c;
        x
    }

    pub fn from_integer(field: &Arc<CycField>, n: i64) -> Self {
        Self::from_rational(field, T::from_i64(n).unwrap())
    }

    /// `ζ_order^exponent`.
    pub fn root_of_unity(field: &Arc<CycField>, order: u64, exponent: i64) -> Result<Self, CycError> {
        if order == 0 || field.conductor % order != 0 {
            return Err(CycError::RootNotInField { order, conductor: field.conductor });
        }
        Self::from_root(field, Root::new(exponent, order))
    }

    pub fn from_root(field: &Arc<CycField>, r: Root) -> Result<Self, CycError> {
        let v = field.root_vec(r)?;
        Ok(Cyc { field: field.clone(), coeffs: v.iter().map(|a| T::from_i64(*a).unwrap()).collect() })
    }

    /// Build from canonical coefficients.
    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<T>) -> Result<Self, CycError> {
        if coeffs.len() != field.degree() {
            return Err(CycError::BadLength { expected: field.degree(), got: coeffs.len() });
        }
        Ok(Cyc { field: field.clone(), coeffs })
    }

    /// Parse coefficient literals such as `"-3/4"`.
    pub fn from_literals(field: &Arc<CycField>, lits: &[String]) -> Result<Self, CycError> {
        let coeffs = lits
            .iter()
            .map(|s| {
                let t = s.trim();
                let full = if t.contains('/') { t.to_string() } else { format!("{t}/1") };
                T::from_str_radix(&full, 10).map_err(|_| CycError::BadLiteral(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&T> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    fn check_same(&self, other: &Self) -> Result<(), CycError> {
        if self.field.conductor != other.field.conductor {
            return Err(CycError::ConductorMismatch(self.field.conductor, other.field.conductor));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Cyc { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Cyc { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        let deg = self.field.degree();
        let mut prod = vec![T::zero(); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Cyc { field: self.field.clone(), coeffs: self.field.reduce(prod) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycError> {
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        Cyc { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyc { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Multiplicative inverse, by solving `x · y = 1` in the power basis.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let deg = self.field.degree();
        // column j of the multiplication matrix is x·ζ^j
        let mut cols = Vec::with_capacity(deg);
        for j in 0..deg {
            let z = Cyc::<T>::from_root(&self.field, Root::new(j as i64, self.field.conductor))?;
            cols.push(self.try_mul(&z)?.coeffs);
        }
        let mut m: Vec<Vec<T>> = (0..deg).map(|i| (0..deg).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![T::zero(); deg];
        rhs[0] = T::one();
        let y = solve_dense(&mut m, &mut rhs).ok_or(CycError::DivisionByZero)?;
        let mut acc = Cyc::zero(&self.field);
        for (j, c) in y.into_iter().enumerate() {
            if !c.is_zero() {
                let z = Cyc::<T>::from_root(&self.field, Root::new(j as i64, self.field.conductor))?;
                acc = acc.try_add(&z.scale(&c))?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyc::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Galois automorphism `ζ ↦ ζ^{-1}` (complex conjugation).
    pub fn conj(&self) -> Self {
        let n = self.field.conductor;
        let mut acc = vec![T::zero(); self.field.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = self.field.root_vec(Root::new(-(i as i64), n)).unwrap();
            for (a, p) in acc.iter_mut().zip(v.iter()) {
                if *p != 0 {
                    *a = a.clone() + c.clone() * T::from_i64(*p).unwrap();
                }
            }
        }
        Cyc { field: self.field.clone(), coeffs: acc }
    }

    /// Image under `Q(ζ_N) ⊆ Q(ζ_M)`.
    pub fn lift(&self, target: &Arc<CycField>) -> Result<Self, CycError> {
        let (n, m) = (self.field.conductor, target.conductor);
        if m % n != 0 {
            return Err(CycError::NotDivisible { from: n, to: m });
        }
        let mut acc = vec![T::zero(); target.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = target.root_vec(Root::new(i as i64, n))?;
            for (a, p) in acc.iter_mut().zip(v.iter()) {
                if *p != 0 {
                    *a = a.clone() + c.clone() * T::from_i64(*p).unwrap();
                }
            }
        }
        Ok(Cyc { field: target.clone(), coeffs: acc })
    }

    /// Complex embedding `ζ_N ↦ e^{2πi/N}`, for display only.
    pub fn to_complex(&self) -> (f64, f64)
    where
        T: num_traits::ToPrimitive,
    {
        let n = self.field.conductor as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Serializable form `{conductor, coeffs: ["p/q", ...]}`.
    pub fn to_repr(&self) -> CycRepr {
        CycRepr { conductor: self.field.conductor, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

/// Wire format of a field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRepr {
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

impl<T: Coeff> Serialize for Cyc<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<T: Coeff> $tr<&Cyc<T>> for &Cyc<T> {
            type Output = Cyc<T>;
            /// Panics on a conductor mismatch; use the `try_` variant to handle it.
            fn $m(self, rhs: &Cyc<T>) -> Cyc<T> {
                self.$try(rhs).expect("cyclotomic operands in different fields")
            }
        }
        impl<T: Coeff> $tr for Cyc<T> {
            type Output = Cyc<T>;
            fn $m(self, rhs: Cyc<T>) -> Cyc<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<T: Coeff> Neg for &Cyc<T> {
    type Output = Cyc<T>;
    fn neg(self) -> Cyc<T> {
        Cyc::neg(self)
    }
}

impl<T: Coeff> Neg for Cyc<T> {
    type Output = Cyc<T>;
    fn neg(self) -> Cyc<T> {
        Cyc::neg(&self)
    }
}

/// Gaussian elimination over an exact field; `None` if singular.
fn solve_dense<T: Coeff>(m: &mut [Vec<T>], rhs: &mut [T]) -> Option<Vec<T>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        for j in col..n {
            m[col][j] = m[col][j].clone() / p.clone();
        }
        rhs[col] = rhs[col].clone() / p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n {
                    let t = f.clone() * m[col][j].clone();
                    m[r][j] = m[r][j].clone() - t;
                }
                rhs[r] = rhs[r].clone() - f * rhs[col].clone();
            }
        }
    }
    Some(rhs.to_vec())
}

// ---------------------------------------------------------------------------
// Named constructions

/// The positive square root of `n`, via the quadratic Gauss sum
/// `Σ_{x mod 4n} ζ_{4n}^{x²} = (1+i)·2√n`.
pub fn sqrt_of_natural<T: Coeff>(field: &Arc<CycField>, n: u64) -> Result<Cyc<T>, CycError> {
    assert!(n > 0, "square root of zero requested");
    let c = field.conductor;
    if c % (4 * n) != 0 {
        return Err(CycError::ConductorTooSmall { conductor: c, required: 4 * n });
    }
    let mut g = vec![0i64; field.degree()];
    for x in 0..4 * n {
        let v = field.root_vec(Root::new(((x * x) % (4 * n)) as i64, 4 * n))?;
        for (a, p) in g.iter_mut().zip(v.iter()) {
            *a += p;
        }
    }
    let gauss = Cyc::<T>::from_coeffs(field, g.into_iter().map(|a| T::from_i64(a).unwrap()).collect())?;
    // √n = G·(1 - i)/4
    let one_minus_i = Cyc::one(field).try_sub(&Cyc::root_of_unity(field, 4, 1)?)?;
    let s = gauss.try_mul(&one_minus_i)?.scale(&(T::one() / T::from_u64(4).unwrap()));
    if s.try_mul(&s)? != Cyc::from_integer(field, n as i64) {
        unreachable!("Gauss sum square root failed verification");
    }
    Ok(s)
}

/// All roots of unity `u` in the field with `u² = z`; `z` must be a root of
/// unity of order at most `max_order`.
pub fn square_roots_unitary<T: Coeff>(z: &Cyc<T>, max_order: u64) -> Result<Vec<Cyc<T>>, CycError> {
    let r = Root::from_cyc(z).map_err(|_| CycError::NotRootOfUnity(max_order))?;
    if r.order() > max_order {
        return Err(CycError::NotRootOfUnity(max_order));
    }
    let mut out = Vec::new();
    for u in r.square_roots() {
        if z.field.contains_root(u) {
            out.push(Cyc::from_root(&z.field, u)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Sums of roots of unity

/// A finite linear combination `Σ c_i · ρ_i` of roots of unity.
///
/// Roots are normalized into the half-turn `[0, 1/2)` (absorbing `-1` into the
/// coefficient) and merged, so sums with at most two terms are canonical.
/// Longer sums are compared after reduction into a concrete field.
#[derive(Clone, PartialEq, Debug)]
pub struct RootSum<T> {
    terms: Vec<(Root, T)>,
}

impl<T: Coeff> RootSum<T> {
    pub fn zero() -> Self {
        RootSum { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::root(Root::ONE)
    }

    pub fn root(r: Root) -> Self {
        Self::from_terms(vec![(r, T::one())])
    }

    pub fn scaled_root(c: T, r: Root) -> Self {
        Self::from_terms(vec![(r, c)])
    }

    pub fn from_cyc(x: &Cyc<T>) -> Self {
        let n = x.field.conductor;
        Self::from_terms(
            x.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Root::new(i as i64, n), c.clone()))
                .collect(),
        )
    }

    fn from_terms(mut raw: Vec<(Root, T)>) -> Self {
        for (r, c) in raw.iter_mut() {
            if 2 * r.exp >= r.order {
                *r = r.mul(Root::MINUS_ONE);
                *c = -c.clone();
            }
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Root, T)> = Vec::with_capacity(raw.len());
        for (r, c) in raw {
            match terms.last_mut() {
                Some((lr, lc)) if *lr == r => *lc = lc.clone() + c,
                _ => terms.push((r, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        RootSum { terms }
    }

    pub fn terms(&self) -> &[(Root, T)] {
        &self.terms
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The root `ρ` if this is exactly `ρ`.
    pub fn as_root(&self) -> Option<Root> {
        match self.terms.as_slice() {
            [(r, c)] if c.is_one() => Some(*r),
            [(r, c)] if (-c.clone()).is_one() => Some(r.mul(Root::MINUS_ONE)),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.terms.is_empty() {
            return self.clone();
        }
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        Self::from_terms(raw)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RootSum { terms: self.terms.iter().map(|(r, c)| (*r, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (r1, c1) in &self.terms {
            for (r2, c2) in &other.terms {
                raw.push((r1.mul(*r2), c1.clone() * c2.clone()));
            }
        }
        Self::from_terms(raw)
    }

    pub fn mul_root(&self, r: Root) -> Self {
        if r.is_one() {
            return self.clone();
        }
        Self::from_terms(self.terms.iter().map(|(s, c)| (s.mul(r), c.clone())).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(r, a)| (*r, a.clone() * c.clone())).collect())
    }

    /// Canonical form in the given field.
    pub fn to_cyc(&self, field: &Arc<CycField>) -> Result<Cyc<T>, CycError> {
        let mut acc = vec![T::zero(); field.degree()];
        for (r, c) in &self.terms {
            let v = field.root_vec(*r)?;
            for (a, p) in acc.iter_mut().zip(v.iter()) {
                if *p != 0 {
                    *a = a.clone() + c.clone() * T::from_i64(*p).unwrap();
                }
            }
        }
        Cyc::from_coeffs(field, acc)
    }

    pub fn is_zero_in(&self, field: &Arc<CycField>) -> Result<bool, CycError> {
        match self.terms.len() {
            0 => Ok(true),
            // distinct roots in a half-turn are linearly independent in pairs
            1 | 2 => Ok(false),
            _ => Ok(self.to_cyc(field)?.is_zero()),
        }
    }

    pub fn eq_in(&self, other: &Self, field: &Arc<CycField>) -> Result<bool, CycError> {
        if self == other {
            return Ok(true);
        }
        self.sub(other).is_zero_in(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    type C = Cyc<BigRational>;

    fn field(n: u64) -> Arc<CycField> {
        CycField::new(n).unwrap()
    }

    #[test]
    fn minimal_polys() {
        assert_eq!(field(1).minimal_poly(), &[-1, 1]);
        assert_eq!(field(4).minimal_poly(), &[1, 0, 1]);
        assert_eq!(field(6).minimal_poly(), &[1, -1, 1]);
        assert_eq!(field(8).minimal_poly(), &[1, 0, 0, 0, 1]);
        for n in 1..=60u64 {
            let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(field(n).degree(), phi, "degree of Φ_{n}");
        }
    }

    #[test]
    fn trivial_examples() {
        let f = field(8);
        let i = C::root_of_unity(&f, 4, 1).unwrap();
        assert_eq!(&i * &i, C::from_integer(&f, -1));
        let z8 = C::root_of_unity(&f, 8, 1).unwrap();
        assert_eq!(z8.inv().unwrap(), C::root_of_unity(&f, 8, 7).unwrap());
        assert_eq!(C::root_of_unity(&f, 8, 2).unwrap(), i);
        assert_eq!(C::root_of_unity(&f, 2, 1).unwrap(), C::from_integer(&f, -1));
        assert!(C::root_of_unity(&f, 8, 8).unwrap().is_one());
        let f6 = field(6);
        assert_eq!(C::root_of_unity(&f6, 6, 3).unwrap(), C::from_integer(&f6, -1));
    }

    #[test]
    fn errors() {
        let f = field(8);
        assert_eq!(C::zero(&f).inv().unwrap_err(), CycError::DivisionByZero);
        assert!(matches!(C::root_of_unity(&f, 3, 1), Err(CycError::RootNotInField { .. })));
        let g = field(12);
        assert!(matches!(C::one(&f).try_add(&C::one(&g)), Err(CycError::ConductorMismatch(8, 12))));
        assert!(matches!(C::one(&g).lift(&f), Err(CycError::NotDivisible { .. })));
        assert!(matches!(sqrt_of_natural::<BigRational>(&f, 3), Err(CycError::ConductorTooSmall { required: 12, .. })));
    }

    #[test]
    fn sqrt_examples() {
        let f = field(8);
        let s = sqrt_of_natural::<BigRational>(&f, 2).unwrap();
        let z = C::root_of_unity(&f, 8, 1).unwrap();
        assert_eq!(s, &z + &z.inv().unwrap());
        assert!(sqrt_of_natural::<BigRational>(&f, 1).unwrap().is_one());
        assert_eq!(sqrt_of_natural::<BigRational>(&field(16), 4).unwrap(), C::from_integer(&field(16), 2));
        for n in 1..=64u64 {
            let f = field(4 * n);
            let s = sqrt_of_natural::<BigRational>(&f, n).unwrap();
            assert_eq!(&s * &s, C::from_integer(&f, n as i64));
            assert!(s.to_complex().0 > 0.0);
        }
    }

    #[test]
    fn square_roots() {
        let f = field(16);
        let roots = square_roots_unitary(&C::one(&f), 32).unwrap();
        assert_eq!(roots, vec![C::one(&f), C::from_integer(&f, -1)]);
        let minus = square_roots_unitary(&C::from_integer(&f, -1), 32).unwrap();
        let i = C::root_of_unity(&f, 4, 1).unwrap();
        assert_eq!(minus, vec![i.clone(), -&i]);
        let z8 = C::root_of_unity(&f, 8, 1).unwrap();
        let r = square_roots_unitary(&z8, 32).unwrap();
        // oracle: scan μ_16 directly
        let expected: Vec<C> =
            (0..16).map(|k| C::root_of_unity(&f, 16, k).unwrap()).filter(|u| &(u * u) == &z8).collect();
        assert_eq!(r.len(), 2);
        assert!(expected.iter().all(|u| r.contains(u)));
        assert_eq!(r[0], -&r[1]);
        // outside the field: no roots
        assert!(square_roots_unitary(&C::root_of_unity(&field(8), 8, 1).unwrap(), 32).unwrap().is_empty());
        // not a root of unity
        assert!(square_roots_unitary(&C::from_integer(&f, 2), 32).is_err());
    }

    #[test]
    fn lift_examples() {
        let f2 = field(2);
        let f4 = field(4);
        let f8 = field(8);
        assert_eq!(C::from_integer(&f2, -1).lift(&f8).unwrap(), C::from_integer(&f8, -1));
        assert_eq!(C::root_of_unity(&f4, 4, 1).unwrap().lift(&f8).unwrap(), C::root_of_unity(&f8, 8, 2).unwrap());
    }

    #[test]
    fn conj_of_roots() {
        let f = field(24);
        for k in 0..24 {
            let z = C::root_of_unity(&f, 24, k).unwrap();
            assert!((&z.conj() * &z).is_one());
        }
        let f = field(15);
        for k in 0..30 {
            let z = C::from_root(&f, Root::new(k, 30)).unwrap();
            assert!((&z.conj() * &z).is_one(), "ζ30^{k}");
        }
    }

    #[test]
    fn root_of_unity_orders() {
        let f = field(24);
        for d in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            for k in -5..30 {
                assert!(C::root_of_unity(&f, d, k).unwrap().pow(d as i64).unwrap().is_one());
            }
        }
    }

    #[test]
    fn root_recognition() {
        let f = field(20);
        for k in 0..20 {
            let r = Root::new(k, 20);
            assert_eq!(Root::from_cyc(&C::from_root(&f, r).unwrap()).unwrap(), r);
        }
        assert!(Root::from_cyc(&C::from_integer(&f, 3)).is_err());
    }

    #[test]
    fn rootsum_agrees_with_field() {
        let f = field(12);
        let a = RootSum::<BigRational>::root(Root::new(1, 12)).add(&RootSum::root(Root::new(5, 6)));
        let b = RootSum::root(Root::new(1, 3)).scale(&BigRational::from_integer(3.into()));
        let prod = a.mul(&b);
        let direct = &a.to_cyc(&f).unwrap() * &b.to_cyc(&f).unwrap();
        assert_eq!(prod.to_cyc(&f).unwrap(), direct);
        // 1 + ω + ω² = 0 is only visible after reduction
        let s = RootSum::<BigRational>::one().add(&RootSum::root(Root::new(1, 3))).add(&RootSum::root(Root::new(2, 3)));
        assert!(!s.is_syntactically_zero());
        assert!(s.is_zero_in(&f).unwrap());
        assert_eq!(RootSum::<BigRational>::root(Root::new(3, 4)).as_root(), Some(Root::new(3, 4)));
    }

    #[test]
    fn generic_small_rationals() {
        let f = field(16);
        let s = sqrt_of_natural::<Rational64>(&f, 2).unwrap();
        assert_eq!(s.try_mul(&s).unwrap(), Cyc::<Rational64>::from_integer(&f, 2));
        let x = Cyc::<Rational64>::root_of_unity(&f, 16, 3).unwrap().try_add(&s).unwrap();
        assert!(x.try_mul(&x.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn serialization() {
        let f = field(4);
        let i = C::root_of_unity(&f, 4, 1).unwrap().scale(&BigRational::new(3.into(), 4.into()));
        let j = serde_json::to_string(&i).unwrap();
        assert_eq!(j, r#"{"conductor":4,"coeffs":["0","3/4"]}"#);
        let back: CycRepr = serde_json::from_str(&j).unwrap();
        assert_eq!(C::from_literals(&f, &back.coeffs).unwrap(), i);
        assert_eq!(serde_json::to_string(&Root::new(3, 8)).unwrap(), r#"{"order":8,"exp":3}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(f: Arc<CycField>) -> impl Strategy<Value = C> {
            let d = f.degree();
            proptest::collection::vec((-6i64..6, 1i64..5), d).prop_map(move |v| {
                C::from_coeffs(&f, v.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect()).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn field_axioms(x in elem(CycField::new(12).unwrap()), y in elem(CycField::new(12).unwrap()), z in elem(CycField::new(12).unwrap())) {
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&x * &y, &y * &x);
                if !x.is_zero() {
                    prop_assert!((&x * &x.inv().unwrap()).is_one());
                }
                prop_assert_eq!(x.conj().conj(), x.clone());
            }

            #[test]
            fn lift_commutes(x in elem(CycField::new(6).unwrap()), y in elem(CycField::new(6).unwrap())) {
                let big = CycField::new(24).unwrap();
                prop_assert_eq!((&x * &y).lift(&big).unwrap(), &x.lift(&big).unwrap() * &y.lift(&big).unwrap());
                prop_assert_eq!((&x + &y).lift(&big).unwrap(), &x.lift(&big).unwrap() + &y.lift(&big).unwrap());
            }

            #[test]
            fn lift_matches_direct_roots(k in 0i64..8) {
                let small = CycField::new(8).unwrap();
                let big = CycField::new(40).unwrap();
                prop_assert_eq!(C::root_of_unity(&small, 8, k).unwrap().lift(&big).unwrap(), C::root_of_unity(&big, 8, k).unwrap());
            }
        }
    }
}
