//! Sparse univariate polynomials in `L` over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// A polynomial in `L` stored as `(exponent, coefficient)` pairs, ascending
/// by exponent, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(u64, Q)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn monomial(c: Q, exp: u64) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// `L^exp`.
    pub fn lpow(exp: u64) -> Self {
        Poly::monomial(Q::one(), exp)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (u64, Q)>>(it: I) -> Self {
        let mut acc: BTreeMap<u64, Q> = BTreeMap::new();
        for (e, c) in it {
            *acc.entry(e).or_insert_with(Q::zero) += c;
        }
        Poly::from_map(acc)
    }

    /// Dense constructor from ascending coefficients.
    pub fn from_coeffs<I: IntoIterator<Item = Q>>(coeffs: I) -> Self {
        Poly::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as u64, c)))
    }

    fn from_map(map: BTreeMap<u64, Q>) -> Self {
        Poly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(u64, Q)] {
        &self.terms
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: u64) -> Q {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Q> {
        match self.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `L^k`.
    pub fn shift_up(&self, k: u64) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divides by `L^k`; panics if some exponent is below `k`.
    pub fn shift_down(&self, k: u64) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(*e >= k, "shift_down below zero");
                    (e - k, c.clone())
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (k, c) = &other.terms[0];
            return self.scale(c).shift_up(*k);
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut acc: BTreeMap<u64, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlead_exp = divisor.degree().expect("division by zero polynomial");
        let dlead = divisor.leading_coeff().unwrap().clone();
        let mut rem: BTreeMap<u64, Q> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(u64, Q)> = Vec::new();
        while let Some((&e, c)) = rem.iter().next_back() {
            if e < dlead_exp {
                break;
            }
            let qc = c / &dlead;
            let qe = e - dlead_exp;
            for (de, dc) in &divisor.terms {
                let key = de + qe;
                let entry = rem.entry(key).or_insert_with(Q::zero);
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qe, qc));
        }
        quot.reverse();
        (Poly { terms: quot }, Poly::from_map(rem))
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&(Q::one() / c)),
        }
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        // L is prime: split off the power of L first so Euclid only sees the
        // L-free parts, which are usually small.
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        let mut x = a.shift_down(va).monic();
        let mut y = b.shift_down(vb).monic();
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.shift_up(va.min(vb))
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Gcd of numerators of the coefficients (assumes integer coefficients
    /// for a meaningful content).
    pub fn numerator_gcd(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
    }
}

fn write_coeff_abs(f: &mut fmt::Formatter<'_>, c: &Q, exp: u64) -> fmt::Result {
    let a = c.abs();
    let mono = match exp {
        0 => String::new(),
        1 => "L".to_string(),
        k => format!("L^{k}"),
    };
    if exp == 0 {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}*{mono}")
    }
}

/// Descending powers, e.g. `L^2 - 2*L + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_abs(f, c, *e)?;
        }
        Ok(())
    }
}
