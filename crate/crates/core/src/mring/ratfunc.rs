//! Reduced rational functions in `L` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, Q};

/// `numerator / denominator`, always reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunctionL {
    num: Poly,
    den: Poly,
}

impl RationalFunctionL {
    /// Reduces `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let lead = den.leading_coeff().unwrap().clone();
        let inv = Q::one() / lead;
        Some(RationalFunctionL {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RationalFunctionL {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RationalFunctionL {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(n)))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunctionL {
            num: p,
            den: Poly::one(),
        }
    }

    /// `L^k` for any integer `k`.
    pub fn lpow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::lpow(k as u64))
        } else {
            RationalFunctionL {
                num: Poly::one(),
                den: Poly::lpow(k.unsigned_abs()),
            }
        }
    }

    /// The Laurent polynomial `Σ c_e L^e`.
    pub fn from_laurent(coeffs: &BTreeMap<i64, Q>) -> Self {
        let Some((&min, _)) = coeffs.iter().find(|(_, c)| !c.is_zero()) else {
            return Self::zero();
        };
        let shift = if min < 0 { min.unsigned_abs() } else { 0 };
        let num = Poly::from_terms(
            coeffs
                .iter()
                .map(|(&e, c)| ((e + shift as i64) as u64, c.clone())),
        );
        Self::new(num, Poly::lpow(shift)).expect("monomial denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// `deg num − deg den`, or `None` for zero.
    pub fn l_degree(&self) -> Option<i64> {
        let n = self.num.degree()?;
        Some(n as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunctionL {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // cross-cancel so the product is reduced without a full gcd
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let num = self.num.exact_div(&g1).mul(&other.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&other.den.exact_div(&g1));
        let inv = Q::one() / den.leading_coeff().unwrap();
        RationalFunctionL {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunctionL {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `None` when `self` is zero.
    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Some(out)
    }

    /// Coefficients of `L^e` for `top ≥ e ≥ −precision` in the expansion at
    /// `L = ∞`, zero coefficients omitted.
    pub fn expand(&self, precision: u64) -> BTreeMap<i64, Q> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        // num·L^D / den = Q + R/den with deg R < deg den, so the quotient holds
        // every coefficient down to L^{-D}.
        let (quot, _) = self.num.shift_up(precision).div_rem(&self.den);
        for (e, c) in quot.terms() {
            out.insert(*e as i64 - precision as i64, c.clone());
        }
        out
    }

    /// Integer-normalized `(numerator, denominator)` sharing no common content,
    /// denominator leading coefficient positive.
    pub fn integer_normalized(&self) -> (Poly, Poly) {
        let l = num_integer::lcm(self.num.denominator_lcm(), self.den.denominator_lcm());
        let scale = Q::from_integer(l);
        let n = self.num.scale(&scale);
        let d = self.den.scale(&scale);
        let g = num_integer::gcd(n.numerator_gcd(), d.numerator_gcd());
        let g = if g.is_zero() { BigInt::one() } else { g.abs() };
        let inv = Q::new(BigInt::one(), g);
        (n.scale(&inv), d.scale(&inv))
    }
}

fn is_plain_integer(p: &Poly) -> bool {
    p.as_constant().is_some()
}

/// `num` alone, `num/den`, with polynomial parts parenthesized:
/// `1`, `1/2`, `(L)/(L + 1)`.
impl fmt::Display for RationalFunctionL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (n, d) = self.integer_normalized();
        if is_plain_integer(&n) {
            write!(f, "{n}")?;
        } else {
            write!(f, "({n})")?;
        }
        if !d.is_one() {
            if is_plain_integer(&d) {
                write!(f, "/{d}")?;
            } else {
                write!(f, "/({d})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| q(c)))
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunctionL {
        RationalFunctionL::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        // (2L^2 - 2)/(4L + 4) = (L - 1)/2
        let a = rf(&[-2, 0, 2], &[4, 4]);
        assert_eq!(a, RationalFunctionL::from_poly(p(&[-1, 1]).scale(&Q::new(1.into(), 2.into()))));
        assert!(a.denominator().is_one());
        assert_eq!(RationalFunctionL::new(Poly::zero(), p(&[3, 1])).unwrap(), RationalFunctionL::zero());
        assert!(RationalFunctionL::new(p(&[1]), Poly::zero()).is_none());
    }

    #[test]
    fn sum_collapses_to_one() {
        let a = rf(&[0, 1], &[1, 1]).add(&rf(&[1], &[1, 1]));
        assert!(a.is_one());
    }

    #[test]
    fn laurent_monomials() {
        let x = RationalFunctionL::lpow(-2).mul(&RationalFunctionL::lpow(3));
        assert_eq!(x, RationalFunctionL::lpow(1));
        assert_eq!(RationalFunctionL::lpow(-2).l_degree(), Some(-2));
        let mut m = BTreeMap::new();
        m.insert(-3, q(2));
        m.insert(1, q(1));
        let r = RationalFunctionL::from_laurent(&m);
        assert_eq!(r, rf(&[2, 0, 0, 0, 1], &[0, 0, 0, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RationalFunctionL::one().to_string(), "1");
        assert_eq!(RationalFunctionL::constant(Q::new(1.into(), 2.into())).to_string(), "1/2");
        assert_eq!(rf(&[0, 1], &[1, 1]).to_string(), "(L)/(L + 1)");
        assert_eq!(RationalFunctionL::constant(Q::new((-3).into(), 4.into())).to_string(), "-3/4");
        let half_l = RationalFunctionL::from_poly(p(&[1, 1]).scale(&Q::new(1.into(), 2.into())));
        assert_eq!(half_l.to_string(), "(L + 1)/2");
    }
}
