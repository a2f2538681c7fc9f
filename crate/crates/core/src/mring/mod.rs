//! Exact arithmetic in the free `Q(L)`-module on curve-class symbols.
//!
//! This is the part of `M_C ⊗ Q` generated by `L`, `L^{-1}`, the inverses
//! `(1 − L^{-i})^{-1}` and free curve classes. Coefficients are reduced
//! rational functions in `L`; comparison in the `L`-degree topology goes
//! through [`MotivicClass::expand`].

mod class;
mod parse;
pub mod poly;
mod ratfunc;

pub use class::{geometric_factor, ClassSymbol, LaurentTruncation, MotivicClass, TruncationEntry};
pub use parse::parse_class;
pub use poly::{Poly, Q};
pub use ratfunc::RationalFunctionL;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MringError {
    #[error("product of curve symbols {left} and {right} is not supported")]
    SymbolProductUnsupported { left: String, right: String },
    #[error("geometric factor index must be >= 1, got {0}")]
    InvalidIndex(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunctionL {
        let p = |c: &[i64]| Poly::from_coeffs(c.iter().map(|&x| Q::from_integer(x.into())));
        RationalFunctionL::new(p(num), p(den)).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        let a = MotivicClass::scalar(rf(&[0, 1], &[1, 1]));
        let b = MotivicClass::scalar(rf(&[1], &[1, 1]));
        assert_eq!(a.add(&b), MotivicClass::one());
        assert_eq!(a.add(&MotivicClass::zero()), a);
        let e = MotivicClass::curve("E");
        assert!(e.add(&e.neg()).is_zero());
    }

    #[test]
    fn mul_examples() {
        // L^{-2}(L-1) * (L+1) = L^{-2}(L^2-1)
        let a = MotivicClass::scalar(rf(&[-1, 1], &[0, 0, 1]));
        let b = MotivicClass::scalar(rf(&[1, 1], &[1]));
        assert_eq!(a.mul(&b).unwrap(), MotivicClass::scalar(rf(&[-1, 0, 1], &[0, 0, 1])));

        let s = MotivicClass::scalar(rf(&[1], &[1, 1]));
        let e = MotivicClass::curve("E");
        assert_eq!(
            s.mul(&e).unwrap(),
            MotivicClass::term(ClassSymbol::curve("E"), rf(&[1], &[1, 1]))
        );
        assert!(matches!(
            MotivicClass::curve("E1").mul(&MotivicClass::curve("E2")),
            Err(MringError::SymbolProductUnsupported { .. })
        ));
    }

    #[test]
    fn geometric_factor_examples() {
        assert_eq!(geometric_factor(1).unwrap(), MotivicClass::scalar(rf(&[0, 1], &[-1, 1])));
        assert_eq!(
            geometric_factor(2).unwrap(),
            MotivicClass::scalar(rf(&[0, 0, 1], &[-1, 0, 1]))
        );
        let t = geometric_factor(1).unwrap().expand(3);
        for e in 0..=3 {
            assert_eq!(t.coeff(&ClassSymbol::Unit, -e), q(1, 1));
        }
        assert_eq!(t.len(), 4);
        assert_eq!(geometric_factor(0), Err(MringError::InvalidIndex(0)));
        assert_eq!(geometric_factor(-3), Err(MringError::InvalidIndex(-3)));
    }

    #[test]
    fn l_degree_examples() {
        assert_eq!(MotivicClass::scalar(rf(&[-1, 1], &[0, 0, 1])).l_degree(), Some(-1));
        assert_eq!(MotivicClass::curve("E").l_degree(), Some(1));
        assert_eq!(MotivicClass::zero().l_degree(), None);
    }

    #[test]
    fn expand_examples() {
        // L/(L+1) = 1 - L^-1 + L^-2 - ...
        let t = MotivicClass::scalar(rf(&[0, 1], &[1, 1])).expand(2);
        assert_eq!(t.len(), 3);
        assert_eq!(t.coeff(&ClassSymbol::Unit, 0), q(1, 1));
        assert_eq!(t.coeff(&ClassSymbol::Unit, -1), q(-1, 1));
        assert_eq!(t.coeff(&ClassSymbol::Unit, -2), q(1, 1));

        // 1/(L+1)^2 = L^-2 - 2L^-3 + ...
        let t = MotivicClass::scalar(rf(&[1], &[1, 2, 1])).expand(3);
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(&ClassSymbol::Unit, -2), q(1, 1));
        assert_eq!(t.coeff(&ClassSymbol::Unit, -3), q(-2, 1));

        assert!(MotivicClass::zero().expand(7).is_empty());
    }

    #[test]
    fn eq_truncated_examples() {
        let a = MotivicClass::scalar(rf(&[0, 1], &[1, 1]));
        assert!(a.eq_truncated(&a, 0));
        assert!(a.eq_truncated(&a, 9));
        assert!(a.eq_truncated(&MotivicClass::one(), 0));
        assert!(!a.eq_truncated(&MotivicClass::one(), 1));
        let b = a.add(&MotivicClass::lpow(-5));
        assert!(a.eq_truncated(&b, 4));
        assert!(!a.eq_truncated(&b, 5));
    }

    #[test]
    fn canonical_string_examples() {
        assert_eq!(MotivicClass::one().canonical_string(), "1");
        assert_eq!(MotivicClass::rational(q(1, 2)).canonical_string(), "1/2");
        assert_eq!(
            MotivicClass::term(ClassSymbol::curve("E3"), rf(&[0, 1], &[1, 1])).canonical_string(),
            "(L)/(L + 1)*[E3]"
        );
        assert_eq!(MotivicClass::zero().canonical_string(), "0");
        let mixed = MotivicClass::scalar(rf(&[1, 1], &[1]))
            .add(&MotivicClass::curve("B").scale_rational(&q(-1, 3)))
            .add(&MotivicClass::curve("A"));
        let s = mixed.canonical_string();
        assert_eq!(s, "(L + 1) + [A] + -1/3*[B]");
        assert_eq!(parse_class(&s).unwrap(), mixed);
    }

    #[test]
    fn truncation_display() {
        let t = MotivicClass::scalar(rf(&[0, 1], &[1, 1])).expand(2);
        assert_eq!(t.to_string(), "1 - L^-1 + L^-2 + O(L^-3)");
    }
}
