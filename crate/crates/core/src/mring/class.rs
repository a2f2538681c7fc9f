use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::poly::{Poly, Q};
use super::ratfunc::RationalFunctionL;
use super::MringError;

/// Basis symbol of the free module: the class of a point, or a free curve class.
///
/// Curves are identified by name; `Unit` sorts before every curve.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassSymbol {
    Unit,
    Curve(String),
}

impl ClassSymbol {
    pub fn curve(name: impl Into<String>) -> Self {
        ClassSymbol::Curve(name.into())
    }

    pub fn dimension(&self) -> i64 {
        match self {
            ClassSymbol::Unit => 0,
            ClassSymbol::Curve(_) => 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ClassSymbol::Unit)
    }
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSymbol::Unit => write!(f, "1"),
            ClassSymbol::Curve(name) => write!(f, "[{name}]"),
        }
    }
}

/// An element `Σ r_s · s` with `r_s ∈ Q(L)` and `s` a basis symbol.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MotivicClass {
    terms: BTreeMap<ClassSymbol, RationalFunctionL>,
}

impl MotivicClass {
    pub fn zero() -> Self {
        MotivicClass::default()
    }

    pub fn one() -> Self {
        Self::scalar(RationalFunctionL::one())
    }

    pub fn scalar(r: RationalFunctionL) -> Self {
        Self::term(ClassSymbol::Unit, r)
    }

    pub fn integer(n: i64) -> Self {
        Self::scalar(RationalFunctionL::integer(n))
    }

    pub fn rational(c: Q) -> Self {
        Self::scalar(RationalFunctionL::constant(c))
    }

    /// `L^k · 1`.
    pub fn lpow(k: i64) -> Self {
        Self::scalar(RationalFunctionL::lpow(k))
    }

    /// `1 · [name]`.
    pub fn curve(name: impl Into<String>) -> Self {
        Self::term(ClassSymbol::curve(name), RationalFunctionL::one())
    }

    pub fn term(sym: ClassSymbol, r: RationalFunctionL) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(sym, r);
        }
        MotivicClass { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassSymbol, &RationalFunctionL)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sym: &ClassSymbol) -> RationalFunctionL {
        self.terms.get(sym).cloned().unwrap_or_else(RationalFunctionL::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when only the `Unit` term is present (or the class is zero).
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(ClassSymbol::is_unit)
    }

    /// The `Unit` coefficient, if this class carries no curve symbol.
    pub fn as_scalar(&self) -> Option<RationalFunctionL> {
        self.is_scalar().then(|| self.coefficient(&ClassSymbol::Unit))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (s, r) in &other.terms {
            let sum = match terms.get(s) {
                Some(x) => x.add(r),
                None => r.clone(),
            };
            if sum.is_zero() {
                terms.remove(s);
            } else {
                terms.insert(s.clone(), sum);
            }
        }
        MotivicClass { terms }
    }

    pub fn neg(&self) -> Self {
        MotivicClass {
            terms: self.terms.iter().map(|(s, r)| (s.clone(), r.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by `r`.
    pub fn scale(&self, r: &RationalFunctionL) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MotivicClass {
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x.mul(r))).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Q) -> Self {
        self.scale(&RationalFunctionL::constant(c.clone()))
    }

    /// Ring product. `Unit` is the identity; a product of two curve symbols
    /// is rejected.
    pub fn mul(&self, other: &Self) -> Result<Self, MringError> {
        if let Some(r) = self.as_scalar() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_scalar() {
            return Ok(self.scale(&r));
        }
        let left = self.terms.keys().find(|s| !s.is_unit()).unwrap();
        let right = other.terms.keys().find(|s| !s.is_unit()).unwrap();
        Err(MringError::SymbolProductUnsupported {
            left: left.to_string(),
            right: right.to_string(),
        })
    }

    /// Replaces curve symbol `sym` by `value · 1`.
    pub fn substitute(&self, sym: &ClassSymbol, value: &RationalFunctionL) -> Self {
        match self.terms.get(sym) {
            None => self.clone(),
            Some(r) => {
                let mut rest = self.clone();
                rest.terms.remove(sym);
                rest.add(&Self::scalar(r.mul(value)))
            }
        }
    }

    /// Maximum over terms of `deg num − deg den + dim`; `None` is −∞.
    pub fn l_degree(&self) -> Option<i64> {
        self.terms
            .iter()
            .filter_map(|(s, r)| r.l_degree().map(|d| d + s.dimension()))
            .max()
    }

    /// Coefficients of `L^e`, `e ≥ −precision`, of every term's expansion at `L = ∞`.
    pub fn expand(&self, precision: u64) -> LaurentTruncation {
        let mut coeffs = BTreeMap::new();
        for (s, r) in &self.terms {
            for (e, c) in r.expand(precision) {
                coeffs.insert((s.clone(), e), c);
            }
        }
        LaurentTruncation { precision, coeffs }
    }

    pub fn eq_truncated(&self, other: &Self, precision: u64) -> bool {
        self.expand(precision) == other.expand(precision)
    }

    /// Deterministic text form; round-trips through [`super::parse_class`].
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match s {
                ClassSymbol::Unit => write!(f, "{r}")?,
                ClassSymbol::Curve(_) if r.is_one() => write!(f, "{s}")?,
                ClassSymbol::Curve(_) => write!(f, "{r}*{s}")?,
            }
        }
        Ok(())
    }
}

/// `1/(1 − L^{-i}) = L^i/(L^i − 1)` for `i ≥ 1`.
pub fn geometric_factor(i: i64) -> Result<MotivicClass, MringError> {
    if i < 1 {
        return Err(MringError::InvalidIndex(i));
    }
    let li = Poly::lpow(i as u64);
    let den = li.sub(&Poly::one());
    let r = RationalFunctionL::new(li, den).expect("L^i - 1 is nonzero");
    Ok(MotivicClass::scalar(r))
}

/// Truncated expansion at `L = ∞`: the coefficient of `L^e · s` for `e ≥ −precision`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentTruncation {
    pub precision: u64,
    coeffs: BTreeMap<(ClassSymbol, i64), Q>,
}

impl LaurentTruncation {
    pub fn empty(precision: u64) -> Self {
        LaurentTruncation {
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&ClassSymbol, i64, &Q)> {
        self.coeffs.iter().map(|((s, e), c)| (s, *e, c))
    }

    pub fn coeff(&self, sym: &ClassSymbol, exp: i64) -> Q {
        self.coeffs
            .get(&(sym.clone(), exp))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Drops coefficients below `L^{-precision}`; `precision` must not exceed
    /// the current one.
    pub fn truncate(&self, precision: u64) -> Self {
        assert!(precision <= self.precision, "cannot raise truncation precision");
        let bound = -(precision as i64);
        LaurentTruncation {
            precision,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((_, e), _)| *e >= bound)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.precision, other.precision, "precision mismatch");
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            let entry = coeffs.entry(k.clone()).or_insert_with(Q::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(k);
            }
        }
        LaurentTruncation {
            precision: self.precision,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::empty(self.precision);
        }
        LaurentTruncation {
            precision: self.precision,
            coeffs: self.coeffs.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Machine form: one entry per nonzero coefficient, rationals as `"p/r"`.
    pub fn to_entries(&self) -> Vec<TruncationEntry> {
        self.coeffs
            .iter()
            .map(|((s, e), c)| TruncationEntry {
                symbol: s.to_string(),
                exponent: *e,
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationEntry {
    pub symbol: String,
    pub exponent: i64,
    pub coeff: String,
}

/// Human form, descending exponents per symbol: `1 - L^-1 + L^-2 + O(L^-3)`.
impl fmt::Display for LaurentTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut by_symbol: BTreeMap<&ClassSymbol, Vec<(i64, &Q)>> = BTreeMap::new();
        for ((s, e), c) in &self.coeffs {
            by_symbol.entry(s).or_default().push((*e, c));
        }
        for (s, mut list) in by_symbol {
            list.sort_by_key(|x| std::cmp::Reverse(x.0));
            for (e, c) in list {
                let neg = c < &Q::zero();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                first = false;
                let a = if neg { -c.clone() } else { c.clone() };
                let mono = match e {
                    0 => String::new(),
                    1 => "L".to_string(),
                    k => format!("L^{k}"),
                };
                let sym = match s {
                    ClassSymbol::Unit => String::new(),
                    other => format!("*{other}"),
                };
                match (mono.is_empty(), a == Q::from_integer(1.into())) {
                    (true, _) => write!(f, "{a}{sym}")?,
                    (false, true) => write!(f, "{mono}{sym}")?,
                    (false, false) => write!(f, "{a}*{mono}{sym}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(L^-{})", self.precision + 1)
    }
}
