use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for coefficients.
pub type Rational = BigRational;

/// Builds the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element of the lexicographically ordered group of finitely supported
/// rational sequences indexed by levels `0, 1, 2, ...`.
///
/// Level 0 is the most significant coordinate: `x < y` iff at the lowest
/// level where they differ the coefficient of `x` is smaller. Each level is
/// one archimedean class, so the natural valuation of `x` is the lowest level
/// in its support.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct LexGroupElement {
    coeffs: BTreeMap<u32, Rational>,
}

impl LexGroupElement {
    pub fn zero() -> Self {
        LexGroupElement::default()
    }

    /// The unit `e_level`.
    pub fn unit(level: u32) -> Self {
        Self::monomial(level, Rational::one())
    }

    pub fn monomial(level: u32, coeff: Rational) -> Self {
        Self::from_coeffs([(level, coeff)])
    }

    /// Builds an element, summing repeated levels and dropping zeros.
    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(coeffs: I) -> Self {
        let mut map: BTreeMap<u32, Rational> = BTreeMap::new();
        for (level, c) in coeffs {
            *map.entry(level).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LexGroupElement { coeffs: map }
    }

    /// Convenience constructor from small integer fractions `(level, num, den)`.
    pub fn from_ratios(terms: &[(u32, i64, i64)]) -> Self {
        Self::from_coeffs(terms.iter().map(|&(l, p, q)| (l, ratio(p, q))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, level: u32) -> Rational {
        self.coeffs.get(&level).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    /// Highest level in the support.
    pub fn top_level(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Natural valuation: the archimedean class, i.e. the lowest support
    /// level, or `∞` for zero.
    pub fn valuation(&self) -> ValueLevel {
        match self.coeffs.keys().next() {
            Some(&l) => ValueLevel::Finite(l),
            None => ValueLevel::Infinity,
        }
    }

    /// Keeps only the coordinates at levels strictly below `level`.
    pub fn truncate_below(&self, level: ValueLevel) -> Self {
        match level {
            ValueLevel::Infinity => self.clone(),
            ValueLevel::Finite(l) => LexGroupElement {
                coeffs: self.coeffs.range(..l).map(|(k, v)| (*k, v.clone())).collect(),
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Sign of the leading coefficient.
    pub fn signum(&self) -> i32 {
        match self.coeffs.values().next() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(l, c)| (*l, c * q)))
    }

    /// Midpoint `(self + other) / 2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).scale(&ratio(1, 2))
    }
}

impl Ord for LexGroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.coeffs.iter().peekable();
        let mut b = other.coeffs.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ca)), None) => return sign_cmp(ca),
                (None, Some((_, cb))) => return sign_cmp(cb).reverse(),
                (Some((la, ca)), Some((lb, cb))) => match la.cmp(lb) {
                    Ordering::Less => return sign_cmp(ca),
                    Ordering::Greater => return sign_cmp(cb).reverse(),
                    Ordering::Equal => match ca.cmp(cb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

fn sign_cmp(c: &Rational) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialOrd for LexGroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LexGroupElement {
    type Output = LexGroupElement;

    fn add(self, rhs: &LexGroupElement) -> LexGroupElement {
        LexGroupElement::from_coeffs(
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(l, c)| (*l, c.clone())),
        )
    }
}

impl Sub for &LexGroupElement {
    type Output = LexGroupElement;

    fn sub(self, rhs: &LexGroupElement) -> LexGroupElement {
        self + &(-rhs)
    }
}

impl Neg for &LexGroupElement {
    type Output = LexGroupElement;

    fn neg(self) -> LexGroupElement {
        LexGroupElement {
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, -c)).collect(),
        }
    }
}

impl fmt::Display for LexGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})e{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LexGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    coeffs: BTreeMap<String, String>,
}

impl TryFrom<ElementRepr> for LexGroupElement {
    type Error = String;

    fn try_from(repr: ElementRepr) -> Result<Self, String> {
        let mut terms = Vec::new();
        for (k, v) in repr.coeffs {
            let level: u32 = k.parse().map_err(|_| format!("bad level {k:?}"))?;
            let c: Rational = v.parse().map_err(|_| format!("bad rational {v:?}"))?;
            terms.push((level, c));
        }
        Ok(LexGroupElement::from_coeffs(terms))
    }
}

impl From<LexGroupElement> for ElementRepr {
    fn from(x: LexGroupElement) -> Self {
        ElementRepr {
            coeffs: x.coeffs.iter().map(|(l, c)| (l.to_string(), c.to_string())).collect(),
        }
    }
}

/// A value of the natural valuation: a level or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueLevel {
    Finite(u32),
    Infinity,
}

impl ValueLevel {
    pub fn finite(self) -> Option<u32> {
        match self {
            ValueLevel::Finite(l) => Some(l),
            ValueLevel::Infinity => None,
        }
    }
}

impl fmt::Display for ValueLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueLevel::Finite(l) => write!(f, "{l}"),
            ValueLevel::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ValueLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ValueLevel::Finite(l) => s.serialize_u32(*l),
            ValueLevel::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ValueLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Level(u32),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Level(l) => Ok(ValueLevel::Finite(l)),
            Repr::Text(t) if t == "inf" => Ok(ValueLevel::Infinity),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad radius {t:?}"))),
        }
    }
}

/// `u(x, y) = v(x - y)`.
pub fn ultrametric(x: &LexGroupElement, y: &LexGroupElement) -> ValueLevel {
    // the lowest level where the coordinates differ
    let mut a = x.coeffs.iter().peekable();
    let mut b = y.coeffs.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (None, None) => return ValueLevel::Infinity,
            (Some((la, _)), None) => return ValueLevel::Finite(**la),
            (None, Some((lb, _))) => return ValueLevel::Finite(**lb),
            (Some((la, ca)), Some((lb, cb))) => match la.cmp(lb) {
                Ordering::Less => return ValueLevel::Finite(**la),
                Ordering::Greater => return ValueLevel::Finite(**lb),
                Ordering::Equal if ca != cb => return ValueLevel::Finite(**la),
                Ordering::Equal => {
                    a.next();
                    b.next();
                }
            },
        }
    }
}
