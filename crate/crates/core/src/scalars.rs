//! Commutative involutive semirings used as scalars and matrix entries.
//!
//! Three semirings are supported: the Booleans (relations), the complex
//! numbers (finite-dimensional Hilbert spaces) and the unbounded naturals
//! (closed cobordism counts). Boolean and natural arithmetic is exact; complex
//! equality is decided up to an absolute, componentwise tolerance carried by
//! the [`SemiringTag`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringKind {
    Boolean,
    Complex,
    Natural,
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemiringKind::Boolean => "bool",
            SemiringKind::Complex => "complex",
            SemiringKind::Natural => "nat",
        })
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bool" => Ok(SemiringKind::Boolean),
            "complex" => Ok(SemiringKind::Complex),
            "nat" => Ok(SemiringKind::Natural),
            other => Err(Error::Interpretation(format!(
                "unknown semiring `{other}` (expected bool, complex or nat)"
            ))),
        }
    }
}

/// Which semiring a value lives in, plus the equality tolerance.
///
/// Tolerance is always zero for the exact semirings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiringTag {
    kind: SemiringKind,
    tolerance: f64,
}

impl SemiringTag {
    pub const BOOLEAN: SemiringTag = SemiringTag {
        kind: SemiringKind::Boolean,
        tolerance: 0.0,
    };
    pub const NATURAL: SemiringTag = SemiringTag {
        kind: SemiringKind::Natural,
        tolerance: 0.0,
    };
    pub const COMPLEX: SemiringTag = SemiringTag {
        kind: SemiringKind::Complex,
        tolerance: DEFAULT_TOLERANCE,
    };

    pub fn new(kind: SemiringKind) -> Self {
        match kind {
            SemiringKind::Boolean => Self::BOOLEAN,
            SemiringKind::Natural => Self::NATURAL,
            SemiringKind::Complex => Self::COMPLEX,
        }
    }

    /// Complex tag with a custom tolerance. Negative or non-finite values are rejected.
    pub fn complex_with_tolerance(tolerance: f64) -> Result<Self> {
        if !tolerance.is_finite() || tolerance < 0.0 {
            return Err(Error::Precondition(format!(
                "tolerance must be finite and non-negative, got {tolerance}"
            )));
        }
        Ok(SemiringTag {
            kind: SemiringKind::Complex,
            tolerance,
        })
    }

    /// Replaces the tolerance; ignored for the exact semirings.
    pub fn with_tolerance(self, tolerance: f64) -> Result<Self> {
        match self.kind {
            SemiringKind::Complex => Self::complex_with_tolerance(tolerance),
            _ => Ok(self),
        }
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            SemiringKind::Boolean => Scalar::Bool(false),
            SemiringKind::Complex => Scalar::Complex(Complex64::zero()),
            SemiringKind::Natural => Scalar::Nat(BigUint::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            SemiringKind::Boolean => Scalar::Bool(true),
            SemiringKind::Complex => Scalar::Complex(Complex64::one()),
            SemiringKind::Natural => Scalar::Nat(BigUint::one()),
        }
    }

    /// The image of a natural number under the unique semiring map from ℕ.
    pub fn from_count(&self, n: u64) -> Scalar {
        match self.kind {
            SemiringKind::Boolean => Scalar::Bool(n > 0),
            SemiringKind::Complex => Scalar::Complex(Complex64::new(n as f64, 0.0)),
            SemiringKind::Natural => Scalar::Nat(BigUint::from(n)),
        }
    }

    pub fn ensure_compatible(&self, other: &SemiringTag) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::TagMismatch {
                left: self.kind,
                right: other.kind,
            })
        }
    }

    pub fn admits(&self, value: &Scalar) -> bool {
        value.kind() == self.kind
    }

    pub fn approx_eq(&self, a: &Scalar, b: &Scalar) -> bool {
        a.distance(b) <= self.tolerance
    }
}

/// Raw payload of a semiring element. Arithmetic between payloads of
/// different kinds is a programming error; use [`ScalarValue`] for checked
/// arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Bool(bool),
    Complex(Complex64),
    Nat(BigUint),
}

impl Scalar {
    pub fn kind(&self) -> SemiringKind {
        match self {
            Scalar::Bool(_) => SemiringKind::Boolean,
            Scalar::Complex(_) => SemiringKind::Complex,
            Scalar::Nat(_) => SemiringKind::Natural,
        }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn nat(n: u64) -> Self {
        Scalar::Nat(BigUint::from(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Bool(b) => !b,
            Scalar::Complex(c) => c.is_zero(),
            Scalar::Nat(n) => n.is_zero(),
        }
    }

    pub(crate) fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Bool(a), Scalar::Bool(b)) => Scalar::Bool(*a || *b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a + b),
            (Scalar::Nat(a), Scalar::Nat(b)) => Scalar::Nat(a + b),
            (a, b) => unreachable!("mixed semiring payloads {:?} and {:?}", a.kind(), b.kind()),
        }
    }

    pub(crate) fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Bool(a), Scalar::Bool(b)) => Scalar::Bool(*a && *b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a * b),
            (Scalar::Nat(a), Scalar::Nat(b)) => Scalar::Nat(a * b),
            (a, b) => unreachable!("mixed semiring payloads {:?} and {:?}", a.kind(), b.kind()),
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Scalar) {
        match (self, other) {
            (Scalar::Bool(a), Scalar::Bool(b)) => *a |= *b,
            (Scalar::Complex(a), Scalar::Complex(b)) => *a += b,
            (Scalar::Nat(a), Scalar::Nat(b)) => *a += b,
            (a, b) => unreachable!("mixed semiring payloads {:?} and {:?}", a.kind(), b.kind()),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Complex(c) => Scalar::Complex(c.conj()),
            other => other.clone(),
        }
    }

    /// Deviation between two payloads of the same kind: componentwise max of
    /// absolute differences for complex, |a - b| for naturals, 0/1 for Booleans.
    /// Payloads of different kinds are infinitely far apart.
    pub fn distance(&self, other: &Scalar) -> f64 {
        match (self, other) {
            (Scalar::Bool(a), Scalar::Bool(b)) => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
            (Scalar::Complex(a), Scalar::Complex(b)) => {
                let d = a - b;
                d.re.abs().max(d.im.abs())
            }
            (Scalar::Nat(a), Scalar::Nat(b)) => {
                let d = if a >= b { a - b } else { b - a };
                d.to_f64().unwrap_or(f64::INFINITY)
            }
            _ => f64::INFINITY,
        }
    }
}

/// Formats a real number compactly: integral values without a fractional part.
fn fmt_real(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x == 0.0 {
        return f.write_str("0");
    }
    if x.fract() == 0.0 && x.abs() < 1e15 {
        write!(f, "{}", x as i64)
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => f.write_str(if *b { "1" } else { "0" }),
            Scalar::Nat(n) => write!(f, "{n}"),
            Scalar::Complex(c) => {
                if c.im == 0.0 {
                    fmt_real(c.re, f)
                } else {
                    f.write_str("[")?;
                    fmt_real(c.re, f)?;
                    f.write_str(", ")?;
                    fmt_real(c.im, f)?;
                    f.write_str("]")
                }
            }
        }
    }
}

/// A semiring element together with its tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarValue {
    tag: SemiringTag,
    value: Scalar,
}

impl ScalarValue {
    pub fn new(tag: SemiringTag, value: Scalar) -> Result<Self> {
        if !tag.admits(&value) {
            return Err(Error::TagMismatch {
                left: tag.kind(),
                right: value.kind(),
            });
        }
        Ok(ScalarValue { tag, value })
    }

    pub fn boolean(b: bool) -> Self {
        ScalarValue {
            tag: SemiringTag::BOOLEAN,
            value: Scalar::Bool(b),
        }
    }

    pub fn natural(n: u64) -> Self {
        ScalarValue {
            tag: SemiringTag::NATURAL,
            value: Scalar::nat(n),
        }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        ScalarValue {
            tag: SemiringTag::COMPLEX,
            value: Scalar::complex(re, im),
        }
    }

    pub fn zero(tag: SemiringTag) -> Self {
        ScalarValue {
            tag,
            value: tag.zero(),
        }
    }

    pub fn one(tag: SemiringTag) -> Self {
        ScalarValue {
            tag,
            value: tag.one(),
        }
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }

    pub fn add(&self, other: &ScalarValue) -> Result<ScalarValue> {
        self.tag.ensure_compatible(&other.tag)?;
        Ok(ScalarValue {
            tag: self.tag,
            value: self.value.add(&other.value),
        })
    }

    pub fn mul(&self, other: &ScalarValue) -> Result<ScalarValue> {
        self.tag.ensure_compatible(&other.tag)?;
        Ok(ScalarValue {
            tag: self.tag,
            value: self.value.mul(&other.value),
        })
    }

    pub fn conj(&self) -> ScalarValue {
        ScalarValue {
            tag: self.tag,
            value: self.value.conj(),
        }
    }

    pub fn approx_eq(&self, other: &ScalarValue) -> Result<bool> {
        self.tag.ensure_compatible(&other.tag)?;
        Ok(self.tag.approx_eq(&self.value, &other.value))
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(x: bool) -> ScalarValue {
        ScalarValue::boolean(x)
    }

    #[test]
    fn boolean_addition_is_disjunction() {
        assert_eq!(b(true).add(&b(true)).unwrap(), b(true));
        assert_eq!(b(false).add(&b(false)).unwrap(), b(false));
        assert_eq!(b(false).add(&b(true)).unwrap(), b(true));
    }

    #[test]
    fn boolean_multiplication_is_conjunction() {
        assert_eq!(b(true).mul(&b(false)).unwrap(), b(false));
        assert_eq!(b(false).mul(&b(false)).unwrap(), b(false));
        assert_eq!(b(true).mul(&b(true)).unwrap(), b(true));
    }

    #[test]
    fn complex_and_natural_arithmetic() {
        let z = ScalarValue::complex(2.0, 1.0);
        assert_eq!(z.add(&ScalarValue::zero(SemiringTag::COMPLEX)).unwrap(), z);
        let i = ScalarValue::complex(0.0, 1.0);
        assert_eq!(i.mul(&i).unwrap(), ScalarValue::complex(-1.0, 0.0));
        assert_eq!(
            ScalarValue::natural(3).mul(&ScalarValue::natural(4)).unwrap(),
            ScalarValue::natural(12)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            ScalarValue::complex(2.0, 3.0).conj(),
            ScalarValue::complex(2.0, -3.0)
        );
        assert_eq!(b(true).conj(), b(true));
        assert_eq!(ScalarValue::natural(5).conj(), ScalarValue::natural(5));
    }

    #[test]
    fn approx_eq_uses_tolerance_only_for_complex() {
        assert!(b(true).approx_eq(&b(true)).unwrap());
        let tag = SemiringTag::complex_with_tolerance(1e-9).unwrap();
        let one = ScalarValue::new(tag, Scalar::complex(1.0, 0.0)).unwrap();
        let near = ScalarValue::new(tag, Scalar::complex(1.0 + 1e-12, 0.0)).unwrap();
        let far = ScalarValue::new(tag, Scalar::complex(1.1, 0.0)).unwrap();
        assert!(one.approx_eq(&near).unwrap());
        assert!(!one.approx_eq(&far).unwrap());
        assert!(!ScalarValue::natural(2)
            .approx_eq(&ScalarValue::natural(3))
            .unwrap());
    }

    #[test]
    fn mismatched_tags_are_domain_errors() {
        let err = b(true).add(&ScalarValue::natural(1)).unwrap_err();
        assert!(matches!(err, Error::TagMismatch { .. }));
        assert!(b(true).mul(&ScalarValue::complex(1.0, 0.0)).is_err());
        assert!(b(true).approx_eq(&ScalarValue::natural(1)).is_err());
        assert!(ScalarValue::new(SemiringTag::BOOLEAN, Scalar::nat(1)).is_err());
    }

    #[test]
    fn negative_tolerance_rejected() {
        assert!(SemiringTag::complex_with_tolerance(-1.0).is_err());
        assert!(SemiringTag::complex_with_tolerance(f64::NAN).is_err());
        assert_eq!(SemiringTag::BOOLEAN.tolerance(), 0.0);
        assert_eq!(SemiringTag::NATURAL.tolerance(), 0.0);
    }

    #[test]
    fn semiring_names() {
        assert_eq!("bool".parse::<SemiringKind>().unwrap(), SemiringKind::Boolean);
        assert_eq!("nat".parse::<SemiringKind>().unwrap(), SemiringKind::Natural);
        assert_eq!(
            "complex".parse::<SemiringKind>().unwrap(),
            SemiringKind::Complex
        );
        assert!("real".parse::<SemiringKind>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::complex(3.0, 0.0).to_string(), "3");
        assert_eq!(Scalar::complex(0.5, -1.0).to_string(), "[0.5, -1]");
        assert_eq!(Scalar::Bool(true).to_string(), "1");
        assert_eq!(Scalar::nat(42).to_string(), "42");
    }

    fn any_scalar() -> impl Strategy<Value = (ScalarValue, ScalarValue, ScalarValue)> {
        prop_oneof![
            (any::<bool>(), any::<bool>(), any::<bool>())
                .prop_map(|(x, y, z)| (b(x), b(y), b(z))),
            (0u64..1000, 0u64..1000, 0u64..1000).prop_map(|(x, y, z)| (
                ScalarValue::natural(x),
                ScalarValue::natural(y),
                ScalarValue::natural(z)
            )),
            // small integers keep complex arithmetic exact
            (-8i32..8, -8i32..8, -8i32..8, -8i32..8, -8i32..8, -8i32..8).prop_map(
                |(a, b2, c, d, e, f)| (
                    ScalarValue::complex(a as f64, b2 as f64),
                    ScalarValue::complex(c as f64, d as f64),
                    ScalarValue::complex(e as f64, f as f64)
                )
            ),
        ]
    }

    proptest! {
        #[test]
        fn semiring_laws((x, y, z) in any_scalar()) {
            prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(
                x.mul(&y.add(&z).unwrap()).unwrap(),
                x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
            );
            let zero = ScalarValue::zero(x.tag());
            let one = ScalarValue::one(x.tag());
            prop_assert_eq!(x.add(&zero).unwrap(), x.clone());
            prop_assert_eq!(x.mul(&one).unwrap(), x.clone());
            prop_assert_eq!(x.mul(&zero).unwrap(), zero);
        }

        #[test]
        fn conj_is_involutive_homomorphism((x, y, _z) in any_scalar()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(x.add(&y).unwrap().conj(), x.conj().add(&y.conj()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
        }
    }
}
