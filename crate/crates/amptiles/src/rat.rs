//! Exact scalars: arbitrary-precision rationals and rational dual numbers.
//!
//! `Rat` is the coefficient field for everything in this crate. `Dual` is
//! `Rat[eps]/(eps^2)`, used for exact first derivatives (Jacobian ranks).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational; canonical form (reduced, positive denominator)
/// is maintained by the underlying representation.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Formats as "num/den" (always with an explicit denominator), the wire format
/// used in all JSON output.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "num/den" or a bare integer.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Sign of a rational as -1, 0, +1.
pub fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Minimal field interface needed by the generic linear algebra.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when division by `self` is defined.
    fn is_invertible(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;
}

impl Scalar for Rat {
    fn is_invertible(&self) -> bool {
        !self.is_zero()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Dual number `re + ep*eps` with `eps^2 = 0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub re: Rat,
    pub ep: Rat,
}

impl Dual {
    pub fn new(re: Rat, ep: Rat) -> Self {
        Dual { re, ep }
    }
    pub fn constant(re: Rat) -> Self {
        Dual { re, ep: Rat::zero() }
    }
    /// The seeded variable `re + eps`.
    pub fn variable(re: Rat) -> Self {
        Dual { re, ep: Rat::one() }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.re + o.re, self.ep + o.ep)
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.re - o.re, self.ep - o.ep)
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        let ep = self.re.clone() * o.ep.clone() + self.ep * o.re.clone();
        Dual::new(self.re * o.re, ep)
    }
}
impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        // (a + b eps)/(c + d eps) = a/c + (b c - a d)/c^2 eps
        let c2 = o.re.clone() * o.re.clone();
        let ep = (self.ep * o.re.clone() - self.re.clone() * o.ep) / c2;
        Dual::new(self.re / o.re, ep)
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.ep)
    }
}
impl Zero for Dual {
    fn zero() -> Self {
        Dual::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ep.is_zero()
    }
}
impl One for Dual {
    fn one() -> Self {
        Dual::constant(Rat::one())
    }
}
impl Scalar for Dual {
    fn is_invertible(&self) -> bool {
        !self.re.is_zero()
    }
    fn from_rat(r: &Rat) -> Self {
        Dual::constant(r.clone())
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}eps", self.re, self.ep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_roundtrip() {
        let r = rat(-6, 4);
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(rat_from_str("-3/2").unwrap(), r);
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert!(rat_from_str("1/0").is_none());
    }

    #[test]
    fn dual_derivative_of_square() {
        // d/dx x^2 at 3 = 6
        let x = Dual::variable(rat_int(3));
        let y = x.clone() * x;
        assert_eq!(y.re, rat_int(9));
        assert_eq!(y.ep, rat_int(6));
    }

    #[test]
    fn dual_quotient_rule() {
        // d/dx (1/x) at 2 = -1/4
        let x = Dual::variable(rat_int(2));
        let y = Dual::one() / x;
        assert_eq!(y.ep, rat(-1, 4));
    }
}
