use super::{Poly, Rat, Valuation};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced rational function `num / den` with monic denominator and
/// coprime numerator and denominator. Zero is stored as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let l = den.lead().expect("nonzero").clone();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFn { num, den })
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    /// The indeterminate λ.
    pub fn x() -> Self {
        RatFn::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn is_proper(&self) -> bool {
        self.num.degree() <= self.den.degree()
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.num.degree() < self.den.degree()
    }

    pub fn valuation_at_infinity(&self) -> Valuation {
        match self.num.deg() {
            None => Valuation::Infinite,
            Some(dn) => Valuation::Finite(self.den.deg().expect("den nonzero") as i64 - dn as i64),
        }
    }

    /// Order of the zero (positive) or pole (negative) at λ = 0;
    /// `None` for the zero function.
    pub fn ord_at_zero(&self) -> Option<i64> {
        let n = self.num.ord_at_zero()? as i64;
        Some(n - self.den.ord_at_zero().expect("den nonzero") as i64)
    }

    /// Unique split `g = d + g_sp` with `d` polynomial and `g_sp` strictly proper.
    pub fn split_polynomial_part(&self) -> (Poly, RatFn) {
        let (q, r) = self.num.divrem(&self.den).expect("den nonzero");
        (q, RatFn { num: r, den: self.den.clone() }.renormalized())
    }

    fn renormalized(self) -> RatFn {
        if self.num.is_zero() {
            RatFn::zero()
        } else {
            self
        }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value at a rational point; errors at a pole.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Precondition("evaluation at a pole".into()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// g(1/μ) as a rational function of μ.
    pub fn substitute_reciprocal(&self) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let dn = self.num.deg().unwrap();
        let dd = self.den.deg().unwrap();
        let k = dn.max(dd);
        // num(1/μ)/den(1/μ) = μ^{k-dn} rev(num) / (μ^{k-dd} rev(den))
        let n = self.num.reverse(k);
        let d = self.den.reverse(k);
        RatFn::new(n, d).expect("reversed den nonzero")
    }

    pub fn pow(&self, k: i64) -> RatFn {
        let base = if k < 0 { self.inv().expect("nonzero base") } else { self.clone() };
        let mut out = RatFn::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return RatFn::new(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone()).unwrap();
        }
        if rhs.den.is_one() {
            return RatFn::new(&self.num + &(&rhs.num * &self.den), self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFn::new(num, &a * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFn::new(&n1 * &n2, &d1 * &d2).unwrap()
    }
}

impl<'a> Div<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    /// Panics on division by zero; use [`RatFn::inv`] for a checked version.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: &RatFn) -> RatFn {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}
