use super::{fmt_rat, int, Degree, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, `coeffs[i]` multiplies λ^i.
/// The highest stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate λ.
    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// λ - a
    pub fn linear_root(a: Rat) -> Self {
        Poly::new(vec![-a, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by λ^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of the root 0; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// λ^n · p(1/λ) for n ≥ deg p.
    pub fn reverse(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        assert!(n + 1 >= self.coeffs.len(), "reverse length below degree");
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.deg() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { fmt_rat(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}λ")?,
                _ => write!(f, "{coef}λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::new(out)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
