//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Ascending coefficient list with no trailing zeros. The zero polynomial is
/// the empty list and has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    /// `x - root`.
    pub fn linear(root: Scalar) -> Self {
        Poly::new(vec![-root, Scalar::one()])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| scalar::int(c)).collect())
    }

    /// Product of `(x - r)` over the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, &r| &acc * &Poly::linear(scalar::int(r)))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Poly::one();
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Drops all terms of degree `>= n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * scalar::int(i as i64))
                .collect(),
        )
    }

    /// Substitutes `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Euclidean division; fails only on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient `q` with `q * divisor == self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::DivisionNotExact)
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Runs a primitive remainder sequence over
    /// the integers to keep coefficient growth in check.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_rem(a, &b));
            a = b;
            b = r;
        }
        Poly::from_integers(a).monic()
    }

    /// Integer coefficients of the primitive multiple with positive leading
    /// coefficient (empty for zero).
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        primitive(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        )
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Poly::new(coeffs.into_iter().map(Scalar::from_integer).collect())
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Largest `k` with `(x - root)^k` dividing `self`.
    pub fn root_multiplicity(&self, root: &Scalar) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let factor = Poly::linear(root.clone());
        let mut current = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = current.div_rem(&factor)?;
            if !r.is_zero() {
                return Ok(k);
            }
            current = q;
            k += 1;
        }
    }

    /// `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(scalar::to_decimal).collect()
    }
}

/// Divides out the content and fixes the sign of the leading coefficient.
pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(lead) = v.last() else {
        return v;
    };
    let mut g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// A nonzero multiple of the remainder of `a` by `b`; `b` nonzero.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let la = a.last().expect("nonempty").clone();
        let shift = a.len() - 1 - db;
        if !la.is_zero() {
            let g = la.gcd(lb);
            let (ma, mb) = (lb / &g, &la / &g);
            for c in a.iter_mut() {
                *c *= &ma;
            }
            for (j, c) in b.iter().enumerate() {
                a[shift + j] -= &mb * c;
            }
        }
        a.pop();
        a = primitive(a);
    }
    a
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
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
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", scalar::to_decimal(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn row_two_generating_polynomial() {
        let k = p(&[1, 1, 1]);
        assert_eq!(&k * &k.compose_power(2), p(&[1, 1, 2, 1, 2, 1, 1]));
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = p(&[0, -7, 1]);
        assert_eq!(a.gcd(&Poly::x()), Poly::x());
    }

    #[test]
    fn exact_division_of_constructed_product() {
        let quad = p(&[2, -11, 1]);
        let prod = &p(&[1, 1]) * &quad;
        assert_eq!(prod.exact_div(&p(&[1, 1])).unwrap(), quad);
        assert_eq!(quad.exact_div(&p(&[1, 1])), Err(Error::DivisionNotExact));
        assert_eq!(quad.exact_div(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn root_multiplicities() {
        let a = p(&[0, -7, 1]);
        assert_eq!(a.root_multiplicity(&scalar::int(0)).unwrap(), 1);
        assert_eq!(
            p(&[2, -5, 1]).root_multiplicity(&scalar::int(1)).unwrap(),
            0
        );
        let big = &(&(&Poly::x() * &p(&[1, 1])) * &p(&[2, -11, 1])) * &Poly::from_roots(&[1, 1]);
        assert_eq!(big.root_multiplicity(&scalar::int(1)).unwrap(), 2);
        assert_eq!(
            Poly::zero().root_multiplicity(&scalar::int(1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[2, -5, 1]).to_string(), "x^2 - 5x + 2");
        assert_eq!(p(&[0, -7, 1]).to_string(), "x^2 - 7x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[-1]).to_string(), "-1");
    }

    #[test]
    fn derivative_and_lcm() {
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        let a = Poly::from_roots(&[1, 2]);
        let b = Poly::from_roots(&[2, 3]);
        assert_eq!(a.lcm(&b), Poly::from_roots(&[1, 2, 3]));
    }
}
