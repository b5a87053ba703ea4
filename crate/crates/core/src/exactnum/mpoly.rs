//! Sparse multivariate polynomials and the variable-count-agnostic
//! [`ExactPoly`] wrapper used for kernels and prefactors.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_{index}` (zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn from_univariate(p: &Poly) -> Self {
        MPoly::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MPoly {
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Substitutes `x_i -> x_i^k` for every variable.
    pub fn compose_power(&self, k: u32) -> MPoly {
        self.compose_powers(&vec![k; self.nvars])
    }

    /// Substitutes `x_i -> x_i^{k_i}`.
    pub fn compose_powers(&self, ks: &[u32]) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(ks).map(|(a, k)| a * k).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient under lexicographic term order.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check_arity(divisor)?;
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(Error::DivisionNotExact);
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let term = MPoly::from_terms(self.nvars, [(qe, qc)]);
            rem = rem.sub(&term.mul(divisor)?)?;
            quot = quot.add(&term)?;
        }
        Ok(quot)
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (slot, &x) in d.iter_mut().zip(e) {
                *slot = (*slot).max(x);
            }
        }
        d
    }

    /// Smallest exponent of each variable (the largest monomial factor).
    pub fn min_degrees(&self) -> Vec<u32> {
        let mut d: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            d = Some(match d {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        d.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval_at_ones(&self) -> Scalar {
        self.terms.values().cloned().sum()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                let c = scalar::to_decimal(c);
                if mono.is_empty() {
                    c
                } else if c == "1" {
                    mono.join("*")
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A polynomial in `d >= 1` variables: dense when univariate, sparse otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactPoly {
    Uni(Poly),
    Multi(MPoly),
}

/// Binary operations accepted by [`poly_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    ExactDiv,
    Gcd,
    /// Unary on the left operand.
    Derivative,
    /// Unary on the left operand: `x -> x^k`.
    ComposePower(u32),
}

impl ExactPoly {
    pub fn uni(coeffs: &[i64]) -> Self {
        ExactPoly::Uni(Poly::from_i64(coeffs))
    }

    pub fn nvars(&self) -> usize {
        match self {
            ExactPoly::Uni(_) => 1,
            ExactPoly::Multi(m) => m.nvars(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactPoly::Uni(p) => p.is_zero(),
            ExactPoly::Multi(m) => m.is_zero(),
        }
    }

    /// Sparse view, valid for any variable count.
    pub fn to_sparse(&self) -> MPoly {
        match self {
            ExactPoly::Uni(p) => MPoly::from_univariate(p),
            ExactPoly::Multi(m) => m.clone(),
        }
    }

    /// Collapses a one-variable sparse polynomial to dense form.
    pub fn from_sparse(m: MPoly) -> Self {
        if m.nvars() != 1 {
            return ExactPoly::Multi(m);
        }
        let deg = m.degrees()[0] as usize;
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        for (e, c) in m.terms() {
            coeffs[e[0] as usize] = c.clone();
        }
        ExactPoly::Uni(Poly::new(coeffs))
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactPoly::Uni(p) => p.is_one(),
            ExactPoly::Multi(m) => *m == MPoly::constant(m.nvars(), Scalar::one()),
        }
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactPoly::Uni(p) => p.fmt(f),
            ExactPoly::Multi(m) => m.fmt(f),
        }
    }
}

fn univariate(p: &ExactPoly) -> Result<&Poly> {
    match p {
        ExactPoly::Uni(p) => Ok(p),
        ExactPoly::Multi(_) => Err(Error::UnivariateOnly),
    }
}

/// Exact polynomial arithmetic dispatching on the variable count. For the
/// unary operations the right operand is ignored.
pub fn poly_arithmetic(a: &ExactPoly, b: &ExactPoly, op: PolyOp) -> Result<ExactPoly> {
    let binary = matches!(
        op,
        PolyOp::Add | PolyOp::Mul | PolyOp::ExactDiv | PolyOp::Gcd
    );
    if binary && a.nvars() != b.nvars() {
        return Err(Error::VariableMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    match op {
        PolyOp::Gcd => Ok(ExactPoly::Uni(univariate(a)?.gcd(univariate(b)?))),
        PolyOp::Derivative => Ok(ExactPoly::Uni(univariate(a)?.derivative())),
        PolyOp::ComposePower(k) => Ok(match a {
            ExactPoly::Uni(p) => ExactPoly::Uni(p.compose_power(k as usize)),
            ExactPoly::Multi(m) => ExactPoly::Multi(m.compose_power(k)),
        }),
        PolyOp::Add | PolyOp::Mul | PolyOp::ExactDiv => match (a, b) {
            (ExactPoly::Uni(x), ExactPoly::Uni(y)) => Ok(ExactPoly::Uni(match op {
                PolyOp::Add => x + y,
                PolyOp::Mul => x * y,
                _ => x.exact_div(y)?,
            })),
            _ => {
                let (x, y) = (a.to_sparse(), b.to_sparse());
                let r = match op {
                    PolyOp::Add => x.add(&y)?,
                    PolyOp::Mul => x.mul(&y)?,
                    _ => x.exact_div(&y)?,
                };
                Ok(ExactPoly::from_sparse(r))
            }
        },
    }
}
