//! Window patterns, product specifications, coefficient arrays, and the
//! brute-force windowed power sums that serve as the oracle for the transfer
//! engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{ExactPoly, MPoly, Poly, Scalar};
use crate::limits::Limits;
use crate::sternarrays::{self, ArrayKind, RowMethod};

/// A finite exponent pattern over offsets in `Z^d`.
///
/// Stored as sorted `(offset, exponent)` cells with positive exponents,
/// translated so the coordinatewise minimum offset is the origin. In one
/// dimension this is the trimmed list `(a_0, ..., a_{m-1})` with `a_0 > 0`
/// and `a_{m-1} > 0`; interior zeros are simply absent cells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowPattern {
    dim: usize,
    cells: Vec<(Vec<i64>, u32)>,
}

impl WindowPattern {
    /// One-dimensional pattern from an exponent list; leading and trailing
    /// zeros are trimmed.
    pub fn new(exponents: &[u32]) -> Result<Self> {
        WindowPattern::from_cells(
            1,
            exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| (vec![i as i64], e)),
        )
    }

    /// The single-site pattern `(r)` in `dim` dimensions.
    pub fn single(dim: usize, r: u32) -> Self {
        assert!(r > 0, "single-site pattern needs a positive exponent");
        WindowPattern {
            dim,
            cells: vec![(vec![0; dim], r)],
        }
    }

    /// Builds a pattern from arbitrary cells. Repeated offsets add their
    /// exponents; zero exponents are dropped; the result is translated to
    /// the origin.
    pub fn from_cells(
        dim: usize,
        cells: impl IntoIterator<Item = (Vec<i64>, u32)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        for (p, e) in cells {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    pattern: p.len(),
                    array: dim,
                });
            }
            if e > 0 {
                *merged.entry(p).or_insert(0) += e;
            }
        }
        if merged.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut min = vec![i64::MAX; dim];
        for p in merged.keys() {
            for (m, &x) in min.iter_mut().zip(p) {
                *m = (*m).min(x);
            }
        }
        let mut cells: Vec<(Vec<i64>, u32)> = merged
            .into_iter()
            .map(|(p, e)| (p.iter().zip(&min).map(|(x, m)| x - m).collect(), e))
            .collect();
        cells.sort();
        Ok(WindowPattern { dim, cells })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[(Vec<i64>, u32)] {
        &self.cells
    }

    pub fn weight(&self) -> u32 {
        self.cells.iter().map(|(_, e)| e).sum()
    }

    /// Largest extent over the coordinates; the list length in one dimension.
    pub fn length(&self) -> usize {
        (0..self.dim)
            .map(|c| self.cells.iter().map(|(p, _)| p[c]).max().unwrap_or(0) as usize + 1)
            .max()
            .unwrap_or(1)
    }

    /// Extent along each coordinate.
    pub fn extents(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|c| self.cells.iter().map(|(p, _)| p[c]).max().unwrap_or(0) as usize + 1)
            .collect()
    }

    /// Exponent list of a one-dimensional pattern.
    pub fn exponents(&self) -> Vec<u32> {
        assert_eq!(self.dim, 1, "exponent list is one-dimensional only");
        let mut out = vec![0; self.length()];
        for (p, e) in &self.cells {
            out[p[0] as usize] = *e;
        }
        out
    }

    /// Point reflection (reversal in one dimension), re-translated.
    pub fn reflected(&self) -> Self {
        WindowPattern::from_cells(
            self.dim,
            self.cells
                .iter()
                .map(|(p, e)| (p.iter().map(|x| -x).collect(), *e)),
        )
        .expect("nonempty")
    }

    pub fn is_single_site(&self) -> bool {
        self.cells.len() == 1
    }
}

impl fmt::Display for WindowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            let e: Vec<String> = self.exponents().iter().map(u32::to_string).collect();
            write!(f, "({})", e.join(","))
        } else {
            let cells: Vec<String> = self
                .cells
                .iter()
                .map(|(p, e)| {
                    let p: Vec<String> = p.iter().map(i64::to_string).collect();
                    format!("({}):{}", p.join(","), e)
                })
                .collect();
            write!(f, "{{{}}}", cells.join(", "))
        }
    }
}

impl Serialize for WindowPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.dim == 1 {
            self.exponents().serialize(s)
        } else {
            self.cells.serialize(s)
        }
    }
}

/// The triple `(p, q, b)` defining `F_n(x) = q(x) prod_{i<n} p(x^{b^i})`.
///
/// Monomial factors of `p` and `q` are stripped on construction; window
/// power sums are translation invariant so nothing observable changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    p: ExactPoly,
    q: ExactPoly,
    bases: Vec<u32>,
}

fn strip_monomial(p: &ExactPoly) -> ExactPoly {
    let m = p.to_sparse();
    let shift = m.min_degrees();
    if shift.iter().all(|&s| s == 0) {
        return p.clone();
    }
    let terms = m.terms().iter().map(|(e, c)| {
        (
            e.iter().zip(&shift).map(|(a, s)| a - s).collect(),
            c.clone(),
        )
    });
    ExactPoly::from_sparse(MPoly::from_terms(m.nvars(), terms))
}

impl ProductSpec {
    pub fn new(p: ExactPoly, q: ExactPoly, bases: &[u32]) -> Result<Self> {
        let spec = ProductSpec::new_allow_unit_base(p, q, bases)?;
        if spec.bases.iter().any(|&b| b < 2) {
            return Err(Error::InvalidInput("contraction bases must be >= 2".into()));
        }
        Ok(spec)
    }

    /// Like [`ProductSpec::new`] but admits base 1 (Pascal-type products,
    /// whose closure does not terminate).
    pub fn new_allow_unit_base(p: ExactPoly, q: ExactPoly, bases: &[u32]) -> Result<Self> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = p.nvars();
        if q.nvars() != d {
            return Err(Error::VariableMismatch {
                left: d,
                right: q.nvars(),
            });
        }
        let bases = match bases.len() {
            1 => vec![bases[0]; d],
            n if n == d => bases.to_vec(),
            n => {
                return Err(Error::VariableMismatch { left: d, right: n });
            }
        };
        if bases.contains(&0) {
            return Err(Error::InvalidInput("contraction base 0".into()));
        }
        Ok(ProductSpec {
            p: strip_monomial(&p),
            q: strip_monomial(&q),
            bases,
        })
    }

    /// `p = 1 + x + x^2`, `q = 1`, `b = 2`: Stern's triangle.
    pub fn stern() -> Self {
        ProductSpec::new(ExactPoly::uni(&[1, 1, 1]), ExactPoly::uni(&[1]), &[2]).expect("valid")
    }

    /// `p = (1 + x + ... + x^{b-1})^d`, `q = 1`.
    pub fn geometric_power(d: u32, b: u32) -> Self {
        let base = Poly::from_i64(&vec![1; b as usize]);
        ProductSpec::new(ExactPoly::Uni(base.pow(d)), ExactPoly::uni(&[1]), &[b]).expect("valid")
    }

    pub fn kernel(&self) -> &ExactPoly {
        &self.p
    }

    pub fn prefactor(&self) -> &ExactPoly {
        &self.q
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn nvars(&self) -> usize {
        self.p.nvars()
    }

    pub fn with_prefactor(&self, q: ExactPoly) -> Result<Self> {
        ProductSpec::new_allow_unit_base(self.p.clone(), q, &self.bases)
    }

    /// Centrally symmetric coefficients for both `p` and `q`.
    pub fn is_palindromic(&self) -> bool {
        is_palindromic(&self.p) && is_palindromic(&self.q)
    }
}

pub fn is_palindromic(p: &ExactPoly) -> bool {
    let m = p.to_sparse();
    let top = m.degrees();
    m.terms().iter().all(|(e, c)| {
        let mirror: Vec<u32> = top.iter().zip(e).map(|(t, x)| t - x).collect();
        m.coeff(&mirror) == *c
    })
}

/// Exact coefficient array: integer cells over a common denominator, dense on
/// the bounding box `[0, shape_0) x ... x [0, shape_{d-1})`, last coordinate
/// fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffArray {
    shape: Vec<usize>,
    data: Vec<BigInt>,
    denom: BigInt,
}

impl CoeffArray {
    pub fn from_integers(shape: Vec<usize>, data: Vec<BigInt>) -> Self {
        assert_eq!(shape.iter().product::<usize>(), data.len());
        CoeffArray {
            shape,
            data,
            denom: BigInt::one(),
        }
    }

    pub fn from_row(entries: &[u64]) -> Self {
        CoeffArray::from_integers(
            vec![entries.len()],
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn cell_count(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, index: &[usize]) -> Scalar {
        let flat = flat_index(&self.shape, index);
        Scalar::new(self.data[flat].clone(), self.denom.clone())
    }

    /// One-dimensional coefficient list.
    pub fn values(&self) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|c| Scalar::new(c.clone(), self.denom.clone()))
            .collect()
    }

    /// Nonzero cells in lexicographic order of their exponent vectors.
    pub fn nonzero_cells(&self) -> Vec<(Vec<usize>, Scalar)> {
        let strides = strides(&self.shape);
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| {
                (
                    unflatten(f, &self.shape, &strides),
                    Scalar::new(c.clone(), self.denom.clone()),
                )
            })
            .collect()
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for c in (0..shape.len().saturating_sub(1)).rev() {
        s[c] = s[c + 1] * shape[c + 1];
    }
    s
}

fn flat_index(shape: &[usize], index: &[usize]) -> usize {
    strides(shape).iter().zip(index).map(|(s, i)| s * i).sum()
}

fn unflatten(mut f: usize, shape: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for c in 0..shape.len() {
        idx[c] = f / strides[c];
        f %= strides[c];
    }
    idx
}

/// Integer terms and common denominator of a polynomial.
fn integerize(p: &ExactPoly) -> (Vec<(Vec<usize>, BigInt)>, BigInt) {
    let m = p.to_sparse();
    let den = m
        .terms()
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let terms = m
        .terms()
        .iter()
        .map(|(e, c)| {
            let scaled = c * Scalar::from_integer(den.clone());
            (e.iter().map(|&x| x as usize).collect(), scaled.to_integer())
        })
        .collect();
    (terms, den)
}

/// `arr * sum_t c_t x^{e_t}` on dense integer arrays.
fn convolve(
    shape: &[usize],
    data: &[BigInt],
    terms: &[(Vec<usize>, BigInt)],
) -> (Vec<usize>, Vec<BigInt>) {
    let d = shape.len();
    let mut out_shape = shape.to_vec();
    for (e, _) in terms {
        for c in 0..d {
            out_shape[c] = out_shape[c].max(shape[c] + e[c]);
        }
    }
    let out_strides = strides(&out_shape);
    let in_strides = strides(shape);
    let base: Vec<usize> = (0..data.len())
        .map(|f| {
            unflatten(f, shape, &in_strides)
                .iter()
                .zip(&out_strides)
                .map(|(i, s)| i * s)
                .sum()
        })
        .collect();
    let mut out = vec![BigInt::zero(); out_shape.iter().product()];
    for (e, c) in terms {
        let off: usize = e.iter().zip(&out_strides).map(|(x, s)| x * s).sum();
        for (v, b) in data.iter().zip(&base) {
            if !v.is_zero() {
                out[b + off] += v * c;
            }
        }
    }
    (out_shape, out)
}

/// Projected bounding-box cell count of `F_n`, saturating on overflow.
pub fn projected_cells(spec: &ProductSpec, n: usize) -> u128 {
    let dp = spec.p.to_sparse().degrees();
    let dq = spec.q.to_sparse().degrees();
    let mut cells: u128 = 1;
    for c in 0..spec.nvars() {
        let b = u128::from(spec.bases[c]);
        let mut extent: u128 = u128::from(dq[c]) + 1;
        let mut scale: u128 = 1;
        for _ in 0..n {
            extent = extent.saturating_add(u128::from(dp[c]).saturating_mul(scale));
            scale = scale.saturating_mul(b);
        }
        cells = cells.saturating_mul(extent);
    }
    cells
}

/// Coefficients of `F_n = q(x) prod_{i<n} p(x^{b^i})`.
pub fn gen_coeffs(spec: &ProductSpec, n: usize, limits: &Limits) -> Result<CoeffArray> {
    let cells = projected_cells(spec, n);
    if cells > limits.entry_budget as u128 {
        return Err(Error::SupportTooLarge {
            cells,
            budget: limits.entry_budget,
        });
    }
    let d = spec.nvars();
    let (p_terms, p_den) = integerize(&spec.p);
    let (q_terms, q_den) = integerize(&spec.q);
    let mut shape = vec![1; d];
    let mut data = vec![BigInt::one()];
    let mut scale = vec![1usize; d];
    for _ in 0..n {
        let spread: Vec<(Vec<usize>, BigInt)> = p_terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&scale).map(|(x, s)| x * s).collect(),
                    c.clone(),
                )
            })
            .collect();
        (shape, data) = convolve(&shape, &data, &spread);
        for (s, &b) in scale.iter_mut().zip(&spec.bases) {
            *s *= b as usize;
        }
    }
    (shape, data) = convolve(&shape, &data, &q_terms);
    let denom = q_den * num_traits::pow(p_den, n);
    Ok(CoeffArray { shape, data, denom })
}

/// `sum_k prod_t c_{k + o_t}^{e_t}` over every placement of the window that
/// lies inside the array (placements touching the outside contribute 0).
pub fn window_power_sum(arr: &CoeffArray, alpha: &WindowPattern) -> Result<Scalar> {
    if alpha.dim() != arr.dim() {
        return Err(Error::DimensionMismatch {
            pattern: alpha.dim(),
            array: arr.dim(),
        });
    }
    let ext = alpha.extents();
    if ext.iter().zip(&arr.shape).any(|(e, s)| e > s) {
        return Ok(Scalar::zero());
    }
    let st = strides(&arr.shape);
    let offsets: Vec<(usize, u32)> = alpha
        .cells()
        .iter()
        .map(|(p, e)| (p.iter().zip(&st).map(|(x, s)| *x as usize * s).sum(), *e))
        .collect();
    let ranges: Vec<usize> = arr.shape.iter().zip(&ext).map(|(s, e)| s - e + 1).collect();
    let count: usize = ranges.iter().product();
    let range_strides = strides(&ranges);
    let base_of = |i: usize| -> usize {
        unflatten(i, &ranges, &range_strides)
            .iter()
            .zip(&st)
            .map(|(k, s)| k * s)
            .sum()
    };

    let weight = alpha.weight();
    let max_bits = arr.data.iter().map(|c| c.bits()).max().unwrap_or(0);
    let total = if max_bits * u64::from(weight) <= 62 && count < (1 << 40) {
        let small: Vec<i64> = arr
            .data
            .iter()
            .map(|c| c.to_i64().expect("checked"))
            .collect();
        let mut acc: i128 = 0;
        for i in 0..count {
            let b = base_of(i);
            let mut prod: i64 = 1;
            for &(o, e) in &offsets {
                prod *= small[b + o].pow(e);
                if prod == 0 {
                    break;
                }
            }
            acc += i128::from(prod);
        }
        BigInt::from(acc)
    } else {
        let mut acc = BigInt::zero();
        for i in 0..count {
            let b = base_of(i);
            let mut prod = BigInt::one();
            for &(o, e) in &offsets {
                let v = &arr.data[b + o];
                if v.is_zero() {
                    prod = BigInt::zero();
                    break;
                }
                prod *= num_traits::pow(v.clone(), e as usize);
            }
            acc += prod;
        }
        acc
    };
    Ok(Scalar::new(
        total,
        num_traits::pow(arr.denom.clone(), weight as usize),
    ))
}

/// `u(0), ..., u(n_max)` for each pattern, each generation built from scratch.
/// Every one-dimensional pattern of the given weight and length at most
/// `max_len` (positive end entries, zeros allowed inside), in lexicographic
/// order of exponent lists.
pub fn patterns_of_weight(weight: u32, max_len: usize) -> Vec<WindowPattern> {
    fn extend(prefix: &mut Vec<u32>, left: u32, max_len: usize, out: &mut Vec<WindowPattern>) {
        if left == 0 {
            if prefix.last().is_some_and(|&e| e > 0) {
                out.push(WindowPattern::new(prefix).expect("positive weight"));
            }
            return;
        }
        if prefix.len() == max_len {
            return;
        }
        let lo = u32::from(prefix.is_empty());
        for e in lo..=left {
            prefix.push(e);
            extend(prefix, left - e, max_len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if weight > 0 {
        extend(&mut Vec::new(), weight, max_len, &mut out);
    }
    out.sort_by_key(WindowPattern::exponents);
    out
}

pub fn u_brute_multi(
    spec: &ProductSpec,
    patterns: &[WindowPattern],
    n_max: usize,
    limits: &Limits,
) -> Result<Vec<Vec<Scalar>>> {
    let mut out = vec![Vec::with_capacity(n_max + 1); patterns.len()];
    for n in 0..=n_max {
        let arr = gen_coeffs(spec, n, limits)?;
        for (seq, alpha) in out.iter_mut().zip(patterns) {
            seq.push(window_power_sum(&arr, alpha)?);
        }
    }
    Ok(out)
}

pub fn u_brute(
    spec: &ProductSpec,
    alpha: &WindowPattern,
    n_max: usize,
    limits: &Limits,
) -> Result<Vec<Scalar>> {
    Ok(u_brute_multi(spec, std::slice::from_ref(alpha), n_max, limits)?.remove(0))
}

/// Power sums over rows of Stern's diatomic array.
pub fn v_brute(alpha: &WindowPattern, n_max: usize, limits: &Limits) -> Result<Vec<Scalar>> {
    (0..=n_max)
        .map(|n| {
            let row =
                sternarrays::stern_row_with(n, ArrayKind::Diatomic, RowMethod::Recursive, limits)?;
            window_power_sum(&CoeffArray::from_row(&row.entries), alpha)
        })
        .collect()
}

/// Number of in-range positions of `F_n` (the `alpha = (0)` sum).
pub fn support_count(spec: &ProductSpec, n: usize) -> u128 {
    projected_cells(spec, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::int;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn pat(e: &[u32]) -> WindowPattern {
        WindowPattern::new(e).unwrap()
    }

    #[test]
    fn pattern_canonical_form() {
        assert_eq!(pat(&[0, 2, 1, 0]), pat(&[2, 1]));
        assert_eq!(pat(&[1, 0, 2]).exponents(), vec![1, 0, 2]);
        assert_eq!(pat(&[1, 0, 2]).length(), 3);
        assert_eq!(pat(&[2, 1]).reflected(), pat(&[1, 2]));
        assert_eq!(WindowPattern::new(&[0, 0]), Err(Error::EmptyPattern));
        assert_eq!(pat(&[2, 1]).to_string(), "(2,1)");
    }

    #[test]
    fn stern_generation() {
        let arr = gen_coeffs(&ProductSpec::stern(), 2, &Limits::default()).unwrap();
        assert_eq!(arr.values(), ints(&[1, 1, 2, 1, 2, 1, 1]));
        let arr0 = gen_coeffs(&ProductSpec::stern(), 0, &Limits::default()).unwrap();
        assert_eq!(arr0.values(), ints(&[1]));
    }

    #[test]
    fn squared_binomial_kernel() {
        let spec =
            ProductSpec::new(ExactPoly::uni(&[1, 2, 1]), ExactPoly::uni(&[1]), &[2]).unwrap();
        let arr = gen_coeffs(&spec, 2, &Limits::default()).unwrap();
        assert_eq!(arr.values(), ints(&[1, 2, 3, 4, 3, 2, 1]));
    }

    #[test]
    fn window_sums_on_small_rows() {
        let row1 = CoeffArray::from_row(&[1, 1, 1]);
        assert_eq!(window_power_sum(&row1, &pat(&[1, 1])).unwrap(), int(2));
        let row2 = CoeffArray::from_row(&[1, 1, 2, 1, 2, 1, 1]);
        assert_eq!(window_power_sum(&row2, &pat(&[2])).unwrap(), int(13));
        assert_eq!(window_power_sum(&row2, &pat(&[1, 1])).unwrap(), int(10));
        let two_d = WindowPattern::single(2, 2);
        assert_eq!(
            window_power_sum(&row2, &two_d),
            Err(Error::DimensionMismatch {
                pattern: 2,
                array: 1
            })
        );
    }

    #[test]
    fn brute_sequences() {
        let spec = ProductSpec::stern();
        let l = Limits::default();
        assert_eq!(
            u_brute(&spec, &pat(&[3]), 4, &l).unwrap(),
            ints(&[1, 3, 21, 147, 1029])
        );
        assert_eq!(
            u_brute(&spec, &pat(&[2, 1]), 3, &l).unwrap(),
            ints(&[0, 2, 14, 98])
        );
        assert_eq!(v_brute(&pat(&[2]), 3, &l).unwrap(), ints(&[2, 6, 24, 106]));
    }

    #[test]
    fn monomial_factors_are_stripped() {
        let shifted = ProductSpec::new(
            ExactPoly::uni(&[0, 0, 1, 1, 1]),
            ExactPoly::uni(&[0, 1]),
            &[2],
        )
        .unwrap();
        assert_eq!(shifted, ProductSpec::stern());
    }

    #[test]
    fn rational_kernel_keeps_exactness() {
        let spec = ProductSpec::new(
            ExactPoly::Uni(Poly::new(vec![
                crate::exactnum::scalar::ratio(1, 2),
                int(1),
            ])),
            ExactPoly::uni(&[1]),
            &[2],
        )
        .unwrap();
        let arr = gen_coeffs(&spec, 2, &Limits::default()).unwrap();
        // (1/2 + x)(1/2 + x^2)
        assert_eq!(
            arr.values(),
            vec![
                crate::exactnum::scalar::ratio(1, 4),
                crate::exactnum::scalar::ratio(1, 2),
                crate::exactnum::scalar::ratio(1, 2),
                int(1)
            ]
        );
    }

    #[test]
    fn support_budget() {
        let l = Limits {
            entry_budget: 50,
            ..Limits::default()
        };
        assert!(matches!(
            gen_coeffs(&ProductSpec::stern(), 5, &l),
            Err(Error::SupportTooLarge { cells: 63, .. })
        ));
        assert_eq!(support_count(&ProductSpec::stern(), 20), (1 << 21) - 1);
    }

    #[test]
    fn bases_broadcast_over_variables() {
        let p = MPoly::from_terms(
            2,
            [
                (vec![0, 0], int(1)),
                (vec![1, 0], int(1)),
                (vec![0, 1], int(1)),
            ],
        );
        let spec = ProductSpec::new(
            ExactPoly::Multi(p),
            ExactPoly::Multi(MPoly::constant(2, int(1))),
            &[2],
        )
        .unwrap();
        assert_eq!(spec.bases(), &[2, 2]);
        let arr = gen_coeffs(&spec, 2, &Limits::default()).unwrap();
        // (1+x+y)(1+x^2+y^2) has 9 unit terms
        assert_eq!(arr.nonzero_cells().len(), 9);
        assert_eq!(
            window_power_sum(&arr, &WindowPattern::single(2, 1)).unwrap(),
            int(9)
        );
    }

    #[test]
    fn enumerated_patterns() {
        let shown: Vec<Vec<u32>> = patterns_of_weight(2, 3)
            .iter()
            .map(WindowPattern::exponents)
            .collect();
        assert_eq!(shown, vec![vec![1, 0, 1], vec![1, 1], vec![2]]);
        // compositions of 4 with zeros inside, length <= 4
        assert_eq!(patterns_of_weight(4, 4).len(), 1 + 3 + 6 + 10);
        assert!(patterns_of_weight(0, 3).is_empty());
    }
}
