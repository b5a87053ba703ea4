//! Square matrices over the rationals: characteristic and minimal polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n);
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Evaluates a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let mut acc = Matrix::zeros(self.n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                acc.data[i * self.n + i] += c;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
        .expect("square by construction")
    }

    /// `det(xI - M)`: division-free Berkowitz for integral matrices, otherwise
    /// reduction to upper Hessenberg form by similarity transforms.
    pub fn charpoly(&self) -> Poly {
        if let Some(int) = IntMatrix::from_matrix(self) {
            return int.charpoly();
        }
        let n = self.n;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if piv != m {
                h.swap_rows(piv, m);
                h.swap_cols(piv, m);
            }
            let inv = h.get(m, m - 1).recip();
            for j in m + 1..n {
                let u = h.get(j, m - 1) * &inv;
                if u.is_zero() {
                    continue;
                }
                // row_j -= u * row_m ; col_m += u * col_j
                for k in 0..n {
                    let t = &u * h.get(m, k);
                    h.data[j * n + k] -= t;
                }
                for k in 0..n {
                    let t = &u * h.get(k, j);
                    h.data[k * n + m] += t;
                }
            }
        }
        // p_{m+1} = (x - h_mm) p_m - sum_{i<m} (prod_{k=i+1..m} h_{k,k-1}) h_{i,m} p_i
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut next = &Poly::linear(h.get(m, m).clone()) * &ps[m];
            let mut t = Scalar::one();
            for i in (0..m).rev() {
                t *= h.get(i + 1, i);
                if t.is_zero() {
                    break;
                }
                let c = &t * h.get(i, m);
                if !c.is_zero() {
                    next = &next - &ps[i].scale(&c);
                }
            }
            ps.push(next);
        }
        ps.pop().expect("nonempty")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.n {
            self.data.swap(a * self.n + k, b * self.n + k);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for k in 0..self.n {
            self.data.swap(k * self.n + a, k * self.n + b);
        }
    }

    /// Monic annihilator of `v` of least degree.
    pub fn vector_minpoly(&self, v: &[Scalar]) -> Poly {
        struct Row {
            pivot: usize,
            vec: Vec<Scalar>,
            poly: Poly,
        }
        let mut basis: Vec<Row> = Vec::new();
        let mut cur = v.to_vec();
        let mut degree = 0usize;
        loop {
            let mut w = cur.clone();
            let mut wp = Poly::monomial(Scalar::one(), degree);
            for row in &basis {
                if w[row.pivot].is_zero() {
                    continue;
                }
                let c = w[row.pivot].clone();
                for (x, y) in w.iter_mut().zip(&row.vec) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
                wp = &wp - &row.poly.scale(&c);
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => return wp,
                Some(pivot) => {
                    let s = w[pivot].recip();
                    for x in w.iter_mut() {
                        *x *= &s;
                    }
                    basis.push(Row {
                        pivot,
                        vec: w,
                        poly: wp.scale(&s),
                    });
                }
            }
            cur = self.mul_vec(&cur);
            degree += 1;
        }
    }

    /// Minimal polynomial as the lcm of the Krylov annihilators of the
    /// standard basis vectors. Integral matrices start from a generic vector,
    /// which usually captures the whole minimal polynomial at once.
    pub fn minpoly(&self) -> Poly {
        if let Some(int) = IntMatrix::from_matrix(self) {
            return int.minpoly();
        }
        let mut acc = Poly::one();
        for j in 0..self.n {
            if acc.degree() == Some(self.n) {
                break;
            }
            let mut e = vec![Scalar::zero(); self.n];
            e[j] = Scalar::one();
            // skip vectors already annihilated by the running lcm
            if self.poly_apply(&acc, &e).iter().all(Zero::is_zero) {
                continue;
            }
            acc = acc.lcm(&self.vector_minpoly(&e));
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|c| c.is_integer())
    }

    /// `p(M) v` without forming `p(M)`.
    pub fn poly_apply(&self, p: &Poly, v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.n];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += c * x;
            }
        }
        acc
    }

    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(scalar::to_decimal).collect())
            .collect()
    }
}

/// Integer matrix for fraction-free Krylov work.
struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    fn from_matrix(m: &Matrix) -> Option<Self> {
        m.is_integral().then(|| IntMatrix {
            n: m.n,
            data: m.data.iter().map(|c| c.to_integer()).collect(),
        })
    }

    fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.data
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `c * p(M) v` for the primitive integer multiple `c * p`.
    fn poly_apply(&self, p: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.n];
        for c in p.iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += c * x;
            }
        }
        acc
    }

    /// Krylov elimination keeping every row a primitive integer vector.
    fn vector_minpoly(&self, v: &[BigInt]) -> Vec<BigInt> {
        struct Row {
            pivot: usize,
            vec: Vec<BigInt>,
            poly: Vec<BigInt>,
        }
        let mut basis: Vec<Row> = Vec::new();
        let mut cur = v.to_vec();
        loop {
            let degree = basis.len();
            let mut w = cur.clone();
            let mut wp = vec![BigInt::zero(); degree + 1];
            wp[degree] = BigInt::one();
            for row in &basis {
                if w[row.pivot].is_zero() {
                    continue;
                }
                let g = w[row.pivot].gcd(&row.vec[row.pivot]);
                let a = &row.vec[row.pivot] / &g;
                let b = &w[row.pivot] / &g;
                for (x, y) in w.iter_mut().zip(&row.vec) {
                    *x = &a * &*x - &b * y;
                }
                for (i, x) in wp.iter_mut().enumerate() {
                    let y = row.poly.get(i).map_or_else(BigInt::zero, |y| &b * y);
                    *x = &a * &*x - y;
                }
            }
            let content = w.iter().chain(&wp).fold(BigInt::zero(), |g, c| g.gcd(c));
            if !content.is_zero() && !content.is_one() {
                for x in w.iter_mut().chain(wp.iter_mut()) {
                    *x = &*x / &content;
                }
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => return super::poly::primitive(wp),
                Some(pivot) => basis.push(Row {
                    pivot,
                    vec: w,
                    poly: wp,
                }),
            }
            cur = self.mul_vec(&cur);
        }
    }

    fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    /// Berkowitz: grows the leading principal minor one row at a time,
    /// multiplying by a Toeplitz matrix built from `R A^i C`.
    fn charpoly(&self) -> Poly {
        // descending coefficients of det(xI - A_k)
        let mut p: Vec<BigInt> = vec![BigInt::one()];
        for k in 0..self.n {
            let mut t = Vec::with_capacity(k + 2);
            t.push(BigInt::one());
            t.push(-self.get(k, k));
            let mut col: Vec<BigInt> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rc: BigInt = (0..k).map(|j| self.get(k, j) * &col[j]).sum();
                t.push(-rc);
                col = (0..k)
                    .map(|i| (0..k).map(|j| self.get(i, j) * &col[j]).sum())
                    .collect();
            }
            let next: Vec<BigInt> = (0..=k + 1)
                .map(|i| (0..=k.min(i)).map(|j| &t[i - j] * &p[j]).sum())
                .collect();
            p = next;
        }
        p.reverse();
        Poly::from_integers(p)
    }

    fn minpoly(&self) -> Poly {
        let n = self.n;
        // deterministic vector with distinct entries
        let generic: Vec<BigInt> = (0..n).map(|j| BigInt::from(j * j + 3 * j + 1)).collect();
        let mut acc = self.vector_minpoly(&generic);
        for j in 0..n {
            if acc.len() == n + 1 {
                break;
            }
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            if self.poly_apply(&acc, &e).iter().all(Zero::is_zero) {
                continue;
            }
            let p = Poly::from_integers(acc).lcm(&Poly::from_integers(self.vector_minpoly(&e)));
            acc = p.primitive_part();
        }
        Poly::from_integers(acc).monic()
    }
}

/// `det(xI - M)`.
pub fn charpoly(m: &Matrix) -> Poly {
    m.charpoly()
}

/// Least-degree monic `P` with `P(M) = 0`.
pub fn minpoly_matrix(m: &Matrix) -> Poly {
    m.minpoly()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(scalar::to_decimal).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_examples() {
        let a2 = Matrix::from_i64(&[&[3, 2], &[2, 2]]).unwrap();
        assert_eq!(a2.charpoly(), Poly::from_i64(&[2, -5, 1]));
        assert_eq!(a2.minpoly(), Poly::from_i64(&[2, -5, 1]));
        let a3 = Matrix::from_i64(&[&[3, 6], &[2, 4]]).unwrap();
        assert_eq!(a3.charpoly(), Poly::from_i64(&[0, -7, 1]));
        assert_eq!(a3.minpoly(), Poly::from_i64(&[0, -7, 1]));
    }

    #[test]
    fn identity_polynomials() {
        for n in 1..5 {
            let id = Matrix::identity(n);
            assert_eq!(id.minpoly(), Poly::from_i64(&[-1, 1]));
            assert_eq!(id.charpoly(), Poly::from_i64(&[-1, 1]).pow(n as u32));
        }
    }

    #[test]
    fn nilpotent_jordan_block() {
        let j = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(j.minpoly(), Poly::monomial(Scalar::one(), 3));
        assert_eq!(j.charpoly(), Poly::monomial(Scalar::one(), 3));
    }

    #[test]
    fn minpoly_annihilates() {
        let m = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let mp = m.minpoly();
        assert_eq!(mp, Poly::from_roots(&[1, 1]));
        assert!(m.eval_poly(&mp).is_zero());
    }

    /// `M/2` is not integral, so it exercises the rational routines;
    /// `f_{M/2}(x) = f_M(2x) / 2^deg` ties the two paths together.
    #[test]
    fn integer_and_rational_paths_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let half = scalar::ratio(1, 2);
        for n in 1..7 {
            for _ in 0..6 {
                // small entries give repeated eigenvalues often enough
                let rows: Vec<Vec<Scalar>> = (0..n)
                    .map(|_| (0..n).map(|_| scalar::int(rng.gen_range(-2..=2))).collect())
                    .collect();
                let m = Matrix::from_rows(rows).unwrap();
                let h = Matrix::from_rows(
                    m.rows()
                        .map(|r| r.iter().map(|c| c * &half).collect())
                        .collect(),
                )
                .unwrap();
                if h.is_integral() {
                    continue;
                }
                for (fm, fh) in [(m.charpoly(), h.charpoly()), (m.minpoly(), h.minpoly())] {
                    let d = fm.degree().unwrap();
                    let rescaled = Poly::new(
                        fm.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(i, c)| c * scalar::pow(&half, (d - i) as u32))
                            .collect(),
                    );
                    assert_eq!(rescaled, fh, "{m}");
                }
                assert!(m.eval_poly(&m.minpoly()).is_zero());
            }
        }
    }

    #[test]
    fn non_square_rejected() {
        assert_eq!(Matrix::from_i64(&[&[1, 2]]), Err(Error::NotSquare));
    }
}
