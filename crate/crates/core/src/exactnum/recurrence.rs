//! Least-order constant-coefficient recurrences of exact sequences.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Output of [`berlekamp_massey`]: the connection polynomial
/// `C(x) = 1 + c_1 x + ... + c_L x^L` and its register length `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrFit {
    pub connection: Vec<Scalar>,
    pub length: usize,
    /// Index of the term that last forced the length to grow.
    pub last_change: Option<usize>,
}

impl LfsrFit {
    /// `R(x) = x^L C(1/x)`, monic of degree `L`.
    pub fn characteristic(&self) -> Poly {
        let mut coeffs = vec![Scalar::zero(); self.length + 1];
        for (j, c) in self.connection.iter().enumerate().take(self.length + 1) {
            coeffs[self.length - j] = c.clone();
        }
        Poly::new(coeffs)
    }
}

/// Berlekamp–Massey over the rationals.
pub fn berlekamp_massey(seq: &[Scalar]) -> LfsrFit {
    let mut c = vec![Scalar::one()];
    let mut b = vec![Scalar::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut prev = Scalar::one();
    let mut last_change = None;

    for i in 0..seq.len() {
        let mut d = seq[i].clone();
        for j in 1..=len.min(c.len() - 1) {
            if !c[j].is_zero() {
                d += &c[j] * &seq[i - j];
            }
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let scale = &d / &prev;
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, Scalar::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                next[j + shift] -= &scale * bj;
            }
        }
        if 2 * len <= i {
            b = std::mem::replace(&mut c, next);
            len = i + 1 - len;
            prev = d;
            shift = 1;
            last_change = Some(i);
        } else {
            c = next;
            shift += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    LfsrFit {
        connection: c,
        length: len,
        last_change,
    }
}

/// A recurrence `sum_k poly_k * f(n + k) = 0` valid for all `n >= n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// Monic characteristic polynomial with nonzero constant term.
    pub poly: Poly,
    pub n0: usize,
}

fn relation_holds(poly: &Poly, seq: &[Scalar], n: usize) -> bool {
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * &seq[n + k])
        .sum::<Scalar>()
        .is_zero()
}

/// Least-degree recurrence of `seq[start..]`, with the validity threshold then
/// pushed back as far as the supplied terms allow.
///
/// Fails with `InsufficientTerms` unless the register length was stable over
/// the final third of the tail and the tail has at least `2L + 2` terms.
pub fn min_recurrence(seq: &[Scalar], start: usize) -> Result<Recurrence> {
    let tail = seq.get(start..).unwrap_or(&[]);
    let fit = berlekamp_massey(tail);
    let terms = tail.len();
    let stable = match fit.last_change {
        None => terms >= 2,
        Some(i) => 3 * (i + 1) <= 2 * terms,
    };
    if !stable || terms < 2 * fit.length + 2 {
        return Err(Error::InsufficientTerms {
            terms,
            length: fit.length,
        });
    }

    let full = fit.characteristic();
    let w = full.coeffs().iter().take_while(|c| c.is_zero()).count();
    let poly = Poly::new(full.coeffs()[w..].to_vec());
    let deg = poly.degree().unwrap_or(0);

    let mut n0 = start + w;
    for n in n0..seq.len().saturating_sub(deg) {
        if !relation_holds(&poly, seq, n) {
            // BM guarantees the relation on its own tail, so this is a bug.
            return Err(Error::InsufficientTerms {
                terms,
                length: fit.length,
            });
        }
    }
    while n0 > 0 && n0 - 1 + deg < seq.len() && relation_holds(&poly, seq, n0 - 1) {
        n0 -= 1;
    }
    Ok(Recurrence { poly, n0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::int;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn squares_of_stern_rows() {
        let seq = ints(&[1, 3, 13, 59, 269, 1227, 5597, 25531]);
        let rec = min_recurrence(&seq, 0).unwrap();
        assert_eq!(rec.poly, Poly::from_i64(&[2, -5, 1]));
        assert_eq!(rec.n0, 0);
    }

    #[test]
    fn cubes_have_a_transient() {
        let mut v = vec![1i64];
        for n in 1..12 {
            v.push(3 * 7i64.pow(n - 1));
        }
        let rec = min_recurrence(&ints(&v), 0).unwrap();
        assert_eq!(rec.poly, Poly::from_i64(&[-7, 1]));
        assert_eq!(rec.n0, 1);
    }

    #[test]
    fn constant_sequence() {
        let rec = min_recurrence(&ints(&[5, 5, 5, 5, 5, 5]), 0).unwrap();
        assert_eq!(rec.poly, Poly::from_i64(&[-1, 1]));
        assert_eq!(rec.n0, 0);
    }

    #[test]
    fn start_index_skips_garbage() {
        let mut v = vec![100i64, -3];
        v.extend((0..12).map(|n| 2i64.pow(n)));
        let rec = min_recurrence(&ints(&v), 2).unwrap();
        assert_eq!(rec.poly, Poly::from_i64(&[-2, 1]));
        assert_eq!(rec.n0, 2);
    }

    #[test]
    fn too_few_terms() {
        let seq = ints(&[1, 3, 13, 59]);
        assert!(matches!(
            min_recurrence(&seq, 0),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn fibonacci_connection() {
        let fit = berlekamp_massey(&ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21]));
        assert_eq!(fit.length, 2);
        assert_eq!(fit.characteristic(), Poly::from_i64(&[-1, -1, 1]));
    }
}
