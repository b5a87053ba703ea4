//! Transfer-matrix closure for windowed power sums.
//!
//! Writing `g_k(n)` for the coefficients of `G_n = prod_{i<n} p(x^{b^i})`,
//! the coefficients of the next generation are
//! `g_k(n+1) = sum_j p_j [b | k - j] g_{(k-j)/b}(n)`. Splitting the window
//! position `k` by its residue mod `b` turns every factor of a window product
//! into a linear form in generation-`n` coefficients; expanding the product
//! and summing over all positions expresses `u_alpha(n+1)` as an integer
//! combination of `u_beta(n)`. Closing under this expansion gives a finite
//! linear system whenever every base is at least 2.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::json as wire;
use crate::exactnum::{ExactPoly, MPoly, Matrix, Scalar};
use crate::limits::Limits;
use crate::powersums::{ProductSpec, WindowPattern};

/// Finitely supported combination of canonical patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternCombo(BTreeMap<WindowPattern, Scalar>);

impl PatternCombo {
    pub fn single(alpha: WindowPattern) -> Self {
        PatternCombo(BTreeMap::from([(alpha, Scalar::one())]))
    }

    pub fn get(&self, beta: &WindowPattern) -> Scalar {
        self.0.get(beta).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WindowPattern, &Scalar)> {
        self.0.iter()
    }

    pub fn patterns(&self) -> impl Iterator<Item = &WindowPattern> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&mut self, beta: WindowPattern, c: Scalar) {
        let slot = self.0.entry(beta).or_insert_with(Scalar::zero);
        *slot += c;
    }

    fn prune(&mut self) {
        self.0.retain(|_, c| !c.is_zero());
    }

    /// Largest pattern length present (the spread of the expansion).
    pub fn spread(&self) -> usize {
        self.0.keys().map(WindowPattern::length).max().unwrap_or(0)
    }
}

fn lex_cmp(a: &WindowPattern, b: &WindowPattern) -> Ordering {
    if a.dim() == 1 && b.dim() == 1 {
        a.exponents().cmp(&b.exponents())
    } else {
        a.cmp(b)
    }
}

/// Representative of a pattern: as given, or with symmetry the
/// lexicographically smaller of the pattern and its reflection.
pub fn canonicalize(beta: &WindowPattern, use_symmetry: bool) -> WindowPattern {
    if !use_symmetry {
        return beta.clone();
    }
    let r = beta.reflected();
    if lex_cmp(&r, beta) == Ordering::Less {
        r
    } else {
        beta.clone()
    }
}

/// Trims a raw one-dimensional exponent list and picks its representative.
pub fn canonicalize_exponents(raw: &[u32], use_symmetry: bool) -> Result<WindowPattern> {
    Ok(canonicalize(&WindowPattern::new(raw)?, use_symmetry))
}

/// Orientation used for presentation and ordering: with symmetry, the
/// lexicographically larger of the pattern and its reflection (so the
/// class of `(1,3)` is shown as `(3,1)`).
pub fn display_form(beta: &WindowPattern, use_symmetry: bool) -> WindowPattern {
    if !use_symmetry {
        return beta.clone();
    }
    let r = beta.reflected();
    if lex_cmp(&r, beta) == Ordering::Greater {
        r
    } else {
        beta.clone()
    }
}

/// Closure order: length ascending; length 2 by first exponent descending;
/// everything else lexicographically ascending on the display form.
fn order_key(beta: &WindowPattern, use_symmetry: bool) -> (usize, Vec<i64>) {
    let shown = display_form(beta, use_symmetry);
    if shown.dim() != 1 {
        let flat = shown
            .cells()
            .iter()
            .flat_map(|(p, e)| p.iter().copied().chain(std::iter::once(i64::from(*e))))
            .collect();
        return (shown.length(), flat);
    }
    let e: Vec<i64> = shown.exponents().into_iter().map(i64::from).collect();
    let key = if e.len() == 2 { vec![-e[0], e[1]] } else { e };
    (shown.length(), key)
}

type Term = (Vec<i64>, Scalar);

fn sparse_terms(p: &MPoly) -> Vec<Term> {
    p.terms()
        .iter()
        .map(|(e, c)| (e.iter().map(|&x| i64::from(x)).collect(), c.clone()))
        .collect()
}

/// Expresses `u_alpha(n+1)` over generation `n` for the recursion
/// `g_k(n+1) = sum_j kernel_j [b | k - j] g_{(k-j)/b}(n)`.
pub fn expand(
    kernel: &ExactPoly,
    contraction: &[u32],
    alpha: &WindowPattern,
    use_symmetry: bool,
) -> Result<PatternCombo> {
    expand_terms(
        &sparse_terms(&kernel.to_sparse()),
        contraction,
        alpha,
        use_symmetry,
    )
}

fn expand_terms(
    kernel: &[Term],
    contraction: &[u32],
    alpha: &WindowPattern,
    use_symmetry: bool,
) -> Result<PatternCombo> {
    let d = alpha.dim();
    if kernel.iter().any(|(e, _)| e.len() != d) || contraction.len() != d {
        return Err(Error::DimensionMismatch {
            pattern: d,
            array: kernel.first().map_or(contraction.len(), |(e, _)| e.len()),
        });
    }
    if !kernel
        .iter()
        .any(|(e, c)| e.iter().all(|&x| x == 0) && !c.is_zero())
    {
        return Err(Error::KernelConstantTermZero);
    }
    if contraction.contains(&0) {
        return Err(Error::InvalidInput("contraction must be >= 1".into()));
    }
    let b: Vec<i64> = contraction.iter().map(|&x| i64::from(x)).collect();

    let mut combo = PatternCombo::default();
    let residue_count: usize = contraction.iter().map(|&x| x as usize).product();
    for r in 0..residue_count {
        // mixed-radix decode of the residue vector
        let mut s = vec![0i64; d];
        let mut rem = r;
        for c in (0..d).rev() {
            s[c] = (rem % contraction[c] as usize) as i64;
            rem /= contraction[c] as usize;
        }

        // each window cell becomes a linear form over offsets delta
        let mut forms: Vec<(Vec<(Vec<i64>, Scalar)>, u32)> =
            Vec::with_capacity(alpha.cells().len());
        let mut dead = false;
        for (o, e) in alpha.cells() {
            let mut form: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
            for (j, c) in kernel {
                let t: Vec<i64> = (0..d).map(|k| s[k] + o[k] - j[k]).collect();
                if t.iter().zip(&b).all(|(t, b)| t.rem_euclid(*b) == 0) {
                    let delta = t.iter().zip(&b).map(|(t, b)| t.div_euclid(*b)).collect();
                    *form.entry(delta).or_insert_with(Scalar::zero) += c;
                }
            }
            form.retain(|_, c| !c.is_zero());
            if form.is_empty() {
                dead = true;
                break;
            }
            forms.push((form.into_iter().collect(), *e));
        }
        if dead {
            continue;
        }

        let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for (form, _) in &forms {
            for (delta, _) in form {
                let next = index.len();
                index.entry(delta.clone()).or_insert(next);
            }
        }
        let vars: Vec<Vec<i64>> = {
            let mut v = vec![Vec::new(); index.len()];
            for (delta, &i) in &index {
                v[i] = delta.clone();
            }
            v
        };
        let mut product: HashMap<Vec<u32>, Scalar> =
            HashMap::from([(vec![0; vars.len()], Scalar::one())]);
        for (form, e) in &forms {
            let linear: Vec<(usize, &Scalar)> =
                form.iter().map(|(delta, c)| (index[delta], c)).collect();
            for _ in 0..*e {
                let mut next: HashMap<Vec<u32>, Scalar> =
                    HashMap::with_capacity(product.len() * linear.len());
                for (mono, coef) in &product {
                    for &(v, c) in &linear {
                        let mut m = mono.clone();
                        m[v] += 1;
                        *next.entry(m).or_insert_with(Scalar::zero) += coef * c;
                    }
                }
                product = next;
            }
        }
        for (mono, coef) in product {
            if coef.is_zero() {
                continue;
            }
            let beta = WindowPattern::from_cells(
                d,
                mono.iter().enumerate().map(|(i, &k)| (vars[i].clone(), k)),
            )?;
            combo.add(canonicalize(&beta, use_symmetry), coef);
        }
    }
    combo.prune();
    Ok(combo)
}

/// The finite linear system `v(n+1) = A v(n)` over a child-closed pattern
/// list, plus the functional that reads off the requested power sum.
#[derive(Clone, Debug)]
pub struct TransferSystem {
    pub spec: ProductSpec,
    pub alpha: WindowPattern,
    pub use_symmetry: bool,
    /// Child-closed pattern list in presentation order.
    pub closure: Vec<WindowPattern>,
    /// Row `i` is the expansion of `u_{closure[i]}(n+1)` over generation `n`.
    pub matrix: Matrix,
    /// `u_{closure[i]}(0)` for `G_0 = 1`.
    pub v0: Vec<Scalar>,
    /// Coefficients expressing the `q`-weighted sum over the closure.
    pub front_end: Vec<Scalar>,
}

impl TransferSystem {
    pub fn size(&self) -> usize {
        self.closure.len()
    }

    pub fn index_of(&self, beta: &WindowPattern) -> Option<usize> {
        let beta = canonicalize(beta, self.use_symmetry);
        self.closure.iter().position(|c| *c == beta)
    }

    /// Values `u(0), ..., u(n_max)`.
    pub fn iterate(&self, n_max: usize) -> Vec<Scalar> {
        let mut v = self.v0.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            out.push(dot(&self.front_end, &v));
            if n < n_max {
                v = self.matrix.mul_vec(&v);
            }
        }
        out
    }

    /// Values of every closure pattern, `states[n][i] = u_{closure[i]}(n)`.
    pub fn states(&self, n_max: usize) -> Vec<Vec<Scalar>> {
        let mut v = self.v0.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for _ in 0..=n_max {
            let next = self.matrix.mul_vec(&v);
            out.push(std::mem::replace(&mut v, next));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let closure: Vec<WindowPattern> = self
            .closure
            .iter()
            .map(|c| display_form(c, self.use_symmetry))
            .collect();
        let front_end: serde_json::Map<String, Value> = self
            .closure
            .iter()
            .zip(&self.front_end)
            .filter(|(_, c)| !c.is_zero())
            .map(|(beta, c)| {
                (
                    display_form(beta, self.use_symmetry).to_string(),
                    wire::scalar_to_json(c),
                )
            })
            .collect();
        json!({
            "alpha": display_form(&self.alpha, self.use_symmetry),
            "symmetry": self.use_symmetry,
            "closure": closure,
            "matrix": self.matrix.to_decimal_rows(),
            "front_end": front_end,
            "v0": wire::scalars_to_json(&self.v0),
        })
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn build_system(
    spec: &ProductSpec,
    alpha: &WindowPattern,
    use_symmetry: bool,
) -> Result<TransferSystem> {
    build_system_with(spec, alpha, use_symmetry, &Limits::default())
}

pub fn build_system_with(
    spec: &ProductSpec,
    alpha: &WindowPattern,
    use_symmetry: bool,
    limits: &Limits,
) -> Result<TransferSystem> {
    if use_symmetry && !spec.is_palindromic() {
        return Err(Error::SymmetryInvalid);
    }
    if alpha.dim() != spec.nvars() {
        return Err(Error::DimensionMismatch {
            pattern: alpha.dim(),
            array: spec.nvars(),
        });
    }
    let alpha = canonicalize(alpha, use_symmetry);
    let d = spec.nvars();
    let kernel = sparse_terms(&spec.kernel().to_sparse());
    let front = if spec.prefactor().is_one() {
        PatternCombo::single(alpha.clone())
    } else {
        expand_terms(
            &sparse_terms(&spec.prefactor().to_sparse()),
            &vec![1; d],
            &alpha,
            use_symmetry,
        )?
    };

    let mut expansions: BTreeMap<WindowPattern, PatternCombo> = BTreeMap::new();
    let mut queue: VecDeque<WindowPattern> = front.patterns().cloned().collect();
    let mut seen: std::collections::BTreeSet<WindowPattern> = queue.iter().cloned().collect();
    if seen.len() > limits.closure_budget {
        return Err(Error::ClosureBudgetExceeded {
            budget: limits.closure_budget,
        });
    }
    while let Some(beta) = queue.pop_front() {
        let combo = expand_terms(&kernel, spec.bases(), &beta, use_symmetry)?;
        for child in combo.patterns() {
            if seen.insert(child.clone()) {
                if seen.len() > limits.closure_budget {
                    return Err(Error::ClosureBudgetExceeded {
                        budget: limits.closure_budget,
                    });
                }
                queue.push_back(child.clone());
            }
        }
        expansions.insert(beta, combo);
    }

    let mut closure: Vec<WindowPattern> = seen.into_iter().collect();
    closure.sort_by_cached_key(|beta| order_key(beta, use_symmetry));
    let position: BTreeMap<&WindowPattern, usize> =
        closure.iter().enumerate().map(|(i, b)| (b, i)).collect();

    let n = closure.len();
    let mut matrix = Matrix::zeros(n);
    for (i, beta) in closure.iter().enumerate() {
        for (child, c) in expansions[beta].iter() {
            matrix.set(i, position[child], c.clone());
        }
    }
    let v0 = closure
        .iter()
        .map(|b| {
            if b.is_single_site() {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let mut front_end = vec![Scalar::zero(); n];
    for (beta, c) in front.iter() {
        front_end[position[beta]] = c.clone();
    }
    Ok(TransferSystem {
        spec: spec.clone(),
        alpha,
        use_symmetry,
        closure,
        matrix,
        v0,
        front_end,
    })
}

/// Values of `u_alpha` from the transfer system.
pub fn iterate(system: &TransferSystem, n_max: usize) -> Vec<Scalar> {
    system.iterate(n_max)
}

fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut acc = num_bigint::BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Scalar::from_integer(acc)
}

/// Matrix of `f(x, y) -> f(x+y, y) + f(x, x+y)` on homogeneous polynomials of
/// degree `r`, basis `x^i y^{r-i}` for `i = 0..=r`; column `i` is the image
/// of the `i`-th basis monomial.
pub fn speyer_matrix(r: usize) -> Matrix {
    let mut m = Matrix::zeros(r + 1);
    for i in 0..=r {
        for k in 0..=r {
            // (x+y)^i y^{r-i} contributes C(i,k) x^k; x^i (x+y)^{r-i} contributes C(r-i,k-i)
            let mut v = binomial(i, k);
            if k >= i {
                v += binomial(r - i, k - i);
            }
            m.set(k, i, v);
        }
    }
    m
}

/// Positive `d_i^2` with `d_i^2 B_ij = d_j^2 B_ji`, normalized so the first
/// vertex of every connected component gets 1. Found along a BFS spanning
/// forest of the support graph and verified on every edge.
pub fn diagonal_symmetrize(b: &Matrix) -> Result<Vec<Scalar>> {
    let n = b.dim();
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j).is_zero() != b.get(j, i).is_zero() {
                return Err(Error::NotSymmetrizable { row: i, col: j });
            }
        }
    }
    let mut weight: Vec<Option<Scalar>> = vec![None; n];
    for root in 0..n {
        if weight[root].is_some() {
            continue;
        }
        weight[root] = Some(Scalar::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let wi = weight[i].clone().expect("assigned");
            for j in 0..n {
                if j == i || b.get(i, j).is_zero() || weight[j].is_some() {
                    continue;
                }
                let wj = &wi * b.get(i, j) / b.get(j, i);
                if !wj.is_positive() {
                    return Err(Error::NotSymmetrizable { row: i, col: j });
                }
                weight[j] = Some(wj);
                queue.push_back(j);
            }
        }
    }
    let weight: Vec<Scalar> = weight
        .into_iter()
        .map(|w| w.expect("all visited"))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if &weight[i] * b.get(i, j) != &weight[j] * b.get(j, i) {
                return Err(Error::NotSymmetrizable { row: i, col: j });
            }
        }
    }
    Ok(weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::int;
    use crate::exactnum::Poly;

    fn pat(e: &[u32]) -> WindowPattern {
        WindowPattern::new(e).unwrap()
    }

    fn combo(entries: &[(&[u32], i64)]) -> PatternCombo {
        let mut c = PatternCombo::default();
        for (e, v) in entries {
            c.add(pat(e), int(*v));
        }
        c
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(
            canonicalize_exponents(&[0, 2, 1, 0], true).unwrap(),
            pat(&[1, 2])
        );
        assert_eq!(
            canonicalize_exponents(&[1, 2], false).unwrap(),
            pat(&[1, 2])
        );
        assert_eq!(canonicalize_exponents(&[2, 1], true).unwrap(), pat(&[1, 2]));
        assert_eq!(
            canonicalize_exponents(&[0, 0], true),
            Err(Error::EmptyPattern)
        );
        // interior zeros compare as exponent lists
        assert_eq!(
            canonicalize_exponents(&[2, 0, 1], true).unwrap(),
            pat(&[1, 0, 2])
        );
    }

    #[test]
    fn stern_expansions() {
        let k = ExactPoly::uni(&[1, 1, 1]);
        let e = |a: &[u32]| expand(&k, &[2], &pat(a), true).unwrap();
        assert_eq!(e(&[2]), combo(&[(&[2], 3), (&[1, 1], 2)]));
        assert_eq!(e(&[1, 1]), combo(&[(&[2], 2), (&[1, 1], 2)]));
        assert_eq!(e(&[3]), combo(&[(&[3], 3), (&[1, 2], 6)]));
        assert_eq!(e(&[2, 1]), combo(&[(&[3], 2), (&[1, 2], 4)]));
    }

    #[test]
    fn zero_constant_term_rejected() {
        let k = ExactPoly::uni(&[0, 1, 1]);
        assert_eq!(
            expand(&k, &[2], &pat(&[2]), true),
            Err(Error::KernelConstantTermZero)
        );
    }

    #[test]
    fn small_systems() {
        let s = build_system(&ProductSpec::stern(), &pat(&[1]), true).unwrap();
        assert_eq!(s.closure, vec![pat(&[1])]);
        assert_eq!(s.matrix, Matrix::from_i64(&[&[3]]).unwrap());

        let s4 = build_system(&ProductSpec::stern(), &pat(&[4]), true).unwrap();
        let shown: Vec<Vec<u32>> = s4
            .closure
            .iter()
            .map(|c| display_form(c, true).exponents())
            .collect();
        assert_eq!(shown, vec![vec![4], vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn iteration_matches_known_values() {
        let s2 = build_system(&ProductSpec::stern(), &pat(&[2]), true).unwrap();
        let expect: Vec<Scalar> = [1, 3, 13, 59, 269, 1227, 5597, 25531]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(s2.iterate(7), expect);
        let spec =
            ProductSpec::new(ExactPoly::uni(&[1, 2, 1]), ExactPoly::uni(&[1]), &[2]).unwrap();
        let s = build_system(&spec, &pat(&[2]), true).unwrap();
        assert_eq!(s.iterate(2), vec![int(1), int(6), int(44)]);
    }

    #[test]
    fn symmetry_needs_palindromes() {
        let spec =
            ProductSpec::new(ExactPoly::uni(&[1, 2, 3]), ExactPoly::uni(&[1]), &[2]).unwrap();
        assert_eq!(
            build_system(&spec, &pat(&[2]), true).unwrap_err(),
            Error::SymmetryInvalid
        );
        assert!(build_system(&spec, &pat(&[2]), false).is_ok());
    }

    #[test]
    fn pascal_closure_diverges() {
        let spec =
            ProductSpec::new_allow_unit_base(ExactPoly::uni(&[1, 1]), ExactPoly::uni(&[1]), &[1])
                .unwrap();
        let limits = Limits {
            closure_budget: 200,
            ..Limits::default()
        };
        assert_eq!(
            build_system_with(&spec, &pat(&[2]), false, &limits).unwrap_err(),
            Error::ClosureBudgetExceeded { budget: 200 }
        );
    }

    #[test]
    fn speyer_small_cases() {
        let b1 = speyer_matrix(1);
        assert_eq!(b1, Matrix::from_i64(&[&[2, 1], &[1, 2]]).unwrap());
        assert_eq!(b1.charpoly(), Poly::from_roots(&[1, 3]));
        for r in 1..8 {
            assert_eq!(*speyer_matrix(r).get(r, r), int(2));
        }
    }

    #[test]
    fn symmetrization() {
        let sym = Matrix::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(diagonal_symmetrize(&sym).unwrap(), vec![int(1), int(1)]);
        let a2 = Matrix::from_i64(&[&[3, 2], &[2, 2]]).unwrap();
        assert_eq!(diagonal_symmetrize(&a2).unwrap(), vec![int(1), int(1)]);
        let bad = Matrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(
            diagonal_symmetrize(&bad),
            Err(Error::NotSymmetrizable { row: 0, col: 1 })
        );
        let neg = Matrix::from_i64(&[&[1, 1], &[-1, 1]]).unwrap();
        assert!(diagonal_symmetrize(&neg).is_err());
        let w = diagonal_symmetrize(&speyer_matrix(4)).unwrap();
        assert!(w.iter().all(Signed::is_positive));
    }
    #[test]
    fn four_window_matrix() {
        let s = build_system(&ProductSpec::stern(), &pat(&[1, 1, 1, 1]), true).unwrap();
        let shown: Vec<Vec<u32>> = s
            .closure
            .iter()
            .map(|c| display_form(c, true).exponents())
            .collect();
        let order: Vec<Vec<u32>> = vec![
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![1, 2, 1],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ];
        assert_eq!(shown, order);
        let expect = Matrix::from_i64(&[
            &[3, 8, 6, 0, 0, 0],
            &[2, 5, 3, 0, 0, 0],
            &[2, 4, 2, 0, 0, 0],
            &[1, 4, 2, 1, 0, 0],
            &[1, 4, 2, 2, 1, 0],
            &[0, 2, 2, 2, 2, 0],
        ])
        .unwrap();
        assert_eq!(s.matrix, expect);
        // the 211 row against direct window sums of rows 1..5
        let brute211 = brute(&ProductSpec::stern(), &pat(&[2, 1, 1]), 6);
        let states = s.states(5);
        for n in 0..5 {
            assert_eq!(dot(s.matrix.row(4), &states[n]), brute211[n + 1]);
        }
    }

    #[test]
    fn single_site_closure_sizes() {
        for r in 1..=40u32 {
            let s = build_system(&ProductSpec::stern(), &pat(&[r]), true).unwrap();
            assert_eq!(s.size(), 1 + (r as usize) / 2, "r = {r}");
        }
    }

    fn brute(spec: &ProductSpec, alpha: &WindowPattern, n: usize) -> Vec<Scalar> {
        crate::powersums::u_brute(spec, alpha, n, &Limits::default()).unwrap()
    }

    #[test]
    fn agrees_with_brute_force() {
        let cases: Vec<(ProductSpec, Vec<u32>)> = vec![
            (ProductSpec::stern(), vec![3]),
            (ProductSpec::stern(), vec![2, 0, 1]),
            (ProductSpec::stern(), vec![1, 1, 1, 1]),
            (ProductSpec::geometric_power(2, 3), vec![2, 1]),
            (
                ProductSpec::new(ExactPoly::uni(&[2, -1, 3]), ExactPoly::uni(&[1, 1]), &[2])
                    .unwrap(),
                vec![2, 1],
            ),
            (
                ProductSpec::new(ExactPoly::uni(&[1, 1, 1]), ExactPoly::uni(&[1, 0, 2]), &[3])
                    .unwrap(),
                vec![2],
            ),
        ];
        for (spec, a) in cases {
            let alpha = pat(&a);
            let sym = spec.is_palindromic();
            for use_symmetry in [false, sym] {
                let s = build_system(&spec, &alpha, use_symmetry).unwrap();
                assert_eq!(
                    s.iterate(6),
                    brute(&spec, &alpha, 6),
                    "{alpha} sym={use_symmetry}"
                );
            }
        }
    }

    #[test]
    fn multivariate_agrees_with_brute_force() {
        let p = ExactPoly::Multi(MPoly::from_terms(
            2,
            [
                (vec![0, 0], int(1)),
                (vec![1, 0], int(1)),
                (vec![0, 1], int(1)),
            ],
        ));
        let p2 = crate::exactnum::poly_arithmetic(&p, &p, crate::exactnum::PolyOp::Mul).unwrap();
        let q = ExactPoly::Multi(MPoly::constant(2, int(1)));
        for bases in [[2, 2], [2, 3]] {
            let spec = ProductSpec::new(p2.clone(), q.clone(), &bases).unwrap();
            let alpha = WindowPattern::single(2, 2);
            assert_eq!(
                build_system(&spec, &alpha, true).unwrap_err(),
                Error::SymmetryInvalid
            );
            let s = build_system(&spec, &alpha, false).unwrap();
            assert_eq!(s.iterate(3), brute(&spec, &alpha, 3));
        }
    }

    #[test]
    fn spread_is_bounded() {
        let k = ExactPoly::uni(&[1, 1, 1]);
        for a in [
            vec![5],
            vec![1, 2, 3],
            vec![1, 0, 0, 4, 1],
            vec![2, 2, 2, 2, 2, 2, 2],
        ] {
            let alpha = pat(&a);
            let l = alpha.length();
            let e = expand(&k, &[2], &alpha, false).unwrap();
            assert!(e.spread() <= 2 + (l - 1) / 2);
        }
    }
}
