//! Minimal polynomials, recurrences and the structural claims built on them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::json as wire;
use crate::exactnum::scalar::{self, int, ratio};
use crate::exactnum::{min_recurrence, ExactPoly, Matrix, Poly, Recurrence, Scalar};
use crate::limits::Limits;
use crate::powersums::{self, ProductSpec, WindowPattern};
use crate::transfer::{self, build_system_with, display_form, TransferSystem};

/// Doublings of the term count tried before giving up on a recurrence.
const MAX_DOUBLINGS: usize = 6;

#[derive(Clone, Debug)]
pub struct RecurrenceReport {
    pub alpha: WindowPattern,
    pub spec: ProductSpec,
    pub use_symmetry: bool,
    pub mmp: Poly,
    pub rmp: Poly,
    pub n0: usize,
    pub closure_size: usize,
    pub terms_used: usize,
    pub divisibility_ok: bool,
}

impl RecurrenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": display_form(&self.alpha, self.use_symmetry),
            "symmetry": self.use_symmetry,
            "mmp": wire::poly_to_json(&self.mmp),
            "mmp_text": self.mmp.to_string(),
            "rmp": wire::poly_to_json(&self.rmp),
            "rmp_text": self.rmp.to_string(),
            "n0": self.n0.to_string(),
            "closure_size": self.closure_size.to_string(),
            "terms_used": self.terms_used.to_string(),
            "divisibility_ok": self.divisibility_ok,
        })
    }
}

/// Least recurrence of `iterate(system)` read from at least `start` on,
/// doubling the number of terms while the fit is not yet stable.
pub fn sequence_recurrence(system: &TransferSystem, start: usize) -> Result<(Recurrence, usize)> {
    let mut n_max = start + 3 * system.size() + 6;
    let mut last = None;
    for _ in 0..=MAX_DOUBLINGS {
        let values = system.iterate(n_max);
        match min_recurrence(&values, start) {
            Ok(rec) => return Ok((rec, values.len())),
            Err(e @ Error::InsufficientTerms { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        n_max *= 2;
    }
    Err(last.expect("loop ran"))
}

/// mmp and rmp for `u_alpha`, using the reversal quotient whenever the spec
/// allows it.
pub fn recurrence_report(spec: &ProductSpec, alpha: &WindowPattern) -> Result<RecurrenceReport> {
    recurrence_report_with(spec, alpha, &Limits::default())
}

pub fn recurrence_report_with(
    spec: &ProductSpec,
    alpha: &WindowPattern,
    limits: &Limits,
) -> Result<RecurrenceReport> {
    let use_symmetry = spec.is_palindromic();
    let system = build_system_with(spec, alpha, use_symmetry, limits)?;
    let mmp = system.matrix.minpoly();
    let (rec, terms_used) = sequence_recurrence(&system, system.size() + 1)?;
    Ok(RecurrenceReport {
        alpha: system.alpha.clone(),
        spec: spec.clone(),
        use_symmetry,
        divisibility_ok: rec.poly.divides(&mmp),
        mmp,
        rmp: rec.poly,
        n0: rec.n0,
        closure_size: system.size(),
        terms_used,
    })
}

/// `A_r` for Stern's triangle with the reversal quotient.
pub fn stern_system(r: u32) -> Result<TransferSystem> {
    transfer::build_system(&ProductSpec::stern(), &WindowPattern::single(1, r), true)
}

/// `rmp_r`: least recurrence of `u_r` for Stern's triangle.
pub fn stern_rmp(r: u32) -> Result<Poly> {
    Ok(recurrence_report(&ProductSpec::stern(), &WindowPattern::single(1, r))?.rmp)
}

fn multiplicity(p: &Poly, theta: i64) -> usize {
    p.root_multiplicity(&int(theta))
        .expect("nonzero polynomial")
}

fn strip_root(p: &Poly, theta: i64, k: usize) -> Poly {
    p.exact_div(&Poly::linear(int(theta)).pow(k as u32))
        .expect("root multiplicity known")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem4 {
    pub w: usize,
    pub z: usize,
    pub ok: bool,
    pub mmp_alpha: Poly,
    pub mmp_r: Poly,
}

impl Theorem4 {
    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w.to_string(),
            "z": self.z.to_string(),
            "ok": self.ok,
            "mmp_alpha": self.mmp_alpha.to_string(),
            "mmp_r": self.mmp_r.to_string(),
        })
    }
}

/// Splits `mmp(alpha) = x^w (x-1)^z mmp(r)` for Stern's triangle.
pub fn theorem4_decompose(alpha: &WindowPattern) -> Result<Theorem4> {
    let r = alpha.weight();
    let mmp_alpha = transfer::build_system(&ProductSpec::stern(), alpha, true)?
        .matrix
        .minpoly();
    let mmp_r = stern_system(r)?.matrix.minpoly();
    let extra = |theta| multiplicity(&mmp_alpha, theta).checked_sub(multiplicity(&mmp_r, theta));
    let (Some(w), Some(z)) = (extra(0), extra(1)) else {
        return Ok(Theorem4 {
            w: 0,
            z: 0,
            ok: false,
            mmp_alpha,
            mmp_r,
        });
    };
    let quotient = strip_root(&strip_root(&mmp_alpha, 0, w), 1, z);
    Ok(Theorem4 {
        w,
        z,
        ok: quotient == mmp_r,
        mmp_alpha,
        mmp_r,
    })
}

/// Eigenvalue bookkeeping for `A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCensus {
    pub r: u32,
    pub e0: usize,
    pub e1: usize,
    pub eneg1: usize,
    pub semisimple0: bool,
    pub semisimple1: bool,
    pub semisimple_neg1: bool,
    pub other_multiple_roots: bool,
    pub charpoly: Poly,
    pub minpoly: Poly,
}

pub fn eigen_census(r: u32) -> Result<EigenCensus> {
    let a = stern_system(r)?.matrix;
    Ok(census_of(r, &a))
}

fn census_of(r: u32, a: &Matrix) -> EigenCensus {
    let charpoly = a.charpoly();
    let minpoly = a.minpoly();
    let (e0, e1, eneg1) = (
        multiplicity(&charpoly, 0),
        multiplicity(&charpoly, 1),
        multiplicity(&charpoly, -1),
    );
    let rest = strip_root(&strip_root(&strip_root(&charpoly, 0, e0), 1, e1), -1, eneg1);
    let other_multiple_roots = rest.gcd(&rest.derivative()).degree().unwrap_or(0) > 0;
    EigenCensus {
        r,
        e0,
        e1,
        eneg1,
        semisimple0: multiplicity(&minpoly, 0) <= 1,
        semisimple1: multiplicity(&minpoly, 1) <= 1,
        semisimple_neg1: multiplicity(&minpoly, -1) <= 1,
        other_multiple_roots,
        charpoly,
        minpoly,
    }
}

/// `[a_0, ..., a_{q-1}]_q`: the function `s -> a_{s mod q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFn {
    values: Vec<Scalar>,
}

impl PeriodicFn {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput(
                "periodic function needs period >= 1".into(),
            ));
        }
        Ok(PeriodicFn { values })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, s: i64) -> Scalar {
        let q = self.values.len() as i64;
        self.values[s.rem_euclid(q) as usize].clone()
    }
}

fn periodic(pairs: &[(i64, i64)]) -> PeriodicFn {
    PeriodicFn::new(pairs.iter().map(|&(n, d)| ratio(n, d)).collect()).expect("nonempty")
}

/// Predicted `e_{2s-1}(0)`.
pub fn predicted_e0_odd(s: i64) -> Scalar {
    ratio(s, 3) + periodic(&[(0, 1), (-1, 3), (1, 3)]).eval(s)
}

/// Predicted `e_{2s}(1)`.
pub fn predicted_e1_even(s: i64) -> Scalar {
    ratio(s, 6) + periodic(&[(-1, 1), (-1, 6), (-1, 3), (-1, 2), (-2, 3), (1, 6)]).eval(s)
}

/// Predicted `e_{2s}(-1) = e_{2s+6}(1)`.
pub fn predicted_eneg1_even(s: i64) -> Scalar {
    predicted_e1_even(s + 3)
}

/// Conjectured least recurrence order of `u_r`.
pub fn predicted_mo(r: u32) -> usize {
    let r = r as usize;
    if r.is_multiple_of(2) {
        match r / 2 {
            1 => 2,
            3 => 4,
            s => 2 * (s / 3) + 3,
        }
    } else {
        let s = r / 6;
        match r % 6 {
            5 => 2 * s + 2,
            _ => 2 * s + 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureRow {
    pub census: EigenCensus,
    pub closure_size: usize,
    pub rmp: Poly,
    pub deg_rmp: usize,
    pub mo_predicted: usize,
    pub e_pass: bool,
    pub mo_pass: bool,
    /// `(x - 1)` does not divide `rmp_r` (checked for even `r` only).
    pub superfluous_pass: bool,
    pub semisimple_pass: bool,
    pub no_other_multiple: bool,
}

impl ConjectureRow {
    pub fn pass(&self) -> bool {
        self.e_pass
            && self.mo_pass
            && self.superfluous_pass
            && self.semisimple_pass
            && self.no_other_multiple
    }

    fn mismatches(&self) -> Vec<String> {
        let checks = [
            (self.e_pass, "eigenvalue counts"),
            (self.mo_pass, "recurrence order"),
            (self.superfluous_pass, "x-1 divides rmp"),
            (self.semisimple_pass, "semisimplicity of 0/1/-1"),
            (self.no_other_multiple, "other multiple eigenvalues"),
        ];
        checks
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, what)| what.to_string())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let c = &self.census;
        json!({
            "r": c.r.to_string(),
            "closure_size": self.closure_size.to_string(),
            "deg_rmp": self.deg_rmp.to_string(),
            "mo_predicted": self.mo_predicted.to_string(),
            "e0": c.e0.to_string(),
            "e1": c.e1.to_string(),
            "eneg1": c.eneg1.to_string(),
            "rmp": self.rmp.to_string(),
            "e_pass": self.e_pass,
            "mo_pass": self.mo_pass,
            "superfluous_pass": self.superfluous_pass,
            "semisimple_pass": self.semisimple_pass,
            "no_other_multiple": self.no_other_multiple,
            "pass": self.pass(),
        })
    }

    pub fn csv_header() -> &'static str {
        "r,closure_size,deg_rmp,mo_predicted,e0,e1,eneg1,e_pass,mo_pass,superfluous_pass,semisimple_pass,no_other_multiple,pass"
    }

    pub fn to_csv(&self) -> String {
        let c = &self.census;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.r,
            self.closure_size,
            self.deg_rmp,
            self.mo_predicted,
            c.e0,
            c.e1,
            c.eneg1,
            self.e_pass,
            self.mo_pass,
            self.superfluous_pass,
            self.semisimple_pass,
            self.no_other_multiple,
            self.pass()
        )
    }
}

fn count_matches(actual: usize, predicted: &Scalar) -> bool {
    Scalar::from_integer(BigInt::from(actual)) == *predicted
}

pub fn conjecture_row(r: u32) -> Result<ConjectureRow> {
    let system = stern_system(r)?;
    let census = census_of(r, &system.matrix);
    let (rec, _) = sequence_recurrence(&system, system.size() + 1)?;
    let rmp = rec.poly;
    let deg_rmp = rmp.degree().unwrap_or(0);
    let s = i64::from(r.div_ceil(2));
    let odd = r % 2 == 1;
    let e_pass = if odd {
        count_matches(census.e0, &predicted_e0_odd(s)) && census.e1 == 0
    } else {
        count_matches(census.e1, &predicted_e1_even(s))
            && count_matches(census.eneg1, &predicted_eneg1_even(s))
    };
    let superfluous_pass = odd || multiplicity(&rmp, 1) == 0;
    let semisimple_pass = census.semisimple0 && census.semisimple1 && census.semisimple_neg1;
    let mo_predicted = predicted_mo(r);
    Ok(ConjectureRow {
        closure_size: system.size(),
        no_other_multiple: !census.other_multiple_roots,
        census,
        mo_pass: deg_rmp == mo_predicted,
        rmp,
        deg_rmp,
        mo_predicted,
        e_pass,
        superfluous_pass,
        semisimple_pass,
    })
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(ConjectureRow::pass)
    }

    /// `(r, failed check)` for every failing check, in order of `r`.
    pub fn mismatches(&self) -> Vec<(u32, String)> {
        self.rows
            .iter()
            .flat_map(|row| row.mismatches().into_iter().map(move |m| (row.census.r, m)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mismatches: Vec<Value> = self
            .mismatches()
            .into_iter()
            .map(|(r, what)| json!({"r": r.to_string(), "check": what}))
            .collect();
        json!({
            "rows": self.rows.iter().map(ConjectureRow::to_json).collect::<Vec<_>>(),
            "mismatches": mismatches,
            "all_pass": self.all_pass(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(ConjectureRow::csv_header());
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }
}

/// Checks every `r` in `1..=r_max` in parallel; rows come back sorted by `r`.
pub fn conjecture_check(r_max: u32) -> Result<ConjectureReport> {
    let rows = (1..=r_max)
        .into_par_iter()
        .map(conjecture_row)
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport { rows })
}

/// Structural facts about `B_r`, the unquotiented map `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeyerRow {
    pub r: u32,
    pub weights: Option<Vec<Scalar>>,
    pub minpoly_squarefree: bool,
    pub charpoly_a_divides_b: bool,
}

impl SpeyerRow {
    pub fn pass(&self) -> bool {
        self.weights.is_some() && self.minpoly_squarefree
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r.to_string(),
            "symmetrizable": self.weights.is_some(),
            "weights": self.weights.as_deref().map(wire::scalars_to_json),
            "minpoly_squarefree": self.minpoly_squarefree,
            "charpoly_a_divides_b": self.charpoly_a_divides_b,
        })
    }
}

pub fn speyer_row(r: u32) -> Result<SpeyerRow> {
    let b = transfer::speyer_matrix(r as usize);
    let m = b.minpoly();
    let a = stern_system(r)?.matrix;
    Ok(SpeyerRow {
        r,
        weights: transfer::diagonal_symmetrize(&b).ok(),
        minpoly_squarefree: m.gcd(&m.derivative()).degree() == Some(0),
        charpoly_a_divides_b: a.charpoly().divides(&b.charpoly()),
    })
}

pub fn speyer_check(r_max: u32) -> Result<Vec<SpeyerRow>> {
    (1..=r_max).into_par_iter().map(speyer_row).collect()
}

/// `v_beta(n)` for Stern's diatomic array by iterating `phi` on
/// `x^a y^b`: pairs of neighbours `(x, y)` split into `(x, x+y)` and
/// `(x+y, y)`, so `(phi^n f)(1,1)` sums `f` over the neighbour pairs of row
/// `n`. For `beta = (r)` the final entry (always 1) is added back.
pub fn diatomic_power_sums(beta: &WindowPattern, n_max: usize) -> Result<Vec<Scalar>> {
    let e = beta.exponents();
    if beta.dim() != 1 || e.len() > 2 {
        return Err(Error::InvalidInput(
            "diatomic sums via phi need a pattern of length <= 2".into(),
        ));
    }
    let (a, b) = (e[0], e.get(1).copied().unwrap_or(0));
    let r = (a + b) as usize;
    let phi = transfer::speyer_matrix(r);
    let mut v = vec![Scalar::zero(); r + 1];
    v[a as usize] = Scalar::one();
    let tail = if e.len() == 1 {
        Scalar::one()
    } else {
        Scalar::zero()
    };
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push(v.iter().sum::<Scalar>() + &tail);
        if n < n_max {
            v = phi.mul_vec(&v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VrurReport {
    pub r: u32,
    pub order: usize,
    pub identity_holds: bool,
    /// Terms compared against direct window sums of the arrays.
    pub brute_terms: usize,
    pub brute_agrees: bool,
    pub r_poly: Poly,
    pub expected_r_poly: Poly,
    pub r_matches: bool,
}

impl VrurReport {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r.to_string(),
            "order": self.order.to_string(),
            "identity_holds": self.identity_holds,
            "brute_terms": self.brute_terms.to_string(),
            "brute_agrees": self.brute_agrees,
            "R": self.r_poly.to_string(),
            "expected_R": self.expected_r_poly.to_string(),
            "R_matches": self.r_matches,
        })
    }
}

fn series_mul(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Checks `2V_r/(1-x) = (U_r - 1)/x + (1+x)/(1-x)^2` through `x^order`.
pub fn vrur_check(r: u32, order: usize) -> Result<VrurReport> {
    vrur_check_with(r, order, &Limits::default())
}

pub fn vrur_check_with(r: u32, order: usize, limits: &Limits) -> Result<VrurReport> {
    if r == 0 || order < 10 {
        return Err(Error::InvalidInput(
            "vrur needs r >= 1 and order >= 10".into(),
        ));
    }
    let alpha = WindowPattern::single(1, r);
    let len = order + 1;
    let system = stern_system(r)?;
    let u = system.iterate(order + 1);
    let v = diatomic_power_sums(&alpha, order)?;

    let brute_n = 12.min(order);
    let u_brute = powersums::u_brute(&ProductSpec::stern(), &alpha, brute_n + 1, limits)?;
    let v_brute = powersums::v_brute(&alpha, brute_n, limits)?;
    let brute_agrees = u_brute[..] == u[..=brute_n + 1] && v_brute[..] == v[..=brute_n];

    let ones = vec![Scalar::one(); len];
    let twice_v: Vec<Scalar> = v.iter().map(|x| x * int(2)).collect();
    let lhs = series_mul(&twice_v, &ones, len);
    let inv_sq = series_mul(&ones, &ones, len);
    let one_plus_x = [Scalar::one(), Scalar::one()];
    let tail = series_mul(&one_plus_x, &inv_sq, len);
    // (U - 1)/x: the constant term u(0) = 1 cancels
    let rhs: Vec<Scalar> = (0..len).map(|n| &u[n + 1] + &tail[n]).collect();
    let identity_holds = u[0].is_one() && lhs == rhs;

    let rmp = stern_rmp(r)?;
    let expected_r_poly = &Poly::linear(Scalar::one()) * &rmp;
    let need = 4 * (expected_r_poly.degree().unwrap_or(0) + 4);
    let v_long = diatomic_power_sums(&alpha, need.max(order))?;
    let r_poly = min_recurrence(&v_long, 0)?.poly;
    Ok(VrurReport {
        r,
        order,
        identity_holds,
        brute_terms: brute_n + 1,
        brute_agrees,
        r_matches: r_poly == expected_r_poly,
        r_poly,
        expected_r_poly,
    })
}

/// `u(n) = sum_i c_i b^{i n}` for `p = (1 + x + ... + x^{b-1})^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpFit {
    pub d: u32,
    pub b: u32,
    pub alpha: WindowPattern,
    pub q: ExactPoly,
    pub coeffs: Vec<Scalar>,
    pub held_out: usize,
    pub even_vanish: bool,
    pub odd_vanish: bool,
}

impl ExpFit {
    fn single_site_weight(&self) -> Option<u32> {
        (self.q.is_one() && self.alpha.is_single_site()).then(|| self.alpha.weight())
    }

    /// The parity clause that applies (`'b'`: even `c_i` vanish, `'c'`: odd
    /// `c_i` vanish), if any.
    pub fn parity_clause(&self) -> Option<char> {
        let r = self.single_site_weight()?;
        if r % 2 == 0 || self.d % 2 == 1 {
            Some('b')
        } else {
            Some('c')
        }
    }

    pub fn parity_ok(&self) -> bool {
        match self.parity_clause() {
            Some('b') => self.even_vanish,
            Some('c') => self.odd_vanish,
            _ => true,
        }
    }

    /// Nonzero coefficients sit only at odd `i`, i.e. exponents `b^{(2i+1)n}`.
    pub fn odd_exponents_only(&self) -> bool {
        self.even_vanish
    }

    pub fn eval(&self, n: u32) -> Scalar {
        let m = scalar::pow(&int(i64::from(self.b)), n);
        Poly::new(self.coeffs.clone()).eval(&m)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d.to_string(),
            "b": self.b.to_string(),
            "alpha": self.alpha,
            "q": wire::exact_poly_to_json(&self.q),
            "coeffs": wire::scalars_to_json(&self.coeffs),
            "held_out": self.held_out.to_string(),
            "even_vanish": self.even_vanish,
            "odd_vanish": self.odd_vanish,
            "parity_clause": self.parity_clause().map(String::from),
            "parity_ok": self.parity_ok(),
        })
    }
}

/// Number of values reserved to validate a fit.
pub const HELD_OUT: usize = 3;

/// Coefficients of the polynomial through `(xs[i], ys[i])` in the monomial
/// basis, by Newton divided differences.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut p = Poly::zero();
    for i in (0..n).rev() {
        p = &(&p * &Poly::linear(xs[i].clone())) + &Poly::constant(dd[i].clone());
    }
    p
}

pub fn exp_fit(d: u32, b: u32, alpha: &WindowPattern, q: &ExactPoly) -> Result<ExpFit> {
    if d == 0 || b < 2 {
        return Err(Error::InvalidInput(
            "exp_fit needs d >= 1 and b >= 2".into(),
        ));
    }
    let spec = ProductSpec::geometric_power(d, b).with_prefactor(q.clone())?;
    let n_top = 1 + (d as usize - 1) * alpha.weight() as usize;
    let system = transfer::build_system(&spec, alpha, spec.is_palindromic())?;
    let values = system.iterate(n_top + HELD_OUT);
    let nodes: Vec<Scalar> = (0..values.len())
        .map(|n| scalar::pow(&int(i64::from(b)), n as u32))
        .collect();
    let fit = interpolate(&nodes[..=n_top], &values[..=n_top]);
    for n in n_top + 1..values.len() {
        if fit.eval(&nodes[n]) != values[n] {
            return Err(Error::FitInconsistent { n });
        }
    }
    let mut coeffs = fit.into_coeffs();
    coeffs.resize(n_top + 1, Scalar::zero());
    let vanish = |parity| coeffs.iter().skip(parity).step_by(2).all(Zero::is_zero);
    Ok(ExpFit {
        d,
        b,
        alpha: alpha.clone(),
        q: q.clone(),
        even_vanish: vanish(0),
        odd_vanish: vanish(1),
        coeffs,
        held_out: HELD_OUT,
    })
}

/// rmp of a multivariate spec, cross-validated against direct power sums.
#[derive(Clone, Debug)]
pub struct MultivariateReport {
    pub report: RecurrenceReport,
    /// Terms `u(0..brute_terms)` computed by direct expansion.
    pub brute_terms: usize,
    pub brute_agrees: bool,
    /// `rmp` holds on every window of the direct values past `n0`.
    pub rmp_annihilates_brute: bool,
    /// Least recurrence of the direct values alone, when enough exist.
    pub brute_rmp: Option<Poly>,
}

impl MultivariateReport {
    pub fn consistent(&self) -> bool {
        self.report.divisibility_ok
            && self.brute_agrees
            && self.rmp_annihilates_brute
            && self
                .brute_rmp
                .as_ref()
                .is_none_or(|p| *p == self.report.rmp)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "recurrence": self.report.to_json(),
            "brute_terms": self.brute_terms.to_string(),
            "brute_agrees": self.brute_agrees,
            "rmp_annihilates_brute": self.rmp_annihilates_brute,
            "brute_rmp": self.brute_rmp.as_ref().map(Poly::to_string),
            "consistent": self.consistent(),
        })
    }
}

/// Cell budget for the direct cross-check.
pub const MULTIVARIATE_BRUTE_CELLS: usize = 1 << 21;

pub fn multivariate_rmp(spec: &ProductSpec, alpha: &WindowPattern) -> Result<MultivariateReport> {
    let report = recurrence_report(spec, alpha)?;
    let mut n = 0;
    while n < 64 && powersums::projected_cells(spec, n + 1) <= MULTIVARIATE_BRUTE_CELLS as u128 {
        n += 1;
    }
    let limits = Limits {
        entry_budget: MULTIVARIATE_BRUTE_CELLS,
        ..Limits::default()
    };
    let brute = powersums::u_brute(spec, alpha, n, &limits)?;
    let system = transfer::build_system(spec, alpha, report.use_symmetry)?;
    let brute_agrees = system.iterate(n) == brute;
    let coeffs = report.rmp.coeffs();
    let deg = coeffs.len() - 1;
    let rmp_annihilates_brute = (report.n0..brute.len().saturating_sub(deg)).all(|k| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &brute[k + i])
            .sum::<Scalar>()
            .is_zero()
    });
    let brute_rmp = min_recurrence(&brute, 0).ok().map(|r| r.poly);
    Ok(MultivariateReport {
        report,
        brute_terms: brute.len(),
        brute_agrees,
        rmp_annihilates_brute,
        brute_rmp,
    })
}
