//! Generating-function expanders and coefficient-level cross-checks.
//!
//! The unrefined product turns a genus-graded curve count table into the
//! stable-pair generating series; the refined product does the same for
//! spin-graded tables with the extra variable `s`, whose specialization
//! `s = -1` collapses the refined series onto the unrefined one. Both
//! products are infinite and are finitized deterministically: per factor
//! family the largest index that can still contribute inside the window is
//! computed before any expansion happens.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{arithmetic_genus, gv_solve, pt_invariant, unrefine, GvRow, RefinedTable};
use crate::series::{binomial, LaurentSeries};
use crate::symprod::macdonald_series;

/// Truncation contract for the product expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionWindow {
    /// Largest curve degree tracked; the `Q` window is `0..=d_max`.
    pub d_max: i64,
    /// Inclusive exponent bounds for `q`.
    pub q_min: i64,
    pub q_max: i64,
    /// Optional inclusive bounds for the refinement variable `s`; `None`
    /// keeps `s` exact.
    pub s_window: Option<(i64, i64)>,
}

impl ExpansionWindow {
    pub fn new(d_max: i64, q_min: i64, q_max: i64) -> Self {
        ExpansionWindow {
            d_max,
            q_min,
            q_max,
            s_window: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d_max < 0 {
            return Err(Error::OutOfRange("d_max must be nonnegative".into()));
        }
        if self.q_min > self.q_max {
            return Err(Error::EmptyWindow("q".into()));
        }
        if let Some((lo, hi)) = self.s_window {
            if lo > hi {
                return Err(Error::EmptyWindow("s".into()));
            }
        }
        Ok(())
    }
}

/// How far one unit of `Q`-degree can push a q-exponent downward, over all
/// factor families the tables can produce.
fn unrefined_drag(tables: &BTreeMap<i64, GvRow>) -> i64 {
    let mut drag = 0;
    for (d, row) in tables {
        for (g, coeff) in row {
            if *g >= 1 && !coeff.is_zero() {
                // most negative exponent of a genus-g factor is 1 - g
                drag = drag.max((g - 1 + d - 1) / d);
            }
        }
    }
    drag
}

/// Expands the stable-pair product of a family of genus rows inside the
/// window. Genus-zero rows contribute `(1 + (-1)^{j+1} q^j Q^d)^{j n}` for
/// `j >= 1`; a genus `g >= 1` entry contributes the factors
/// `(1 + (-1)^{g-k} q^{g-1-k} Q^d)^{(-1)^{k+g} n binom(2g-2, k)}`.
pub fn ztpt_unrefined(
    tables: &BTreeMap<i64, GvRow>,
    window: &ExpansionWindow,
) -> Result<LaurentSeries> {
    window.validate()?;
    let drag = unrefined_drag(tables);
    let mut acc = LaurentSeries::one(&["q", "Q"])
        .with_window("q", window.q_min, window.q_max)?
        .with_window("Q", 0, window.d_max)?;
    for (d, row) in tables {
        if *d < 1 || *d > window.d_max {
            continue;
        }
        let slack = drag * (window.d_max - d);
        for (g, coeff) in row {
            if coeff.is_zero() {
                continue;
            }
            if *g == 0 {
                let mut j = 1;
                while j <= window.q_max + slack {
                    let sign = if j % 2 == 1 { 1 } else { -1 };
                    acc = mul_factor(acc, *d, j, 0, sign, &(BigInt::from(j) * coeff), window)?;
                    j += 1;
                }
            } else {
                for k in 0..=(2 * g - 2) {
                    let e = g - 1 - k;
                    if e > window.q_max + slack {
                        continue;
                    }
                    if e < window.q_min {
                        return Err(Error::OutOfRange(format!(
                            "window too narrow: factor exponent q^{e} below q_min={}",
                            window.q_min
                        )));
                    }
                    let sign = if (g - k) % 2 == 0 { 1 } else { -1 };
                    let exp_sign = if (k + g) % 2 == 0 { 1 } else { -1 };
                    let exponent = BigInt::from(exp_sign) * coeff * binomial(2 * g - 2, k);
                    acc = mul_factor(acc, *d, e, 0, sign, &exponent, window)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Multiplies `acc` by `(1 + sign q^{eq} s^{es} Q^d)^{exponent}`.
fn mul_factor(
    acc: LaurentSeries,
    d: i64,
    eq: i64,
    es: i64,
    sign: i64,
    exponent: &BigInt,
    window: &ExpansionWindow,
) -> Result<LaurentSeries> {
    if exponent.is_zero() {
        return Ok(acc);
    }
    let vars: Vec<&str> = acc.vars().iter().map(|s| s.as_str()).collect();
    let with_s = vars.len() == 3;
    let zero_exp = vec![0i64; vars.len()];
    let mono = if with_s { vec![eq, es, d] } else { vec![eq, d] };
    let mut base = LaurentSeries::from_terms(
        &vars,
        &[(zero_exp, BigInt::from(1)), (mono, BigInt::from(sign))],
    )
    .with_window("q", window.q_min, window.q_max)?
    .with_window("Q", 0, window.d_max)?;
    if with_s {
        if let Some((lo, hi)) = window.s_window {
            base = base.with_window("s", lo, hi)?;
        }
    }
    // the product exponent is an exact integer but binom_pow takes i64;
    // in-range tables keep it tiny
    let exponent = i64::try_from(exponent)
        .map_err(|_| Error::OutOfRange("factor exponent exceeds i64".to_string()))?;
    acc.mul(&base.binom_pow(exponent)?)
}

/// Expands the refined stable-pair product of spin tables inside the window.
///
/// Each table entry `N` at doubled spins `(2jL, 2jR)` contributes, for every
/// `a` in the `jR`-range, `b` in the `jL`-range, `m >= 1` and `0 <= j < m`,
/// the factor
/// `(1 + sigma q^{m-2a} s^{-m+1+2j-2b} Q^d)^{sigma N}` with
/// `sigma = (-1)^{2jL+2jR}`. Setting `s = -1` recovers the unrefined product
/// of the unrefined tables.
pub fn ztpt_refined(
    tables: &BTreeMap<i64, RefinedTable>,
    window: &ExpansionWindow,
) -> Result<LaurentSeries> {
    window.validate()?;
    // per-unit downward drag across all degrees
    let mut drag = 0i64;
    for (d, table) in tables {
        for (_, jr2) in table.entries.keys() {
            drag = drag.max((jr2 - 1 + d - 1) / d);
        }
    }
    let mut acc = LaurentSeries::one(&["q", "s", "Q"])
        .with_window("q", window.q_min, window.q_max)?
        .with_window("Q", 0, window.d_max)?;
    if let Some((lo, hi)) = window.s_window {
        acc = acc.with_window("s", lo, hi)?;
    }
    // grouped exponents of identical factors: (sign, eq, es, d) -> exponent
    let mut factors: BTreeMap<(i64, i64, i64, i64), BigInt> = BTreeMap::new();
    for (d, table) in tables {
        if *d < 1 || *d > window.d_max {
            continue;
        }
        let slack = drag * (window.d_max - d);
        for ((jl2, jr2), coeff) in &table.entries {
            let sigma = if (jl2 + jr2) % 2 == 0 { 1 } else { -1 };
            let exponent = BigInt::from(sigma) * coeff;
            let mut a2 = -jr2;
            while a2 <= *jr2 {
                let mut m = 1;
                while m - a2 <= window.q_max + slack {
                    let eq = m - a2;
                    if eq < window.q_min {
                        return Err(Error::OutOfRange(format!(
                            "window too narrow: factor exponent q^{eq} below q_min={}",
                            window.q_min
                        )));
                    }
                    let mut b2 = -jl2;
                    while b2 <= *jl2 {
                        for j in 0..m {
                            let es = -m + 1 + 2 * j - b2;
                            let key = (sigma, eq, es, *d);
                            let entry = factors.entry(key).or_insert_with(BigInt::zero);
                            *entry += &exponent;
                        }
                        b2 += 2;
                    }
                    m += 1;
                }
                a2 += 2;
            }
        }
    }
    for ((sigma, eq, es, d), exponent) in &factors {
        acc = mul_factor(acc, *d, *eq, *es, *sigma, exponent, window)?;
    }
    Ok(acc)
}

/// Extracts the stable-pair invariant `P_{1 - p_a(d) + n, dH}` from an
/// expanded unrefined series: the coefficient of `q^{1 - p_a(d) + n} Q^d`.
pub fn pt_from_ztpt(series: &LaurentSeries, d: i64, n: i64) -> Result<BigInt> {
    let p_a = arithmetic_genus(d)?;
    series.coefficient(&[1 - p_a + n, d])
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckedPair {
    pub d: i64,
    pub n: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mismatch {
    pub d: i64,
    pub n: i64,
    pub expected: String,
    pub got: String,
}

/// Outcome of [`crosscheck_unrefined`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub checked: Vec<CheckedPair>,
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
}

/// Expands the product formula with the solved genus tables for every degree
/// up to `d_max <= 5` and compares each extractable coefficient against the
/// fibration value of [`pt_invariant`]. Mismatches are report content.
pub fn crosscheck_unrefined(d_max: i64) -> Result<CrosscheckReport> {
    if !(1..=5).contains(&d_max) {
        return Err(Error::OutOfRange(format!(
            "crosscheck supports degrees 1..=5, got {d_max}"
        )));
    }
    let mut tables = BTreeMap::new();
    let mut q_min = 0;
    for d in 1..=d_max {
        tables.insert(d, gv_solve(d)?.values);
        q_min = q_min.min(1 - arithmetic_genus(d)?);
    }
    let window = ExpansionWindow::new(d_max, q_min - 1, 12);
    let series = ztpt_unrefined(&tables, &window)?;
    let mut checked = Vec::new();
    let mut mismatches = Vec::new();
    for d in 1..=d_max {
        for n in 0..=(d + 1) {
            let expected = pt_invariant(d, n)?;
            let got = pt_from_ztpt(&series, d, n)?;
            if expected != got {
                mismatches.push(Mismatch {
                    d,
                    n,
                    expected: expected.to_string(),
                    got: got.to_string(),
                });
            }
            checked.push(CheckedPair { d, n });
        }
    }
    let pass = mismatches.is_empty();
    Ok(CrosscheckReport {
        checked,
        mismatches,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesMismatch {
    pub t: i64,
    pub x: i64,
    pub expected: String,
    pub got: String,
}

/// Outcome of [`naive_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NaiveCheckReport {
    pub genus: u64,
    pub n_curves: i64,
    pub order: u64,
    pub mismatches: Vec<SeriesMismatch>,
    pub pass: bool,
}

/// Verifies the closed-form point-counting series against the direct product
/// expansion `n (1+tx)^{2g} (1-t)^{-1} (1-t x^2)^{-1}` within the window.
pub fn naive_check(genus: u64, n_curves: i64, order: u64) -> Result<NaiveCheckReport> {
    let direct = macdonald_series(genus, n_curves, order);
    let poly = |terms: &[(Vec<i64>, i64)]| {
        LaurentSeries::from_terms(
            &["t", "x"],
            &terms
                .iter()
                .map(|(e, c)| (e.clone(), BigInt::from(*c)))
                .collect::<Vec<_>>(),
        )
        .with_window("t", 0, order as i64)
        .expect("nonempty window")
    };
    let numerator = poly(&[(vec![0, 0], 1), (vec![1, 1], 1)]).binom_pow(2 * genus as i64)?;
    let inv_t = poly(&[(vec![0, 0], 1), (vec![1, 0], -1)]).binom_pow(-1)?;
    let inv_tx2 = poly(&[(vec![0, 0], 1), (vec![1, 2], -1)]).binom_pow(-1)?;
    let product = numerator
        .scalar_mul(&BigInt::from(n_curves))
        .mul(&inv_t)?
        .mul(&inv_tx2)?;
    let mut mismatches = Vec::new();
    for k in 0..=(order as i64) {
        for x in 0..=(2 * k + 2 * genus as i64) {
            let expected = product.coefficient(&[k, x])?;
            let got = direct.coefficient(&[k, x])?;
            if expected != got {
                mismatches.push(SeriesMismatch {
                    t: k,
                    x,
                    expected: expected.to_string(),
                    got: got.to_string(),
                });
            }
        }
    }
    let pass = mismatches.is_empty();
    Ok(NaiveCheckReport {
        genus,
        n_curves,
        order,
        mismatches,
        pass,
    })
}

/// Unrefined series predicted by a family of refined tables: unrefine each
/// table and expand the ordinary product.
pub fn ztpt_unrefined_from_refined(
    tables: &BTreeMap<i64, RefinedTable>,
    window: &ExpansionWindow,
) -> Result<LaurentSeries> {
    let mut rows = BTreeMap::new();
    for (d, table) in tables {
        rows.insert(*d, unrefine(table)?);
    }
    ztpt_unrefined(&rows, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::RefinedTable;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn row(pairs: &[(i64, i64)]) -> GvRow {
        pairs.iter().map(|(g, c)| (*g, big(*c))).collect()
    }

    #[test]
    fn empty_tables_expand_to_one() {
        let w = ExpansionWindow::new(3, -2, 6);
        assert!(ztpt_unrefined(&BTreeMap::new(), &w).unwrap().is_one());
        assert!(ztpt_refined(&BTreeMap::new(), &w).unwrap().is_one());
    }

    #[test]
    fn degree_one_linear_coefficient() {
        let tables = BTreeMap::from([(1, row(&[(0, 3)]))]);
        let w = ExpansionWindow::new(1, 0, 6);
        let z = ztpt_unrefined(&tables, &w).unwrap();
        assert_eq!(z.coefficient(&[1, 1]).unwrap(), big(3));
        // the degree-one row reproduces the fibration values 3, -6, 9
        assert_eq!(pt_from_ztpt(&z, 1, 0).unwrap(), big(3));
        assert_eq!(pt_from_ztpt(&z, 1, 1).unwrap(), big(-6));
        assert_eq!(pt_from_ztpt(&z, 1, 2).unwrap(), big(9));
    }

    #[test]
    fn degree_two_coefficient_mixes_cross_terms() {
        let tables = BTreeMap::from([(1, row(&[(0, 3)])), (2, row(&[(0, -6)]))]);
        let w = ExpansionWindow::new(2, 0, 8);
        let z = ztpt_unrefined(&tables, &w).unwrap();
        assert_eq!(z.coefficient(&[2, 2]).unwrap(), big(15));
        assert_eq!(pt_from_ztpt(&z, 2, 3).unwrap(), big(66));
    }

    #[test]
    fn degree_three_genus_factor() {
        let mut tables = BTreeMap::new();
        for d in 1..=3 {
            tables.insert(d, gv_solve(d).unwrap().values);
        }
        let w = ExpansionWindow::new(3, -1, 8);
        let z = ztpt_unrefined(&tables, &w).unwrap();
        assert_eq!(pt_from_ztpt(&z, 3, 0).unwrap(), big(-10));
        assert_eq!(pt_from_ztpt(&z, 3, 1).unwrap(), big(27));
        assert_eq!(pt_from_ztpt(&z, 3, 2).unwrap(), big(-72));
    }

    #[test]
    fn extraction_outside_window_is_an_error() {
        let tables = BTreeMap::from([(1, row(&[(0, 3)]))]);
        let w = ExpansionWindow::new(1, 0, 3);
        let z = ztpt_unrefined(&tables, &w).unwrap();
        assert!(pt_from_ztpt(&z, 1, 3).is_err());
    }

    #[test]
    fn crosscheck_low_degrees_pass() {
        let r1 = crosscheck_unrefined(1).unwrap();
        assert!(r1.pass);
        assert_eq!(r1.checked.len(), 3);
        let r2 = crosscheck_unrefined(2).unwrap();
        assert!(r2.pass);
        assert_eq!(r2.checked.len(), 7);
        assert!(crosscheck_unrefined(6).is_err());
    }

    #[test]
    fn refined_log_linear_coefficient() {
        // single unit entry at spins (0,0): the Q-linear part collects
        // q^m s^{-m+1+2j} over m >= 1, 0 <= j < m
        let tables = BTreeMap::from([(1, RefinedTable::from_pairs(&[((0, 0), 1)]))]);
        let w = ExpansionWindow::new(1, 0, 4);
        let z = ztpt_refined(&tables, &w).unwrap();
        for m in 1..=4i64 {
            for j in 0..m {
                assert_eq!(
                    z.coefficient(&[m, -m + 1 + 2 * j, 1]).unwrap(),
                    big(1),
                    "m={m} j={j}"
                );
            }
            assert_eq!(z.coefficient(&[m, -m - 1, 1]).unwrap(), big(0));
            assert_eq!(z.coefficient(&[m, m + 1, 1]).unwrap(), big(0));
        }
    }

    #[test]
    fn refined_euler_specialization_degree_one() {
        // the geometric degree-one table: a single spin-(1, 0) state
        let tables = BTreeMap::from([(1, RefinedTable::from_pairs(&[((2, 0), 1)]))]);
        let w = ExpansionWindow::new(1, 0, 6);
        let refined = ztpt_refined(&tables, &w).unwrap();
        let collapsed = refined.specialize_sign("s").unwrap();
        let unrefined = ztpt_unrefined_from_refined(&tables, &w).unwrap();
        for m in 0..=6i64 {
            for qd in 0..=1i64 {
                assert_eq!(
                    collapsed.coefficient(&[m, 0, qd]).unwrap(),
                    unrefined.coefficient(&[m, qd]).unwrap(),
                    "q^{m} Q^{qd}"
                );
            }
        }
    }

    #[test]
    fn naive_check_small_cases() {
        assert!(naive_check(0, 1, 6).unwrap().pass);
        let elliptic = naive_check(1, 1, 6).unwrap();
        assert!(elliptic.pass);
        assert!(naive_check(2, 5, 5).unwrap().pass);
        // t^2 coefficients for one elliptic curve
        let series = macdonald_series(1, 1, 2);
        let expected = [1, 2, 2, 2, 1];
        for (e, c) in expected.iter().enumerate() {
            assert_eq!(series.coefficient(&[2, e as i64]).unwrap(), big(*c));
        }
    }

    #[test]
    fn window_monotonicity() {
        let mut tables = BTreeMap::new();
        for d in 1..=3 {
            tables.insert(d, gv_solve(d).unwrap().values);
        }
        let small = ExpansionWindow::new(3, -1, 8);
        let large = ExpansionWindow::new(3, -3, 14);
        let zs = ztpt_unrefined(&tables, &small).unwrap();
        let zl = ztpt_unrefined(&tables, &large).unwrap();
        for d in 1..=3 {
            for n in 0..=(d + 1) {
                assert_eq!(
                    pt_from_ztpt(&zs, d, n).unwrap(),
                    pt_from_ztpt(&zl, d, n).unwrap(),
                    "d={d} n={n}"
                );
            }
        }
    }

    #[test]
    fn log_linearity_single_degree() {
        // with only degree-d entries the Q^d coefficient is the sum of the
        // factor monomials, with no cross terms
        let tables = BTreeMap::from([(2, row(&[(0, 5), (1, -3)]))]);
        let w = ExpansionWindow::new(2, -2, 7);
        let z = ztpt_unrefined(&tables, &w).unwrap();
        for e in -2..=7i64 {
            let mut expected = BigInt::zero();
            // genus-zero family
            if e >= 1 {
                let sign = if e % 2 == 1 { 1 } else { -1 };
                expected += big(sign) * big(e) * big(5);
            }
            // genus-one family: single factor (1 - Q^2)^{3}, linear term -3
            if e == 0 {
                expected += big(-3);
            }
            assert_eq!(z.coefficient(&[e, 2]).unwrap(), expected, "e={e}");
        }
    }
}
