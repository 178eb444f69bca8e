//! Invariant tables for local P2: stable-pair counts from the fibration
//! structure of the relative Hilbert scheme, reducible-curve corrections,
//! the triangular solve for the genus-graded curve counts, and the basis
//! changes between monomial, BPS and refined character expansions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::series::{binomial, LaurentSeries};

/// Genus-indexed row of curve counts for one degree.
pub type GvRow = BTreeMap<i64, BigInt>;

/// Arithmetic genus of a smooth plane curve of degree `d`.
pub fn arithmetic_genus(d: i64) -> Result<i64> {
    if d < 1 {
        return Err(Error::OutOfRange(format!("degree must be >= 1, got {d}")));
    }
    Ok((d - 1) * (d - 2) / 2)
}

/// Dimension of the space of degree-`d` plane curves.
pub fn chow_dim(d: i64) -> Result<i64> {
    if d < 1 {
        return Err(Error::OutOfRange(format!("degree must be >= 1, got {d}")));
    }
    Ok(d * (d + 3) / 2)
}

/// Euler characteristic of the Hilbert scheme of `n` points of the plane:
/// the `q^n` coefficient of `prod_k (1 - q^k)^{-3}`.
pub fn hilb_p2_euler(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let order = n as i64;
    let mut prod = LaurentSeries::one(&["q"])
        .with_window("q", 0, order)
        .expect("nonempty window");
    for k in 1..=order {
        let factor = LaurentSeries::from_terms(
            &["q"],
            &[(vec![0], BigInt::one()), (vec![k], BigInt::from(-1))],
        )
        .with_window("q", 0, order)
        .expect("nonempty window");
        prod = prod
            .mul(&factor.binom_pow(-3).expect("terminating expansion"))
            .expect("shared context");
    }
    prod.coefficient(&[order]).expect("inside window")
}

/// Stable-pair invariant `P_{1 - p_a(d) + n, dH}` for `0 <= n <= d + 1`,
/// where the relative Hilbert scheme is a projective-space fibration over
/// the Hilbert scheme of points:
/// `(-1)^{chow_dim(d) + n} (chow_dim(d) - n + 1) hilb_p2_euler(n)`.
pub fn pt_invariant(d: i64, n: i64) -> Result<BigInt> {
    let dim = chow_dim(d)?;
    if n < 0 || n > d + 1 {
        return Err(Error::OutOfRange(format!(
            "point count {n} outside fibration range 0..={} for degree {d}",
            d + 1
        )));
    }
    let sign = if (dim + n) % 2 == 0 { 1 } else { -1 };
    Ok(BigInt::from(sign) * BigInt::from(dim - n + 1) * hilb_p2_euler(n as u64))
}

/// Full stable-pair row for one degree over its validity range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTTable {
    pub degree: i64,
    /// point count `n` -> `P_{1 - p_a + n, dH}`
    pub values: BTreeMap<i64, BigInt>,
}

pub fn pt_table(d: i64) -> Result<PTTable> {
    let mut values = BTreeMap::new();
    for n in 0..=(d + 1) {
        values.insert(n, pt_invariant(d, n)?);
    }
    Ok(PTTable { degree: d, values })
}

/// Genus-graded curve counts for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVTable {
    pub degree: i64,
    /// genus `g` -> `n_d^g`
    pub values: GvRow,
}

/// Reducible-curve contribution subtracted from a stable-pair invariant.
///
/// Only the splittings `(d-1, 1)` and `(d-2, 2)` occur in range. A splitting
/// `(d1, d2)` distributes `s = n - 1 - g_d + g_{d1} + g_{d2}` points and
/// contributes `sum_i P(d1, i) P(d2, s - i)` when `s >= 0`; outside the
/// stated cases (splittings below degree 3, or `n >= d` below degree 5) the
/// term is not defined and an error is returned.
pub fn correction(d: i64, n: i64) -> Result<BigInt> {
    if d < 1 || n < 0 || n > d + 1 {
        return Err(Error::OutOfRange(format!(
            "correction({d}, {n}) outside 0..={}",
            d + 1
        )));
    }
    if n <= d - 2 {
        // the reducible locus has codimension d-1 and cannot support
        // summands at these point counts
        return Ok(BigInt::zero());
    }
    let in_table = match n - d {
        -1 => d >= 3,
        0 | 1 => d >= 5,
        _ => false,
    };
    if !in_table {
        return Err(Error::OutsideCaseTable { d, n });
    }
    let mut total = BigInt::zero();
    // splitting (d-1, 1): genus drop g_d - g_{d-1} = d - 2
    let s1 = n - d + 1;
    for i in 0..=s1 {
        total += pt_invariant(d - 1, i)? * pt_invariant(1, s1 - i)?;
    }
    // splitting (d-2, 2): genus drop 2d - 5; contributes only when the
    // point budget is nonnegative, which in range means d = 5, n = 6
    if d >= 4 {
        let s2 = n - 2 * d + 4;
        if s2 >= 0 {
            for j in 0..=s2 {
                total += pt_invariant(d - 2, j)? * pt_invariant(2, s2 - j)?;
            }
        }
    }
    Ok(total)
}

/// Coefficient of `n_d^h` in the point-count-`n` Euler equation:
/// `binom(2h-2, h-2+p_a-n)` for `h >= 1`, with the genus-zero column
/// appearing exactly once in the `n = p_a` equation.
pub fn gv_coefficient(h: i64, p_a: i64, n: i64) -> BigInt {
    if h == 0 {
        return if n == p_a {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(2 * h - 2, h - 2 + p_a - n)
}

/// Solves the triangular system of Euler equations for the genus-graded
/// counts of one degree. Valid for `1 <= d <= 5`, where every needed
/// equation lies inside the fibration range of [`pt_invariant`].
pub fn gv_solve(d: i64) -> Result<GVTable> {
    if !(1..=5).contains(&d) {
        return Err(Error::OutOfRange(format!(
            "gv_solve supports degrees 1..=5, got {d}"
        )));
    }
    let p_a = arithmetic_genus(d)?;
    let mut values: GvRow = BTreeMap::new();
    for n in 0..=p_a {
        // the equation for point count n introduces exactly one new genus
        let mut rhs = pt_invariant(d, n)?;
        if d >= 3 && n > d - 2 {
            rhs -= correction(d, n)?;
        }
        for (g, value) in &values {
            rhs -= gv_coefficient(*g, p_a, n) * value;
        }
        // the new unknown n_d^{p_a - n} enters with coefficient 1, so the
        // solve is division-free and exactness is automatic
        values.insert(p_a - n, rhs);
    }
    Ok(GVTable { degree: d, values })
}

/// BPS polynomial `sum_g n^g (q^{1/2} + q^{-1/2})^{2g}` of a genus row, as a
/// symmetric Laurent polynomial in `q`.
pub fn bps_from_gv(row: &GvRow) -> LaurentSeries {
    let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
    for (g, coeff) in row {
        for k in 0..=(2 * g) {
            terms.push((vec![g - k], coeff * binomial(2 * g, k)));
        }
    }
    LaurentSeries::from_terms(&["q"], &terms)
}

/// Expands a symmetric Laurent polynomial in the `(q^{1/2}+q^{-1/2})^{2g}`
/// basis by peeling the top degree; the round trip with [`bps_from_gv`] is
/// the identity.
pub fn gv_from_bps(poly: &LaurentSeries) -> Result<GvRow> {
    if poly.vars().len() != 1 {
        return Err(Error::OutOfRange(
            "BPS polynomial must be univariate".to_string(),
        ));
    }
    let var = poly.vars()[0].clone();
    if !poly.symmetry_check(&var)? {
        return Err(Error::AsymmetricInput(var));
    }
    let mut rest = poly.clone();
    let mut row: GvRow = BTreeMap::new();
    while !rest.is_zero() {
        let g = rest.terms().map(|(e, _)| e[0]).max().expect("nonzero");
        let c = rest.coefficient(&[g])?;
        let basis: Vec<(Vec<i64>, BigInt)> = (0..=(2 * g))
            .map(|k| (vec![g - k], binomial(2 * g, k)))
            .collect();
        let basis = LaurentSeries::from_terms(&[var.as_str()], &basis);
        rest = rest.sub(&basis.scalar_mul(&c))?;
        row.insert(g, c);
    }
    row.retain(|_, c| !c.is_zero());
    Ok(row)
}

/// Table of refined counts indexed by doubled half-integer spins
/// `(2jL, 2jR)`, both nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RefinedTable {
    /// `(2jL, 2jR)` -> multiplicity
    pub entries: BTreeMap<(i64, i64), BigInt>,
}

impl RefinedTable {
    pub fn from_pairs(pairs: &[((i64, i64), i64)]) -> Self {
        let mut entries = BTreeMap::new();
        for ((jl2, jr2), c) in pairs {
            assert!(*jl2 >= 0 && *jr2 >= 0, "doubled spins must be nonnegative");
            if *c != 0 {
                entries.insert((*jl2, *jr2), BigInt::from(*c));
            }
        }
        RefinedTable { entries }
    }

    /// Common parity of `2jL + 2jR` across entries, when consistent.
    pub fn uniform_parity(&self) -> Option<i64> {
        let mut parity = None;
        for (jl2, jr2) in self.entries.keys() {
            let p = (jl2 + jr2).rem_euclid(2);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        parity.or(Some(0))
    }
}

/// Character `chi_j(x) = x^{-2j} + x^{-2j+2} + ... + x^{2j}` for doubled
/// spin `2j`, as exponent/coefficient pairs in one slot of a two-variable
/// exponent vector.
fn character_exponents(doubled: i64) -> Vec<i64> {
    let mut exps = Vec::new();
    let mut e = -doubled;
    while e <= doubled {
        exps.push(e);
        e += 2;
    }
    exps
}

/// The two-variable character sum of a refined table, in `(q, r)`.
pub fn rbps_from_refined(table: &RefinedTable) -> LaurentSeries {
    let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
    for ((jl2, jr2), coeff) in &table.entries {
        for er in character_exponents(*jl2) {
            for eq in character_exponents(*jr2) {
                terms.push((vec![eq, er], coeff.clone()));
            }
        }
    }
    LaurentSeries::from_terms(&["q", "r"], &terms)
}

/// Decomposes a bisymmetric polynomial in `(q, r)` into products of
/// characters `chi_{jL}(r) chi_{jR}(q)`, peeling from the top r-degree and
/// then the top q-degree.
pub fn refined_from_rbps(poly: &LaurentSeries) -> Result<RefinedTable> {
    if poly.vars() != ["q".to_string(), "r".to_string()] {
        return Err(Error::OutOfRange(
            "refined polynomial must have variables (q, r)".to_string(),
        ));
    }
    for var in ["q", "r"] {
        if !poly.symmetry_check(var)? {
            return Err(Error::AsymmetricInput(var.to_string()));
        }
    }
    for (slot, var) in ["q", "r"].iter().enumerate() {
        let mut parity = None;
        for (e, _) in poly.terms() {
            let p = e[slot].rem_euclid(2);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Err(Error::ParityMismatch(var.to_string())),
                _ => {}
            }
        }
    }
    let mut rest = poly.clone();
    let mut entries: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    while !rest.is_zero() {
        let jl2 = rest.terms().map(|(e, _)| e[1]).max().expect("nonzero");
        let jr2 = rest
            .terms()
            .filter(|(e, _)| e[1] == jl2)
            .map(|(e, _)| e[0])
            .max()
            .expect("nonzero slice");
        if jl2 < 0 || jr2 < 0 {
            return Err(Error::CharacterRemainder(jl2, jr2));
        }
        let c = rest.coefficient(&[jr2, jl2])?;
        let mut basis_terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
        for er in character_exponents(jl2) {
            for eq in character_exponents(jr2) {
                basis_terms.push((vec![eq, er], c.clone()));
            }
        }
        let basis = LaurentSeries::from_terms(&["q", "r"], &basis_terms);
        rest = rest.sub(&basis)?;
        let entry = entries.entry((jl2, jr2)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            entries.remove(&(jl2, jr2));
        }
    }
    Ok(RefinedTable { entries })
}

/// Genus row obtained by evaluating the r-characters at `r = -1`
/// (`chi_{jL}(-1) = (-1)^{2jL} (2jL + 1)`) and expanding the remaining
/// q-polynomial in the BPS basis.
pub fn unrefine(table: &RefinedTable) -> Result<GvRow> {
    let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
    for ((jl2, jr2), coeff) in &table.entries {
        let sign = if jl2 % 2 == 0 { 1 } else { -1 };
        let mult = BigInt::from(sign * (jl2 + 1));
        for eq in character_exponents(*jr2) {
            terms.push((vec![eq], coeff * &mult));
        }
    }
    let bps = LaurentSeries::from_terms(&["q"], &terms);
    gv_from_bps(&bps)
}

fn values_json<K: std::fmt::Display, V: std::fmt::Display>(
    pairs: impl Iterator<Item = (K, V)>,
) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for (k, v) in pairs {
        if !first {
            out.push(',');
        }
        first = false;
        let _ = write!(out, "\"{k}\":\"{v}\"");
    }
    out.push('}');
    out
}

impl PTTable {
    /// `{"degree": d, "values": {"<n>": "<decimal>"}}` with numerically
    /// sorted keys.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"degree\":{},\"values\":{}}}",
            self.degree,
            values_json(self.values.iter())
        )
    }
}

impl GVTable {
    /// `{"degree": d, "values": {"<genus>": "<decimal>"}}` with numerically
    /// sorted keys.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"degree\":{},\"values\":{}}}",
            self.degree,
            values_json(self.values.iter())
        )
    }
}

impl RefinedTable {
    /// `{"degree": d, "values": {"<2jL>,<2jR>": "<decimal>"}}`; the degree is
    /// omitted when not applicable.
    pub fn to_json(&self, degree: Option<i64>) -> String {
        let values = values_json(
            self.entries
                .iter()
                .map(|((jl2, jr2), c)| (format!("{jl2},{jr2}"), c)),
        );
        match degree {
            Some(d) => format!("{{\"degree\":{d},\"values\":{values}}}"),
            None => format!("{{\"values\":{values}}}"),
        }
    }

    pub fn from_json(text: &str) -> Result<(Option<i64>, Self)> {
        #[derive(Deserialize)]
        struct Doc {
            degree: Option<i64>,
            values: BTreeMap<String, String>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (key, value) in doc.values {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::InvalidJson(format!("bad spin key `{key}`")))?;
            let jl2: i64 = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidJson(format!("bad spin key `{key}`")))?;
            let jr2: i64 = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidJson(format!("bad spin key `{key}`")))?;
            if jl2 < 0 || jr2 < 0 {
                return Err(Error::InvalidJson(format!("negative spin in `{key}`")));
            }
            let c: BigInt = value
                .parse()
                .map_err(|_| Error::InvalidJson(format!("bad value `{value}`")))?;
            if !c.is_zero() {
                entries.insert((jl2, jr2), c);
            }
        }
        Ok((doc.degree, RefinedTable { entries }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn genus_and_chow_dimension() {
        assert_eq!(arithmetic_genus(5).unwrap(), 6);
        assert_eq!(chow_dim(5).unwrap(), 20);
        assert_eq!(arithmetic_genus(1).unwrap(), 0);
        assert_eq!(chow_dim(1).unwrap(), 2);
        assert!(arithmetic_genus(0).is_err());
    }

    #[test]
    fn hilbert_scheme_euler_numbers() {
        let got: Vec<BigInt> = (0..=6).map(hilb_p2_euler).collect();
        let expected: Vec<BigInt> = [1, 3, 9, 22, 51, 108, 221]
            .iter()
            .map(|c| big(*c))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn stable_pair_values() {
        assert_eq!(pt_invariant(5, 0).unwrap(), big(21));
        assert_eq!(pt_invariant(5, 6).unwrap(), big(3315));
        assert_eq!(pt_invariant(3, 0).unwrap(), big(-10));
        assert!(pt_invariant(5, 7).is_err());
        assert!(pt_invariant(5, -1).is_err());
    }

    #[test]
    fn degree_five_pt_row() {
        let table = pt_table(5).unwrap();
        let got: Vec<BigInt> = (0..=6).map(|n| table.values[&n].clone()).collect();
        let expected: Vec<BigInt> = [21, -60, 171, -396, 867, -1728, 3315]
            .iter()
            .map(|c| big(*c))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn correction_values() {
        assert_eq!(correction(5, 4).unwrap(), big(45));
        assert_eq!(correction(5, 5).unwrap(), big(-216));
        assert_eq!(correction(5, 6).unwrap(), big(798));
        assert_eq!(correction(4, 3).unwrap(), big(-30));
        for d in 1..=12 {
            for n in 0..=(d - 2) {
                assert_eq!(correction(d, n).unwrap(), BigInt::zero(), "d={d} n={n}");
            }
        }
        assert!(matches!(
            correction(4, 4),
            Err(Error::OutsideCaseTable { .. })
        ));
        assert!(matches!(
            correction(3, 3),
            Err(Error::OutsideCaseTable { .. })
        ));
        assert!(correction(5, 7).is_err());
    }

    #[test]
    fn equation_coefficients() {
        assert_eq!(gv_coefficient(6, 6, 0), big(1));
        assert_eq!(gv_coefficient(6, 6, 5), big(252));
        assert_eq!(gv_coefficient(0, 6, 6), big(1));
        assert_eq!(gv_coefficient(0, 6, 3), BigInt::zero());
        assert_eq!(gv_coefficient(1, 6, 6), BigInt::zero());
        // the degree-five equations as printed, column by column
        let rows: [&[i64]; 7] = [
            &[1],
            &[10, 1],
            &[45, 8, 1],
            &[120, 28, 6, 1],
            &[210, 56, 15, 4, 1],
            &[252, 70, 20, 6, 2, 1],
            &[210, 56, 15, 4, 1, 0, 1],
        ];
        for (n, row) in rows.iter().enumerate() {
            for (i, expected) in row.iter().enumerate() {
                let h = 6 - i as i64;
                assert_eq!(
                    gv_coefficient(h, 6, n as i64),
                    big(*expected),
                    "n={n} h={h}"
                );
            }
        }
    }

    #[test]
    fn gv_rows_low_degree() {
        let d1 = gv_solve(1).unwrap();
        assert_eq!(d1.values, GvRow::from([(0, big(3))]));
        let d2 = gv_solve(2).unwrap();
        assert_eq!(d2.values, GvRow::from([(0, big(-6))]));
        let d3 = gv_solve(3).unwrap();
        assert_eq!(d3.values, GvRow::from([(0, big(27)), (1, big(-10))]));
        let d4 = gv_solve(4).unwrap();
        assert_eq!(
            d4.values,
            GvRow::from([(0, big(-192)), (1, big(231)), (2, big(-102)), (3, big(15))])
        );
    }

    #[test]
    fn gv_row_degree_five() {
        let d5 = gv_solve(5).unwrap();
        assert_eq!(
            d5.values,
            GvRow::from([
                (0, big(1695)),
                (1, big(-4452)),
                (2, big(5430)),
                (3, big(-3672)),
                (4, big(1386)),
                (5, big(-270)),
                (6, big(21)),
            ])
        );
        assert!(gv_solve(6).is_err());
        assert!(gv_solve(0).is_err());
    }

    #[test]
    fn top_genus_equals_chow_euler_number() {
        for d in 1..=5 {
            let p_a = arithmetic_genus(d).unwrap();
            let row = gv_solve(d).unwrap().values;
            assert_eq!(row[&p_a], pt_invariant(d, 0).unwrap(), "d={d}");
        }
    }

    #[test]
    fn bps_basis_round_trip() {
        assert!(bps_from_gv(&GvRow::from([(0, big(1))])).is_one());
        let spin_one = bps_from_gv(&GvRow::from([(1, big(1))]));
        assert_eq!(
            spin_one,
            LaurentSeries::from_terms(
                &["q"],
                &[(vec![-1], big(1)), (vec![0], big(2)), (vec![1], big(1))],
            )
        );
        let poly = LaurentSeries::from_terms(
            &["q"],
            &[(vec![-1], big(1)), (vec![0], big(3)), (vec![1], big(1))],
        );
        assert_eq!(
            gv_from_bps(&poly).unwrap(),
            GvRow::from([(0, big(1)), (1, big(1))])
        );
        let asym = LaurentSeries::from_terms(&["q"], &[(vec![1], big(1))]);
        assert!(matches!(gv_from_bps(&asym), Err(Error::AsymmetricInput(_))));
    }

    #[test]
    fn refined_basis_round_trip() {
        let unit = LaurentSeries::one(&["q", "r"]);
        let table = refined_from_rbps(&unit).unwrap();
        assert_eq!(table, RefinedTable::from_pairs(&[((0, 0), 1)]));

        let line = LaurentSeries::from_terms(
            &["q", "r"],
            &[
                (vec![0, -2], big(1)),
                (vec![0, 0], big(1)),
                (vec![0, 2], big(1)),
            ],
        );
        assert_eq!(
            refined_from_rbps(&line).unwrap(),
            RefinedTable::from_pairs(&[((2, 0), 1)])
        );

        let half_half = LaurentSeries::from_terms(
            &["q", "r"],
            &[
                (vec![1, 1], big(1)),
                (vec![1, -1], big(1)),
                (vec![-1, 1], big(1)),
                (vec![-1, -1], big(1)),
            ],
        );
        assert_eq!(
            refined_from_rbps(&half_half).unwrap(),
            RefinedTable::from_pairs(&[((1, 1), 1)])
        );

        let mixed = LaurentSeries::from_terms(
            &["q", "r"],
            &[
                (vec![0, 0], big(1)),
                (vec![1, 0], big(1)),
                (vec![-1, 0], big(1)),
            ],
        );
        assert!(matches!(
            refined_from_rbps(&mixed),
            Err(Error::ParityMismatch(_))
        ));
    }

    #[test]
    fn unrefine_examples() {
        let line = RefinedTable::from_pairs(&[((2, 0), 1)]);
        assert_eq!(unrefine(&line).unwrap(), GvRow::from([(0, big(3))]));
        let unit = RefinedTable::from_pairs(&[((0, 0), 1)]);
        assert_eq!(unrefine(&unit).unwrap(), GvRow::from([(0, big(1))]));
        let half = RefinedTable::from_pairs(&[((1, 1), 1)]);
        assert_eq!(
            unrefine(&half).unwrap(),
            GvRow::from([(0, big(4)), (1, big(-2))])
        );
    }

    #[test]
    fn binomial_recursion_identity() {
        // binom(n,k) = binom(n-2,k) + 2 binom(n-2,k-1) + binom(n-2,k-2)
        for n in 2..=64i64 {
            for k in 2..=(n - 2) {
                let lhs = binomial(n, k);
                let rhs =
                    binomial(n - 2, k) + big(2) * binomial(n - 2, k - 1) + binomial(n - 2, k - 2);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn table_json_forms() {
        let gv = gv_solve(5).unwrap();
        assert_eq!(
            gv.to_json(),
            "{\"degree\":5,\"values\":{\"0\":\"1695\",\"1\":\"-4452\",\"2\":\"5430\",\
             \"3\":\"-3672\",\"4\":\"1386\",\"5\":\"-270\",\"6\":\"21\"}}"
        );
        let refined = RefinedTable::from_pairs(&[((2, 0), 1)]);
        assert_eq!(
            refined.to_json(Some(1)),
            "{\"degree\":1,\"values\":{\"2,0\":\"1\"}}"
        );
        let (degree, parsed) = RefinedTable::from_json(&refined.to_json(Some(1))).unwrap();
        assert_eq!(degree, Some(1));
        assert_eq!(parsed, refined);
    }

    #[test]
    fn refined_parity_bookkeeping() {
        let t = RefinedTable::from_pairs(&[((2, 0), 1), ((0, 2), 3)]);
        assert_eq!(t.uniform_parity(), Some(0));
        let mixed = RefinedTable::from_pairs(&[((2, 0), 1), ((1, 0), 1)]);
        assert_eq!(mixed.uniform_parity(), None);
    }
}
