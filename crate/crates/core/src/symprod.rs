//! Symmetric and alternating products at the level of graded dimensions.
//!
//! A constructible complex enters these computations only through its graded
//! hypercohomology dimensions. Symmetric products of the even part and
//! exterior products of the odd part (and vice versa for the alternating
//! product) are combined degreewise; the closed-form generating series for
//! Euler characteristics and Poincare polynomials are expanded with the exact
//! series kernel so the two routes can be checked against each other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Degree/multiplicity pairs of one parity class.
type DegreeGroups = Vec<(i64, u64)>;

/// Finitely supported map from integer degree to nonnegative dimension.
///
/// Stored dimensions are strictly positive; absent degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDims {
    dims: BTreeMap<i64, u64>,
}

impl GradedDims {
    /// The zero space.
    pub fn empty() -> Self {
        GradedDims::default()
    }

    /// One-dimensional space in degree 0.
    pub fn unit() -> Self {
        GradedDims::from_pairs(&[(0, 1)])
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Self {
        let mut dims = BTreeMap::new();
        for (degree, dim) in pairs {
            if *dim > 0 {
                *dims.entry(*degree).or_insert(0) += dim;
            }
        }
        GradedDims { dims }
    }

    pub fn dim(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(d, m)| (*d, *m))
    }

    /// Total dimension across all degrees.
    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Euler characteristic: alternating sum of dimensions.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|(d, m)| {
                if d.rem_euclid(2) == 0 {
                    *m as i64
                } else {
                    -(*m as i64)
                }
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.dims.len() == 1 && self.dim(0) == 1
    }

    /// Direct sum: dimensions add degreewise.
    pub fn add(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        for (d, m) in &other.dims {
            *dims.entry(*d).or_insert(0) += m;
        }
        GradedDims { dims }
    }

    /// Graded tensor product: degree-additive convolution of dimensions.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = BTreeMap::new();
        for (da, ma) in &self.dims {
            for (db, mb) in &other.dims {
                *dims.entry(da + db).or_insert(0u64) +=
                    ma.checked_mul(*mb).expect("dimension overflow");
            }
        }
        GradedDims { dims }
    }

    /// All degrees moved by `a`.
    pub fn shifted(&self, a: i64) -> Self {
        GradedDims {
            dims: self.dims.iter().map(|(d, m)| (d + a, *m)).collect(),
        }
    }

    /// Poincare polynomial `sum_j h^j r^j` as a Laurent polynomial in `var`.
    pub fn poincare(&self, var: &str) -> LaurentSeries {
        let terms: Vec<(Vec<i64>, BigInt)> = self
            .dims
            .iter()
            .map(|(d, m)| (vec![*d], BigInt::from(*m)))
            .collect();
        LaurentSeries::from_terms(&[var], &terms)
    }

    fn split_parity(&self) -> (DegreeGroups, DegreeGroups) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (d, m) in &self.dims {
            if d.rem_euclid(2) == 0 {
                even.push((*d, *m));
            } else {
                odd.push((*d, *m));
            }
        }
        (even, odd)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GradedDimsJson::from(self)).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GradedDimsJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        doc.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct GradedDimsJson {
    dims: BTreeMap<String, u64>,
}

impl From<&GradedDims> for GradedDimsJson {
    fn from(g: &GradedDims) -> Self {
        GradedDimsJson {
            dims: g.dims.iter().map(|(d, m)| (d.to_string(), *m)).collect(),
        }
    }
}

impl TryFrom<GradedDimsJson> for GradedDims {
    type Error = Error;
    fn try_from(doc: GradedDimsJson) -> Result<Self> {
        let mut pairs = Vec::new();
        for (d, m) in doc.dims {
            let degree: i64 = d
                .parse()
                .map_err(|_| Error::InvalidJson(format!("bad degree `{d}`")))?;
            pairs.push((degree, m));
        }
        Ok(GradedDims::from_pairs(&pairs))
    }
}

fn u64_binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128).expect("dimension overflow") / (i as u128 + 1);
    }
    u64::try_from(c).expect("dimension overflow")
}

/// `Sym^n` of an m-dimensional space concentrated in one degree.
fn sym_isotypic(mult: u64, n: u64, degree: i64) -> GradedDims {
    if n == 0 {
        return GradedDims::unit();
    }
    if mult == 0 {
        return GradedDims::empty();
    }
    GradedDims::from_pairs(&[(degree * n as i64, u64_binomial(mult + n - 1, n))])
}

/// `Alt^n` of an m-dimensional space concentrated in one degree.
fn alt_isotypic(mult: u64, n: u64, degree: i64) -> GradedDims {
    if n == 0 {
        return GradedDims::unit();
    }
    GradedDims::from_pairs(&[(degree * n as i64, u64_binomial(mult, n))])
}

/// Distributes `n` among the degree groups, one isotypic factor per group.
fn distribute(
    groups: &[(i64, u64)],
    n: u64,
    isotypic: fn(u64, u64, i64) -> GradedDims,
) -> GradedDims {
    let mut dp: Vec<GradedDims> = Vec::with_capacity(n as usize + 1);
    dp.push(GradedDims::unit());
    for _ in 0..n {
        dp.push(GradedDims::empty());
    }
    for (degree, mult) in groups {
        let mut next: Vec<GradedDims> = vec![GradedDims::empty(); n as usize + 1];
        for used in 0..=n {
            if dp[used as usize].is_empty() {
                continue;
            }
            for take in 0..=(n - used) {
                let piece = isotypic(*mult, take, *degree);
                if piece.is_empty() {
                    continue;
                }
                let combined = dp[used as usize].tensor(&piece);
                next[(used + take) as usize] = next[(used + take) as usize].add(&combined);
            }
        }
        dp = next;
    }
    dp[n as usize].clone()
}

/// Graded dimensions of the n-th symmetric product.
///
/// Even degrees contribute symmetric-power dimensions, odd degrees
/// exterior-power dimensions, and degrees add.
pub fn graded_sym(h: &GradedDims, n: u64) -> GradedDims {
    let (even, odd) = h.split_parity();
    let mut out = GradedDims::empty();
    for i in 0..=n {
        let e = distribute(&even, i, sym_isotypic);
        if e.is_empty() {
            continue;
        }
        let o = distribute(&odd, n - i, alt_isotypic);
        if o.is_empty() {
            continue;
        }
        out = out.add(&e.tensor(&o));
    }
    out
}

/// Graded dimensions of the n-th alternating product (the parity-swapped
/// variant of [`graded_sym`]).
pub fn graded_alt(h: &GradedDims, n: u64) -> GradedDims {
    let (even, odd) = h.split_parity();
    let mut out = GradedDims::empty();
    for i in 0..=n {
        let e = distribute(&even, i, alt_isotypic);
        if e.is_empty() {
            continue;
        }
        let o = distribute(&odd, n - i, sym_isotypic);
        if o.is_empty() {
            continue;
        }
        out = out.add(&e.tensor(&o));
    }
    out
}

/// `Sym^n` of the shift of `h` by `a`: symmetric for even `a`, alternating
/// for odd `a`, with all degrees moved by `n*a`.
pub fn shift_parity(h: &GradedDims, a: i64, n: u64) -> GradedDims {
    let base = if a.rem_euclid(2) == 0 {
        graded_sym(h, n)
    } else {
        graded_alt(h, n)
    };
    base.shifted(a * n as i64)
}

/// Parity of the shift applied to the input complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Which product family the generating series counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Sym,
    Alt,
}

/// Truncated Euler-characteristic generating series of `Sym^n` / `Alt^n`.
///
/// `(1-q)^{-chi}` for symmetric products and `(1+q)^{chi}` for alternating
/// ones; an odd shift flips the sign of the exponent.
pub fn euler_sym_series(chi: i64, parity: Parity, kind: ProductKind, order: u64) -> LaurentSeries {
    let (sign, exp) = match (kind, parity) {
        (ProductKind::Sym, Parity::Even) => (-1, -chi),
        (ProductKind::Sym, Parity::Odd) => (-1, chi),
        (ProductKind::Alt, Parity::Even) => (1, chi),
        (ProductKind::Alt, Parity::Odd) => (1, -chi),
    };
    let base = LaurentSeries::from_terms(
        &["q"],
        &[(vec![0], BigInt::one()), (vec![1], BigInt::from(sign))],
    )
    .with_window("q", 0, order as i64)
    .expect("nonempty window");
    base.binom_pow(exp).expect("terminating expansion")
}

fn poincare_closed(h: &GradedDims, order: u64, alt: bool) -> LaurentSeries {
    let mut prod = LaurentSeries::one(&["p", "r"])
        .with_window("p", 0, order as i64)
        .expect("nonempty window");
    for (degree, mult) in h.iter() {
        // sym: (1 - (-1)^j p r^j)^{(-1)^{j+1} h^j}
        // alt: (1 + (-1)^j p r^j)^{(-1)^j h^j}
        let j_even = degree.rem_euclid(2) == 0;
        let inner = match (alt, j_even) {
            (false, true) => -1,
            (false, false) => 1,
            (true, true) => 1,
            (true, false) => -1,
        };
        let outer: i64 = match (alt, j_even) {
            (false, true) => -(mult as i64),
            (false, false) => mult as i64,
            (true, true) => mult as i64,
            (true, false) => -(mult as i64),
        };
        let base = LaurentSeries::from_terms(
            &["p", "r"],
            &[
                (vec![0, 0], BigInt::one()),
                (vec![1, degree], BigInt::from(inner)),
            ],
        )
        .with_window("p", 0, order as i64)
        .expect("nonempty window");
        let factor = base.binom_pow(outer).expect("terminating expansion");
        prod = prod.mul(&factor).expect("shared context");
    }
    prod
}

/// Closed-form two-variable series whose `p^n` coefficient is the Poincare
/// polynomial of the n-th symmetric product.
pub fn sym_poincare_closed(h: &GradedDims, order: u64) -> LaurentSeries {
    poincare_closed(h, order, false)
}

/// Alternating-product variant of [`sym_poincare_closed`].
pub fn alt_poincare_closed(h: &GradedDims, order: u64) -> LaurentSeries {
    poincare_closed(h, order, true)
}

/// Power series in q with graded-dimension coefficients, truncated at `q^M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: Vec<GradedDims>,
}

impl GradedSeries {
    /// Builds from coefficients `F_0, ..., F_M`.
    pub fn new(coeffs: Vec<GradedDims>) -> Self {
        assert!(!coeffs.is_empty(), "a graded series needs at least F_0");
        GradedSeries { coeffs }
    }

    /// The series `1 + 0 q + ... + 0 q^M`.
    pub fn unit_series(order: usize) -> Self {
        let mut coeffs = vec![GradedDims::empty(); order + 1];
        coeffs[0] = GradedDims::unit();
        GradedSeries { coeffs }
    }

    /// Truncation order M.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &GradedDims {
        &self.coeffs[m]
    }

    /// Degreewise direct sum; orders must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::InconsistentOrders(self.order(), other.order()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(GradedSeries { coeffs })
    }

    /// q-convolution with degreewise tensor of coefficients.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::InconsistentOrders(self.order(), other.order()));
        }
        let order = self.order();
        let mut coeffs = vec![GradedDims::empty(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order || b.is_empty() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.tensor(b));
            }
        }
        Ok(GradedSeries { coeffs })
    }

    pub fn to_json(&self) -> String {
        let doc = GradedSeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(GradedDimsJson::from).collect(),
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GradedSeriesJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        if doc.coeffs.len() != doc.order + 1 {
            return Err(Error::InvalidJson(format!(
                "order {} does not match {} coefficients",
                doc.order,
                doc.coeffs.len()
            )));
        }
        let coeffs: Result<Vec<GradedDims>> =
            doc.coeffs.into_iter().map(GradedDims::try_from).collect();
        Ok(GradedSeries::new(coeffs?))
    }
}

#[derive(Serialize, Deserialize)]
struct GradedSeriesJson {
    order: usize,
    coeffs: Vec<GradedDimsJson>,
}

/// Partitions of `m` into at most `max_parts` parts, each part >= 1.
fn partitions_at_most(m: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(
        m: usize,
        max_part: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(m)).rev() {
            cur.push(part);
            rec(m - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m.max(1), max_parts, &mut Vec::new(), &mut out);
    out
}

/// n-th symmetric product of a graded power series.
///
/// The `q^m` coefficient sums, over multisets of exactly `n` nonnegative
/// integers with sum `m` (zeros fill the remaining slots), the tensor product
/// of `Sym^{j_k}` of the coefficient at each distinct value `k`. In the
/// modeled situation `F_0` is the unit and the zero slots contribute
/// trivially; a larger `F_0` (as produced by direct sums) is handled by the
/// same rule.
pub fn sym_power_series(f: &GradedSeries, n: u64) -> Result<GradedSeries> {
    let order = f.order();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut total = GradedDims::empty();
        for partition in partitions_at_most(m, n as usize) {
            // multiplicity of each distinct positive value
            let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
            for part in &partition {
                *mult.entry(*part).or_insert(0) += 1;
            }
            let zeros = n - partition.len() as u64;
            let mut term = graded_sym(f.coeff(0), zeros);
            for (value, count) in mult {
                if term.is_empty() {
                    break;
                }
                term = term.tensor(&graded_sym(f.coeff(value), count));
            }
            total = total.add(&term);
        }
        coeffs.push(total);
    }
    Ok(GradedSeries::new(coeffs))
}

/// Betti series of a direct sum of graded series with shift weights.
///
/// For each component `(G_k, w_k)` the series
/// `sum_n P(Sym^n(G_k), r) (p r^{w_k})^n` is assembled and the components are
/// multiplied; the shift weight enters only as an r-exponent multiplier per
/// symmetric-power degree. Result variables: `(p, r, q)`.
pub fn betti_series(components: &[(GradedSeries, i64)], order_p: u64) -> Result<LaurentSeries> {
    let order_q = match components.first() {
        Some((g, _)) => g.order(),
        None => 0,
    };
    for (g, _) in components {
        if g.order() != order_q {
            return Err(Error::InconsistentOrders(order_q, g.order()));
        }
    }
    let mut prod = LaurentSeries::one(&["p", "r", "q"])
        .with_window("p", 0, order_p as i64)?
        .with_window("q", 0, order_q as i64)?;
    for (g, weight) in components {
        let mut component = LaurentSeries::zero(&["p", "r", "q"])
            .with_window("p", 0, order_p as i64)?
            .with_window("q", 0, order_q as i64)?;
        for n in 0..=order_p {
            let sym = sym_power_series(g, n)?;
            let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
            for m in 0..=order_q {
                for (degree, mult) in sym.coeff(m).iter() {
                    terms.push((
                        vec![n as i64, degree + weight * n as i64, m as i64],
                        BigInt::from(mult),
                    ));
                }
            }
            let grade = LaurentSeries::from_terms(&["p", "r", "q"], &terms)
                .with_window("p", 0, order_p as i64)?
                .with_window("q", 0, order_q as i64)?;
            component = component.add(&grade)?;
        }
        prod = prod.mul(&component)?;
    }
    Ok(prod)
}

/// Truncated series `n (1+tx)^{2g} / ((1-t)(1-t x^2))` whose `t^k`
/// coefficient is `n` times the Poincare polynomial of the k-th symmetric
/// product of a smooth genus-`g` curve.
///
/// Computed by the coefficient recursion
/// `c_k = (1+x^2) c_{k-1} - x^2 c_{k-2} + n binom(2g,k) x^k`,
/// independently of the product expansion used to cross-check it.
pub fn macdonald_series(genus: u64, n_curves: i64, order: u64) -> LaurentSeries {
    let x = |pairs: &[(i64, BigInt)]| {
        LaurentSeries::from_terms(
            &["x"],
            &pairs
                .iter()
                .map(|(e, c)| (vec![*e], c.clone()))
                .collect::<Vec<_>>(),
        )
    };
    let one_plus_x2 = x(&[(0, BigInt::one()), (2, BigInt::one())]);
    let x2 = x(&[(2, BigInt::one())]);
    let mut cs: Vec<LaurentSeries> = Vec::with_capacity(order as usize + 1);
    for k in 0..=order {
        let mut c = if k == 0 {
            LaurentSeries::zero(&["x"])
        } else {
            cs[k as usize - 1]
                .mul(&one_plus_x2)
                .expect("shared context")
        };
        if k >= 2 {
            c = c
                .sub(&cs[k as usize - 2].mul(&x2).expect("shared context"))
                .expect("shared context");
        }
        let b = crate::series::binomial(2 * genus as i64, k as i64) * BigInt::from(n_curves);
        c = c.add(&x(&[(k as i64, b)])).expect("shared context");
        cs.push(c);
    }
    let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        for (e, coeff) in c.terms() {
            terms.push((vec![k as i64, e[0]], coeff.clone()));
        }
    }
    LaurentSeries::from_terms(&["t", "x"], &terms)
        .with_window("t", 0, order as i64)
        .expect("nonempty window")
}
