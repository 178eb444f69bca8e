//! Sparse exact Laurent arithmetic over arbitrary-precision integers.
//!
//! A [`LaurentSeries`] is a finite set of terms `c * x1^e1 * ... * xk^ek`
//! with `BigInt` coefficients and `i64` exponents, tagged with an ordered
//! variable context and an optional truncation window per variable. Windows
//! are inclusive `(min, max)` exponent bounds; a variable without a window is
//! handled exactly. Binary operations require identical variable contexts and
//! truncate the result to the intersection of the operand windows.
//!
//! Values are immutable; every operation returns a fresh series, so sharing
//! across threads is safe without locks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive per-variable exponent bounds; `None` means untruncated.
pub type Window = Option<(i64, i64)>;

/// Sparse multivariate Laurent polynomial / truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    vars: Vec<String>,
    windows: Vec<Window>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

fn in_window(windows: &[Window], exps: &[i64]) -> bool {
    windows.iter().zip(exps).all(|(w, e)| match w {
        Some((lo, hi)) => *lo <= *e && *e <= *hi,
        None => true,
    })
}

impl LaurentSeries {
    /// The zero series over the given variables, untruncated.
    pub fn zero(vars: &[&str]) -> Self {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let windows = vec![None; vars.len()];
        LaurentSeries {
            vars,
            windows,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    /// A constant series.
    pub fn constant(vars: &[&str], c: BigInt) -> Self {
        let mut s = Self::zero(vars);
        if !c.is_zero() {
            s.terms.insert(vec![0; s.vars.len()], c);
        }
        s
    }

    /// A single term `c * prod(var_i ^ exps_i)`.
    pub fn monomial(vars: &[&str], exps: &[i64], c: BigInt) -> Self {
        let mut s = Self::zero(vars);
        assert_eq!(exps.len(), s.vars.len(), "exponent arity mismatch");
        if !c.is_zero() {
            s.terms.insert(exps.to_vec(), c);
        }
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs.
    pub fn from_terms(vars: &[&str], terms: &[(Vec<i64>, BigInt)]) -> Self {
        let mut s = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), s.vars.len(), "exponent arity mismatch");
            if !c.is_zero() {
                let entry = s.terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += c;
                if entry.is_zero() {
                    s.terms.remove(e);
                }
            }
        }
        s
    }

    /// Returns the same series truncated to `min..=max` in `var`.
    ///
    /// If the variable already carries a window the result uses the
    /// intersection.
    pub fn with_window(mut self, var: &str, min: i64, max: i64) -> Result<Self> {
        let i = self.var_index(var)?;
        let (lo, hi) = match self.windows[i] {
            Some((lo, hi)) => (lo.max(min), hi.min(max)),
            None => (min, max),
        };
        if lo > hi {
            return Err(Error::EmptyWindow(var.to_string()));
        }
        self.windows[i] = Some((lo, hi));
        self.terms.retain(|e, _| in_window(&self.windows, e));
        Ok(self)
    }

    /// Restricts to a narrower window in `var` (drops out-of-window terms).
    pub fn restrict_window(self, var: &str, min: i64, max: i64) -> Result<Self> {
        self.with_window(var, min, max)
    }

    /// Ordered variable context.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Per-variable windows, aligned with [`Self::vars`].
    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    /// Position of `var` in the context.
    pub fn var_index(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// Iterates terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0; self.vars.len()].as_slice())
                .is_some_and(|c| c.is_one())
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    fn intersect_windows(&self, other: &Self) -> Result<Vec<Window>> {
        let mut out = Vec::with_capacity(self.windows.len());
        for (i, (a, b)) in self.windows.iter().zip(&other.windows).enumerate() {
            let w = match (a, b) {
                (None, None) => None,
                (Some(w), None) | (None, Some(w)) => Some(*w),
                (Some((alo, ahi)), Some((blo, bhi))) => {
                    let lo = *alo.max(blo);
                    let hi = *ahi.min(bhi);
                    if lo > hi {
                        return Err(Error::EmptyWindow(self.vars[i].clone()));
                    }
                    Some((lo, hi))
                }
            };
            out.push(w);
        }
        Ok(out)
    }

    fn rebuilt(&self, windows: Vec<Window>, terms: BTreeMap<Vec<i64>, BigInt>) -> Self {
        let mut s = LaurentSeries {
            vars: self.vars.clone(),
            windows,
            terms,
        };
        s.terms
            .retain(|e, c| !c.is_zero() && in_window(&s.windows, e));
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let windows = self.intersect_windows(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        Ok(self.rebuilt(windows, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentSeries {
            vars: self.vars.clone(),
            windows: self.windows.clone(),
            terms,
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentSeries {
                vars: self.vars.clone(),
                windows: self.windows.clone(),
                terms: BTreeMap::new(),
            };
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        LaurentSeries {
            vars: self.vars.clone(),
            windows: self.windows.clone(),
            terms,
        }
    }

    /// Multiplies by the monomial `c * prod(var_i ^ shift_i)`, truncating.
    pub fn monomial_shift(&self, shift: &[i64], c: &BigInt) -> Self {
        assert_eq!(shift.len(), self.vars.len(), "exponent arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (e, x) in &self.terms {
                let ne: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                if in_window(&self.windows, &ne) {
                    terms.insert(ne, x * c);
                }
            }
        }
        LaurentSeries {
            vars: self.vars.clone(),
            windows: self.windows.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let windows = self.intersect_windows(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !in_window(&windows, &e) {
                    continue;
                }
                let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Ok(self.rebuilt(windows, terms))
    }

    /// Expands `(1 + u)^e` for arbitrary integer `e`, where `self = 1 + u`.
    ///
    /// Requires the constant term of `self` to be 1 and every monomial of `u`
    /// to carry a strictly positive exponent in at least one windowed
    /// variable, so repeated powers of `u` eventually leave the window.
    pub fn binom_pow(&self, e: i64) -> Result<Self> {
        let zero_exp = vec![0i64; self.vars.len()];
        if self
            .terms
            .get(&zero_exp)
            .map(|c| !c.is_one())
            .unwrap_or(true)
        {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut u = self.clone();
        u.terms.remove(&zero_exp);

        if u.is_zero() || e == 0 {
            return Ok(LaurentSeries {
                vars: self.vars.clone(),
                windows: self.windows.clone(),
                terms: BTreeMap::from([(zero_exp, BigInt::one())]),
            });
        }
        for exp in u.terms.keys() {
            let escapes = exp
                .iter()
                .zip(&u.windows)
                .any(|(x, w)| w.is_some() && *x > 0);
            if !escapes {
                return Err(Error::NonTerminatingExpansion(format!(
                    "monomial {exp:?} has no positive exponent in a windowed variable"
                )));
            }
        }
        let cap = self.expansion_cap(&u);

        let mut result = LaurentSeries::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            BigInt::one(),
        );
        result.windows = self.windows.clone();
        let mut power = result.clone();
        // c_k = binom(e, k), computed by the falling-factorial recurrence;
        // the division by k is exact.
        let mut coeff = BigInt::one();
        let mut k: i64 = 0;
        loop {
            k += 1;
            if k > cap {
                return Err(Error::NonTerminatingExpansion(format!(
                    "expansion still nonzero after {cap} steps"
                )));
            }
            coeff = coeff * BigInt::from(e - k + 1) / BigInt::from(k);
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            if !coeff.is_zero() {
                result = result.add(&power.scalar_mul(&coeff))?;
            }
        }
        Ok(result)
    }

    /// Upper bound on the number of `u`-powers that can stay inside the
    /// window; exceeding it means the expansion cannot terminate.
    fn expansion_cap(&self, u: &Self) -> i64 {
        let all_nonneg = u.terms.keys().all(|e| {
            e.iter()
                .zip(&self.windows)
                .all(|(x, w)| w.is_none() || *x >= 0)
        });
        if all_nonneg {
            // every power adds at least 1 to some windowed exponent
            let budget: i64 = self
                .windows
                .iter()
                .filter_map(|w| w.map(|(_, hi)| hi.max(0)))
                .sum();
            return budget + 1;
        }
        if u.terms.len() == 1 {
            // a single monomial cannot cancel against itself
            let exp = u.terms.keys().next().unwrap();
            return exp
                .iter()
                .zip(&self.windows)
                .filter_map(|(x, w)| match w {
                    Some((_, hi)) if *x > 0 => Some(hi.max(&0) / x + 1),
                    _ => None,
                })
                .min()
                .unwrap_or(1)
                + 1;
        }
        // mixed signs: fall back to a generous cap and report failure if hit
        let width: i64 = self
            .windows
            .iter()
            .filter_map(|w| w.map(|(lo, hi)| hi - lo + 1))
            .sum();
        (width + 2) * (width + 2)
    }

    /// Exact coefficient of the given exponent vector (zero when absent).
    pub fn coefficient(&self, exps: &[i64]) -> Result<BigInt> {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity mismatch");
        if !in_window(&self.windows, exps) {
            return Err(Error::OutsideWindow(exps.to_vec()));
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Coefficient of `var^k`, as a series over the same context with the
    /// `var` exponent zeroed out.
    pub fn coefficient_of_var(&self, var: &str, k: i64) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne[i] = 0;
                terms.insert(ne, c.clone());
            }
        }
        let mut windows = self.windows.clone();
        windows[i] = None;
        Ok(LaurentSeries {
            vars: self.vars.clone(),
            windows,
            terms,
        })
    }

    /// True iff the series is invariant under `var -> 1/var`.
    pub fn symmetry_check(&self, var: &str) -> Result<bool> {
        let i = self.var_index(var)?;
        let reflected: BTreeMap<Vec<i64>, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[i] = -ne[i];
                (ne, c.clone())
            })
            .collect();
        Ok(reflected == self.terms)
    }

    /// Substitutes `var = -1`, collapsing its exponents to zero.
    pub fn specialize_sign(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let odd = ne[i].rem_euclid(2) == 1;
            ne[i] = 0;
            let entry = terms.entry(ne.clone()).or_insert_with(BigInt::zero);
            if odd {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                terms.remove(&ne);
            }
        }
        let mut windows = self.windows.clone();
        windows[i] = None;
        Ok(LaurentSeries {
            vars: self.vars.clone(),
            windows,
            terms,
        })
    }

    /// Substitutes `var = 1`, collapsing its exponents to zero.
    pub fn specialize_one(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            let entry = terms.entry(ne.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&ne);
            }
        }
        let mut windows = self.windows.clone();
        windows[i] = None;
        Ok(LaurentSeries {
            vars: self.vars.clone(),
            windows,
            terms,
        })
    }

    /// Canonical JSON form: variables plus lexicographically sorted terms
    /// with decimal-string coefficients.
    pub fn to_json(&self) -> String {
        let doc = SeriesJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    e: e.clone(),
                    c: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("series serialization cannot fail")
    }

    /// Parses the canonical JSON form; the result is untruncated.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        let vars: Vec<&str> = doc.vars.iter().map(|s| s.as_str()).collect();
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            if t.e.len() != doc.vars.len() {
                return Err(Error::InvalidJson(format!(
                    "term exponent arity {} does not match {} variables",
                    t.e.len(),
                    doc.vars.len()
                )));
            }
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| Error::InvalidJson(format!("bad coefficient `{}`", t.c)))?;
            terms.push((t.e.clone(), c));
        }
        Ok(Self::from_terms(&vars, &terms))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<i64>,
    c: String,
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (v, x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{x}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Binomial coefficient `n choose k`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}
