//! The commutative ring `Z[l,t]/(t^2 = 1)` and the degree-2 verification.
//!
//! Over the locus of line pairs the direct image of the relative Hilbert
//! scheme decomposes into shifted copies of the trivial and the sign local
//! system; `l` records a shift by two and `t` the sign system. The module
//! builds the smooth-stratum systems `L_m`, the punctual systems `M_m`, the
//! pushforward `H_k = sum M_i (x) L_{k-i}`, and the conjectural right-hand
//! side `P_n`, each by two independent routes, and checks the identities
//! `P_k = l H_k` coefficient by coefficient.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Element `trivial(l) + twisted(l) * t` of `Z[l,t]/(t^2=1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonodromyElem {
    trivial: Vec<BigInt>,
    twisted: Vec<BigInt>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

fn mul_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

impl MonodromyElem {
    pub fn zero() -> Self {
        MonodromyElem::default()
    }

    pub fn one() -> Self {
        MonodromyElem {
            trivial: vec![BigInt::one()],
            twisted: Vec::new(),
        }
    }

    /// `c * l^k` or `c * l^k t`.
    pub fn term(c: i64, k: usize, twisted: bool) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        let mut e = MonodromyElem::zero();
        if twisted {
            e.twisted = v;
        } else {
            e.trivial = v;
        }
        e.normalize();
        e
    }

    pub fn from_parts(trivial: Vec<BigInt>, twisted: Vec<BigInt>) -> Self {
        let mut e = MonodromyElem { trivial, twisted };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        trim(&mut self.trivial);
        trim(&mut self.twisted);
    }

    /// Coefficient of `l^k` in the trivial part.
    pub fn trivial_coeff(&self, k: usize) -> BigInt {
        self.trivial.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `l^k` in the twisted part.
    pub fn twisted_coeff(&self, k: usize) -> BigInt {
        self.twisted.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.trivial.is_empty() && self.twisted.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        MonodromyElem {
            trivial: add_vec(&self.trivial, &other.trivial),
            twisted: add_vec(&self.twisted, &other.twisted),
        }
    }

    /// Ring product; `t^2 = 1` mixes the parts as
    /// `(a + bt)(c + dt) = (ac + bd) + (ad + bc)t`.
    pub fn mul(&self, other: &Self) -> Self {
        let trivial = add_vec(
            &mul_vec(&self.trivial, &other.trivial),
            &mul_vec(&self.twisted, &other.twisted),
        );
        let twisted = add_vec(
            &mul_vec(&self.trivial, &other.twisted),
            &mul_vec(&self.twisted, &other.trivial),
        );
        MonodromyElem { trivial, twisted }
    }

    /// Multiplies by `l^k`.
    pub fn shift_l(&self, k: usize) -> Self {
        let lift = |v: &[BigInt]| {
            if v.is_empty() {
                return Vec::new();
            }
            let mut out = vec![BigInt::zero(); k];
            out.extend_from_slice(v);
            out
        };
        MonodromyElem {
            trivial: lift(&self.trivial),
            twisted: lift(&self.twisted),
        }
    }

    pub fn all_nonnegative(&self) -> bool {
        self.trivial
            .iter()
            .chain(self.twisted.iter())
            .all(|c| !c.is_negative())
    }

    /// Evaluates at `l = 1, t = 1` (total dimension count).
    pub fn total_at_one(&self) -> BigInt {
        let s: BigInt = self.trivial.iter().sum::<BigInt>() + self.twisted.iter().sum::<BigInt>();
        s
    }

    pub fn to_json(&self) -> String {
        let doc = MonodromyJson {
            trivial: self.trivial.iter().map(|c| c.to_string()).collect(),
            twisted: self.twisted.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MonodromyJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        let parse = |v: Vec<String>| -> Result<Vec<BigInt>> {
            v.into_iter()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::InvalidJson(format!("bad coefficient `{s}`")))
                })
                .collect()
        };
        Ok(MonodromyElem::from_parts(
            parse(doc.trivial)?,
            parse(doc.twisted)?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct MonodromyJson {
    trivial: Vec<String>,
    twisted: Vec<String>,
}

impl fmt::Display for MonodromyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.trivial.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 if c.is_one() => "l".to_string(),
                1 => format!("{c}*l"),
                _ if c.is_one() => format!("l^{k}"),
                _ => format!("{c}*l^{k}"),
            });
        }
        for (k, c) in self.twisted.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 if c.is_one() => "t".to_string(),
                0 => format!("{c}*t"),
                1 if c.is_one() => "l*t".to_string(),
                1 => format!("{c}*l*t"),
                _ if c.is_one() => format!("l^{k}*t"),
                _ => format!("{c}*l^{k}*t"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Mutable coefficient buffers for building large elements in one pass.
#[derive(Default)]
struct Accumulator {
    trivial: Vec<BigInt>,
    twisted: Vec<BigInt>,
}

impl Accumulator {
    fn bump(v: &mut Vec<BigInt>, power: usize, c: &BigInt) {
        if v.len() <= power {
            v.resize(power + 1, BigInt::zero());
        }
        v[power] += c;
    }

    fn add_trivial(&mut self, power: usize, c: &BigInt) {
        Self::bump(&mut self.trivial, power, c);
    }

    fn add_twisted(&mut self, power: usize, c: &BigInt) {
        Self::bump(&mut self.twisted, power, c);
    }

    fn add_both(&mut self, power: usize, c: &BigInt) {
        self.add_trivial(power, c);
        self.add_twisted(power, c);
    }

    fn finish(self) -> MonodromyElem {
        MonodromyElem::from_parts(self.trivial, self.twisted)
    }
}

/// Coefficient of `l^i` in `(1 + ... + l^a)(1 + ... + l^b)`: the number of
/// lattice points `(x, y)` with `x <= a`, `y <= b`, `x + y = i`.
fn staircase_product_coeff(a: usize, b: usize, i: usize) -> BigInt {
    if i > a + b {
        return BigInt::zero();
    }
    let m = [i, a, b, a + b - i].iter().copied().min().unwrap();
    BigInt::from(m as u64 + 1)
}

/// Smooth-stratum system `L_m` in closed form.
pub fn l_system(m: usize) -> MonodromyElem {
    let e = if m == 0 {
        MonodromyElem::one()
    } else if m.is_multiple_of(2) {
        let n = (m / 2) as i64;
        MonodromyElem::term(n + 1, m, false).add(&MonodromyElem::term(n, m, true))
    } else {
        let n = m.div_ceil(2) as i64;
        MonodromyElem::term(n, m, false).add(&MonodromyElem::term(n, m, true))
    };
    debug_assert!(e.all_nonnegative());
    e
}

/// Punctual system `M_m` in closed form.
pub fn m_system(m: usize) -> MonodromyElem {
    let e = if m == 0 {
        MonodromyElem::one()
    } else if m.is_multiple_of(2) {
        let n = (m / 2) as i64;
        MonodromyElem::one()
            .add(&MonodromyElem::term(n, 1, false))
            .add(&MonodromyElem::term(n - 1, 1, true))
    } else {
        let n = m.div_ceil(2) as i64;
        MonodromyElem::one()
            .add(&MonodromyElem::term(n - 1, 1, false))
            .add(&MonodromyElem::term(n - 1, 1, true))
    };
    debug_assert!(e.all_nonnegative());
    e
}

/// `L_m` from the cell geometry: the smooth-points Hilbert scheme is a
/// disjoint union of cells `A_0, ..., A_m`, each contributing `l^m`, with the
/// monodromy swapping `A_k` and `A_{m-k}`. Swapped pairs give `(1+t) l^m`,
/// the fixed middle cell (m even) a bare `l^m`.
pub fn l_system_oracle(m: usize) -> MonodromyElem {
    let mut acc = MonodromyElem::zero();
    let mut k = 0;
    while 2 * k < m {
        acc = acc
            .add(&MonodromyElem::term(1, m, false))
            .add(&MonodromyElem::term(1, m, true));
        k += 1;
    }
    if m.is_multiple_of(2) {
        acc = acc.add(&MonodromyElem::term(1, m, false));
    }
    acc
}

/// `M_m` from the punctual geometry: a chain of `m-1` rational curves glued
/// at points; the monodromy swaps the i-th and (m-i)-th component. Degree
/// zero contributes 1, each swapped component pair `(1+t) l`, a fixed middle
/// component a bare `l`.
pub fn m_system_oracle(m: usize) -> MonodromyElem {
    if m == 0 {
        return MonodromyElem::one();
    }
    let mut acc = MonodromyElem::one();
    let components = m - 1;
    let mut i = 1;
    while 2 * i < m {
        if i <= components {
            acc = acc
                .add(&MonodromyElem::term(1, 1, false))
                .add(&MonodromyElem::term(1, 1, true));
        }
        i += 1;
    }
    if m.is_multiple_of(2) && m / 2 <= components {
        acc = acc.add(&MonodromyElem::term(1, 1, false));
    }
    acc
}

/// Pushforward of the n-points relative Hilbert scheme over the line-pair
/// locus: `H_k = sum_{i=0}^{k} M_i (x) L_{k-i}`.
pub fn hilbert_pushforward(k: usize) -> MonodromyElem {
    let mut acc = MonodromyElem::zero();
    for i in 0..=k {
        acc = acc.add(&m_system(i).mul(&l_system(k - i)));
    }
    debug_assert!(acc.all_nonnegative());
    acc
}

/// Same sum evaluated with the geometric oracles instead of closed forms.
pub fn hilbert_pushforward_oracle(k: usize) -> MonodromyElem {
    let mut acc = MonodromyElem::zero();
    for i in 0..=k {
        acc = acc.add(&m_system_oracle(i).mul(&l_system_oracle(k - i)));
    }
    acc
}

/// Closed form for `sum_i M_i (x) L_{k-i}` with the two parity cases.
pub fn lhs_closed_form(k: usize) -> MonodromyElem {
    let mut acc = Accumulator::default();
    if k.is_multiple_of(2) {
        let n = (k / 2) as i64;
        for j in 0..=k {
            acc.add_trivial(j, &BigInt::one());
        }
        for i in 0..n {
            let c = BigInt::from((n - i) + 2 * i * (n - i));
            acc.add_both((2 * i + 1) as usize, &c);
        }
        for i in 1..=n {
            let c = BigInt::from(i + 2 * i * (n - i));
            acc.add_both((2 * i) as usize, &c);
        }
    } else {
        let n = ((k - 1) / 2) as i64;
        for i in 0..=n {
            acc.add_trivial((2 * n - 2 * i) as usize, &BigInt::one());
        }
        for i in 0..=n {
            let c = BigInt::from(n + 1 + 2 * i * (n - i));
            acc.add_both((2 * n - 2 * i + 1) as usize, &c);
        }
        for i in 0..=n {
            let c = BigInt::from(2 * (i + 1) * (n - i));
            if !c.is_zero() {
                acc.add_both((2 * n - 2 * i) as usize, &c);
            }
        }
    }
    acc.finish()
}

/// The `q^{n+1}` coefficient of the conjectural right-hand side, in closed
/// form: the geometric-series summand contributes `l (1 + ... + l^n)`; the
/// squared summand contributes staircase cross products weighted `l^2 (1+t)`
/// and, for odd `n`, the diagonal square with its twisted/untwisted split.
pub fn rhs_pn(n: usize) -> MonodromyElem {
    let mut acc = Accumulator::default();
    for j in 0..=n {
        acc.add_trivial(j + 1, &BigInt::one());
    }
    let half = n / 2;
    for k in 0..half {
        let other = n - 1 - k;
        for i in 0..=(k + other) {
            let c = staircase_product_coeff(k, other, i);
            acc.add_both(i + 2, &c);
        }
    }
    if n % 2 == 1 {
        // diagonal square of the middle coefficient
        for i in 0..=half {
            acc.add_twisted(2 * i + 2, &BigInt::one());
        }
        for j in 1..=half {
            for i in 0..j {
                acc.add_both(i + j + 2, &BigInt::one());
            }
        }
    }
    let out = acc.finish();
    debug_assert!(out.all_nonnegative());
    out
}

/// `P_n` recomputed from the series definition: expand
/// `1/((1-q)(1-ql))` into staircases, take the square term by enumerating the
/// class pairs of the middle coefficient (diagonal squares of odd classes
/// pick up the sign system, distinct classes contribute both systems), and
/// collect the `q^{n+1}` coefficient.
pub fn rhs_from_series(n: usize) -> MonodromyElem {
    // weight-one summand of the exponential
    let mut acc = Accumulator::default();
    for j in 0..=n {
        acc.add_trivial(j + 1, &BigInt::one());
    }

    // weight-two summand: pairs F_hi q^{hi+1} * F_lo q^{lo+1} with
    // hi + lo + 2 = n + 1, the whole square shifted once more by l
    let mut cross = vec![0u64; n + 1];
    for lo in 0..=n {
        if n < lo + 2 {
            break;
        }
        let hi = n - 1 - lo;
        if hi <= lo {
            break;
        }
        // classes of F_hi[-1] x F_lo[-1] pushed down the double cover:
        // every class pair lands in both systems
        for a in 0..=hi {
            for b in 0..=lo {
                cross[a + b] += 1;
            }
        }
    }
    if (n + 1).is_multiple_of(2) {
        // diagonal: Sym^2 of F_k[-1] for 2(k+1) = n+1; the odd shift swaps
        // the projector, so equal classes land in the sign system only,
        // distinct classes in both
        let k = (n - 1) / 2;
        for a in 0..=k {
            acc.add_twisted(2 * a + 2, &BigInt::one());
            for b in (a + 1)..=k {
                cross[a + b] += 1;
            }
        }
    }
    for (i, count) in cross.into_iter().enumerate() {
        if count > 0 {
            acc.add_both(i + 2, &BigInt::from(count));
        }
    }
    acc.finish()
}

/// Per-k outcome of the degree-2 verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deg2Check {
    pub k: usize,
    /// `P_k == l * H_k` with `H_k` built from the closed-form systems.
    pub pn_vs_hilbert: bool,
    /// `P_k == l *` the closed form for `sum M_i (x) L_{k-i}`.
    pub pn_vs_closed: bool,
    /// Closed-form `P_k` equals the series recomputation.
    pub pn_vs_series: bool,
    /// `H_k` from closed forms equals `H_k` from the geometric oracles.
    pub hilbert_vs_oracle: bool,
    /// `L_k` and `M_k` closed forms equal their geometric oracles.
    pub systems_vs_oracle: bool,
    /// Every coefficient of `L_k`, `M_k`, `H_k`, `P_k` is nonnegative.
    pub nonnegative: bool,
}

impl Deg2Check {
    pub fn pass(&self) -> bool {
        self.pn_vs_hilbert
            && self.pn_vs_closed
            && self.pn_vs_series
            && self.hilbert_vs_oracle
            && self.systems_vs_oracle
            && self.nonnegative
    }
}

/// Outcome of [`verify_deg2`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deg2Report {
    pub k_max: usize,
    pub checks: Vec<Deg2Check>,
    pub pass: bool,
}

/// Checks, for every `k <= k_max`, that the right-hand side `P_k` matches
/// `l * H_k` along every available route. Failures are report content, not
/// errors.
pub fn verify_deg2(k_max: usize) -> Deg2Report {
    let mut checks = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let h = hilbert_pushforward(k);
        let lh = h.shift_l(1);
        let pn = rhs_pn(k);
        let check = Deg2Check {
            k,
            pn_vs_hilbert: pn == lh,
            pn_vs_closed: pn == lhs_closed_form(k).shift_l(1),
            pn_vs_series: pn == rhs_from_series(k),
            hilbert_vs_oracle: h == hilbert_pushforward_oracle(k),
            systems_vs_oracle: l_system(k) == l_system_oracle(k)
                && m_system(k) == m_system_oracle(k),
            nonnegative: l_system(k).all_nonnegative()
                && m_system(k).all_nonnegative()
                && h.all_nonnegative()
                && pn.all_nonnegative(),
        };
        checks.push(check);
    }
    let pass = checks.iter().all(Deg2Check::pass);
    Deg2Report {
        k_max,
        checks,
        pass,
    }
}
