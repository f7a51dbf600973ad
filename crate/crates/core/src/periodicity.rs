//! Right and plenary periods of the generators `h_i`.
//!
//! `p_i = min{m ≥ 1 : (A^m)_ii ≠ 0}` and, when `b_i ≠ 0`,
//! `q_i = min{m ≥ 1 : (A^(m+1))_ii · Π_{j<m} (A^j b)_i ≠ 0}`.
//!
//! Over an exact field the search never needs more than `n + 1` steps: for
//! `m ≥ 1` every `A^m` lies in `span(A, …, A^n)` (Cayley–Hamilton), so if
//! the diagonal entry vanishes on that window it vanishes forever.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::{Algebra, Element};
use crate::error::{EacpError, Result};
use crate::matrix;
use crate::scalar::Scalar;

/// Largest `m` for which [`GammaLedger::expand`] multiplies out `γ_m`.
pub const EXPANSION_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodKind {
    Finite(u64),
    Infinite,
    /// Search stopped at the cutoff without a decision.
    Unknown(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodResult {
    pub kind: PeriodKind,
    pub certificate: String,
}

impl PeriodResult {
    fn finite(m: u64, certificate: String) -> Self {
        PeriodResult { kind: PeriodKind::Finite(m), certificate }
    }

    fn infinite(certificate: String) -> Self {
        PeriodResult { kind: PeriodKind::Infinite, certificate }
    }

    fn unknown(m_max: u64) -> Self {
        PeriodResult {
            kind: PeriodKind::Unknown(m_max),
            certificate: format!("no decision within m ≤ {m_max}"),
        }
    }

    pub fn value(&self) -> Option<u64> {
        match self.kind {
            PeriodKind::Finite(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for PeriodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodKind::Finite(m) => write!(f, "{m}"),
            PeriodKind::Infinite => f.write_str("inf"),
            PeriodKind::Unknown(m) => write!(f, "unknown(>{m})"),
        }
    }
}

impl fmt::Display for PeriodResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, self.certificate)
    }
}

/// Default search cutoff `max(16, n²)`.
pub fn default_mmax(n: usize) -> u64 {
    16.max((n * n) as u64)
}

fn check_index(alg: &Algebra, i: usize) -> Result<()> {
    if i >= alg.n() {
        return Err(EacpError::IndexOutOfRange(format!("h{} with n = {}", i + 1, alg.n())));
    }
    Ok(())
}

/// Length of the shortest closed walk through `i` in the support digraph of
/// `A` (edge `j → k` iff `a_jk ≠ 0`).
pub fn shortest_closed_walk(alg: &Algebra, i: usize) -> Option<u64> {
    let a = alg.a();
    let n = alg.n();
    let mut dist = vec![u64::MAX; n];
    dist[i] = 0;
    let mut queue = VecDeque::from([i]);
    let mut best: Option<u64> = None;
    while let Some(j) = queue.pop_front() {
        if !a[(j, i)].is_zero() {
            let len = dist[j] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
        for k in 0..n {
            if !a[(j, k)].is_zero() && dist[k] == u64::MAX {
                dist[k] = dist[j] + 1;
                queue.push_back(k);
            }
        }
    }
    best
}

fn nonnegative_rational(alg: &Algebra) -> bool {
    alg.a().entries().all(|x| x.as_rational().is_some_and(|r| !r.is_negative()))
}

/// Right period `p_i` of `h_i` (zero-based `i`).
pub fn right_period(alg: &Algebra, i: usize, m_max: u64) -> Result<PeriodResult> {
    check_index(alg, i)?;
    let name = format!("h{}", i + 1);
    let Some(walk) = shortest_closed_walk(alg, i) else {
        return Ok(PeriodResult::infinite(format!("no closed walk through {name} in the support digraph of A")));
    };
    if nonnegative_rational(alg) {
        return Ok(if walk <= m_max {
            PeriodResult::finite(
                walk,
                format!("A is nonnegative: shortest closed walk through {name} has length {walk}"),
            )
        } else {
            PeriodResult::unknown(m_max)
        });
    }
    let exact = alg.field().is_exact();
    let n = alg.n() as u64;
    let horizon = if exact { m_max.max(n) } else { m_max };
    // row i of A^m
    let mut row = matrix::unit(alg.n(), i);
    for m in 1..=horizon {
        row = alg.a().vec_mul(&row);
        if !row[i].is_zero() {
            return Ok(if m <= m_max {
                PeriodResult::finite(m, format!("(A^{m})_{{{0}{0}}} = {1} ≠ 0", i + 1, row[i]))
            } else {
                PeriodResult::unknown(m_max)
            });
        }
        if exact && m == n {
            return Ok(PeriodResult::infinite(format!(
                "(A^k)_{{{0}{0}}} = 0 for k = 1..{n}; every A^m with m ≥ 1 lies in span(A, …, A^{n})",
                i + 1
            )));
        }
    }
    Ok(PeriodResult::unknown(m_max))
}

/// Plenary period `q_i` of `h_i` (zero-based `i`).
pub fn plenary_period(alg: &Algebra, i: usize, m_max: u64) -> Result<PeriodResult> {
    check_index(alg, i)?;
    let b_i = &alg.b()[i];
    if b_i.is_zero() {
        return Ok(PeriodResult::infinite(format!("b_{} = 0", i + 1)));
    }
    if shortest_closed_walk(alg, i).is_none() {
        return Ok(PeriodResult::infinite(format!(
            "no closed walk through h{} in the support digraph of A",
            i + 1
        )));
    }
    let exact = alg.field().is_exact();
    let n = alg.n() as u64;
    let horizon = if exact { m_max.max(n + 1) } else { m_max };
    let mut row = alg.a().vec_mul(&matrix::unit(alg.n(), i)); // row i of A^1
    let mut krylov = alg.b().to_vec(); // A^(m-1) b
    for m in 1..=horizon {
        // (A^(m-1) b)_i enters γ_m
        if krylov[i].is_zero() {
            return Ok(PeriodResult::infinite(format!(
                "(A^{} b)_{} = 0, so (h{}r)^[m] = 0 for all m ≥ {m}",
                m - 1,
                i + 1,
                i + 1
            )));
        }
        row = alg.a().vec_mul(&row); // row i of A^(m+1)
        if !row[i].is_zero() {
            return Ok(if m <= m_max {
                PeriodResult::finite(
                    m,
                    format!("(A^{})_{{{1}{1}}} = {2} ≠ 0 and γ_{m} ≠ 0", m + 1, i + 1, row[i]),
                )
            } else {
                PeriodResult::unknown(m_max)
            });
        }
        if exact && m == n {
            return Ok(PeriodResult::infinite(format!(
                "(A^k)_{{{0}{0}}} = 0 for k = 2..{1}; every A^k with k ≥ 2 lies in span(A², …, A^{1})",
                i + 1,
                n + 1
            )));
        }
        krylov = alg.a().mul_vec(&krylov);
    }
    Ok(PeriodResult::unknown(m_max))
}

pub fn right_periods(alg: &Algebra, m_max: u64) -> Vec<PeriodResult> {
    (0..alg.n()).map(|i| right_period(alg, i, m_max).expect("index in range")).collect()
}

pub fn plenary_periods(alg: &Algebra, m_max: u64) -> Vec<PeriodResult> {
    (0..alg.n()).map(|i| plenary_period(alg, i, m_max).expect("index in range")).collect()
}

/// `γ_m = 2^(2^m − 1) · Π_{j<m} ((A^j b)_i)^(2^(m−j−1))`, kept factored.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaLedger {
    pub i: usize,
    /// `(base, exponent)` pairs, base `(A^j b)_i` at position `j`.
    pub terms: Vec<(Scalar, BigUint)>,
    pub power_of_two: BigUint,
}

impl GammaLedger {
    /// `γ_1 = 2 b_i`.
    pub fn first(i: usize, b_i: Scalar) -> Self {
        GammaLedger { i, terms: vec![(b_i, BigUint::one())], power_of_two: BigUint::one() }
    }

    /// `γ_{m+1} = 2 γ_m² (A^m b)_i`.
    pub fn step(&self, next_base: Scalar) -> Self {
        let mut terms: Vec<(Scalar, BigUint)> =
            self.terms.iter().map(|(b, e)| (b.clone(), e * 2u32)).collect();
        terms.push((next_base, BigUint::one()));
        GammaLedger { i: self.i, terms, power_of_two: &self.power_of_two * 2u32 + 1u32 }
    }

    /// The index `m` of this `γ_m`.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().any(|(b, _)| b.is_zero())
    }

    /// Multiplies out the factored form; refused for `m > EXPANSION_CAP`.
    pub fn expand(&self) -> Result<Scalar> {
        let m = self.m() as u32;
        if m > EXPANSION_CAP {
            return Err(EacpError::ExpansionCap { cap: EXPANSION_CAP, requested: m });
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let two = Scalar::from_i64(2).pow(self.power_of_two.to_u64().expect("bounded by cap"));
        Ok(self.terms.iter().fold(two, |acc, (b, e)| acc * b.pow(e.to_u64().expect("bounded by cap"))))
    }
}

impl fmt::Display for GammaLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}", self.power_of_two)?;
        for (j, (b, e)) in self.terms.iter().enumerate() {
            write!(f, " · ({b})^{e} [j={j}]")?;
        }
        Ok(())
    }
}

/// `(h_i r)^[m] = γ_m [(A^(m+1) h)_i + (A^m b)_i r]`: returns the ledger and
/// the bracketed element.
pub fn plenary_power_closed_form(alg: &Algebra, i: usize, m: u32) -> Result<(GammaLedger, Element)> {
    check_index(alg, i)?;
    if m == 0 {
        return Err(EacpError::InvalidArgument("plenary power needs m ≥ 1".into()));
    }
    let mut krylov = alg.b().to_vec();
    let mut ledger = GammaLedger::first(i, krylov[i].clone());
    for _ in 1..m {
        krylov = alg.a().mul_vec(&krylov);
        ledger = ledger.step(krylov[i].clone());
    }
    krylov = alg.a().mul_vec(&krylov); // A^m b
    let row = alg.a().pow(m as u64 + 1)?.row(i).to_vec();
    Ok((ledger, Element::new(row, krylov[i].clone())))
}

/// Expanded `(h_i r)^[m]` from the closed form.
pub fn plenary_power_expanded(alg: &Algebra, i: usize, m: u32) -> Result<Element> {
    let (ledger, bracket) = plenary_power_closed_form(alg, i, m)?;
    Ok(bracket.scale(&ledger.expand()?))
}

/// Outcome of checking a plenary period against the admissible set.
#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryCheck {
    pub delta: u8,
    pub admissible: Vec<PeriodKind>,
    pub computed: PeriodResult,
}

/// Admissible values of `q_i` for an algebra in canonical form:
/// `δ = 0 → {1, ∞}`, `δ = 1, i = 1 → {1, 2, ∞}`, otherwise `{1, ∞}`.
/// Fails if the computed period falls outside the set.
pub fn corollary_plenary_range(alg: &Algebra, i: usize) -> Result<CorollaryCheck> {
    check_index(alg, i)?;
    let delta = crate::basis::canonical_delta(alg)?;
    let mut admissible = vec![PeriodKind::Finite(1)];
    if delta == 1 && i == 0 {
        admissible.push(PeriodKind::Finite(2));
    }
    admissible.push(PeriodKind::Infinite);
    let computed = plenary_period(alg, i, default_mmax(alg.n()))?;
    if !admissible.contains(&computed.kind) {
        return Err(EacpError::InvariantViolated(format!(
            "q_{} = {} outside the admissible set",
            i + 1,
            computed.kind
        )));
    }
    Ok(CorollaryCheck { delta, admissible, computed })
}

/// Brute-force right period straight from `R_r^m(h_i)`.
pub fn brute_right_period(alg: &Algebra, i: usize, m_max: u64) -> Option<u64> {
    let h = Element::h(alg.n(), i);
    let r = Element::r(alg.n());
    let mut x = h;
    for m in 1..=m_max {
        x = alg.multiply(&x, &r).ok()?;
        if !x.alpha()[i].is_zero() {
            return Some(m);
        }
    }
    None
}

/// Brute-force plenary period from repeated squaring of `h_i r`; `Err(m)`
/// when the sequence reached zero at step `m` (so `q_i = ∞`).
pub fn brute_plenary_period(alg: &Algebra, i: usize, m_max: u64) -> std::result::Result<Option<u64>, u64> {
    let n = alg.n();
    let mut x = alg.multiply(&Element::h(n, i), &Element::r(n)).expect("same algebra");
    for m in 1..=m_max {
        x = alg.square(&x).expect("same algebra");
        if !x.alpha()[i].is_zero() {
            return Ok(Some(m));
        }
        if x.is_zero() {
            return Err(m);
        }
    }
    Ok(None)
}
