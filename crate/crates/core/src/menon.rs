//! Menon-type gcd sums twisted by a Dirichlet character.
//!
//! The central quantity is
//!
//! ```text
//! S_χ(n, k) = Σ_{a ∈ Z_n^*} Σ_{b₁,…,b_k ∈ Z_n} gcd(a−1, b₁, …, b_k, n)·χ(a)
//! ```
//!
//! which equals φ(n)·σ_k(n/d) with d the conductor of χ. Four evaluators
//! compute it along genuinely different routes — literal enumeration,
//! divisor grouping, prime-power composition, and the closed form — so each
//! can serve as an oracle for the others. The lemma-level ingredients
//! (gcd-weighted character sums and tuple-gcd counts) are exposed on their
//! own because they carry independent closed forms worth testing directly.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, Factorization};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CyclotomicSum, Extraction};
use crate::error::Error;

/// Default elementary-step budget for [`menon_naive`]: the literal triple
/// sum is an oracle, not a production path.
pub const DEFAULT_WORK_CAP: u128 = 100_000_000;

/// How a Menon sum was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMode {
    /// Literal triple sum over a and every k-tuple b.
    Naive,
    /// Divisor-grouped double sum: Σ_m tuple_gcd_count · gcd_char_sum.
    Grouped,
    /// Per-prime-power lemma composition, multiplied across parts.
    Local,
    /// The closed form φ(n)·σ_k(n/d).
    Closed,
}

impl EvalMode {
    pub const ALL: [EvalMode; 4] = [
        EvalMode::Naive,
        EvalMode::Grouped,
        EvalMode::Local,
        EvalMode::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvalMode::Naive => "naive",
            EvalMode::Grouped => "grouped",
            EvalMode::Local => "local",
            EvalMode::Closed => "closed",
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(EvalMode::Naive),
            "grouped" => Ok(EvalMode::Grouped),
            "local" => Ok(EvalMode::Local),
            "closed" => Ok(EvalMode::Closed),
            other => Err(format!(
                "unknown mode {other:?} (expected naive, grouped, local, or closed)"
            )),
        }
    }
}

/// One evaluation of S_χ(n, k): the inputs, the mode, and the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenonEvaluation {
    pub modulus: u64,
    pub char_index: u64,
    pub k: u32,
    pub mode: EvalMode,
    pub conductor: u64,
    pub value: BigInt,
}

impl MenonEvaluation {
    fn new(chi: &DirichletCharacter, k: u32, mode: EvalMode, value: BigInt) -> Self {
        MenonEvaluation {
            modulus: chi.modulus(),
            char_index: chi.index(),
            k,
            mode,
            conductor: chi.conductor(),
            value,
        }
    }
}

/// Σ_{a ∈ Z_n^*} gcd(a−1, m)·χ(a) as an exact cyclotomic sum, for any
/// divisor m of n. (Since m | n, the gcd may be taken on a−1 reduced mod n.)
pub fn gcd_char_sum(chi: &DirichletCharacter, s_divisor: u64) -> Result<CyclotomicSum, Error> {
    let n = chi.modulus();
    if s_divisor == 0 || !n.is_multiple_of(s_divisor) {
        return Err(Error::NotADivisor {
            divisor: s_divisor,
            n,
        });
    }
    let mut sum = CyclotomicSum::new(chi.order());
    for (a, slot) in unit_slots(chi) {
        let weight = ((a + n - 1) % n).gcd(&s_divisor);
        sum.add_at(slot, &BigInt::from(weight));
    }
    Ok(sum)
}

/// Closed form for the prime-power gcd-weighted character sum
/// Σ_{a ∈ Z_{p^m}^*} gcd(a−1, p^s)·χ(a), where the local character has
/// conductor p^t: the value is (s−t+1)·(p^m − p^{m−1}) when s ≥ t and 0
/// otherwise.
pub fn gcd_char_sum_closed(p: u64, m: u32, t: u32, s: u32) -> Result<BigInt, Error> {
    debug_assert!(
        arith::is_prime(p),
        "gcd_char_sum_closed needs a prime, got {p}"
    );
    if t > m {
        return Err(Error::ParamRange {
            name: "conductor exponent t",
            value: t as u64,
            max: m as u64,
        });
    }
    if s > m {
        return Err(Error::ParamRange {
            name: "gcd exponent s",
            value: s as u64,
            max: m as u64,
        });
    }
    if s < t {
        return Ok(BigInt::zero());
    }
    let p = BigInt::from(p);
    let phi = p.pow(m) - p.pow(m - 1);
    Ok(BigInt::from(s - t + 1) * phi)
}

/// The number of k-tuples (b₁, …, b_k) ∈ Z_n^k with gcd(b₁, …, b_k, n)
/// exactly m, for a divisor m of n.
///
/// For k ≥ 1 this is the Möbius sum Σ_{e | n/m} μ(e)·(n/(m·e))^k. For
/// k = 0 the empty tuple has gcd(∅, n) = n, so the count is 1 when m = n
/// and 0 otherwise.
pub fn tuple_gcd_count(f: &Factorization, k: u32, m_divisor: u64) -> Result<BigUint, Error> {
    let n = f.value();
    if m_divisor == 0 || !n.is_multiple_of(m_divisor) {
        return Err(Error::NotADivisor {
            divisor: m_divisor,
            n,
        });
    }
    if k == 0 {
        return Ok(if m_divisor == n {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let quotient = arith::factorize(n / m_divisor).expect("divisor quotient is positive");
    let primes: Vec<u64> = quotient.parts().iter().map(|&(p, _)| p).collect();
    // Inclusion–exclusion over squarefree e | n/m: subsets of the distinct
    // primes of n/m.
    let mut count = BigInt::zero();
    for mask in 0u32..(1 << primes.len()) {
        let mut e = 1u64;
        for (bit, &p) in primes.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                e *= p;
            }
        }
        let term = BigInt::from(quotient.value() / e).pow(k);
        if mask.count_ones() % 2 == 0 {
            count += term;
        } else {
            count -= term;
        }
    }
    Ok(count.to_biguint().expect("tuple counts are non-negative"))
}

/// S_χ(n, k) by the literal triple sum. Refuses to start when the step
/// count n^k·φ(n) exceeds `work_cap`.
pub fn menon_naive_with_cap(
    chi: &DirichletCharacter,
    k: u32,
    work_cap: u128,
) -> Result<MenonEvaluation, Error> {
    let n = chi.modulus();
    let phi = unit_slots(chi).len() as u128;
    let steps = (n as u128)
        .checked_pow(k)
        .and_then(|t| t.checked_mul(phi))
        .unwrap_or(u128::MAX);
    if steps > work_cap {
        return Err(Error::WorkCap {
            steps,
            cap: work_cap,
        });
    }
    let mut sum = CyclotomicSum::new(chi.order());
    for (a, slot) in unit_slots(chi) {
        // By the k = 0 convention the b-list is empty and the summand's gcd
        // is gcd(a−1, n) itself; for k ≥ 1 the tuple entries fold in.
        let base = ((a + n - 1) % n).gcd(&n);
        if k == 0 {
            sum.add_at(slot, &BigInt::from(base));
            continue;
        }
        let mut tuple = vec![0u64; k as usize];
        loop {
            let g = tuple.iter().fold(base, |g, b| g.gcd(b));
            sum.add_at(slot, &BigInt::from(g));
            if !advance_odometer(&mut tuple, n) {
                break;
            }
        }
    }
    finish(chi, k, EvalMode::Naive, sum)
}

/// [`menon_naive_with_cap`] at the default budget.
pub fn menon_naive(chi: &DirichletCharacter, k: u32) -> Result<MenonEvaluation, Error> {
    menon_naive_with_cap(chi, k, DEFAULT_WORK_CAP)
}

/// S_χ(n, k) grouped by the tuple gcd: Σ over divisors m of n (ascending)
/// of tuple_gcd_count(n, k, m) · gcd_char_sum(χ, m), accumulated in one
/// cyclotomic sum and extracted once.
pub fn menon_grouped(chi: &DirichletCharacter, k: u32) -> Result<MenonEvaluation, Error> {
    let n = chi.modulus();
    let f = chi.factorization();
    let slots = unit_slots(chi);
    let mut sum = CyclotomicSum::new(chi.order());
    for m in arith::divisors(f) {
        let count = tuple_gcd_count(f, k, m).expect("divisors(f) yields divisors");
        if count.is_zero() {
            continue;
        }
        let count = BigInt::from(count);
        for &(a, slot) in &slots {
            let weight = BigInt::from(((a + n - 1) % n).gcd(&m)) * &count;
            sum.add_at(slot, &weight);
        }
    }
    finish(chi, k, EvalMode::Grouped, sum)
}

/// S_χ(n, k) composed from prime-power pieces: per part p^m with local
/// conductor exponent t, Σ_{s=t}^{m} (s−t+1)(p^m − p^{m−1}) ·
/// tuple_gcd_count(p^m, k, p^s); the part values multiply.
pub fn menon_local(chi: &DirichletCharacter, k: u32) -> MenonEvaluation {
    let mut value = BigInt::one();
    for component in chi.local_components() {
        let local = component.prime_power();
        let (p, m) = (local.prime(), local.exponent());
        let t = component.conductor_exponent();
        let qf = Factorization::prime_power(p, m);
        let mut part = BigInt::zero();
        for s in t..=m {
            let weight = gcd_char_sum_closed(p, m, t, s).expect("t <= s <= m");
            let count = tuple_gcd_count(&qf, k, p.pow(s)).expect("p^s divides p^m");
            part += weight * BigInt::from(count);
        }
        value *= part;
    }
    MenonEvaluation::new(chi, k, EvalMode::Local, value)
}

/// S_χ(n, k) by the closed form φ(n)·σ_k(n/d), d = conductor(χ).
pub fn menon_closed(chi: &DirichletCharacter, k: u32) -> MenonEvaluation {
    let f = chi.factorization();
    let d = chi.conductor();
    let quotient = arith::factorize(f.value() / d).expect("conductor divides n");
    let value = BigInt::from(arith::euler_phi(f) * arith::sigma_k(&quotient, k));
    MenonEvaluation::new(chi, k, EvalMode::Closed, value)
}

/// Dispatches on the mode; `work_cap` only constrains naive mode (`None`
/// means the default budget).
pub fn evaluate_with_mode(
    chi: &DirichletCharacter,
    k: u32,
    mode: EvalMode,
    work_cap: Option<u128>,
) -> Result<MenonEvaluation, Error> {
    match mode {
        EvalMode::Naive => menon_naive_with_cap(chi, k, work_cap.unwrap_or(DEFAULT_WORK_CAP)),
        EvalMode::Grouped => menon_grouped(chi, k),
        EvalMode::Local => Ok(menon_local(chi, k)),
        EvalMode::Closed => Ok(menon_closed(chi, k)),
    }
}

/// (unit, slot) pairs: each unit a mod n with the exponent j of
/// χ(a) = ζ_N^j, N the character order. Evaluating once up front keeps the
/// hot summation loops on plain integers.
fn unit_slots(chi: &DirichletCharacter) -> Vec<(u64, u64)> {
    let n = chi.modulus();
    (0..n)
        .filter_map(|a| chi.evaluate(a).as_pair().map(|(num, _)| (a, num)))
        .collect()
}

fn advance_odometer(tuple: &mut [u64], n: u64) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Extracts the accumulated sum; a non-integer here means a bug upstream,
/// since every full Menon sum is an integer by the closed form.
fn finish(
    chi: &DirichletCharacter,
    k: u32,
    mode: EvalMode,
    sum: CyclotomicSum,
) -> Result<MenonEvaluation, Error> {
    match sum.extract_integer() {
        Extraction::Integer(value) => Ok(MenonEvaluation::new(chi, k, mode, value)),
        Extraction::NonInteger => Err(Error::NonIntegerSum { order: sum.order() }),
    }
}
