//! Exact arithmetic with roots of unity.
//!
//! A [`RootOfUnity`] is either ζ_N^j (stored as the pair (j, N)) or the
//! distinguished absorbing `Zero` — the value a Dirichlet character takes
//! on non-units. A [`CyclotomicSum`] is an integer combination
//! Σ_j counts[j]·ζ_N^j; it extracts to a rational integer exactly when the
//! counts polynomial is a constant mod Φ_N(x), and signals non-integer
//! otherwise instead of rounding.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;

/// An exact root of unity ζ_N^j, or the absorbing Zero.
///
/// The representation is not forced to be in lowest terms: ζ_4^2 and ζ_2^1
/// denote the same value, and equality/hashing compare the reduced form.
#[derive(Debug, Clone, Copy)]
pub enum RootOfUnity {
    Zero,
    Root { num: u64, order: u64 },
}

impl RootOfUnity {
    /// ζ_N^j with the exponent reduced mod N.
    pub fn new(num: u64, order: u64) -> Self {
        assert!(order >= 1, "root of unity needs a positive order");
        RootOfUnity::Root {
            num: num % order,
            order,
        }
    }

    /// The multiplicative identity, ζ_1^0.
    pub fn one() -> Self {
        RootOfUnity::Root { num: 0, order: 1 }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RootOfUnity::Zero)
    }

    pub fn is_one(&self) -> bool {
        match *self {
            RootOfUnity::Zero => false,
            RootOfUnity::Root { num, .. } => num == 0,
        }
    }

    /// `(numerator, order)` as represented; `None` for Zero.
    pub fn as_pair(&self) -> Option<(u64, u64)> {
        match *self {
            RootOfUnity::Zero => None,
            RootOfUnity::Root { num, order } => Some((num, order)),
        }
    }

    /// Lowest-terms representation: the unique (j, N) with gcd(j, N) = 1
    /// denoting the same value (1 becomes (0, 1)).
    pub fn canonical(&self) -> Self {
        match *self {
            RootOfUnity::Zero => RootOfUnity::Zero,
            RootOfUnity::Root { num, order } => {
                let g = num.gcd(&order); // gcd(0, N) = N, so 1 canonicalizes to (0, 1)
                RootOfUnity::Root {
                    num: num / g,
                    order: order / g,
                }
            }
        }
    }

    /// Re-expresses the value as ζ_new^j. The reduced order must divide
    /// `new_order`; returns `None` otherwise. Zero rescales to Zero.
    pub fn rescale(&self, new_order: u64) -> Option<Self> {
        assert!(new_order >= 1);
        match self.canonical() {
            RootOfUnity::Zero => Some(RootOfUnity::Zero),
            RootOfUnity::Root { num, order } => {
                if !new_order.is_multiple_of(order) {
                    return None;
                }
                Some(RootOfUnity::Root {
                    num: num * (new_order / order),
                    order: new_order,
                })
            }
        }
    }

    /// Exact product: exponents add after both operands are rescaled to the
    /// lcm of their orders; Zero absorbs.
    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        match (*self, *other) {
            (RootOfUnity::Zero, _) | (_, RootOfUnity::Zero) => RootOfUnity::Zero,
            (
                RootOfUnity::Root { num: n1, order: o1 },
                RootOfUnity::Root { num: n2, order: o2 },
            ) => {
                let l = o1.lcm(&o2);
                let l128 = l as u128;
                let a = n1 as u128 * (l / o1) as u128 % l128;
                let b = n2 as u128 * (l / o2) as u128 % l128;
                RootOfUnity::Root {
                    num: ((a + b) % l128) as u64,
                    order: l,
                }
            }
        }
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        RootOfUnity::mul(&self, &rhs)
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (RootOfUnity::Zero, RootOfUnity::Zero) => true,
            (
                RootOfUnity::Root { num: n1, order: o1 },
                RootOfUnity::Root { num: n2, order: o2 },
            ) => n1 == n2 && o1 == o2,
            _ => false,
        }
    }
}

impl Eq for RootOfUnity {}

impl std::hash::Hash for RootOfUnity {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.canonical() {
            RootOfUnity::Zero => state.write_u8(0),
            RootOfUnity::Root { num, order } => {
                state.write_u8(1);
                state.write_u64(num);
                state.write_u64(order);
            }
        }
    }
}

/// Result of trying to read a [`CyclotomicSum`] as a rational integer.
///
/// `NonInteger` is an ordinary outcome, not an error: it reports that the
/// reduced polynomial kept a nonconstant term, so the value is irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extraction {
    Integer(BigInt),
    NonInteger,
}

impl Extraction {
    /// The integer if extraction succeeded.
    pub fn integer(self) -> Option<BigInt> {
        match self {
            Extraction::Integer(v) => Some(v),
            Extraction::NonInteger => None,
        }
    }
}

/// An exact integer combination of N-th roots of unity:
/// Σ_{j<N} counts[j]·ζ_N^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSum {
    order: u64,
    counts: Vec<BigInt>,
}

impl CyclotomicSum {
    /// The zero sum of the given order.
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic sum needs a positive order");
        CyclotomicSum {
            order,
            counts: vec![BigInt::zero(); order as usize],
        }
    }

    /// Builds a sum from an explicit counts vector of length `order`.
    pub fn from_counts(order: u64, counts: Vec<BigInt>) -> Self {
        assert!(order >= 1);
        assert_eq!(counts.len() as u64, order, "counts length must equal order");
        CyclotomicSum { order, counts }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Multiplicity of ζ_N^j for each j.
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// Adds `weight`·ζ_order^exponent without changing the order.
    pub fn add_at(&mut self, exponent: u64, weight: &BigInt) {
        let j = (exponent % self.order) as usize;
        self.counts[j] += weight;
    }

    /// Adds `weight`·root, growing the order to lcm(self, root) if the
    /// root does not live in this sum's order. Zero contributes nothing.
    pub fn add_root_scaled(&mut self, root: &RootOfUnity, weight: &BigInt) {
        let (num, ord) = match root.canonical() {
            RootOfUnity::Zero => return,
            RootOfUnity::Root { num, order } => (num, order),
        };
        if !self.order.is_multiple_of(ord) {
            self.rescale_to(self.order.lcm(&ord));
        }
        self.add_at(num * (self.order / ord), weight);
    }

    /// Adds a single copy of `root`.
    pub fn add_root(&mut self, root: &RootOfUnity) {
        self.add_root_scaled(root, &BigInt::one());
    }

    /// Adds another sum term by term, growing the order as needed.
    pub fn add_sum(&mut self, other: &CyclotomicSum) {
        if !self.order.is_multiple_of(other.order) {
            self.rescale_to(self.order.lcm(&other.order));
        }
        let stride = self.order / other.order;
        for (j, c) in other.counts.iter().enumerate() {
            if !c.is_zero() {
                self.counts[j * stride as usize] += c;
            }
        }
    }

    /// Multiplies every count by an integer factor.
    pub fn scale(&mut self, factor: &BigInt) {
        for c in &mut self.counts {
            if !c.is_zero() {
                *c *= factor;
            }
        }
    }

    /// Re-represents the same value with order `new_order` (a multiple of
    /// the current order): slot j moves to j·(new/old).
    fn rescale_to(&mut self, new_order: u64) {
        assert_eq!(new_order % self.order, 0);
        let stride = (new_order / self.order) as usize;
        let mut counts = vec![BigInt::zero(); new_order as usize];
        for (j, c) in self.counts.drain(..).enumerate() {
            counts[j * stride] = c;
        }
        self.order = new_order;
        self.counts = counts;
    }

    /// Reduces the counts polynomial mod Φ_N. A constant remainder c means
    /// the sum is the rational integer c; anything else is irrational.
    pub fn extract_integer(&self) -> Extraction {
        if self.counts[1..].iter().all(|c| c.is_zero()) {
            return Extraction::Integer(self.counts[0].clone());
        }
        let phi = cyclotomic_polynomial_cached(self.order);
        let deg = phi.len() - 1;
        let mut rem = self.counts.clone();
        for j in (deg..rem.len()).rev() {
            if rem[j].is_zero() {
                continue;
            }
            // Subtract rem[j]·x^{j−deg}·Φ_N; Φ_N is monic so this clears x^j.
            let c = std::mem::take(&mut rem[j]);
            for (i, pc) in phi[..deg].iter().enumerate() {
                if !pc.is_zero() {
                    let delta = &c * pc;
                    rem[j - deg + i] -= delta;
                }
            }
        }
        if rem[1..deg].iter().all(|c| c.is_zero()) {
            Extraction::Integer(rem[0].clone())
        } else {
            Extraction::NonInteger
        }
    }
}

/// The N-th cyclotomic polynomial Φ_N as ascending coefficients
/// (so Φ_1 = x − 1 is `[-1, 1]`), degree φ(N).
///
/// Computed by the textbook recursion: divide x^N − 1 exactly by Φ_d for
/// every proper divisor d of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    cyclotomic_polynomial_cached(n).as_ref().clone()
}

fn cyclotomic_polynomial_cached(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let computed = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().entry(n).or_insert(computed).clone()
}

fn compute_cyclotomic(n: u64) -> Vec<BigInt> {
    // x^n − 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    let f = arith::factorize(n).expect("n >= 1");
    for d in arith::divisors(&f) {
        if d < n {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial_cached(d));
        }
    }
    poly
}

/// Exact division of integer polynomials with monic divisor; panics if the
/// remainder is nonzero (the cyclotomic recursion guarantees exactness).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(num.len() > dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for j in (dd..rem.len()).rev() {
        if rem[j].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut rem[j]);
        for (i, pc) in den[..dd].iter().enumerate() {
            if !pc.is_zero() {
                let delta = &c * pc;
                rem[j - dd + i] -= delta;
            }
        }
        quot[j - dd] = c;
    }
    assert!(
        rem[..dd].iter().all(|c| c.is_zero()),
        "polynomial division was not exact"
    );
    quot
}
