//! Dirichlet character groups with exact root-of-unity values.
//!
//! The unit group mod p^m is presented by explicit generators — a single
//! smallest primitive root for odd p (and the element 3 for q = 4), the
//! fixed pair (−1, 5) for 2^m with m ≥ 3 — together with a full discrete-log
//! table. A character mod n is one exponent vector per prime-power part of
//! n, glued through the CRT; its values are exact [`RootOfUnity`] elements
//! of order N = lcm of the local component orders.
//!
//! Conductors come from the unit filtration U_i = 1 + p^i Z_{p^m}: the local
//! conductor exponent t is the smallest i with the local character trivial
//! on U_i, and the global conductor is the product of the local ones.

use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::arith::{self, Factorization};
use crate::cyclotomic::{CyclotomicSum, RootOfUnity};
use crate::error::Error;

/// Characters above this group size are refused by [`CharacterGroup::characters`]
/// unless the cap is raised; it guards against accidentally materializing
/// millions of character structs.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

const NON_UNIT: u64 = u64::MAX;

/// The unit group of Z_{p^m}, presented by generators with a complete
/// discrete-log table. Immutable after construction and freely shareable.
#[derive(Debug)]
pub struct PrimePowerLocal {
    p: u64,
    m: u32,
    q: u64,
    /// `(element, order)` pairs. Odd p and q ∈ {2, 4}: one generator of
    /// order φ(q). p = 2, m ≥ 3: exactly [(q−1, 2), (5, 2^{m−2})], in that
    /// order — the (−1)-digit is the more significant one in character
    /// indexing.
    generators: Vec<(u64, u64)>,
    /// lcm of the generator orders (the largest order of a unit).
    exponent_lcm: u64,
    /// Flattened log table: `stride` entries per residue, `NON_UNIT`
    /// sentinel on non-units.
    log_flat: Vec<u64>,
    stride: usize,
}

impl PrimePowerLocal {
    /// Builds the generator presentation and log table for p^m.
    pub fn new(p: u64, m: u32) -> Self {
        debug_assert!(arith::is_prime(p), "PrimePowerLocal needs a prime, got {p}");
        assert!(m >= 1);
        let q = p.checked_pow(m).expect("prime power overflows u64");
        let generators: Vec<(u64, u64)> = if p == 2 {
            match m {
                1 => vec![(1, 1)],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, 1 << (m - 2))],
            }
        } else {
            let phi = q - q / p;
            vec![(smallest_primitive_root(p, q, phi), phi)]
        };
        let stride = generators.len();
        let mut log_flat = vec![NON_UNIT; q as usize * stride];
        // Walk every exponent combination once; this visits each unit
        // exactly once because the generator orders multiply to φ(q).
        let mut digits = vec![0u64; stride];
        let mut element = 1u64;
        'fill: loop {
            let base = element as usize * stride;
            debug_assert_eq!(log_flat[base], NON_UNIT, "unit {element} visited twice");
            log_flat[base..base + stride].copy_from_slice(&digits);
            // Odometer step: multiply by the least significant generator,
            // carrying into the next when its order wraps.
            for pos in (0..stride).rev() {
                let (g, order) = generators[pos];
                digits[pos] += 1;
                element = mulmod(element, g, q);
                if digits[pos] < order {
                    continue 'fill;
                }
                // Wrapped: g^order = 1, so element is already back; clear
                // and carry.
                digits[pos] = 0;
            }
            break;
        }
        PrimePowerLocal {
            p,
            m,
            q,
            generators,
            exponent_lcm: 1, // fixed up below
            log_flat,
            stride,
        }
        .with_exponent_lcm()
    }

    fn with_exponent_lcm(mut self) -> Self {
        self.exponent_lcm = self.generators.iter().fold(1u64, |l, &(_, o)| l.lcm(&o));
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// q = p^m.
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    /// The exponent vector of a unit `a` over the generators, or `None`
    /// when gcd(a, p) > 1.
    pub fn log(&self, a: u64) -> Option<&[u64]> {
        debug_assert!(a < self.q);
        let base = a as usize * self.stride;
        let entry = &self.log_flat[base..base + self.stride];
        if entry.first().copied() == Some(NON_UNIT) {
            None
        } else {
            Some(entry)
        }
    }

    /// The filtration subgroup U_i, ascending: U_0 is the whole unit group,
    /// U_i = {1 + p^i·j : 0 ≤ j < p^{m−i}} for i ≥ 1 (so U_m = {1}).
    pub fn unit_subgroup(&self, i: u32) -> Result<Vec<u64>, Error> {
        if i > self.m {
            return Err(Error::FiltrationRange { i, m: self.m });
        }
        if i == 0 {
            Ok((1..self.q).filter(|a| a % self.p != 0).collect())
        } else {
            let step = self.p.pow(i);
            Ok((0..self.p.pow(self.m - i)).map(|j| 1 + step * j).collect())
        }
    }
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

/// Smallest g ≥ 2 generating the (cyclic) unit group mod q = p^m, p odd:
/// g is a generator iff g^(φ/r) ≠ 1 for every prime r | φ.
fn smallest_primitive_root(p: u64, q: u64, phi: u64) -> u64 {
    let phi_primes: Vec<u64> = arith::factorize(phi)
        .expect("phi >= 1")
        .parts()
        .iter()
        .map(|&(r, _)| r)
        .collect();
    'next: for g in 2..q {
        if g % p == 0 {
            continue;
        }
        for &r in &phi_primes {
            if arith::mod_pow(g, phi / r, q) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("cyclic unit group mod {q} has a generator")
}

/// Everything about a fixed modulus that characters share: the factored
/// modulus and one [`PrimePowerLocal`] per part.
#[derive(Debug)]
struct ModulusContext {
    factorization: Factorization,
    locals: Vec<PrimePowerLocal>,
    phi: u64,
}

impl ModulusContext {
    fn new(factorization: Factorization) -> Self {
        let locals = factorization
            .parts()
            .iter()
            .map(|&(p, m)| PrimePowerLocal::new(p, m))
            .collect();
        let phi = arith::euler_phi_u64(&factorization);
        ModulusContext {
            factorization,
            locals,
            phi,
        }
    }

    /// Flattened (local index, generator index, radix) triples in indexing
    /// order: primes ascending, each local's generator list in order.
    fn digit_positions(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.locals.iter().enumerate().flat_map(|(li, local)| {
            local
                .generators()
                .iter()
                .enumerate()
                .map(move |(gi, &(_, order))| (li, gi, order))
        })
    }
}

/// The group of Dirichlet characters mod n.
///
/// Characters are indexed 0..φ(n) in mixed-radix order over their local
/// exponent digits: primes ascending, earlier digits more significant, and
/// within a 2^m part (m ≥ 3) the (−1)-exponent ahead of the 5-exponent.
/// Index 0 is always the trivial character.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    ctx: Arc<ModulusContext>,
    enumeration_cap: u64,
}

impl CharacterGroup {
    pub fn new(n: u64) -> Result<Self, Error> {
        Ok(Self::from_factorization(arith::factorize(n)?))
    }

    pub fn from_factorization(f: Factorization) -> Self {
        CharacterGroup {
            ctx: Arc::new(ModulusContext::new(f)),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Replaces the enumeration cap used by [`CharacterGroup::characters`].
    pub fn with_enumeration_cap(mut self, cap: u64) -> Self {
        self.enumeration_cap = cap;
        self
    }

    pub fn modulus(&self) -> u64 {
        self.ctx.factorization.value()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.ctx.factorization
    }

    /// φ(n), the number of characters.
    pub fn len(&self) -> u64 {
        self.ctx.phi
    }

    pub fn is_empty(&self) -> bool {
        false // every group has at least the trivial character
    }

    pub fn locals(&self) -> &[PrimePowerLocal] {
        &self.ctx.locals
    }

    /// The character at a mixed-radix index in [0, φ(n)).
    pub fn character(&self, index: u64) -> Result<DirichletCharacter, Error> {
        if index >= self.ctx.phi {
            return Err(Error::CharacterIndex {
                index,
                n: self.modulus(),
                phi: self.ctx.phi,
            });
        }
        let mut exponents: Vec<Vec<u64>> = self
            .ctx
            .locals
            .iter()
            .map(|l| vec![0u64; l.generators().len()])
            .collect();
        let positions: Vec<(usize, usize, u64)> = self.ctx.digit_positions().collect();
        let mut rest = index;
        for &(li, gi, radix) in positions.iter().rev() {
            exponents[li][gi] = rest % radix;
            rest /= radix;
        }
        debug_assert_eq!(rest, 0);
        Ok(self.assemble(index, exponents))
    }

    pub fn trivial_character(&self) -> DirichletCharacter {
        self.character(0).expect("index 0 always exists")
    }

    /// Builds the character with the given per-part exponent vectors,
    /// computing its index. Shapes and ranges are validated.
    pub fn character_from_exponents(
        &self,
        exponents: &[Vec<u64>],
    ) -> Result<DirichletCharacter, Error> {
        if exponents.len() != self.ctx.locals.len() {
            return Err(Error::ParamRange {
                name: "exponent vector count",
                value: exponents.len() as u64,
                max: self.ctx.locals.len() as u64,
            });
        }
        let mut index = 0u64;
        for (li, gi, radix) in self.ctx.digit_positions() {
            let e = *exponents[li].get(gi).ok_or(Error::ParamRange {
                name: "exponent vector length",
                value: exponents[li].len() as u64,
                max: self.ctx.locals[li].generators().len() as u64,
            })?;
            if e >= radix {
                return Err(Error::ParamRange {
                    name: "exponent digit",
                    value: e,
                    max: radix - 1,
                });
            }
            index = index * radix + e;
        }
        Ok(self.assemble(index, exponents.to_vec()))
    }

    /// All φ(n) characters in index order; refuses groups over the
    /// enumeration cap.
    pub fn characters(&self) -> Result<Vec<DirichletCharacter>, Error> {
        if self.ctx.phi > self.enumeration_cap {
            return Err(Error::GroupCap {
                n: self.modulus(),
                phi: self.ctx.phi,
                cap: self.enumeration_cap,
            });
        }
        (0..self.ctx.phi).map(|i| self.character(i)).collect()
    }

    fn assemble(&self, index: u64, exponents: Vec<Vec<u64>>) -> DirichletCharacter {
        let mut order = 1u64;
        for (local, exps) in self.ctx.locals.iter().zip(&exponents) {
            for (&e, &(_, o)) in exps.iter().zip(local.generators()) {
                order = order.lcm(&(o / e.gcd(&o)));
            }
        }
        DirichletCharacter {
            ctx: Arc::clone(&self.ctx),
            index,
            exponents,
            order,
            conductor: OnceLock::new(),
        }
    }
}

/// The ordered character group as a plain list.
pub fn character_group(f: &Factorization) -> Result<Vec<DirichletCharacter>, Error> {
    CharacterGroup::from_factorization(f.clone()).characters()
}

/// A Dirichlet character mod n: per prime-power part, an exponent vector
/// over that part's generators. Values are N-th roots of unity where N is
/// the character's order; non-units map to [`RootOfUnity::Zero`].
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    ctx: Arc<ModulusContext>,
    index: u64,
    exponents: Vec<Vec<u64>>,
    order: u64,
    conductor: OnceLock<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.ctx.factorization.value()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.ctx.factorization
    }

    /// Mixed-radix index of this character within its group.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// The order N of the character as a group element; every value on a
    /// unit is an N-th root of unity.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Per prime-power part, the exponent vector over that part's generators.
    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }

    /// The flattened mixed-radix digits, most significant first.
    pub fn digits(&self) -> Vec<u64> {
        self.exponents.iter().flatten().copied().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// The local component at prime-power part `i`.
    pub fn local(&self, i: usize) -> LocalCharacter<'_> {
        LocalCharacter {
            local: &self.ctx.locals[i],
            exponents: &self.exponents[i],
        }
    }

    /// All local components, primes ascending.
    pub fn local_components(&self) -> impl Iterator<Item = LocalCharacter<'_>> {
        (0..self.ctx.locals.len()).map(|i| self.local(i))
    }

    /// χ(a): Zero when gcd(a, n) > 1, otherwise the product of the local
    /// component values, expressed with order exactly N.
    pub fn evaluate(&self, a: u64) -> RootOfUnity {
        let n = self.modulus();
        assert!(a < n, "residue {a} out of range mod {n}");
        let mut acc = RootOfUnity::one();
        for (local, exps) in self.ctx.locals.iter().zip(&self.exponents) {
            let component = LocalCharacter {
                local,
                exponents: exps,
            };
            let value = component.evaluate(a % local.modulus());
            if value.is_zero() {
                return RootOfUnity::Zero;
            }
            acc = acc * value;
        }
        acc.rescale(self.order)
            .expect("character values have order dividing N")
    }

    /// The conductor d | n: the product over parts of p^t with t the local
    /// conductor exponent. Computed on first use and cached.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            self.local_components()
                .map(|c| c.local.prime().pow(c.conductor_exponent()))
                .product()
        })
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

/// One local component of a character: an exponent vector over the
/// generators of a single prime-power part.
#[derive(Debug, Clone, Copy)]
pub struct LocalCharacter<'a> {
    local: &'a PrimePowerLocal,
    exponents: &'a [u64],
}

impl<'a> LocalCharacter<'a> {
    pub fn new(local: &'a PrimePowerLocal, exponents: &'a [u64]) -> Self {
        assert_eq!(exponents.len(), local.generators().len());
        for (&e, &(_, o)) in exponents.iter().zip(local.generators()) {
            assert!(e < o, "exponent {e} out of range for generator order {o}");
        }
        LocalCharacter { local, exponents }
    }

    pub fn prime_power(&self) -> &'a PrimePowerLocal {
        self.local
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Order of this component as a character of Z_{p^m}^*.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.local.generators())
            .fold(1u64, |n, (&e, &(_, o))| n.lcm(&(o / e.gcd(&o))))
    }

    /// Component value on a residue mod q, in lowest terms.
    pub fn evaluate(&self, a: u64) -> RootOfUnity {
        let digits = match self.local.log(a) {
            None => return RootOfUnity::Zero,
            Some(d) => d,
        };
        // Phase Σ_j e_j·v_j / o_j, assembled over the common denominator
        // L = lcm of the generator orders.
        let l = self.local.exponent_lcm;
        let mut num: u128 = 0;
        for ((&e, &v), &(_, o)) in self
            .exponents
            .iter()
            .zip(digits)
            .zip(self.local.generators())
        {
            num += (e as u128 * v as u128 % o as u128) * (l / o) as u128;
        }
        RootOfUnity::new((num % l as u128) as u64, l).canonical()
    }

    /// True when the component is 1 everywhere on U_i.
    pub fn is_trivial_on(&self, i: u32) -> Result<bool, Error> {
        Ok(self
            .local
            .unit_subgroup(i)?
            .into_iter()
            .all(|a| self.evaluate(a).is_one()))
    }

    /// The local conductor exponent t: the smallest 0 ≤ t ≤ m with the
    /// component trivial on U_t. Found by upward scan; terminates because
    /// U_m = {1}.
    pub fn conductor_exponent(&self) -> u32 {
        (0..=self.local.exponent())
            .find(|&t| self.is_trivial_on(t).expect("t <= m by construction"))
            .expect("every character is trivial on U_m = {1}")
    }
}

/// Σ_{a ∈ U_i} χ_local(a) as an exact cyclotomic sum. Extracts to #U_i when
/// i ≥ t and to 0 when i < t, t being the local conductor exponent.
pub fn char_sum_on_unit_subgroup(chi: &LocalCharacter<'_>, i: u32) -> Result<CyclotomicSum, Error> {
    let members = chi.local.unit_subgroup(i)?;
    let mut sum = CyclotomicSum::new(chi.order());
    for a in members {
        sum.add_root(&chi.evaluate(a));
    }
    Ok(sum)
}
