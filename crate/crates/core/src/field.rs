//! Exact arithmetic in GF(p^k) for prime-power orders up to 2^16.
//!
//! Elements are coefficient vectors over F_p, constant term first, reduced by
//! a canonical monic irreducible modulus. The modulus is the first irreducible
//! in lexicographic order on (c0, .., c_{k-1}) with c0 most significant, so a
//! field of a given order always has the same representation and the same
//! enumeration order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

// ---------------------------------------------------------------------------
// primality helpers

/// Deterministic primality test by trial division; meant for small inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `n` as p^k with p prime; `None` if `n` is not a prime power.
pub fn factor_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over F_p (modulus search only)

fn poly_trim(a: &mut Vec<u16>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

/// Remainder of `a` modulo monic `b`, both constant term first.
fn poly_rem(a: &[u16], b: &[u16], p: u64) -> Vec<u16> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for j in 0..db {
                let sub = lead * b[j] as u64 % p;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    let mut out: Vec<u16> = r.iter().map(|&c| c as u16).collect();
    poly_trim(&mut out);
    out
}

/// Trial division by every monic polynomial of degree 1..=k/2.
fn is_irreducible(m: &[u16], p: u64) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut b = vec![0u16; d + 1];
            let mut v = idx;
            for c in b.iter_mut().take(d) {
                *c = (v % p) as u16;
                v /= p;
            }
            b[d] = 1;
            if poly_rem(m, &b, p) == [0] {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree k, scanning (c0, .., c_{k-1}) with c0
/// most significant. For k = 1 this is x itself.
fn canonical_modulus(p: u64, k: u32) -> Vec<u16> {
    let k = k as usize;
    let total = p.pow(k as u32);
    for idx in 0..total {
        let mut m = vec![0u16; k + 1];
        let mut v = idx;
        for i in (0..k).rev() {
            m[i] = (v % p) as u16;
            v /= p;
        }
        m[k] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

// ---------------------------------------------------------------------------
// field elements and contexts

/// Element of GF(p^k): k coefficients over F_p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coeffs: Vec<u16>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Arithmetic context for one finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub p: u64,
    pub k: u32,
    /// p^k
    pub order: u64,
    /// Monic modulus of degree k, constant term first (length k + 1).
    pub modulus: Vec<u16>,
}

/// Field with the given prime-power order and canonical modulus.
pub fn gf(order: u64) -> Result<FieldCtx> {
    let (p, k) = factor_prime_power(order).ok_or(Error::NotPrimePower(order))?;
    FieldCtx::new(p, k)
}

impl FieldCtx {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = (p as u128)
            .checked_pow(k)
            .ok_or(Error::Overflow("field order"))?;
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge {
                order,
                max: MAX_FIELD_ORDER,
            });
        }
        Ok(FieldCtx {
            p,
            k,
            order: order as u64,
            modulus: canonical_modulus(p, k),
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Constant element n mod p.
    pub fn from_int(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0u16; self.k as usize];
        coeffs[0] = (n % self.p) as u16;
        FieldElement { coeffs }
    }

    /// Element with index `idx` in the canonical enumeration: the index reads
    /// the coefficients (c0, .., c_{k-1}) as base-p digits, c0 most
    /// significant.
    pub fn element_at(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.order {
            return Err(Error::InvalidInput(format!(
                "element index {idx} out of range for field of order {}",
                self.order
            )));
        }
        let mut coeffs = vec![0u16; self.k as usize];
        let mut v = idx;
        for i in (0..self.k as usize).rev() {
            coeffs[i] = (v % self.p) as u16;
            v /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// Inverse of `element_at`.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for &c in &a.coeffs {
            idx = idx * self.p + c as u64;
        }
        idx
    }

    /// All field elements in canonical order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element_at(i).expect("index in range"))
    }

    // -- arithmetic ---------------------------------------------------------

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| ((x as u64 + y as u64) % self.p) as u16)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| ((self.p - x as u64) % self.p) as u16)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.k as usize;
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            let ai = a.coeffs[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += ai * b.coeffs[j] as u64;
            }
        }
        for v in prod.iter_mut() {
            *v %= p;
        }
        // fold x^i for i >= k down through x^k = -(m_{k-1} x^{k-1} + .. + m_0)
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        FieldElement {
            coeffs: prod[..k].iter().map(|&v| v as u16).collect(),
        }
    }

    /// a^e by square-and-multiply; pow(0, 0) = 1.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// j-fold Frobenius a^(p^j); j is reduced mod k.
    pub fn frobenius(&self, a: &FieldElement, j: u32) -> FieldElement {
        let j = j % self.k;
        self.pow(a, self.p.pow(j))
    }
}

// ---------------------------------------------------------------------------
// subfield embeddings

/// Canonical embedding GF(p^m) -> GF(p^n) for m | n: the subfield modulus is
/// sent to its first root in the enumeration order of the big field.
#[derive(Debug)]
pub struct Embedding {
    pub sub: FieldCtx,
    pub sup: FieldCtx,
    root_powers: Vec<FieldElement>,
    pullback: HashMap<u64, u64>,
}

type EmbeddingCache = RwLock<HashMap<(u64, u32, u32), Arc<Embedding>>>;

static EMBEDDINGS: OnceLock<EmbeddingCache> = OnceLock::new();

impl Embedding {
    pub fn new(sub: &FieldCtx, sup: &FieldCtx) -> Result<Arc<Embedding>> {
        if sub.p != sup.p || sup.k % sub.k != 0 {
            return Err(Error::NoEmbedding(sub.order, sup.order));
        }
        let key = (sub.p, sub.k, sup.k);
        let cache = EMBEDDINGS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(found) = cache.read().expect("embedding cache poisoned").get(&key) {
            return Ok(Arc::clone(found));
        }
        let emb = Arc::new(Embedding::build(sub.clone(), sup.clone()));
        cache
            .write()
            .expect("embedding cache poisoned")
            .insert(key, Arc::clone(&emb));
        Ok(emb)
    }

    fn build(sub: FieldCtx, sup: FieldCtx) -> Embedding {
        let root = sup
            .enumerate()
            .find(|cand| {
                // Horner evaluation of the subfield modulus at cand.
                let mut acc = sup.zero();
                for &c in sub.modulus.iter().rev() {
                    acc = sup.mul(&acc, cand);
                    acc = sup.add(&acc, &sup.from_int(c as u64));
                }
                acc.is_zero()
            })
            .expect("subfield modulus splits in the big field");
        let mut root_powers = Vec::with_capacity(sub.k as usize);
        let mut acc = sup.one();
        for _ in 0..sub.k {
            root_powers.push(acc.clone());
            acc = sup.mul(&acc, &root);
        }
        let mut emb = Embedding {
            sub,
            sup,
            root_powers,
            pullback: HashMap::new(),
        };
        let mut pullback = HashMap::new();
        for idx in 0..emb.sub.order {
            let a = emb.sub.element_at(idx).expect("index in range");
            pullback.insert(emb.sup.index_of(&emb.map(&a)), idx);
        }
        emb.pullback = pullback;
        emb
    }

    /// Image of a subfield element in the big field.
    pub fn map(&self, a: &FieldElement) -> FieldElement {
        let mut acc = self.sup.zero();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = self
                .sup
                .mul(&self.root_powers[i], &self.sup.from_int(c as u64));
            acc = self.sup.add(&acc, &term);
        }
        acc
    }

    /// Preimage of a big-field element, if it lies in the subfield.
    pub fn pull(&self, b: &FieldElement) -> Option<FieldElement> {
        self.pullback
            .get(&self.sup.index_of(b))
            .map(|&idx| self.sub.element_at(idx).expect("index in range"))
    }
}

/// Trace of `a` from `big` onto `small`, returned as a small-field element.
pub fn relative_trace(big: &FieldCtx, small: &FieldCtx, a: &FieldElement) -> Result<FieldElement> {
    let emb = Embedding::new(small, big)?;
    if a.coeffs.len() != big.k as usize {
        return Err(Error::InvalidInput(
            "element does not belong to the given field".into(),
        ));
    }
    let d = big.k / small.k;
    let mut conj = a.clone();
    let mut acc = a.clone();
    for _ in 1..d {
        conj = big.pow(&conj, small.order);
        acc = big.add(&acc, &conj);
    }
    Ok(emb
        .pull(&acc)
        .expect("relative trace must land in the subfield"))
}

/// Norm of `a` from `big` onto `small`, returned as a small-field element.
pub fn relative_norm(big: &FieldCtx, small: &FieldCtx, a: &FieldElement) -> Result<FieldElement> {
    let emb = Embedding::new(small, big)?;
    if a.coeffs.len() != big.k as usize {
        return Err(Error::InvalidInput(
            "element does not belong to the given field".into(),
        ));
    }
    let d = big.k / small.k;
    let mut conj = a.clone();
    let mut acc = a.clone();
    for _ in 1..d {
        conj = big.pow(&conj, small.order);
        acc = big.mul(&acc, &conj);
    }
    Ok(emb
        .pull(&acc)
        .expect("relative norm must land in the subfield"))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_are_the_expected_ones() {
        assert_eq!(gf(9).unwrap().modulus, vec![1, 0, 1]); // t^2 + 1
        assert_eq!(gf(4).unwrap().modulus, vec![1, 1, 1]); // t^2 + t + 1
        assert_eq!(gf(16).unwrap().modulus, vec![1, 0, 0, 1, 1]); // t^4 + t^3 + 1
        assert_eq!(gf(7).unwrap().modulus, vec![0, 1]); // t
    }

    #[test]
    fn gf9_frozen_arithmetic() {
        let f = gf(9).unwrap();
        let t = f.element_at(1).unwrap();
        assert_eq!(t.coeffs, vec![0, 1]);
        // t^2 = -1 = 2
        assert_eq!(f.mul(&t, &t), f.from_int(2));
        // 2 * 2 = 4 = 1
        assert_eq!(f.inv(&f.from_int(2)).unwrap(), f.from_int(2));
        // t^3 = 2t
        let expect = f.mul(&f.from_int(2), &t);
        assert_eq!(f.frobenius(&t, 1), expect);
    }

    #[test]
    fn gf9_trace_and_norm_to_prime_field() {
        let big = gf(9).unwrap();
        let small = gf(3).unwrap();
        let t = big.element_at(1).unwrap();
        assert_eq!(relative_trace(&big, &small, &t).unwrap(), small.zero());
        // t * t^3 = t^4 = (t^2)^2 = 1
        assert_eq!(relative_norm(&big, &small, &t).unwrap(), small.one());
    }

    #[test]
    fn gf4_enumeration_order() {
        let f = gf(4).unwrap();
        let all: Vec<Vec<u16>> = f.enumerate().map(|a| a.coeffs).collect();
        // 0, t, 1, 1 + t
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn element_index_roundtrip() {
        for order in [2, 8, 25, 27, 64, 81] {
            let f = gf(order).unwrap();
            for idx in 0..f.order {
                let a = f.element_at(idx).unwrap();
                assert_eq!(f.index_of(&a), idx);
            }
        }
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        let f = gf(101).unwrap();
        for a in 0..101u64 {
            for b in 0..101u64 {
                let x = f.from_int(a);
                let y = f.from_int(b);
                assert_eq!(f.add(&x, &y), f.from_int(a + b));
                assert_eq!(f.mul(&x, &y), f.from_int(a * b));
            }
        }
    }

    #[test]
    fn inverses_and_zero_division() {
        for order in [2, 3, 4, 9, 16, 27, 49] {
            let f = gf(order).unwrap();
            for a in f.enumerate().skip(1) {
                let b = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &b), f.one());
            }
            assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field() {
        let f = gf(27).unwrap();
        for a in f.enumerate() {
            for b in f.enumerate() {
                let lhs = f.frobenius(&f.add(&a, &b), 1);
                let rhs = f.add(&f.frobenius(&a, 1), &f.frobenius(&b, 1));
                assert_eq!(lhs, rhs);
            }
        }
        for n in 0..3 {
            let c = f.from_int(n);
            assert_eq!(f.frobenius(&c, 1), c);
        }
        // order-k Frobenius is the identity
        let t = f.element_at(1).unwrap();
        assert_eq!(f.frobenius(&t, 3), t);
    }

    #[test]
    fn pow_edge_cases() {
        let f = gf(25).unwrap();
        assert_eq!(f.pow(&f.zero(), 0), f.one());
        assert_eq!(f.pow(&f.zero(), 5), f.zero());
        let t = f.element_at(1).unwrap();
        // Fermat: a^(q-1) = 1 for a != 0
        assert_eq!(f.pow(&t, 24), f.one());
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let sub = gf(4).unwrap();
        let sup = gf(16).unwrap();
        let emb = Embedding::new(&sub, &sup).unwrap();
        for a in sub.enumerate() {
            for b in sub.enumerate() {
                let sum = emb.map(&sub.add(&a, &b));
                assert_eq!(sum, sup.add(&emb.map(&a), &emb.map(&b)));
                let prod = emb.map(&sub.mul(&a, &b));
                assert_eq!(prod, sup.mul(&emb.map(&a), &emb.map(&b)));
            }
        }
        // pullback inverts the map, and rejects non-subfield elements
        for a in sub.enumerate() {
            assert_eq!(emb.pull(&emb.map(&a)), Some(a));
        }
        let outside = sup.enumerate().filter(|b| emb.pull(b).is_none()).count();
        assert_eq!(outside, 12);
    }

    #[test]
    fn incompatible_embeddings_fail() {
        let a = gf(4).unwrap();
        let b = gf(9).unwrap();
        assert!(Embedding::new(&a, &b).is_err());
        let c = gf(8).unwrap();
        assert!(Embedding::new(&a, &c).is_err()); // 2 does not divide 3
    }

    #[test]
    fn order_and_primality_validation() {
        assert!(matches!(gf(1), Err(Error::NotPrimePower(1))));
        assert!(matches!(gf(12), Err(Error::NotPrimePower(12))));
        assert!(matches!(FieldCtx::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(
            FieldCtx::new(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldCtx::new(2, 16).is_ok());
    }
}
