//! Numerical semigroups and Weierstrass order sequences.
//!
//! A semigroup is built from positive generators with overall gcd 1; gaps and
//! nongaps are computed by sieving membership up to the conductor. Order
//! sequences are derived from nongap prefixes by the reverse-complement rule.

use num_integer::gcd;

use crate::error::{Error, Result};

/// Hard cap on sieve size, in entries.
const MAX_SIEVE: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    /// Sorted, deduplicated generators.
    pub gens: Vec<u64>,
    gaps: Vec<u64>,
    /// Members up to and including the Frobenius number.
    nongaps_small: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let mut g: Vec<u64> = gens.to_vec();
        g.sort_unstable();
        g.dedup();
        if g.is_empty() || g[0] == 0 {
            return Err(Error::InvalidInput(
                "semigroup generators must be positive".into(),
            ));
        }
        if g.iter().fold(0, |acc, &x| gcd(acc, x)) != 1 {
            return Err(Error::InvalidInput(
                "semigroup generators must have overall gcd 1".into(),
            ));
        }
        let min = g[0];
        if min == 1 {
            return Ok(NumericalSemigroup {
                gens: g,
                gaps: Vec::new(),
                nongaps_small: Vec::new(),
            });
        }
        let max = *g.last().unwrap();
        let mut bound = (min * max).min(MAX_SIEVE);
        loop {
            let mut member = vec![false; bound as usize + 1];
            member[0] = true;
            for n in 1..=bound as usize {
                member[n] = g
                    .iter()
                    .take_while(|&&d| d as usize <= n)
                    .any(|&d| member[n - d as usize]);
            }
            // conductor: first s with min consecutive members starting at s
            let run = min as usize;
            let conductor = (0..member.len().saturating_sub(run - 1))
                .find(|&s| member[s..s + run].iter().all(|&m| m));
            if let Some(c) = conductor {
                let gaps: Vec<u64> = (0..c as u64).filter(|&n| !member[n as usize]).collect();
                let nongaps_small: Vec<u64> = match gaps.last() {
                    Some(&f) => (0..=f).filter(|&n| member[n as usize]).collect(),
                    None => Vec::new(),
                };
                return Ok(NumericalSemigroup {
                    gens: g,
                    gaps,
                    nongaps_small,
                });
            }
            if bound >= MAX_SIEVE {
                return Err(Error::InvalidInput(format!(
                    "semigroup conductor not found within {MAX_SIEVE} entries"
                )));
            }
            bound = (bound * 2).min(MAX_SIEVE);
        }
    }

    /// Gap values in increasing order.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Largest gap; `None` when the semigroup is all of N.
    pub fn frobenius_number(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.frobenius_number() {
            None => true,
            Some(f) if n > f => true,
            Some(_) => self.nongaps_small.binary_search(&n).is_ok(),
        }
    }

    /// i-th nongap, starting from nongap(0) = 0.
    pub fn nongap(&self, i: u64) -> u64 {
        let small = self.nongaps_small.len() as u64;
        if i < small {
            self.nongaps_small[i as usize]
        } else {
            let after = self.frobenius_number().map_or(0, |f| f + 1);
            after + (i - small)
        }
    }

    /// The first n nongaps.
    pub fn first_nongaps(&self, n: u64) -> Vec<u64> {
        (0..n).map(|i| self.nongap(i)).collect()
    }
}

// ---------------------------------------------------------------------------
// order sequences

/// Reverse-complement of a nongap prefix at level q: entry i of the result is
/// q + 1 - m_{last - i}. Applying it twice gives back the input.
pub fn orders_from_nongaps(q: u64, nongaps: &[u64]) -> Result<Vec<u64>> {
    if nongaps.is_empty() {
        return Err(Error::InvalidInput("empty nongap sequence".into()));
    }
    if nongaps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "nongap sequence must be strictly increasing".into(),
        ));
    }
    if *nongaps.last().unwrap() > q + 1 {
        return Err(Error::InvalidInput(format!(
            "nongap exceeds q + 1 = {}",
            q + 1
        )));
    }
    Ok(nongaps.iter().rev().map(|&m| q + 1 - m).collect())
}

/// Whether a nongap prefix (m_0, .., m_N) ends with m_{N-1} = q and m_N > q.
pub fn check_nongap_pattern(q: u64, nongaps: &[u64]) -> bool {
    match nongaps {
        [.., a, b] => *a == q && *b > q,
        _ => false,
    }
}

/// Where the product m * (N - 1) lands relative to q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NongapProductCase {
    /// m (N - 1) = q + 1; genus (q - 1)(m - 1) / 2.
    HitsQPlusOne {
        genus: u64,
    },
    /// m (N - 1) = q; genus q (q - N + 1) / (2 (N - 1)).
    HitsQ {
        genus: u64,
    },
    Neither,
}

pub fn nongap_product_case(q: u64, n: u64, m: u64) -> Result<NongapProductCase> {
    if n < 2 || m == 0 {
        return Err(Error::InvalidInput(
            "need N >= 2 and a positive nongap m".into(),
        ));
    }
    let prod = m * (n - 1);
    Ok(if prod == q + 1 {
        NongapProductCase::HitsQPlusOne {
            genus: (q - 1) * (m - 1) / 2,
        }
    } else if prod == q {
        debug_assert_eq!(q * (q - (n - 1)) % (2 * (n - 1)), 0);
        NongapProductCase::HitsQ {
            genus: q * (q - (n - 1)) / (2 * (n - 1)),
        }
    } else {
        NongapProductCase::Neither
    })
}

// ---------------------------------------------------------------------------
