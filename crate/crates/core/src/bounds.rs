//! Genus bounds for curves over F_{q^2}: degree-based bounds for projective
//! embeddings, the three leading genus values, the trichotomy on the genus
//! spectrum, divisor-degree identities for order sequences, and the known
//! genus values in the third range.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::factor_prime_power;

fn check_degree_inputs(d: u64, r: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidInput(
            "need projective dimension r >= 2".into(),
        ));
    }
    if d < r {
        return Err(Error::InvalidInput(format!(
            "need degree d >= r; got d={d}, r={r}"
        )));
    }
    Ok(())
}

/// Castelnuovo genus bound for a nondegenerate degree-d curve in P^r.
/// Returns (c0, eps) with eps = (d - 1) mod (r - 1).
pub fn castelnuovo_c0(d: u64, r: u64) -> Result<(u64, u64)> {
    check_degree_inputs(d, r)?;
    let eps = (d - 1) % (r - 1);
    let num = (d - 1 - eps) * (d - r + eps);
    debug_assert_eq!(num % (2 * (r - 1)), 0);
    Ok((num / (2 * (r - 1)), eps))
}

/// Halphen genus bound for curves lying on no surface of small degree.
/// Returns (c1, eps1) with eps1 = (d - 1) mod r.
pub fn halphen_c1(d: u64, r: u64) -> Result<(u64, u64)> {
    check_degree_inputs(d, r)?;
    let eps1 = (d - 1) % r;
    let num = (d - 1 - eps1) * (d - r + eps1 + 1);
    debug_assert_eq!(num % (2 * r), 0);
    let bump = u64::from(eps1 == r - 1);
    Ok((num / (2 * r) + bump, eps1))
}

/// Smooth envelope over eps of the Castelnuovo bound:
/// (d - 1 - (r-1)/2)^2 / (2(r-1)), with a -1/4 correction for even r.
pub fn c0_upper_envelope(d: u64, r: u64) -> Result<Rational64> {
    check_degree_inputs(d, r)?;
    let t = Rational64::new(2 * (d - 1) as i64 - (r - 1) as i64, 2);
    let correction = if r % 2 == 0 {
        Rational64::new(1, 4)
    } else {
        Rational64::new(0, 1)
    };
    Ok((t * t - correction) / Rational64::from_integer(2 * (r - 1) as i64))
}

// ---------------------------------------------------------------------------
// the three leading genus values

/// Largest genus of any maximal curve: q(q - 1)/2.
pub fn ihara_bound(q: u64) -> u64 {
    q * (q - 1) / 2
}

/// Second largest genus: floor((q - 1)^2 / 4).
pub fn second_genus_bound(q: u64) -> u64 {
    (q - 1) * (q - 1) / 4
}

/// Third largest genus: floor((q^2 - q + 4) / 6).
pub fn third_genus_bound(q: u64) -> u64 {
    (q * q - q + 4) / 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyTag {
    EqualsHermitian,
    EqualsSecond,
    BelowThird,
    Excluded,
}

impl TrichotomyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrichotomyTag::EqualsHermitian => "equals_hermitian",
            TrichotomyTag::EqualsSecond => "equals_second",
            TrichotomyTag::BelowThird => "below_third",
            TrichotomyTag::Excluded => "excluded",
        }
    }
}

impl std::fmt::Display for TrichotomyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrichotomyVerdict {
    pub q: u64,
    pub g: u64,
    pub tag: TrichotomyTag,
    pub hermitian: u64,
    pub second: u64,
    pub third: u64,
}

/// Places a genus against the spectrum trichotomy: the Hermitian value, the
/// second value, or at most the third value; anything else is excluded.
pub fn trichotomy_classify(q: u64, g: u64) -> Result<TrichotomyVerdict> {
    factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let hermitian = ihara_bound(q);
    let second = second_genus_bound(q);
    let third = third_genus_bound(q);
    let tag = if g == hermitian {
        TrichotomyTag::EqualsHermitian
    } else if g == second {
        TrichotomyTag::EqualsSecond
    } else if g <= third {
        TrichotomyTag::BelowThird
    } else {
        TrichotomyTag::Excluded
    };
    Ok(TrichotomyVerdict {
        q,
        g,
        tag,
        hermitian,
        second,
        third,
    })
}

/// Full genus spectrum for q <= 5, where it is settled.
pub fn small_q_spectrum(q: u64) -> Result<Vec<u64>> {
    if !(2..=5).contains(&q) {
        return Err(Error::InvalidInput(format!(
            "the full genus spectrum is only settled for q <= 5; got q={q}"
        )));
    }
    factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok((0..=ihara_bound(q))
        .filter(|&g| {
            trichotomy_classify(q, g)
                .map(|v| v.tag != TrichotomyTag::Excluded)
                .unwrap_or(false)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// conjectural interval between the two degree bounds at d = q + 1

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureInterval {
    pub q: u64,
    pub r: u64,
    /// Halphen value at degree q + 1: genera above this force a small surface.
    pub c1: u64,
    /// Castelnuovo value at degree q + 1.
    pub c0: u64,
}

impl ConjectureInterval {
    /// Genera strictly between c1 and c0, conjectured vacant.
    pub fn excluded_genera(&self) -> Vec<u64> {
        (self.c1 + 1..self.c0).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.c1 + 1 >= self.c0
    }
}

/// The open interval (c1, c0) at degree q + 1 in P^r. Its vacancy in the
/// genus spectrum is conjectural; callers report it, never assert it.
pub fn conjecture_gap(q: u64, r: u64) -> Result<ConjectureInterval> {
    let (c0, _) = castelnuovo_c0(q + 1, r)?;
    let (c1, _) = halphen_c1(q + 1, r)?;
    Ok(ConjectureInterval { q, r, c1, c0 })
}

// ---------------------------------------------------------------------------
// divisor degrees for order sequences

/// Degree of the ramification divisor: (sum eps_i)(2g - 2) + (r + 1) d,
/// where eps has r + 1 entries.
pub fn deg_ramification(eps: &[u64], g: u64, d: u64) -> Result<u64> {
    if eps.is_empty() {
        return Err(Error::InvalidInput("empty order sequence".into()));
    }
    let r = eps.len() as i128 - 1;
    let e: i128 = eps.iter().map(|&x| x as i128).sum();
    let val = e * (2 * g as i128 - 2) + (r + 1) * d as i128;
    u64::try_from(val).map_err(|_| Error::InvalidInput("negative divisor degree".into()))
}

/// Degree of the Frobenius divisor: (sum nu_i)(2g - 2) + (l + r) d,
/// where nu has r entries and l is the Frobenius power.
pub fn deg_frobenius(nu: &[u64], g: u64, d: u64, l: u64) -> Result<u64> {
    if nu.is_empty() {
        return Err(Error::InvalidInput("empty order sequence".into()));
    }
    let r = nu.len() as i128;
    let e: i128 = nu.iter().map(|&x| x as i128).sum();
    let val = e * (2 * g as i128 - 2) + (l as i128 + r) * d as i128;
    u64::try_from(val).map_err(|_| Error::InvalidInput("negative divisor degree".into()))
}

/// Lower bound on g forced by a maximal curve having order sequence eps for
/// the degree-(q + 1) system: the ramification degree must absorb the point
/// count, giving g >= (q^2 + 1 + 2E - (r + 1)(q + 1)) / (2(E - q)) where
/// E is the sum of the orders. Needs E > q.
pub fn ramification_genus_lower_bound(eps: &[u64], q: u64) -> Result<Rational64> {
    if eps.len() < 2 {
        return Err(Error::InvalidInput("need at least two orders".into()));
    }
    if eps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "orders must be strictly increasing".into(),
        ));
    }
    let e: u64 = eps.iter().sum();
    if e <= q {
        return Err(Error::InvalidInput(format!(
            "order sum {e} must exceed q = {q}"
        )));
    }
    let r = eps.len() as i64 - 1;
    let num = (q * q + 1 + 2 * e) as i64 - (r + 1) * (q + 1) as i64;
    let den = 2 * (e - q) as i64;
    Ok(Rational64::new(num, den))
}

/// Genus a maximal curve would need for the uniform pattern of orders
/// (0, 1, .., N - 2, q) on the degree-(q + 1) system:
/// 1 + (q + 1)(q - N) / ((N - 1) N). Non-integral output refutes the pattern.
pub fn genus_from_uniform_orders(n: u64, q: u64) -> Result<Rational64> {
    if !(2..=q).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "need 2 <= N <= q; got N={n}, q={q}"
        )));
    }
    let num = (q + 1) as i64 * (q - n) as i64;
    let den = (n - 1) as i64 * n as i64;
    Ok(Rational64::from_integer(1) + Rational64::new(num, den))
}

/// Genus bound from carrying a degree-(q + 1) system of dimension r: the
/// Castelnuovo envelope at d = q + 1.
pub fn dimension_genus_bound(q: u64, r: u64) -> Result<Rational64> {
    c0_upper_envelope(q + 1, r)
}

// ---------------------------------------------------------------------------
// known genus values in the third range

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownGenusValue {
    /// Closed form in q, as a display string.
    pub formula: &'static str,
    pub genus: u64,
}

/// Genus values attained by documented maximal curves with genus at most the
/// third value, with their closed forms. Entries depend on congruences of q.
pub fn known_third_range_values(q: u64) -> Vec<KnownGenusValue> {
    let mut out = vec![KnownGenusValue {
        formula: "floor((q^2-q+4)/6)",
        genus: (q * q - q + 4) / 6,
    }];
    if q % 3 == 2 {
        out.push(KnownGenusValue {
            formula: "(q^2-q-2)/6",
            genus: (q * q - q - 2) / 6,
        });
    }
    if q % 3 != 1 {
        out.push(KnownGenusValue {
            formula: "floor((q-1)(q-2)/6)",
            genus: (q - 1) * (q - 2) / 6,
        });
    }
    if q % 4 != 2 {
        out.push(KnownGenusValue {
            formula: "floor((q^2-2q+5)/8)",
            genus: (q * q - 2 * q + 5) / 8,
        });
        out.push(KnownGenusValue {
            formula: "floor((q-1)(q-3)/8)",
            genus: (q - 1) * (q - 3) / 8,
        });
    }
    out
}

// ---------------------------------------------------------------------------
