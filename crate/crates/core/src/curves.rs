//! Explicit curve families over F_{q^2}, each with a plane model, its genus,
//! and the corrections that turn plane affine counts into place counts on the
//! nonsingular model.
//!
//! Every model keeps y-degree at most q so that fibers over x stay small; the
//! family with a natural y^{q+1} term is stored with x and y swapped, which
//! changes neither genus nor point counts.

use crate::error::{Error, Result};
use crate::field::{factor_prime_power, FieldCtx};
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    /// y^q + y = x^{q+1}
    Hermitian { q: u64 },
    /// y^q + y = x^m, with m a divisor of q + 1 and m >= 2
    ArtinSchreier { q: u64, m: u64 },
    /// y^{q/2} + y^{q/4} + .. + y = x^{q+1}, for q = 2^t
    EvenTrace { q: u64 },
    /// x^M + y^M + 1 = 0 with M = (q + 1)/2, for q odd
    FermatHalf { q: u64 },
    /// x^{q+1} + y^s + y^{2s} = 0 with s = (q + 1)/3, for q = 2 mod 3
    ThirdGenusKummer { q: u64 },
    /// y^q - y x^{2u} + x^u = 0 with u = (q - 1)/3, for q = 1 mod 3
    ThirdGenusTwisted { q: u64 },
    /// y^q + y + T(x)^2 = 0 with T = x^{3^{t-1}} + .. + x^3 + x, for q = 3^t
    ThirdGenusAdditive { q: u64 },
}

fn exact_log(q: u64, base: u64) -> Option<u32> {
    let mut v = q;
    let mut t = 0;
    while v > 1 {
        if v % base != 0 {
            return None;
        }
        v /= base;
        t += 1;
    }
    (t >= 1).then_some(t)
}

impl CurveFamily {
    /// Base prime power of the quadratic field F_{q^2}.
    pub fn q(&self) -> u64 {
        match *self {
            CurveFamily::Hermitian { q }
            | CurveFamily::ArtinSchreier { q, .. }
            | CurveFamily::EvenTrace { q }
            | CurveFamily::FermatHalf { q }
            | CurveFamily::ThirdGenusKummer { q }
            | CurveFamily::ThirdGenusTwisted { q }
            | CurveFamily::ThirdGenusAdditive { q } => q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q();
        let (p, _) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        match *self {
            CurveFamily::Hermitian { .. } => Ok(()),
            CurveFamily::ArtinSchreier { m, .. } => {
                if m < 2 || (q + 1) % m != 0 {
                    Err(Error::InvalidFamily(format!(
                        "as needs m >= 2 dividing q + 1; got q={q}, m={m}"
                    )))
                } else {
                    Ok(())
                }
            }
            CurveFamily::EvenTrace { .. } => {
                if p == 2 {
                    Ok(())
                } else {
                    Err(Error::InvalidFamily(format!(
                        "even-trace needs q = 2^t; got q={q}"
                    )))
                }
            }
            CurveFamily::FermatHalf { .. } => {
                if p != 2 {
                    Ok(())
                } else {
                    Err(Error::InvalidFamily(format!(
                        "fermat-half needs odd q; got q={q}"
                    )))
                }
            }
            CurveFamily::ThirdGenusKummer { .. } => {
                if q % 3 == 2 {
                    Ok(())
                } else {
                    Err(Error::InvalidFamily(format!(
                        "r32i needs q = 2 mod 3; got q={q}"
                    )))
                }
            }
            CurveFamily::ThirdGenusTwisted { .. } => {
                if q % 3 == 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidFamily(format!(
                        "r32ii needs q = 1 mod 3; got q={q}"
                    )))
                }
            }
            CurveFamily::ThirdGenusAdditive { .. } => {
                if p == 3 {
                    Ok(())
                } else {
                    Err(Error::InvalidFamily(format!(
                        "r32iii needs q = 3^t; got q={q}"
                    )))
                }
            }
        }
    }

    pub fn genus(&self) -> u64 {
        match *self {
            CurveFamily::Hermitian { q } => q * (q - 1) / 2,
            CurveFamily::ArtinSchreier { q, m } => (q - 1) * (m - 1) / 2,
            CurveFamily::EvenTrace { q } => q * (q - 2) / 4,
            CurveFamily::FermatHalf { q } => (q - 1) * (q - 3) / 8,
            CurveFamily::ThirdGenusKummer { q } => (q * q - q + 4) / 6,
            CurveFamily::ThirdGenusTwisted { q } | CurveFamily::ThirdGenusAdditive { q } => {
                (q * q - q) / 6
            }
        }
    }

    /// Plane model as a polynomial equation f(x, y) = 0 over `ctx`, which
    /// must have the same characteristic as q.
    pub fn equation(&self, ctx: &FieldCtx) -> Result<BivariatePoly> {
        let q = self.q();
        let (p, _) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if ctx.p != p {
            return Err(Error::InvalidInput(format!(
                "field has characteristic {}, curve needs {p}",
                ctx.p
            )));
        }
        let qe = q as u32;
        Ok(match *self {
            CurveFamily::Hermitian { .. } => {
                BivariatePoly::from_int_terms(ctx, &[(1, 0, qe), (1, 0, 1), (-1, qe + 1, 0)])
            }
            CurveFamily::ArtinSchreier { m, .. } => {
                BivariatePoly::from_int_terms(ctx, &[(1, 0, qe), (1, 0, 1), (-1, m as u32, 0)])
            }
            CurveFamily::EvenTrace { .. } => {
                let t = exact_log(q, 2).expect("validated");
                let mut terms: Vec<(i64, u32, u32)> =
                    (1..=t).map(|i| (1, 0, (q >> i) as u32)).collect();
                terms.push((-1, qe + 1, 0));
                BivariatePoly::from_int_terms(ctx, &terms)
            }
            CurveFamily::FermatHalf { .. } => {
                let m = ((q + 1) / 2) as u32;
                BivariatePoly::from_int_terms(ctx, &[(1, m, 0), (1, 0, m), (1, 0, 0)])
            }
            CurveFamily::ThirdGenusKummer { .. } => {
                let s = ((q + 1) / 3) as u32;
                BivariatePoly::from_int_terms(ctx, &[(1, qe + 1, 0), (1, 0, s), (1, 0, 2 * s)])
            }
            CurveFamily::ThirdGenusTwisted { .. } => {
                let u = ((q - 1) / 3) as u32;
                BivariatePoly::from_int_terms(ctx, &[(1, 0, qe), (1, 2 * u, 1), (1, u, 0)])
            }
            CurveFamily::ThirdGenusAdditive { .. } => {
                let t = exact_log(q, 3).expect("validated");
                let tr_terms: Vec<(i64, u32, u32)> =
                    (1..=t).map(|i| (1, (q / 3u64.pow(i)) as u32, 0)).collect();
                let tr = BivariatePoly::from_int_terms(ctx, &tr_terms);
                let sq = tr.mul(&tr)?;
                let lin = BivariatePoly::from_int_terms(ctx, &[(1, 0, qe), (1, 0, 1)]);
                lin.add(&sq)?
            }
        })
    }

    /// Places of the nonsingular model above affine plane points, minus the
    /// affine plane count itself. Independent of the extension degree: every
    /// extra place sits over F_{q^2} already.
    pub fn affine_chart_deficit(&self) -> u64 {
        match *self {
            // x^{q+1} = -y^s(1 + y^s): for s >= 2 the point (0, 0) is the one
            // affine singularity and carries s places.
            CurveFamily::ThirdGenusKummer { q } => (q + 1) / 3 - 1,
            _ => 0,
        }
    }

    /// Places at infinity of the nonsingular model that are rational over the
    /// counting field `ctx`.
    pub fn points_at_infinity(&self, ctx: &FieldCtx) -> u64 {
        match *self {
            CurveFamily::Hermitian { .. }
            | CurveFamily::ArtinSchreier { .. }
            | CurveFamily::EvenTrace { .. }
            | CurveFamily::ThirdGenusAdditive { .. } => 1,
            // smooth plane curve: points (x : y : 0) with (x/y)^M = -1
            CurveFamily::FermatHalf { q } => {
                let m = (q + 1) / 2;
                let minus_one = ctx.neg(&ctx.one());
                ctx.enumerate()
                    .filter(|u| ctx.pow(u, m) == minus_one)
                    .count() as u64
            }
            // s places, with residues the s-th roots of -1, all quadratic-field
            // rational
            CurveFamily::ThirdGenusKummer { q } => (q + 1) / 3,
            // one unramified place plus u places of index 3
            CurveFamily::ThirdGenusTwisted { q } => (q - 1) / 3 + 1,
        }
    }

    /// Projective dimension of the known very ample degree-(q+1) system, when
    /// one is on record for the family.
    pub fn linear_system_dim(&self) -> Option<u64> {
        match *self {
            CurveFamily::Hermitian { .. } => Some(2),
            CurveFamily::ArtinSchreier { q, m } => Some(1 + (q + 1) / m),
            CurveFamily::EvenTrace { .. } => Some(3),
            CurveFamily::FermatHalf { q } => (q >= 5).then_some(5),
            _ => None,
        }
    }

    /// Generators of the Weierstrass semigroup at the distinguished totally
    /// ramified place, when known.
    pub fn known_semigroup_gens(&self) -> Option<Vec<u64>> {
        match *self {
            CurveFamily::Hermitian { q } => Some(vec![q, q + 1]),
            CurveFamily::ArtinSchreier { q, m } => Some(vec![m, q]),
            _ => None,
        }
    }

    // -- textual ids --------------------------------------------------------

    pub fn family_id(&self) -> String {
        let q = self.q();
        match *self {
            CurveFamily::Hermitian { .. } => format!("hermitian:q={q}"),
            CurveFamily::ArtinSchreier { m, .. } => format!("as:q={q},m={m}"),
            CurveFamily::EvenTrace { .. } => format!("even-trace:q={q}"),
            CurveFamily::FermatHalf { .. } => format!("fermat-half:q={q}"),
            CurveFamily::ThirdGenusKummer { .. } => format!("r32i:q={q}"),
            CurveFamily::ThirdGenusTwisted { .. } => format!("r32ii:q={q}"),
            CurveFamily::ThirdGenusAdditive { .. } => format!("r32iii:q={q}"),
        }
    }

    /// Parses "name:key=value,..". Every family takes q; "as" also needs m.
    pub fn parse(s: &str) -> Result<CurveFamily> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, r),
            None => (s, ""),
        };
        let mut q = None;
        let mut m = None;
        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{pair}'")))?;
            let value: u64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("'{value}' is not a positive integer")))?;
            match key {
                "q" => q = Some(value),
                "m" => m = Some(value),
                _ => return Err(Error::Parse(format!("unknown parameter '{key}'"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse(format!("family '{name}' needs q=<prime power>")))?;
        if m.is_some() && name != "as" {
            return Err(Error::Parse(format!(
                "parameter m is not valid for '{name}'"
            )));
        }
        let fam = match name {
            "hermitian" => CurveFamily::Hermitian { q },
            "as" => CurveFamily::ArtinSchreier {
                q,
                m: m.ok_or_else(|| Error::Parse("family 'as' needs m=<divisor of q+1>".into()))?,
            },
            "even-trace" => CurveFamily::EvenTrace { q },
            "fermat-half" => CurveFamily::FermatHalf { q },
            "r32i" => CurveFamily::ThirdGenusKummer { q },
            "r32ii" => CurveFamily::ThirdGenusTwisted { q },
            "r32iii" => CurveFamily::ThirdGenusAdditive { q },
            other => return Err(Error::InvalidFamily(format!("unknown family '{other}'"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl std::str::FromStr for CurveFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<CurveFamily> {
        CurveFamily::parse(s)
    }
}

/// Every family instance the toolkit knows at a given q: the Hermitian curve,
/// one quotient per divisor m >= 2 of q + 1, and whichever of the remaining
/// families exist at this q.
pub fn catalog_for_q(q: u64) -> Result<Vec<CurveFamily>> {
    factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let mut out = vec![CurveFamily::Hermitian { q }];
    for m in 2..=q + 1 {
        if (q + 1) % m == 0 {
            out.push(CurveFamily::ArtinSchreier { q, m });
        }
    }
    if q % 2 == 0 {
        out.push(CurveFamily::EvenTrace { q });
    } else {
        out.push(CurveFamily::FermatHalf { q });
    }
    match q % 3 {
        0 => out.push(CurveFamily::ThirdGenusAdditive { q }),
        1 => out.push(CurveFamily::ThirdGenusTwisted { q }),
        _ => out.push(CurveFamily::ThirdGenusKummer { q }),
    }
    debug_assert!(out.iter().all(|f| f.validate().is_ok()));
    Ok(out)
}

// ---------------------------------------------------------------------------
