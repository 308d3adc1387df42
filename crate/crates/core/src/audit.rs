//! Genus-spectrum audit and family verification reports.
//!
//! The spectrum audit is formula-driven: for one q it walks every candidate
//! genus up to the Hermitian value, places it in the trichotomy, attaches the
//! Hasse-Weil-forced point count, the conjecturally vacant degree-bound
//! intervals it falls into, the catalog curves attaining it, and - where a
//! settled result applies - a uniqueness or non-existence verdict.

use serde::Serialize;

use crate::bounds::{
    conjecture_gap, ihara_bound, known_third_range_values, second_genus_bound, small_q_spectrum,
    trichotomy_classify, TrichotomyTag,
};
use crate::counting::{
    count_curve, is_maximal, predicted_extension_count, CountConfig, MaximalityVerdict, PointCount,
};
use crate::curves::{catalog_for_q, CurveFamily};
use crate::error::{Error, Result};
use crate::field::factor_prime_power;

/// Schema tag stamped on serialized reports.
pub const REPORT_SCHEMA: &str = "maxcurve.report.v1";

// ---------------------------------------------------------------------------
// spectrum audit

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonExistent,
    Unique,
    ExactlyTwo,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// The curves the verdict is about; empty for non-existence.
    pub families: Vec<String>,
    /// Extra hypothesis the verdict depends on, if any.
    pub assuming: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub g: u64,
    pub tag: TrichotomyTag,
    /// Point count over F_{q^2} a maximal curve of this genus must have.
    pub hasse_weil_upper: u64,
    /// Dimensions r whose conjectural interval (c1, c0) at degree q+1
    /// contains this genus.
    pub conjecture_excluded_r: Vec<u64>,
    /// Catalog curves of this genus.
    pub known_families: Vec<String>,
    /// Documented closed forms equal to this genus.
    pub known_formulas: Vec<&'static str>,
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub schema: &'static str,
    pub q: u64,
    pub hermitian_genus: u64,
    pub second_genus: u64,
    pub third_genus: u64,
    /// Full spectrum when settled (q <= 5).
    pub settled_spectrum: Option<Vec<u64>>,
    pub rows: Vec<SpectrumRow>,
}

fn classify_genus(q: u64, g: u64) -> Option<Classification> {
    let (p, _) = factor_prime_power(q)?;
    if g == ihara_bound(q) {
        return Some(Classification {
            verdict: Verdict::Unique,
            families: vec![CurveFamily::Hermitian { q }.family_id()],
            assuming: None,
        });
    }
    if q >= 7 && g == second_genus_bound(q) {
        let family = if q % 2 == 1 {
            CurveFamily::ArtinSchreier { q, m: (q + 1) / 2 }
        } else {
            CurveFamily::EvenTrace { q }
        };
        return Some(Classification {
            verdict: Verdict::Unique,
            families: vec![family.family_id()],
            assuming: None,
        });
    }
    if q % 3 != 0 && g == (q - 1) * (q - 2) / 6 && (q - 1) * (q - 2) % 6 == 0 {
        if q % 3 == 1 && q >= 13 {
            return Some(Classification {
                verdict: Verdict::NonExistent,
                families: Vec::new(),
                assuming: None,
            });
        }
        if q % 3 == 2 && q >= 11 {
            return Some(Classification {
                verdict: Verdict::Unique,
                families: vec![CurveFamily::ArtinSchreier { q, m: (q + 1) / 3 }.family_id()],
                assuming: None,
            });
        }
    }
    if p >= 5 && q % 2 == 1 && g == (q - 1) * (q - 3) / 8 {
        let assuming = Some("a five-dimensional complete linear system of degree q+1".to_string());
        if q % 4 == 1 && q >= 17 {
            return Some(Classification {
                verdict: Verdict::Unique,
                families: vec![CurveFamily::FermatHalf { q }.family_id()],
                assuming,
            });
        }
        if q % 4 == 3 && q >= 19 {
            return Some(Classification {
                verdict: Verdict::ExactlyTwo,
                families: vec![
                    CurveFamily::FermatHalf { q }.family_id(),
                    CurveFamily::ArtinSchreier { q, m: (q + 1) / 4 }.family_id(),
                ],
                assuming,
            });
        }
    }
    None
}

/// Audits every candidate genus 0..=q(q-1)/2 at one q. Purely formula-based:
/// no point counting and no field construction, so any prime power q works.
pub fn spectrum_audit(q: u64, rs: &[u64]) -> Result<SpectrumReport> {
    factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let intervals: Vec<_> = rs
        .iter()
        .map(|&r| conjecture_gap(q, r))
        .collect::<Result<_>>()?;
    let catalog: Vec<(String, u64)> = catalog_for_q(q)?
        .iter()
        .map(|f| (f.family_id(), f.genus()))
        .collect();
    let formulas = known_third_range_values(q);
    let rows = (0..=ihara_bound(q))
        .map(|g| {
            let verdictrow = trichotomy_classify(q, g)?;
            Ok(SpectrumRow {
                g,
                tag: verdictrow.tag,
                hasse_weil_upper: predicted_extension_count(q, g, 1)?,
                conjecture_excluded_r: intervals
                    .iter()
                    .filter(|i| g > i.c1 && g < i.c0)
                    .map(|i| i.r)
                    .collect(),
                known_families: catalog
                    .iter()
                    .filter(|(_, fg)| *fg == g)
                    .map(|(id, _)| id.clone())
                    .collect(),
                known_formulas: formulas
                    .iter()
                    .filter(|k| k.genus == g)
                    .map(|k| k.formula)
                    .collect(),
                classification: classify_genus(q, g),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport {
        schema: REPORT_SCHEMA,
        q,
        hermitian_genus: ihara_bound(q),
        second_genus: second_genus_bound(q),
        third_genus: crate::bounds::third_genus_bound(q),
        settled_spectrum: small_q_spectrum(q).ok(),
        rows,
    })
}

// ---------------------------------------------------------------------------
// family verification

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionCheck {
    pub k: u32,
    pub expected: u64,
    pub observed: PointCount,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub family: String,
    pub q: u64,
    pub genus: u64,
    pub base: MaximalityVerdict,
    pub extensions: Vec<ExtensionCheck>,
    pub all_match: bool,
}

/// Counts the family over F_{q^2} and the extensions up to k_max, comparing
/// each count with the value maximality forces.
pub fn verify_family(family: &CurveFamily, k_max: u32, cfg: &CountConfig) -> Result<VerifyReport> {
    family.validate()?;
    let q = family.q();
    let genus = family.genus();
    let base = is_maximal(family, cfg)?;
    let mut extensions = Vec::new();
    for k in 2..=k_max {
        let observed = count_curve(family, k, cfg)?;
        let expected = predicted_extension_count(q, genus, k)?;
        extensions.push(ExtensionCheck {
            k,
            expected,
            observed,
            matches: observed.total == expected,
        });
    }
    let all_match = base.is_maximal && extensions.iter().all(|e| e.matches);
    Ok(VerifyReport {
        schema: REPORT_SCHEMA,
        family: family.family_id(),
        q,
        genus,
        base,
        extensions,
        all_match,
    })
}

// ---------------------------------------------------------------------------
