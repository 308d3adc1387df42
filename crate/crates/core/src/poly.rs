//! Sparse bivariate polynomials over a finite field.
//!
//! Terms are kept in a map keyed by (x-degree, y-degree); constants are
//! ordinary polynomials with a single (0, 0) term. Curve models are written
//! with small integer coefficients and instantiated over whichever field a
//! computation needs, so construction from integer terms is the main entry
//! point.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    pub ctx: FieldCtx,
    /// (x-degree, y-degree) -> nonzero coefficient.
    pub terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BivariatePoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        BivariatePoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds sum of c * x^i * y^j from (c, i, j) triples; negative integer
    /// coefficients reduce mod p. Repeated (i, j) keys accumulate.
    pub fn from_int_terms(ctx: &FieldCtx, terms: &[(i64, u32, u32)]) -> Self {
        let mut out = BivariatePoly::zero(ctx);
        for &(c, i, j) in terms {
            let c = c.rem_euclid(ctx.p as i64) as u64;
            out.add_term((i, j), &ctx.from_int(c));
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(|| self.ctx.zero());
        *entry = self.ctx.add(entry, c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &BivariatePoly) -> Result<BivariatePoly> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleFields(self.ctx.order, other.ctx.order));
        }
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.add_term(key, c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BivariatePoly) -> Result<BivariatePoly> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleFields(self.ctx.order, other.ctx.order));
        }
        let mut out = BivariatePoly::zero(&self.ctx);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), &self.ctx.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let xp = power_table(&self.ctx, x, self.deg_x());
        let yp = power_table(&self.ctx, y, self.deg_y());
        let mut acc = self.ctx.zero();
        for (&(i, j), c) in &self.terms {
            let term = self
                .ctx
                .mul(c, &self.ctx.mul(&xp[i as usize], &yp[j as usize]));
            acc = self.ctx.add(&acc, &term);
        }
        acc
    }

    /// Substitutes x, leaving a dense univariate polynomial in y
    /// (coefficients from y^0 up).
    pub fn specialize_x(&self, x: &FieldElement) -> Vec<FieldElement> {
        let xp = power_table(&self.ctx, x, self.deg_x());
        let mut out = vec![self.ctx.zero(); self.deg_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            let term = self.ctx.mul(c, &xp[i as usize]);
            out[j as usize] = self.ctx.add(&out[j as usize], &term);
        }
        out
    }
}

/// [1, a, a^2, .., a^deg]
fn power_table(ctx: &FieldCtx, a: &FieldElement, deg: u32) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    out.push(ctx.one());
    for i in 0..deg as usize {
        out.push(ctx.mul(&out[i], a));
    }
    out
}

/// Horner evaluation of a dense univariate polynomial (coefficients from
/// degree 0 up).
pub fn eval_univariate(ctx: &FieldCtx, coeffs: &[FieldElement], at: &FieldElement) -> FieldElement {
    let mut acc = ctx.zero();
    for c in coeffs.iter().rev() {
        acc = ctx.mul(&acc, at);
        acc = ctx.add(&acc, c);
    }
    acc
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf;

    #[test]
    fn integer_terms_reduce_and_accumulate() {
        let f = gf(5).unwrap();
        // 3x^2y - x^2y + 7 = 2x^2y + 2
        let p = BivariatePoly::from_int_terms(&f, &[(3, 2, 1), (-1, 2, 1), (7, 0, 0)]);
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[&(2, 1)], f.from_int(2));
        assert_eq!(p.terms[&(0, 0)], f.from_int(2));
        // cancelling terms vanish entirely
        let z = BivariatePoly::from_int_terms(&f, &[(2, 1, 1), (-2, 1, 1)]);
        assert!(z.is_zero());
        assert_eq!(z.deg_x(), 0);
    }

    #[test]
    fn eval_matches_direct_computation() {
        let f = gf(7).unwrap();
        // y^2 - x^3 - 2
        let p = BivariatePoly::from_int_terms(&f, &[(1, 0, 2), (-1, 3, 0), (-2, 0, 0)]);
        for a in 0..7u64 {
            for b in 0..7u64 {
                let want = (b * b + 7 * 7 * 7 - a * a * a + 7 - 2) % 7;
                let got = p.eval(&f.from_int(a), &f.from_int(b));
                assert_eq!(got, f.from_int(want));
            }
        }
    }

    #[test]
    fn specialization_agrees_with_eval() {
        let f = gf(9).unwrap();
        let p = BivariatePoly::from_int_terms(&f, &[(1, 0, 3), (1, 0, 1), (-1, 4, 0)]);
        for x in f.enumerate() {
            let uni = p.specialize_x(&x);
            for y in f.enumerate() {
                assert_eq!(eval_univariate(&f, &uni, &y), p.eval(&x, &y));
            }
        }
    }

    #[test]
    fn ring_operations() {
        let f = gf(4).unwrap();
        let a = BivariatePoly::from_int_terms(&f, &[(1, 1, 0), (1, 0, 1)]); // x + y
        let b = BivariatePoly::from_int_terms(&f, &[(1, 1, 0), (-1, 0, 1)]); // x - y = x + y
        let prod = a.mul(&b).unwrap();
        // (x + y)^2 = x^2 + y^2 in characteristic 2
        let square = BivariatePoly::from_int_terms(&f, &[(1, 2, 0), (1, 0, 2)]);
        assert_eq!(prod, square);
        let sum = a.add(&b).unwrap();
        assert!(sum.is_zero()); // 2(x + y) = 0
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f = gf(4).unwrap();
        let g = gf(9).unwrap();
        let a = BivariatePoly::from_int_terms(&f, &[(1, 1, 0)]);
        let b = BivariatePoly::from_int_terms(&g, &[(1, 1, 0)]);
        assert!(matches!(a.add(&b), Err(Error::IncompatibleFields(4, 9))));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn constants_are_valid_polynomials() {
        let f = gf(3).unwrap();
        let c = BivariatePoly::from_int_terms(&f, &[(2, 0, 0)]);
        assert_eq!(c.deg_x(), 0);
        assert_eq!(c.deg_y(), 0);
        assert_eq!(c.eval(&f.from_int(1), &f.from_int(2)), f.from_int(2));
        assert_eq!(c.specialize_x(&f.zero()), vec![f.from_int(2)]);
    }
}
