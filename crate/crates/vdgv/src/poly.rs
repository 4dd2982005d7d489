//! Dense univariate polynomials with field coefficients, used for the
//! exact identity checks in the quotient machinery (where the Delta
//! accumulators pick up a genuine quadratic part and stop being additive).

use crate::gf::{FieldCtx, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct DensePoly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>, // low-to-high, trimmed
}

impl std::fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensePoly(deg {})", self.degree().map(|d| d as i64).unwrap_or(-1))
    }
}

impl DensePoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        DensePoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Self {
        let mut p = DensePoly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn constant(c: FieldElement) -> Self {
        DensePoly::from_coeffs(&c.ctx().clone(), vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        DensePoly::from_coeffs(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn monomial(ctx: &FieldCtx, c: FieldElement, deg: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); deg + 1];
        coeffs[deg] = c;
        DensePoly::from_coeffs(ctx, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, o: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        DensePoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, o: &DensePoly) -> DensePoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DensePoly {
        DensePoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, k: &FieldElement) -> DensePoly {
        DensePoly::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|c| c.mul(k)).collect(),
        )
    }

    pub fn mul(&self, o: &DensePoly) -> DensePoly {
        if self.is_zero() || o.is_zero() {
            return DensePoly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        DensePoly::from_coeffs(&self.ctx, out)
    }

    pub fn pow(&self, e: usize) -> DensePoly {
        let mut acc = DensePoly::constant(self.ctx.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Raise to the p0^k power using the freshman's dream.
    pub fn frobenius_power(&self, k: usize) -> DensePoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let p0 = self.ctx.p0() as usize;
        let step = p0.pow(k as u32);
        let mut out = vec![self.ctx.zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = c.frobenius(k);
        }
        DensePoly::from_coeffs(&self.ctx, out)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let tower = self.ctx.tower();
        let mut acc = x.ctx().zero();
        for c in self.coeffs.iter().rev() {
            let c = tower.embed(c, x.ctx()).expect("coefficient embeds");
            acc = acc.mul(x).add(&c);
        }
        acc
    }

    /// self(other(x)) as a polynomial.
    pub fn compose(&self, other: &DensePoly) -> DensePoly {
        let mut acc = DensePoly::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&DensePoly::constant(c.clone()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;

    #[test]
    fn arithmetic_and_compose() {
        let t = FieldTower::new(3).unwrap();
        let f3 = t.field(1).unwrap();
        // (x^2 + 1) o (x + 2) = x^2 + 4x + 5 = x^2 + x + 2
        let a = DensePoly::from_coeffs(&f3, vec![f3.one(), f3.zero(), f3.one()]);
        let b = DensePoly::from_coeffs(&f3, vec![f3.from_int(2), f3.one()]);
        let c = a.compose(&b);
        assert_eq!(c.coeffs(), &[f3.from_int(2), f3.one(), f3.one()]);
        for i in 0..3 {
            let x = f3.from_int(i);
            assert_eq!(c.eval(&x), a.eval(&b.eval(&x)));
        }
    }

    #[test]
    fn frobenius_power_is_true_power() {
        let t = FieldTower::new(3).unwrap();
        let f9 = t.field(2).unwrap();
        let g = f9.gen();
        let p = DensePoly::from_coeffs(&f9, vec![g.clone(), f9.one(), g.mul(&g)]);
        assert_eq!(p.frobenius_power(1), p.pow(3));
    }
}
