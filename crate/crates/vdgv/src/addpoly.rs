//! Additive (linearized) polynomials sum c_i x^(p0^i) and twisted
//! bilinear forms sum c_uv x^(p0^u) y^(p0^v).
//!
//! These are the workhorses of the whole crate: the curve data R, the
//! kernel polynomial E_R, the pairing form f_R and the quotient chain
//! all live here. Composition division is done by exact triangular
//! solves on coefficients, and every division result is re-composed and
//! compared coefficient-wise before it is returned.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::FpMat;
use crate::poly::DensePoly;

/// sum coeffs[i] * x^(p0^i), coefficients in one field context.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditivePoly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>, // index i holds the x^(p0^i) coefficient
}

impl std::fmt::Debug for AdditivePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdditivePoly({:?}, steps {:?})", self.ctx, self.coeffs)
    }
}

/// Inverse of the p0-power Frobenius, applied k times.
fn inv_frobenius(x: &FieldElement, k: usize) -> FieldElement {
    let m = x.ctx().deg();
    x.frobenius((m - (k % m)) % m)
}

impl AdditivePoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        AdditivePoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn from_p0_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Self {
        let mut a = AdditivePoly { ctx: ctx.clone(), coeffs };
        a.trim();
        a
    }

    /// Build from coefficients a_0..a_e of sum a_i x^(p^i), p = p0^kappa.
    pub fn from_p_coeffs(ctx: &FieldCtx, kappa: usize, a: &[FieldElement]) -> Self {
        let mut coeffs = vec![ctx.zero(); a.len().saturating_sub(1) * kappa + 1];
        for (i, c) in a.iter().enumerate() {
            coeffs[i * kappa] = c.clone();
        }
        AdditivePoly::from_p0_coeffs(ctx, coeffs)
    }

    /// Read off a_0..a_e of sum a_i x^(p^i); errors if a coefficient sits
    /// at an exponent that is not a power of p.
    pub fn p_coeffs(&self, kappa: usize) -> Result<Vec<FieldElement>> {
        if self.is_zero() {
            return Ok(vec![self.ctx.zero()]);
        }
        let top = self.coeffs.len() - 1;
        if top % kappa != 0 {
            return Err(Error::InvalidInput(
                "additive polynomial degree is not a power of p".into(),
            ));
        }
        let mut out = Vec::with_capacity(top / kappa + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % kappa == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return Err(Error::InvalidInput(
                    "additive polynomial has a coefficient off the p-power grid".into(),
                ));
            }
        }
        Ok(out)
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        AdditivePoly::from_p0_coeffs(ctx, vec![ctx.one()])
    }

    /// x^(p0^k) - x.
    pub fn frobenius_minus_id(ctx: &FieldCtx, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[0] = ctx.one().neg();
        coeffs[k] = ctx.one();
        AdditivePoly::from_p0_coeffs(ctx, coeffs)
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

    /// Exponent d with deg = p0^d; None for the zero polynomial.
    pub fn deg_exp(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn p0_coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, o: &AdditivePoly) -> AdditivePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        AdditivePoly::from_p0_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, o: &AdditivePoly) -> AdditivePoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AdditivePoly {
        AdditivePoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &FieldElement) -> AdditivePoly {
        AdditivePoly::from_p0_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|c| c.mul(k)).collect(),
        )
    }

    /// The p0^k power of the whole polynomial (still additive).
    pub fn frobenius_power(&self, k: usize) -> AdditivePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + k] = c.frobenius(k);
        }
        AdditivePoly::from_p0_coeffs(&self.ctx, coeffs)
    }

    /// self(other(x)).
    pub fn compose(&self, other: &AdditivePoly) -> AdditivePoly {
        if self.is_zero() || other.is_zero() {
            return AdditivePoly::zero(&self.ctx);
        }
        debug_assert_eq!(self.ctx, other.ctx);
        let dg = self.coeffs.len() - 1;
        let df = other.coeffs.len() - 1;
        let mut out = vec![self.ctx.zero(); dg + df + 1];
        for (i, gi) in self.coeffs.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, fj) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&gi.mul(&fj.frobenius(i)));
            }
        }
        AdditivePoly::from_p0_coeffs(&self.ctx, out)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let tower = self.ctx.tower();
        let mut acc = x.ctx().zero();
        let mut xp = x.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                let c = tower.embed(c, x.ctx()).expect("coefficient embeds");
                acc = acc.add(&c.mul(&xp));
            }
            xp = xp.frobenius(1);
        }
        acc
    }

    /// Matrix (power basis of ambient) of x -> self(x) on ambient.
    pub fn matrix_on(&self, ambient: &FieldCtx) -> Result<FpMat> {
        let tower = self.ctx.tower();
        let embedded: Vec<FieldElement> = self
            .coeffs
            .iter()
            .map(|c| tower.embed(c, ambient))
            .collect::<Result<_>>()?;
        Ok(ambient.linear_map_matrix(|x| {
            let mut acc = ambient.zero();
            let mut xp = x.clone();
            for c in &embedded {
                acc = acc.add(&c.mul(&xp));
                xp = xp.frobenius(1);
            }
            acc
        }))
    }

    /// g with self = g o f, or NoSuchFactor.
    pub fn outer_divide(&self, f: &AdditivePoly) -> Result<AdditivePoly> {
        if f.is_zero() {
            return Err(Error::NoSuchFactor);
        }
        if self.is_zero() {
            return Ok(AdditivePoly::zero(&self.ctx));
        }
        let dh = self.coeffs.len() - 1;
        let df = f.coeffs.len() - 1;
        if df > dh {
            return Err(Error::NoSuchFactor);
        }
        let dg = dh - df;
        let lead = f.coeff(df);
        if lead.is_zero() {
            return Err(Error::NoSuchFactor);
        }
        let mut g = vec![self.ctx.zero(); dg + 1];
        for j in (0..=dg).rev() {
            let mut t = self.coeff(df + j);
            for i in (j + 1)..=dg.min(df + j) {
                t = t.sub(&g[i].mul(&f.coeff(df + j - i).frobenius(i)));
            }
            g[j] = t.div(&lead.frobenius(j));
        }
        let g = AdditivePoly::from_p0_coeffs(&self.ctx, g);
        if g.compose(f) != *self {
            return Err(Error::NoSuchFactor);
        }
        Ok(g)
    }

    /// f with self = g o f, or NoSuchFactor.
    pub fn inner_divide(&self, g: &AdditivePoly) -> Result<AdditivePoly> {
        if g.is_zero() {
            return Err(Error::NoSuchFactor);
        }
        if self.is_zero() {
            return Ok(AdditivePoly::zero(&self.ctx));
        }
        let dh = self.coeffs.len() - 1;
        let dg = g.coeffs.len() - 1;
        if dg > dh {
            return Err(Error::NoSuchFactor);
        }
        let df = dh - dg;
        let i0 = g
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("g nonzero");
        let g0 = g.coeff(i0);
        let mut f = vec![self.ctx.zero(); df + 1];
        for k in 0..=df {
            let mut t = self.coeff(k + i0);
            for i in (i0 + 1)..=dg.min(k + i0) {
                t = t.sub(&g.coeff(i).mul(&f[k + i0 - i].frobenius(i)));
            }
            // g0 * f_k^(p0^i0) = t
            f[k] = inv_frobenius(&t.div(&g0), i0);
        }
        let f = AdditivePoly::from_p0_coeffs(&self.ctx, f);
        if g.compose(&f) != *self {
            return Err(Error::NoSuchFactor);
        }
        Ok(f)
    }

    /// F_p0-basis of ker(self) inside ambient; the flag is true when the
    /// whole kernel is already rational over ambient (separable case).
    pub fn kernel(&self, ambient: &FieldCtx) -> Result<(Vec<FieldElement>, bool)> {
        assert!(!self.is_zero(), "kernel of the zero map");
        let mat = self.matrix_on(ambient)?;
        let basis: Vec<FieldElement> = mat
            .kernel()
            .into_iter()
            .map(|v| {
                ambient
                    .from_coords(&v.iter().map(|&c| c as i64).collect::<Vec<_>>())
                    .expect("kernel vector fits")
            })
            .collect();
        let full = basis.len() == self.coeffs.len() - 1;
        Ok((basis, full))
    }

    /// Minimal n such that ker(self) lies in F_{p0^(base_deg * n)}.
    pub fn splitting_degree(&self, base_deg: usize) -> Result<usize> {
        let tower = self.ctx.tower();
        let mut n = 1;
        loop {
            let ambient = tower.field(base_deg * n)?;
            if self.ctx.deg() == 1 || (base_deg * n) % self.ctx.deg() == 0 {
                let (_, full) = self.kernel(&ambient)?;
                if full {
                    return Ok(n);
                }
            }
            n += 1;
        }
    }

    pub fn to_dense(&self) -> DensePoly {
        let p0 = self.ctx.p0() as u128;
        let deg = match self.deg_exp() {
            None => return DensePoly::zero(&self.ctx),
            Some(d) => p0.pow(d as u32) as usize,
        };
        let mut out = vec![self.ctx.zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[p0.pow(i as u32) as usize] = c.clone();
        }
        DensePoly::from_coeffs(&self.ctx, out)
    }

    pub fn from_dense(dp: &DensePoly) -> Result<Self> {
        let ctx = dp.ctx().clone();
        if dp.is_zero() {
            return Ok(AdditivePoly::zero(&ctx));
        }
        let p0 = ctx.p0() as usize;
        let mut coeffs = Vec::new();
        let mut covered = vec![false; dp.degree().unwrap() + 1];
        let mut e = 1usize;
        while e <= dp.degree().unwrap() {
            coeffs.push(dp.coeff(e));
            covered[e] = true;
            match e.checked_mul(p0) {
                Some(next) => e = next,
                None => break,
            }
        }
        for (i, flag) in covered.iter().enumerate() {
            if !flag && !dp.coeff(i).is_zero() {
                return Err(Error::InvalidInput("polynomial is not additive".into()));
            }
        }
        Ok(AdditivePoly::from_p0_coeffs(&ctx, coeffs))
    }
}

/// E_R(x) = R(x)^(p^e) + sum_{i=0}^e (a_i x)^(p^(e-i)), p = p0^kappa.
pub fn make_er(r: &AdditivePoly, kappa: usize) -> Result<AdditivePoly> {
    let a = r.p_coeffs(kappa)?;
    let e = a.len() - 1;
    let ctx = r.ctx().clone();
    let mut out = vec![ctx.zero(); 2 * e + 1];
    for (i, ai) in a.iter().enumerate() {
        out[i + e] = out[i + e].add(&ai.frobenius(kappa * e % ctx.deg()));
        out[e - i] = out[e - i].add(&ai.frobenius(kappa * (e - i) % ctx.deg()));
    }
    Ok(AdditivePoly::from_p_coeffs(&ctx, kappa, &out))
}

/// sum c[u][v] x^(p0^u) y^(p0^v), additive in each variable separately.
#[derive(Clone)]
pub struct TwistedBiForm {
    ctx: FieldCtx,
    c: Vec<Vec<FieldElement>>, // c[u][v]
}

impl std::fmt::Debug for TwistedBiForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TwistedBiForm({:?}, {}x{})", self.ctx, self.c.len(),
            self.c.first().map_or(0, |r| r.len()))
    }
}

impl PartialEq for TwistedBiForm {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let rows = self.c.len().max(other.c.len());
        let cols = self
            .c
            .iter()
            .chain(&other.c)
            .map(|r| r.len())
            .max()
            .unwrap_or(0);
        for u in 0..rows {
            for v in 0..cols {
                if self.coeff(u, v) != other.coeff(u, v) {
                    return false;
                }
            }
        }
        true
    }
}
impl Eq for TwistedBiForm {}

impl TwistedBiForm {
    pub fn zero(ctx: &FieldCtx) -> Self {
        TwistedBiForm { ctx: ctx.clone(), c: Vec::new() }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeff(&self, u: usize, v: usize) -> FieldElement {
        self.c
            .get(u)
            .and_then(|r| r.get(v))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    fn add_to(&mut self, u: usize, v: usize, val: &FieldElement) {
        if self.c.len() <= u {
            self.c.resize(u + 1, Vec::new());
        }
        if self.c[u].len() <= v {
            self.c[u].resize(v + 1, self.ctx.zero());
        }
        self.c[u][v] = self.c[u][v].add(val);
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, o: &TwistedBiForm) -> TwistedBiForm {
        let mut out = self.clone();
        for (u, row) in o.c.iter().enumerate() {
            for (v, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    out.add_to(u, v, val);
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &TwistedBiForm) -> TwistedBiForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TwistedBiForm {
        TwistedBiForm {
            ctx: self.ctx.clone(),
            c: self
                .c
                .iter()
                .map(|r| r.iter().map(|x| x.neg()).collect())
                .collect(),
        }
    }

    /// p0^k power of the form (shifts both exponents by k).
    pub fn frobenius_power(&self, k: usize) -> TwistedBiForm {
        let mut out = TwistedBiForm::zero(&self.ctx);
        for (u, row) in self.c.iter().enumerate() {
            for (v, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    out.add_to(u + k, v + k, &val.frobenius(k));
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        debug_assert_eq!(x.ctx(), y.ctx());
        self.fix_second(y).eval(x)
    }

    /// self(a, y) as an additive polynomial in y, coefficients in a's field.
    pub fn fix_first(&self, a: &FieldElement) -> AdditivePoly {
        let tower = self.ctx.tower();
        let cols = self.c.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = vec![a.ctx().zero(); cols];
        for (u, row) in self.c.iter().enumerate() {
            let ap = a.frobenius(u);
            for (v, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    let c = tower.embed(val, a.ctx()).expect("coefficient embeds");
                    out[v] = out[v].add(&c.mul(&ap));
                }
            }
        }
        AdditivePoly::from_p0_coeffs(a.ctx(), out)
    }

    /// self(x, a) as an additive polynomial in x, coefficients in a's field.
    pub fn fix_second(&self, a: &FieldElement) -> AdditivePoly {
        let tower = self.ctx.tower();
        let mut out = vec![a.ctx().zero(); self.c.len()];
        for (u, row) in self.c.iter().enumerate() {
            for (v, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    let c = tower.embed(val, a.ctx()).expect("coefficient embeds");
                    out[u] = out[u].add(&c.mul(&a.frobenius(v)));
                }
            }
        }
        AdditivePoly::from_p0_coeffs(a.ctx(), out)
    }
}

/// The pairing form attached to R (zero when e = 0):
/// f_R(x,y) = -sum_{i<e} [ sum_{j<e-i} (a_i x^(p^i) y)^(p^j) + (x R(y))^(p^i) ].
pub fn make_fr(r: &AdditivePoly, kappa: usize) -> Result<TwistedBiForm> {
    let a = r.p_coeffs(kappa)?;
    let e = a.len() - 1;
    let ctx = r.ctx().clone();
    let mut out = TwistedBiForm::zero(&ctx);
    for i in 0..e {
        for j in 0..(e - i) {
            let c = a[i].frobenius(kappa * j % ctx.deg()).neg();
            out.add_to((i + j) * kappa, j * kappa, &c);
        }
        for (k, ak) in a.iter().enumerate() {
            let c = ak.frobenius(kappa * i % ctx.deg()).neg();
            out.add_to(i * kappa, (i + k) * kappa, &c);
        }
    }
    Ok(out)
}

/// Coefficient-wise check of f_R^p - f_R = -x^(p^e) E_R(y) + x R(y) + y R(x).
pub fn verify_biform_identity(r: &AdditivePoly, kappa: usize) -> Result<bool> {
    let a = r.p_coeffs(kappa)?;
    let e = a.len() - 1;
    let ctx = r.ctx().clone();
    let fr = make_fr(r, kappa)?;
    let lhs = fr.frobenius_power(kappa).sub(&fr);
    let er = make_er(r, kappa)?;
    let mut rhs = TwistedBiForm::zero(&ctx);
    for (j, c) in er.p0_coeffs().iter().enumerate() {
        if !c.is_zero() {
            rhs.add_to(e * kappa, j, &c.neg());
        }
    }
    for (i, c) in r.p0_coeffs().iter().enumerate() {
        if !c.is_zero() {
            rhs.add_to(0, i, c);
            rhs.add_to(i, 0, c);
        }
    }
    Ok(lhs == rhs)
}

/// Check delta is reduced with all roots in F_p (p = p0^kappa) and
/// return nu with delta o nu = x^p - x.
pub fn validate_delta(delta: &AdditivePoly, kappa: usize) -> Result<AdditivePoly> {
    if delta.is_zero() || delta.coeff(0).is_zero() {
        return Err(Error::NotReduced);
    }
    let tower = delta.ctx().tower();
    if kappa % delta.ctx().deg() != 0 {
        return Err(Error::InvalidInput(
            "delta coefficients do not lie in F_p".into(),
        ));
    }
    let fp = tower.field(kappa)?;
    let (_, full) = delta.kernel(&fp)?;
    if !full {
        return Err(Error::RootsNotInFp);
    }
    let embedded: Vec<FieldElement> = delta
        .p0_coeffs()
        .iter()
        .map(|c| tower.embed(c, &fp))
        .collect::<Result<_>>()?;
    let delta_fp = AdditivePoly::from_p0_coeffs(&fp, embedded);
    AdditivePoly::frobenius_minus_id(&fp, kappa).inner_divide(&delta_fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;

    fn f3_r_cubic() -> (FieldTower, FieldCtx, AdditivePoly) {
        // R = x^3 - x over F_3
        let t = FieldTower::new(3).unwrap();
        let f3 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(-1), f3.one()]);
        (t, f3, r)
    }

    #[test]
    fn er_running_example() {
        let (_t, f3, r) = f3_r_cubic();
        let er = make_er(&r, 1).unwrap();
        // x^9 + x^3 + x
        assert_eq!(er.p0_coeffs(), &[f3.one(), f3.one(), f3.one()]);
    }

    #[test]
    fn er_char2_example() {
        // R = x^2 over F_2 -> E_R = x^4 + x
        let t = FieldTower::new(2).unwrap();
        let f2 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f2, 1, &[f2.zero(), f2.one()]);
        let er = make_er(&r, 1).unwrap();
        assert_eq!(er.p0_coeffs(), &[f2.one(), f2.zero(), f2.one()]);
    }

    #[test]
    fn er_linear_example() {
        // R = c x, e = 0 -> E_R = 2 c x
        let t = FieldTower::new(5).unwrap();
        let f5 = t.field(1).unwrap();
        let c = f5.from_int(3);
        let r = AdditivePoly::from_p_coeffs(&f5, 1, &[c.clone()]);
        let er = make_er(&r, 1).unwrap();
        assert_eq!(er.p0_coeffs(), &[c.scale(2)]);
    }

    #[test]
    fn fr_running_example() {
        let (_t, f3, r) = f3_r_cubic();
        let fr = make_fr(&r, 1).unwrap();
        // f_R(x,y) = 2 x y^3 + 2 x y
        assert_eq!(fr.coeff(0, 0), f3.from_int(2));
        assert_eq!(fr.coeff(0, 1), f3.from_int(2));
        assert_eq!(fr.coeff(1, 0), f3.zero());
        assert_eq!(fr.coeff(1, 1), f3.zero());
        let two = f3.from_int(2);
        assert_eq!(fr.eval(&two, &f3.one()), two.scale(2).add(&two.scale(2)));
    }

    #[test]
    fn fr_char2_example() {
        // R = x^2 over F_2 -> f_R(x,y) = x y^2
        let t = FieldTower::new(2).unwrap();
        let f2 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f2, 1, &[f2.zero(), f2.one()]);
        let fr = make_fr(&r, 1).unwrap();
        assert_eq!(fr.coeff(0, 1), f2.one());
        assert_eq!(fr.coeff(0, 0), f2.zero());
        assert_eq!(fr.coeff(1, 0), f2.zero());
    }

    #[test]
    fn fr_e0_is_zero() {
        let t = FieldTower::new(3).unwrap();
        let f3 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.one()]);
        assert!(make_fr(&r, 1).unwrap().is_zero());
    }

    #[test]
    fn biform_identity_examples() {
        let (_t, _f3, r) = f3_r_cubic();
        assert!(verify_biform_identity(&r, 1).unwrap());

        let t2 = FieldTower::new(2).unwrap();
        let f2 = t2.field(1).unwrap();
        let r2 = AdditivePoly::from_p_coeffs(&f2, 1, &[f2.zero(), f2.one()]);
        assert!(verify_biform_identity(&r2, 1).unwrap());

        // R = g x^9 + x^3 + x over F_9, p = 3
        let t3 = FieldTower::new(3).unwrap();
        let f9 = t3.field(2).unwrap();
        let g = f9.gen();
        let r3 = AdditivePoly::from_p_coeffs(&f9, 1, &[f9.one(), f9.one(), g]);
        assert!(verify_biform_identity(&r3, 1).unwrap());
    }

    #[test]
    fn compose_examples() {
        let (_t, f3, r) = f3_r_cubic();
        // (x^3 + 2x) o (x^3 - x) = x^9 + x^3 + x
        let g = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(2), f3.one()]);
        let er = make_er(&r, 1).unwrap();
        assert_eq!(g.compose(&r), er);
        assert_eq!(AdditivePoly::identity(&f3).compose(&r), r);

        let t2 = FieldTower::new(2).unwrap();
        let f2 = t2.field(1).unwrap();
        let sq = AdditivePoly::from_p0_coeffs(&f2, vec![f2.zero(), f2.one()]);
        let quad = sq.compose(&sq);
        assert_eq!(quad.p0_coeffs(), &[f2.zero(), f2.zero(), f2.one()]);
    }

    #[test]
    fn outer_divide_examples() {
        let (t, f3, r) = f3_r_cubic();
        let er = make_er(&r, 1).unwrap();
        let g = er.outer_divide(&r).unwrap();
        assert_eq!(g.p0_coeffs(), &[f3.from_int(2), f3.one()]);

        // x^9 - x = a o (x^3 - x); check both by recompose and pointwise
        let x9_minus_x = AdditivePoly::frobenius_minus_id(&f3, 2);
        let a = x9_minus_x.outer_divide(&r).unwrap();
        assert_eq!(a.compose(&r), x9_minus_x);
        let f27 = t.field(3).unwrap();
        for i in 0..27u128 {
            let x = f27.element_at(i);
            assert_eq!(a.eval(&r.eval(&x)), x9_minus_x.eval(&x));
        }

        assert_eq!(r.outer_divide(&r).unwrap(), AdditivePoly::identity(&f3));
        assert!(matches!(
            AdditivePoly::frobenius_minus_id(&f3, 1).outer_divide(&er),
            Err(Error::NoSuchFactor)
        ));
    }

    #[test]
    fn inner_divide_examples() {
        // y^4 + y = (y^2 + y) o (y^2 + y) over F_2
        let t = FieldTower::new(2).unwrap();
        let f2 = t.field(1).unwrap();
        let g = AdditivePoly::from_p0_coeffs(&f2, vec![f2.one(), f2.one()]);
        let h = AdditivePoly::from_p0_coeffs(&f2, vec![f2.one(), f2.zero(), f2.one()]);
        let nu = h.inner_divide(&g).unwrap();
        assert_eq!(nu, g);
        assert_eq!(h.inner_divide(&h).unwrap(), AdditivePoly::identity(&f2));

        let (_t, f3, r) = f3_r_cubic();
        let er = make_er(&r, 1).unwrap();
        let outer = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(2), f3.one()]);
        assert_eq!(er.inner_divide(&outer).unwrap(), r);
    }

    #[test]
    fn divide_round_trip_with_nontrivial_twist() {
        // coefficients outside the prime field exercise the Frobenius twists
        let t = FieldTower::new(3).unwrap();
        let f9 = t.field(2).unwrap();
        let g = f9.gen();
        let f = AdditivePoly::from_p0_coeffs(&f9, vec![g.clone(), f9.one()]);
        let outer = AdditivePoly::from_p0_coeffs(&f9, vec![f9.one(), g.add(&f9.one())]);
        let h = outer.compose(&f);
        assert_eq!(h.outer_divide(&f).unwrap(), outer);
        assert_eq!(h.inner_divide(&outer).unwrap(), f);
    }

    #[test]
    fn kernel_examples() {
        let (t, f3, r) = f3_r_cubic();
        let (basis, full) = r.kernel(&f3).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(full);

        let er = make_er(&r, 1).unwrap();
        let f9 = t.field(2).unwrap();
        let (basis, full) = er.kernel(&f9).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(!full);

        let f27 = t.field(3).unwrap();
        let (basis, full) = er.kernel(&f27).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(full);
        for b in &basis {
            assert!(er.eval(b).is_zero());
        }
    }

    #[test]
    fn splitting_degree_examples() {
        let (_t, f3, r) = f3_r_cubic();
        assert_eq!(r.splitting_degree(1).unwrap(), 1);
        let er = make_er(&r, 1).unwrap();
        assert_eq!(er.splitting_degree(1).unwrap(), 3);

        let t2 = FieldTower::new(2).unwrap();
        let f2 = t2.field(1).unwrap();
        let x4x = AdditivePoly::from_p0_coeffs(&f2, vec![f2.one(), f2.zero(), f2.one()]);
        assert_eq!(x4x.splitting_degree(1).unwrap(), 2);
        let _ = f3;
    }

    #[test]
    fn validate_delta_examples() {
        // delta = y^2 + y, p = 4 -> nu = y^2 + y
        let t = FieldTower::new(2).unwrap();
        let f2 = t.field(1).unwrap();
        let delta = AdditivePoly::from_p0_coeffs(&f2, vec![f2.one(), f2.one()]);
        let nu = validate_delta(&delta, 2).unwrap();
        let f4 = t.field(2).unwrap();
        assert_eq!(nu.ctx(), &f4);
        assert_eq!(nu.p0_coeffs(), &[f4.one(), f4.one()]);

        // delta = y^3 - y, p = 3 -> nu = identity
        let t3 = FieldTower::new(3).unwrap();
        let f3 = t3.field(1).unwrap();
        let delta = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(-1), f3.one()]);
        let nu = validate_delta(&delta, 1).unwrap();
        assert_eq!(nu, AdditivePoly::identity(&f3));

        // delta = y^3 + y over F_3: roots not in F_3
        let bad = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.one(), f3.one()]);
        assert!(matches!(validate_delta(&bad, 1), Err(Error::RootsNotInFp)));

        // constant term zero
        let unreduced = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.zero(), f3.one()]);
        assert!(matches!(validate_delta(&unreduced, 1), Err(Error::NotReduced)));
    }

    #[test]
    fn eval_matches_compose_on_samples() {
        let t = FieldTower::new(5).unwrap();
        let f5 = t.field(1).unwrap();
        let f25 = t.field(2).unwrap();
        let a = AdditivePoly::from_p0_coeffs(&f5, vec![f5.from_int(2), f5.one()]);
        let b = AdditivePoly::from_p0_coeffs(&f5, vec![f5.from_int(3), f5.from_int(4)]);
        let c = a.compose(&b);
        for i in 0..25u128 {
            let x = f25.element_at(i);
            assert_eq!(c.eval(&x), a.eval(&b.eval(&x)));
            // additivity
            let y = f25.element_at((i * 7 + 3) % 25);
            assert_eq!(a.eval(&x.add(&y)), a.eval(&x).add(&a.eval(&y)));
        }
    }

    #[test]
    fn dense_round_trip() {
        let (_t, f3, r) = f3_r_cubic();
        let d = r.to_dense();
        assert_eq!(d.degree(), Some(3));
        assert_eq!(AdditivePoly::from_dense(&d).unwrap(), r);
        let not_additive = DensePoly::from_coeffs(&f3, vec![f3.zero(), f3.zero(), f3.one()]);
        assert!(AdditivePoly::from_dense(&not_additive).is_err());
    }
}
