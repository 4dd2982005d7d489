//! Curve data for y^p - y = x R(x): the base field F_q, the
//! intermediate prime power p = p0^kappa, the additive polynomial R and
//! its derived kernel polynomial E_R and pairing form f_R.

use crate::addpoly::{make_er, make_fr, AdditivePoly, TwistedBiForm};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement, FieldTower};

#[derive(Clone)]
pub struct Curve {
    tower: FieldTower,
    f: usize,
    kappa: usize,
    fq: FieldCtx,
    fp: FieldCtx,
    r: AdditivePoly,
    e: usize,
    er: AdditivePoly,
    fr: TwistedBiForm,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "Curve(p0 {}, q {}^{}, p {}^{}, e {})",
            self.p0(),
            self.p0(),
            self.f,
            self.p0(),
            self.kappa,
            self.e
        )
    }
}

impl Curve {
    /// R must have coefficients in F_{p0^f}; kappa | f is required so
    /// that F_p sits inside F_q.
    pub fn new(tower: &FieldTower, f: usize, kappa: usize, r: AdditivePoly) -> Result<Curve> {
        if kappa == 0 || f % kappa != 0 {
            return Err(Error::InvalidInput(format!(
                "p = p0^{kappa} does not embed in q = p0^{f}"
            )));
        }
        let fq = tower.field(f)?;
        let fp = tower.field(kappa)?;
        if r.ctx() != &fq {
            return Err(Error::InvalidInput(
                "R coefficients are not in the base field".into(),
            ));
        }
        if r.is_zero() {
            return Err(Error::InvalidInput("R must be nonzero".into()));
        }
        let a = r.p_coeffs(kappa)?;
        let e = a.len() - 1;
        if tower.p0() == 2 && e == 0 {
            return Err(Error::HypothesisViolated(
                "(p0, e) = (2, 0) gives genus zero".into(),
            ));
        }
        let er = make_er(&r, kappa)?;
        let fr = make_fr(&r, kappa)?;
        Ok(Curve { tower: tower.clone(), f, kappa, fq, fp, r, e, er, fr })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn p0(&self) -> u64 {
        self.fq.p0()
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// s with q = p^s.
    pub fn s(&self) -> usize {
        self.f / self.kappa
    }

    pub fn q(&self) -> u128 {
        self.fq.order()
    }

    pub fn p(&self) -> u128 {
        (self.p0() as u128).pow(self.kappa as u32)
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn genus(&self) -> u128 {
        self.p().pow(self.e as u32) * (self.p() - 1) / 2
    }

    pub fn fq(&self) -> &FieldCtx {
        &self.fq
    }

    pub fn fp(&self) -> &FieldCtx {
        &self.fp
    }

    pub fn r(&self) -> &AdditivePoly {
        &self.r
    }

    pub fn er(&self) -> &AdditivePoly {
        &self.er
    }

    pub fn fr(&self) -> &TwistedBiForm {
        &self.fr
    }

    /// x R(x) at a point of any extension field.
    pub fn xr(&self, x: &FieldElement) -> FieldElement {
        x.mul(&self.r.eval(x))
    }

    /// p-coefficients a_0..a_e of R.
    pub fn p_coeffs(&self) -> Vec<FieldElement> {
        self.r.p_coeffs(self.kappa).expect("validated in new")
    }

    /// Is the point (x, y) on the affine curve y^p - y = x R(x)?
    pub fn on_curve(&self, x: &FieldElement, y: &FieldElement) -> bool {
        y.frobenius(self.kappa).sub(y).sub(&self.xr(x)).is_zero()
    }
}

/// x / 2 in odd characteristic.
pub fn half(x: &FieldElement) -> Result<FieldElement> {
    if x.ctx().p0() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok(x.mul(&x.ctx().from_int(2).inv()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_example() -> (FieldTower, Curve) {
        let t = FieldTower::new(3).unwrap();
        let f3 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(-1), f3.one()]);
        let c = Curve::new(&t, 1, 1, r).unwrap();
        (t, c)
    }

    #[test]
    fn running_example_invariants() {
        let (_t, c) = running_example();
        assert_eq!(c.e(), 1);
        assert_eq!(c.genus(), 3);
        assert_eq!(c.q(), 3);
        assert_eq!(c.p(), 3);
        assert_eq!(c.s(), 1);
    }

    #[test]
    fn genus_zero_rejected() {
        let t = FieldTower::new(2).unwrap();
        let f2 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f2, 1, &[f2.one()]);
        assert!(matches!(
            Curve::new(&t, 1, 1, r),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn kappa_must_divide_f() {
        let t = FieldTower::new(3).unwrap();
        let f27 = t.field(3).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f27, 2, &[f27.one(), f27.one()]);
        assert!(Curve::new(&t, 3, 2, r).is_err());
    }

    #[test]
    fn on_curve_points() {
        let (t, c) = running_example();
        let f3 = t.field(1).unwrap();
        // x R(x) = x^4 - x^2 vanishes on F_3, so every (x, y) with y in F_3 works
        for x in f3.elements() {
            for y in f3.elements() {
                assert!(c.on_curve(&x, &y));
            }
        }
        let f9 = t.field(2).unwrap();
        let g = f9.gen();
        // x = g: x R(x) = g(g^3 - g) = g(-g - g) = -2g^2 = g^2 = -1 = 2, trace-free?
        let lhs = c.xr(&g);
        assert_eq!(lhs, f9.from_int(2));
    }
}
