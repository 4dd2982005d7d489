//! Gauss sums tau_xi for the characters of A_R: the Frobenius descent
//! table, the direct character sum, the closed form through the
//! quadratic Gauss sum, and the integer route for characteristic 2.

use crate::addpoly::AdditivePoly;
use crate::curve::{half, Curve};
use crate::cyclo::{conj_norm, Cyc};
use crate::error::{Error, Result};
use crate::gf::{quadratic_character, FieldElement};
use crate::heis::{
    char_ring, is_member, lift_to_ar, ArGroup, CentralChar, Character, HeisPoint,
    IsotropicSubspace,
};
use crate::linalg::FpMat;

/// The descent data: a(x) with x^q - x = a o F_R, and per t in F_q the
/// pair (a(t), b(t)) in A_R.
pub struct FrobeniusDescent {
    pub a_poly: AdditivePoly,
    /// (t, a(t), b(t)), with t running over F_q in index order.
    pub table: Vec<(FieldElement, FieldElement, FieldElement)>,
}

pub fn build_descent(c: &Curve, iso: &IsotropicSubspace) -> Result<FrobeniusDescent> {
    let fq = c.fq().clone();
    let tower = c.tower().clone();
    let a_poly = AdditivePoly::frobenius_minus_id(&fq, c.f()).outer_divide(&iso.f_a)?;

    // roots of F_R(x) = t always live in F_{q^{p0}}
    let ambient = tower.field(c.f() * c.p0() as usize)?;
    let mat = iso.f_a.matrix_on(&ambient)?;
    let (kernel_basis, _) = iso.f_a.kernel(&ambient)?;
    let kappa = c.kappa();
    let s = c.s();
    let f = c.f();

    let b_of = |x: &FieldElement| -> FieldElement {
        let mut acc = ambient.zero();
        let xr = c.xr(x);
        for i in 0..s {
            acc = acc.add(&xr.frobenius(kappa * i));
        }
        acc.sub(&c.fr().eval(x, &x.frobenius(f).sub(x)))
    };

    let mut table = Vec::with_capacity(fq.order() as usize);
    for t in fq.elements() {
        let rhs = tower.embed(&t, &ambient)?;
        let sol = mat.solve(rhs.coords());
        let x = match sol.particular {
            Some(v) => ambient
                .from_coords(&v.iter().map(|&c| c as i64).collect::<Vec<_>>())?,
            None => return Err(Error::NoRoot),
        };
        let bt = b_of(&x);
        // root independence
        if let Some(alpha) = kernel_basis.iter().find(|k| !k.is_zero()) {
            let bt2 = b_of(&x.add(alpha));
            if bt2 != bt {
                return Err(Error::Internal("b(x,t) depends on the root choice".into()));
            }
        }
        let at = a_poly.eval(&t);
        let bt = tower.project(&bt, &fq)?;
        let h = HeisPoint { a: at.clone(), b: bt.clone() };
        if !is_member(c, &h) {
            return Err(Error::Internal("descent pair left the group".into()));
        }
        table.push((t, at, bt));
    }
    Ok(FrobeniusDescent { a_poly, table })
}

/// tau_xi = - sum over t of xi(a(t), b(t)).
pub fn tau_via_sum(gr: &ArGroup, xi: &Character, descent: &FrobeniusDescent) -> Result<Cyc> {
    let n = xi.ring;
    let mut acc = Cyc::zero(n);
    for (_, at, bt) in &descent.table {
        let h = HeisPoint { a: at.clone(), b: bt.clone() };
        acc = acc.add(&xi.eval(gr, &h)?);
    }
    Ok(acc.neg())
}

fn zeta_exponent(v: &Cyc, n: u64) -> Result<u64> {
    (0..n)
        .find(|&k| *v == Cyc::zeta_pow(n, k as i64))
        .ok_or(Error::NotACharacter)
}

/// The unique eta in F_q with xi(a(t), f_R(a(t),a(t))/2) = psi_Fq(eta t).
pub fn eta_of_xi(
    c: &Curve,
    gr: &ArGroup,
    psi: &CentralChar,
    xi: &Character,
    descent: &FrobeniusDescent,
) -> Result<FieldElement> {
    if c.p0() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let fq = c.fq().clone();
    let tower = c.tower().clone();
    let p0 = c.p0();
    let m = fq.deg();
    let fp0 = tower.field(1)?;
    let c_embedded = tower.embed(&psi.c, &fq)?;

    let xi_prime = |t: &FieldElement| -> Result<Cyc> {
        let at = descent.a_poly.eval(t);
        let h = lift_to_ar(c, &at)?;
        xi.eval(gr, &h)
    };

    // match on the power basis of F_q over F_p0
    let mut mat = FpMat::zeros(p0, m, m);
    let mut rhs = vec![0u64; m];
    for i in 0..m {
        let ei = fq.basis_element(i);
        rhs[i] = zeta_exponent(&xi_prime(&ei)?, p0)?;
        for j in 0..m {
            let tr = tower.trace(&c_embedded.mul(&ei).mul(&fq.basis_element(j)), &fp0)?;
            mat.set(i, j, tr.coords().first().copied().unwrap_or(0));
        }
    }
    let sol = mat.solve(&rhs);
    let Some(coords) = sol.particular else {
        return Err(Error::NotACharacter);
    };
    let eta = fq.from_coords(&coords.iter().map(|&v| v as i64).collect::<Vec<_>>())?;
    // verify on all of F_q
    for t in fq.elements() {
        if xi_prime(&t)? != psi.eval_trace(c, &eta.mul(&t))? {
            return Err(Error::NotACharacter);
        }
    }
    Ok(eta)
}

/// G_psi = sum over x in F_q of psi_Fq(x^2), odd characteristic.
pub fn gauss_sum_g(c: &Curve, psi: &CentralChar) -> Result<Cyc> {
    if c.p0() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let n = char_ring(c.p0());
    let mut acc = Cyc::zero(n);
    for x in c.fq().elements() {
        acc = acc.add(&psi.eval_trace(c, &x.mul(&x))?);
    }
    if conj_norm(&acc)? != c.q() as i128 {
        return Err(Error::NormMismatch("G_psi norm is not q".into()));
    }
    Ok(acc)
}

/// tau_xi = -psi_Fq(-eta^2 / (4 c_A)) (c_A / q) G_psi.
pub fn tau_closed_form(
    c: &Curve,
    psi: &CentralChar,
    eta: &FieldElement,
    c_a: &FieldElement,
) -> Result<Cyc> {
    let g = gauss_sum_g(c, psi)?;
    let arg = eta.mul(eta).div(&c_a.scale(4)).neg();
    let chi = quadratic_character(c_a)?;
    if chi == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(psi.eval_trace(c, &arg)?.mul(&g).scale(chi as i128).neg())
}

/// Characteristic-2 route: tau = a_psi / p^e with
/// a_psi = - sum over x in F_q of psi_Fq(x R(x)); requires H_R rational
/// over F_q so Frobenius acts as the scalar tau.
pub fn tau_via_schur(c: &Curve, psi: &CentralChar, hr_rational: bool) -> Result<Cyc> {
    if !hr_rational {
        return Err(Error::HypothesisViolated(
            "H_R is not rational over F_q".into(),
        ));
    }
    let mut a_psi: i128 = 0;
    for x in c.fq().elements() {
        let v = psi.eval_trace(c, &c.xr(&x))?;
        a_psi -= v.as_int().ok_or(Error::Internal("psi value not rational".into()))?;
    }
    let pe = (c.p() as i128).pow(c.e() as u32);
    if a_psi % pe != 0 {
        return Err(Error::NonIntegral);
    }
    let tau = a_psi / pe;
    if tau * tau != c.q() as i128 {
        return Err(Error::HypothesisViolated(
            "tau^2 = q fails; hypotheses of the integer route are violated".into(),
        ));
    }
    Ok(Cyc::from_int(char_ring(c.p0()), tau))
}

#[derive(Debug, Clone)]
pub struct RootOfUnityReport {
    /// tau^(4 p0) = q^(2 p0)
    pub fourth_power_ok: bool,
    /// tau^(2 p0) = -q^(p0); only when f is odd and p0 != 1 mod 4
    pub half_power_neg: Option<bool>,
}

pub fn check_root_of_unity(tau: &Cyc, q: i128, p0: u64, f_odd: bool) -> RootOfUnityReport {
    let fourth = tau.pow(4 * p0);
    let fourth_power_ok = fourth.as_int() == Some(q.pow(2 * p0 as u32));
    let half_power_neg = if f_odd && p0 % 4 != 1 {
        let h = tau.pow(2 * p0);
        Some(h.as_int() == Some(-q.pow(p0 as u32)))
    } else {
        None
    };
    RootOfUnityReport { fourth_power_ok, half_power_neg }
}

/// b(t) - f_R(a(t), a(t))/2 = Tr_{F_q/F_p}(c_A t^2) for all t.
pub fn check_quadratic_twist(
    c: &Curve,
    descent: &FrobeniusDescent,
    c_a: &FieldElement,
) -> Result<bool> {
    let tower = c.tower().clone();
    for (t, at, bt) in &descent.table {
        let lhs = bt.sub(&half(&c.fr().eval(at, at))?);
        let rhs = tower.embed(
            &tower.trace(&c_a.mul(t).mul(t), c.fp())?,
            c.fq(),
        )?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// -sum over x in F_{q^n} of psi(Tr(x R(x))): the twisted power sum
/// S_n^(psi), also the right side of the tau sum rule at n = 1.
pub fn twisted_sum(c: &Curve, psi: &CentralChar, n: usize) -> Result<Cyc> {
    let ring = char_ring(c.p0());
    let counts = crate::lfunc::trace_distribution(c, n)?;
    let mut acc = Cyc::zero(ring);
    for (b, cnt) in c.fp().elements().zip(&counts) {
        acc = acc.add(&psi.eval(c, &b)?.scale(*cnt as i128));
    }
    Ok(acc.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;
    use crate::heis::{characters_extending, maximal_isotropic_rational};

    fn running_setup() -> (FieldTower, Curve, IsotropicSubspace, ArGroup) {
        let t = FieldTower::new(3).unwrap();
        let f3 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(-1), f3.one()]);
        let c = Curve::new(&t, 1, 1, r).unwrap();
        let iso = maximal_isotropic_rational(&c).unwrap();
        let gr = ArGroup::new(&c, &iso).unwrap();
        (t, c, iso, gr)
    }

    #[test]
    fn descent_running_example() {
        let (t, c, iso, _gr) = running_setup();
        let f3 = t.field(1).unwrap();
        let d = build_descent(&c, &iso).unwrap();
        assert_eq!(d.a_poly, AdditivePoly::identity(&f3));
        for (tt, at, bt) in &d.table {
            assert_eq!(at, tt);
            assert!(bt.is_zero());
        }
        assert!(d.table[0].1.is_zero() && d.table[0].2.is_zero());
    }

    #[test]
    fn descent_f5_example() {
        let t = FieldTower::new(5).unwrap();
        let f5 = t.field(1).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f5, 1, &[f5.from_int(-1), f5.one()]);
        let c = Curve::new(&t, 1, 1, r).unwrap();
        let iso = maximal_isotropic_rational(&c).unwrap();
        let d = build_descent(&c, &iso).unwrap();
        assert_eq!(d.a_poly, AdditivePoly::identity(&f5));
        assert_eq!(d.table.len(), 5);
    }

    fn xi_key(gr: &ArGroup, xi: &Character, h: &HeisPoint) -> u64 {
        zeta_exponent(&xi.eval(gr, h).unwrap(), xi.ring).unwrap()
    }

    #[test]
    fn tau_and_eta_running_example() {
        let (t, c, iso, gr) = running_setup();
        let f3 = t.field(1).unwrap();
        let d = build_descent(&c, &iso).unwrap();
        let psi = &CentralChar::all_nontrivial(&c)[0]; // psi(1) = zeta
        let xis = characters_extending(&c, &gr, psi).unwrap();
        let h10 = HeisPoint { a: f3.one(), b: f3.zero() };

        let zeta_minus_1 = Cyc::zeta_pow(3, 1).sub(&Cyc::one(3));
        let minus_1_plus_2zeta = Cyc::one(3).add(&Cyc::zeta_pow(3, 1).scale(2)).neg();

        for xi in &xis {
            let tau = tau_via_sum(&gr, xi, &d).unwrap();
            let eta = eta_of_xi(&c, &gr, psi, xi, &d).unwrap();
            match xi_key(&gr, xi, &h10) {
                0 => {
                    assert_eq!(tau, zeta_minus_1);
                    assert_eq!(eta, f3.from_int(2));
                }
                1 => {
                    assert_eq!(tau, minus_1_plus_2zeta);
                    assert!(eta.is_zero());
                }
                2 => {
                    assert_eq!(tau, zeta_minus_1);
                    assert_eq!(eta, f3.one());
                }
                _ => unreachable!(),
            }
            assert_eq!(conj_norm(&tau).unwrap(), 3);
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let (_t, c, _iso, _gr) = running_setup();
        let psi = &CentralChar::all_nontrivial(&c)[0];
        let g = gauss_sum_g(&c, psi).unwrap();
        assert_eq!(g, Cyc::one(3).add(&Cyc::zeta_pow(3, 1).scale(2)));

        let t5 = FieldTower::new(5).unwrap();
        let f5 = t5.field(1).unwrap();
        let r5 = AdditivePoly::from_p_coeffs(&f5, 1, &[f5.from_int(-1), f5.one()]);
        let c5 = Curve::new(&t5, 1, 1, r5).unwrap();
        let psi5 = &CentralChar::all_nontrivial(&c5)[0];
        let g5 = gauss_sum_g(&c5, psi5).unwrap();
        let expect = Cyc::one(5)
            .add(&Cyc::zeta_pow(5, 1).scale(2))
            .add(&Cyc::zeta_pow(5, 4).scale(2));
        assert_eq!(g5, expect);

        // q = 9: only the norm identity
        let t9 = FieldTower::new(3).unwrap();
        let f9 = t9.field(2).unwrap();
        let r9 = AdditivePoly::from_p_coeffs(&f9, 1, &[f9.from_int(-1), f9.one()]);
        let c9 = Curve::new(&t9, 2, 1, r9).unwrap();
        let psi9 = &CentralChar::all_nontrivial(&c9)[0];
        let g9 = gauss_sum_g(&c9, psi9).unwrap();
        assert_eq!(conj_norm(&g9).unwrap(), 9);
    }

    #[test]
    fn closed_form_matches_sum() {
        let (t, c, iso, gr) = running_setup();
        let f3 = t.field(1).unwrap();
        let d = build_descent(&c, &iso).unwrap();
        let chain = crate::quotient::iterate_to_ca(&c, &iso).unwrap();
        assert_eq!(chain.c_a, f3.one());
        for psi in &CentralChar::all_nontrivial(&c) {
            for xi in &characters_extending(&c, &gr, psi).unwrap() {
                let tau = tau_via_sum(&gr, xi, &d).unwrap();
                let eta = eta_of_xi(&c, &gr, psi, xi, &d).unwrap();
                let tau2 = tau_closed_form(&c, psi, &eta, &chain.c_a).unwrap();
                assert_eq!(tau, tau2);
            }
        }
    }

    #[test]
    fn schur_route_examples() {
        let t = FieldTower::new(2).unwrap();
        let f4 = t.field(2).unwrap();
        let r = AdditivePoly::from_p_coeffs(&f4, 1, &[f4.zero(), f4.one()]);
        let c = Curve::new(&t, 2, 1, r).unwrap();
        let psi = &CentralChar::all_nontrivial(&c)[0];
        let tau = tau_via_schur(&c, psi, true).unwrap();
        assert_eq!(tau, Cyc::from_int(4, -2));

        // f odd can never produce an integral tau with tau^2 = q
        let f2 = t.field(1).unwrap();
        let r2 = AdditivePoly::from_p_coeffs(&f2, 1, &[f2.zero(), f2.one()]);
        let c2 = Curve::new(&t, 1, 1, r2).unwrap();
        let psi2 = &CentralChar::all_nontrivial(&c2)[0];
        assert!(tau_via_schur(&c2, psi2, true).is_err());
        assert!(matches!(
            tau_via_schur(&c, psi, false),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn root_of_unity_examples() {
        let zeta_minus_1 = Cyc::zeta_pow(3, 1).sub(&Cyc::one(3));
        let rep = check_root_of_unity(&zeta_minus_1, 3, 3, true);
        assert!(rep.fourth_power_ok);
        assert_eq!(rep.half_power_neg, Some(true));
        // tau^6 = -27 directly
        assert_eq!(zeta_minus_1.pow(6).as_int(), Some(-27));

        let tau2 = Cyc::one(3).add(&Cyc::zeta_pow(3, 1).scale(2)).neg();
        assert_eq!(tau2.pow(6).as_int(), Some(-27));

        let rep2 = check_root_of_unity(&Cyc::from_int(4, -2), 4, 2, false);
        assert!(rep2.fourth_power_ok);
        assert_eq!(rep2.half_power_neg, None);
    }

    #[test]
    fn quadratic_twist_identity() {
        let (t, c, iso, _gr) = running_setup();
        let f3 = t.field(1).unwrap();
        let d = build_descent(&c, &iso).unwrap();
        assert!(check_quadratic_twist(&c, &d, &f3.one()).unwrap());
    }

    #[test]
    fn sum_rule_running_example() {
        let (_t, c, iso, gr) = running_setup();
        let d = build_descent(&c, &iso).unwrap();
        for psi in &CentralChar::all_nontrivial(&c) {
            let mut total = Cyc::zero(3);
            for xi in &characters_extending(&c, &gr, psi).unwrap() {
                total = total.add(&tau_via_sum(&gr, xi, &d).unwrap());
            }
            assert_eq!(total, twisted_sum(&c, psi, 1).unwrap());
        }
    }
}
