//! Pipeline orchestration and deterministic JSON reports: validate the
//! curve, find the isotropic subspace, run the quotient chain, build
//! the tau table, assemble the L-polynomial by every applicable route,
//! and classify. JSON objects use sorted keys and two-space indent.

use crate::addpoly::{verify_biform_identity, AdditivePoly};
use crate::curve::Curve;
use crate::cyclo::{power_sums_from_lpoly, Cyc, CycPoly};
use crate::error::{Error, Result};
use crate::gauss::{
    build_descent, check_root_of_unity, check_quadratic_twist, eta_of_xi, tau_closed_form,
    tau_via_schur, tau_via_sum, twisted_sum,
};
use crate::gf::{FieldElement, FieldTower};
use crate::heis::{
    char_ring, characters_extending, isotropic_from_fa, maximal_isotropic_rational,
    omega_nondegenerate, validate_assumptions, vr_space, ArGroup, AssumptionReport, CentralChar,
    Character, IsotropicSubspace,
};
use crate::lfunc::{
    check_functional_equation, classify, count_points_jobs, delta_curve_lpoly, lpoly_from_taus,
    lpoly_oracle_jobs, lpoly_product, psi_part_lpoly, DeltaCurve, Verdicts,
};
use crate::quotient::{closed_form_ca, iterate_to_ca, CaComparison, QuotientChain};
use serde_json::{json, Value};

pub const SCHEMA: &str = "vdgv-report/1";

/// Self-verification suites refuse direct enumerations beyond this many
/// elements, independently of the hard size guard.
pub const ENUM_CAP: u128 = 1 << 24;

pub struct TauEntry {
    pub psi: CentralChar,
    pub xi: Character,
    pub tau: Cyc,
    pub eta: Option<FieldElement>,
    pub closed_form_ok: Option<bool>,
    pub schur_ok: Option<bool>,
    pub rou_4p0_ok: bool,
    pub rou_2p0_neg: Option<bool>,
}

pub struct Analysis {
    pub assumptions: AssumptionReport,
    pub iso: IsotropicSubspace,
    pub chain: Option<QuotientChain>,
    pub ca_cmp: Option<CaComparison>,
    pub taus: Vec<TauEntry>,
    pub lpoly: Vec<i128>,
    pub l_oracle: Option<Vec<i128>>,
    pub psi_factors: Vec<(CentralChar, Option<CycPoly>)>,
    pub verdicts: Verdicts,
    pub delta: Option<DeltaCurve>,
}

fn guard_skip<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeGuardExceeded(..)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn analyze(
    c: &Curve,
    fa_override: Option<&AdditivePoly>,
    delta: Option<&AdditivePoly>,
    max_n: usize,
    jobs: usize,
) -> Result<Analysis> {
    let assumptions = validate_assumptions(c)?;
    if !assumptions.isotropic_found || !assumptions.ar_rational {
        return Err(Error::HypothesisViolated(
            "A_R is not rational over F_q".into(),
        ));
    }
    let iso = match fa_override {
        Some(fa) => isotropic_from_fa(c, fa)?,
        None => maximal_isotropic_rational(c)?,
    };
    let gr = ArGroup::new(c, &iso)?;
    let descent = build_descent(c, &iso)?;

    let (chain, ca_cmp) = if c.p0() == 2 {
        (None, None)
    } else {
        let chain = iterate_to_ca(c, &iso)?;
        let cmp = closed_form_ca(c, &iso, &chain)?;
        if !cmp.lemma_agrees {
            return Err(Error::OracleMismatch(
                "closed-form c_A disagrees with the constructive value".into(),
            ));
        }
        if !check_quadratic_twist(c, &descent, &chain.c_a)? {
            return Err(Error::OracleMismatch(
                "descent pairs fail b(t) - f(a,a)/2 = Tr(c_A t^2)".into(),
            ));
        }
        (Some(chain), Some(cmp))
    };

    let ring = char_ring(c.p0());
    let schur = if c.p0() == 2 && assumptions.hr_rational {
        Some(tau_via_schur(c, &CentralChar::all_nontrivial(c)[0], true)?)
    } else {
        None
    };
    let mut taus = Vec::new();
    let mut psi_factors = Vec::new();
    for psi in CentralChar::all_nontrivial(c) {
        let xis = characters_extending(c, &gr, &psi)?;
        let mut psi_taus = Vec::new();
        for xi in xis {
            let tau = tau_via_sum(&gr, &xi, &descent)?;
            let (eta, closed_form_ok) = if c.p0() == 2 {
                (None, None)
            } else {
                let eta = eta_of_xi(c, &gr, &psi, &xi, &descent)?;
                let chain = chain.as_ref().expect("odd characteristic");
                let closed = tau_closed_form(c, &psi, &eta, &chain.c_a)?;
                (Some(eta), Some(closed == tau))
            };
            let schur_ok = schur.as_ref().map(|s| *s == tau);
            let rou = check_root_of_unity(&tau, c.q() as i128, c.p0(), c.f() % 2 == 1);
            psi_taus.push(tau.clone());
            taus.push(TauEntry {
                psi: psi.clone(),
                xi,
                tau,
                eta,
                closed_form_ok,
                schur_ok,
                rou_4p0_ok: rou.fourth_power_ok,
                rou_2p0_neg: rou.half_power_neg,
            });
        }
        // sum rule over the extensions of this psi
        let mut total = Cyc::zero(ring);
        for t in &psi_taus {
            total = total.add(t);
        }
        if total != twisted_sum(c, &psi, 1)? {
            return Err(Error::OracleMismatch(
                "tau sum rule fails against the direct character sum".into(),
            ));
        }
        // per-psi factor from twisted power sums, when enumerable
        let pe = (c.p() as u32).pow(c.e() as u32);
        let factor = if c.q().checked_pow(pe).map_or(false, |o| o <= ENUM_CAP) {
            guard_skip(psi_part_lpoly(c, &psi))?
        } else {
            None
        };
        if let Some(ref fpoly) = factor {
            if *fpoly != lpoly_from_taus(ring, &psi_taus) {
                return Err(Error::OracleMismatch(
                    "psi-factor from twisted sums disagrees with the tau product".into(),
                ));
            }
        }
        psi_factors.push((psi, factor));
    }

    for e in &taus {
        if e.closed_form_ok == Some(false)
            || e.schur_ok == Some(false)
            || !e.rou_4p0_ok
            || e.rou_2p0_neg == Some(false)
        {
            return Err(Error::OracleMismatch("tau cross-checks failed".into()));
        }
    }

    let all_taus: Vec<Cyc> = taus.iter().map(|e| e.tau.clone()).collect();
    let lpoly = lpoly_from_taus(ring, &all_taus).to_int_coeffs()?;
    if !check_functional_equation(&lpoly, c.q() as i128, c.genus() as usize) {
        return Err(Error::OracleMismatch(
            "functional equation fails on the tau product".into(),
        ));
    }
    let factors: Option<Vec<CycPoly>> = psi_factors
        .iter()
        .map(|(_, f)| f.clone())
        .collect();
    if let Some(fs) = factors {
        if lpoly_product(&fs)? != lpoly {
            return Err(Error::OracleMismatch(
                "psi-factor product disagrees with the tau product".into(),
            ));
        }
    }
    let oracle_feasible = c
        .q()
        .checked_pow(2 * c.genus() as u32)
        .map_or(false, |o| o <= ENUM_CAP);
    let l_oracle = if oracle_feasible {
        guard_skip(lpoly_oracle_jobs(c, jobs))?
    } else {
        None
    };
    if let Some(ref lo) = l_oracle {
        if *lo != lpoly {
            return Err(Error::OracleMismatch(
                "point-count oracle disagrees with the tau product".into(),
            ));
        }
    }

    let verdicts = classify(c, &lpoly, Some(&all_taus), assumptions.hr_rational, max_n);
    let delta = delta.map(|d| delta_curve_lpoly(c, d)).transpose()?;
    Ok(Analysis {
        assumptions,
        iso,
        chain,
        ca_cmp,
        taus,
        lpoly,
        l_oracle,
        psi_factors,
        verdicts,
        delta,
    })
}

// ---------- JSON encoding ----------

pub fn fe_json(x: &FieldElement) -> Value {
    json!(x.coords())
}

pub fn cyc_json(v: &Cyc) -> Value {
    json!({ "coords": v.c.iter().map(|&x| x as i64).collect::<Vec<_>>(), "order": v.n })
}

fn cycpoly_json(p: &CycPoly) -> Value {
    json!(p.coeffs.iter().map(cyc_json).collect::<Vec<_>>())
}

fn ints_json(l: &[i128]) -> Value {
    json!(l.iter().map(|&v| v as i64).collect::<Vec<_>>())
}

pub fn curve_json(c: &Curve) -> Value {
    json!({
        "p0": c.p0(),
        "f": c.f(),
        "p": c.p() as u64,
        "q": c.q() as u64,
        "e": c.e(),
        "genus": c.genus() as u64,
        "r_p_coeffs": c.p_coeffs().iter().map(fe_json).collect::<Vec<_>>(),
    })
}

fn verdicts_json(v: &Verdicts) -> Value {
    json!({
        "supersingular": v.supersingular,
        "maximal_at": v.maximal_at,
        "minimal_at": v.minimal_at,
        "minimal_over_q_4p0": v.minimal_4p0,
        "maximal_over_q_2p0": v.maximal_2p0,
        "minimal_over_q_2": v.minimal_2,
        "tau_route_agrees": v.tau_route_agrees,
    })
}

pub fn analysis_json(c: &Curve, a: &Analysis, max_n: usize) -> Value {
    let quotient = match (&a.chain, &a.ca_cmp) {
        (Some(chain), Some(cmp)) => json!({
            "c_a": fe_json(&chain.c_a),
            "steps": chain.steps.iter().map(|s| json!({
                "a": fe_json(&s.a),
                "b": fe_json(&s.b),
                "u_p_coeffs": s.u.p_coeffs(c.kappa()).ok()
                    .map(|cs| cs.iter().map(fe_json).collect::<Vec<_>>()),
                "r1_p0_coeffs": s.r1.p0_coeffs().iter().map(fe_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "lemma_value": fe_json(&cmp.lemma_value),
            "lemma_agrees": cmp.lemma_agrees,
            "display_value": fe_json(&cmp.display_value),
            "display_agrees": cmp.display_agrees,
        }),
        _ => Value::Null,
    };
    let taus: Vec<Value> = a
        .taus
        .iter()
        .map(|e| {
            json!({
                "psi": fe_json(&e.psi.c),
                "xi_exponents": e.xi.zeta_exponents,
                "tau": cyc_json(&e.tau),
                "eta": e.eta.as_ref().map(fe_json),
                "closed_form_ok": e.closed_form_ok,
                "schur_ok": e.schur_ok,
                "rou_4p0_ok": e.rou_4p0_ok,
                "rou_2p0_neg": e.rou_2p0_neg,
            })
        })
        .collect();
    let bound_n = max_n.max(4 * c.p0() as usize);
    let sums = power_sums_from_lpoly(&a.lpoly, bound_n);
    let counts: Vec<Value> = (1..=bound_n)
        .map(|n| {
            let nn = (c.q() as i128).pow(n as u32) + 1 - sums[n - 1];
            json!({ "n": n, "N": nn as i64 })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "curve": curve_json(c),
        "assumptions": {
            "isotropic_found": a.assumptions.isotropic_found,
            "ar_rational": a.assumptions.ar_rational,
            "hr_rational": a.assumptions.hr_rational,
        },
        "isotropic": {
            "basis": a.iso.basis.iter().map(fe_json).collect::<Vec<_>>(),
            "fa_p0_coeffs": a.iso.f_a.p0_coeffs().iter().map(fe_json).collect::<Vec<_>>(),
        },
        "quotient": quotient,
        "taus": taus,
        "lpoly": {
            "product": ints_json(&a.lpoly),
            "oracle": a.l_oracle.as_ref().map(|l| ints_json(l)),
            "psi_factors": a.psi_factors.iter().map(|(psi, f)| json!({
                "psi": fe_json(&psi.c),
                "coeffs": f.as_ref().map(cycpoly_json),
            })).collect::<Vec<_>>(),
        },
        "verdicts": verdicts_json(&a.verdicts),
        "delta": a.delta.as_ref().map(|d| json!({
            "nu_p0_coeffs": d.nu.p0_coeffs().iter().map(fe_json).collect::<Vec<_>>(),
            "psis": d.psis.iter().map(|p| fe_json(&p.c)).collect::<Vec<_>>(),
            "lpoly": ints_json(&d.lpoly),
            "confirmed_counts": d.confirmed_counts.iter()
                .map(|&(n, nn)| json!({ "n": n, "N": nn as u64 }))
                .collect::<Vec<_>>(),
        })),
        "counts": counts,
    })
}

// ---------- verification suites ----------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail(String),
    Skip(String),
}

pub struct SuiteResult {
    pub name: &'static str,
    pub status: SuiteStatus,
}

fn suite<F: FnOnce() -> Result<SuiteStatus>>(name: &'static str, f: F) -> SuiteResult {
    let status = match f() {
        Ok(s) => s,
        Err(Error::SizeGuardExceeded(m)) => SuiteStatus::Skip(m),
        Err(e) => SuiteStatus::Fail(e.to_string()),
    };
    SuiteResult { name, status }
}

fn pass_if(ok: bool, detail: &str) -> SuiteStatus {
    if ok {
        SuiteStatus::Pass
    } else {
        SuiteStatus::Fail(detail.into())
    }
}

/// Run every invariant suite that applies to this curve.
pub fn verify_curve(c: &Curve, max_n: usize, jobs: usize) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    out.push(suite("biform_identity", || {
        Ok(pass_if(
            verify_biform_identity(c.r(), c.kappa())?,
            "f_R^p - f_R does not match",
        ))
    }));
    out.push(suite("omega_nondegenerate", || {
        let vr = vr_space(c)?;
        Ok(pass_if(
            omega_nondegenerate(c, &vr)?,
            "omega has a radical vector",
        ))
    }));

    let analysis = match analyze(c, None, None, max_n, jobs) {
        Ok(a) => a,
        Err(e) => {
            out.push(SuiteResult {
                name: "pipeline",
                status: SuiteStatus::Fail(e.to_string()),
            });
            return out;
        }
    };
    out.push(SuiteResult { name: "pipeline", status: SuiteStatus::Pass });

    out.push(suite("center_and_orders", || {
        let gr = ArGroup::new(c, &analysis.iso)?;
        let bound = if c.p0() == 2 { 4 } else { c.p0() };
        for h in &gr.elements {
            if bound % crate::heis::element_order(c, h)? != 0 {
                return Ok(SuiteStatus::Fail("element order exceeds the bound".into()));
            }
        }
        // the center of the full group H_R is {0} x F_p
        let vr = vr_space(c)?;
        let hr = crate::heis::enumerate_hr(c, &vr.ambient)?;
        let mut centrals = 0u128;
        for h in &hr {
            let central = hr
                .iter()
                .all(|k| {
                    crate::heis::multiply(c, h, k).unwrap()
                        == crate::heis::multiply(c, k, h).unwrap()
                });
            if central {
                if !h.a.is_zero() || !h.b.in_subfield(c.kappa()) {
                    return Ok(SuiteStatus::Fail("central element outside {0} x F_p".into()));
                }
                centrals += 1;
            }
        }
        Ok(pass_if(centrals == c.p(), "center is not {0} x F_p"))
    }));

    if c.p0() != 2 {
        out.push(suite("quotient_chain", || {
            // iterate_to_ca certifies the step and chain identities itself
            let cmp = analysis.ca_cmp.as_ref().expect("odd characteristic");
            Ok(pass_if(cmp.lemma_agrees, "closed-form c_A disagrees"))
        }));
        out.push(suite("quadratic_twist", || {
            let descent = build_descent(c, &analysis.iso)?;
            let chain = analysis.chain.as_ref().expect("odd characteristic");
            Ok(pass_if(
                check_quadratic_twist(c, &descent, &chain.c_a)?,
                "Tr(c_A t^2) identity fails",
            ))
        }));
        out.push(suite("tau_closed_form", || {
            Ok(pass_if(
                analysis.taus.iter().all(|e| e.closed_form_ok == Some(true)),
                "closed form disagrees with the direct sum",
            ))
        }));
    } else {
        out.push(SuiteResult {
            name: "quotient_chain",
            status: SuiteStatus::Skip("odd characteristic only".into()),
        });
        out.push(SuiteResult {
            name: "quadratic_twist",
            status: SuiteStatus::Skip("odd characteristic only".into()),
        });
        out.push(suite("tau_schur", || {
            if !analysis.assumptions.hr_rational {
                return Ok(SuiteStatus::Skip("H_R is not rational over F_q".into()));
            }
            Ok(pass_if(
                analysis.taus.iter().all(|e| e.schur_ok == Some(true)),
                "integer route disagrees with the character sum",
            ))
        }));
    }

    out.push(suite("tau_norms", || {
        for e in &analysis.taus {
            if crate::cyclo::conj_norm(&e.tau)? != c.q() as i128 {
                return Ok(SuiteStatus::Fail("tau conj-norm is not q".into()));
            }
        }
        Ok(SuiteStatus::Pass)
    }));
    out.push(suite("root_of_unity", || {
        Ok(pass_if(
            analysis
                .taus
                .iter()
                .all(|e| e.rou_4p0_ok && e.rou_2p0_neg != Some(false)),
            "tau power identities fail",
        ))
    }));
    out.push(suite("lpoly_three_way", || {
        // product vs psi factors vs oracle; analyze already errors on
        // mismatch, so reaching this point means agreement where feasible
        Ok(pass_if(
            analysis.l_oracle.is_some()
                || analysis.psi_factors.iter().any(|(_, f)| f.is_some()),
            "no independent route was feasible",
        ))
    }));
    out.push(suite("functional_equation", || {
        Ok(pass_if(
            check_functional_equation(&analysis.lpoly, c.q() as i128, c.genus() as usize),
            "functional equation fails",
        ))
    }));
    out.push(suite("conjugate_symmetry", || {
        let factors: Vec<(&CentralChar, &CycPoly)> = analysis
            .psi_factors
            .iter()
            .filter_map(|(p, f)| f.as_ref().map(|f| (p, f)))
            .collect();
        if factors.is_empty() {
            return Ok(SuiteStatus::Skip("psi factors beyond the guard".into()));
        }
        for (psi, f) in &factors {
            let conj_c = psi.c.neg();
            let Some((_, g)) = factors.iter().find(|(p, _)| p.c == conj_c) else {
                continue;
            };
            if f.conj() != **g {
                return Ok(SuiteStatus::Fail("L_psi-bar != conj(L_psi)".into()));
            }
        }
        Ok(SuiteStatus::Pass)
    }));
    out.push(suite("counts_vs_lpoly", || {
        let bound = max_n.max(4 * c.p0() as usize).min(2 * c.genus() as usize);
        let sums = power_sums_from_lpoly(&analysis.lpoly, bound);
        let mut any = false;
        for n in 1..=bound {
            if c.q().checked_pow(n as u32).map_or(true, |o| o > ENUM_CAP) {
                continue;
            }
            let nn = match count_points_jobs(c, n, jobs) {
                Ok(v) => v,
                Err(Error::SizeGuardExceeded(..)) => continue,
                Err(e) => return Err(e),
            };
            any = true;
            if nn as i128 != (c.q() as i128).pow(n as u32) + 1 - sums[n - 1] {
                return Ok(SuiteStatus::Fail(format!("count mismatch at n = {n}")));
            }
        }
        if any {
            Ok(SuiteStatus::Pass)
        } else {
            Ok(SuiteStatus::Skip("all counts beyond the guard".into()))
        }
    }));
    out.push(suite("weil_bounds", || {
        let bound = max_n.max(4 * c.p0() as usize);
        let sums = power_sums_from_lpoly(&analysis.lpoly, bound);
        let g = c.genus() as i128;
        for (i, &s) in sums.iter().enumerate() {
            // S_n^2 <= (2g)^2 q^n, exactly
            if s * s > 4 * g * g * (c.q() as i128).pow(i as u32 + 1) {
                return Ok(SuiteStatus::Fail(format!("Weil bound fails at n = {}", i + 1)));
            }
        }
        Ok(SuiteStatus::Pass)
    }));
    out
}

pub fn suites_json(results: &[SuiteResult]) -> Value {
    json!(results
        .iter()
        .map(|r| {
            let (status, detail) = match &r.status {
                SuiteStatus::Pass => ("pass", Value::Null),
                SuiteStatus::Fail(d) => ("fail", json!(d)),
                SuiteStatus::Skip(d) => ("skip", json!(d)),
            };
            json!({ "name": r.name, "status": status, "detail": detail })
        })
        .collect::<Vec<_>>())
}

/// The built-in verification grid.
pub fn builtin_grid() -> Result<Vec<(String, Curve)>> {
    let mut out = Vec::new();
    {
        let t = FieldTower::new(3)?;
        let f3 = t.field(1)?;
        out.push((
            "p0=3 f=1 e=0 R=2x".to_string(),
            Curve::new(&t, 1, 1, AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(2)]))?,
        ));
        out.push((
            "p0=3 f=1 e=1 R=x^3-x".to_string(),
            Curve::new(
                &t,
                1,
                1,
                AdditivePoly::from_p_coeffs(&f3, 1, &[f3.from_int(-1), f3.one()]),
            )?,
        ));
        let f9 = t.field(2)?;
        out.push((
            "p0=3 f=2 e=1 R=x^3-x".to_string(),
            Curve::new(
                &t,
                2,
                1,
                AdditivePoly::from_p_coeffs(&f9, 1, &[f9.from_int(-1), f9.one()]),
            )?,
        ));
    }
    {
        let t = FieldTower::new(5)?;
        let f5 = t.field(1)?;
        out.push((
            "p0=5 f=1 e=1 R=x^5-x".to_string(),
            Curve::new(
                &t,
                1,
                1,
                AdditivePoly::from_p_coeffs(&f5, 1, &[f5.from_int(-1), f5.one()]),
            )?,
        ));
    }
    {
        let t = FieldTower::new(2)?;
        let f4 = t.field(2)?;
        out.push((
            "p0=2 f=2 e=1 R=x^2".to_string(),
            Curve::new(&t, 2, 1, AdditivePoly::from_p_coeffs(&f4, 1, &[f4.zero(), f4.one()]))?,
        ));
    }
    Ok(out)
}
