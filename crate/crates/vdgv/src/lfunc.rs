//! Point counts, the zeta oracle over Newton's identities, per-psi
//! L-factors from twisted character sums, the product formula, quotient
//! curves by an additive polynomial delta, and the maximal / minimal /
//! supersingular verdicts.

use crate::addpoly::{validate_delta, AdditivePoly};
use crate::curve::Curve;
use crate::cyclo::{
    is_q_times_root_of_unity, newton_from_power_sums, power_sums_from_lpoly, Cyc, CycPoly,
};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::heis::{char_ring, CentralChar};

/// How often each value of Tr_{F_{q^n}/F_p}(x R(x)) occurs, indexed by
/// the element index in F_p. Every counting routine reduces to this.
pub fn trace_distribution(c: &Curve, n: usize) -> Result<Vec<u128>> {
    trace_distribution_jobs(c, n, 1)
}

#[allow(clippy::too_many_arguments)]
fn tally_range(
    cmats: &[Vec<u64>],
    m: usize,
    p0: u64,
    kappa: usize,
    lo: u128,
    hi: u128,
    counts: &mut [u128],
) {
    let mut xc = vec![0u64; m];
    let mut idx128 = lo;
    for slot in xc.iter_mut() {
        *slot = (idx128 % p0 as u128) as u64;
        idx128 /= p0 as u128;
    }
    for _ in lo..hi {
        let mut idx = 0usize;
        for j in (0..kappa).rev() {
            let cj = &cmats[j];
            let mut acc: u64 = 0;
            for i in 0..m {
                let xi = xc[i];
                if xi == 0 {
                    continue;
                }
                let row = &cj[i * m..(i + 1) * m];
                let mut inner: u64 = 0;
                for (rk, &xk) in row.iter().zip(xc.iter()) {
                    inner += rk * xk;
                }
                acc += xi * (inner % p0);
            }
            idx = idx * p0 as usize + (acc % p0) as usize;
        }
        counts[idx] += 1;
        let mut i = 0;
        while i < m {
            xc[i] += 1;
            if xc[i] < p0 {
                break;
            }
            xc[i] = 0;
            i += 1;
        }
    }
}

/// Same distribution, split across `jobs` threads over disjoint index
/// ranges with a deterministic merge.
pub fn trace_distribution_jobs(c: &Curve, n: usize, jobs: usize) -> Result<Vec<u128>> {
    let ctx = c.tower().field(c.f() * n)?;
    let fp = c.fp();
    let m = ctx.deg();
    let p0 = ctx.p0();
    let r_mat = c.r().matrix_on(&ctx)?;
    let kappa = fp.deg();
    // Tr(x R(x)) is the quadratic form x^T C_j x per F_p-coordinate j,
    // with C_j[i][k] = sum_l Tr_j(g^(i+l)) M[l][k] for the power basis g^i.
    let mut pows = Vec::with_capacity(2 * m - 1);
    let mut cur = ctx.one();
    for k in 0..(2 * m - 1) {
        if k > 0 {
            cur = cur.mul(&ctx.basis_element(1));
        }
        pows.push(cur.clone());
    }
    let tr_pows: Vec<Vec<u64>> = pows
        .iter()
        .map(|p| c.tower().trace(p, fp).map(|t| t.coords().to_vec()))
        .collect::<Result<_>>()?;
    let mut cmats = vec![vec![0u64; m * m]; kappa];
    for j in 0..kappa {
        for i in 0..m {
            for k in 0..m {
                let mut acc: u64 = 0;
                for l in 0..m {
                    acc = (acc + tr_pows[i + l][j] * r_mat.get(l, k)) % p0;
                }
                cmats[j][i * m + k] = acc;
            }
        }
    }
    let total = ctx.order();
    let slots = fp.order() as usize;
    let jobs = jobs.max(1).min(64).min(total.max(1) as usize);
    let mut counts = vec![0u128; slots];
    if jobs == 1 {
        tally_range(&cmats, m, p0, kappa, 0, total, &mut counts);
    } else {
        let chunk = total / jobs as u128;
        let partials: Vec<Vec<u128>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let cmats = &cmats;
                    let lo = chunk * w as u128;
                    let hi = if w == jobs - 1 { total } else { lo + chunk };
                    s.spawn(move || {
                        let mut local = vec![0u128; slots];
                        tally_range(cmats, m, p0, kappa, lo, hi, &mut local);
                        local
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for part in partials {
            for (slot, v) in counts.iter_mut().zip(part) {
                *slot += v;
            }
        }
    }
    Ok(counts)
}

/// N_n = 1 + p * #{x in F_{q^n} : Tr_{F_{q^n}/F_p}(x R(x)) = 0}.
pub fn count_points(c: &Curve, n: usize) -> Result<u128> {
    count_points_jobs(c, n, 1)
}

pub fn count_points_jobs(c: &Curve, n: usize, jobs: usize) -> Result<u128> {
    let counts = trace_distribution_jobs(c, n, jobs)?;
    Ok(1 + c.p() * counts[0])
}

fn q_pow(c: &Curve, n: usize) -> i128 {
    (c.q() as i128).pow(n as u32)
}

pub fn check_functional_equation(l: &[i128], q: i128, g: usize) -> bool {
    if l.len() != 2 * g + 1 || l[0] != 1 {
        return false;
    }
    (0..=g).all(|i| l[2 * g - i] == q.pow((g - i) as u32) * l[i])
}

/// The L-polynomial from raw counts at n = 1..2g. The functional
/// equation is not assumed; it is asserted after the fact.
pub fn lpoly_oracle(c: &Curve) -> Result<Vec<i128>> {
    lpoly_oracle_jobs(c, 1)
}

pub fn lpoly_oracle_jobs(c: &Curve, jobs: usize) -> Result<Vec<i128>> {
    let g = c.genus() as usize;
    let mut sums = Vec::with_capacity(2 * g);
    for n in 1..=2 * g {
        let nn = count_points_jobs(c, n, jobs)? as i128;
        sums.push(Cyc::from_int(1, q_pow(c, n) + 1 - nn));
    }
    let l = newton_from_power_sums(1, &sums, 2 * g)?.to_int_coeffs()?;
    if l[2 * g] == 0 {
        return Err(Error::OracleMismatch("L-polynomial degree below 2g".into()));
    }
    if !check_functional_equation(&l, c.q() as i128, g) {
        return Err(Error::OracleMismatch("functional equation failed".into()));
    }
    Ok(l)
}

/// L_psi of degree p^e from the twisted power sums
/// S_n = -sum over x in F_{q^n} of psi(Tr(x R(x))).
pub fn psi_part_lpoly(c: &Curve, psi: &CentralChar) -> Result<CycPoly> {
    let d = (c.p() as usize).pow(c.e() as u32);
    let ring = char_ring(c.p0());
    let psi_table: Vec<Cyc> = c
        .fp()
        .elements()
        .map(|b| psi.eval(c, &b))
        .collect::<Result<_>>()?;
    let mut sums = Vec::with_capacity(d);
    for n in 1..=d {
        let counts = trace_distribution(c, n)?;
        let mut s = Cyc::zero(ring);
        for (i, &cnt) in counts.iter().enumerate() {
            s = s.add(&psi_table[i].scale(cnt as i128));
        }
        sums.push(s.neg());
    }
    newton_from_power_sums(ring, &sums, d)
}

/// Expand prod (1 - tau T) over a tau table.
pub fn lpoly_from_taus(ring: u64, taus: &[Cyc]) -> CycPoly {
    let mut acc = CycPoly::one(ring);
    for t in taus {
        acc = acc.mul_linear(t);
    }
    acc
}

/// Multiply cyclotomic L-factors and demand rational integer output.
pub fn lpoly_product(factors: &[CycPoly]) -> Result<Vec<i128>> {
    let Some(first) = factors.first() else {
        return Ok(vec![1]);
    };
    let mut acc = CycPoly::one(first.n);
    for f in factors {
        acc = acc.mul(f);
    }
    acc.to_int_coeffs()
}

/// The quotient curve delta(y) = x R(x) for an additive delta over F_p:
/// the characters of F_p that factor through nu (delta o nu = y^p - y),
/// their L-factors multiplied, cross-checked by direct counting.
pub struct DeltaCurve {
    pub nu: AdditivePoly,
    /// nontrivial central characters trivial on ker(nu)
    pub psis: Vec<CentralChar>,
    pub lpoly: Vec<i128>,
    /// (n, N_n) for every n where direct enumeration was feasible
    pub confirmed_counts: Vec<(usize, u128)>,
}

fn delta_count(c: &Curve, delta: &AdditivePoly, n: usize) -> Result<u128> {
    let ctx = c.tower().field(c.f() * n)?;
    let mat = delta.matrix_on(&ctx)?;
    let m = ctx.deg();
    let kernel_dim = m - mat.rank();
    let fiber = (ctx.p0() as u128).pow(kernel_dim as u32);
    // image membership: the left kernel of the matrix of delta
    let left_kernel = mat.transpose().kernel();
    let mut affine = 0u128;
    for x in ctx.elements() {
        let y = c.xr(&x);
        let in_image = left_kernel.iter().all(|w| {
            w.iter()
                .zip(y.coords())
                .fold(0u64, |acc, (&wi, &yi)| (acc + wi * yi) % ctx.p0())
                == 0
        });
        if in_image {
            affine += fiber;
        }
    }
    Ok(1 + affine)
}

pub fn delta_curve_lpoly(c: &Curve, delta: &AdditivePoly) -> Result<DeltaCurve> {
    let nu = validate_delta(delta, c.kappa())?;
    let fp = c.fp();
    let (ker_basis, full) = nu.kernel(fp)?;
    if !full {
        return Err(Error::Internal("nu kernel not rational over F_p".into()));
    }
    let kernel = crate::heis::p0_span(fp, &ker_basis);
    let psis: Vec<CentralChar> = CentralChar::all_nontrivial(c)
        .into_iter()
        .filter(|psi| {
            kernel.iter().all(|k| {
                psi.eval(c, k)
                    .map(|v| v == Cyc::one(char_ring(c.p0())))
                    .unwrap_or(false)
            })
        })
        .collect();
    let factors: Vec<CycPoly> = psis
        .iter()
        .map(|psi| psi_part_lpoly(c, psi))
        .collect::<Result<_>>()?;
    let lpoly = lpoly_product(&factors)?;

    let d = lpoly.len() - 1;
    let sums = power_sums_from_lpoly(&lpoly, d);
    let mut confirmed = Vec::new();
    for n in 1..=d {
        if c.q().checked_pow(n as u32).map_or(true, |o| o > crate::report::ENUM_CAP) {
            continue;
        }
        let nn = match delta_count(c, delta, n) {
            Ok(v) => v,
            Err(Error::SizeGuardExceeded(..)) => continue,
            Err(e) => return Err(e),
        };
        if q_pow(c, n) + 1 - nn as i128 != sums[n - 1] {
            return Err(Error::OracleMismatch(format!(
                "quotient-curve count disagrees with the character product at n = {n}"
            )));
        }
        confirmed.push((n, nn));
    }
    Ok(DeltaCurve { nu, psis, lpoly, confirmed_counts: confirmed })
}

#[derive(Debug, Clone)]
pub struct Verdicts {
    pub supersingular: bool,
    pub maximal_at: Vec<usize>,
    pub minimal_at: Vec<usize>,
    /// minimality over F_{q^{4 p0}}; expected for every curve here
    pub minimal_4p0: bool,
    /// maximality over F_{q^{2 p0}}; applies when f is odd and p0 != 1 mod 4
    pub maximal_2p0: Option<bool>,
    /// minimality over F_{q^2}; applies when p0 = 2 and H_R is rational
    pub minimal_2: Option<bool>,
    /// the root-of-unity test on the tau table, when one was computed
    pub tau_route_agrees: Option<bool>,
}

/// Derive N_n from L (no recounting) and test the Weil bounds
/// N = q^n + 1 +/- 2g q^(n/2) for n up to max_n.
pub fn classify(
    c: &Curve,
    l: &[i128],
    taus: Option<&[Cyc]>,
    hr_rational: bool,
    max_n: usize,
) -> Verdicts {
    let p0 = c.p0() as usize;
    let bound_n = max_n.max(4 * p0);
    let sums = power_sums_from_lpoly(l, bound_n);
    let g = c.genus() as i128;
    let mut maximal_at = Vec::new();
    let mut minimal_at = Vec::new();
    for n in 1..=bound_n {
        if (c.f() * n) % 2 != 0 {
            continue;
        }
        let half_power = (c.p0() as i128).pow((c.f() * n / 2) as u32);
        let weil = 2 * g * half_power;
        if sums[n - 1] == weil {
            minimal_at.push(n);
        } else if sums[n - 1] == -weil {
            maximal_at.push(n);
        }
    }
    let minimal_4p0 = minimal_at.contains(&(4 * p0));
    let maximal_2p0 = (c.f() % 2 == 1 && c.p0() % 4 != 1)
        .then(|| maximal_at.contains(&(2 * p0)));
    let minimal_2 = (c.p0() == 2 && hr_rational).then(|| minimal_at.contains(&2));
    let tau_route_agrees = taus.map(|ts| {
        let by_tau = ts
            .iter()
            .all(|t| is_q_times_root_of_unity(t, c.q() as i128, 4 * c.p0()));
        by_tau == minimal_4p0
    });
    Verdicts {
        supersingular: minimal_4p0,
        maximal_at,
        minimal_at,
        minimal_4p0,
        maximal_2p0,
        minimal_2,
        tau_route_agrees,
    }
}

/// Re-derive N_n from L and compare with direct enumeration for every
/// n <= max_n that fits the size guard.
pub fn confirm_counts(c: &Curve, l: &[i128], max_n: usize) -> Result<Vec<(usize, u128)>> {
    let sums = power_sums_from_lpoly(l, max_n);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let nn = match count_points(c, n) {
            Ok(v) => v,
            Err(Error::SizeGuardExceeded(..)) => continue,
            Err(e) => return Err(e),
        };
        if nn as i128 != q_pow(c, n) + 1 - sums[n - 1] {
            return Err(Error::OracleMismatch(format!(
                "direct count disagrees with L at n = {n}"
            )));
        }
        out.push((n, nn));
    }
    Ok(out)
}

/// The field F_{q^n}, for callers that only need the guard check.
pub fn extension_field(c: &Curve, n: usize) -> Result<FieldCtx> {
    c.tower().field(c.f() * n)
}
