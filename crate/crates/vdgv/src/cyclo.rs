//! Exact arithmetic in Z[zeta_n] for the small orders the Gauss sums
//! live in (n = 1, 2, 4 or an odd prime), plus Newton-identity
//! reconstruction of polynomials from power sums.
//!
//! Elements are integer coordinate vectors in the power basis modulo the
//! n-th cyclotomic polynomial. Multiplication goes through the cyclic
//! representation mod x^n - 1 and is folded back, which keeps the
//! reduction rules in one place.

use crate::error::{Error, Result};

pub fn supported_order(n: u64) -> bool {
    matches!(n, 1 | 2 | 4) || (n % 2 == 1 && crate::gf::is_prime(n))
}

pub fn phi_deg(n: u64) -> usize {
    match n {
        1 | 2 => 1,
        4 => 2,
        p => (p - 1) as usize,
    }
}

/// Exact element of Z[zeta_n].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    pub n: u64,
    pub c: Vec<i128>,
}

impl std::fmt::Debug for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cyc{}{:?}", self.n, self.c)
    }
}

pub fn cyclo_ring(n: u64) -> Result<u64> {
    if supported_order(n) {
        Ok(n)
    } else {
        Err(Error::UnsupportedOrder(n))
    }
}

fn fold(n: u64, cyc: Vec<i128>) -> Vec<i128> {
    // cyc has length n (coefficients of 1, zeta, ..., zeta^{n-1})
    match n {
        1 => vec![cyc[0]],
        2 => vec![cyc[0] - cyc[1]],
        4 => vec![cyc[0] - cyc[2], cyc[1] - cyc[3]],
        p => {
            let top = cyc[(p - 1) as usize];
            (0..(p - 1) as usize).map(|i| cyc[i] - top).collect()
        }
    }
}

impl Cyc {
    pub fn new(n: u64, c: Vec<i128>) -> Self {
        assert!(supported_order(n), "unsupported cyclotomic order {n}");
        assert_eq!(c.len(), phi_deg(n));
        Cyc { n, c }
    }

    pub fn zero(n: u64) -> Self {
        Cyc::new(n, vec![0; phi_deg(n)])
    }

    pub fn one(n: u64) -> Self {
        Cyc::from_int(n, 1)
    }

    pub fn from_int(n: u64, v: i128) -> Self {
        let mut c = vec![0; phi_deg(n)];
        c[0] = v;
        Cyc { n, c }
    }

    /// zeta_n^k
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut cyc = vec![0i128; n as usize];
        cyc[k] = 1;
        Cyc { n, c: fold(n, cyc) }
    }

    fn to_cyclic(&self) -> Vec<i128> {
        let mut v = vec![0i128; self.n as usize];
        v[..self.c.len()].copy_from_slice(&self.c);
        v
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.n, o.n);
        Cyc { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i128) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.n, o.n);
        let n = self.n as usize;
        let a = self.to_cyclic();
        let b = o.to_cyclic();
        let mut out = vec![0i128; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[(i + j) % n] += x * y;
            }
        }
        Cyc { n: self.n, c: fold(self.n, out) }
    }

    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation zeta -> zeta^{-1}; an involutive ring automorphism.
    pub fn conj(&self) -> Cyc {
        let n = self.n as usize;
        let a = self.to_cyclic();
        let mut out = vec![0i128; n];
        for (i, &x) in a.iter().enumerate() {
            out[(n - i) % n] += x;
        }
        Cyc { n: self.n, c: fold(self.n, out) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_int(&self) -> Option<i128> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Move this value into a larger supported ring that contains mu_n.
    /// Only the identity and mu_2 -> anything are needed here.
    pub fn into_order(&self, n: u64) -> Result<Cyc> {
        if self.n == n {
            return Ok(self.clone());
        }
        match self.as_int() {
            Some(v) if self.n <= 2 => Ok(Cyc::from_int(n, v)),
            _ => Err(Error::UnsupportedOrder(n)),
        }
    }
}

/// tau * conj(tau), asserted to be a rational integer.
pub fn conj_norm(tau: &Cyc) -> Result<i128> {
    tau.mul(&tau.conj()).as_int().ok_or(Error::NotRationalInteger)
}

/// Exact check tau^m == q^{m/2}, i.e. tau is sqrt(q) times an m-th
/// root of unity (call with even m).
pub fn is_q_times_root_of_unity(tau: &Cyc, q: i128, m: u64) -> bool {
    assert!(m % 2 == 0);
    tau.pow(m) == Cyc::from_int(tau.n, q.pow((m / 2) as u32))
}

/// Where tau / 2^{n/2} sits on the unit circle, for tau in Z[i] with
/// |tau|^2 = 2^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianClass {
    /// true iff tau / 2^{n/2} is a primitive 8th root of unity (n odd)
    pub primitive_eighth: bool,
    /// k with tau / 2^{n/2} = e^{2 pi i k / 8}
    pub eighth_root_exponent: u8,
}

pub fn classify_gaussian(tau: &Cyc, n: u64) -> Result<GaussianClass> {
    assert_eq!(tau.n, 4);
    let norm = conj_norm(tau)?;
    if norm != 1i128 << n {
        return Err(Error::NormMismatch(format!("|tau|^2 = {norm}, expected 2^{n}")));
    }
    // unit = tau / (1+i)^n, computed as tau * conj((1+i)^n) / 2^n
    let one_plus_i = Cyc::new(4, vec![1, 1]);
    let denom_pow = one_plus_i.pow(n);
    let num = tau.mul(&denom_pow.conj());
    let scale = 1i128 << n;
    if num.c.iter().any(|&x| x % scale != 0) {
        return Err(Error::NormMismatch("tau is not a Z[i]-multiple of (1+i)^n".into()));
    }
    let unit = Cyc { n: 4, c: num.c.iter().map(|&x| x / scale).collect() };
    let j = match (unit.c[0], unit.c[1]) {
        (1, 0) => 0u8,
        (0, 1) => 1,
        (-1, 0) => 2,
        (0, -1) => 3,
        _ => return Err(Error::NormMismatch("quotient is not a unit of Z[i]".into())),
    };
    Ok(GaussianClass {
        primitive_eighth: n % 2 == 1,
        eighth_root_exponent: ((n % 8) as u8 + 2 * j) % 8,
    })
}

// ---------- polynomials ----------

/// Polynomial with Z[zeta_n] coefficients, low-to-high.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycPoly {
    pub n: u64,
    pub coeffs: Vec<Cyc>,
}

impl CycPoly {
    pub fn one(n: u64) -> Self {
        CycPoly { n, coeffs: vec![Cyc::one(n)] }
    }

    pub fn from_int_coeffs(n: u64, cs: &[i128]) -> Self {
        CycPoly { n, coeffs: cs.iter().map(|&c| Cyc::from_int(n, c)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, o: &CycPoly) -> CycPoly {
        assert_eq!(self.n, o.n);
        let mut out = vec![Cyc::zero(self.n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        CycPoly { n: self.n, coeffs: out }
    }

    /// Multiply by (1 - tau T).
    pub fn mul_linear(&self, tau: &Cyc) -> CycPoly {
        self.mul(&CycPoly { n: self.n, coeffs: vec![Cyc::one(self.n), tau.neg()] })
    }

    pub fn conj(&self) -> CycPoly {
        CycPoly { n: self.n, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn to_int_coeffs(&self) -> Result<Vec<i128>> {
        self.coeffs
            .iter()
            .map(|c| c.as_int().ok_or(Error::NonIntegralCoefficient))
            .collect()
    }
}

/// Reconstruct prod (1 - alpha_i T) from the power sums S_k = sum alpha_i^k,
/// k = 1..d, via Newton's identities with exact division.
pub fn newton_from_power_sums(n: u64, s: &[Cyc], d: usize) -> Result<CycPoly> {
    assert!(s.len() >= d);
    let mut e: Vec<Cyc> = vec![Cyc::one(n)];
    for k in 1..=d {
        // k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} S_i
        let mut acc = Cyc::zero(n);
        for i in 1..=k {
            let term = e[k - i].mul(&s[i - 1]);
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        if acc.c.iter().any(|&x| x % k as i128 != 0) {
            return Err(Error::NonIntegralCoefficient);
        }
        e.push(Cyc { n, c: acc.c.iter().map(|&x| x / k as i128).collect() });
    }
    // L coefficients: l_k = (-1)^k e_k
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, ek)| if k % 2 == 0 { ek } else { ek.neg() })
        .collect();
    Ok(CycPoly { n, coeffs })
}

/// Power sums S_1..S_count of the inverse roots of L(T) = sum c_k T^k
/// (integer coefficients, c_0 = 1), by the Newton recurrence.
pub fn power_sums_from_lpoly(coeffs: &[i128], count: usize) -> Vec<i128> {
    assert_eq!(coeffs[0], 1);
    let d = coeffs.len() - 1;
    let e: Vec<i128> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
        .collect();
    let mut s: Vec<i128> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc: i128 = 0;
        if k <= d {
            acc += if k % 2 == 1 { e[k] * k as i128 } else { -(e[k] * k as i128) };
        }
        for i in 1..k.min(d + 1) {
            let term = e[i] * s[k - i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        s.push(acc);
    }
    s
}
