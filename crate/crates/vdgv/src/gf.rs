//! Finite fields F_{p0^m} in a compatible lazily-built tower.
//!
//! A `FieldTower` owns one context per degree. Each context uses the
//! lexicographically smallest monic irreducible modulus of its degree
//! (coefficients low-to-high compared as integer tuples), so every run
//! produces bit-identical fields. Embeddings between contexts are the
//! norm-compatible ones: every context stores a canonical multiplicative
//! generator gamma_m chosen so that gamma_m^((p^m-1)/(p^a-1)) has the
//! same minimal polynomial as gamma_a for every divisor a | m. Defining
//! the embedding F_{p^a} -> F_{p^b} by gamma_a -> gamma_b^((p^b-1)/(p^a-1))
//! then makes all embeddings commute along the tower by plain exponent
//! arithmetic, which is what trace/projection correctness rides on.

use crate::error::{Error, Result};
use crate::linalg::{pow_mod, FpMat};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, Weak};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------- raw polynomial arithmetic over F_p0 (coeff vectors, low-to-high) ----------

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + (p - lead % p) * mj) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) && r.len() > dm {
            r.pop();
        }
    }
    trim(r)
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn poly_powmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        // make b monic for poly_rem
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = pow_mod(lead, p - 2, p);
            for c in b.iter_mut() {
                *c = *c * inv % p;
            }
        }
        let r = poly_rem(&a, &b, p);
        a = b;
        b = trim(r);
    }
    a
}

/// x^{p^k} mod f, by iterated p-th powers.
fn frob_power_of_x(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut t = poly_rem(&[0, 1], f, p);
    for _ in 0..k {
        t = poly_powmod(&t, p as u128, f, p);
    }
    t
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut fs = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

/// Monic f of degree m irreducible over F_p?
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // cheap rejections: a factor x, or a root in F_p
    if f[0] == 0 {
        return false;
    }
    for a in 0..p {
        let mut v = 0u64;
        for &c in f.iter().rev() {
            v = (v * a + c) % p;
        }
        if v == 0 {
            return false;
        }
    }
    // x^{p^m} == x mod f
    let xm = frob_power_of_x(m, f, p);
    let x = poly_rem(&[0, 1], f, p);
    if xm != x {
        return false;
    }
    for l in prime_factors(m as u128) {
        let k = m / l as usize;
        let mut diff = frob_power_of_x(k, f, p);
        // diff -= x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let diff = trim(diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over F_p
/// (coefficient tuples c_0..c_{m-1} compared with c_0 most significant).
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut c = vec![0u64; m];
    loop {
        let mut f = c.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment tuple in lex order: last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("no irreducible of degree {m} over F_{p}");
            }
            i -= 1;
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
        }
    }
}

// ---------- tower ----------

struct TowerState {
    p0: u64,
    size_guard: u128,
    ctxs: BTreeMap<usize, FieldCtx>,
    embeds: BTreeMap<(usize, usize), FpMat>,
}

/// Lazily built compatible tower of extensions of F_{p0}.
#[derive(Clone)]
pub struct FieldTower {
    st: Arc<Mutex<TowerState>>,
}

pub const DEFAULT_SIZE_GUARD: u128 = 1 << 40;

struct CtxInner {
    p0: u64,
    m: usize,
    modulus: Vec<u64>,
    /// canonical multiplicative generator (coords), norm-compatible downwards
    canon_gen: Vec<u64>,
    /// minimal polynomial of canon_gen over F_p0
    gen_minpoly: Vec<u64>,
    tower: Weak<Mutex<TowerState>>,
}

/// One field F_{p0^m}; cheap to clone and shareable.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.inner.p0, self.inner.m)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p0 == other.inner.p0 && self.inner.m == other.inner.m
    }
}
impl Eq for FieldCtx {}

impl FieldTower {
    pub fn new(p0: u64) -> Result<Self> {
        if !is_prime(p0) {
            return Err(Error::NotPrime(p0));
        }
        Ok(FieldTower {
            st: Arc::new(Mutex::new(TowerState {
                p0,
                size_guard: DEFAULT_SIZE_GUARD,
                ctxs: BTreeMap::new(),
                embeds: BTreeMap::new(),
            })),
        })
    }

    pub fn p0(&self) -> u64 {
        self.st.lock().unwrap().p0
    }

    pub fn set_size_guard(&self, guard: u128) {
        self.st.lock().unwrap().size_guard = guard;
    }

    pub fn size_guard(&self) -> u128 {
        self.st.lock().unwrap().size_guard
    }

    /// Build (or fetch) F_{p0^m}. All divisor fields are built first so
    /// the canonical generators stay compatible.
    pub fn field(&self, m: usize) -> Result<FieldCtx> {
        assert!(m >= 1);
        let (p0, guard) = {
            let st = self.st.lock().unwrap();
            if let Some(c) = st.ctxs.get(&m) {
                return Ok(c.clone());
            }
            (st.p0, st.size_guard)
        };
        if (p0 as u128).checked_pow(m as u32).map_or(true, |o| o > guard) {
            return Err(Error::SizeGuardExceeded(format!(
                "field of {p0}^{m} elements exceeds guard (use --force to override)"
            )));
        }
        // build all proper divisors first, ascending
        let mut divisor_gens: Vec<(usize, Vec<u64>)> = Vec::new();
        for a in 1..m {
            if m % a == 0 {
                let sub = self.field(a)?;
                divisor_gens.push((a, sub.inner.gen_minpoly.clone()));
            }
        }
        let modulus = smallest_irreducible(p0, m);
        let (canon_gen, gen_minpoly) = find_canonical_generator(p0, m, &modulus, &divisor_gens);
        let ctx = FieldCtx {
            inner: Arc::new(CtxInner {
                p0,
                m,
                modulus,
                canon_gen,
                gen_minpoly,
                tower: Arc::downgrade(&self.st),
            }),
        };
        let mut st = self.st.lock().unwrap();
        st.ctxs.insert(m, ctx.clone());
        Ok(ctx)
    }
}

/// Find the enumeration-smallest primitive element whose subfield norms
/// land on the stored canonical generators of all proper divisors.
fn find_canonical_generator(
    p0: u64,
    m: usize,
    modulus: &[u64],
    divisor_gens: &[(usize, Vec<u64>)],
) -> (Vec<u64>, Vec<u64>) {
    let order: u128 = (p0 as u128).pow(m as u32) - 1;
    let order_factors = prime_factors(order);
    let mut idx: u128 = 1;
    let total: u128 = order + 1;
    while idx < total {
        let cand = coords_from_index(idx, p0, m);
        idx += 1;
        // primitivity
        if order_factors
            .iter()
            .any(|&l| poly_powmod(&cand, order / l, modulus, p0) == vec![1])
        {
            continue;
        }
        // compatibility with each proper divisor
        let mut ok = true;
        for (a, sub_minpoly) in divisor_gens {
            let sub_order = (p0 as u128).pow(*a as u32) - 1;
            let s = poly_powmod(&cand, order / sub_order, modulus, p0);
            if raw_minpoly(&s, modulus, p0, m) != *sub_minpoly {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let minpoly = raw_minpoly(&cand, modulus, p0, m);
        return (cand, minpoly);
    }
    panic!("no compatible primitive generator found for F_{p0}^{m}");
}

fn coords_from_index(mut idx: u128, p0: u64, m: usize) -> Vec<u64> {
    let mut c = vec![0u64; m];
    for slot in c.iter_mut() {
        *slot = (idx % p0 as u128) as u64;
        idx /= p0 as u128;
    }
    trim(c)
}

/// Minimal polynomial over F_p0 of z (raw coords) in F_p0[x]/(modulus).
fn raw_minpoly(z: &[u64], modulus: &[u64], p0: u64, m: usize) -> Vec<u64> {
    // collect the Frobenius orbit
    let mut orbit = vec![trim(z.to_vec())];
    loop {
        let next = poly_powmod(orbit.last().unwrap(), p0 as u128, modulus, p0);
        if next == orbit[0] {
            break;
        }
        orbit.push(next);
        assert!(orbit.len() <= m);
    }
    // product of (x - conj): coefficients live in the extension
    let mut coeffs: Vec<Vec<u64>> = vec![vec![1u64]]; // poly "1", coeff vectors
    for conj in &orbit {
        let neg: Vec<u64> = conj.iter().map(|&c| (p0 - c % p0) % p0).collect();
        let neg = trim(neg);
        let mut out: Vec<Vec<u64>> = vec![Vec::new(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            // x * c
            out[i + 1] = raw_add(&out[i + 1], c, p0);
            // (-conj) * c
            let t = poly_mulmod(&neg, c, modulus, p0);
            out[i] = raw_add(&out[i], &t, p0);
        }
        coeffs = out;
    }
    // every coefficient must be a constant
    coeffs
        .iter()
        .map(|c| {
            assert!(c.len() <= 1, "minpoly coefficient not rational");
            c.first().copied().unwrap_or(0)
        })
        .collect()
}

fn raw_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(out)
}

impl FieldCtx {
    pub fn p0(&self) -> u64 {
        self.inner.p0
    }

    pub fn deg(&self) -> usize {
        self.inner.m
    }

    pub fn order(&self) -> u128 {
        (self.inner.p0 as u128).pow(self.inner.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn tower(&self) -> FieldTower {
        FieldTower { st: self.inner.tower.upgrade().expect("tower dropped") }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { ctx: self.clone(), coords: vec![0; self.inner.m] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.inner.p0 as i64;
        let mut coords = vec![0u64; self.inner.m];
        coords[0] = v.rem_euclid(p) as u64;
        FieldElement { ctx: self.clone(), coords }
    }

    pub fn from_coords(&self, cs: &[i64]) -> Result<FieldElement> {
        if cs.len() > self.inner.m {
            return Err(Error::InvalidInput(format!(
                "{} coordinates given for a degree-{} field",
                cs.len(),
                self.inner.m
            )));
        }
        let p = self.inner.p0 as i64;
        let mut coords = vec![0u64; self.inner.m];
        for (i, &c) in cs.iter().enumerate() {
            coords[i] = c.rem_euclid(p) as u64;
        }
        Ok(FieldElement { ctx: self.clone(), coords })
    }

    /// Class of the indeterminate x (a root of the modulus).
    pub fn gen(&self) -> FieldElement {
        if self.inner.m == 1 {
            // modulus is x + c; the class of x is -c
            let c = self.inner.modulus[0];
            return self.from_int(-(c as i64));
        }
        let mut coords = vec![0u64; self.inner.m];
        coords[1] = 1;
        FieldElement { ctx: self.clone(), coords }
    }

    /// Canonical multiplicative generator of this context.
    pub fn canonical_generator(&self) -> FieldElement {
        let mut coords = self.inner.canon_gen.clone();
        coords.resize(self.inner.m, 0);
        FieldElement { ctx: self.clone(), coords }
    }

    pub fn element_at(&self, idx: u128) -> FieldElement {
        let mut coords = coords_from_index(idx, self.inner.p0, self.inner.m);
        coords.resize(self.inner.m, 0);
        FieldElement { ctx: self.clone(), coords }
    }

    pub fn index_of(&self, x: &FieldElement) -> u128 {
        let mut idx: u128 = 0;
        for &c in x.coords.iter().rev() {
            idx = idx * self.inner.p0 as u128 + c as u128;
        }
        idx
    }

    /// Deterministic enumeration of all elements (index order).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Basis element x^i of the power basis.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut coords = vec![0u64; self.inner.m];
        coords[i] = 1;
        FieldElement { ctx: self.clone(), coords }
    }

    /// Matrix (in the power basis) of an F_p0-linear map given as a closure.
    pub fn linear_map_matrix<F: Fn(&FieldElement) -> FieldElement>(&self, f: F) -> FpMat {
        let cols: Vec<Vec<u64>> = (0..self.inner.m)
            .map(|i| f(&self.basis_element(i)).coords)
            .collect();
        FpMat::from_columns(self.inner.p0, &cols)
    }
}

/// Element of a `FieldCtx`, stored as coordinates in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    ctx: FieldCtx,
    coords: Vec<u64>,
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} in {:?}", self.coords, self.ctx)
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.inner.m.hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ctx.inner.m, self.ctx.index_of(self))
            .cmp(&(other.ctx.inner.m, other.ctx.index_of(other)))
    }
}

impl FieldElement {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn p(&self) -> u64 {
        self.ctx.inner.p0
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.ctx, other.ctx);
        let p = self.p();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.p();
        let coords = self.coords.iter().map(|&a| (p - a) % p).collect();
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.ctx, other.ctx);
        let p = self.p();
        let prod = poly_mulmod(&trim(self.coords.clone()), &trim(other.coords.clone()), &self.ctx.inner.modulus, p);
        let mut coords = prod;
        coords.resize(self.ctx.inner.m, 0);
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    pub fn scale(&self, k: i64) -> FieldElement {
        let p = self.p() as i64;
        let k = k.rem_euclid(p) as u64;
        let coords = self.coords.iter().map(|&a| a * k % self.p()).collect();
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        self.pow(self.ctx.order() - 2)
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    /// x^(p0^k); k is reduced mod the context degree.
    pub fn frobenius(&self, k: usize) -> FieldElement {
        let k = k % self.ctx.inner.m;
        if k == 0 {
            return self.clone();
        }
        self.pow((self.p() as u128).pow(k as u32))
    }

    /// x^(p^k) with p = p0^kappa.
    pub fn frobenius_p(&self, kappa: usize, k: usize) -> FieldElement {
        self.frobenius((kappa * k) % self.ctx.inner.m)
    }

    /// Does this element lie in the subfield of degree d over F_p0?
    pub fn in_subfield(&self, d: usize) -> bool {
        if self.ctx.inner.m % d != 0 {
            return false;
        }
        self.frobenius(d) == *self
    }
}

// ---------- tower-level maps ----------

impl FieldTower {
    fn embedding_matrix(&self, src: &FieldCtx, dst: &FieldCtx) -> Result<FpMat> {
        let (a, b) = (src.deg(), dst.deg());
        if b % a != 0 {
            return Err(Error::NotASubfield(a, b));
        }
        {
            let st = self.st.lock().unwrap();
            if let Some(m) = st.embeds.get(&(a, b)) {
                return Ok(m.clone());
            }
        }
        let p0 = src.p0();
        let mat = if a == b {
            FpMat::identity(p0, a)
        } else {
            let img_g = if a == 1 {
                // modulus is x + c, so the class of x is -c
                dst.from_int(-(src.modulus()[0] as i64))
            } else {
                // canonical image of the source generator-of-basis
                let gamma_src = src.canonical_generator();
                let g = src.gen();
                // discrete log of g base gamma_src (brute force, cached per pair)
                let mut d: u128 = 0;
                let mut t = src.one();
                let ord = src.order() - 1;
                while t != g {
                    t = t.mul(&gamma_src);
                    d += 1;
                    if d > ord {
                        return Err(Error::Internal("dlog failed".into()));
                    }
                }
                let exp = (dst.order() - 1) / (src.order() - 1);
                dst.canonical_generator().pow(exp).pow(d)
            };
            // sanity: img_g must be a root of the source modulus
            let mut acc = dst.zero();
            let mut pw = dst.one();
            for &c in src.modulus() {
                acc = acc.add(&pw.scale(c as i64));
                pw = pw.mul(&img_g);
            }
            assert!(acc.is_zero(), "embedding image is not a modulus root");
            let cols: Vec<Vec<u64>> = (0..a)
                .map(|j| img_g.pow(j as u128).coords)
                .collect();
            FpMat::from_columns(p0, &cols)
        };
        let mut st = self.st.lock().unwrap();
        st.embeds.insert((a, b), mat.clone());
        Ok(mat)
    }

    /// Field embedding along the tower. Errors if the source is not a
    /// subfield of the target.
    pub fn embed(&self, x: &FieldElement, target: &FieldCtx) -> Result<FieldElement> {
        if x.ctx() == target {
            return Ok(x.clone());
        }
        let mat = self.embedding_matrix(x.ctx(), target)?;
        let coords = mat.mul_vec(&x.coords);
        Ok(FieldElement { ctx: target.clone(), coords })
    }

    /// Inverse of `embed` on its image. Errors if x is not in the image.
    pub fn project(&self, x: &FieldElement, sub: &FieldCtx) -> Result<FieldElement> {
        if x.ctx() == sub {
            return Ok(x.clone());
        }
        let mat = self.embedding_matrix(sub, x.ctx())?;
        let sol = mat.solve(&x.coords);
        match sol.particular {
            Some(coords) => Ok(FieldElement { ctx: sub.clone(), coords }),
            None => Err(Error::NoSolution("element not in subfield".into())),
        }
    }

    /// Trace of x down to `sub` (sum of Galois conjugates over sub).
    pub fn trace(&self, x: &FieldElement, sub: &FieldCtx) -> Result<FieldElement> {
        let m = x.ctx().deg();
        let a = sub.deg();
        if m % a != 0 {
            return Err(Error::NotASubfield(a, m));
        }
        let mut acc = x.ctx().zero();
        let mut t = x.clone();
        for _ in 0..(m / a) {
            acc = acc.add(&t);
            t = t.frobenius(a);
        }
        self.project(&acc, sub)
    }
}

/// Legendre-style quadratic character of x: 0, +1 or -1.
pub fn quadratic_character(x: &FieldElement) -> Result<i32> {
    if x.ctx().p0() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if x.is_zero() {
        return Ok(0);
    }
    let t = x.pow((x.ctx().order() - 1) / 2);
    if t == x.ctx().one() {
        Ok(1)
    } else {
        debug_assert_eq!(t, x.ctx().one().neg());
        Ok(-1)
    }
}

/// Exact solution set of L(y) = rhs for an F_p0-linear map L given by its
/// matrix in the power basis of rhs's context.
pub fn linear_solve(mat: &FpMat, rhs: &FieldElement) -> (Option<FieldElement>, Vec<FieldElement>) {
    let sol = mat.solve(rhs.coords());
    let ctx = rhs.ctx().clone();
    let mk = |v: Vec<u64>| FieldElement { ctx: ctx.clone(), coords: v };
    (sol.particular.map(mk), sol.kernel.into_iter().map(|v| {
        let mut v = v;
        v.resize(ctx.deg(), 0);
        FieldElement { ctx: ctx.clone(), coords: v }
    }).collect())
}
