//! Exact arbitrary-precision rational and cyclotomic arithmetic.
//!
//! `Rational` is an arbitrary-precision fraction (numerator, positive
//! denominator, always in lowest terms).  [`Cyclotomic`] is an exact element
//! of ℚ(ζ_n) stored on the power basis ζ_n⁰ … ζ_n^{φ(n)−1}, reduced modulo
//! the n-th cyclotomic polynomial so that equality of canonical coefficient
//! vectors (after promotion to a common order) is equality of elements.
//!
//! All values are immutable after construction; operations are pure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::dd::Dd;

pub type Rational = BigRational;

/// Errors produced by exact-number operations.
#[derive(Debug, thiserror::Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order overflow: lcm({0}, {1}) exceeds the configured cap {2}")]
    OrderOverflow(u64, u64, u64),
    #[error("galois index {i} is not coprime to the order {n}")]
    NotCoprime { i: i64, n: u64 },
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}

static ORDER_CAP: AtomicU64 = AtomicU64::new(1_000_000);

/// The promotion cap: binary operations whose lcm of orders exceeds this
/// value fail with [`NumError::OrderOverflow`] instead of silently blowing up.
pub fn order_cap() -> u64 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u64) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

// ---------------------------------------------------------------------------
// Rational helpers
// ---------------------------------------------------------------------------

/// Shorthand constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parse "num/den" or "num" decimal strings.
pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let bad = || NumError::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(NumError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Serialize a rational as a "num/den" decimal string.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact square test: returns the nonnegative square root when numerator and
/// denominator are both perfect squares, `None` otherwise.  0 ↦ 0.
pub fn rational_is_square(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    if &(&sn * &sn) != num {
        return None;
    }
    let sd = den.sqrt();
    if &(&sd * &sd) != den {
        return None;
    }
    Some(Rational::new(sn, sd))
}

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n.max(1), |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(prev.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Ramanujan sum c_n(k) = Σ_{gcd(j,n)=1} ζ_n^{jk} = μ(n/g)·φ(n)/φ(n/g)
/// with g = gcd(k, n); this is the trace of ζ_n^k from ℚ(ζ_n) to ℚ.
pub fn ramanujan(n: u64, k: u64) -> i64 {
    let kr = k % n;
    let g = if kr == 0 { n } else { kr.gcd(&n) };
    let m = n / g;
    let mu = moebius(m);
    if mu == 0 {
        0
    } else {
        mu * (phi(n) / phi(m)) as i64
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials (integer coefficients, cached)
// ---------------------------------------------------------------------------

struct CycloPoly {
    /// Monic Φ_n, dense ascending coefficients, degree φ(n).
    int: Vec<BigInt>,
    rat: Vec<Rational>,
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u64, Arc<CycloPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclotomic_poly(n: u64) -> Arc<CycloPoly> {
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let int = compute_cyclotomic(n);
    let rat = int
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    let arc = Arc::new(CycloPoly { int, rat });
    CYCLO_CACHE
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(arc)
        .clone()
}

fn compute_cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            let den = cyclotomic_poly(d);
            poly = div_exact_monic_int(&poly, &den.int);
        }
    }
    poly
}

/// Exact division of integer polynomials by a monic divisor (panics if the
/// division is not exact — which would indicate a programming error).
fn div_exact_monic_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one());
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate().take(dn) {
            let delta = &c * dc;
            rem[k - dn + i] -= delta;
        }
        quot[k - dn] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

// ---------------------------------------------------------------------------
// Dense rational polynomial helpers (for reduction and inversion)
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<Rational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn pdeg(v: &[Rational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn pmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    ptrim(&mut out);
    out
}

fn psub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (i, cb) in b.iter().enumerate() {
        out[i] -= cb;
    }
    ptrim(&mut out);
    out
}

/// Polynomial division with remainder over ℚ (divisor nonzero).
fn pdivmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = pdeg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    ptrim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        let q = &c / &lead;
        for (i, bc) in b.iter().enumerate().take(db) {
            let delta = &q * bc;
            rem[k - db + i] -= delta;
        }
        rem[k] = Rational::zero();
        quot[k - db] = q;
    }
    ptrim(&mut rem);
    ptrim(&mut quot);
    (quot, rem)
}

/// Reduce a dense coefficient vector modulo Φ_n, returning exactly φ(n)
/// coefficients.
fn reduce_mod_cyclo(mut dense: Vec<Rational>, n: u64) -> Vec<Rational> {
    let cp = cyclotomic_poly(n);
    let d = cp.rat.len() - 1; // φ(n)
    if dense.len() > d {
        for k in (d..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if !cp.rat[i].is_zero() {
                    let delta = &c * &cp.rat[i];
                    dense[k - d + i] -= delta;
                }
            }
        }
    }
    dense.resize(d, Rational::zero());
    dense.truncate(d);
    dense
}

// ---------------------------------------------------------------------------
// Cyclotomic
// ---------------------------------------------------------------------------

/// An exact element of ℚ(ζ_n) on the power basis, reduced mod Φ_n.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>, // length φ(order)
}

impl Cyclotomic {
    /// ζ_n^k in canonical form (order n).
    pub fn zeta(n: u64, k: i64) -> Cyclotomic {
        assert!(n >= 1, "order must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![Rational::zero(); k + 1];
        dense[k] = Rational::one();
        Cyclotomic {
            order: n,
            coeffs: reduce_mod_cyclo(dense, n),
        }
    }

    pub fn from_rational(r: Rational) -> Cyclotomic {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(k: i64) -> Cyclotomic {
        Cyclotomic::from_rational(rat_int(k))
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic::from_rational(Rational::zero())
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_rational(Rational::one())
    }

    /// Construct from power-basis coefficients (length must be φ(n)).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Cyclotomic {
        assert_eq!(coeffs.len() as u64, phi(n), "coefficient length must be φ(n)");
        Cyclotomic { order: n, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Promote to a multiple `m` of the current order (ζ_n = ζ_m^{m/n}).
    pub fn promote(&self, m: u64) -> Cyclotomic {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "promotion target must be a multiple");
        let step = (m / self.order) as usize;
        let mut dense = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[j * step] = c.clone();
            }
        }
        Cyclotomic {
            order: m,
            coeffs: reduce_mod_cyclo(dense, m),
        }
    }

    fn common_order(&self, other: &Cyclotomic) -> Result<u64, NumError> {
        let cap = order_cap();
        match lcm_checked(self.order, other.order) {
            Some(l) if l <= cap => Ok(l),
            _ => Err(NumError::OrderOverflow(self.order, other.order, cap)),
        }
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let m = self.common_order(other)?;
        let a = self.promote(m);
        let b = other.promote(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Cyclotomic { order: m, coeffs })
    }

    pub fn try_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let m = self.common_order(other)?;
        let a = self.promote(m);
        let b = other.promote(m);
        let mut dense = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    dense[i + j] += ca * cb;
                }
            }
        }
        Ok(Cyclotomic {
            order: m,
            coeffs: reduce_mod_cyclo(dense, m),
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// ℚ[x]/Φ_n (Φ_n is irreducible, so any nonzero element is invertible).
    pub fn inv(&self) -> Result<Cyclotomic, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if self.is_rational() {
            let r = &self.coeffs[0];
            let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
            coeffs[0] = Rational::one() / r;
            return Ok(Cyclotomic {
                order: self.order,
                coeffs,
            });
        }
        let modulus = cyclotomic_poly(self.order).rat.clone();
        let mut f = self.coeffs.clone();
        ptrim(&mut f);
        // Extended Euclid: maintain s with s·f ≡ r (mod Φ_n).
        let mut r0 = f;
        let mut r1 = modulus;
        let mut s0 = vec![Rational::one()];
        let mut s1: Vec<Rational> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = pdivmod(&r0, &r1);
            let s = psub(&s0, &pmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        assert_eq!(pdeg(&r0), Some(0), "Φ_n must be coprime to nonzero elements");
        let c = r0[0].clone();
        let inv_coeffs: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs: reduce_mod_cyclo(inv_coeffs, self.order),
        })
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        self.try_mul(&other.inv()?)
    }

    /// Apply the Galois automorphism σ_i : ζ_n ↦ ζ_n^i (gcd(i, n) = 1).
    pub fn galois_apply(&self, i: i64) -> Result<Cyclotomic, NumError> {
        let n = self.order;
        let ir = i.rem_euclid(n as i64) as u64;
        if gcd_u64(ir, n) != 1 {
            return Err(NumError::NotCoprime { i, n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut dense = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (ir as u128 * j as u128 % n as u128) as usize;
                dense[e] += c;
            }
        }
        Ok(Cyclotomic {
            order: n,
            coeffs: reduce_mod_cyclo(dense, n),
        })
    }

    /// Complex conjugation (= σ_{−1}).
    pub fn conj(&self) -> Cyclotomic {
        self.galois_apply(-1).expect("-1 is always coprime")
    }

    pub fn pow(&self, k: i64) -> Result<Cyclotomic, NumError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// If `self` is a root of unity, return `(m, k)` with `self` = ζ_m^k and
    /// gcd(k, m) = 1; otherwise `None`.  The torsion of ℚ(ζ_n)× is exactly
    /// ⟨−ζ_n⟩, of order lcm(2, n), so scanning ±ζ_n^j is complete.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let n = self.order;
        if let Some(r) = self.to_rational() {
            if r.is_one() {
                return Some((1, 0));
            }
            if r == -Rational::one() {
                return Some((2, 1));
            }
            if n == 1 {
                return None;
            }
        }
        for j in 0..n {
            let cand = Cyclotomic::zeta(n, j as i64);
            let (matches_pos, matches_neg) = (cand.coeffs == self.coeffs, {
                cand.neg().coeffs == self.coeffs
            });
            if !(matches_pos || matches_neg) {
                continue;
            }
            let neg = matches_neg && !matches_pos;
            let (big_m, e) = if n % 2 == 0 {
                (n, (j + if neg { n / 2 } else { 0 }) % n)
            } else {
                (2 * n, (2 * j + if neg { n } else { 0 }) % (2 * n))
            };
            if e == 0 {
                return Some((1, 0));
            }
            let g = gcd_u64(e, big_m);
            return Some((big_m / g, e / g));
        }
        None
    }

    /// Trace to ℚ from the element's own field ℚ(ζ_n):
    /// Σ_{gcd(i,n)=1} σ_i(self), computed coefficient-wise via Ramanujan sums.
    pub fn trace_to_q(&self) -> Rational {
        let n = self.order;
        let mut acc = Rational::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * Rational::from_integer(BigInt::from(ramanujan(n, j as u64)));
            }
        }
        acc
    }

    /// High-precision complex embedding ζ_n ↦ e^{2πi/n}.
    pub fn embed_dd(&self) -> (Dd, Dd) {
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cos, sin) = Dd::cos_sin_tau_frac(j as i64, self.order as i64);
            let cd = Dd::from_rational(c);
            re = re.add(cos.mul(cd));
            im = im.add(sin.mul(cd));
        }
        (re, im)
    }

    /// Standard double-precision embedding.
    pub fn embed(&self) -> (f64, f64) {
        let (re, im) = self.embed_dd();
        (re.to_f64(), im.to_f64())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = lcm_checked(self.order, other.order)
            .filter(|&l| l <= order_cap())
            .expect("equality comparison exceeded the order cap");
        self.promote(m).coeffs == other.promote(m).coeffs
    }
}

impl Eq for Cyclotomic {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).expect("cyclotomic arithmetic failed")
            }
        }
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$try(&rhs).expect("cyclotomic arithmetic failed")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if j == 1 {
                write!(f, "({c})*z{}", self.order)?;
            } else {
                write!(f, "({c})*z{}^{j}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u64,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        if raw.coeffs.len() as u64 != phi(raw.order) {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}",
                phi(raw.order),
                raw.order
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cyclotomic::from_coeffs(raw.order, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::zeta(n, k)
    }

    #[test]
    fn zeta_basics() {
        assert_eq!(z(1, 0), Cyclotomic::one());
        assert_eq!(z(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn field_arithmetic_examples() {
        let one = Cyclotomic::one();
        let i = z(4, 1);
        assert_eq!(&(&one + &i) * &(&one - &i), Cyclotomic::from_int(2));
        assert_eq!(z(8, 1).inv().unwrap(), z(8, 7));
        let sum = &(&one + &z(3, 1)) + &z(3, 2);
        assert!(sum.is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            Cyclotomic::zero().inv(),
            Err(NumError::DivisionByZero)
        ));
    }

    #[test]
    fn order_cap_guard() {
        let a = z(1009, 1);
        let b = z(997 * 2, 1);
        // lcm(1009, 1994) = 2011946 > 10^6.
        assert!(matches!(
            a.try_mul(&b),
            Err(NumError::OrderOverflow(_, _, _))
        ));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(5, 1).galois_apply(-1).unwrap(), z(5, 4));
        let u = &z(5, 1) + &z(5, 4);
        let v = u.galois_apply(2).unwrap();
        assert_eq!(v, &z(5, 2) + &z(5, 3));
        let r = Cyclotomic::from_rational(rat(3, 2));
        assert_eq!(r.galois_apply(7).unwrap(), r);
        assert!(matches!(
            z(6, 1).galois_apply(3),
            Err(NumError::NotCoprime { .. })
        ));
    }

    #[test]
    fn galois_composition() {
        let u = &z(7, 1) + &(z(7, 3).scale(&rat(2, 5)));
        let a = u.galois_apply(2).unwrap().galois_apply(3).unwrap();
        let b = u.galois_apply(6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(z(8, 2).as_root_of_unity(), Some((4, 1)));
        assert_eq!(Cyclotomic::one().as_root_of_unity(), Some((1, 0)));
        assert_eq!(Cyclotomic::from_int(-1).as_root_of_unity(), Some((2, 1)));
        // (−3 + 4i)/5 has modulus 1 but is not a root of unity.
        let u = (&Cyclotomic::from_int(-3) + &z(4, 1).scale(&rat_int(4))).scale(&rat(1, 5));
        assert_eq!(u.as_root_of_unity(), None);
        // Minus a primitive root in an odd-order field.
        let m = z(5, 2).neg();
        assert_eq!(m.as_root_of_unity(), Some((10, 9)));
        for n in 1..=12u64 {
            for k in 0..n {
                let (m, e) = z(n, k as i64).as_root_of_unity().unwrap();
                let g = gcd_u64(k, n);
                if k == 0 {
                    assert_eq!((m, e), (1, 0));
                } else {
                    assert_eq!((m, e), (n / g, k / g));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(z(3, 1).trace_to_q(), rat_int(-1));
        assert_eq!(z(12, 0).trace_to_q(), rat_int(4)); // φ(12) = 4
        let u = &z(5, 1) + &z(5, 4);
        assert_eq!(u.trace_to_q(), rat_int(-2));
    }

    #[test]
    fn square_detection() {
        assert_eq!(rational_is_square(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_is_square(&rat_int(2)), None);
        assert_eq!(rational_is_square(&rat_int(0)), Some(rat_int(0)));
        assert_eq!(rational_is_square(&rat(-9, 4)), None);
        assert_eq!(rational_is_square(&rat(50, 2)), Some(rat_int(5)));
    }

    #[test]
    fn embedding_values() {
        let (re, im) = z(4, 1).embed();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        let (re, im) = z(6, 1).embed();
        assert!((re - 0.5).abs() < 1e-15);
        assert!((im - 0.75f64.sqrt()).abs() < 1e-15);
        let u = &(&z(8, 2) + &z(8, 1)) + &Cyclotomic::one();
        let (re, im) = u.embed();
        let expect = 1.0 + std::f64::consts::FRAC_1_SQRT_2;
        assert!((re - expect).abs() < 1e-14, "{re}");
        assert!((im - expect).abs() < 1e-14, "{im}");
    }

    #[test]
    fn embedding_is_multiplicative() {
        let u = &z(12, 1).scale(&rat(2, 3)) + &Cyclotomic::from_int(1);
        let v = &z(12, 7) + &z(12, 5).scale(&rat(1, 2));
        let w = &u * &v;
        let (ur, ui) = u.embed();
        let (vr, vi) = v.embed();
        let (wr, wi) = w.embed();
        assert!((wr - (ur * vr - ui * vi)).abs() < 1e-13);
        assert!((wi - (ur * vi + ui * vr)).abs() < 1e-13);
    }

    #[test]
    fn promotion_equality_across_orders() {
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert_ne!(z(5, 1), z(5, 2));
        assert_eq!(z(8, 2), z(4, 1));
    }

    #[test]
    fn serialization_roundtrip() {
        let u = &z(12, 5).scale(&rat(-7, 3)) + &Cyclotomic::from_rational(rat(1, 2));
        let json = serde_json::to_string(&u).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(u, back);
        assert_eq!(parse_rational("9/4").unwrap(), rat(9, 4));
        assert_eq!(rational_to_string(&rat(-3, 7)), "-3/7");
    }

    #[test]
    fn ramanujan_values() {
        // c_n(0) = φ(n); c_n(1) = μ(n).
        for n in 1..=30 {
            assert_eq!(ramanujan(n, 0), phi(n) as i64);
            assert_eq!(ramanujan(n, 1), moebius(n));
        }
        // g = 5, n/g = 2: μ(2)·φ(10)/φ(2) = −4.
        assert_eq!(ramanujan(10, 5), -4);
    }

    #[test]
    fn cyclotomic_polynomial_values() {
        // Φ_12 = x^4 - x^2 + 1.
        let p = cyclotomic_poly(12);
        let got: Vec<i64> = p.int.iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(got, vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of magnitude 2.
        let p = cyclotomic_poly(105);
        assert!(p.int.iter().any(|c| c.abs() == BigInt::from(2)));
    }
}
