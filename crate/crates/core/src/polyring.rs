//! Sparse multivariate polynomials over ℚ in the seven variables
//! `(a, b, c, d, x, y, z)`, together with the master equations of the
//! classification, their symmetry actions, and the τ-recovery maps.
//!
//! Monomial order: graded lexicographic with a < b < c < d < x < y < z
//! (z is the most significant variable in the lexicographic tie-break).

use crate::exactnum::{Cyclotomic, NumError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub const NVARS: usize = 7;
pub const VAR_NAMES: [&str; NVARS] = ["a", "b", "c", "d", "x", "y", "z"];

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const X: usize = 4;
pub const Y: usize = 5;
pub const Z: usize = 6;

/// Exponent vector for one monomial.
pub type Expo = [u8; NVARS];

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("ab = cd, no single τ can be recovered")]
    AbEqualsCd,
    #[error("the τ formula has a vanishing denominator at this solution")]
    ZeroDenominator,
    #[error("solution violates the nondegeneracy conditions: {0}")]
    DegenerateSolution(String),
    #[error("symmetry image is degenerate: {0}")]
    DegenerateImage(String),
    #[error("x = y, the ⟨3⟩+⟨2⟩ τ formula degenerates")]
    XEqualsY,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Graded-lex comparison (total degree first, then lexicographic with the
/// later variables more significant).
pub fn cmp_grlex(u: &Expo, v: &Expo) -> Ordering {
    let du: u32 = u.iter().map(|&e| e as u32).sum();
    let dv: u32 = v.iter().map(|&e| e as u32).sum();
    du.cmp(&dv).then_with(|| {
        for i in (0..NVARS).rev() {
            match u[i].cmp(&v[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// A sparse multivariate polynomial over ℚ; no zero coefficients are stored.
#[derive(Clone, Default, PartialEq)]
pub struct MultiPoly {
    terms: HashMap<Expo, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(r: Rational) -> MultiPoly {
        let mut p = MultiPoly::default();
        if !r.is_zero() {
            p.terms.insert([0; NVARS], r);
        }
        p
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn int(k: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_integer(BigInt::from(k)))
    }

    pub fn var(i: usize) -> MultiPoly {
        let mut e = [0u8; NVARS];
        e[i] = 1;
        let mut p = MultiPoly::default();
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn monomial(e: Expo, coeff: Rational) -> MultiPoly {
        let mut p = MultiPoly::default();
        if !coeff.is_zero() {
            p.terms.insert(e, coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Expo) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: Expo, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                let v = o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] = e[i]
                        .checked_add(e2[i])
                        .expect("monomial exponent overflow");
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> MultiPoly {
        if r.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading (exponent, coefficient) under graded-lex, if nonzero.
    pub fn leading_term(&self) -> Option<(Expo, Rational)> {
        self.terms
            .iter()
            .max_by(|(e1, _), (e2, _)| cmp_grlex(e1, e2))
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u8 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// True iff every monomial has the same total degree in the listed vars.
    pub fn homogeneous_in(&self, vars: &[usize], degree: u32) -> bool {
        self.terms.keys().all(|e| {
            vars.iter().map(|&v| e[v] as u32).sum::<u32>() == degree
        })
    }

    /// Substitute polynomials for variables (None keeps the variable).
    pub fn substitute(&self, map: &[Option<&MultiPoly>; NVARS]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            let mut residual = [0u8; NVARS];
            for i in 0..NVARS {
                match map[i] {
                    Some(p) => {
                        for _ in 0..e[i] {
                            term = term.mul(p);
                        }
                    }
                    None => residual[i] = e[i],
                }
            }
            if residual != [0; NVARS] {
                term = term.mul(&MultiPoly::monomial(residual, Rational::one()));
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact evaluation in a common cyclotomic field.
    pub fn eval(&self, assign: &[Cyclotomic; NVARS]) -> Result<Cyclotomic, NumError> {
        // Cache powers per variable.
        let mut powers: Vec<Vec<Cyclotomic>> = assign
            .iter()
            .map(|v| vec![Cyclotomic::one(), v.clone()])
            .collect();
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut term = Cyclotomic::from_rational(c.clone());
            for i in 0..NVARS {
                let k = e[i] as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().try_mul(&assign[i])?;
                    powers[i].push(next);
                }
                term = term.try_mul(&powers[i][k])?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Fast path: evaluation at a rational point.
    pub fn eval_rational(&self, assign: &[Rational; NVARS]) -> Rational {
        let mut powers: Vec<Vec<Rational>> = assign
            .iter()
            .map(|v| vec![Rational::one(), v.clone()])
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NVARS {
                let k = e[i] as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &assign[i];
                    powers[i].push(next);
                }
                term *= &powers[i][k];
            }
            acc += term;
        }
        acc
    }

    /// Attempt exact division: returns `g / self` when `g` is a polynomial
    /// multiple of `self` (graded-lex leading-term reduction), else None.
    pub fn divide_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        let (lf_e, lf_c) = self.leading_term()?;
        let mut rem = g.clone();
        let mut quot = MultiPoly::zero();
        while let Some((lr_e, lr_c)) = rem.leading_term() {
            let mut qe = [0u8; NVARS];
            for i in 0..NVARS {
                if lr_e[i] < lf_e[i] {
                    return None;
                }
                qe[i] = lr_e[i] - lf_e[i];
            }
            let qc = &lr_c / &lf_c;
            let qterm = MultiPoly::monomial(qe, qc);
            rem = rem.sub(&qterm.mul(self));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Primitive integer form: the positive rational multiple of `self`
    /// whose coefficients are coprime integers.  Sign is preserved.
    pub fn primitive_integer_form(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * Rational::from_integer(den_lcm.clone());
            num_gcd = num_gcd.gcd(scaled.numer());
        }
        let factor = Rational::new(den_lcm, num_gcd);
        self.scale(&factor)
    }

    /// One term per line: `coeff a^i b^j c^k d^l x^p y^q z^r` with integer
    /// coefficients after clearing denominators, descending graded-lex.
    pub fn to_text(&self) -> String {
        let prim = self.primitive_integer_form();
        let mut entries: Vec<(Expo, Rational)> =
            prim.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        entries.sort_by(|(e1, _), (e2, _)| cmp_grlex(e2, e1));
        let mut lines = Vec::with_capacity(entries.len());
        for (e, c) in entries {
            debug_assert!(c.is_integer());
            let mut line = c.numer().to_string();
            for i in 0..NVARS {
                match e[i] {
                    0 => {}
                    1 => line.push_str(&format!(" {}", VAR_NAMES[i])),
                    k => line.push_str(&format!(" {}^{}", VAR_NAMES[i], k)),
                }
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_text().replace('\n', " | "))
    }
}

/// True iff `g = h·f` for some polynomial `h` (exact division attempt).
pub fn identity_multiple_check(f: &MultiPoly, g: &MultiPoly) -> bool {
    if g.is_zero() {
        return true;
    }
    if f.is_zero() {
        return false;
    }
    f.divide_exact(g).is_some()
}

// ---------------------------------------------------------------------------
// The master equations
// ---------------------------------------------------------------------------

fn v(i: usize) -> MultiPoly {
    MultiPoly::var(i)
}

fn mono_xyz(p: u8, q: u8, r: u8) -> MultiPoly {
    MultiPoly::monomial([0, 0, 0, 0, p, q, r], Rational::one())
}

/// The 27-term master polynomial, expanded from its coefficient table: each
/// row contributes a degree-4 coefficient in (a,b,c,d) times one or two
/// monomials in (x,y,z).
fn build_main_p_impl() -> MultiPoly {
    let (a, b, c, d) = (v(A), v(B), v(C), v(D));
    let rows: Vec<(Vec<(u8, u8, u8)>, MultiPoly)> = vec![
        (
            vec![(2, 2, 2), (0, 0, 0)],
            b.mul(&a.sub(&c)).mul(&b.sub(&d)).mul(&d).neg(),
        ),
        (vec![(2, 2, 1), (0, 0, 1)], {
            // b(abc + abd − 2acd − 2bcd + c²d + cd²)
            let inner = a
                .mul(&b)
                .mul(&c)
                .add(&a.mul(&b).mul(&d))
                .sub(&a.mul(&c).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .sub(&b.mul(&c).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .add(&c.pow(2).mul(&d))
                .add(&c.mul(&d.pow(2)));
            b.mul(&inner)
        }),
        (vec![(2, 1, 2), (0, 1, 0)], {
            // d(a²b + ab² − 2abc − 2abd + acd + bcd)
            let inner = a
                .pow(2)
                .mul(&b)
                .add(&a.mul(&b.pow(2)))
                .sub(&a.mul(&b).mul(&c).scale(&crate::exactnum::rat_int(2)))
                .sub(&a.mul(&b).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .add(&a.mul(&c).mul(&d))
                .add(&b.mul(&c).mul(&d));
            d.mul(&inner)
        }),
        (
            vec![(1, 2, 2), (1, 0, 0)],
            a.sub(&c)
                .mul(&b.sub(&d))
                .mul(&a.mul(&b).add(&c.mul(&d))),
        ),
        (
            vec![(2, 2, 0), (0, 0, 2)],
            b.mul(&b.sub(&c)).mul(&c).mul(&a.sub(&d)).neg(),
        ),
        (vec![(2, 1, 1), (0, 1, 1)], {
            // −a²bc − ab²c − a²bd − ab²d + 8abcd − ac²d − bc²d − acd² − bcd²
            a.pow(2)
                .mul(&b)
                .mul(&c)
                .neg()
                .sub(&a.mul(&b.pow(2)).mul(&c))
                .sub(&a.pow(2).mul(&b).mul(&d))
                .sub(&a.mul(&b.pow(2)).mul(&d))
                .add(
                    &a.mul(&b)
                        .mul(&c)
                        .mul(&d)
                        .scale(&crate::exactnum::rat_int(8)),
                )
                .sub(&a.mul(&c.pow(2)).mul(&d))
                .sub(&b.mul(&c.pow(2)).mul(&d))
                .sub(&a.mul(&c).mul(&d.pow(2)))
                .sub(&b.mul(&c).mul(&d.pow(2)))
        }),
        (
            vec![(2, 0, 2), (0, 2, 0)],
            a.mul(&b.sub(&c)).mul(&a.sub(&d)).mul(&d).neg(),
        ),
        (vec![(1, 2, 1), (1, 0, 1)], {
            // −2a²b² + a²bc + ab²c − 2abc² + a²bd + ab²d + ac²d + bc²d
            //   − 2abd² + acd² + bcd² − 2c²d²
            quad_sym(&a, &b, &c, &d, QuadKind::Xy2zXz)
        }),
        (vec![(1, 1, 2), (1, 1, 0)], {
            // −2a²b² + a²bc + ab²c + a²bd + ab²d − 2a²cd − 2b²cd + ac²d
            //   + bc²d + acd² + bcd² − 2c²d²
            quad_sym(&a, &b, &c, &d, QuadKind::Xyz2Xy)
        }),
        (
            vec![(0, 2, 2), (2, 0, 0)],
            a.mul(&a.sub(&c)).mul(&c).mul(&b.sub(&d)).neg(),
        ),
        (vec![(2, 1, 0), (0, 1, 2)], {
            // c(a²b + ab² − 2abc − 2abd + acd + bcd)
            let inner = a
                .pow(2)
                .mul(&b)
                .add(&a.mul(&b.pow(2)))
                .sub(&a.mul(&b).mul(&c).scale(&crate::exactnum::rat_int(2)))
                .sub(&a.mul(&b).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .add(&a.mul(&c).mul(&d))
                .add(&b.mul(&c).mul(&d));
            c.mul(&inner)
        }),
        (vec![(2, 0, 1), (0, 2, 1)], {
            // a(abc + abd − 2acd − 2bcd + c²d + cd²)
            let inner = a
                .mul(&b)
                .mul(&c)
                .add(&a.mul(&b).mul(&d))
                .sub(&a.mul(&c).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .sub(&b.mul(&c).mul(&d).scale(&crate::exactnum::rat_int(2)))
                .add(&c.pow(2).mul(&d))
                .add(&c.mul(&d.pow(2)));
            a.mul(&inner)
        }),
        (
            vec![(1, 2, 0), (1, 0, 2)],
            b.sub(&c)
                .mul(&a.sub(&d))
                .mul(&a.mul(&b).add(&c.mul(&d))),
        ),
        (vec![(1, 1, 1)], {
            // 2(2a²b² − a²bc − ab²c + 2abc² − a²bd − ab²d + 2a²cd − 4abcd
            //   + 2b²cd − ac²d − bc²d + 2abd² − acd² − bcd² + 2c²d²)
            quad_sym(&a, &b, &c, &d, QuadKind::Xyz)
        }),
    ];
    let mut p = MultiPoly::zero();
    for (monos, coeff) in rows {
        for (px, qy, rz) in monos {
            p = p.add(&coeff.mul(&mono_xyz(px, qy, rz)));
        }
    }
    p
}

enum QuadKind {
    Xy2zXz,
    Xyz2Xy,
    Xyz,
}

fn quad_sym(
    a: &MultiPoly,
    b: &MultiPoly,
    c: &MultiPoly,
    d: &MultiPoly,
    kind: QuadKind,
) -> MultiPoly {
    use crate::exactnum::rat_int as ri;
    let t = |k: i64, f: MultiPoly| f.scale(&ri(k));
    let a2b2 = a.pow(2).mul(&b.pow(2));
    let a2bc = a.pow(2).mul(b).mul(c);
    let ab2c = a.mul(&b.pow(2)).mul(c);
    let abc2 = a.mul(b).mul(&c.pow(2));
    let a2bd = a.pow(2).mul(b).mul(d);
    let ab2d = a.mul(&b.pow(2)).mul(d);
    let a2cd = a.pow(2).mul(c).mul(d);
    let abcd = a.mul(b).mul(c).mul(d);
    let b2cd = b.pow(2).mul(c).mul(d);
    let ac2d = a.mul(&c.pow(2)).mul(d);
    let bc2d = b.mul(&c.pow(2)).mul(d);
    let abd2 = a.mul(b).mul(&d.pow(2));
    let acd2 = a.mul(c).mul(&d.pow(2));
    let bcd2 = b.mul(c).mul(&d.pow(2));
    let c2d2 = c.pow(2).mul(&d.pow(2));
    match kind {
        QuadKind::Xy2zXz => t(-2, a2b2)
            .add(&a2bc)
            .add(&ab2c)
            .add(&t(-2, abc2))
            .add(&a2bd)
            .add(&ab2d)
            .add(&ac2d)
            .add(&bc2d)
            .add(&t(-2, abd2))
            .add(&acd2)
            .add(&bcd2)
            .add(&t(-2, c2d2)),
        QuadKind::Xyz2Xy => t(-2, a2b2)
            .add(&a2bc)
            .add(&ab2c)
            .add(&a2bd)
            .add(&ab2d)
            .add(&t(-2, a2cd))
            .add(&t(-2, b2cd))
            .add(&ac2d)
            .add(&bc2d)
            .add(&acd2)
            .add(&bcd2)
            .add(&t(-2, c2d2)),
        QuadKind::Xyz => t(4, a2b2)
            .add(&t(-2, a2bc))
            .add(&t(-2, ab2c))
            .add(&t(4, abc2))
            .add(&t(-2, a2bd))
            .add(&t(-2, ab2d))
            .add(&t(4, a2cd))
            .add(&t(-8, abcd))
            .add(&t(4, b2cd))
            .add(&t(-2, ac2d))
            .add(&t(-2, bc2d))
            .add(&t(4, abd2))
            .add(&t(-2, acd2))
            .add(&t(-2, bcd2))
            .add(&t(4, c2d2)),
    }
}

static MAIN_P: Lazy<MultiPoly> = Lazy::new(build_main_p_impl);
static P32: Lazy<MultiPoly> = Lazy::new(build_p32_impl);
static F_ABCD: Lazy<MultiPoly> = Lazy::new(build_f_abcd_impl);

/// The 27-term master polynomial P(a,b,c,d,x,y,z).
pub fn build_main_p() -> &'static MultiPoly {
    &MAIN_P
}

/// The 14-term ⟨3⟩+⟨2⟩ polynomial (variables a,b,c and x,y,z).
pub fn build_p32() -> &'static MultiPoly {
    &P32
}

/// The 8-term ab=cd factor: (d−b)xyz + (b−c)xy + (a−d)xz + (c−a)yz
/// + (c−a)x + (a−d)y + (b−c)z + (d−b).
pub fn build_f_abcd() -> &'static MultiPoly {
    &F_ABCD
}

fn build_p32_impl() -> MultiPoly {
    use crate::exactnum::rat_int as ri;
    let (a, b, c) = (v(A), v(B), v(C));
    let (x, y, z) = (v(X), v(Y), v(Z));
    // 2a² − a(b+c) + 2bc
    let lead = a
        .pow(2)
        .scale(&ri(2))
        .sub(&a.mul(&b.add(&c)))
        .add(&b.mul(&c).scale(&ri(2)));
    lead.mul(&x).mul(&y)
        .sub(&a.mul(&b).mul(&x.pow(2)).mul(&y))
        .sub(&a.mul(&c).mul(&y))
        .sub(&lead.mul(&x).mul(&y).mul(&z))
        .add(&a.mul(&b).mul(&y).mul(&z))
        .add(&a.mul(&c).mul(&x.pow(2)).mul(&y).mul(&z))
        .add(&b.mul(&a.sub(&c)).mul(&x.pow(2)))
        .add(&c.mul(&a.sub(&b)).mul(&y.pow(2)))
        .sub(&a.mul(&a.sub(&b)).mul(&x).mul(&y.pow(2)))
        .sub(&a.mul(&a.sub(&c)).mul(&x))
        .sub(&b.mul(&a.sub(&c)).mul(&y.pow(2)).mul(&z))
        .sub(&c.mul(&a.sub(&b)).mul(&x.pow(2)).mul(&z))
        .add(&a.mul(&a.sub(&b)).mul(&x).mul(&z))
        .add(&a.mul(&a.sub(&c)).mul(&x).mul(&y.pow(2)).mul(&z))
}

fn build_f_abcd_impl() -> MultiPoly {
    let (a, b, c, d) = (v(A), v(B), v(C), v(D));
    let (x, y, z) = (v(X), v(Y), v(Z));
    let db = d.sub(&b);
    let bc = b.sub(&c);
    let ad = a.sub(&d);
    let ca = c.sub(&a);
    db.mul(&x).mul(&y).mul(&z)
        .add(&bc.mul(&x).mul(&y))
        .add(&ad.mul(&x).mul(&z))
        .add(&ca.mul(&y).mul(&z))
        .add(&ca.mul(&x))
        .add(&ad.mul(&y))
        .add(&bc.mul(&z))
        .add(&db)
}

// ---------------------------------------------------------------------------
// Solutions and symmetries
// ---------------------------------------------------------------------------

/// An exact solution tuple of the master equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub x: Cyclotomic,
    pub y: Cyclotomic,
    pub z: Cyclotomic,
}

impl Solution {
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        x: Cyclotomic,
        y: Cyclotomic,
        z: Cyclotomic,
    ) -> Solution {
        Solution { a, b, c, d, x, y, z }
    }

    pub fn assignment(&self) -> [Cyclotomic; NVARS] {
        [
            Cyclotomic::from_rational(self.a.clone()),
            Cyclotomic::from_rational(self.b.clone()),
            Cyclotomic::from_rational(self.c.clone()),
            Cyclotomic::from_rational(self.d.clone()),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    pub fn rationals(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// lcm of the multiplicative orders of x, y, z.
    pub fn common_order(&self) -> Option<u64> {
        let mut m = 1u64;
        for u in [&self.x, &self.y, &self.z] {
            let (o, _) = u.as_root_of_unity()?;
            m = crate::exactnum::lcm_checked(m, o)?;
        }
        Some(m)
    }
}

/// The five symmetry generators of the master equation plus Galois elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryElement {
    /// (a,b) ↔ (b,a), y → 1/y.
    SwapAb,
    /// (c,d) ↔ (d,c), z → 1/z.
    SwapCd,
    /// all of a,b,c,d inverted, x → 1/x.
    Invert,
    /// (a,b) ↔ (c,d), y ↔ z.
    SwapPairs,
    /// the polynomial rescaling generator with x ↔ y.
    Cross,
    /// σ_i on the root-of-unity coordinates.
    Galois(i64),
}

pub const GENERATORS: [SymmetryElement; 5] = [
    SymmetryElement::SwapAb,
    SymmetryElement::SwapCd,
    SymmetryElement::Invert,
    SymmetryElement::SwapPairs,
    SymmetryElement::Cross,
];

/// Clear the four rational entries to a coprime integer tuple by a positive
/// rational rescaling (the master polynomial is homogeneous of degree 4 in
/// (a,b,c,d), so this preserves solutions).
fn normalize_quadruple(vals: [Rational; 4]) -> [Rational; 4] {
    let mut den_lcm = BigInt::one();
    for r in &vals {
        den_lcm = den_lcm.lcm(r.denom());
    }
    let mut num_gcd = BigInt::zero();
    for r in &vals {
        let s = r * Rational::from_integer(den_lcm.clone());
        num_gcd = num_gcd.gcd(s.numer());
    }
    if num_gcd.is_zero() {
        return vals;
    }
    let factor = Rational::new(den_lcm, num_gcd);
    vals.map(|r| r * &factor)
}

pub fn apply_symmetry(s: SymmetryElement, sol: &Solution) -> Result<Solution, PolyError> {
    let out = match s {
        SymmetryElement::SwapAb => Solution::new(
            sol.b.clone(),
            sol.a.clone(),
            sol.c.clone(),
            sol.d.clone(),
            sol.x.clone(),
            sol.y.inv()?,
            sol.z.clone(),
        ),
        SymmetryElement::SwapCd => Solution::new(
            sol.a.clone(),
            sol.b.clone(),
            sol.d.clone(),
            sol.c.clone(),
            sol.x.clone(),
            sol.y.clone(),
            sol.z.inv()?,
        ),
        SymmetryElement::Invert => {
            for (name, r) in [("a", &sol.a), ("b", &sol.b), ("c", &sol.c), ("d", &sol.d)] {
                if r.is_zero() {
                    return Err(PolyError::DegenerateImage(format!(
                        "cannot invert: {name} = 0"
                    )));
                }
            }
            Solution::new(
                sol.a.recip(),
                sol.b.recip(),
                sol.c.recip(),
                sol.d.recip(),
                sol.x.inv()?,
                sol.y.clone(),
                sol.z.clone(),
            )
        }
        SymmetryElement::SwapPairs => Solution::new(
            sol.c.clone(),
            sol.d.clone(),
            sol.a.clone(),
            sol.b.clone(),
            sol.x.clone(),
            sol.z.clone(),
            sol.y.clone(),
        ),
        SymmetryElement::Cross => {
            let (a, b, c, d) = (&sol.a, &sol.b, &sol.c, &sol.d);
            let ac = a - c;
            let ad = a - d;
            let imgs = [
                a * &ac * &ad,
                b * &ac * &ad,
                a * (b - c) * &ad,
                a * (b - d) * &ac,
            ];
            if imgs.iter().any(|r| r.is_zero()) {
                return Err(PolyError::DegenerateImage(
                    "rescaling generator maps a coordinate to zero".into(),
                ));
            }
            let [na, nb, nc, nd] = normalize_quadruple(imgs);
            Solution::new(
                na,
                nb,
                nc,
                nd,
                sol.y.clone(),
                sol.x.clone(),
                sol.z.clone(),
            )
        }
        SymmetryElement::Galois(i) => Solution::new(
            sol.a.clone(),
            sol.b.clone(),
            sol.c.clone(),
            sol.d.clone(),
            sol.x.galois_apply(i)?,
            sol.y.galois_apply(i)?,
            sol.z.galois_apply(i)?,
        ),
    };
    Ok(out)
}

// ---------------------------------------------------------------------------
// τ recovery
// ---------------------------------------------------------------------------

/// Recover the lattice generator τ from a solution with ab ≠ cd:
/// τ = (cd−ab)·x·(y−1)(z−1) / (a(y−x)(z−1) + b(xy−1)(z−1)
///      − c(z−x)(y−1) − d(xz−1)(y−1)).
pub fn tau_from_solution(sol: &Solution) -> Result<Cyclotomic, PolyError> {
    if &sol.a * &sol.b == &sol.c * &sol.d {
        return Err(PolyError::AbEqualsCd);
    }
    let one = Cyclotomic::one();
    for (name, u) in [("x", &sol.x), ("y", &sol.y), ("z", &sol.z)] {
        if *u == one {
            return Err(PolyError::DegenerateSolution(format!("{name} = 1")));
        }
    }
    let (x, y, z) = (&sol.x, &sol.y, &sol.z);
    let ym1 = y.try_sub(&one)?;
    let zm1 = z.try_sub(&one)?;
    let cd_ab = Cyclotomic::from_rational(&sol.c * &sol.d - &sol.a * &sol.b);
    let num = cd_ab.try_mul(x)?.try_mul(&ym1)?.try_mul(&zm1)?;
    let term_a = y.try_sub(x)?.try_mul(&zm1)?.scale(&sol.a);
    let term_b = x.try_mul(y)?.try_sub(&one)?.try_mul(&zm1)?.scale(&sol.b);
    let term_c = z.try_sub(x)?.try_mul(&ym1)?.scale(&sol.c);
    let term_d = x.try_mul(z)?.try_sub(&one)?.try_mul(&ym1)?.scale(&sol.d);
    let den = term_a.try_add(&term_b)?.try_sub(&term_c)?.try_sub(&term_d)?;
    if den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(num.try_div(&den)?)
}

/// τ = a·x·(y−1)/(x−y), the generator of a ⟨3⟩+⟨2⟩ space.
pub fn tau_3plus2(a: &Rational, x: &Cyclotomic, y: &Cyclotomic) -> Result<Cyclotomic, PolyError> {
    if x == y {
        return Err(PolyError::XEqualsY);
    }
    let num = x
        .scale(a)
        .try_mul(&y.try_sub(&Cyclotomic::one())?)?;
    Ok(num.try_div(&x.try_sub(y)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn z10(k: i64) -> Cyclotomic {
        Cyclotomic::zeta(10, k)
    }

    fn abcd4_solution() -> Solution {
        Solution::new(
            rat_int(3),
            rat(1, 2),
            rat(3, 2),
            rat_int(1),
            z10(1),
            z10(2),
            z10(3),
        )
    }

    #[test]
    fn main_p_shape() {
        let p = build_main_p();
        // 27 monomials in (x,y,z), covering {0,1,2}³.
        let mut xyz = std::collections::HashSet::new();
        for (e, _) in p.terms() {
            xyz.insert((e[X], e[Y], e[Z]));
            assert!(e[X] <= 2 && e[Y] <= 2 && e[Z] <= 2);
        }
        assert_eq!(xyz.len(), 27);
        assert!(p.homogeneous_in(&[A, B, C, D], 4));
    }

    #[test]
    fn main_p_corner_coefficient() {
        // Coefficient of x²y²z² is −b(a−c)(b−d)d.
        let p = build_main_p();
        let mut got = MultiPoly::zero();
        for (e, c) in p.terms() {
            if (e[X], e[Y], e[Z]) == (2, 2, 2) {
                let mut abcd = *e;
                abcd[X] = 0;
                abcd[Y] = 0;
                abcd[Z] = 0;
                got = got.add(&MultiPoly::monomial(abcd, c.clone()));
            }
        }
        let (a, b, c, d) = (v(A), v(B), v(C), v(D));
        let expect = b.mul(&a.sub(&c)).mul(&b.sub(&d)).mul(&d).neg();
        assert_eq!(got, expect);
    }

    #[test]
    fn main_p_degenerate_substitutions() {
        let p = build_main_p();
        // a = b = c = d collapses the polynomial to zero.
        let a = v(A);
        let map = [Some(&a), Some(&a), Some(&a), Some(&a), None, None, None];
        assert!(p.substitute(&map).is_zero());
        // x = y = z = 1 likewise.
        let one = MultiPoly::one();
        let map = [None, None, None, None, Some(&one), Some(&one), Some(&one)];
        assert!(p.substitute(&map).is_zero());
    }

    #[test]
    fn classified_solution_vanishes() {
        let sol = abcd4_solution();
        let val = build_main_p().eval(&sol.assignment()).unwrap();
        assert!(val.is_zero());
        let val = build_f_abcd().eval(&sol.assignment()).unwrap();
        assert!(val.is_zero());
    }

    #[test]
    fn f_abcd_at_ones() {
        let one = MultiPoly::one();
        let map = [None, None, None, None, Some(&one), Some(&one), Some(&one)];
        assert!(build_f_abcd().substitute(&map).is_zero());
        // Eight monomials in (x,y,z), two coefficient terms each.
        assert_eq!(build_f_abcd().num_terms(), 16);
    }

    #[test]
    fn p32_is_specialized_main_p() {
        // P with b = 0, (a,c,d) relabelled to (a,b,c) and y → x/y (cleared
        // by y²) is a polynomial multiple of the 14-term equation.
        let p = build_main_p();
        let zero = MultiPoly::zero();
        let (ab, bc) = (v(B), v(C));
        let map = [None, Some(&zero), Some(&ab), Some(&bc), None, None, None];
        let q = p.substitute(&map);
        let mut transformed = MultiPoly::zero();
        for (e, c) in q.terms() {
            let mut ne = *e;
            let ey = e[Y];
            ne[X] += ey;
            ne[Y] = 2 - ey;
            transformed = transformed.add(&MultiPoly::monomial(ne, c.clone()));
        }
        assert!(identity_multiple_check(build_p32(), &transformed));
        let mut xyz_monos = std::collections::HashSet::new();
        for (e, _) in build_p32().terms() {
            xyz_monos.insert((e[X], e[Y], e[Z]));
        }
        assert_eq!(xyz_monos.len(), 14);
    }

    #[test]
    fn symmetry_images_are_polynomial_multiples() {
        let p = build_main_p();
        let (a, b, c, d) = (v(A), v(B), v(C), v(D));

        // Generator 1: (a,b) swap with y → 1/y (cleared by y²).
        let map = [Some(&b), Some(&a), None, None, None, None, None];
        let swapped = p.substitute(&map);
        let mut img1 = MultiPoly::zero();
        for (e, cf) in swapped.terms() {
            let mut ne = *e;
            ne[Y] = 2 - e[Y];
            img1 = img1.add(&MultiPoly::monomial(ne, cf.clone()));
        }
        assert!(identity_multiple_check(p, &img1), "generator 1");

        // Generator 3: all of a,b,c,d,x inverted, cleared by (abcd)²x².
        let mut img3 = MultiPoly::zero();
        for (e, cf) in p.terms() {
            let ne = [
                2 - e[A],
                2 - e[B],
                2 - e[C],
                2 - e[D],
                2 - e[X],
                e[Y],
                e[Z],
            ];
            img3 = img3.add(&MultiPoly::monomial(ne, cf.clone()));
        }
        assert!(identity_multiple_check(p, &img3), "generator 3");

        // Generator 4: (a,b) ↔ (c,d), y ↔ z — plain substitution.
        let map = [Some(&c), Some(&d), Some(&a), Some(&b), None, None, None];
        let mut img4 = MultiPoly::zero();
        for (e, cf) in p.substitute(&map).terms() {
            let ne = [e[A], e[B], e[C], e[D], e[X], e[Z], e[Y]];
            img4 = img4.add(&MultiPoly::monomial(ne, cf.clone()));
        }
        assert!(identity_multiple_check(p, &img4), "generator 4");

        // Generator 5: polynomial rescaling with x ↔ y.
        let ac = a.sub(&c);
        let ad = a.sub(&d);
        let ga = a.mul(&ac).mul(&ad);
        let gb = b.mul(&ac).mul(&ad);
        let gc = a.mul(&b.sub(&c)).mul(&ad);
        let gd = a.mul(&b.sub(&d)).mul(&ac);
        let map = [Some(&ga), Some(&gb), Some(&gc), Some(&gd), None, None, None];
        let mut img5 = MultiPoly::zero();
        for (e, cf) in p.substitute(&map).terms() {
            let ne = [e[A], e[B], e[C], e[D], e[Y], e[X], e[Z]];
            img5 = img5.add(&MultiPoly::monomial(ne, cf.clone()));
        }
        assert!(identity_multiple_check(p, &img5), "generator 5");
    }

    #[test]
    fn identity_multiple_examples() {
        let p = build_main_p();
        assert!(identity_multiple_check(p, &p.scale(&rat_int(2))));
        assert!(!identity_multiple_check(p, &p.add(&MultiPoly::one())));
        let q = p.mul(&v(A).add(&v(X).pow(2)));
        assert!(identity_multiple_check(p, &q));
    }

    #[test]
    fn apply_symmetry_preserves_solutions() {
        let sol = abcd4_solution();
        let p = build_main_p();
        for g in GENERATORS {
            let img = apply_symmetry(g, &sol).unwrap();
            assert!(
                p.eval(&img.assignment()).unwrap().is_zero(),
                "generator {g:?}"
            );
        }
        let img = apply_symmetry(SymmetryElement::Galois(3), &sol).unwrap();
        assert!(p.eval(&img.assignment()).unwrap().is_zero());
        // The inversion generator is an involution.
        let inv = apply_symmetry(SymmetryElement::Invert, &sol).unwrap();
        let back = apply_symmetry(SymmetryElement::Invert, &inv).unwrap();
        assert_eq!(back, sol);
    }

    #[test]
    fn cross_generator_normalization() {
        let sol = abcd4_solution();
        let img = apply_symmetry(SymmetryElement::Cross, &sol).unwrap();
        // Images are cleared to a coprime integer quadruple.
        assert_eq!(
            [&img.a, &img.b, &img.c, &img.d].map(|r| r.clone()),
            [rat_int(12), rat_int(2), rat_int(-8), rat_int(-3)]
        );
        assert_eq!(img.x, z10(2));
        assert_eq!(img.y, z10(1));
    }

    #[test]
    fn tau_errors() {
        // ab = cd for the isolated configuration: no single τ exists.
        assert!(matches!(
            tau_from_solution(&abcd4_solution()),
            Err(PolyError::AbEqualsCd)
        ));
        let mut sol = abcd4_solution();
        sol.a = rat_int(4);
        sol.z = Cyclotomic::one();
        assert!(matches!(
            tau_from_solution(&sol),
            Err(PolyError::DegenerateSolution(_))
        ));
    }

    #[test]
    fn tau_3plus2_values() {
        let x = Cyclotomic::zeta(4, 1);
        let y = Cyclotomic::zeta(4, 3);
        let tau = tau_3plus2(&rat_int(1), &x, &y).unwrap();
        // τ = i·(−i−1)/(2i) = −(1+i)/2.
        let expect = Cyclotomic::one()
            .try_add(&Cyclotomic::zeta(4, 1))
            .unwrap()
            .scale(&rat(-1, 2));
        assert_eq!(tau, expect);
        assert!(matches!(
            tau_3plus2(&rat_int(1), &x, &x),
            Err(PolyError::XEqualsY)
        ));
    }

    #[test]
    fn text_export_is_deterministic_and_integral() {
        let p = v(A)
            .mul(&v(X).pow(2))
            .scale(&rat(2, 3))
            .add(&v(Z).scale(&rat(-1, 6)))
            .add(&MultiPoly::one());
        let text = p.to_text();
        assert_eq!(text, "4 a x^2\n-1 z\n6");
        assert_eq!(text, p.to_text());
    }

    #[test]
    fn grlex_order() {
        // z beats y in ties; total degree dominates.
        let e1: Expo = [0, 0, 0, 0, 0, 0, 1];
        let e2: Expo = [0, 0, 0, 0, 0, 1, 0];
        let e3: Expo = [2, 0, 0, 0, 0, 0, 1];
        assert_eq!(cmp_grlex(&e1, &e2), Ordering::Greater);
        assert_eq!(cmp_grlex(&e3, &e1), Ordering::Greater);
        assert_eq!(cmp_grlex(&e1, &e1), Ordering::Equal);
    }
}
