//! Exact arithmetic in the cyclotomic field Q(zeta_M).
//!
//! Every scalar in the library is an element of a single ambient field
//! Q(zeta_M) fixed by the input header. Elements are stored as coefficient
//! vectors of length phi(M) over arbitrary-precision rationals, reduced
//! modulo the M-th cyclotomic polynomial, so equality of field elements is
//! plain equality of representations. M = 1 degenerates to the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{modulus})")]
    DivisionByZero { modulus: u64 },
    #[error("zero input where a nonzero scalar is required")]
    ZeroInput,
    #[error("no root of unity of order {order} in Q(zeta_{modulus})")]
    NoSuchRoot { order: u64, modulus: u64 },
}

/// Element of Q(zeta_M): a polynomial in zeta of degree < phi(M), reduced
/// mod Phi_M. The vector always has length phi(M) for the ambient field, so
/// derived equality and ordering are canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycScalar {
    coeffs: Vec<Rat>,
}

impl CycScalar {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q, i.e. all zeta-coefficients vanish.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

/// Arithmetic context for Q(zeta_M): the modulus, phi(M), the cyclotomic
/// polynomial Phi_M, and precomputed reductions of zeta^k for k >= phi(M).
///
/// All scalar operations go through a `&CycField`; values built under
/// different moduli must never be mixed (the library keeps one field per
/// arrangement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycField {
    modulus: u64,
    phi: usize,
    /// Phi_M as integer coefficients, degree phi, monic.
    min_poly: Vec<BigInt>,
    /// zeta^(phi + i) reduced, for i = 0 .. phi-2 (enough for products).
    power_table: Vec<Vec<Rat>>,
}

impl CycField {
    pub fn new(modulus: u64) -> CycField {
        assert!(modulus >= 1, "field modulus must be positive");
        let min_poly = cyclotomic_polynomial(modulus);
        let phi = min_poly.len() - 1;
        // x^(phi+i) mod Phi for every exponent a product or a zeta power can
        // ask for: products reach 2 phi - 2, literals reach M - 1.
        let top = (2 * phi - 1).max(modulus as usize);
        let mut power_table: Vec<Vec<Rat>> = Vec::new();
        if top > phi {
            let mut cur: Vec<Rat> = (0..phi)
                .map(|k| -Rat::from_integer(min_poly[k].clone()))
                .collect();
            power_table.push(cur.clone());
            for _ in (phi + 1)..top {
                // multiply by x
                let overflow = cur[phi - 1].clone();
                for k in (1..phi).rev() {
                    cur[k] = cur[k - 1].clone();
                }
                cur[0] = Rat::zero();
                if !overflow.is_zero() {
                    let head = &power_table[0];
                    for k in 0..phi {
                        cur[k] += &overflow * &head[k];
                    }
                }
                power_table.push(cur.clone());
            }
        }
        CycField {
            modulus,
            phi,
            min_poly,
            power_table,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// Largest order of a root of unity in Q(zeta_M): M when M is even,
    /// 2M when M is odd (the extra sign).
    pub fn root_capacity(&self) -> u64 {
        if self.modulus.is_multiple_of(2) {
            self.modulus
        } else {
            2 * self.modulus
        }
    }

    pub fn zero(&self) -> CycScalar {
        CycScalar {
            coeffs: vec![Rat::zero(); self.phi],
        }
    }

    pub fn one(&self) -> CycScalar {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, r: Rat) -> CycScalar {
        let mut coeffs = vec![Rat::zero(); self.phi];
        coeffs[0] = r;
        CycScalar { coeffs }
    }

    pub fn from_i64(&self, v: i64) -> CycScalar {
        self.from_rational(Rat::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> CycScalar {
        assert!(den != 0);
        self.from_rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// zeta_M^k, reduced.
    pub fn zeta_pow(&self, k: u64) -> CycScalar {
        let k = (k % self.modulus) as usize;
        if self.phi == 0 {
            unreachable!("phi >= 1 always");
        }
        if k < self.phi {
            let mut coeffs = vec![Rat::zero(); self.phi];
            coeffs[k] = Rat::one();
            CycScalar { coeffs }
        } else {
            CycScalar {
                coeffs: self.power_table[k - self.phi].clone(),
            }
        }
    }

    /// Generator of the full group of roots of unity (order `root_capacity`):
    /// zeta itself for even M, -zeta for odd M.
    pub fn root_generator(&self) -> CycScalar {
        let z = self.zeta_pow(1);
        if self.modulus.is_multiple_of(2) {
            z
        } else {
            self.neg(&z)
        }
    }

    /// A primitive root of unity of exact order `order`, when one exists.
    pub fn root_of_order(&self, order: u64) -> Result<CycScalar, CycError> {
        let cap = self.root_capacity();
        if order == 0 || !cap.is_multiple_of(order) {
            return Err(CycError::NoSuchRoot {
                order,
                modulus: self.modulus,
            });
        }
        Ok(self.pow(&self.root_generator(), cap / order))
    }

    /// All roots of unity of order dividing `order`, i.e. the cyclic group
    /// they form, listed as 1, w, w^2, ...
    pub fn roots_of_unity(&self, order: u64) -> Result<Vec<CycScalar>, CycError> {
        let w = self.root_of_order(order)?;
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = self.one();
        for _ in 0..order {
            out.push(cur.clone());
            cur = self.mul(&cur, &w);
        }
        Ok(out)
    }

    pub fn add(&self, a: &CycScalar, b: &CycScalar) -> CycScalar {
        CycScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &CycScalar, b: &CycScalar) -> CycScalar {
        CycScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &CycScalar) -> CycScalar {
        CycScalar {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CycScalar, b: &CycScalar) -> CycScalar {
        let phi = self.phi;
        let mut prod = vec![Rat::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut coeffs: Vec<Rat> = prod[..phi].to_vec();
        for (i, c) in prod[phi..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, t) in coeffs.iter_mut().zip(&self.power_table[i]) {
                *slot += c * t;
            }
        }
        CycScalar { coeffs }
    }

    pub fn inv(&self, a: &CycScalar) -> Result<CycScalar, CycError> {
        if a.is_zero() {
            return Err(CycError::DivisionByZero {
                modulus: self.modulus,
            });
        }
        if let Some(r) = a.as_rational() {
            return Ok(self.from_rational(r.recip()));
        }
        // Extended Euclid in Q[x] against Phi_M: since Phi_M is irreducible
        // over Q, gcd(a, Phi_M) is a nonzero constant g with
        // u*a + v*Phi = g, so a^{-1} = u/g.
        let phi_poly: Vec<Rat> = self
            .min_poly
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (g, u) = poly_half_ext_gcd(&a.coeffs, &phi_poly);
        debug_assert_eq!(g.len(), 1, "Phi_M must be coprime to any nonzero a");
        let ginv = g[0].recip();
        let mut coeffs: Vec<Rat> = u.iter().map(|c| c * &ginv).collect();
        coeffs.resize(self.phi, Rat::zero());
        // u has degree < deg Phi already when deg a < deg Phi
        debug_assert!(coeffs.len() == self.phi);
        let inv = CycScalar { coeffs };
        debug_assert_eq!(self.mul(a, &inv), self.one());
        Ok(inv)
    }

    pub fn div(&self, a: &CycScalar, b: &CycScalar) -> Result<CycScalar, CycError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &CycScalar, mut e: u64) -> CycScalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Least k >= 1 with a^k = 1, searched up to the field's root capacity;
    /// None when a is not a root of unity.
    pub fn root_of_unity_order(&self, a: &CycScalar) -> Result<Option<u64>, CycError> {
        if a.is_zero() {
            return Err(CycError::ZeroInput);
        }
        let bound = self.root_capacity();
        let one = self.one();
        let mut cur = a.clone();
        for k in 1..=bound {
            if cur == one {
                return Ok(Some(k));
            }
            cur = self.mul(&cur, a);
        }
        Ok(None)
    }

    /// Canonical literal: `p`, `p/q`, `z^k`, `r*z^k`, or a parenthesized
    /// signed sum of such terms. Round-trips through the scalar parser.
    pub fn render(&self, a: &CycScalar) -> String {
        render_coeffs(&a.coeffs)
    }
}

fn render_coeffs(coeffs: &[Rat]) -> String {
    let terms: Vec<(usize, &Rat)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    if terms.len() == 1 {
        return render_term(terms[0].0, terms[0].1);
    }
    let mut out = String::from("(");
    for (pos, (k, c)) in terms.iter().enumerate() {
        if pos == 0 {
            out.push_str(&render_term(*k, c));
        } else if c.is_negative() {
            out.push_str(" - ");
            let abs = -(*c).clone();
            out.push_str(&render_term(*k, &abs));
        } else {
            out.push_str(" + ");
            out.push_str(&render_term(*k, c));
        }
    }
    out.push(')');
    out
}

fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_term(k: usize, c: &Rat) -> String {
    if k == 0 {
        return render_rat(c);
    }
    let zpart = if k == 1 {
        "z".to_string()
    } else {
        format!("z^{}", k)
    };
    if c.is_one() {
        zpart
    } else if (-c.clone()).is_one() {
        format!("-{}", zpart)
    } else {
        format!("{}*{}", render_rat(c), zpart)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_coeffs(&self.coeffs))
    }
}

/// The monic M-th cyclotomic polynomial Phi_M with integer coefficients,
/// computed by dividing x^M - 1 by Phi_d for all proper divisors d of M.
/// Coefficients are returned lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^M - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (panics if not exact); divisor monic.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn poly_deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_rem_div(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = poly_deg(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![Rat::zero(); rem.len().saturating_sub(dd)];
    while let Some(rd) = poly_deg(&rem) {
        if rd < dd {
            break;
        }
        let c = &rem[rd] / &lead;
        quot[rd - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[rd - dd + j] -= t;
        }
    }
    (quot, rem)
}

/// Half-extended gcd: returns (g, u) with u*a = g mod b, g = gcd(a, b).
fn poly_half_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = b.to_vec();
    let mut r1 = a.to_vec();
    let mut u0: Vec<Rat> = vec![Rat::zero()];
    let mut u1: Vec<Rat> = vec![Rat::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_rem_div(&r0, &r1);
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
    }
    let d = poly_deg(&r0).expect("gcd of zero polynomials");
    r0.truncate(d + 1);
    // reduce u0 mod b to keep degrees small
    let (_, mut u) = poly_rem_div(&u0, b);
    if let Some(du) = poly_deg(&u) {
        u.truncate(du + 1);
    } else {
        u = vec![Rat::zero()];
    }
    (r0, u)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(Rat::zero);
            let y = b.get(k).cloned().unwrap_or_else(Rat::zero);
            x - y
        })
        .collect()
}
