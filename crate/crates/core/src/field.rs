//! Finite fields F_q with q = p^m.
//!
//! Elements are plain [`FieldElement`] values carrying the canonical integer
//! encoding: the residue `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is stored as
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. All arithmetic goes through a
//! [`FiniteField`], which is immutable after construction and shared as a
//! [`FieldRef`].
//!
//! Prime fields use direct modular arithmetic. Extension fields multiply
//! through exp/log tables built from a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

pub type FieldRef = Arc<FiniteField>;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// JSON fragment describing a field: `{"p": .., "m": .., "modulus": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    /// Coefficients of the monic modulus, low degree first, including the
    /// leading 1. Empty for prime fields.
    pub modulus: Vec<u32>,
}

pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has 2(q-1) entries so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 && p <= u32::MAX as u64 {
        Some((p as u32, m))
    } else {
        None
    }
}

impl FiniteField {
    /// Builds F_{p^m} with the lexicographically smallest monic irreducible
    /// modulus, where candidates are ordered by the integer encoding of their
    /// non-leading coefficients.
    pub fn new(p: u32, m: u32) -> Result<FieldRef> {
        check_order(p, m)?;
        if m == 1 {
            return Ok(Arc::new(Self::prime(p)));
        }
        let count = (p as u64).pow(m);
        for code in 0..count {
            let mut modulus = digits(code, p, m as usize);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Ok(Arc::new(Self::extension(p, m, modulus)));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    /// Builds F_{p^m} from an explicit modulus (low degree first, monic).
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<FieldRef> {
        check_order(p, m)?;
        if m == 1 {
            if !modulus.is_empty() && modulus != [0, 1] {
                return Err(Error::ReducibleModulus(m));
            }
            return Ok(Arc::new(Self::prime(p)));
        }
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(modulus, p)
        {
            return Err(Error::ReducibleModulus(m));
        }
        Ok(Arc::new(Self::extension(p, m, modulus.to_vec())))
    }

    /// Builds the field of order `q`.
    pub fn with_order(q: u64) -> Result<FieldRef> {
        match prime_power(q) {
            Some((p, m)) => Self::new(p, m),
            None => Err(Error::NonPrimeCharacteristic(q.min(u32::MAX as u64) as u32)),
        }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<FieldRef> {
        Self::with_modulus(d.p, d.m, &d.modulus)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    fn prime(p: u32) -> Self {
        FiniteField {
            p,
            m: 1,
            q: p,
            modulus: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        }
    }

    fn extension(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let order = (q - 1) as usize;
        // Search for a primitive element by walking its powers.
        for g in 2..q {
            let gpoly = digits(g as u64, p, m as usize);
            let mut exp = Vec::with_capacity(2 * order);
            let mut cur = digits(1, p, m as usize);
            let mut ok = true;
            for i in 0..order {
                let code = undigits(&cur, p);
                if i > 0 && code == 1 {
                    ok = false;
                    break;
                }
                exp.push(code);
                cur = poly_mulmod(&cur, &gpoly, &modulus, p);
            }
            if !ok {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            exp.extend_from_within(0..order);
            return FiniteField {
                p,
                m,
                q,
                modulus,
                exp,
                log,
            };
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, value: u32) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::NotInField { value, q: self.q })
        }
    }

    /// Element for a canonical encoding already known to be in range.
    #[inline]
    pub fn elem_unchecked(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.q);
        FieldElement(value)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All q elements in canonical encoding order, starting with 0 and 1.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else {
            let (mut x, mut y) = (a.0, b.0);
            let (mut out, mut place) = (0, 1);
            while x > 0 || y > 0 {
                out += ((x % self.p + y % self.p) % self.p) * place;
                x /= self.p;
                y /= self.p;
                place *= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else if self.p == 2 {
            a
        } else {
            let mut x = a.0;
            let (mut out, mut place) = (0, 1);
            while x > 0 {
                out += ((self.p - x % self.p) % self.p) * place;
                x /= self.p;
                place *= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.m == 1 {
            FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
        } else {
            let i = self.log[a.0 as usize] + self.log[b.0 as usize];
            FieldElement(self.exp[i as usize])
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            Ok(self.pow(a, (self.p - 2) as u64))
        } else {
            let order = self.q - 1;
            let l = self.log[a.0 as usize];
            Ok(FieldElement(self.exp[((order - l) % order) as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Checks that `a` and `b` could belong to this field and adds them.
    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(self.mul(a, b))
    }
}

fn check_order(p: u32, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if m == 0 || (p as u64).checked_pow(m).is_none_or(|q| q > MAX_ORDER) {
        return Err(Error::FieldTooLarge { p, m });
    }
    Ok(())
}

/// Base-p digits of `code`, low first, padded to `len`.
fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `b` over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
