//! Arithmetic in GF(q^3), q = p^k, over discrete-log (Zech) tables.
//!
//! Field elements are stored as `log + 1`, with `0` reserved for zero, so
//! multiplication, inversion, Frobenius and the relative norm onto GF(q) are
//! all exponent arithmetic modulo `q^3 - 1`. Addition goes through the Zech
//! table `Z(i) = log(1 + t^i)`.
//!
//! The tables are built from a polynomial-basis model of the field: the
//! modulus is the lexicographically smallest monic irreducible of degree
//! `3k` over GF(p) (coefficients compared from the constant term up) and the
//! generator `t` is the first element, in polynomial-encoding order, of full
//! multiplicative order. The same `(p, k)` therefore always yields the same
//! tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Largest field (number of elements) the tables may describe.
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 21;

/// An element of GF(q^3): `0` is zero, `i + 1` is `t^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Dense index in `0..q^3`, used for flat tables.
    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    /// Discrete logarithm to base `t`.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Prints `0`, `1` or `t^i`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("0"),
            1 => f.write_str("1"),
            r => write!(f, "t^{}", r - 1),
        }
    }
}

/// The JSON description of a field written into every report header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Coefficients `c0..c_{3k}` of the modulus, constant term first.
    pub irreducible: Vec<u32>,
    /// Polynomial-basis encoding (`sum c_i p^i`) of the generator `t`.
    pub generator_log_base: u32,
}

/// GF(p) ⊂ GF(q) ⊂ GF(q^3) with its discrete-log tables.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    q3: u32,
    /// `q^3 - 1`.
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: Elem,
}

impl Field {
    /// Builds GF(p^{3k}) with the default table bound.
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, k, DEFAULT_TABLE_BOUND)
    }

    /// Factors `q` into `p^k` and builds GF(q^3).
    pub fn from_q(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p as u32, k)
    }

    pub fn with_bound(p: u32, k: u32, bound: u64) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let n = 3 * k;
        let size = (p as u64).checked_pow(n).filter(|&s| s <= bound);
        let Some(size) = size else {
            return Err(FieldError::TableBound {
                p: p as u64,
                n,
                bound,
            });
        };
        let q = p.pow(k);
        let q3 = size as u32;
        let order = q3 - 1;

        let modulus = poly::smallest_irreducible(p, n as usize);
        let generator = poly::smallest_primitive(p, &modulus, order);

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q3 as usize];
        let g = poly::decode(generator, p, n as usize);
        let mut cur = poly::decode(1, p, n as usize);
        for i in 0..order {
            let enc = poly::encode(&cur, p);
            exp.push(enc);
            log[enc as usize] = i;
            cur = poly::mulmod(&cur, &g, &modulus, p);
        }
        debug_assert_eq!(poly::encode(&cur, p), 1);

        let zech = exp
            .iter()
            .map(|&e| {
                let s = plus_one(e, p);
                if s == 0 {
                    0
                } else {
                    log[s as usize] + 1
                }
            })
            .collect();
        let neg_one = if p == 2 {
            Elem::ONE
        } else {
            Elem(order / 2 + 1)
        };

        Ok(Self {
            p,
            k,
            q,
            q3,
            order,
            modulus,
            generator,
            exp,
            log,
            zech,
            neg_one,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements of GF(q^3).
    pub fn size(&self) -> u32 {
        self.q3
    }

    /// `q^3 - 1`, the order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `q^2 + q + 1`, the norm exponent and the index of GF(q)* in GF(q^3)*.
    pub fn norm_exponent(&self) -> u32 {
        self.q * self.q + self.q + 1
    }

    /// The Figueroa construction is only defined for q > 2.
    pub fn figueroa_warning(&self) -> bool {
        self.q < 3
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            k: self.k,
            irreducible: self.modulus.clone(),
            generator_log_base: self.generator,
        }
    }

    /// The multiplicative generator `t`.
    #[inline]
    pub fn gen(&self) -> Elem {
        self.from_log(1)
    }

    /// `t^i`, with `i` reduced modulo `q^3 - 1`.
    #[inline]
    pub fn from_log(&self, i: u64) -> Elem {
        Elem((i % self.order as u64) as u32 + 1)
    }

    /// Element with dense index `raw` (inverse of [`Elem::raw`]).
    pub fn from_raw(&self, raw: u32) -> Elem {
        assert!(raw < self.q3, "raw index {raw} out of range");
        Elem(raw)
    }

    /// Element whose polynomial-basis encoding is `enc`.
    pub fn from_poly_encoding(&self, enc: u32) -> Elem {
        match enc {
            0 => Elem::ZERO,
            e => Elem(self.log[e as usize] + 1),
        }
    }

    pub fn to_poly_encoding(&self, a: Elem) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.exp[l as usize],
        }
    }

    /// Every element, zero first, in dense-index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q3).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q3).map(Elem)
    }

    /// The elements of GF(q), zero first.
    pub fn base_subfield(&self) -> Vec<Elem> {
        let step = self.norm_exponent() as u64;
        std::iter::once(Elem::ZERO)
            .chain((0..(self.q - 1) as u64).map(|j| self.from_log(j * step)))
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (Some(la), Some(lb)) = (a.log(), b.log()) else {
            return Elem(a.0 | b.0);
        };
        let d = if lb >= la {
            lb - la
        } else {
            lb + self.order - la
        };
        match self.zech[d as usize] {
            0 => Elem::ZERO,
            z => {
                let s = la + z - 1;
                Elem(if s >= self.order { s - self.order } else { s } + 1)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = (a.0 - 1) + (b.0 - 1);
        Elem(if s >= self.order { s - self.order } else { s } + 1)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        match a.log() {
            None => Err(FieldError::ZeroInverse),
            Some(0) => Ok(Elem::ONE),
            Some(l) => Ok(Elem(self.order - l + 1)),
        }
    }

    /// `a / b`.
    ///
    /// Panics if `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        let lb = b.log().expect("division by zero in GF(q^3)");
        match a.log() {
            None => Elem::ZERO,
            Some(la) => Elem(
                if la >= lb {
                    la - lb
                } else {
                    la + self.order - lb
                } + 1,
            ),
        }
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        match a.log() {
            None if n == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => self.from_log(l as u64 * (n % self.order as u64)),
        }
    }

    /// `x^{q^i}`.
    #[inline]
    pub fn frob(&self, x: Elem, i: u32) -> Elem {
        match x.log() {
            None => Elem::ZERO,
            Some(l) => {
                let e = (self.q as u64).pow(i % 3) % self.order as u64;
                self.from_log(l as u64 * e)
            }
        }
    }

    /// Relative norm GF(q^3) -> GF(q), `x^{q^2+q+1}`.
    #[inline]
    pub fn norm(&self, x: Elem) -> Elem {
        match x.log() {
            None => Elem::ZERO,
            Some(l) => self.from_log(l as u64 * self.norm_exponent() as u64),
        }
    }

    /// `x^q == x`.
    pub fn in_base_subfield(&self, x: Elem) -> bool {
        match x.log() {
            None => true,
            Some(l) => l % self.norm_exponent() == 0,
        }
    }

    pub fn is_nonzero_square(&self, x: Elem) -> bool {
        match x.log() {
            None => false,
            Some(l) => self.p == 2 || l % 2 == 0,
        }
    }

    pub fn neg_one(&self) -> Elem {
        self.neg_one
    }

    /// Parses the `0` / `1` / `t^i` syntax produced by [`Elem`]'s `Display`.
    pub fn parse_elem(&self, s: &str) -> Option<Elem> {
        match s.trim() {
            "0" => Some(Elem::ZERO),
            "1" => Some(Elem::ONE),
            other => {
                let i: u64 = other.strip_prefix("t^")?.parse().ok()?;
                Some(self.from_log(i))
            }
        }
    }
}

/// Adds one to the constant coefficient of a polynomial-basis encoding.
#[inline]
fn plus_one(enc: u32, p: u32) -> u32 {
    let c0 = enc % p;
    enc - c0 + (c0 + 1) % p
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^k` with `p` prime, if it is one.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over GF(p), constant term first. Only used while the
/// tables are being built.
pub(crate) mod poly {
    use super::prime_factors;

    pub fn encode(a: &[u32], p: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn decode(mut enc: u32, p: u32, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for c in out.iter_mut() {
            *c = enc % p;
            enc /= p;
        }
        out
    }

    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// `a * b mod f` for monic `f` of degree `n`; inputs and output have length `n`.
    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let n = f.len() - 1;
        let p64 = p as u64;
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
            }
        }
        for d in (n..2 * n).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &fi) in f[..n].iter().enumerate() {
                let idx = d - n + i;
                prod[idx] = (prod[idx] + (p64 - c) * fi as u64) % p64;
            }
            prod[d] = 0;
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u32).collect()
    }

    pub fn powmod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let n = f.len() - 1;
        let mut result = vec![0; n];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    fn inv_mod_p(a: u32, p: u32) -> u32 {
        let (mut r, mut base, mut e) = (1u64, a as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        let lead_inv = inv_mod_p(*b.last().expect("nonzero divisor"), p) as u64;
        let db = b.len() - 1;
        while a.len() > db {
            let da = a.len() - 1;
            let c = *a.last().unwrap() as u64 * lead_inv % p as u64;
            for (i, &bi) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = ((a[idx] as u64 + (p as u64 - c) * bi as u64) % p as u64) as u32;
            }
            trim(&mut a);
        }
        a
    }

    /// Degree of `gcd(a, b)` (`None` when both are zero).
    pub fn gcd_degree(a: &[u32], b: &[u32], p: u32) -> Option<usize> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a.len().checked_sub(1)
    }

    /// `x^{p^d} mod f`.
    fn frobenius_power_of_x(d: usize, f: &[u32], p: u32) -> Vec<u32> {
        let n = f.len() - 1;
        debug_assert!(n >= 2);
        let mut x = vec![0; n];
        x[1] = 1;
        for _ in 0..d {
            x = powmod(&x, p as u64, f, p);
        }
        x
    }

    /// Rabin's test: `f | x^{p^n} - x` and `gcd(f, x^{p^d} - x) = 1` for every
    /// proper divisor `d` of `n`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x_minus = |mut v: Vec<u32>| {
            v[1] = (v[1] + p - 1) % p;
            v
        };
        if x_minus(frobenius_power_of_x(n, f, p))
            .iter()
            .any(|&c| c != 0)
        {
            return false;
        }
        (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| {
            let h = x_minus(frobenius_power_of_x(d, f, p));
            gcd_degree(f, &h, p) == Some(0)
        })
    }

    /// Lexicographically smallest monic irreducible of degree `n`, comparing
    /// coefficients from the constant term upward.
    pub fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
        let total = (p as u64).pow(n as u32);
        (0..total)
            .map(|i| {
                // c0 is the most significant digit of the enumeration order.
                let mut f = vec![0u32; n + 1];
                let mut rest = i;
                for c in f[..n].iter_mut().rev() {
                    *c = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                f[n] = 1;
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists")
    }

    /// Encoding of the first element of multiplicative order `order`.
    pub fn smallest_primitive(p: u32, f: &[u32], order: u32) -> u32 {
        let n = f.len() - 1;
        let factors = prime_factors(order as u64);
        (1..=order)
            .find(|&enc| {
                let g = decode(enc, p, n);
                factors.iter().all(|&r| {
                    let h = powmod(&g, order as u64 / r, f, p);
                    encode(&h, p) != 1
                })
            })
            .expect("GF(p^n)* is cyclic")
    }
}
