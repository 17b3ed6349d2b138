//! Arithmetic in GF(p), GF(p^m) and the chain ring GF(p^m) + u·GF(p^m), u² = 0.
//!
//! Field elements are packed into a single integer `c_0 + c_1·p + … + c_{m-1}·p^{m-1}`
//! where `c_i` is the coefficient of `y^i` in the polynomial basis. The packing is
//! canonical, so equality and hashing are plain integer comparisons.

use std::fmt;

use crate::error::{Error, Result};

/// An element of GF(p^m), packed as `Σ c_i p^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    /// The packed index of the element, in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An element `a + u·b` of GF(p^m) + u·GF(p^m).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainElement {
    pub a: Gf,
    pub b: Gf,
}

impl ChainElement {
    pub const ZERO: ChainElement = ChainElement { a: Gf::ZERO, b: Gf::ZERO };
    pub const ONE: ChainElement = ChainElement { a: Gf::ONE, b: Gf::ZERO };
    pub const U: ChainElement = ChainElement { a: Gf::ZERO, b: Gf::ONE };

    pub fn new(a: Gf, b: Gf) -> Self {
        Self { a, b }
    }

    pub fn from_field(a: Gf) -> Self {
        Self { a, b: Gf::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(self) -> bool {
        !self.a.is_zero()
    }
}

/// The finite field GF(p^m) = GF(p)[y] / (modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: u32,
    m: usize,
    // monic, length m + 1, constant term first
    modulus: Vec<u32>,
    q: u32,
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus, the lexicographically smallest
    /// monic irreducible polynomial (compared constant term first) is used.
    pub fn new(p: u32, m: usize, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 0, got: modulus.map(|c| c.to_vec()).unwrap_or_default() });
        }
        let q = (p as u64)
            .checked_pow(m as u32)
            .filter(|&q| q <= (1 << 30))
            .ok_or(Error::FieldTooLarge { p, m })? as u32;
        let modulus = match modulus {
            Some(c) => {
                let mut c = c.to_vec();
                while c.len() > 1 && c.last() == Some(&0) {
                    c.pop();
                }
                if c.len() != m + 1 || c[m] != 1 || c.iter().any(|&x| x >= p) {
                    return Err(Error::DegreeMismatch { expected: m, got: c });
                }
                if !fp_poly::is_irreducible(&c, p) {
                    return Err(Error::ReducibleModulus(c));
                }
                c
            }
            None => smallest_irreducible(p, m),
        };
        Ok(Field { p, m, modulus, q })
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    pub fn one(&self) -> Gf {
        Gf::ONE
    }

    /// The element with packed index `index`.
    pub fn element(&self, index: u32) -> Result<Gf> {
        if index < self.q {
            Ok(Gf(index))
        } else {
            Err(Error::FieldMismatch(index))
        }
    }

    /// Image of an integer under Z → GF(p) ⊂ GF(p^m).
    pub fn from_int(&self, k: i64) -> Gf {
        Gf(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf> {
        if coeffs.len() > self.m || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("{coeffs:?} is not a canonical element of GF({}^{})", self.p, self.m)));
        }
        Ok(self.pack(coeffs))
    }

    /// Coefficients `c_0, …, c_{m-1}` of the element in the polynomial basis.
    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Writes the coefficient digits of `a` into `out` (length m).
    pub fn write_digits(&self, a: Gf, out: &mut [u8]) {
        let mut v = a.0;
        for d in out.iter_mut().take(self.m) {
            *d = (v % self.p) as u8;
            v /= self.p;
        }
    }

    fn pack(&self, coeffs: &[u32]) -> Gf {
        Gf(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    fn check(&self, a: Gf) -> Result<Gf> {
        if a.0 < self.q {
            Ok(a)
        } else {
            Err(Error::FieldMismatch(a.0))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.q).map(Gf)
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.m == 1 {
            return Gf((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut r, mut scale) = (a.0, b.0, 0, 1);
        for _ in 0..self.m {
            r += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        Gf(r)
    }

    pub fn neg(&self, a: Gf) -> Gf {
        if self.m == 1 {
            return Gf((self.p - a.0) % self.p);
        }
        let (mut x, mut r, mut scale) = (a.0, 0, 1);
        for _ in 0..self.m {
            r += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        Gf(r)
    }

    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        let p = self.p as u64;
        if self.m == 1 {
            return Gf(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // reduce by the monic modulus, highest degree first
        for d in (self.m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mk) in self.modulus[..self.m].iter().enumerate() {
                let t = prod[d - self.m + k] + (p - c) * mk as u64;
                prod[d - self.m + k] = t % p;
            }
        }
        let coeffs: Vec<u32> = prod[..self.m].iter().map(|&c| c as u32).collect();
        self.pack(&coeffs)
    }

    pub fn pow(&self, a: Gf, mut e: u64) -> Gf {
        let mut base = a;
        let mut acc = Gf::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// Dispatches one of the named field operations; `pow` takes its exponent
    /// from the packed index of the second operand.
    pub fn apply(&self, op: FieldOp, a: Gf, b: Gf) -> Result<Gf> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Pow => self.pow(a, b.0 as u64),
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Gf) -> Result<u64> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.q as u64 - 1;
        let mut e = group;
        for (r, _) in factorize(group) {
            while e.is_multiple_of(r) && self.pow(a, e / r) == Gf::ONE {
                e /= r;
            }
        }
        Ok(e)
    }

    /// Irreducibility of `x^n − λ` over this field by the binomial criterion:
    /// every prime factor of `n` divides the order `e` of λ but not `(q−1)/e`,
    /// and `q ≡ 1 (mod 4)` whenever `4 | n`. Linear binomials are irreducible.
    pub fn binomial_irreducible(&self, n: u64, lambda: Gf) -> Result<bool> {
        if n == 0 {
            return Err(Error::ConstraintViolation("binomial degree must be positive".into()));
        }
        let e = self.order(lambda)?;
        if n == 1 {
            return Ok(true);
        }
        let cofactor = (self.q as u64 - 1) / e;
        let primes_ok = factorize(n).iter().all(|&(r, _)| e % r == 0 && !cofactor.is_multiple_of(r));
        let four_ok = !n.is_multiple_of(4) || self.q % 4 == 1;
        Ok(primes_ok && four_ok)
    }

    /// All λ ≠ 0 for which `x^n − λ` is irreducible, in index order.
    pub fn irreducible_binomial_constants(&self, n: u64) -> Vec<Gf> {
        self.nonzero_elements()
            .filter(|&l| self.binomial_irreducible(n, l).unwrap_or(false))
            .collect()
    }

    /// Elements of order q − 1.
    pub fn primitive_elements(&self) -> Vec<Gf> {
        let group = self.q as u64 - 1;
        self.nonzero_elements().filter(|&a| self.order(a).ok() == Some(group)).collect()
    }

    pub fn chain_add(&self, x: ChainElement, y: ChainElement) -> ChainElement {
        ChainElement::new(self.add(x.a, y.a), self.add(x.b, y.b))
    }

    pub fn chain_sub(&self, x: ChainElement, y: ChainElement) -> ChainElement {
        ChainElement::new(self.sub(x.a, y.a), self.sub(x.b, y.b))
    }

    pub fn chain_neg(&self, x: ChainElement) -> ChainElement {
        ChainElement::new(self.neg(x.a), self.neg(x.b))
    }

    /// `(a + ub)(c + ud) = ac + u(ad + bc)`.
    pub fn chain_mul(&self, x: ChainElement, y: ChainElement) -> ChainElement {
        ChainElement::new(
            self.mul(x.a, y.a),
            self.add(self.mul(x.a, y.b), self.mul(x.b, y.a)),
        )
    }

    /// `(a + ub)^{-1} = a^{-1} − u·a^{-2}·b`.
    pub fn chain_inv(&self, x: ChainElement) -> Result<ChainElement> {
        if x.a.is_zero() {
            return Err(Error::NonUnit);
        }
        let ai = self.inv(x.a)?;
        let b = self.neg(self.mul(self.mul(ai, ai), x.b));
        Ok(ChainElement::new(ai, b))
    }

    /// Parses `"c0,c1,…"` (constant term first). A bare integer is accepted for
    /// prime fields and for elements of the prime subfield.
    pub fn parse(&self, s: &str) -> Result<Gf> {
        let digits = parse_digits(s)?;
        if digits.len() > self.m {
            return Err(Error::Parse(format!("'{s}' has more than {} coefficients", self.m)));
        }
        self.from_coeffs(&digits)
    }

    /// Inverse of [`Field::parse`]: all m coefficients, comma separated.
    pub fn format(&self, a: Gf) -> String {
        join_digits(&self.coeffs(a))
    }

    /// Parses a chain element written `a|b` or `a+ub` (each side in [`Field::parse`] form).
    pub fn parse_chain(&self, s: &str) -> Result<ChainElement> {
        let s = s.trim();
        let (a, b) = if let Some((a, b)) = s.split_once('|') {
            (a, b)
        } else if let Some((a, b)) = s.split_once("+u") {
            (a, b)
        } else if let Some(b) = s.strip_prefix('u') {
            ("0", b)
        } else {
            (s, "0")
        };
        let a = if a.trim().is_empty() { "0" } else { a };
        let b = if b.trim().is_empty() { "1" } else { b };
        Ok(ChainElement::new(self.parse(a)?, self.parse(b)?))
    }

    pub fn format_chain(&self, x: ChainElement) -> String {
        format!("{}|{}", self.format(x.a), self.format(x.b))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod [{}]", self.p, self.m, join_digits(&self.modulus))
    }
}

/// Named field operations, for dispatch through [`Field::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
}

/// Parses comma-separated GF(p) digits, constant term first.
pub fn parse_digits(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("'{t}': {e}"))))
        .collect()
}

pub(crate) fn join_digits(d: &[u32]) -> String {
    d.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn is_prime(n: u64) -> bool {
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

/// Prime factorization by trial division, as `(prime, multiplicity)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    // lexicographic over (c_0, c_1, …, c_{m-1}) with c_0 most significant
    let total = (p as u64).pow(m as u32);
    for t in 0..total {
        let mut c = vec![0u32; m + 1];
        let mut v = t;
        for k in (0..m).rev() {
            c[k] = (v % p as u64) as u32;
            v /= p as u64;
        }
        c[m] = 1;
        if fp_poly::is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

/// Dense polynomials over GF(p), constant term first. Only what the
/// irreducibility test needs.
pub(crate) mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut a = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while a.len() > db {
            let d = a.len() - 1;
            let c = a[d] as u64 * lead_inv % p as u64;
            for (k, &bk) in b.iter().enumerate() {
                let idx = d - db + k;
                a[idx] = ((a[idx] as u64 + (p as u64 - c) * bk as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&out.into_iter().map(|c| c as u32).collect::<Vec<_>>(), f, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Distinct-degree test: f of degree m is irreducible iff
    /// gcd(f, x^{p^i} − x) = 1 for every 1 ≤ i ≤ m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let m = f.len() - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=m / 2 {
            // xp ← xp^p mod f
            let mut acc = vec![1u32];
            for _ in 0..p {
                acc = mul_mod(&acc, &xp, &f, p);
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &trim(diff), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}
