//! The ambient rings of the codes:
//!
//! * `F = GF(p^m)[x] / ⟨x^N − α⟩`, and
//! * `R = (GF(p^m) + u·GF(p^m))[x] / ⟨x^N − α − uβ⟩`,
//!
//! with `N = n·p^s`, `α = α0^{p^s}` and `x^n − α0` irreducible, so that
//! `x^N − α = (x^n − α0)^{p^s}`. Polynomials are dense coefficient vectors.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::galois::{gcd, ChainElement, Field, Gf};

/// Longest code length the dense representation is meant for.
pub const MAX_LENGTH: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    /// Coefficients in GF(p^m).
    Field,
    /// Coefficients in GF(p^m) + u·GF(p^m).
    Chain,
}

impl Base {
    /// Number of GF(p^m) components per symbol.
    pub fn components(self) -> usize {
        match self {
            Base::Field => 1,
            Base::Chain => 2,
        }
    }
}

pub struct QuotientRing {
    field: Field,
    base: Base,
    n: u64,
    s: u32,
    p_pow_s: u64,
    len: usize,
    alpha0: Gf,
    alpha: Gf,
    beta: Gf,
    lambda: ChainElement,
    // (x^n − α0)^{2^t}, filled on demand
    squares: Mutex<Vec<Vec<ChainElement>>>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.base == other.base
            && self.n == other.n
            && self.s == other.s
            && self.alpha0 == other.alpha0
            && self.beta == other.beta
    }
}

impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientRing")
            .field("field", &self.field)
            .field("base", &self.base)
            .field("n", &self.n)
            .field("s", &self.s)
            .field("alpha0", &self.alpha0)
            .field("beta", &self.beta)
            .finish()
    }
}

impl QuotientRing {
    /// Validates the parameters and builds the ring. `beta` must be zero for the
    /// field base.
    pub fn new(field: Field, base: Base, n: u64, s: u32, alpha0: Gf, beta: Gf) -> Result<Arc<QuotientRing>> {
        let p = field.p() as u64;
        if n == 0 || s == 0 {
            return Err(Error::ConstructionRefused("n and s must be positive".into()));
        }
        if gcd(n, p) != 1 {
            return Err(Error::ConstructionRefused(format!("gcd(n={n}, p={p}) != 1")));
        }
        if alpha0.index() >= field.q() || beta.index() >= field.q() {
            return Err(Error::FieldMismatch(alpha0.index().max(beta.index())));
        }
        if alpha0.is_zero() {
            return Err(Error::ConstructionRefused("alpha0 must be nonzero".into()));
        }
        if base == Base::Field && !beta.is_zero() {
            return Err(Error::ConstructionRefused("beta must be zero over the field base".into()));
        }
        if !field.binomial_irreducible(n, alpha0)? {
            return Err(Error::ConstructionRefused(format!(
                "x^{n} - ({}) is reducible over GF({}^{})",
                field.format(alpha0),
                field.p(),
                field.m()
            )));
        }
        let p_pow_s = p
            .checked_pow(s)
            .filter(|&v| v.saturating_mul(n) <= MAX_LENGTH as u64)
            .ok_or_else(|| Error::ConstructionRefused(format!("length n*p^s exceeds {MAX_LENGTH}")))?;
        let len = (n * p_pow_s) as usize;
        let alpha = field.pow(alpha0, p_pow_s);
        let lambda = ChainElement::new(alpha, beta);
        Ok(Arc::new(QuotientRing {
            field,
            base,
            n,
            s,
            p_pow_s,
            len,
            alpha0,
            alpha,
            beta,
            lambda,
            squares: Mutex::new(Vec::new()),
        }))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    /// `p^s`.
    pub fn p_pow_s(&self) -> u64 {
        self.p_pow_s
    }

    /// Code length `N = n·p^s`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alpha0(&self) -> Gf {
        self.alpha0
    }

    pub fn alpha(&self) -> Gf {
        self.alpha
    }

    pub fn beta(&self) -> Gf {
        self.beta
    }

    /// The constant `x^N` reduces to.
    pub fn lambda(&self) -> ChainElement {
        self.lambda
    }

    /// GF(p) digits per symbol: m for the field base, 2m for the chain ring.
    pub fn symbol_width(&self) -> usize {
        self.m() * self.base.components()
    }

    /// Largest meaningful exponent of `x^n − α0`: `p^s` over F, `2p^s` over R.
    pub fn max_exponent(&self) -> u64 {
        self.p_pow_s * self.base.components() as u64
    }

    /// The field-base ring `F` sharing n, s and α0.
    pub fn field_ring(&self) -> Arc<QuotientRing> {
        QuotientRing::new(self.field.clone(), Base::Field, self.n, self.s, self.alpha0, Gf::ZERO)
            .expect("parameters were validated for this ring")
    }

    /// The chain-ring `R` over the same parameters with the given β.
    pub fn chain_ring(&self, beta: Gf) -> Result<Arc<QuotientRing>> {
        QuotientRing::new(self.field.clone(), Base::Chain, self.n, self.s, self.alpha0, beta)
    }

    /// `(x^n − α0)^i`, by square-and-multiply over memoized squares.
    pub fn binom_power(self: &Arc<Self>, i: u64) -> Result<QPoly> {
        let max = self.max_exponent();
        if i > max {
            return Err(Error::ExponentOutOfRange { value: i, max });
        }
        let mut acc = QPoly::one(self);
        let mut e = i;
        let mut t = 0;
        while e > 0 {
            if e & 1 == 1 {
                let sq = self.binom_square(t);
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            t += 1;
        }
        Ok(acc)
    }

    fn binom_square(self: &Arc<Self>, t: usize) -> QPoly {
        let mut cache = self.squares.lock().unwrap_or_else(|e| e.into_inner());
        if cache.is_empty() {
            let mut g = vec![ChainElement::ZERO; self.len];
            g[self.n as usize] = ChainElement::ONE;
            g[0] = ChainElement::from_field(self.field.neg(self.alpha0));
            cache.push(g);
        }
        while cache.len() <= t {
            let last = QPoly { ring: self.clone(), coeffs: cache.last().unwrap().clone() };
            let sq = last.mul(&last).expect("same ring");
            cache.push(sq.coeffs);
        }
        QPoly { ring: self.clone(), coeffs: cache[t].clone() }
    }

    /// `x^n − α0` itself.
    pub fn generator(self: &Arc<Self>) -> QPoly {
        self.binom_square(0)
    }
}

/// An element of a [`QuotientRing`]: `N` coefficients, degree 0 first.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    ring: Arc<QuotientRing>,
    coeffs: Vec<ChainElement>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly[{}]", self.to_text())
    }
}

impl QPoly {
    pub fn zero(ring: &Arc<QuotientRing>) -> QPoly {
        QPoly { ring: ring.clone(), coeffs: vec![ChainElement::ZERO; ring.len()] }
    }

    pub fn one(ring: &Arc<QuotientRing>) -> QPoly {
        QPoly::constant(ring, ChainElement::ONE)
    }

    pub fn constant(ring: &Arc<QuotientRing>, c: ChainElement) -> QPoly {
        QPoly::monomial(ring, c, 0)
    }

    /// `c·x^e` with `e < N`.
    pub fn monomial(ring: &Arc<QuotientRing>, c: ChainElement, e: usize) -> QPoly {
        let mut f = QPoly::zero(ring);
        f.coeffs[e % ring.len()] = c;
        f
    }

    /// `x`.
    pub fn x(ring: &Arc<QuotientRing>) -> QPoly {
        QPoly::monomial(ring, ChainElement::ONE, 1 % ring.len())
    }

    /// Builds a polynomial from chain coefficients; missing high coefficients are zero.
    pub fn from_coeffs(ring: &Arc<QuotientRing>, coeffs: &[ChainElement]) -> Result<QPoly> {
        if coeffs.len() > ring.len() {
            return Err(Error::Parse(format!("{} coefficients exceed length {}", coeffs.len(), ring.len())));
        }
        if ring.base == Base::Field && coeffs.iter().any(|c| !c.b.is_zero()) {
            return Err(Error::Parse("u-components are not allowed over the field base".into()));
        }
        if coeffs.iter().any(|c| c.a.index() >= ring.field.q() || c.b.index() >= ring.field.q()) {
            return Err(Error::Parse("coefficient outside the field".into()));
        }
        let mut f = QPoly::zero(ring);
        f.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(f)
    }

    pub fn from_field_coeffs(ring: &Arc<QuotientRing>, coeffs: &[Gf]) -> Result<QPoly> {
        let c: Vec<ChainElement> = coeffs.iter().map(|&a| ChainElement::from_field(a)).collect();
        QPoly::from_coeffs(ring, &c)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[ChainElement] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Exponents with nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn hamming_weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Is every u-component zero?
    pub fn is_field_valued(&self) -> bool {
        self.coeffs.iter().all(|c| c.b.is_zero())
    }

    /// The components `a(x)` and `b(x)` of `a(x) + u·b(x)`.
    pub fn split(&self) -> (Vec<Gf>, Vec<Gf>) {
        self.coeffs.iter().map(|c| (c.a, c.b)).unzip()
    }

    fn same_ring(&self, other: &QPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &QPoly) -> Result<QPoly> {
        self.same_ring(other)?;
        let f = &self.ring.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| f.chain_add(x, y)).collect();
        Ok(QPoly { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &QPoly) -> Result<QPoly> {
        self.same_ring(other)?;
        let f = &self.ring.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| f.chain_sub(x, y)).collect();
        Ok(QPoly { ring: self.ring.clone(), coeffs })
    }

    pub fn neg(&self) -> QPoly {
        let f = &self.ring.field;
        QPoly { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|&x| f.chain_neg(x)).collect() }
    }

    /// Multiplication by a base-ring scalar.
    pub fn scale(&self, c: ChainElement) -> QPoly {
        let f = &self.ring.field;
        QPoly { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|&x| f.chain_mul(c, x)).collect() }
    }

    /// Product in the quotient ring: convolution with `x^N ↦ λ`.
    pub fn mul(&self, other: &QPoly) -> Result<QPoly> {
        self.same_ring(other)?;
        let f = &self.ring.field;
        let n = self.len();
        let mut low = vec![ChainElement::ZERO; n];
        let mut high = vec![ChainElement::ZERO; n];
        let rhs: Vec<(usize, ChainElement)> =
            other.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &rhs {
                let k = i + j;
                let t = f.chain_mul(x, y);
                if k < n {
                    low[k] = f.chain_add(low[k], t);
                } else {
                    high[k - n] = f.chain_add(high[k - n], t);
                }
            }
        }
        let lambda = self.ring.lambda;
        let coeffs = low.into_iter().zip(high).map(|(l, h)| f.chain_add(l, f.chain_mul(lambda, h))).collect();
        Ok(QPoly { ring: self.ring.clone(), coeffs })
    }

    /// The λ-constacyclic shift `(λ·v_{N−1}, v_0, …, v_{N−2})`, i.e. `x·v`.
    pub fn consta_shift(&self) -> QPoly {
        let f = &self.ring.field;
        let n = self.len();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(f.chain_mul(self.ring.lambda, self.coeffs[n - 1]));
        coeffs.extend_from_slice(&self.coeffs[..n - 1]);
        QPoly { ring: self.ring.clone(), coeffs }
    }

    /// Smallest gap between exponents of distinct nonzero terms (no wraparound);
    /// 0 for a monomial.
    pub fn coefficient_weight(&self) -> Result<usize> {
        let support = self.support();
        match support.len() {
            0 => Err(Error::ZeroPolynomial),
            1 => Ok(0),
            _ => Ok(support.windows(2).map(|w| w[1] - w[0]).min().unwrap()),
        }
    }

    /// Whether the polynomial is a unit; `(x^n − α0)` generates the maximal
    /// ideal of F, so a field-valued polynomial is a unit iff its residue modulo
    /// `x^n − α0` is nonzero. Over R the u-part does not matter.
    pub fn is_unit(&self) -> bool {
        let f = &self.ring.field;
        let n = self.ring.n as usize;
        let mut residue = vec![Gf::ZERO; n];
        // x^e ≡ α0^{⌊e/n⌋} x^{e mod n} modulo x^n − α0
        let mut scale = Gf::ONE;
        for (block, chunk) in self.coeffs.chunks(n).enumerate() {
            if block > 0 {
                scale = f.mul(scale, self.ring.alpha0);
            }
            for (r, c) in chunk.iter().enumerate() {
                residue[r] = f.add(residue[r], f.mul(scale, c.a));
            }
        }
        residue.iter().any(|c| !c.is_zero())
    }

    /// Moves the polynomial into another ring with identical length and field,
    /// keeping coefficients. Fails if u-components would be dropped.
    pub fn embed(&self, ring: &Arc<QuotientRing>) -> Result<QPoly> {
        if ring.len() != self.len() || ring.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        QPoly::from_coeffs(ring, &self.coeffs)
    }

    /// GF(p) coordinates, symbol-major: for each position the m digits of `a`,
    /// followed (chain base only) by the m digits of `b`.
    pub fn to_digits(&self) -> Vec<u8> {
        let f = &self.ring.field;
        let m = f.m();
        let w = self.ring.symbol_width();
        let mut out = vec![0u8; w * self.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            f.write_digits(c.a, &mut out[i * w..i * w + m]);
            if self.ring.base == Base::Chain {
                f.write_digits(c.b, &mut out[i * w + m..i * w + 2 * m]);
            }
        }
        out
    }

    /// Inverse of [`QPoly::to_digits`].
    pub fn from_digits(ring: &Arc<QuotientRing>, digits: &[u8]) -> Result<QPoly> {
        let f = &ring.field;
        let m = f.m();
        let w = ring.symbol_width();
        if digits.len() != w * ring.len() {
            return Err(Error::RingMismatch);
        }
        let to_gf = |d: &[u8]| f.from_coeffs(&d.iter().map(|&x| x as u32).collect::<Vec<_>>());
        let coeffs = digits
            .chunks(w)
            .map(|sym| {
                let a = to_gf(&sym[..m])?;
                let b = if ring.base == Base::Chain { to_gf(&sym[m..])? } else { Gf::ZERO };
                Ok(ChainElement::new(a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QPoly { ring: ring.clone(), coeffs })
    }

    /// Textual form: coefficients degree 0 first. Over GF(p) they are separated by
    /// `,`; for m > 1 by `;` with the digits of each element joined by `:`.
    /// Chain coefficients are written `a+ub`. Trailing zeros are dropped.
    pub fn to_text(&self) -> String {
        let f = &self.ring.field;
        let sep = if f.m() == 1 { "," } else { ";" };
        let elem = |g: Gf| f.coeffs(g).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(":");
        let end = self.degree().map_or(1, |d| d + 1);
        self.coeffs[..end]
            .iter()
            .map(|c| match self.ring.base {
                Base::Field => elem(c.a),
                Base::Chain if c.b.is_zero() => elem(c.a),
                Base::Chain if c.a.is_zero() => format!("u{}", elem(c.b)),
                Base::Chain => format!("{}+u{}", elem(c.a), elem(c.b)),
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses the form produced by [`QPoly::to_text`]. Chain coefficients may also
    /// be written `a|b`; a plain coefficient has zero u-part.
    pub fn parse(ring: &Arc<QuotientRing>, text: &str) -> Result<QPoly> {
        let f = &ring.field;
        let text = text.trim();
        let terms: Vec<&str> = if text.contains(';') || f.m() > 1 {
            text.split(';').collect()
        } else {
            text.split(',').collect()
        };
        let elem = |t: &str| f.parse(&t.replace(':', ","));
        let coeffs = terms
            .iter()
            .map(|t| {
                let t = t.trim();
                if let Some((a, b)) = t.split_once('|').or_else(|| t.split_once("+u")) {
                    Ok(ChainElement::new(elem(a)?, elem(b)?))
                } else if let Some(b) = t.strip_prefix('u') {
                    Ok(ChainElement::new(Gf::ZERO, if b.is_empty() { Gf::ONE } else { elem(b)? }))
                } else {
                    Ok(ChainElement::from_field(elem(t)?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        QPoly::from_coeffs(ring, &coeffs)
    }
}
