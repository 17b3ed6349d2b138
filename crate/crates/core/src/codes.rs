//! The code families: `C_i` over F, the chain ideals `D_i` over R when β ≠ 0,
//! and the three ideal types over R when β = 0. Every code is materialized as a
//! GF(p)-row space inside GF(p)^{w·N}, where w is the symbol width.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{ChainElement, Gf};
use crate::linalg::{self, RowSpace};
use crate::quotient::{Base, QPoly, QuotientRing};

/// Codeword budget used when the caller does not choose one.
pub const DEFAULT_BUDGET: u64 = 1 << 21;

/// Which ideal a [`CodeSpec`] describes. `g` below is `x^n − α0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeVariant {
    /// `C_i = ⟨g^i⟩` over F, `0 ≤ i ≤ p^s`.
    FieldPower { i: u64 },
    /// `D_i = ⟨g^i⟩` over R with β ≠ 0, `0 ≤ i ≤ 2p^s`.
    ChainPrincipal { i: u64 },
    /// `⟨g^k⟩` over R with β = 0.
    Type1 { k: u64 },
    /// `⟨g^j·b + u·g^k⟩` over R with β = 0.
    Type2 { j: u64, k: u64, b: QPoly },
    /// `⟨g^j·b + u·g^k, g^{k+t}⟩` over R with β = 0.
    Type3 { j: u64, k: u64, t: u64, b: QPoly },
}

/// A symbolic code: a ring plus a variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    ring: Arc<QuotientRing>,
    variant: CodeVariant,
}

/// Whether `b(x)` in a type II/III spec is zero or a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplier {
    Zero,
    Unit,
}

impl CodeSpec {
    /// Builds and validates a spec.
    pub fn new(ring: &Arc<QuotientRing>, variant: CodeVariant) -> Result<CodeSpec> {
        let spec = CodeSpec { ring: ring.clone(), variant };
        spec.validate()?;
        Ok(spec)
    }

    pub fn field_power(ring: &Arc<QuotientRing>, i: u64) -> Result<CodeSpec> {
        CodeSpec::new(ring, CodeVariant::FieldPower { i })
    }

    pub fn chain_principal(ring: &Arc<QuotientRing>, i: u64) -> Result<CodeSpec> {
        CodeSpec::new(ring, CodeVariant::ChainPrincipal { i })
    }

    pub fn type1(ring: &Arc<QuotientRing>, k: u64) -> Result<CodeSpec> {
        CodeSpec::new(ring, CodeVariant::Type1 { k })
    }

    pub fn type2(ring: &Arc<QuotientRing>, j: u64, k: u64, b: QPoly) -> Result<CodeSpec> {
        CodeSpec::new(ring, CodeVariant::Type2 { j, k, b })
    }

    pub fn type3(ring: &Arc<QuotientRing>, j: u64, k: u64, t: u64, b: QPoly) -> Result<CodeSpec> {
        CodeSpec::new(ring, CodeVariant::Type3 { j, k, t, b })
    }

    /// Maps a generator written `g^j + u·g^k·b(x)` (the form used when listing MDS
    /// codes) onto the canonical ideal types. With `b = 0` this is `⟨g^j⟩`; with a
    /// unit `b` the generator is associate to `g^j·b^{-1} + u·g^k`, which is type II
    /// when `2j ≥ p^s + k` and otherwise equals the type III ideal with
    /// `t = 2(j − k)`.
    pub fn from_mixed_generator(ring: &Arc<QuotientRing>, j: u64, k: u64, b: &QPoly) -> Result<CodeSpec> {
        let b = b.embed(ring)?;
        if b.is_zero() {
            return CodeSpec::type1(ring, j);
        }
        if !b.is_field_valued() || !b.is_unit() {
            return Err(Error::NotUnitNorZero);
        }
        if k >= j {
            return Err(Error::ConstraintViolation(format!("need k < j, got j={j}, k={k}")));
        }
        let b_inv = field_unit_inverse(&b)?;
        let ps = ring.p_pow_s();
        if 2 * j >= ps + k {
            CodeSpec::type2(ring, j, k, b_inv)
        } else {
            CodeSpec::type3(ring, j, k, 2 * (j - k), b_inv)
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn variant(&self) -> &CodeVariant {
        &self.variant
    }

    pub fn multiplier(&self) -> Option<Multiplier> {
        match &self.variant {
            CodeVariant::Type2 { b, .. } | CodeVariant::Type3 { b, .. } => {
                Some(if b.is_zero() { Multiplier::Zero } else { Multiplier::Unit })
            }
            _ => None,
        }
    }

    /// A sortable key identifying the spec up to the choice of unit `b`.
    pub fn key(&self) -> SpecKey {
        let (family, a, b, c) = match self.variant {
            CodeVariant::FieldPower { i } => (0, i, 0, 0),
            CodeVariant::ChainPrincipal { i } => (1, i, 0, 0),
            CodeVariant::Type1 { k } => (2, k, 0, 0),
            CodeVariant::Type2 { j, k, .. } => (3, k, j, 0),
            CodeVariant::Type3 { j, k, t, .. } => (4, k, t, j),
        };
        SpecKey { family, params: [a, b, c], multiplier: self.multiplier() }
    }

    fn validate(&self) -> Result<()> {
        let ring = &self.ring;
        let ps = ring.p_pow_s();
        let chain = ring.base() == Base::Chain;
        let beta_zero = ring.beta().is_zero();
        let range = |name: &str, v: u64, lo: u64, hi: u64| {
            if v < lo || v > hi {
                Err(Error::ConstraintViolation(format!("{name}={v} outside [{lo}, {hi}]")))
            } else {
                Ok(())
            }
        };
        match &self.variant {
            CodeVariant::FieldPower { i } => {
                if chain {
                    return Err(Error::BetaMismatch("field-power codes live over the field base".into()));
                }
                range("i", *i, 0, ps)
            }
            CodeVariant::ChainPrincipal { i } => {
                if !chain || beta_zero {
                    return Err(Error::BetaMismatch("chain principal ideals require the chain ring with beta != 0".into()));
                }
                range("i", *i, 0, 2 * ps)
            }
            CodeVariant::Type1 { k } => {
                self.require_beta_zero(chain, beta_zero)?;
                range("k", *k, 0, ps)
            }
            CodeVariant::Type2 { j, k, b } => {
                self.require_beta_zero(chain, beta_zero)?;
                range("k", *k, 0, ps - 1)?;
                range("j", *j, (ps + k).div_ceil(2), ps - 1)?;
                check_multiplier(ring, b)
            }
            CodeVariant::Type3 { j, k, t, b } => {
                self.require_beta_zero(chain, beta_zero)?;
                if ps < 2 {
                    return Err(Error::ConstraintViolation("type III needs p^s >= 2".into()));
                }
                range("k", *k, 0, ps - 2)?;
                range("t", *t, 1, ps - k - 1)?;
                range("j", *j, k + t.div_ceil(2), k + t)?;
                check_multiplier(ring, b)
            }
        }
    }

    fn require_beta_zero(&self, chain: bool, beta_zero: bool) -> Result<()> {
        if !chain || !beta_zero {
            return Err(Error::BetaMismatch("types I-III require the chain ring with beta = 0".into()));
        }
        Ok(())
    }

    /// Generators of the ideal.
    pub fn generators(&self) -> Result<Vec<QPoly>> {
        let ring = &self.ring;
        Ok(match &self.variant {
            CodeVariant::FieldPower { i } | CodeVariant::ChainPrincipal { i } => vec![ring.binom_power(*i)?],
            CodeVariant::Type1 { k } => vec![ring.binom_power(*k)?],
            CodeVariant::Type2 { j, k, b } => vec![mixed(ring, *j, *k, b)?],
            CodeVariant::Type3 { j, k, t, b } => vec![mixed(ring, *j, *k, b)?, ring.binom_power(k + t)?],
        })
    }

    /// `log_p |code|` from the closed-form size formulas.
    pub fn closed_form_log_size(&self) -> u64 {
        let ring = &self.ring;
        let mn = ring.m() as u64 * ring.n();
        let ps = ring.p_pow_s();
        match self.variant {
            CodeVariant::FieldPower { i } => mn * (ps - i),
            CodeVariant::ChainPrincipal { i } => mn * (2 * ps - i),
            CodeVariant::Type1 { k } => 2 * mn * (ps - k),
            CodeVariant::Type2 { k, .. } => mn * (ps - k),
            CodeVariant::Type3 { k, t, .. } => mn * (2 * ps - 2 * k - t),
        }
    }

    /// Parses the textual form: `field-power:i=2`, `chain:i=10`, `type1:k=3`,
    /// `type2:j=7,k=1,b=1`, `type3:j=2,k=0,t=2,b=1`. `b` is a polynomial in the
    /// [`QPoly::parse`] format with `;` between coefficients.
    pub fn parse(ring: &Arc<QuotientRing>, text: &str) -> Result<CodeSpec> {
        let text = text.trim();
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
            params.insert(key.trim().to_string(), value.trim().to_string());
        }
        let int = |key: &str| -> Result<u64> {
            params
                .get(key)
                .ok_or_else(|| Error::Parse(format!("missing parameter '{key}' in '{text}'")))?
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("parameter '{key}': {e}")))
        };
        let poly = |key: &str| -> Result<QPoly> {
            let raw = params.get(key).ok_or_else(|| Error::Parse(format!("missing parameter '{key}'")))?;
            let f = ring.field();
            // a polynomial over GF(p) may use ';' between coefficients inside a spec
            let normalized = if f.m() == 1 { raw.replace(';', ",") } else { raw.clone() };
            let parsed = QPoly::parse(&ring.field_ring(), &normalized)?;
            parsed.embed(ring)
        };
        let variant = match family.trim() {
            "field-power" | "field" => CodeVariant::FieldPower { i: int("i")? },
            "chain" => CodeVariant::ChainPrincipal { i: int("i")? },
            "type1" => CodeVariant::Type1 { k: int("k")? },
            "type2" => CodeVariant::Type2 { j: int("j")?, k: int("k")?, b: poly("b")? },
            "type3" => CodeVariant::Type3 { j: int("j")?, k: int("k")?, t: int("t")?, b: poly("b")? },
            other => return Err(Error::Parse(format!("unknown code family '{other}'"))),
        };
        CodeSpec::new(ring, variant)
    }
}

fn check_multiplier(ring: &Arc<QuotientRing>, b: &QPoly) -> Result<()> {
    if b.ring().as_ref() != ring.as_ref() {
        return Err(Error::RingMismatch);
    }
    if b.is_zero() || (b.is_field_valued() && b.is_unit()) {
        Ok(())
    } else {
        Err(Error::NotUnitNorZero)
    }
}

/// `g^j·b + u·g^k`.
fn mixed(ring: &Arc<QuotientRing>, j: u64, k: u64, b: &QPoly) -> Result<QPoly> {
    let a = ring.binom_power(j)?.mul(b)?;
    let u = ring.binom_power(k)?.scale(ChainElement::U);
    a.add(&u)
}

/// Inverse of a field-valued unit polynomial, by solving `b·y = 1` over GF(p).
fn field_unit_inverse(b: &QPoly) -> Result<QPoly> {
    let f_ring = b.ring().field_ring();
    let b_f = b.embed(&f_ring)?;
    let target = QPoly::one(&f_ring).to_digits();
    let mut rows = Vec::new();
    let mut v = b_f.clone();
    let m = f_ring.m();
    let f = f_ring.field();
    let mut multipliers = Vec::new();
    for t in 0..f_ring.len() {
        for e in 0..m {
            let y = f.from_coeffs(&unit_digits(m, e)).expect("basis element");
            rows.push(v.scale(ChainElement::from_field(y)).to_digits());
            multipliers.push(QPoly::monomial(&f_ring, ChainElement::from_field(y), t));
        }
        v = v.consta_shift();
    }
    let coeffs = solve(f_ring.p(), &rows, &target).ok_or(Error::NotUnitNorZero)?;
    let mut inv = QPoly::zero(&f_ring);
    for (c, mono) in coeffs.iter().zip(&multipliers) {
        if *c != 0 {
            inv = inv.add(&mono.scale(ChainElement::from_field(f.from_int(*c as i64))))?;
        }
    }
    inv.embed(b.ring())
}

fn unit_digits(m: usize, e: usize) -> Vec<u32> {
    let mut d = vec![0u32; m];
    d[e] = 1;
    d
}

/// Solves `Σ c_i rows[i] = target` over GF(p).
fn solve(p: u32, rows: &[Vec<u8>], target: &[u8]) -> Option<Vec<u8>> {
    // augment each row with an identity tag to recover the combination
    let k = rows.len();
    let width = target.len();
    let mut space = RowSpace::new(p, width + k);
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.extend((0..k).map(|j| u8::from(i == j)));
        space.insert(v);
    }
    let mut t = target.to_vec();
    t.extend(std::iter::repeat_n(0, k));
    space.reduce(&mut t);
    if t[..width].iter().any(|&x| x != 0) {
        return None;
    }
    // t = target − Σ c_i (rows_i | e_i) restricted to the tag part gives −c
    Some(t[width..].iter().map(|&x| ((p - x as u32) % p) as u8).collect())
}

/// Identifies a spec up to the particular unit chosen for `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecKey {
    family: u8,
    params: [u64; 3],
    multiplier: Option<Multiplier>,
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |b: &QPoly| {
            let text = b.embed(&self.ring.field_ring()).map(|x| x.to_text()).unwrap_or_else(|_| b.to_text());
            if self.ring.m() == 1 {
                text.replace(',', ";")
            } else {
                text
            }
        };
        match &self.variant {
            CodeVariant::FieldPower { i } => write!(f, "field-power:i={i}"),
            CodeVariant::ChainPrincipal { i } => write!(f, "chain:i={i}"),
            CodeVariant::Type1 { k } => write!(f, "type1:k={k}"),
            CodeVariant::Type2 { j, k, b } => write!(f, "type2:j={j},k={k},b={}", poly(b)),
            CodeVariant::Type3 { j, k, t, b } => write!(f, "type3:j={j},k={k},t={t},b={}", poly(b)),
        }
    }
}

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeOrigin {
    Spec(CodeSpec),
    /// The subfield subcode of a chain-ring code.
    Subfield(Box<CodeOrigin>),
    /// The ideal generated by explicit polynomials.
    Generators,
}

/// A code realized as a GF(p)-space of codewords.
#[derive(Clone, Debug)]
pub struct ConstacyclicCode {
    ring: Arc<QuotientRing>,
    origin: CodeOrigin,
    basis: RowSpace,
}

impl ConstacyclicCode {
    /// Builds the code of a spec by row-reducing all scalar multiples and shifts
    /// of its generators.
    pub fn build(spec: &CodeSpec) -> Result<ConstacyclicCode> {
        let mut code = ConstacyclicCode::from_generators(spec.ring(), &spec.generators()?)?;
        code.origin = CodeOrigin::Spec(spec.clone());
        Ok(code)
    }

    /// The ideal generated by `generators`.
    pub fn from_generators(ring: &Arc<QuotientRing>, generators: &[QPoly]) -> Result<ConstacyclicCode> {
        let width = ring.symbol_width() * ring.len();
        let mut basis = RowSpace::new(ring.p(), width);
        let scalars = scalar_basis(ring);
        for g in generators {
            if g.ring().as_ref() != ring.as_ref() {
                return Err(Error::RingMismatch);
            }
            for &c in &scalars {
                let mut v = g.scale(c);
                for _ in 0..ring.len() {
                    if v.is_zero() {
                        break;
                    }
                    basis.insert(v.to_digits());
                    v = v.consta_shift();
                }
                if basis.rank() == width {
                    break;
                }
            }
        }
        Ok(ConstacyclicCode { ring: ring.clone(), origin: CodeOrigin::Generators, basis })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn origin(&self) -> &CodeOrigin {
        &self.origin
    }

    pub fn spec(&self) -> Option<&CodeSpec> {
        match &self.origin {
            CodeOrigin::Spec(s) => Some(s),
            _ => None,
        }
    }

    pub fn basis(&self) -> &RowSpace {
        &self.basis
    }

    /// Dimension over GF(p); the code has `p^dim_p` words.
    pub fn dim_p(&self) -> usize {
        self.basis.rank()
    }

    /// Number of codewords, if it fits in a u128.
    pub fn size(&self) -> Option<u128> {
        (self.ring.p() as u128).checked_pow(self.dim_p() as u32)
    }

    pub fn length(&self) -> usize {
        self.ring.len()
    }

    pub fn contains(&self, w: &QPoly) -> Result<bool> {
        if w.ring().as_ref() != self.ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        Ok(self.basis.contains(&w.to_digits()))
    }

    /// Is every codeword of `self` a codeword of `other`?
    pub fn is_subcode_of(&self, other: &ConstacyclicCode) -> bool {
        self.ring == other.ring && self.basis.is_subspace_of(&other.basis)
    }

    pub fn same_code(&self, other: &ConstacyclicCode) -> bool {
        self.ring == other.ring && self.basis.same_space(&other.basis)
    }

    /// The word `Σ coeffs[r]·basis[r]`.
    pub fn codeword(&self, coeffs: &[u8]) -> QPoly {
        QPoly::from_digits(&self.ring, &self.basis.combine(coeffs)).expect("basis rows have ring width")
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: Rng>(&self, rng: &mut R) -> QPoly {
        let p = self.ring.p() as u8;
        let coeffs: Vec<u8> = (0..self.dim_p()).map(|_| rng.gen_range(0..p)).collect();
        self.codeword(&coeffs)
    }

    /// Every codeword exactly once, in mixed-radix counter order with the first
    /// basis row least significant, or [`Exhausted`] when the code is larger
    /// than `budget`.
    pub fn enumerate(&self, budget: u64) -> Result<Codewords<'_>, Exhausted> {
        match self.size() {
            Some(size) if size <= budget as u128 => Ok(Codewords {
                code: self,
                counter: vec![0; self.dim_p()],
                word: vec![0; self.basis.width()],
                started: false,
                done: false,
            }),
            _ => Err(Exhausted { dim_p: self.dim_p(), budget }),
        }
    }

    /// The subfield subcode: codewords whose coordinates all lie in GF(p^m),
    /// as a code over F.
    pub fn restrict_subfield(&self) -> Result<ConstacyclicCode> {
        if self.ring.base() != Base::Chain {
            return Err(Error::NotChainCode);
        }
        let m = self.ring.m();
        let n_sym = self.ring.len();
        let w = 2 * m;
        // permute so that all u-digits come first; RREF rows pivoting after
        // that block span the words with zero u-part
        let perm = |v: &[u8]| -> Vec<u8> {
            let mut out = Vec::with_capacity(v.len());
            for i in 0..n_sym {
                out.extend_from_slice(&v[i * w + m..i * w + w]);
            }
            for i in 0..n_sym {
                out.extend_from_slice(&v[i * w..i * w + m]);
            }
            out
        };
        let split = m * n_sym;
        let permuted = RowSpace::span(self.ring.p(), 2 * split, self.basis.rows().iter().map(|r| perm(r)));
        let f_ring = self.ring.field_ring();
        let mut basis = RowSpace::new(self.ring.p(), split);
        for (row, &piv) in permuted.rows().iter().zip(permuted.pivots()) {
            if piv >= split {
                basis.insert(row[split..].to_vec());
            }
        }
        Ok(ConstacyclicCode { ring: f_ring, origin: CodeOrigin::Subfield(Box::new(self.origin.clone())), basis })
    }
}

/// GF(p)-basis of the coefficient ring: `y^e`, plus `u·y^e` over R.
fn scalar_basis(ring: &QuotientRing) -> Vec<ChainElement> {
    let f = ring.field();
    let m = f.m();
    let ys: Vec<Gf> = (0..m).map(|e| f.from_coeffs(&unit_digits(m, e)).expect("basis element")).collect();
    let mut out: Vec<ChainElement> = ys.iter().map(|&y| ChainElement::from_field(y)).collect();
    if ring.base() == Base::Chain {
        out.extend(ys.iter().map(|&y| ChainElement::new(Gf::ZERO, y)));
    }
    out
}

/// The code is too large for the requested enumeration budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted {
    pub dim_p: usize,
    pub budget: u64,
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "code of GF(p)-dimension {} exceeds the budget of {} words", self.dim_p, self.budget)
    }
}

/// Iterator over all codewords; see [`ConstacyclicCode::enumerate`].
pub struct Codewords<'a> {
    code: &'a ConstacyclicCode,
    counter: Vec<u8>,
    word: Vec<u8>,
    started: bool,
    done: bool,
}

impl Codewords<'_> {
    /// The next codeword as GF(p) digits, without building a [`QPoly`].
    pub fn next_digits(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        let p = self.code.ring.p() as u8;
        let rows = self.code.basis.rows();
        for r in 0..rows.len() {
            linalg::add_assign(&mut self.word, &rows[r], p);
            self.counter[r] += 1;
            if self.counter[r] < p {
                return Some(&self.word);
            }
            self.counter[r] = 0;
        }
        self.done = true;
        None
    }
}

impl Iterator for Codewords<'_> {
    type Item = QPoly;

    fn next(&mut self) -> Option<QPoly> {
        let ring = self.code.ring.clone();
        let digits = self.next_digits()?;
        Some(QPoly::from_digits(&ring, digits).expect("basis rows have ring width"))
    }
}
