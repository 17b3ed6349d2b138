//! Closed forms: the weight of `(x^n − α0)^i`, Hamming and symbol-pair
//! distances of every code family, the pair Singleton bound, MDS
//! classification, the MDS tables, and formula-vs-oracle scans.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{CodeSpec, CodeVariant, ConstacyclicCode, SpecKey};
use crate::error::{Error, Result};
use crate::galois::ChainElement;
use crate::pairmetric::{min_distance_brute, Metric, OracleOptions};
use crate::quotient::{Base, QPoly, QuotientRing};

/// `∏ (i_j + 1)` over the base-p digits of `i`, the Hamming weight of
/// `(x^n − α0)^i` for `i < p^s`.
pub fn wt_h_binom_power(p: u64, s: u32, i: u64) -> Result<u64> {
    let ps = p.pow(s);
    if i >= ps {
        return Err(Error::ExponentOutOfRange { value: i, max: ps - 1 });
    }
    let mut rest = i;
    let mut product = 1;
    for _ in 0..s {
        product *= rest % p + 1;
        rest /= p;
    }
    Ok(product)
}

/// Position of `1 ≤ i ≤ p^s − 1` in the partition of `[1, p^s − 1]` into
/// intervals `p^s − p^{s−k} + θ·p^{s−k−1} + γ`, `1 ≤ γ ≤ p^{s−k−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub k: u32,
    pub theta: u64,
    pub gamma: u64,
}

pub fn locate(p: u64, s: u32, i: u64) -> Result<Interval> {
    let ps = p.pow(s);
    if i == 0 || i >= ps {
        return Err(Error::ExponentOutOfRange { value: i, max: ps - 1 });
    }
    for k in 0..s {
        let base = ps - p.pow(s - k);
        let width = p.pow(s - k - 1);
        if i > base && i <= ps - width {
            let theta = (i - base - 1) / width;
            return Ok(Interval { k, theta, gamma: i - base - theta * width });
        }
    }
    unreachable!("the intervals cover [1, p^s - 1]")
}

/// Minimum Hamming distance of `⟨(x^n − α0)^i⟩` over the field.
pub fn dh_formula(p: u64, s: u32, i: u64) -> Result<u64> {
    let ps = p.pow(s);
    match i {
        0 => Ok(1),
        _ if i == ps => Ok(0),
        _ if i > ps => Err(Error::ExponentOutOfRange { value: i, max: ps }),
        _ => {
            let at = locate(p, s, i)?;
            Ok((at.theta + 2) * p.pow(at.k))
        }
    }
}

/// Which closed-form case produced a pair distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `i = 0`: the whole space, distance 2.
    FullSpace,
    /// `i = p^s`: the zero code.
    ZeroCode,
    /// `n = 1`, first exponent of a `θ = 0` interval below the top level: `3p^k`.
    RunStart,
    /// `n = 1`, rest of a `θ = 0` interval below the top level: `4p^k`.
    RunInterior,
    /// `2(θ + 2)p^k`; all of `n ≥ 2`, and `θ ≥ 1` below the top level for `n = 1`.
    Doubled,
    /// `n = 1`, `i = p^s − p + θ` with `1 ≤ θ ≤ p − 2`: `(θ + 2)p^{s−1}`.
    TopLevel,
    /// `n = 1`, `i = p^s − 1`: `p^s`.
    TopExponent,
}

/// A closed-form pair distance together with the case and interval it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchWitness {
    pub branch: Branch,
    pub interval: Option<Interval>,
    pub value: u64,
}

/// Symbol-pair distance of `⟨(x^n − α0)^i⟩` over the field, `0 ≤ i ≤ p^s`.
pub fn dsp_formula_field(n: u64, p: u64, s: u32, i: u64) -> Result<BranchWitness> {
    if n == 0 || n.is_multiple_of(p) {
        return Err(Error::ConstraintViolation(format!("need gcd(n, p) = 1, got n={n}, p={p}")));
    }
    let ps = p.pow(s);
    if i > ps {
        return Err(Error::ExponentOutOfRange { value: i, max: ps });
    }
    let trivial = |branch, value| BranchWitness { branch, interval: None, value };
    if i == 0 {
        return Ok(trivial(Branch::FullSpace, 2));
    }
    if i == ps {
        return Ok(trivial(Branch::ZeroCode, 0));
    }
    let at = locate(p, s, i)?;
    let pk = p.pow(at.k);
    let (branch, value) = if n >= 2 {
        (Branch::Doubled, 2 * (at.theta + 2) * pk)
    } else if at.k + 1 < s {
        match (at.theta, at.gamma) {
            (0, 1) => (Branch::RunStart, 3 * pk),
            (0, _) => (Branch::RunInterior, 4 * pk),
            (theta, _) => (Branch::Doubled, 2 * (theta + 2) * pk),
        }
    } else if i == ps - 1 {
        (Branch::TopExponent, ps)
    } else {
        // top level: the interval width is 1 and i = p^s − p + (θ + 1)
        (Branch::TopLevel, (at.theta + 3) * pk)
    };
    Ok(BranchWitness { branch, interval: Some(at), value })
}

/// The field exponent whose code `⟨(x^n − α0)^e⟩_F` has the same pair and
/// Hamming distances as the given spec.
pub fn equivalent_field_exponent(spec: &CodeSpec) -> u64 {
    let ps = spec.ring().p_pow_s();
    match *spec.variant() {
        CodeVariant::FieldPower { i } => i,
        // ⟨g^i⟩ ⊇ ⟨u⟩ for i ≤ p^s, and ⟨g^i⟩ = u·⟨g^{i−p^s}⟩ beyond
        CodeVariant::ChainPrincipal { i } => i.saturating_sub(ps),
        CodeVariant::Type1 { k } => k,
        CodeVariant::Type2 { j, k, ref b } => {
            if b.is_zero() {
                k
            } else {
                ps - j + k
            }
        }
        CodeVariant::Type3 { j, k, t, ref b } => {
            if b.is_zero() {
                k
            } else {
                2 * k + t - j
            }
        }
    }
}

/// Symbol-pair distance of a chain-ring spec.
pub fn dsp_formula_chain(spec: &CodeSpec) -> Result<u64> {
    if spec.ring().base() != Base::Chain {
        return Err(Error::NotChainCode);
    }
    dsp_formula(spec).map(|w| w.value)
}

/// Symbol-pair distance of any spec, with the field case it reduces to.
pub fn dsp_formula(spec: &CodeSpec) -> Result<BranchWitness> {
    let ring = spec.ring();
    dsp_formula_field(ring.n(), ring.p() as u64, ring.s(), equivalent_field_exponent(spec))
}

/// Hamming distance of any spec.
pub fn dh_formula_spec(spec: &CodeSpec) -> Result<u64> {
    let ring = spec.ring();
    dh_formula(ring.p() as u64, ring.s(), equivalent_field_exponent(spec))
}

/// A code's position relative to the pair Singleton bound
/// `|C| ≤ |A|^{N − d_sp + 2}`. Sizes are in units of `log_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsVerdict {
    pub spec: CodeSpec,
    pub d_sp: u64,
    pub size_log_p: u64,
    pub singleton_defect: i64,
    pub is_mds: bool,
    /// Full space or zero code.
    pub trivial: bool,
}

impl MdsVerdict {
    pub fn key(&self) -> SpecKey {
        self.spec.key()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec.to_string(),
            "generator": generator_label(&self.spec),
            "d_sp": self.d_sp,
            "size_log_p": self.size_log_p,
            "singleton_defect": self.singleton_defect,
            "is_mds": self.is_mds,
            "trivial": self.trivial,
        })
    }
}

pub fn singleton_defect(spec: &CodeSpec, d_sp: u64) -> MdsVerdict {
    let ring = spec.ring();
    let w = (ring.m() * ring.base().components()) as i64;
    let len = ring.len() as i64;
    let size = spec.closed_form_log_size();
    let defect = (len - d_sp as i64 + 2) * w - size as i64;
    MdsVerdict {
        spec: spec.clone(),
        d_sp,
        size_log_p: size,
        singleton_defect: defect,
        is_mds: defect == 0,
        trivial: size == 0 || size as i64 == len * w,
    }
}

/// How many random units to try as `b(x)` and where their randomness comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitSampling {
    pub units: usize,
    pub seed: u64,
}

impl Default for UnitSampling {
    fn default() -> Self {
        UnitSampling { units: 3, seed: 0 }
    }
}

/// `units` units of the field quotient, embedded into `ring`: the constant 1
/// followed by random ones.
pub fn random_units(ring: &Arc<QuotientRing>, sampling: UnitSampling) -> Vec<QPoly> {
    let f_ring = ring.field_ring();
    let q = ring.field().q();
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut out = Vec::with_capacity(sampling.units);
    if sampling.units > 0 {
        out.push(QPoly::one(ring));
    }
    while out.len() < sampling.units {
        let coeffs: Vec<ChainElement> = (0..f_ring.len())
            .map(|_| ChainElement::from_field(ring.field().element(rng.gen_range(0..q)).expect("index below q")))
            .collect();
        let b = QPoly::from_coeffs(&f_ring, &coeffs).expect("ring length");
        if b.is_unit() {
            out.push(b.embed(ring).expect("field values embed"));
        }
    }
    out
}

/// Every code spec of the ring: `C_i` over the field, `D_i` when β ≠ 0, and
/// the three ideal types when β = 0 with `b ∈ {0} ∪ sampled units`.
pub fn all_specs(ring: &Arc<QuotientRing>, sampling: UnitSampling) -> Vec<CodeSpec> {
    let ps = ring.p_pow_s();
    let ok = |s: Result<CodeSpec>| s.expect("enumerated parameters satisfy the constraints");
    if ring.base() == Base::Field {
        return (0..=ps).map(|i| ok(CodeSpec::field_power(ring, i))).collect();
    }
    if !ring.beta().is_zero() {
        return (0..=2 * ps).map(|i| ok(CodeSpec::chain_principal(ring, i))).collect();
    }
    let mut bs = vec![QPoly::zero(ring)];
    bs.extend(random_units(ring, sampling));
    let mut specs: Vec<CodeSpec> = (0..=ps).map(|k| ok(CodeSpec::type1(ring, k))).collect();
    for k in 0..ps {
        for j in (ps + k).div_ceil(2)..ps {
            for b in &bs {
                specs.push(ok(CodeSpec::type2(ring, j, k, b.clone())));
            }
        }
    }
    for k in 0..ps.saturating_sub(1) {
        for t in 1..ps - k {
            for j in k + t.div_ceil(2)..=k + t {
                for b in &bs {
                    specs.push(ok(CodeSpec::type3(ring, j, k, t, b.clone())));
                }
            }
        }
    }
    specs
}

/// Closed-form verdicts for every spec of the ring.
pub fn mds_classify(ring: &Arc<QuotientRing>, sampling: UnitSampling) -> Vec<MdsVerdict> {
    let mut verdicts: Vec<MdsVerdict> = all_specs(ring, sampling)
        .iter()
        .map(|spec| singleton_defect(spec, dsp_formula(spec).expect("valid spec").value))
        .collect();
    verdicts.sort_by_key(|v| v.key());
    verdicts
}

/// Formula and oracle values for one spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyEntry {
    pub spec: CodeSpec,
    pub formula_d_sp: u64,
    pub oracle_d_sp: u64,
    pub formula_d_h: u64,
    pub oracle_d_h: u64,
    pub closed_form_log_size: u64,
    pub dim_p: u64,
    /// A minimum pair-weight codeword found by the oracle.
    pub witness: Option<String>,
}

impl ConsistencyEntry {
    pub fn matches(&self) -> bool {
        self.formula_d_sp == self.oracle_d_sp
            && self.formula_d_h == self.oracle_d_h
            && self.closed_form_log_size == self.dim_p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec.to_string(),
            "formula_d_sp": self.formula_d_sp,
            "oracle_d_sp": self.oracle_d_sp,
            "formula_d_H": self.formula_d_h,
            "oracle_d_H": self.oracle_d_h,
            "closed_form_log_size": self.closed_form_log_size,
            "dim_p": self.dim_p,
            "witness": self.witness,
            "match": self.matches(),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub entries: Vec<ConsistencyEntry>,
    /// Specs whose code exceeds the budget.
    pub skipped: Vec<CodeSpec>,
}

impl ConsistencyReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &ConsistencyEntry> {
        self.entries.iter().filter(|e| !e.matches())
    }
}

/// Checks one spec against the exhaustive oracle, or returns `None` when the
/// code is larger than `budget`.
pub fn check_spec(spec: &CodeSpec, budget: u64) -> Result<Option<ConsistencyEntry>> {
    let ring = spec.ring();
    let log_size = spec.closed_form_log_size();
    let fits = (ring.p() as u128).checked_pow(log_size as u32).is_some_and(|s| s <= budget as u128);
    if !fits {
        return Ok(None);
    }
    let code = ConstacyclicCode::build(spec)?;
    let report = min_distance_brute(&code, Metric::Pair, OracleOptions { budget, seed: 0 });
    Ok(Some(ConsistencyEntry {
        spec: spec.clone(),
        formula_d_sp: dsp_formula(spec)?.value,
        oracle_d_sp: report.d_sp,
        formula_d_h: dh_formula_spec(spec)?,
        oracle_d_h: report.d_h,
        closed_form_log_size: log_size,
        dim_p: code.dim_p() as u64,
        witness: report.witness.map(|w| w.word.to_text()),
    }))
}

/// Oracle-vs-formula comparison for every spec of the ring that fits the budget.
pub fn consistency_scan(ring: &Arc<QuotientRing>, budget: u64, sampling: UnitSampling) -> Result<ConsistencyReport> {
    let mut report = ConsistencyReport::default();
    for spec in all_specs(ring, sampling) {
        match check_spec(&spec, budget)? {
            Some(entry) => report.entries.push(entry),
            None => report.skipped.push(spec),
        }
    }
    report.entries.sort_by_key(|e| e.spec.key());
    report.skipped.sort_by_key(|s| s.key());
    Ok(report)
}

/// One row of the published MDS tables, instantiated at concrete parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// The generator as printed in the table.
    pub generator: String,
    pub specs: Vec<CodeSpec>,
    /// Pair distance stated by the table.
    pub claimed_d_sp: u64,
}

/// Rows of the field MDS table that apply to `ring` (field base).
pub fn table1_rows(ring: &Arc<QuotientRing>) -> Vec<TableRow> {
    let (p, s, n) = (ring.p() as u64, ring.s(), ring.n());
    let ps = ring.p_pow_s();
    let mut rows: Vec<(String, u64, u64)> = Vec::new();
    if n == 1 {
        if ps >= 3 {
            rows.push(("x-a0".into(), 1, 3));
        }
        if ps >= 4 {
            rows.push(("(x-a0)^2".into(), 2, 4));
        }
        if p == 3 && s == 2 {
            rows.push(("(x-a0)^4".into(), 4, 6));
        }
        if s == 1 {
            for k in 1..=p.saturating_sub(2) {
                rows.push((format!("(x-a0)^{k}"), k, k + 2));
            }
        }
        if ps >= 3 {
            rows.push((format!("(x-a0)^{}", ps - 2), ps - 2, ps));
        }
    } else if n == 2 {
        rows.push(("x^2-a0".into(), 1, 4));
        if s == 1 {
            for k in 1..=p.saturating_sub(2) {
                rows.push((format!("(x^2-a0)^{k}"), k, 2 * k + 2));
            }
        }
        rows.push((format!("(x^2-a0)^{}", ps - 1), ps - 1, 2 * ps));
    }
    rows.into_iter()
        .map(|(generator, i, d)| TableRow {
            generator,
            specs: vec![CodeSpec::field_power(ring, i).expect("exponent in range")],
            claimed_d_sp: d,
        })
        .collect()
}

/// Rows of the chain-ring MDS table that apply to `ring` (chain base, β = 0).
/// Each row lists its specs for `b = 0` and `b = 1`.
pub fn table2_rows(ring: &Arc<QuotientRing>) -> Vec<TableRow> {
    let (p, s, n) = (ring.p() as u64, ring.s(), ring.n());
    let ps = ring.p_pow_s();
    // (generator, j, admissible k, distance)
    let mut rows: Vec<(String, u64, Vec<u64>, u64)> = Vec::new();
    if n == 1 {
        if ps >= 3 {
            rows.push(("(x-a0)+u*b".into(), 1, vec![0], 3));
        }
        if s >= 2 {
            rows.push(("(x-a0)^2+u*(x-a0)^k*b".into(), 2, vec![0, 1], 4));
        }
        if p == 3 && s == 2 {
            rows.push(("(x-a0)^4+u*(x-a0)^k*b".into(), 4, (0..=3).collect(), 6));
        }
        if s == 1 {
            for j in 1..=p.saturating_sub(2) {
                let ks = (2 * j).saturating_sub(p)..j;
                rows.push((format!("(x-a0)^{j}+u*(x-a0)^k*b"), j, ks.collect(), j + 2));
            }
        }
        if ps >= 3 {
            let j = ps - 2;
            let ks = [ps.checked_sub(4), Some(ps - 3)].into_iter().flatten().collect();
            rows.push((format!("(x-a0)^{j}+u*(x-a0)^k*b"), j, ks, ps));
        }
    } else if n == 2 {
        rows.push(("(x^2-a0)+u*b".into(), 1, vec![0], 4));
        if s == 1 {
            for j in 1..=p.saturating_sub(2) {
                let ks = (2 * j).saturating_sub(p)..j;
                rows.push((format!("(x^2-a0)^{j}+u*(x^2-a0)^k*b"), j, ks.collect(), 2 * j + 2));
            }
        }
        rows.push((format!("(x^2-a0)^{}+u*(x^2-a0)^{}*b", ps - 1, ps - 2), ps - 1, vec![ps - 2], 2 * ps));
    }
    let zero = QPoly::zero(ring);
    let one = QPoly::one(ring);
    rows.into_iter()
        .map(|(generator, j, ks, d)| {
            let mut specs = vec![CodeSpec::from_mixed_generator(ring, j, 0, &zero).expect("b = 0 gives type I")];
            for k in ks {
                specs.push(CodeSpec::from_mixed_generator(ring, j, k, &one).expect("table parameters are admissible"));
            }
            TableRow { generator, specs, claimed_d_sp: d }
        })
        .collect()
}

/// Human-readable generator of a spec, with `g = x^n - a0`.
pub fn generator_label(spec: &CodeSpec) -> String {
    let pow = |e: u64| match e {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{e}"),
    };
    let b = |b: &QPoly| if b.is_zero() { "0".to_string() } else { "b".to_string() };
    match spec.variant() {
        CodeVariant::FieldPower { i } | CodeVariant::ChainPrincipal { i } => format!("<{}>", pow(*i)),
        CodeVariant::Type1 { k } => format!("<{}>", pow(*k)),
        CodeVariant::Type2 { j, k, b: bb } => format!("<{}*{}+u*{}>", pow(*j), b(bb), pow(*k)),
        CodeVariant::Type3 { j, k, t, b: bb } => {
            format!("<{}*{}+u*{}, {}>", pow(*j), b(bb), pow(*k), pow(k + t))
        }
    }
}

#[derive(Serialize)]
struct VerdictRow {
    spec: String,
    generator: String,
    size_log_p: u64,
    d_sp: u64,
    singleton_defect: i64,
    is_mds: bool,
    trivial: bool,
}

impl From<&MdsVerdict> for VerdictRow {
    fn from(v: &MdsVerdict) -> Self {
        VerdictRow {
            spec: v.spec.to_string(),
            generator: generator_label(&v.spec),
            size_log_p: v.size_log_p,
            d_sp: v.d_sp,
            singleton_defect: v.singleton_defect,
            is_mds: v.is_mds,
            trivial: v.trivial,
        }
    }
}

pub fn verdicts_to_csv(verdicts: &[MdsVerdict]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for v in verdicts {
        w.serialize(VerdictRow::from(v)).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

/// Markdown table with the column layout of the published tables.
pub fn verdicts_to_markdown(verdicts: &[MdsVerdict]) -> String {
    let mut out = String::from("| Generator | Size (log_p) | Pair distance | Remark |\n|---|---|---|---|\n");
    for v in verdicts {
        let remark = match (v.is_mds, v.trivial) {
            (true, true) => "MDS (trivial)".to_string(),
            (true, false) => "MDS".to_string(),
            (false, true) => format!("defect {} (zero code)", v.singleton_defect),
            (false, false) => format!("defect {}", v.singleton_defect),
        };
        out.push_str(&format!(
            "| `{}` | {} | {} | {} |\n",
            generator_label(&v.spec),
            v.size_log_p,
            v.d_sp,
            remark
        ));
    }
    out
}
