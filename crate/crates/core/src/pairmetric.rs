//! The symbol-pair read map, pair and Hamming weights, the run decomposition
//! `d_sp = d_H + L`, and the exhaustive minimum-distance oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::ConstacyclicCode;
use crate::error::{Error, Result};
use crate::linalg;
use crate::quotient::QPoly;

/// The pair vector `((x_0,x_1), (x_1,x_2), …, (x_{N−1},x_0))`.
pub fn pair_vector<T: Copy>(x: &[T]) -> Result<Vec<(T, T)>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::LengthTooShort(n));
    }
    Ok((0..n).map(|i| (x[i], x[(i + 1) % n])).collect())
}

/// Number of nonzero symbols. `T::default()` is the zero symbol.
pub fn wt_h<T: Copy + PartialEq + Default>(x: &[T]) -> usize {
    let zero = T::default();
    x.iter().filter(|&&c| c != zero).count()
}

/// Number of indices `i` with `(x_i, x_{i+1}) ≠ (0, 0)`, cyclically.
pub fn wt_sp<T: Copy + PartialEq + Default>(x: &[T]) -> Result<usize> {
    let zero = T::default();
    let support: Vec<bool> = x.iter().map(|&c| c != zero).collect();
    if support.len() < 2 {
        return Err(Error::LengthTooShort(support.len()));
    }
    Ok(pair_weight_of_support(&support))
}

pub fn d_h<T: Copy + PartialEq>(x: &[T], y: &[T]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

pub fn d_sp<T: Copy + PartialEq>(x: &[T], y: &[T]) -> Result<usize> {
    let diff: Vec<bool> = x.iter().zip(y).map(|(a, b)| a != b).collect();
    if diff.len() < 2 {
        return Err(Error::LengthTooShort(diff.len()));
    }
    Ok(pair_weight_of_support(&diff))
}

/// Pair weight of a word given only its support.
pub fn pair_weight_of_support(support: &[bool]) -> usize {
    let n = support.len();
    (0..n).filter(|&i| support[i] || support[(i + 1) % n]).count()
}

/// Number of maximal cyclic runs of `true`.
pub fn count_blocks(support: &[bool]) -> usize {
    let n = support.len();
    if support.iter().all(|&b| b) {
        return 1.min(n);
    }
    (0..n).filter(|&i| support[i] && !support[(i + n - 1) % n]).count()
}

/// Hamming distance, run count and pair distance of two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub d_h: usize,
    pub blocks: usize,
    pub d_sp: usize,
}

/// Splits the differing positions of `x` and `y` into maximal cyclic runs.
/// Requires `0 < d_H(x, y) < N`; the returned pair distance is computed from
/// the pair vectors and always equals `d_h + blocks`.
pub fn block_decomposition<T: Copy + PartialEq>(x: &[T], y: &[T]) -> Result<BlockDecomposition> {
    let n = x.len();
    if n < 2 {
        return Err(Error::LengthTooShort(n));
    }
    let diff: Vec<bool> = x.iter().zip(y).map(|(a, b)| a != b).collect();
    let d_h = diff.iter().filter(|&&b| b).count();
    if d_h == 0 || d_h == n {
        return Err(Error::DegenerateInput(format!("d_H = {d_h} with N = {n}")));
    }
    let (px, py) = (pair_vector(x)?, pair_vector(y)?);
    let d_sp = px.iter().zip(&py).filter(|(a, b)| a != b).count();
    Ok(BlockDecomposition { d_h, blocks: count_blocks(&diff), d_sp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Pair,
    Hamming,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Exhaustive,
    UpperBound,
}

/// A minimum-weight codeword with its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: QPoly,
    pub hamming_weight: usize,
    pub pair_weight: usize,
    /// Number of cyclic runs in the support.
    pub blocks: usize,
}

impl Witness {
    pub fn of(word: QPoly) -> Witness {
        let support: Vec<bool> = word.coeffs().iter().map(|c| !c.is_zero()).collect();
        Witness {
            hamming_weight: support.iter().filter(|&&b| b).count(),
            pair_weight: pair_weight_of_support(&support),
            blocks: count_blocks(&support),
            word,
        }
    }
}

/// Minimum pair and Hamming distances of a code with their provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub d_sp: u64,
    pub d_h: u64,
    /// Run count of the witness, when it is neither zero nor full-support.
    pub blocks: Option<u64>,
    pub method: Method,
    pub metric: Metric,
    pub witness: Option<Witness>,
    pub words_examined: u64,
}

impl DistanceReport {
    pub fn closed_form(d_sp: u64, d_h: u64) -> DistanceReport {
        DistanceReport {
            d_sp,
            d_h,
            blocks: None,
            method: Method::ClosedForm,
            metric: Metric::Pair,
            witness: None,
            words_examined: 0,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d_sp": self.d_sp,
            "d_H": self.d_h,
            "L": self.blocks,
            "method": self.method,
            "metric": self.metric,
            "witness": self.witness.as_ref().map(|w| w.word.to_text()),
            "words_examined": self.words_examined,
        })
    }
}

/// Controls for [`min_distance_brute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest code size scanned exhaustively; larger codes are sampled.
    pub budget: u64,
    /// Seed of the sampling fallback.
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: crate::codes::DEFAULT_BUDGET, seed: 0 }
    }
}

/// Minimum nonzero pair and Hamming weights of a linear code.
///
/// Codes with at most `budget` words are scanned completely and the result is
/// exact; the witness is the first minimal word in enumeration order. Larger
/// codes are sampled and reported as an upper bound.
pub fn min_distance_brute(code: &ConstacyclicCode, metric: Metric, opts: OracleOptions) -> DistanceReport {
    let dim = code.dim_p();
    if dim == 0 {
        return DistanceReport {
            d_sp: 0,
            d_h: 0,
            blocks: None,
            method: Method::Exhaustive,
            metric,
            witness: None,
            words_examined: 1,
        };
    }
    let exact = code.size().is_some_and(|s| s <= opts.budget as u128);
    let (best_sp, best_h, method, examined) = if exact {
        let scan = exhaustive_scan(code);
        (
            (scan.sp.0, code.codeword(&index_digits(scan.sp.1, code.ring().p(), dim))),
            (scan.h.0, code.codeword(&index_digits(scan.h.1, code.ring().p(), dim))),
            Method::Exhaustive,
            code.size().unwrap() as u64,
        )
    } else {
        let (sp, h, examined) = sampled_scan(code, opts);
        (sp, h, Method::UpperBound, examined)
    };
    let chosen = match metric {
        Metric::Pair => best_sp.1.clone(),
        Metric::Hamming => best_h.1.clone(),
    };
    let witness = Witness::of(chosen);
    let n = code.length();
    let blocks = (witness.hamming_weight > 0 && witness.hamming_weight < n).then_some(witness.blocks as u64);
    DistanceReport {
        d_sp: best_sp.0 as u64,
        d_h: best_h.0 as u64,
        blocks,
        method,
        metric,
        witness: Some(witness),
        words_examined: examined,
    }
}

fn index_digits(mut index: u64, p: u32, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (index % p as u64) as u8;
            index /= p as u64;
            d
        })
        .collect()
}

/// Best (weight, counter index) for each metric.
#[derive(Clone, Copy, Debug)]
struct ScanResult {
    sp: (usize, u64),
    h: (usize, u64),
}

impl ScanResult {
    const EMPTY: ScanResult = ScanResult { sp: (usize::MAX, u64::MAX), h: (usize::MAX, u64::MAX) };

    fn merge(self, other: ScanResult) -> ScanResult {
        ScanResult { sp: self.sp.min(other.sp), h: self.h.min(other.h) }
    }
}

/// Per-word weight evaluation on GF(p) digits.
struct Evaluator {
    width: usize,
    support: Vec<bool>,
}

impl Evaluator {
    fn new(width: usize, symbols: usize) -> Self {
        Evaluator { width, support: vec![false; symbols] }
    }

    #[inline]
    fn weights(&mut self, digits: &[u8]) -> (usize, usize) {
        let mut h = 0;
        for (s, sym) in self.support.iter_mut().zip(digits.chunks_exact(self.width)) {
            *s = sym.iter().any(|&d| d != 0);
            h += *s as usize;
        }
        let n = self.support.len();
        let mut sp = (self.support[n - 1] || self.support[0]) as usize;
        for w in self.support.windows(2) {
            sp += (w[0] || w[1]) as usize;
        }
        (h, sp)
    }
}

/// Exhaustive scan in p-ary Gray-code order: consecutive words differ by one
/// basis row, so each step costs one vector addition. The counter space is cut
/// into independent chunks; ties are broken by the smallest counter index, so
/// the result does not depend on how chunks are scheduled.
fn exhaustive_scan(code: &ConstacyclicCode) -> ScanResult {
    let p = code.ring().p() as u64;
    let dim = code.dim_p();
    let rows = code.basis().rows();
    let width = code.ring().symbol_width();
    let symbols = code.length();
    let total = p.pow(dim as u32);
    let powers: Vec<u64> = (0..=dim as u32).map(|e| p.pow(e)).collect();

    // chunks of about 2^14 words
    let mut low = dim;
    while low > 0 && powers[low] > (1 << 14) {
        low -= 1;
    }
    let chunk = powers[low];
    let chunks = total / chunk;

    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let end = start + chunk;
            let mut eval = Evaluator::new(width, symbols);
            // Gray digits g_r = t_r − t_{r+1} (mod p) of the starting counter
            let t_digits = index_digits(start, p as u32, dim + 1);
            let mut gray: Vec<u8> =
                (0..dim).map(|r| ((t_digits[r] as u64 + p - t_digits[r + 1] as u64) % p) as u8).collect();
            let mut word = code.basis().combine(&gray);
            let mut index: u64 = gray.iter().enumerate().map(|(r, &g)| g as u64 * powers[r]).sum();
            let mut best = ScanResult::EMPTY;
            let mut consider = |word: &[u8], index: u64, best: &mut ScanResult| {
                if index == 0 {
                    return;
                }
                let (h, sp) = eval.weights(word);
                best.sp = best.sp.min((sp, index));
                best.h = best.h.min((h, index));
            };
            consider(&word, index, &mut best);
            for t in start + 1..end {
                let mut v = 0;
                let mut tt = t;
                while tt % p == 0 {
                    tt /= p;
                    v += 1;
                }
                linalg::add_assign(&mut word, &rows[v], p as u8);
                if gray[v] as u64 == p - 1 {
                    gray[v] = 0;
                    index -= (p - 1) * powers[v];
                } else {
                    gray[v] += 1;
                    index += powers[v];
                }
                consider(&word, index, &mut best);
            }
            best
        })
        .reduce(|| ScanResult::EMPTY, ScanResult::merge)
}

type Best = (usize, QPoly);

/// Random-walk sampling for codes beyond the budget. Every basis row and every
/// generator of the underlying spec is also examined.
fn sampled_scan(code: &ConstacyclicCode, opts: OracleOptions) -> (Best, Best, u64) {
    let ring = code.ring();
    let p = ring.p() as u8;
    let width = ring.symbol_width();
    let mut eval = Evaluator::new(width, code.length());
    let mut best_sp: Option<(usize, Vec<u8>)> = None;
    let mut best_h: Option<(usize, Vec<u8>)> = None;
    let mut examined = 0u64;
    let mut consider = |word: &[u8], eval: &mut Evaluator| {
        if word.iter().all(|&d| d == 0) {
            return;
        }
        examined += 1;
        let (h, sp) = eval.weights(word);
        if best_sp.as_ref().is_none_or(|(w, _)| sp < *w) {
            best_sp = Some((sp, word.to_vec()));
        }
        if best_h.as_ref().is_none_or(|(w, _)| h < *w) {
            best_h = Some((h, word.to_vec()));
        }
    };
    if let Some(spec) = code.spec() {
        for g in spec.generators().unwrap_or_default() {
            consider(&g.to_digits(), &mut eval);
        }
    }
    for row in code.basis().rows() {
        consider(row, &mut eval);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rows = code.basis().rows();
    let mut word = vec![0u8; code.basis().width()];
    for _ in 0..opts.budget {
        let r = rng.gen_range(0..rows.len());
        let c = rng.gen_range(1..p);
        linalg::axpy(&mut word, &rows[r], c, p);
        consider(&word, &mut eval);
    }
    let to_poly = |(w, d): (usize, Vec<u8>)| (w, QPoly::from_digits(ring, &d).expect("ring width"));
    (to_poly(best_sp.unwrap()), to_poly(best_h.unwrap()), examined)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_vector_examples() {
        let zero = [0u8; 4];
        assert!(pair_vector(&zero).unwrap().iter().all(|&p| p == (0, 0)));
        assert_eq!(pair_vector(&[1u8, 0, 0, 0]).unwrap(), vec![(1, 0), (0, 0), (0, 0), (0, 1)]);
        let x = [1u8, 0, 2, 0, 0, 0];
        let nonzero: Vec<usize> =
            pair_vector(&x).unwrap().iter().enumerate().filter(|(_, &p)| p != (0, 0)).map(|(i, _)| i).collect();
        assert_eq!(nonzero, vec![0, 1, 2, 5]);
        assert_eq!(wt_sp(&x), Ok(4));
        assert_eq!(wt_sp(&[0u8; 5]), Ok(0));
        assert_eq!(pair_vector(&[1u8]), Err(Error::LengthTooShort(1)));
    }

    #[test]
    fn block_examples() {
        let z = [0u8; 4];
        assert_eq!(
            block_decomposition(&[1u8, 1, 0, 0], &z).unwrap(),
            BlockDecomposition { d_h: 2, blocks: 1, d_sp: 3 }
        );
        assert_eq!(
            block_decomposition(&[1u8, 0, 1, 0], &z).unwrap(),
            BlockDecomposition { d_h: 2, blocks: 2, d_sp: 4 }
        );
        assert!(matches!(block_decomposition(&z, &z), Err(Error::DegenerateInput(_))));
        assert!(matches!(block_decomposition(&[1u8, 1, 1, 1], &z), Err(Error::DegenerateInput(_))));
        // a run that wraps around the end
        assert_eq!(block_decomposition(&[1u8, 0, 0, 1], &z).unwrap().blocks, 1);
    }

    #[test]
    fn full_support_pair_weight() {
        assert_eq!(wt_sp(&[1u8, 2, 1]), Ok(3));
        assert_eq!(count_blocks(&[true, true, true]), 1);
    }
}
