use std::collections::BTreeSet;
use std::sync::Arc;

use sympair::codes::SpecKey;
use sympair::theory::{self, UnitSampling};
use sympair::{Base, Field, Gf, QuotientRing};

fn field_ring(p: u32, m: usize, n: u64, s: u32) -> Option<Arc<QuotientRing>> {
    if n.is_multiple_of(p as u64) {
        return None;
    }
    let f = Field::new(p, m, None).unwrap();
    let alpha0 = *f.irreducible_binomial_constants(n).first()?;
    Some(QuotientRing::new(f, Base::Field, n, s, alpha0, Gf::ZERO).unwrap())
}

fn params() -> Vec<(u32, usize, u64, u32)> {
    let mut out = Vec::new();
    for p in [2, 3, 5, 7] {
        for m in [1, 2] {
            for s in [1, 2, 3] {
                for n in [1, 2, 3, 4] {
                    if (p as u64).pow(s) * n <= 100 {
                        out.push((p, m, n, s));
                    }
                }
            }
        }
    }
    out
}

fn mds_keys(verdicts: &[theory::MdsVerdict]) -> BTreeSet<SpecKey> {
    verdicts.iter().filter(|v| v.is_mds && !v.trivial).map(|v| v.key()).collect()
}

#[test]
fn field_classification_is_exactly_the_table() {
    for (p, m, n, s) in params() {
        let Some(ring) = field_ring(p, m, n, s) else { continue };
        let verdicts = theory::mds_classify(&ring, UnitSampling::default());
        let rows = theory::table1_rows(&ring);
        let table: BTreeSet<SpecKey> = rows.iter().flat_map(|r| r.specs.iter().map(|s| s.key())).collect();
        assert_eq!(mds_keys(&verdicts), table, "p={p} m={m} n={n} s={s}");
        for row in &rows {
            for spec in &row.specs {
                let d = theory::dsp_formula(spec).unwrap().value;
                assert_eq!(d, row.claimed_d_sp, "{} at p={p} n={n} s={s}", row.generator);
            }
        }
    }
}

#[test]
fn chain_classification_is_exactly_the_table() {
    for (p, m, n, s) in params() {
        if m == 2 && p > 3 {
            continue;
        }
        let Some(f) = field_ring(p, m, n, s) else { continue };
        let ring = f.chain_ring(Gf::ZERO).unwrap();
        let verdicts = theory::mds_classify(&ring, UnitSampling { units: 2, seed: 3 });
        let rows = theory::table2_rows(&ring);
        let table: BTreeSet<SpecKey> = rows.iter().flat_map(|r| r.specs.iter().map(|s| s.key())).collect();
        assert_eq!(mds_keys(&verdicts), table, "p={p} m={m} n={n} s={s}");
        for row in &rows {
            for spec in &row.specs {
                let v = theory::singleton_defect(spec, theory::dsp_formula(spec).unwrap().value);
                assert_eq!(v.d_sp, row.claimed_d_sp, "{} as {spec}", row.generator);
                assert!(v.is_mds, "{} as {spec}", row.generator);
            }
        }
    }
}

#[test]
fn no_nontrivial_mds_for_n_at_least_three() {
    for (p, m, n, s) in params() {
        if n < 3 {
            continue;
        }
        let Some(ring) = field_ring(p, m, n, s) else { continue };
        for v in theory::mds_classify(&ring, UnitSampling::default()) {
            let i = theory::equivalent_field_exponent(&v.spec);
            if i >= 1 && i < ring.p_pow_s() {
                assert!(v.singleton_defect >= n as i64 - 2 && v.singleton_defect > 0);
            }
        }
    }
}

#[test]
fn field_formula_properties() {
    for (p, _, n, s) in params() {
        if n % p as u64 == 0 {
            continue;
        }
        let (p, ps) = (p as u64, (p as u64).pow(s));
        let mut last = 0;
        for i in 0..ps {
            let d = theory::dsp_formula_field(n, p, s, i).unwrap().value;
            assert!(d >= last, "p={p} n={n} s={s} i={i}");
            last = d;
            if i >= 1 {
                let dh = theory::dh_formula(p, s, i).unwrap();
                assert!(dh <= d && d <= 2 * dh);
                if n >= 2 {
                    assert_eq!(d, 2 * dh);
                }
            }
        }
    }
}
