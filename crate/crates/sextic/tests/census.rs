use std::collections::BTreeSet;
use std::fs;

use num_integer::Integer;
use sextic::census::{self, CensusConfig, Enumerator, RecordMode};
use sextic::classifier;
use sextic::IntPoly;

/// Primitive tuples of length `len` and max-norm at most h, counted up to sign by brute force.
fn brute_projective_count(h: i64, len: u32) -> u64 {
    let side = (2 * h + 1) as u64;
    let mut n = 0;
    for code in 0..side.pow(len) {
        let mut x = code;
        let mut g = 0i64;
        for _ in 0..len {
            let c = (x % side) as i64 - h;
            x /= side;
            g = g.gcd(&c);
        }
        if g == 1 {
            n += 1;
        }
    }
    n / 2
}

#[test]
fn enumerator_matches_mobius_and_brute_force() {
    for h in 1..=3 {
        let stream = Enumerator::new(h, 7).count() as u64;
        assert_eq!(stream, census::mobius_count(h, 7), "H = {h}");
    }
    for h in 1..=2 {
        assert_eq!(census::mobius_count(h as u64, 7), brute_projective_count(h, 7));
    }
    assert_eq!(census::mobius_count(1, 7), 1093);
    assert_eq!(census::mobius_count(2, 7), 37969);
    assert_eq!(census::mobius_count(3, 7), 409585);
}

#[test]
fn projective_line_points() {
    for h in 1..=12 {
        let pts: Vec<Vec<i64>> = Enumerator::new(h, 2).collect();
        assert_eq!(pts.len() as u64, census::mobius_count(h, 2));
        assert_eq!(pts.len() as u64, brute_projective_count(h as i64, 2));
        let distinct: BTreeSet<_> = pts.iter().collect();
        assert_eq!(distinct.len(), pts.len());
        for p in &pts {
            assert_eq!(census::canonical_sign(p), *p);
            assert_eq!(p[0].gcd(&p[1]), 1);
        }
    }
}

#[test]
fn stream_is_lexicographic_and_skippable() {
    let all: Vec<Vec<i64>> = Enumerator::new(2, 7).collect();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    for start in [0u64, 1, 999, 20_000, 37_968] {
        let mut e = Enumerator::new(2, 7);
        e.skip_points(start);
        assert_eq!(e.position(), start);
        assert_eq!(e.next().as_ref(), all.get(start as usize));
    }
}

fn config(h: u64, chunk: u64, jobs: usize) -> CensusConfig {
    let mut cfg = CensusConfig::new(h);
    cfg.chunk_size = chunk;
    cfg.jobs = jobs;
    cfg
}

#[test]
fn height_one_census_is_consistent_with_classification() {
    let (summary, records) = census::run_census_in_memory(&config(1, 250, 1)).unwrap();
    assert_eq!(summary.points, 1093);
    assert_eq!(summary.irreducible + summary.reducible, summary.points);
    let counted: u64 = summary.rows.iter().map(|r| r.count).sum();
    assert_eq!(counted, summary.irreducible);
    assert_eq!(records.len() as u64, summary.non_s6_total);
    for r in &records {
        let (label, _) = classifier::classify(&IntPoly::from_i64(&r.coeffs)).unwrap();
        assert_eq!(Some(label), r.label, "{:?}", r.coeffs);
        assert_eq!(r.height, 1);
        assert_eq!(census::canonical_sign(&r.coeffs), r.coeffs);
    }
    // exactly the cyclic sextics of height one from the reference list
    let cyclic: BTreeSet<Vec<i64>> =
        records.iter().filter(|r| r.label.as_deref() == Some("g1")).map(|r| r.coeffs.clone()).collect();
    let expect: BTreeSet<Vec<i64>> = [
        [1, 0, 0, -1, 0, 0, 1],
        [1, 0, 0, 1, 0, 0, 1],
        [1, -1, 1, -1, 1, -1, 1],
        [1, 1, 1, 1, 1, 1, 1],
    ]
    .iter()
    .map(|c| c.to_vec())
    .collect();
    assert_eq!(cyclic, expect);
}

#[test]
fn results_do_not_depend_on_chunking_or_workers() {
    let (a, ra) = census::run_census_in_memory(&config(1, 1093, 1)).unwrap();
    let (b, rb) = census::run_census_in_memory(&config(1, 97, 3)).unwrap();
    let (c, rc) = census::run_census_in_memory(&config(1, 10, 2)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_csv(), c.to_csv());
    assert_eq!(ra, rb);
    assert_eq!(ra, rc);
}

#[test]
fn all_records_mode_covers_every_irreducible_point() {
    let mut cfg = config(1, 400, 1);
    cfg.records = RecordMode::All;
    let (summary, records) = census::run_census_in_memory(&cfg).unwrap();
    assert_eq!(records.iter().filter(|r| r.irreducible).count() as u64, summary.irreducible);
    assert_eq!(records.iter().filter(|r| r.label.as_deref() == Some("S6")).count() as u64, summary.count("S6"));
    let mut cfg = config(1, 400, 1);
    cfg.label_filter = Some("g7".into());
    let (filtered, records) = census::run_census_in_memory(&cfg).unwrap();
    assert_eq!(filtered.to_csv(), summary.to_csv());
    assert!(records.iter().all(|r| r.label.as_deref() == Some("g7")));
    assert_eq!(records.len() as u64, summary.count("g7"));
}

#[test]
fn monic_only_restricts_leading_coefficient() {
    let mut cfg = config(1, 500, 1);
    cfg.monic_only = true;
    let (summary, records) = census::run_census_in_memory(&cfg).unwrap();
    assert!(records.iter().all(|r| r.coeffs[6].abs() == 1));
    assert!(summary.considered < summary.points);
    let diff = census::errata_diff(&summary);
    assert!(!diff.verifiable);
}

#[test]
fn disk_run_resumes_after_interruption() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(1, 100, 1);
    let full = census::run_census(&cfg, dir.path(), false).unwrap();
    let csv = fs::read_to_string(dir.path().join(census::SUMMARY_CSV)).unwrap();
    assert_eq!(csv, full.to_csv());
    let records = census::read_records(dir.path()).unwrap();

    // forget two finished chunks and the final outputs, as if the run had been killed
    let ck_path = dir.path().join(census::CHECKPOINT);
    let mut ck = census::Checkpoint::parse(&fs::read_to_string(&ck_path).unwrap()).unwrap();
    for k in [3u64, 7] {
        ck.completed_chunks.remove(&k);
        fs::remove_file(dir.path().join(format!("chunk_{k:06}.tally.json"))).unwrap();
    }
    fs::write(&ck_path, ck.render()).unwrap();
    fs::remove_file(dir.path().join(census::SUMMARY_CSV)).unwrap();
    fs::remove_file(dir.path().join(census::RECORDS)).unwrap();

    let resumed = census::run_census(&cfg, dir.path(), true).unwrap();
    assert_eq!(resumed, full);
    assert_eq!(fs::read_to_string(dir.path().join(census::SUMMARY_CSV)).unwrap(), csv);
    assert_eq!(census::read_records(dir.path()).unwrap(), records);
}

#[test]
fn resume_rejects_a_different_configuration() {
    let dir = tempfile::tempdir().unwrap();
    census::run_census(&config(1, 100, 1), dir.path(), false).unwrap();
    assert!(census::run_census(&config(1, 50, 1), dir.path(), true).is_err());
}

#[test]
fn errata_diff_reports_every_mismatch() {
    let (mut summary, _) = census::run_census_in_memory(&config(1, 1093, 1)).unwrap();
    let diff = census::errata_diff(&summary);
    assert!(!diff.verifiable && !diff.matches());
    assert!(diff.rows.iter().all(|r| r.published.is_none()));

    summary.height = 4;
    let diff = census::errata_diff(&summary);
    assert!(diff.verifiable);
    assert_eq!(diff.published_column_sum, Some(14_255));
    for r in &diff.rows {
        assert_eq!(r.delta, Some(r.observed as i64 - r.published.unwrap() as i64));
    }
    assert_eq!(diff.mismatches().len(), diff.rows.iter().filter(|r| r.delta != Some(0)).count());

    summary.height = 6;
    let diff = census::errata_diff(&summary);
    assert_eq!(diff.published_column_sum, Some(53_932));
    assert_eq!(diff.published_stated_total, Some(53_972));
    assert_eq!(diff.published_moduli, Some(25_853));
    assert!(diff.notes.iter().any(|n| n.contains("53932") && n.contains("53972")));
}

#[test]
fn density_fit_over_two_heights() {
    let monic = |h| {
        let mut cfg = config(h, 5000, 1);
        cfg.monic_only = true;
        census::run_census_in_memory(&cfg).unwrap().0
    };
    let (s1, s2) = (monic(1), monic(2));
    assert!(census::density_report(std::slice::from_ref(&s1)).is_err());
    let rows = census::density_report(&[s2.clone(), s1.clone()]).unwrap();
    assert_eq!(rows.len(), 17);
    let g1 = &rows[0];
    assert_eq!(g1.delta, Some(6.0 / 720.0));
    assert_eq!(g1.counts, vec![(1, s1.count("g1")), (2, s2.count("g1"))]);
    let agg = rows.last().unwrap();
    assert_eq!(agg.label, "non-S6");
    let expect = (s2.non_s6_total as f64 / s1.non_s6_total as f64).ln() / 2f64.ln();
    assert!((agg.slope.unwrap() - expect).abs() < 1e-12);
}
