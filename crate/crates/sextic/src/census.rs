//! Bounded-height enumeration of primitive sextic coefficient points and aggregation of
//! per-group counts, moduli classes and density comparisons.
//!
//! Points are primitive integer 7-tuples (gcd 1, first nonzero entry positive) with
//! max-norm at most H, listed in lexicographic order of (a0, ..., a6). The stream index of
//! a point is its position in that order; chunks are contiguous index ranges.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{self, ClassifyOptions};
use crate::groups;
use crate::invariants::{self, AbsoluteTriple};
use crate::polycore::{self, BinaryForm, IntPoly};
use crate::{Error, Result};

pub const DEFAULT_CHUNK_SIZE: u64 = 100_000;

/// Good primes tried when certifying the full group from factor degrees alone.
const FAST_PRIMES: usize = 24;

/// Points counted in the published census at height 6, and its moduli-point count.
pub const STATED_TOTAL_H6: u64 = 53_972;
pub const STATED_MODULI_H6: u64 = 25_853;
/// Rational points of height at most 6 as stated alongside the census.
pub const STATED_POINTS_H6: u64 = 3_280_326;

fn is_canonical(t: &[i64]) -> bool {
    match t.iter().find(|&&x| x != 0) {
        Some(&x) => x > 0,
        None => false,
    }
}

fn is_primitive(t: &[i64]) -> bool {
    let mut g = 0i64;
    for &x in t {
        g = g.gcd(&x);
        if g == 1 {
            return true;
        }
    }
    g == 1
}

/// Lexicographic stream of primitive, sign-canonical tuples of a fixed length.
#[derive(Clone, Debug)]
pub struct Enumerator {
    h: i64,
    cur: Vec<i64>,
    done: bool,
    index: u64,
}

impl Enumerator {
    /// Tuples of length `len` (7 for sextics, 2 for the projective line).
    pub fn new(h: u64, len: usize) -> Self {
        assert!(h >= 1 && len >= 1);
        let h = h as i64;
        let mut e = Enumerator { h, cur: vec![-h; len], done: false, index: 0 };
        if !e.accept() {
            e.step();
        }
        e
    }

    fn accept(&self) -> bool {
        is_canonical(&self.cur) && is_primitive(&self.cur)
    }

    fn advance_raw(&mut self) -> bool {
        for i in (0..self.cur.len()).rev() {
            if self.cur[i] < self.h {
                self.cur[i] += 1;
                return true;
            }
            self.cur[i] = -self.h;
        }
        false
    }

    fn step(&mut self) {
        loop {
            if !self.advance_raw() {
                self.done = true;
                return;
            }
            if self.accept() {
                return;
            }
        }
    }

    /// Index of the next tuple to be yielded.
    pub fn position(&self) -> u64 {
        self.index
    }

    /// Advance past `n` tuples without materializing them.
    pub fn skip_points(&mut self, n: u64) {
        for _ in 0..n {
            if self.done {
                return;
            }
            self.step();
            self.index += 1;
        }
    }
}

impl Iterator for Enumerator {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.step();
        self.index += 1;
        Some(out)
    }
}

/// All primitive sextic points of height at most `h`, from stream index `start`.
pub fn enumerate(h: u64, start: u64) -> impl Iterator<Item = BinaryForm> {
    let mut e = Enumerator::new(h, 7);
    e.skip_points(start);
    e.map(|t| BinaryForm::from_i64(&t))
}

fn mobius_table(n: u64) -> Vec<i64> {
    let n = n as usize;
    let mut mu = vec![1i64; n + 1];
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for m in (p..=n).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        let sq = p * p;
        for m in (sq..=n).step_by(sq) {
            mu[m] = 0;
        }
    }
    mu
}

/// Number of primitive tuples of length `len` up to sign with max-norm at most `h`:
/// (sum_d mu(d) ((2 floor(h/d) + 1)^len - 1)) / 2.
pub fn mobius_count(h: u64, len: u32) -> u64 {
    let mu = mobius_table(h);
    let mut s: i128 = 0;
    for d in 1..=h {
        let m = (2 * (h / d) + 1) as i128;
        s += mu[d as usize] as i128 * (m.pow(len) - 1);
    }
    (s / 2) as u64
}

/// Whether the record set includes every enumerated point or only the proper-group ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecordMode {
    None,
    NonS6,
    All,
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub height: u64,
    pub chunk_size: u64,
    /// Only points with a6 = +-1.
    pub monic_only: bool,
    /// Only records carrying this label are written (counts are unaffected).
    pub label_filter: Option<String>,
    pub records: RecordMode,
    /// Embed the full certificate in each written record.
    pub certificates: bool,
    pub jobs: usize,
    pub classify: ClassifyOptions,
    /// Retries for a chunk whose worker panicked or failed.
    pub retries: usize,
}

impl CensusConfig {
    pub fn new(height: u64) -> Self {
        CensusConfig {
            height,
            chunk_size: DEFAULT_CHUNK_SIZE,
            monic_only: false,
            label_filter: None,
            records: RecordMode::NonS6,
            certificates: false,
            jobs: 1,
            classify: ClassifyOptions::default(),
            retries: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// Stream index of the point.
    pub index: u64,
    pub coeffs: Vec<i64>,
    pub height: u64,
    pub irreducible: bool,
    pub label: Option<String>,
    pub gap_id: Option<[u32; 2]>,
    pub disc: Option<String>,
    pub real_roots: Option<usize>,
    pub absolute: Option<AbsoluteTriple>,
    /// Either the embedded certificate or a pointer "H<height>#<index>" from which it is
    /// regenerated by classifying the coefficients again.
    pub certificate: serde_json::Value,
}

/// Per-chunk tallies, persisted next to the chunk's record file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChunkTally {
    pub chunk: u64,
    pub points: u64,
    pub considered: u64,
    pub reducible: u64,
    /// Counts for g1..g15 and S6.
    pub counts: Vec<u64>,
    /// Distinct absolute triples (as "t1|t2|t3") of proper-group records, per label g1..g15.
    pub triples: Vec<Vec<String>>,
    /// Proper-group records whose form had a vanishing discriminant.
    pub no_triple: u64,
    pub spot_checks: u64,
    pub spot_failures: Vec<u64>,
}

impl ChunkTally {
    fn empty(chunk: u64) -> Self {
        ChunkTally { chunk, counts: vec![0; 16], triples: vec![Vec::new(); 15], ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelRow {
    pub label: String,
    pub gap_id: [u32; 2],
    pub order: usize,
    pub count: u64,
    pub moduli_classes: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub height: u64,
    pub monic_only: bool,
    pub points: u64,
    /// Points in the population: all of them, or those with |a6| = 1 in monic-only mode.
    /// Points with a6 = 0 have degree below six and count as reducible.
    pub considered: u64,
    pub reducible: u64,
    pub irreducible: u64,
    /// Rows g1..g15 then S6.
    pub rows: Vec<LabelRow>,
    /// Irreducible points whose group is not S6.
    pub non_s6_total: u64,
    /// Distinct absolute triples over all proper-group records.
    pub moduli_classes: u64,
    pub spot_checks: u64,
    pub spot_failures: Vec<u64>,
}

impl CensusSummary {
    pub fn count(&self, label: &str) -> u64 {
        self.rows.iter().find(|r| r.label == label).map_or(0, |r| r.count)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,gap_id,order,count,moduli_classes\n");
        for r in &self.rows {
            let m = r.moduli_classes.map(|m| m.to_string()).unwrap_or_default();
            s += &format!("{},\"[{},{}]\",{},{},{}\n", r.label, r.gap_id[0], r.gap_id[1], r.order, r.count, m);
        }
        s += &format!("total,,,{},{}\n", self.non_s6_total, self.moduli_classes);
        s
    }

    fn from_tallies(cfg: &CensusConfig, tallies: &[ChunkTally]) -> Self {
        let mut counts = vec![0u64; 16];
        let mut sets: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); 15];
        let (mut points, mut considered, mut reducible, mut spot_checks) = (0, 0, 0, 0);
        let mut spot_failures = Vec::new();
        for t in tallies {
            points += t.points;
            considered += t.considered;
            reducible += t.reducible;
            spot_checks += t.spot_checks;
            spot_failures.extend(&t.spot_failures);
            for (c, x) in counts.iter_mut().zip(&t.counts) {
                *c += x;
            }
            for (s, v) in sets.iter_mut().zip(&t.triples) {
                s.extend(v.iter().map(String::as_str));
            }
        }
        let all: BTreeSet<&str> = sets.iter().flatten().copied().collect();
        let rows = groups::table()
            .iter()
            .map(|g| LabelRow {
                label: g.label.to_string(),
                gap_id: [g.gap_id.0, g.gap_id.1],
                order: g.order(),
                count: counts[g.index - 1],
                moduli_classes: (g.index <= 15).then(|| sets[g.index - 1].len() as u64),
            })
            .collect();
        let non_s6_total = counts[..15].iter().sum();
        CensusSummary {
            height: cfg.height,
            monic_only: cfg.monic_only,
            points,
            considered,
            reducible,
            irreducible: considered - reducible,
            rows,
            non_s6_total,
            moduli_classes: all.len() as u64,
            spot_checks,
            spot_failures,
        }
    }
}

fn triple_key(t: &AbsoluteTriple) -> String {
    use invariants::rational_str::format;
    format!("{}|{}|{}", format(&t.t1), format(&t.t2), format(&t.t3))
}

struct Classified {
    label: String,
    cert: classifier::ClassificationCertificate,
    real_roots: usize,
}

fn classify_point(f: &IntPoly, opts: &ClassifyOptions) -> Result<Option<Classified>> {
    let ev = match classifier::gather_evidence(f) {
        Ok(ev) => ev,
        Err(Error::Reducible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (label, cert) = classifier::classify_evidence(f, &ev, opts)?;
    Ok(Some(Classified { label, cert, real_roots: ev.real_roots }))
}

/// Deterministic 1% sample of stream indices for certificate soundness checks.
fn spot_checked(index: u64) -> bool {
    index.wrapping_mul(0x9e37_79b9_7f4a_7c15) % 100 == 0
}

/// Classify one chunk, writing its records through `sink`.
pub fn process_chunk(
    cfg: &CensusConfig,
    chunk: u64,
    mut sink: impl FnMut(&CensusRecord) -> Result<()>,
) -> Result<ChunkTally> {
    let start = chunk * cfg.chunk_size;
    let mut tally = ChunkTally::empty(chunk);
    let mut sets: Vec<HashSet<String>> = vec![HashSet::new(); 15];
    let mut e = Enumerator::new(cfg.height, 7);
    e.skip_points(start);
    for (offset, t) in e.take(cfg.chunk_size as usize).enumerate() {
        let index = start + offset as u64;
        tally.points += 1;
        if t[6] == 0 || (cfg.monic_only && t[6].abs() != 1) {
            if t[6] == 0 && !cfg.monic_only {
                tally.considered += 1;
                tally.reducible += 1;
                emit_reducible(cfg, index, &t, &mut sink)?;
            }
            continue;
        }
        tally.considered += 1;
        let f = IntPoly::from_i64(&t);
        let full_record = cfg.records == RecordMode::All
            && cfg.label_filter.as_deref().map_or(true, |l| l.eq_ignore_ascii_case("S6"));
        if !full_record && classifier::certify_full_symmetric(&f, FAST_PRIMES)?.is_some() {
            tally.counts[15] += 1;
            if spot_checked(index) {
                tally.spot_checks += 1;
                let ok = matches!(classify_point(&f, &cfg.classify)?,
                    Some(c) if c.label == "S6" && classifier::certificate_is_sound(&c.cert));
                if !ok {
                    tally.spot_failures.push(index);
                }
            }
            continue;
        }
        let Some(c) = classify_point(&f, &cfg.classify)? else {
            tally.reducible += 1;
            emit_reducible(cfg, index, &t, &mut sink)?;
            continue;
        };
        let g = groups::by_label(&c.label).ok_or_else(|| Error::Internal(format!("unknown label {}", c.label)))?;
        tally.counts[g.index - 1] += 1;
        if spot_checked(index) {
            tally.spot_checks += 1;
            if !classifier::certificate_is_sound(&c.cert) {
                tally.spot_failures.push(index);
            }
        }
        let proper = g.index <= 15;
        let write = match cfg.records {
            RecordMode::None => false,
            RecordMode::NonS6 => proper,
            RecordMode::All => true,
        } && cfg.label_filter.as_deref().map_or(true, |l| l.eq_ignore_ascii_case(&c.label));
        let absolute = if proper || write {
            let form = BinaryForm::from_i64(&t);
            match invariants::absolute_of(&form) {
                Ok(a) => Some(a),
                Err(Error::NotSquarefree(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        if proper {
            match &absolute {
                Some(a) => {
                    sets[g.index - 1].insert(triple_key(a));
                }
                None => tally.no_triple += 1,
            }
        }
        if write {
            let certificate = if cfg.certificates {
                serde_json::to_value(&c.cert).map_err(|e| Error::Internal(e.to_string()))?
            } else {
                serde_json::Value::String(format!("H{}#{}", cfg.height, index))
            };
            sink(&CensusRecord {
                index,
                height: t.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
                coeffs: t,
                irreducible: true,
                label: Some(c.label),
                gap_id: Some([g.gap_id.0, g.gap_id.1]),
                disc: Some(polycore::discriminant(&f)?.to_string()),
                real_roots: Some(c.real_roots),
                absolute,
                certificate,
            })?;
        }
    }
    tally.triples = sets
        .into_iter()
        .map(|s| {
            let mut v: Vec<String> = s.into_iter().collect();
            v.sort();
            v
        })
        .collect();
    Ok(tally)
}

fn emit_reducible(
    cfg: &CensusConfig,
    index: u64,
    t: &[i64],
    sink: &mut impl FnMut(&CensusRecord) -> Result<()>,
) -> Result<()> {
    if cfg.records != RecordMode::All || cfg.label_filter.is_some() {
        return Ok(());
    }
    sink(&CensusRecord {
        index,
        coeffs: t.to_vec(),
        height: t.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
        irreducible: false,
        label: None,
        gap_id: None,
        disc: None,
        real_roots: None,
        absolute: None,
        certificate: serde_json::Value::Null,
    })
}

/// Number of chunks covering the stream at the configured height.
pub fn chunk_count(cfg: &CensusConfig) -> u64 {
    mobius_count(cfg.height, 7).div_ceil(cfg.chunk_size)
}

/// Run a census in memory (no files), collecting written records.
pub fn run_census_in_memory(cfg: &CensusConfig) -> Result<(CensusSummary, Vec<CensusRecord>)> {
    let chunks: Vec<u64> = (0..chunk_count(cfg)).collect();
    let results: Vec<Result<(ChunkTally, Vec<CensusRecord>)>> = with_pool(cfg.jobs, || {
        chunks
            .par_iter()
            .map(|&k| {
                let mut recs = Vec::new();
                let t = process_chunk(cfg, k, |r| {
                    recs.push(r.clone());
                    Ok(())
                })?;
                Ok((t, recs))
            })
            .collect()
    })?;
    let mut tallies = Vec::new();
    let mut records = Vec::new();
    for r in results {
        let (t, recs) = r?;
        tallies.push(t);
        records.extend(recs);
    }
    Ok((CensusSummary::from_tallies(cfg, &tallies), records))
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(pool.install(f))
}

/// Plain-text key=value checkpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub height: u64,
    pub chunk_size: u64,
    pub monic_only: bool,
    pub completed_chunks: BTreeSet<u64>,
}

impl Checkpoint {
    pub fn render(&self) -> String {
        let done: Vec<String> = self.completed_chunks.iter().map(u64::to_string).collect();
        format!(
            "height={}\nchunk_size={}\nmonic_only={}\ncompleted_chunks={}\n",
            self.height,
            self.chunk_size,
            self.monic_only,
            done.join(",")
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("checkpoint line without '=': {line}")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let num = |k: &str| -> Result<u64> {
            kv.get(k)
                .ok_or_else(|| Error::Parse(format!("checkpoint is missing {k}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("checkpoint field {k} is not a number")))
        };
        let completed_chunks = match kv.get("completed_chunks").map(String::as_str) {
            None | Some("") => BTreeSet::new(),
            Some(v) => v
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad chunk id {x}"))))
                .collect::<Result<_>>()?,
        };
        Ok(Checkpoint {
            height: num("height")?,
            chunk_size: num("chunk_size")?,
            monic_only: kv.get("monic_only").is_some_and(|v| v == "true"),
            completed_chunks,
        })
    }
}

fn chunk_paths(dir: &Path, k: u64) -> (PathBuf, PathBuf) {
    (dir.join(format!("chunk_{k:06}.jsonl")), dir.join(format!("chunk_{k:06}.tally.json")))
}

fn write_atomic(path: &Path, data: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, data)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn process_chunk_to_disk(cfg: &CensusConfig, dir: &Path, k: u64) -> Result<ChunkTally> {
    let (rec_path, tally_path) = chunk_paths(dir, k);
    let mut last = Error::Internal("chunk never ran".into());
    for _ in 0..=cfg.retries {
        let attempt = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| -> Result<ChunkTally> {
            let mut w = BufWriter::new(File::create(&rec_path)?);
            let t = process_chunk(cfg, k, |r| {
                let line = serde_json::to_string(r).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(w, "{line}")?;
                Ok(())
            })?;
            w.flush()?;
            Ok(t)
        }));
        match attempt {
            Ok(Ok(t)) => {
                let json = serde_json::to_string(&t).map_err(|e| Error::Internal(e.to_string()))?;
                write_atomic(&tally_path, &json)?;
                return Ok(t);
            }
            Ok(Err(e)) => last = e,
            Err(_) => last = Error::Internal(format!("worker panicked on chunk {k}")),
        }
    }
    Err(last)
}

/// Files written by a census run.
pub const SUMMARY_CSV: &str = "summary.csv";
pub const SUMMARY_JSON: &str = "summary.json";
pub const CHECKPOINT: &str = "checkpoint.txt";
pub const RECORDS: &str = "records.jsonl";

/// Run (or resume) a census into `dir`. Chunks are processed in parallel; each writes its own
/// record file and tally, then the checkpoint is updated. The summary files and the
/// concatenated record file are written only once every chunk is complete.
pub fn run_census(cfg: &CensusConfig, dir: &Path, resume: bool) -> Result<CensusSummary> {
    fs::create_dir_all(dir)?;
    let cp_path = dir.join(CHECKPOINT);
    let mut cp = Checkpoint {
        height: cfg.height,
        chunk_size: cfg.chunk_size,
        monic_only: cfg.monic_only,
        completed_chunks: BTreeSet::new(),
    };
    if resume && cp_path.exists() {
        let old = Checkpoint::parse(&fs::read_to_string(&cp_path)?)?;
        if (old.height, old.chunk_size, old.monic_only) != (cp.height, cp.chunk_size, cp.monic_only) {
            return Err(Error::Config(format!(
                "checkpoint in {} was written for a different configuration",
                dir.display()
            )));
        }
        cp.completed_chunks = old.completed_chunks;
    }
    write_atomic(&cp_path, &cp.render())?;

    let n = chunk_count(cfg);
    let todo: Vec<u64> = (0..n).filter(|k| !cp.completed_chunks.contains(k)).collect();
    let cp = std::sync::Mutex::new(cp);
    let failures: Vec<Error> = with_pool(cfg.jobs, || {
        todo.par_iter()
            .filter_map(|&k| match process_chunk_to_disk(cfg, dir, k) {
                Ok(_) => {
                    let mut c = cp.lock().expect("checkpoint lock");
                    c.completed_chunks.insert(k);
                    write_atomic(&cp_path, &c.render()).err()
                }
                Err(e) => Some(e),
            })
            .collect()
    })?;
    if let Some(e) = failures.into_iter().next() {
        return Err(e);
    }

    let mut tallies = Vec::with_capacity(n as usize);
    let mut out = BufWriter::new(
        OpenOptions::new().create(true).write(true).truncate(true).open(dir.join(RECORDS))?,
    );
    for k in 0..n {
        let (rec_path, tally_path) = chunk_paths(dir, k);
        let t: ChunkTally = serde_json::from_str(&fs::read_to_string(&tally_path)?)
            .map_err(|e| Error::Internal(format!("corrupt tally for chunk {k}: {e}")))?;
        tallies.push(t);
        for line in BufReader::new(File::open(&rec_path)?).lines() {
            writeln!(out, "{}", line?)?;
        }
    }
    out.flush()?;
    let summary = CensusSummary::from_tallies(cfg, &tallies);
    fs::write(dir.join(SUMMARY_CSV), summary.to_csv())?;
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(dir.join(SUMMARY_JSON), json)?;
    Ok(summary)
}

/// Read back the records of a completed census.
pub fn read_records(dir: &Path) -> Result<Vec<CensusRecord>> {
    let mut v = Vec::new();
    for line in BufReader::new(File::open(dir.join(RECORDS))?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        v.push(serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?);
    }
    Ok(v)
}

/// One row of the comparison between a census and the published counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrataRow {
    pub label: String,
    pub published: Option<u64>,
    pub observed: u64,
    /// observed - published.
    pub delta: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrataDiff {
    pub height: u64,
    /// False when no published column exists for this height.
    pub verifiable: bool,
    pub rows: Vec<ErrataRow>,
    pub published_column_sum: Option<u64>,
    /// Total stated separately from the column, when there is one.
    pub published_stated_total: Option<u64>,
    pub observed_total: u64,
    pub published_moduli: Option<u64>,
    pub observed_moduli: u64,
    pub notes: Vec<String>,
}

impl ErrataDiff {
    pub fn mismatches(&self) -> Vec<&ErrataRow> {
        self.rows.iter().filter(|r| r.delta.is_some_and(|d| d != 0)).collect()
    }

    pub fn matches(&self) -> bool {
        self.verifiable && self.mismatches().is_empty()
    }
}

/// Compare per-label counts with the published columns (heights 4 and 6).
pub fn errata_diff(summary: &CensusSummary) -> ErrataDiff {
    let column: Option<&[u64; 15]> = match summary.height {
        4 => Some(&groups::TABULATED_COUNTS_H4),
        6 => Some(&groups::TABULATED_COUNTS_H6),
        _ => None,
    };
    let rows: Vec<ErrataRow> = summary.rows[..15]
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let published = column.map(|c| c[i]);
            ErrataRow {
                label: r.label.clone(),
                published,
                observed: r.count,
                delta: published.map(|p| r.count as i64 - p as i64),
            }
        })
        .collect();
    let mut notes = Vec::new();
    if column.is_none() {
        notes.push(format!("no published column for height {}; counts are unverifiable", summary.height));
    }
    if summary.monic_only {
        notes.push("monic-only population; the published columns include non-monic points".into());
    }
    let published_column_sum = column.map(|c| c.iter().sum());
    let (stated, moduli) = if summary.height == 6 {
        notes.push(format!(
            "published column sums to {} while the stated total is {}",
            published_column_sum.unwrap_or(0),
            STATED_TOTAL_H6
        ));
        (Some(STATED_TOTAL_H6), Some(STATED_MODULI_H6))
    } else {
        (published_column_sum, None)
    };
    if !summary.spot_failures.is_empty() {
        notes.push(format!("{} certificates failed the soundness spot-check", summary.spot_failures.len()));
    }
    ErrataDiff {
        height: summary.height,
        verifiable: column.is_some(),
        rows,
        published_column_sum,
        published_stated_total: stated,
        observed_total: summary.non_s6_total,
        published_moduli: moduli,
        observed_moduli: summary.moduli_classes,
        notes,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub label: String,
    /// delta_G = 1/[S6:G]; None for the aggregate row.
    pub delta: Option<f64>,
    /// Heuristic exponent n - 1 + delta_G (n - 2 + sqrt 2 for the aggregate).
    pub reference_exponent: f64,
    /// (H, count) pairs used.
    pub counts: Vec<(u64, u64)>,
    /// Least-squares slope of log count against log H over nonzero counts.
    pub slope: Option<f64>,
}

/// Empirical growth exponents per group across census heights.
pub fn density_report(summaries: &[CensusSummary]) -> Result<Vec<DensityRow>> {
    let mut hs: Vec<&CensusSummary> = summaries.iter().collect();
    hs.sort_by_key(|s| s.height);
    hs.dedup_by_key(|s| s.height);
    if hs.len() < 2 {
        return Err(Error::Degenerate("density report needs at least two distinct heights".into()));
    }
    let slope = |pts: &[(u64, u64)]| -> Option<f64> {
        let xy: Vec<(f64, f64)> =
            pts.iter().filter(|p| p.1 > 0).map(|&(h, c)| ((h as f64).ln(), (c as f64).ln())).collect();
        if xy.len() < 2 {
            return None;
        }
        let n = xy.len() as f64;
        let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
        let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    };
    let mut out: Vec<DensityRow> = groups::table()
        .iter()
        .map(|g| {
            let delta = g.order() as f64 / 720.0;
            let counts: Vec<(u64, u64)> = hs.iter().map(|s| (s.height, s.count(g.label))).collect();
            DensityRow {
                label: g.label.to_string(),
                delta: Some(delta),
                reference_exponent: 5.0 + delta,
                slope: slope(&counts),
                counts,
            }
        })
        .collect();
    let counts: Vec<(u64, u64)> = hs.iter().map(|s| (s.height, s.non_s6_total)).collect();
    out.push(DensityRow {
        label: "non-S6".into(),
        delta: None,
        reference_exponent: 4.0 + std::f64::consts::SQRT_2,
        slope: slope(&counts),
        counts,
    });
    Ok(out)
}

/// Canonical-sign representative of a coefficient tuple.
pub fn canonical_sign(t: &[i64]) -> Vec<i64> {
    if is_canonical(t) {
        t.to_vec()
    } else {
        t.iter().map(|x| -x).collect()
    }
}

/// Height of a sextic point as a machine integer.
pub fn point_height(t: &[i64]) -> u64 {
    t.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}
