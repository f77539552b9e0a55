//! `sextic`: classify, factor and census integer sextics from the command line.
//!
//! Exit status: 0 success, 1 domain error (reducible, degenerate), 2 usage error,
//! 3 internal or precision failure.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sextic::census::{self, CensusConfig, CensusSummary, RecordMode};
use sextic::classifier::{self, ClassifyOptions, PrimeBudget};
use sextic::neurosym::{self, MaskBudget, MlpParams, TrainConfig};
use sextic::resolvents::{self, InvariantPoly, ResolventOptions};
use sextic::{ffactor, groups, invariants, polycore, BinaryForm, Error, IntPoly, Result};

#[derive(Parser, Debug)]
#[command(name = "sextic", version, about = "Galois groups of integer sextic polynomials")]
struct Cli {
    /// Emit a single JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficients are given highest degree first.
    #[arg(long, global = true)]
    desc: bool,
    /// Plain-text key=value file with defaults (prime_bound, stable_after, max_precision,
    /// chunk_size, jobs, mask_primes, epochs, batch_size, learning_rate, seed).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for the census.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Determine the Galois group of an irreducible sextic.
    Classify {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        /// Largest prime sampled for cycle types.
        #[arg(long)]
        primes: Option<u64>,
        /// Include the full evidence certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Factor over the integers, or modulo a prime.
    Factor {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
    /// Igusa invariants and absolute invariants of the binary sextic form.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Resolvent of the monic associate for an invariant polynomial.
    Resolvent {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        /// A catalog name (matching, triple-split, pair-sum, pgl25-orbit, 2a4-orbit) or an
        /// explicit polynomial such as "x1*x2+x3*x4+x5*x6".
        #[arg(long, default_value = "matching")]
        invariant: String,
        /// Ambient group label; cosets of the stabilizer inside it index the roots.
        #[arg(long, default_value = "S6")]
        group: String,
    },
    /// Enumerate and classify every primitive sextic up to a height.
    Census {
        #[arg(long)]
        height: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        monic_only: bool,
        /// Only write records with this label.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = Records::NonS6)]
        records: Records,
        #[arg(long)]
        certificates: bool,
        #[arg(long)]
        chunk_size: Option<u64>,
    },
    /// Growth exponents across completed census directories.
    Density { dirs: Vec<PathBuf> },
    /// Train the masked classifier on census records (JSON lines with coeffs and label).
    Train {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long, default_value = "params.bin")]
        out: PathBuf,
        #[arg(long, default_value = "metrics.json")]
        metrics: PathBuf,
        /// Coefficient features only, no symbolic evidence.
        #[arg(long)]
        baseline: bool,
        #[arg(long)]
        include_s6: bool,
    },
    /// Evaluate trained parameters on a record file.
    Eval {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        include_s6: bool,
    },
    /// Masked prediction for one polynomial.
    Predict {
        #[arg(long)]
        params: PathBuf,
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// The sixteen transitive groups of degree 6.
    Groups {
        /// Full machine-readable export including generators and element counts.
        #[arg(long)]
        export: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Records {
    None,
    NonS6,
    All,
}

struct Settings(BTreeMap<String, String>);

const CONFIG_KEYS: &[&str] = &[
    "prime_bound",
    "stable_after",
    "max_precision",
    "chunk_size",
    "jobs",
    "mask_primes",
    "epochs",
    "batch_size",
    "learning_rate",
    "seed",
    "out",
];

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut m = BTreeMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            for (n, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
                let k = k.trim();
                if !CONFIG_KEYS.contains(&k) {
                    return Err(Error::Config(format!("line {}: unknown key {k}", n + 1)));
                }
                m.insert(k.to_string(), v.trim().to_string());
            }
        }
        Ok(Settings(m))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::Config(format!("bad value for {key}: {v}"))))
            .transpose()
    }

    fn classify_options(&self, prime_bound: Option<u64>) -> Result<ClassifyOptions> {
        let mut o = ClassifyOptions::default();
        let mut b = PrimeBudget::default();
        if let Some(v) = prime_bound.or(self.get("prime_bound")?) {
            b.bound = v;
        }
        if let Some(v) = self.get("stable_after")? {
            b.stable_after = v;
        }
        o.budget = b;
        if let Some(v) = self.get("max_precision")? {
            o.max_precision = v;
        }
        Ok(o)
    }

    fn mask_budget(&self) -> Result<MaskBudget> {
        let mut b = MaskBudget::default();
        if let Some(v) = self.get("mask_primes")? {
            b.primes = v;
        }
        Ok(b)
    }
}

/// println! that exits quietly when the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

fn parse_poly(s: &str, desc: bool) -> Result<IntPoly> {
    let f = polycore::parse_coeffs(s)?;
    if !desc {
        return Ok(f);
    }
    let mut c: Vec<_> = s.split(',').map(|t| t.trim().to_string()).collect();
    c.reverse();
    polycore::parse_coeffs(&c.join(","))
}

fn parse_sextic(s: &str, desc: bool) -> Result<IntPoly> {
    let n = s.split(',').count();
    if n != 7 {
        return Err(Error::Parse(format!("expected 7 coefficients, got {n}")));
    }
    parse_poly(s, desc)
}

fn fp_string(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::Internal(e.to_string()))
}

fn cmd_classify(cli: &Cli, set: &Settings, coeffs: &str, primes: Option<u64>, certificate: bool) -> Result<()> {
    let f = parse_sextic(coeffs, cli.desc)?;
    let opts = set.classify_options(primes)?;
    let (label, cert) = classifier::classify_with(&f, &opts)?;
    let g = groups::by_label(&label).ok_or_else(|| Error::Internal(format!("unknown label {label}")))?;
    if cli.json {
        let mut v = json!({
            "input": polycore::format_coeffs(f.coeffs()),
            "label": label,
            "name": g.name,
            "gap_id": [g.gap_id.0, g.gap_id.1],
            "order": g.order(),
        });
        if certificate {
            v["certificate"] = to_value(&cert)?;
        }
        print_json(&v);
    } else {
        out!("{} {} gap [{},{}] order {}", label, g.name, g.gap_id.0, g.gap_id.1, g.order());
        if certificate {
            out!("{}", cert.to_json());
        }
    }
    Ok(())
}

fn cmd_factor(cli: &Cli, coeffs: &str, modulus: Option<u64>) -> Result<()> {
    let f = parse_poly(coeffs, cli.desc)?;
    match modulus {
        Some(p) => {
            let fac = ffactor::factor_mod_p(&f, p)?;
            if cli.json {
                let fs: Vec<Value> =
                    fac.factors.iter().map(|(g, m)| json!({"coeffs": fp_string(g), "multiplicity": m})).collect();
                print_json(&json!({"p": p, "lead": fac.lead, "factors": fs, "degrees": fac.degrees()}));
            } else {
                out!("mod {p}: lead {}", fac.lead);
                for (g, m) in &fac.factors {
                    out!("  ({})^{m}", fp_string(g));
                }
                out!("degrees {:?}", fac.degrees());
            }
        }
        None => {
            let fac = ffactor::factor_over_z(&f)?;
            if cli.json {
                let fs: Vec<Value> = fac
                    .factors
                    .iter()
                    .map(|(g, m)| json!({"coeffs": polycore::format_coeffs(g.coeffs()), "multiplicity": m}))
                    .collect();
                print_json(&json!({"content": fac.content.to_string(), "factors": fs, "degrees": fac.degrees()}));
            } else {
                out!("content {}", fac.content);
                for (g, m) in &fac.factors {
                    out!("  ({g})^{m}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_invariants(cli: &Cli, coeffs: &str) -> Result<()> {
    let f = parse_sextic(coeffs, cli.desc)?;
    let form = BinaryForm::new(f.coeffs().to_vec());
    let j = invariants::igusa(&form)?;
    let t = invariants::absolute(&j);
    if cli.json {
        let mut v = json!({"form": polycore::format_coeffs(form.coeffs()), "igusa": to_value(&j)?});
        v["absolute"] = match &t {
            Ok(t) => to_value(t)?,
            Err(_) => Value::Null,
        };
        print_json(&v);
    } else {
        out!("{j}");
        match t {
            Ok(t) => out!("{t}"),
            Err(e) => out!("absolute invariants undefined: {e}"),
        }
    }
    Ok(())
}

fn cmd_resolvent(cli: &Cli, set: &Settings, coeffs: &str, inv: &str, group: &str) -> Result<()> {
    let f = parse_sextic(coeffs, cli.desc)?;
    let g = polycore::monic_associate(&f)?;
    let poly = match resolvents::default_invariants().iter().find(|n| n.name == inv) {
        Some(n) => n.poly.clone(),
        None => InvariantPoly::parse(inv)?,
    };
    let ambient = groups::by_label(group).ok_or_else(|| Error::Parse(format!("unknown group {group}")))?;
    let mut opts = ResolventOptions::default();
    if let Some(v) = set.get("max_precision")? {
        opts.max_precision = v;
    }
    let r = resolvents::resolvent_with(&poly, &ambient.elements, &g, &opts)?;
    if cli.json {
        print_json(&json!({
            "monic": polycore::format_coeffs(g.coeffs()),
            "invariant": poly.to_string(),
            "index": r.index,
            "resolvent": polycore::format_coeffs(r.resolvent.coeffs()),
            "squarefree": r.squarefree,
            "factor_degrees": r.factor_degrees.map(|d| d.to_string()),
            "precision": r.precision,
        }));
    } else {
        out!("invariant {poly} index {}", r.index);
        out!("resolvent {}", polycore::format_coeffs(r.resolvent.coeffs()));
        match r.factor_degrees {
            Some(d) => out!("squarefree, factor degrees {d}"),
            None => out!("not squarefree"),
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_census(
    cli: &Cli,
    set: &Settings,
    height: u64,
    out: Option<PathBuf>,
    resume: bool,
    monic_only: bool,
    label: Option<String>,
    records: Records,
    certificates: bool,
    chunk_size: Option<u64>,
) -> Result<()> {
    if height == 0 {
        return Err(Error::Config("height must be at least 1".into()));
    }
    if let Some(l) = &label {
        if groups::by_label(l).is_none() {
            return Err(Error::Config(format!("unknown label {l}")));
        }
    }
    let mut cfg = CensusConfig::new(height);
    cfg.monic_only = monic_only;
    cfg.label_filter = label;
    cfg.records = match records {
        Records::None => RecordMode::None,
        Records::NonS6 => RecordMode::NonS6,
        Records::All => RecordMode::All,
    };
    cfg.certificates = certificates;
    if let Some(c) = chunk_size.or(set.get("chunk_size")?) {
        if c == 0 {
            return Err(Error::Config("chunk size must be positive".into()));
        }
        cfg.chunk_size = c;
    }
    cfg.jobs = cli.jobs.or(set.get("jobs")?).unwrap_or(1);
    cfg.classify = set.classify_options(None)?;
    let dir = out
        .or(set.get::<String>("out")?.map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("census_h{height}")));
    eprintln!("census to height {height} in {} ({} chunks)", dir.display(), census::chunk_count(&cfg));
    let summary = census::run_census(&cfg, &dir, resume)?;
    let diff = census::errata_diff(&summary);
    std::fs::write(dir.join("errata.json"), serde_json::to_string_pretty(&diff).expect("serializable"))?;
    if cli.json {
        print_json(&json!({"summary": to_value(&summary)?, "errata": to_value(&diff)?}));
    } else {
        print!("{}", summary.to_csv());
        eprintln!(
            "points {} considered {} reducible {} irreducible {} non-S6 {} moduli classes {}",
            summary.points,
            summary.considered,
            summary.reducible,
            summary.irreducible,
            summary.non_s6_total,
            summary.moduli_classes
        );
        if !diff.verifiable {
            eprintln!("no published counts at height {height}; unverifiable");
        }
        for r in diff.mismatches() {
            eprintln!("errata {}: published {:?} observed {}", r.label, r.published, r.observed);
        }
        for n in &diff.notes {
            eprintln!("note: {n}");
        }
    }
    Ok(())
}

fn cmd_density(cli: &Cli, dirs: &[PathBuf]) -> Result<()> {
    let summaries: Vec<CensusSummary> = dirs
        .iter()
        .map(|d| {
            let text = std::fs::read_to_string(d.join(census::SUMMARY_JSON))?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", d.display())))
        })
        .collect::<Result<_>>()?;
    let rows = census::density_report(&summaries)?;
    if cli.json {
        print_json(&to_value(&rows)?);
    } else {
        out!("label,delta,reference_exponent,slope,counts");
        for r in rows {
            let counts: Vec<String> = r.counts.iter().map(|(h, c)| format!("{h}:{c}")).collect();
            out!(
                "{},{},{:.6},{},{}",
                r.label,
                r.delta.map(|d| format!("{d:.6}")).unwrap_or_default(),
                r.reference_exponent,
                r.slope.map(|s| format!("{s:.6}")).unwrap_or_default(),
                counts.join(" ")
            );
        }
    }
    Ok(())
}

/// (coeffs, label) pairs from a JSON-lines file; unlabeled lines are skipped.
fn read_labeled(path: &Path) -> Result<Vec<(Vec<i64>, String)>> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (n, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value =
            serde_json::from_str(&line).map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), n + 1)))?;
        let coeffs: Vec<i64> = serde_json::from_value(v["coeffs"].clone())
            .map_err(|_| Error::Parse(format!("{}:{}: missing coeffs", path.display(), n + 1)))?;
        if let Some(l) = v["label"].as_str() {
            out.push((coeffs, l.to_string()));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    cli: &Cli,
    set: &Settings,
    data: &Path,
    seed: Option<u64>,
    epochs: Option<usize>,
    out: &Path,
    metrics_path: &Path,
    baseline: bool,
    include_s6: bool,
) -> Result<()> {
    let items = read_labeled(data)?;
    let budget = set.mask_budget()?;
    let samples = neurosym::build_dataset(&items, &budget, include_s6)?;
    let mut cfg = TrainConfig { coefficients_only: baseline, ..Default::default() };
    if let Some(s) = seed.or(set.get("seed")?) {
        cfg.seed = s;
    }
    if let Some(e) = epochs.or(set.get("epochs")?) {
        cfg.epochs = e;
    }
    if let Some(b) = set.get("batch_size")? {
        cfg.batch_size = b;
    }
    if let Some(lr) = set.get("learning_rate")? {
        cfg.learning_rate = lr;
    }
    eprintln!("training on {} samples for {} epochs", samples.len(), cfg.epochs);
    let (params, metrics) = neurosym::train(&samples, &cfg)?;
    params.save(out)?;
    std::fs::write(metrics_path, serde_json::to_string_pretty(&metrics).expect("serializable"))?;
    let last = |v: &[f64]| v.last().copied().unwrap_or(f64::NAN);
    let summary = json!({
        "params": out.display().to_string(),
        "metrics": metrics_path.display().to_string(),
        "train_size": metrics.train_size,
        "validation_size": metrics.validation_size,
        "final_train_loss": last(&metrics.train_loss),
        "final_validation_loss": last(&metrics.validation_loss),
        "validation_accuracy": last(&metrics.validation_accuracy),
        "validation_masked_accuracy": last(&metrics.validation_masked_accuracy),
    });
    if cli.json {
        print_json(&summary);
    } else {
        for (k, v) in summary.as_object().expect("object") {
            out!("{k}: {v}");
        }
    }
    Ok(())
}

fn cmd_eval(cli: &Cli, set: &Settings, params: &Path, data: &Path, include_s6: bool) -> Result<()> {
    let params = MlpParams::load(params)?;
    let items = read_labeled(data)?;
    let samples = neurosym::build_dataset(&items, &set.mask_budget()?, include_s6)?;
    let coefficients_only = params.input_dim() == neurosym::COEFF_FEATURES;
    let ev = neurosym::evaluate(&params, &samples, coefficients_only)?;
    if cli.json {
        print_json(&to_value(&ev)?);
    } else {
        out!("samples {}", ev.size);
        out!("loss {:.6}", ev.loss);
        out!("accuracy {:.4}", ev.accuracy);
        out!("masked accuracy {:.4}", ev.masked_accuracy);
    }
    Ok(())
}

fn cmd_predict(cli: &Cli, set: &Settings, params: &Path, coeffs: &str) -> Result<()> {
    let params = MlpParams::load(params)?;
    let f = parse_sextic(coeffs, cli.desc)?;
    let (label, p) = neurosym::predict(&params, &f, &set.mask_budget()?)?;
    if cli.json {
        let probs: BTreeMap<&str, f64> = (0..neurosym::CLASSES).map(|i| (neurosym::class_label(i), p[i])).collect();
        print_json(&json!({"label": label, "probabilities": probs}));
    } else {
        out!("{label}");
        for i in (0..neurosym::CLASSES).filter(|&i| p[i] > 0.0) {
            out!("  {} {:.4}", neurosym::class_label(i), p[i]);
        }
    }
    Ok(())
}

fn cmd_groups(cli: &Cli, export: bool) -> Result<()> {
    let records = groups::export();
    if cli.json || export {
        let errata: Vec<Value> = groups::signature_errata()
            .into_iter()
            .map(|(i, published, derived)| json!({"label": format!("g{i}"), "published": published, "derived": derived}))
            .collect();
        print_json(&json!({"groups": to_value(&records)?, "signature_errata": errata}));
    } else {
        out!("label,name,gap_id,order,in_a6,signature");
        for r in records {
            let sig: String = r.signature.iter().map(|b| char::from(b'0' + b)).collect();
            out!("{},{},\"[{},{}]\",{},{},{}", r.label, r.name, r.gap_id[0], r.gap_id[1], r.order, r.in_a6, sig);
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let set = Settings::load(cli.config.as_deref())?;
    match &cli.cmd {
        Cmd::Classify { coeffs, primes, certificate } => cmd_classify(cli, &set, coeffs, *primes, *certificate),
        Cmd::Factor { coeffs, modulus } => cmd_factor(cli, coeffs, *modulus),
        Cmd::Invariants { coeffs } => cmd_invariants(cli, coeffs),
        Cmd::Resolvent { coeffs, invariant, group } => cmd_resolvent(cli, &set, coeffs, invariant, group),
        Cmd::Census { height, out, resume, monic_only, label, records, certificates, chunk_size } => cmd_census(
            cli,
            &set,
            *height,
            out.clone(),
            *resume,
            *monic_only,
            label.clone(),
            *records,
            *certificates,
            *chunk_size,
        ),
        Cmd::Density { dirs } => cmd_density(cli, dirs),
        Cmd::Train { data, seed, epochs, out, metrics, baseline, include_s6 } => {
            cmd_train(cli, &set, data, *seed, *epochs, out, metrics, *baseline, *include_s6)
        }
        Cmd::Eval { params, data, include_s6 } => cmd_eval(cli, &set, params, data, *include_s6),
        Cmd::Predict { params, coeffs } => cmd_predict(cli, &set, params, coeffs),
        Cmd::Groups { export } => cmd_groups(cli, *export),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                Error::Reducible => "reducible: the polynomial factors over Q".to_string(),
                other => other.to_string(),
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
