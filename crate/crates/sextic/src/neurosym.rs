//! A dense softmax classifier over polynomial features, confined to the candidate set left
//! by the symbolic layers (real roots, discriminant parity, mod-p cycle types).

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier;
use crate::ffactor::{self, modp};
use crate::groups;
use crate::polycore::IntPoly;
use crate::resolvents;
use crate::{CycleType, Error, Partition, Result};

/// g1..g15 then S6.
pub const CLASSES: usize = 16;
pub const HIDDEN: usize = 64;
pub const COEFF_FEATURES: usize = 7;
/// Coefficients, real-root count, parity bit, ten cycle-type bits.
pub const BASE_FEATURES: usize = COEFF_FEATURES + 1 + 1 + 10;

/// Which symbolic evidence is gathered for features and masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskBudget {
    /// Number of good primes sampled, smallest first.
    pub primes: usize,
    pub parity: bool,
    pub real_roots: bool,
    /// Append a code for the factor degrees of the degree-15 matching resolvent.
    pub resolvent: bool,
}

impl Default for MaskBudget {
    fn default() -> Self {
        MaskBudget { primes: 25, parity: true, real_roots: true, resolvent: false }
    }
}

impl MaskBudget {
    pub fn feature_dim(&self) -> usize {
        BASE_FEATURES + usize::from(self.resolvent)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector(pub Vec<f64>);

/// Candidate groups, indexed g1..g15, S6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CandidateMask(pub [bool; CLASSES]);

impl CandidateMask {
    pub fn all() -> Self {
        CandidateMask([true; CLASSES])
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, class: usize) -> bool {
        self.0[class]
    }

    pub fn singleton(&self) -> Option<usize> {
        (self.count() == 1).then(|| self.0.iter().position(|&b| b).unwrap())
    }

    pub fn is_subset(&self, other: &CandidateMask) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }

    pub fn labels(&self) -> Vec<&'static str> {
        (0..CLASSES).filter(|&i| self.0[i]).map(class_label).collect()
    }
}

pub fn class_label(i: usize) -> &'static str {
    groups::by_index(i + 1).label
}

pub fn class_of(label: &str) -> Option<usize> {
    groups::by_label(label).map(|g| g.index - 1)
}

/// Symbolic evidence shared by features and masks.
#[derive(Clone, Debug)]
pub struct Symbolic {
    pub real_roots: usize,
    pub square: bool,
    pub observed: BTreeSet<CycleType>,
    pub mask: CandidateMask,
    pub resolvent_code: Option<usize>,
}

fn sample_types(g: &IntPoly, count: usize) -> Result<BTreeSet<CycleType>> {
    let mut seen = BTreeSet::new();
    if count == 0 {
        return Ok(seen);
    }
    let mut taken = 0;
    for p in modp::primes().take_while(|&p| p < 1 << 16) {
        match ffactor::degree_pattern(g, p) {
            Ok(t) => {
                seen.insert(t);
                taken += 1;
                if taken == count {
                    return Ok(seen);
                }
            }
            Err(Error::RamifiedPrime(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(seen)
}

static MATCHING_PATTERNS: once_cell::sync::Lazy<Vec<Partition>> = once_cell::sync::Lazy::new(|| {
    let mut v: Vec<Partition> = (1..=CLASSES).map(|i| resolvents::expected_pattern(0, i).clone()).collect();
    v.sort();
    v.dedup();
    v
});

fn resolvent_code(g: &IntPoly) -> Result<usize> {
    let inv = &resolvents::default_invariants()[0];
    let s6 = &groups::s6().elements;
    let opts = resolvents::ResolventOptions::default();
    let mut work = g.clone();
    for seed in 0..16u64 {
        let r = resolvents::resolvent_with(&inv.poly, s6, &work, &opts)?;
        if let Some(d) = r.factor_degrees.filter(|_| r.squarefree) {
            return Ok(MATCHING_PATTERNS.iter().position(|p| *p == d).map_or(0, |i| i + 1));
        }
        work = resolvents::tschirnhausen(g, seed)?;
    }
    Err(Error::NotSquarefree("matching resolvent stays non-squarefree".into()))
}

/// Real roots, parity and sampled cycle types of an irreducible sextic, with the mask they imply.
pub fn symbolic(f: &IntPoly, budget: &MaskBudget) -> Result<Symbolic> {
    let ev = classifier::gather_evidence(f)?;
    let observed = sample_types(&ev.monic, budget.primes)?;
    let conj = if budget.real_roots {
        Partition::involution((6 - ev.real_roots) / 2, 6)
    } else {
        Partition::trivial(6)
    };
    let parity = budget.parity.then_some(ev.square);
    let cands = groups::candidates(&observed, &conj, parity)?;
    let mut mask = [false; CLASSES];
    for c in cands {
        mask[c - 1] = true;
    }
    let resolvent_code = if budget.resolvent { Some(resolvent_code(&ev.monic)?) } else { None };
    Ok(Symbolic { real_roots: ev.real_roots, square: ev.square, observed, mask: CandidateMask(mask), resolvent_code })
}

pub fn symbolic_mask(f: &IntPoly, budget: &MaskBudget) -> Result<CandidateMask> {
    Ok(symbolic(f, budget)?.mask)
}

fn encode(f: &IntPoly, s: &Symbolic, budget: &MaskBudget) -> FeatureVector {
    let h = f.coeffs().iter().map(|c| c.magnitude().clone()).max().unwrap_or_default();
    let hf = num_traits::ToPrimitive::to_f64(&h).unwrap_or(1.0).max(1.0);
    let mut x: Vec<f64> = (0..7).map(|i| num_traits::ToPrimitive::to_f64(&f.coeff(i)).unwrap_or(0.0) / hf).collect();
    x.push(s.real_roots as f64);
    x.push(if s.square { 1.0 } else { 0.0 });
    let mut bits = [0.0; 10];
    for t in &s.observed {
        if let Some(i) = groups::class_index(t) {
            bits[i] = 1.0;
        }
    }
    x.extend(bits);
    if budget.resolvent {
        x.push(s.resolvent_code.unwrap_or(0) as f64);
    }
    FeatureVector(x)
}

pub fn featurize(f: &IntPoly, budget: &MaskBudget) -> Result<FeatureVector> {
    let s = symbolic(f, budget)?;
    Ok(encode(f, &s, budget))
}

/// Features and mask in one pass.
pub fn featurize_with_mask(f: &IntPoly, budget: &MaskBudget) -> Result<(FeatureVector, CandidateMask)> {
    let s = symbolic(f, budget)?;
    Ok((encode(f, &s, budget), s.mask))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    /// Row-major, outputs x inputs.
    pub w: Vec<f64>,
    pub b: Vec<f64>,
}

impl Layer {
    fn apply(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for o in 0..self.outputs {
            let row = &self.w[o * self.inputs..(o + 1) * self.inputs];
            out.push(self.b[o] + row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub layers: Vec<Layer>,
    pub seed: u64,
    pub epochs: u64,
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|v| (v - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Gradients with the same shapes as the parameters.
#[derive(Clone, Debug)]
pub struct Grads {
    pub w: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

impl MlpParams {
    /// input -> 64 -> 64 -> 64 -> 16 with He-uniform weights and zero biases.
    pub fn init(input: usize, seed: u64) -> Self {
        let dims = [input, HIDDEN, HIDDEN, HIDDEN, CLASSES];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layers = dims
            .windows(2)
            .map(|d| {
                let a = (6.0 / d[0] as f64).sqrt();
                Layer {
                    inputs: d[0],
                    outputs: d[1],
                    w: (0..d[0] * d[1]).map(|_| rng.gen_range(-a..a)).collect(),
                    b: vec![0.0; d[1]],
                }
            })
            .collect();
        MlpParams { layers, seed, epochs: 0 }
    }

    pub fn zeros(input: usize) -> Self {
        let mut p = Self::init(input, 0);
        for l in &mut p.layers {
            l.w.iter_mut().for_each(|v| *v = 0.0);
        }
        p
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![self.input_dim()];
        d.extend(self.layers.iter().map(|l| l.outputs));
        d
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim() {
            return Err(Error::Contract(format!("feature length {} but network expects {}", x.len(), self.input_dim())));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Contract("non-finite feature".into()));
        }
        Ok(())
    }

    /// Pre-activations of every layer.
    fn activations(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut zs = Vec::with_capacity(self.layers.len());
        let mut h = x.to_vec();
        for (i, l) in self.layers.iter().enumerate() {
            let mut z = Vec::with_capacity(l.outputs);
            l.apply(&h, &mut z);
            h = if i + 1 < self.layers.len() { z.iter().map(|v| v.max(0.0)).collect() } else { z.clone() };
            zs.push(z);
        }
        zs
    }

    pub fn logits(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok(self.activations(x).pop().unwrap())
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(softmax(&self.logits(x)?))
    }

    /// Cross-entropy of one example.
    pub fn loss(&self, x: &[f64], label: usize) -> Result<f64> {
        let p = self.forward(x)?;
        Ok(-p[label].max(f64::MIN_POSITIVE).ln())
    }

    pub fn zero_grads(&self) -> Grads {
        Grads {
            w: self.layers.iter().map(|l| vec![0.0; l.w.len()]).collect(),
            b: self.layers.iter().map(|l| vec![0.0; l.b.len()]).collect(),
        }
    }

    /// Accumulate the cross-entropy gradient of one example into `g`; returns its loss.
    pub fn backward(&self, x: &[f64], label: usize, g: &mut Grads) -> Result<f64> {
        self.check(x)?;
        let zs = self.activations(x);
        let n = self.layers.len();
        let p = softmax(&zs[n - 1]);
        let loss = -p[label].max(f64::MIN_POSITIVE).ln();
        let mut delta = p;
        delta[label] -= 1.0;
        for i in (0..n).rev() {
            let l = &self.layers[i];
            let input: Vec<f64> = if i == 0 { x.to_vec() } else { zs[i - 1].iter().map(|v| v.max(0.0)).collect() };
            for o in 0..l.outputs {
                let d = delta[o];
                if d == 0.0 {
                    continue;
                }
                g.b[i][o] += d;
                let row = &mut g.w[i][o * l.inputs..(o + 1) * l.inputs];
                for (r, a) in row.iter_mut().zip(&input) {
                    *r += d * a;
                }
            }
            if i > 0 {
                let mut prev = vec![0.0; l.inputs];
                for o in 0..l.outputs {
                    let d = delta[o];
                    if d == 0.0 {
                        continue;
                    }
                    for (pv, w) in prev.iter_mut().zip(&l.w[o * l.inputs..(o + 1) * l.inputs]) {
                        *pv += d * w;
                    }
                }
                for (pv, z) in prev.iter_mut().zip(&zs[i - 1]) {
                    if *z <= 0.0 {
                        *pv = 0.0;
                    }
                }
                delta = prev;
            }
        }
        Ok(loss)
    }

    fn param_mut(&mut self, layer: usize, bias: bool, k: usize) -> &mut f64 {
        if bias {
            &mut self.layers[layer].b[k]
        } else {
            &mut self.layers[layer].w[k]
        }
    }

    /// Relative error ||a - n|| / (||a|| + ||n||) between the analytic gradient and central
    /// differences with step `h`, over every parameter.
    pub fn gradient_check(&self, x: &[f64], label: usize, h: f64) -> Result<f64> {
        let mut g = self.zero_grads();
        self.backward(x, label, &mut g)?;
        let mut probe = self.clone();
        let (mut diff, mut na, mut nn) = (0.0, 0.0, 0.0);
        for li in 0..self.layers.len() {
            for (bias, len) in [(false, self.layers[li].w.len()), (true, self.layers[li].b.len())] {
                for k in 0..len {
                    let orig = *probe.param_mut(li, bias, k);
                    *probe.param_mut(li, bias, k) = orig + h;
                    let up = probe.loss(x, label)?;
                    *probe.param_mut(li, bias, k) = orig - h;
                    let down = probe.loss(x, label)?;
                    *probe.param_mut(li, bias, k) = orig;
                    let num = (up - down) / (2.0 * h);
                    let ana = if bias { g.b[li][k] } else { g.w[li][k] };
                    diff += (ana - num).powi(2);
                    na += ana * ana;
                    nn += num * num;
                }
            }
        }
        let denom = na.sqrt() + nn.sqrt();
        Ok(if denom == 0.0 { 0.0 } else { diff.sqrt() / denom })
    }

    const MAGIC: &'static [u8; 4] = b"SXNN";
    const VERSION: u32 = 1;

    /// Header: magic, version, layer count, dims (u32 each), seed, epochs; then per layer the
    /// row-major weights and the biases, all little-endian f64.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(Self::MAGIC);
        out.extend_from_slice(&Self::VERSION.to_le_bytes());
        out.extend_from_slice(&(self.layers.len() as u32).to_le_bytes());
        for d in self.dims() {
            out.extend_from_slice(&(d as u32).to_le_bytes());
        }
        out.extend_from_slice(&self.seed.to_le_bytes());
        out.extend_from_slice(&self.epochs.to_le_bytes());
        for l in &self.layers {
            for v in l.w.iter().chain(&l.b) {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(mut r: impl Read) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("params file: {m}"));
        let mut buf4 = [0u8; 4];
        let mut buf8 = [0u8; 8];
        let mut u32_ = |r: &mut dyn Read| -> Result<u32> {
            r.read_exact(&mut buf4).map_err(|_| bad("truncated header"))?;
            Ok(u32::from_le_bytes(buf4))
        };
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic).map_err(|_| bad("truncated header"))?;
        if &magic != Self::MAGIC {
            return Err(bad("bad magic"));
        }
        let version = u32_(&mut r)?;
        if version != Self::VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let n = u32_(&mut r)? as usize;
        if n == 0 || n > 16 {
            return Err(bad("implausible layer count"));
        }
        let dims: Vec<usize> = (0..=n).map(|_| u32_(&mut r).map(|d| d as usize)).collect::<Result<_>>()?;
        let mut u64_ = |r: &mut dyn Read| -> Result<u64> {
            r.read_exact(&mut buf8).map_err(|_| bad("truncated header"))?;
            Ok(u64::from_le_bytes(buf8))
        };
        let seed = u64_(&mut r)?;
        let epochs = u64_(&mut r)?;
        let f64s = |r: &mut dyn Read, k: usize| -> Result<Vec<f64>> {
            (0..k)
                .map(|_| {
                    let mut b = [0u8; 8];
                    r.read_exact(&mut b).map_err(|_| bad("truncated weights"))?;
                    let v = f64::from_le_bytes(b);
                    if v.is_finite() { Ok(v) } else { Err(bad("non-finite weight")) }
                })
                .collect()
        };
        let mut layers = Vec::with_capacity(n);
        for d in dims.windows(2) {
            let w = f64s(&mut r, d[0] * d[1])?;
            let b = f64s(&mut r, d[1])?;
            layers.push(Layer { inputs: d[0], outputs: d[1], w, b });
        }
        Ok(MlpParams { layers, seed, epochs })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::File::create(path)?.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub validation_fraction: f64,
    /// Train on the coefficient features only (the unmasked baseline).
    pub coefficients_only: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 100,
            batch_size: 64,
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            seed: 0,
            validation_fraction: 0.1,
            coefficients_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub coeffs: Vec<i64>,
    pub features: FeatureVector,
    pub mask: CandidateMask,
    pub label: usize,
}

impl Sample {
    pub fn input(&self, coefficients_only: bool) -> &[f64] {
        if coefficients_only {
            &self.features.0[..COEFF_FEATURES]
        } else {
            &self.features.0
        }
    }
}

/// Build samples from (coefficients, label) pairs; S6 is dropped unless `include_s6`.
pub fn build_dataset(items: &[(Vec<i64>, String)], budget: &MaskBudget, include_s6: bool) -> Result<Vec<Sample>> {
    items
        .iter()
        .filter(|(_, l)| include_s6 || l != "S6")
        .map(|(c, l)| {
            let label = class_of(l).ok_or_else(|| Error::Parse(format!("unknown label {l}")))?;
            let (features, mask) = featurize_with_mask(&IntPoly::from_i64(c), budget)?;
            Ok(Sample { coeffs: c.clone(), features, mask, label })
        })
        .collect()
}

/// Stratified split: from each label, a `fraction` share (at least one when the label has two
/// or more samples) goes to validation. Returns (train, validation) indices.
pub fn stratified_split(labels: &[usize], fraction: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5717);
    let (mut train, mut val) = (Vec::new(), Vec::new());
    for c in 0..CLASSES {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == c).collect();
        idx.shuffle(&mut rng);
        let mut k = (idx.len() as f64 * fraction).round() as usize;
        if k == 0 && idx.len() >= 2 {
            k = 1;
        }
        val.extend_from_slice(&idx[..k]);
        train.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    val.sort_unstable();
    (train, val)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainMetrics {
    pub seed: u64,
    pub coefficients_only: bool,
    pub train_size: usize,
    pub validation_size: usize,
    pub train_loss: Vec<f64>,
    pub validation_loss: Vec<f64>,
    pub validation_accuracy: Vec<f64>,
    pub validation_masked_accuracy: Vec<f64>,
}

struct Adam {
    m: Grads,
    v: Grads,
    t: i32,
}

impl Adam {
    fn step(&mut self, p: &mut MlpParams, g: &Grads, cfg: &TrainConfig, scale: f64) {
        self.t += 1;
        let c1 = 1.0 - cfg.beta1.powi(self.t);
        let c2 = 1.0 - cfg.beta2.powi(self.t);
        for (li, l) in p.layers.iter_mut().enumerate() {
            let upd = |w: &mut [f64], g: &[f64], m: &mut [f64], v: &mut [f64]| {
                for k in 0..w.len() {
                    let gk = g[k] * scale;
                    m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * gk;
                    v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * gk * gk;
                    w[k] -= cfg.learning_rate * (m[k] / c1) / ((v[k] / c2).sqrt() + cfg.epsilon);
                }
            };
            upd(&mut l.w, &g.w[li], &mut self.m.w[li], &mut self.v.w[li]);
            upd(&mut l.b, &g.b[li], &mut self.m.b[li], &mut self.v.b[li]);
        }
    }
}

/// Mini-batch Adam on cross-entropy. Deterministic for a given seed and dataset order.
pub fn train(data: &[Sample], cfg: &TrainConfig) -> Result<(MlpParams, TrainMetrics)> {
    if cfg.epochs == 0 || cfg.batch_size == 0 {
        return Err(Error::Config("epochs and batch size must be positive".into()));
    }
    if !(cfg.validation_fraction > 0.0 && cfg.validation_fraction < 1.0) {
        return Err(Error::Config("validation fraction must lie in (0, 1)".into()));
    }
    let distinct: BTreeSet<usize> = data.iter().map(|s| s.label).collect();
    if distinct.len() < 2 {
        return Err(Error::Degenerate("training data needs at least two distinct labels".into()));
    }
    let labels: Vec<usize> = data.iter().map(|s| s.label).collect();
    let (mut train_idx, val_idx) = stratified_split(&labels, cfg.validation_fraction, cfg.seed);
    let dim = data[0].input(cfg.coefficients_only).len();
    let mut params = MlpParams::init(dim, cfg.seed);
    let mut adam = Adam { m: params.zero_grads(), v: params.zero_grads(), t: 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut metrics = TrainMetrics {
        seed: cfg.seed,
        coefficients_only: cfg.coefficients_only,
        train_size: train_idx.len(),
        validation_size: val_idx.len(),
        ..Default::default()
    };
    for _ in 0..cfg.epochs {
        train_idx.shuffle(&mut rng);
        let mut total = 0.0;
        for batch in train_idx.chunks(cfg.batch_size) {
            let mut g = params.zero_grads();
            for &i in batch {
                total += params.backward(data[i].input(cfg.coefficients_only), data[i].label, &mut g)?;
            }
            adam.step(&mut params, &g, cfg, 1.0 / batch.len() as f64);
        }
        params.epochs += 1;
        metrics.train_loss.push(total / train_idx.len().max(1) as f64);
        let val: Vec<Sample> = val_idx.iter().map(|&i| data[i].clone()).collect();
        let ev = evaluate(&params, &val, cfg.coefficients_only)?;
        metrics.validation_loss.push(ev.loss);
        metrics.validation_accuracy.push(ev.accuracy);
        metrics.validation_masked_accuracy.push(ev.masked_accuracy);
    }
    Ok((params, metrics))
}

/// Masked distribution: masked labels get probability exactly 0, the rest a softmax over
/// their logits.
pub fn masked_probabilities(logits: &[f64], mask: &CandidateMask) -> Result<Vec<f64>> {
    if mask.count() == 0 {
        return Err(Error::InconsistentEvidence("empty candidate mask".into()));
    }
    let m = (0..CLASSES).filter(|&i| mask.0[i]).map(|i| logits[i]).fold(f64::NEG_INFINITY, f64::max);
    let mut p = vec![0.0; CLASSES];
    for i in (0..CLASSES).filter(|&i| mask.0[i]) {
        p[i] = (logits[i] - m).exp();
    }
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
    Ok(p)
}

/// Lowest index among the maximal entries.
pub fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in p.iter().enumerate() {
        if v > p[best] {
            best = i;
        }
    }
    best
}

/// Prediction from precomputed features and mask.
pub fn predict_features(params: &MlpParams, x: &[f64], mask: &CandidateMask) -> Result<(usize, Vec<f64>)> {
    let logits = params.logits(x)?;
    let p = masked_probabilities(&logits, mask)?;
    let label = mask.singleton().unwrap_or_else(|| argmax(&p));
    Ok((label, p))
}

pub fn predict(params: &MlpParams, f: &IntPoly, budget: &MaskBudget) -> Result<(String, Vec<f64>)> {
    let (x, mask) = featurize_with_mask(f, budget)?;
    let input = if params.input_dim() == COEFF_FEATURES { &x.0[..COEFF_FEATURES] } else { &x.0[..] };
    let (i, p) = predict_features(params, input, &mask)?;
    Ok((class_label(i).to_string(), p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub size: usize,
    pub loss: f64,
    /// Plain argmax accuracy.
    pub accuracy: f64,
    /// Accuracy after masking and singleton override.
    pub masked_accuracy: f64,
    /// confusion[true][predicted], masked predictions.
    pub confusion: Vec<Vec<u64>>,
}

pub fn evaluate(params: &MlpParams, data: &[Sample], coefficients_only: bool) -> Result<Evaluation> {
    let mut confusion = vec![vec![0u64; CLASSES]; CLASSES];
    let (mut loss, mut hit, mut mhit) = (0.0, 0usize, 0usize);
    for s in data {
        let x = s.input(coefficients_only);
        let logits = params.logits(x)?;
        let p = softmax(&logits);
        loss -= p[s.label].max(f64::MIN_POSITIVE).ln();
        hit += usize::from(argmax(&p) == s.label);
        let (m, _) = predict_features(params, x, &s.mask)?;
        mhit += usize::from(m == s.label);
        confusion[s.label][m] += 1;
    }
    let n = data.len().max(1) as f64;
    Ok(Evaluation {
        size: data.len(),
        loss: loss / n,
        accuracy: hit as f64 / n,
        masked_accuracy: mhit as f64 / n,
        confusion,
    })
}

/// The validation subset used by [`train`] for a given configuration.
pub fn validation_split(data: &[Sample], cfg: &TrainConfig) -> Vec<Sample> {
    let labels: Vec<usize> = data.iter().map(|s| s.label).collect();
    stratified_split(&labels, cfg.validation_fraction, cfg.seed).1.into_iter().map(|i| data[i].clone()).collect()
}
