//! Random benchmark suites comparing constrained synthesis with the
//! synthesize-then-route baselines.
//!
//! Every trial is verified before it is counted; a trial that fails to
//! generate or verify is excluded and listed in the CSV footer.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Angle, Circuit, Gate};
use crate::cnot::{expand_templates, pmh_synthesize, synthesize_constrained};
use crate::error::{Error, Result};
use crate::gf2::{simulate_cnot_circuit, BinaryMatrix};
use crate::graph::ConnectivityGraph;
use crate::optimizer::cancel_pass;
use crate::phase::{extract_sum_over_paths, synth_parity_network, synthesize_cnot_rz, SumOverPaths};
use crate::sim::{verify_equivalence, VerifyMode, DENSE_CAP};
use crate::universal::{route_segments, route_universal};

/// Probabilities of each gate kind in a random circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateProbs {
    pub cnot: f64,
    pub s: f64,
    pub t: f64,
    pub sdg: f64,
    pub tdg: f64,
    pub h: f64,
}

impl GateProbs {
    /// 1% each of S, T, S† and T†, `p_h` Hadamards, CNOT for the rest.
    pub fn with_h(p_h: f64) -> Self {
        GateProbs {
            cnot: 1.0 - 0.04 - p_h,
            s: 0.01,
            t: 0.01,
            sdg: 0.01,
            tdg: 0.01,
            h: p_h,
        }
    }

    /// CNOT and phase gates only, 80% CNOT.
    pub fn cnot_rz() -> Self {
        GateProbs {
            cnot: 0.8,
            s: 0.05,
            t: 0.05,
            sdg: 0.05,
            tdg: 0.05,
            h: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.cnot, self.s, self.t, self.sdg, self.tdg, self.h];
        if all.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config(format!("gate probabilities out of range: {self:?}")));
        }
        let sum: f64 = all.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("gate probabilities sum to {sum}, not 1")));
        }
        Ok(())
    }
}

/// Random circuit; wires are uniform and CNOT wires distinct.
pub fn random_circuit(n: usize, gate_count: usize, probs: &GateProbs, seed: u64) -> Result<Circuit> {
    probs.validate()?;
    if n == 0 || (n < 2 && probs.cnot > 0.0) {
        return Err(Error::Config(format!("cannot draw CNOTs on {n} qubits")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(n);
    for _ in 0..gate_count {
        let q = rng.gen_range(0..n);
        let mut x = rng.gen::<f64>();
        let kinds = [
            (probs.cnot, None),
            (probs.s, Some(Angle::S)),
            (probs.t, Some(Angle::T)),
            (probs.sdg, Some(Angle::SDG)),
            (probs.tdg, Some(Angle::TDG)),
        ];
        let mut gate = Gate::h(q);
        for (p, angle) in kinds {
            if x < p {
                gate = match angle {
                    Some(a) => Gate::rz(a, q),
                    None => {
                        let t = (q + rng.gen_range(1..n)) % n;
                        Gate::cnot(q, t)
                    }
                };
                break;
            }
            x -= p;
        }
        c.push_unchecked(gate);
    }
    Ok(c)
}

/// [`random_circuit`] with [`GateProbs::with_h`].
pub fn random_universal_circuit(n: usize, gate_count: usize, p_h: f64, seed: u64) -> Result<Circuit> {
    random_circuit(n, gate_count, &GateProbs::with_h(p_h), seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub gate_count: usize,
    pub gate_probs: GateProbs,
    /// Run [`cancel_pass`] on both outputs before counting.
    pub cleanup: bool,
    /// Largest register checked with dense unitaries.
    pub verify_n_max: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n: 20,
            trials: 20,
            seed: 1,
            gate_count: 1000,
            gate_probs: GateProbs::with_h(0.0),
            cleanup: true,
            verify_n_max: 6,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.verify_n_max > DENSE_CAP {
            return Err(Error::Config(format!("verify_n_max above {DENSE_CAP}")));
        }
        self.gate_probs.validate()
    }

    fn trial_seed(&self, bucket: usize, trial: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(((bucket as u64) << 32) | trial as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMode {
    /// Random linear reversible transformations.
    Cnot,
    /// Random linear transformations with phase polynomials.
    CnotRz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub bucket: String,
    pub trial: usize,
    pub seed: u64,
    pub ours: usize,
    pub baseline: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Excluded {
    pub bucket: String,
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketSummary {
    pub bucket: String,
    pub trials: usize,
    pub mean_ours: f64,
    pub mean_baseline: f64,
    /// `(baseline - ours) / baseline`.
    pub advantage: f64,
    pub excluded: usize,
}

/// Per-trial CNOT counts of one benchmark, in (bucket, trial) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    /// Name of the swept parameter.
    pub parameter: String,
    pub buckets: Vec<String>,
    pub rows: Vec<TrialRow>,
    pub excluded: Vec<Excluded>,
}

impl BenchTable {
    pub fn summary(&self) -> Vec<BucketSummary> {
        self.buckets
            .iter()
            .map(|b| {
                let rows: Vec<&TrialRow> = self.rows.iter().filter(|r| &r.bucket == b).collect();
                let mean = |f: fn(&TrialRow) -> usize| {
                    if rows.is_empty() {
                        f64::NAN
                    } else {
                        rows.iter().map(|r| f(r) as f64).sum::<f64>() / rows.len() as f64
                    }
                };
                let (ours, base) = (mean(|r| r.ours), mean(|r| r.baseline));
                BucketSummary {
                    bucket: b.clone(),
                    trials: rows.len(),
                    mean_ours: ours,
                    mean_baseline: base,
                    advantage: (base - ours) / base,
                    excluded: self.excluded.iter().filter(|e| &e.bucket == b).count(),
                }
            })
            .collect()
    }

    pub fn bucket(&self, name: &str) -> Option<BucketSummary> {
        self.summary().into_iter().find(|s| s.bucket == name)
    }

    /// Rows as CSV, followed by `#` lines with per-bucket means and the
    /// excluded trials.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},trial,seed,ours_cnot,baseline_cnot\n", self.parameter);
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", r.bucket, r.trial, r.seed, r.ours, r.baseline);
        }
        for s in self.summary() {
            let _ = writeln!(
                out,
                "# {}={} trials={} mean_ours={:.2} mean_baseline={:.2} advantage={:.4} excluded={}",
                self.parameter, s.bucket, s.trials, s.mean_ours, s.mean_baseline, s.advantage, s.excluded
            );
        }
        for e in &self.excluded {
            let _ = writeln!(
                out,
                "# excluded {}={} trial={} seed={}: {}",
                self.parameter, e.bucket, e.trial, e.seed, e.reason
            );
        }
        out
    }
}

fn edge_legal(c: &Circuit, g: &ConnectivityGraph) -> Result<()> {
    for (position, gate) in c.gates().iter().enumerate() {
        if let Gate::Cnot { control, target } = *gate {
            if !g.has_edge(control, target) {
                return Err(Error::Config(format!("CNOT {control} {target} at {position} is off the graph")));
            }
        }
    }
    Ok(())
}

fn finish(c: Circuit, cleanup: bool) -> Circuit {
    if cleanup {
        cancel_pass(&c)
    } else {
        c
    }
}

fn mismatch(which: &str) -> Error {
    Error::Config(format!("{which} output failed verification"))
}

/// PMH with partitioning, then template routing.
pub fn baseline_cnot(a: &BinaryMatrix, g: &ConnectivityGraph) -> Result<Circuit> {
    expand_templates(&pmh_synthesize(a, true)?, g)
}

/// Unconstrained parity network with a PMH fixup, then template routing.
pub fn baseline_cnot_rz(s: &SumOverPaths, g: &ConnectivityGraph) -> Result<Circuit> {
    let (mut c, parities) = synth_parity_network(s)?;
    let fix = s.linear.multiply(&parities.invert()?)?;
    c.append(&pmh_synthesize(&fix, true)?)?;
    expand_templates(&c, g)
}

fn compare_cnot(a: &BinaryMatrix, g: &ConnectivityGraph, cleanup: bool) -> Result<(usize, usize)> {
    let ours = finish(synthesize_constrained(a, g)?.0, cleanup);
    let base = finish(baseline_cnot(a, g)?, cleanup);
    for (which, c) in [("constrained", &ours), ("baseline", &base)] {
        edge_legal(c, g)?;
        if &simulate_cnot_circuit(c)? != a {
            return Err(mismatch(which));
        }
    }
    Ok((ours.cnot_count(), base.cnot_count()))
}

fn compare_cnot_rz(s: &SumOverPaths, g: &ConnectivityGraph, cleanup: bool) -> Result<(usize, usize)> {
    let ours = finish(synthesize_cnot_rz(s, g)?.0, cleanup);
    let base = finish(baseline_cnot_rz(s, g)?, cleanup);
    for (which, c) in [("constrained", &ours), ("baseline", &base)] {
        edge_legal(c, g)?;
        if &extract_sum_over_paths(c)? != s {
            return Err(mismatch(which));
        }
    }
    Ok((ours.cnot_count(), base.cnot_count()))
}

fn run_buckets<F>(cfg: &BenchConfig, parameter: &str, buckets: Vec<String>, trial: F) -> Result<BenchTable>
where
    F: Fn(usize, u64) -> Result<(usize, usize)> + Sync,
{
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = (0..buckets.len())
        .flat_map(|b| (0..cfg.trials).map(move |t| (b, t)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(b, t)| {
            let seed = cfg.trial_seed(b, t);
            (b, t, seed, trial(b, seed))
        })
        .collect();
    let mut table = BenchTable {
        parameter: parameter.to_string(),
        buckets: buckets.clone(),
        rows: Vec::new(),
        excluded: Vec::new(),
    };
    for (b, t, seed, r) in results {
        let bucket = buckets[b].clone();
        match r {
            Ok((ours, baseline)) => table.rows.push(TrialRow { bucket, trial: t, seed, ours, baseline }),
            Err(e) => table.excluded.push(Excluded { bucket, trial: t, seed, reason: e.to_string() }),
        }
    }
    Ok(table)
}

/// Random `cfg.n`-qubit instances on random connected graphs, one bucket
/// per sparseness value.
pub fn bench_sparseness(cfg: &BenchConfig, sparseness: &[f64], mode: BenchMode) -> Result<BenchTable> {
    let labels = sparseness.iter().map(|s| format!("{s}")).collect();
    run_buckets(cfg, "sparseness", labels, |b, seed| {
        let g = ConnectivityGraph::random_connected(cfg.n, sparseness[b], seed)?;
        match mode {
            BenchMode::Cnot => compare_cnot(&BinaryMatrix::random_invertible(cfg.n, seed)?, &g, cfg.cleanup),
            BenchMode::CnotRz => compare_cnot_rz(&SumOverPaths::random(cfg.n, 2 * cfg.n, seed)?, &g, cfg.cleanup),
        }
    })
}

/// Instances on a fixed device, one bucket per size. An instance of size
/// `k` is the transformation of a random `k`-gate circuit over all qubits
/// of `g`: CNOTs only, or CNOTs and phase gates as in [`GateProbs::cnot_rz`].
/// `cfg.n` is ignored.
pub fn bench_architecture(cfg: &BenchConfig, g: &ConnectivityGraph, sizes: &[usize], mode: BenchMode) -> Result<BenchTable> {
    let n = g.node_count();
    let labels = sizes.iter().map(|s| s.to_string()).collect();
    run_buckets(cfg, "size", labels, |b, seed| match mode {
        BenchMode::Cnot => {
            let probs = GateProbs { cnot: 1.0, s: 0.0, t: 0.0, sdg: 0.0, tdg: 0.0, h: 0.0 };
            let c = random_circuit(n, sizes[b], &probs, seed)?;
            compare_cnot(&simulate_cnot_circuit(&c)?, g, cfg.cleanup)
        }
        BenchMode::CnotRz => {
            let c = random_circuit(n, sizes[b], &GateProbs::cnot_rz(), seed)?;
            compare_cnot_rz(&extract_sum_over_paths(&c)?, g, cfg.cleanup)
        }
    })
}

/// The connected subgraph on the first `k` nodes in breadth-first order
/// from node 0, relabelled in that order.
pub fn bfs_prefix(g: &ConnectivityGraph, k: usize) -> Result<ConnectivityGraph> {
    let order: Vec<usize> = {
        let mut seen = vec![false; g.node_count()];
        let mut order = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() && order.len() < k {
            for &v in g.neighbors(order[i]) {
                if !seen[v] && order.len() < k {
                    seen[v] = true;
                    order.push(v);
                }
            }
            i += 1;
        }
        order
    };
    let index: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = g
        .edges()
        .filter_map(|(u, v)| Some((*index.get(&u)?, *index.get(&v)?)));
    Ok(ConnectivityGraph::new(order.len(), edges)?.with_name(format!("{}[..{}]", g.name(), order.len())))
}

/// Routed and template-expanded circuits of a universal circuit.
fn universal_pair(c: &Circuit, g: &ConnectivityGraph, cleanup: bool) -> Result<(Circuit, Circuit)> {
    let ours = finish(route_universal(c, g)?.0, cleanup);
    let base = finish(expand_templates(c, g)?, cleanup);
    edge_legal(&ours, g)?;
    edge_legal(&base, g)?;
    Ok((ours, base))
}

/// Random `cfg.gate_count`-gate circuits over {CNOT, S, T, S†, T†, H} on
/// `g`, one bucket per Hadamard probability.
///
/// On registers above `cfg.verify_n_max` the routed circuit is checked
/// block by block against the sum-over-paths form of each original block,
/// and both pipelines are additionally run and checked with dense unitaries
/// on the same circuit drawn over the first `cfg.verify_n_max` nodes.
pub fn bench_h_ratio(cfg: &BenchConfig, g: &ConnectivityGraph, p_h: &[f64]) -> Result<BenchTable> {
    let n = g.node_count();
    for &p in p_h {
        GateProbs::with_h(p).validate()?;
    }
    let labels = p_h.iter().map(|p| format!("{p}")).collect();
    run_buckets(cfg, "p_h", labels, |b, seed| {
        let probs = GateProbs::with_h(p_h[b]);
        let c = random_circuit(n, cfg.gate_count, &probs, seed)?;
        let (ours, base) = universal_pair(&c, g, cfg.cleanup)?;
        let dense = |c: &Circuit, out: &Circuit, which| -> Result<()> {
            if verify_equivalence(c, out, VerifyMode::Unitary)?.pass {
                Ok(())
            } else {
                Err(mismatch(which))
            }
        };
        if n <= cfg.verify_n_max {
            dense(&c, &ours, "routed")?;
            dense(&c, &base, "baseline")?;
        } else {
            for seg in route_segments(&c, g)? {
                if seg.original.gates().iter().any(Gate::is_h) {
                    if seg.original != seg.routed {
                        return Err(mismatch("routed"));
                    }
                } else if extract_sum_over_paths(&seg.original)? != extract_sum_over_paths(&seg.routed)? {
                    return Err(mismatch("routed"));
                }
            }
            let small = bfs_prefix(g, cfg.verify_n_max)?;
            let c = random_circuit(small.node_count(), cfg.gate_count, &probs, seed)?;
            let (ours, base) = universal_pair(&c, &small, cfg.cleanup)?;
            dense(&c, &ours, "truncated routed")?;
            dense(&c, &base, "truncated baseline")?;
        }
        Ok((ours.cnot_count(), base.cnot_count()))
    })
}
