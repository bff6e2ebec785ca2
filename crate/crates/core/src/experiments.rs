//! Experiment drivers producing the CSV datasets, and the generic solve
//! front end used by the command-line tool.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bases::NodeSet;
use crate::conditioning::{conditioning_row, mass_matrix};
use crate::error::{Error, Result};
use crate::linalg::{norm2, sub, DenseMatrix};
use crate::simplex::{block_lu_solve, simplex_m_norm, simplex_mass_matrix, vandermonde_dense};
use crate::vandermonde::{solve, BernsteinVandermonde, SolveMethod};

pub const NEWTON_NOTE: &str = "# newton: not implemented (external algorithm)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Conditioning,
    Equispaced,
    RandomNodes,
    BlockLu,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n_max: usize,
    pub seed: u64,
    pub trials: usize,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            n_max: 20,
            seed: 0,
            trials: 1,
            output_path: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::Precondition("n_max must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Accuracy of one computed solution `c_hat` against the true `c`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolveReport {
    pub rel_err_2: f64,
    pub rel_err_m: f64,
    pub residual_2: f64,
}

impl SolveReport {
    fn accumulate(&mut self, other: &SolveReport, weight: f64) {
        self.rel_err_2 += weight * other.rel_err_2;
        self.rel_err_m += weight * other.rel_err_m;
        self.residual_2 += weight * other.residual_2;
    }
}

fn measure(
    v: &DenseMatrix,
    m_norm: impl Fn(&[f64]) -> Result<f64>,
    c: &[f64],
    c_hat: &[f64],
    b: &[f64],
) -> Result<SolveReport> {
    let diff = sub(c, c_hat);
    Ok(SolveReport {
        rel_err_2: norm2(&diff) / norm2(c),
        rel_err_m: m_norm(&diff)? / m_norm(c)?,
        residual_2: norm2(&sub(&v.matvec(c_hat)?, b)),
    })
}

/// Generator for degree `n`: the stream index separates degrees under one seed.
pub fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    rng
}

fn uniform_vector(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_row(out: &mut String, n: usize, values: &[f64]) {
    out.push_str(&n.to_string());
    for v in values {
        out.push(',');
        out.push_str(&fmt_num(*v));
    }
    out.push('\n');
}

pub fn run_conditioning(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let mut out = String::from("n,k2LD,ub,k2V\n");
    for n in 1..=cfg.n_max {
        let row = conditioning_row(&NodeSet::equispaced(n))?;
        push_row(&mut out, n, &[row.kappa_m_to_2, row.bound, row.kappa_2]);
    }
    Ok(out)
}

const INTERVAL_HEADER: &str =
    "n,BezoutL2err,DFTL2err,LUL2err,BezoutMerr,DFTMerr,LUMerr,Bezoutres,DFTres,LUres\n";

fn run_interval(cfg: &ExperimentConfig, random_nodes: bool) -> Result<String> {
    cfg.validate()?;
    let mut out = format!("{NEWTON_NOTE}\n{INTERVAL_HEADER}");
    let dft = if random_nodes {
        SolveMethod::Dft
    } else {
        SolveMethod::DftEquispaced
    };
    let methods = [SolveMethod::Bezout, dft, SolveMethod::Lu];
    for n in 1..=cfg.n_max {
        let mut rng = rng_for(cfg.seed, n);
        let mass = mass_matrix(n);
        let mut avg = [SolveReport::default(); 3];
        let weight = 1.0 / cfg.trials as f64;
        for _ in 0..cfg.trials {
            let nodes = if random_nodes {
                NodeSet::stratified(n, &mut rng)
            } else {
                NodeSet::equispaced(n)
            };
            let vm = BernsteinVandermonde::new(nodes)?;
            let c = uniform_vector(n + 1, &mut rng);
            let b = vm.matrix().matvec(&c)?;
            for (slot, &method) in avg.iter_mut().zip(&methods) {
                let c_hat = solve(method, &vm, &b)?;
                let r = measure(vm.matrix(), |p| mass.m_norm(p), &c, &c_hat, &b)?;
                slot.accumulate(&r, weight);
            }
        }
        let values: Vec<f64> = [
            avg.map(|r| r.rel_err_2),
            avg.map(|r| r.rel_err_m),
            avg.map(|r| r.residual_2),
        ]
        .concat();
        push_row(&mut out, n, &values);
    }
    Ok(out)
}

pub fn run_equispaced(cfg: &ExperimentConfig) -> Result<String> {
    run_interval(cfg, false)
}

pub fn run_random_nodes(cfg: &ExperimentConfig) -> Result<String> {
    run_interval(cfg, true)
}

pub fn run_block_lu(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let mut out = String::from("n,2dL2err,3dL2err,2dMerr,3dMerr,2dres,3dres\n");
    for n in 1..=cfg.n_max {
        let mut rng = rng_for(cfg.seed, n);
        let mut avg = [SolveReport::default(); 2];
        let weight = 1.0 / cfg.trials as f64;
        for (slot, d) in avg.iter_mut().zip([2usize, 3]) {
            let v = vandermonde_dense(d, n, n);
            let mass = simplex_mass_matrix(d, n);
            for _ in 0..cfg.trials {
                let c = uniform_vector(v.rows(), &mut rng);
                let b = v.matvec(&c)?;
                let c_hat = block_lu_solve(d, n, &b)?;
                let r = measure(&v, |p| simplex_m_norm(&mass, p), &c, &c_hat, &b)?;
                slot.accumulate(&r, weight);
            }
        }
        let values = [
            avg[0].rel_err_2,
            avg[1].rel_err_2,
            avg[0].rel_err_m,
            avg[1].rel_err_m,
            avg[0].residual_2,
            avg[1].residual_2,
        ];
        push_row(&mut out, n, &values);
    }
    Ok(out)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<String> {
    match cfg.experiment {
        Experiment::Conditioning => run_conditioning(cfg),
        Experiment::Equispaced => run_equispaced(cfg),
        Experiment::RandomNodes => run_random_nodes(cfg),
        Experiment::BlockLu => run_block_lu(cfg),
    }
}

/// Runs the experiment and writes the CSV to `cfg.output_path`, or returns
/// it unwritten when no path is configured.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<String> {
    let csv = run_experiment(cfg)?;
    if let Some(path) = &cfg.output_path {
        fs::write(path, &csv).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(csv)
}

/// Parses whitespace-separated reals; errors carry the 1-based line number.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (k, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: k + 1,
                message: format!("`{tok}` is not a real number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: k + 1,
                    message: format!("`{tok}` is not finite"),
                });
            }
            values.push(v);
        }
    }
    Ok(values)
}

pub fn read_reals(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_reals(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSpec {
    Equispaced,
    Stratified { seed: u64 },
    File(PathBuf),
}

impl NodeSpec {
    pub fn parse(spec: &str, seed: u64) -> Self {
        match spec {
            "equispaced" => NodeSpec::Equispaced,
            "stratified" => NodeSpec::Stratified { seed },
            path => NodeSpec::File(PathBuf::from(path)),
        }
    }

    pub fn resolve(&self, n: usize) -> Result<NodeSet> {
        match self {
            NodeSpec::Equispaced => Ok(NodeSet::equispaced(n)),
            NodeSpec::Stratified { seed } => Ok(NodeSet::stratified_seeded(n, *seed)),
            NodeSpec::File(path) => {
                let nodes = read_reals(path)?;
                if nodes.len() != n + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: n + 1,
                        found: nodes.len(),
                    });
                }
                NodeSet::new(nodes)
            }
        }
    }
}

/// Solves `V^n(x) c = b` and formats `c`, one value per line with 17
/// significant digits.
pub fn solve_command(n: usize, method: SolveMethod, nodes: &NodeSpec, rhs: &Path) -> Result<String> {
    if n == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if method == SolveMethod::DftEquispaced && *nodes != NodeSpec::Equispaced {
        return Err(Error::Precondition(
            "method dft-eq requires --nodes equispaced".into(),
        ));
    }
    let node_set = nodes.resolve(n)?;
    let b = read_reals(rhs)?;
    let vm = BernsteinVandermonde::new(node_set)?;
    let c = solve(method, &vm, &b)?;
    let mut out = String::new();
    for v in c {
        writeln!(out, "{}", fmt_num(v)).expect("writing to a String");
    }
    Ok(out)
}
