//! Deterministic corpus scanner: generates labeled graphs (exhaustively
//! or seeded-randomly), certifies everything with at most two holes,
//! cross-checks against the exact solver, and emits a stable text table.
//!
//! Instance processing is embarrassingly parallel; with the `parallel`
//! feature the rows are computed on a rayon pool and reassembled in
//! instance order, so output bytes never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::certify_with;
use crate::corpus::{exhaustive_graphs, random_graph};
use crate::exact::{exact_k, SolveBudget, SolveError};
use crate::graph::Graph;
use crate::hole::enumerate_holes;
use crate::verify::verify_certificate;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n_lo: usize,
    pub n_hi: usize,
    pub mode: ScanMode,
    pub samples: usize,
    pub edge_probability: f64,
    pub seed: u64,
    pub hole_cap: usize,
    pub budget: SolveBudget,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        let fail = |msg: String| Err(ScanError::InvalidConfig(msg));
        if self.n_lo == 0 || self.n_lo > self.n_hi {
            return fail(format!("vertex range {}..{} is empty", self.n_lo, self.n_hi));
        }
        if self.hole_cap == 0 {
            return fail("hole cap must be positive".into());
        }
        match self.mode {
            ScanMode::Exhaustive => {
                if self.n_hi > 6 {
                    return fail("exhaustive mode is limited to n <= 6".into());
                }
            }
            ScanMode::Random => {
                if self.samples == 0 {
                    return fail("random mode needs at least one sample".into());
                }
                if !(0.0..=1.0).contains(&self.edge_probability) {
                    return fail(format!(
                        "edge probability {} outside [0, 1]",
                        self.edge_probability
                    ));
                }
                if self.n_hi > 16 {
                    return fail("random mode is limited to n <= 16 (exact-solver bound)".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct CertCell {
    k: usize,
    fallback: bool,
    accepted: bool,
}

#[derive(Debug, Clone)]
enum ExactCell {
    Value(usize),
    OutOfBudget,
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    idx: usize,
    n: usize,
    m: usize,
    holes: usize,
    capped: bool,
    cert: Option<CertCell>,
    cert_out_of_budget: bool,
    exact: ExactCell,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub text: String,
    pub violations: usize,
    pub fallbacks: usize,
    pub budget_exhausted: usize,
}

fn scan_row(idx: usize, g: &Graph, cfg: &ScanConfig) -> ScanRow {
    let (holes, capped) = enumerate_holes(g, cfg.hole_cap);
    let hole_count = holes.len();

    let mut cert = None;
    let mut cert_out_of_budget = false;
    if !capped && hole_count <= 2 {
        match certify_with(g, &cfg.budget) {
            Ok(c) => {
                let accepted = verify_certificate(g, &c).is_accept();
                cert = Some(CertCell { k: c.k, fallback: c.fallback_used, accepted });
            }
            Err(_) => cert_out_of_budget = true,
        }
    }

    let exact = match exact_k(g, &cfg.budget) {
        Ok(w) => ExactCell::Value(w.k),
        Err(SolveError::BudgetExhausted(_) | SolveError::MaxKExceeded(_)) => {
            ExactCell::OutOfBudget
        }
        Err(SolveError::TooLarge(msg)) => {
            unreachable!("config validation bounds instance size: {msg}")
        }
    };

    ScanRow {
        idx,
        n: g.vertex_count(),
        m: g.edge_count(),
        holes: hole_count,
        capped,
        cert,
        cert_out_of_budget,
        exact,
    }
}

/// Sequential row computation; always compiled, so benchmarks can compare
/// it against the parallel path.
pub fn process_rows_seq(instances: &[Graph], cfg: &ScanConfig) -> Vec<ScanRow> {
    instances.iter().enumerate().map(|(idx, g)| scan_row(idx, g, cfg)).collect()
}

#[cfg(feature = "parallel")]
pub fn process_rows_par(instances: &[Graph], cfg: &ScanConfig) -> Vec<ScanRow> {
    instances.par_iter().enumerate().map(|(idx, g)| scan_row(idx, g, cfg)).collect()
}

fn process_rows(instances: &[Graph], cfg: &ScanConfig) -> Vec<ScanRow> {
    #[cfg(feature = "parallel")]
    {
        process_rows_par(instances, cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        process_rows_seq(instances, cfg)
    }
}

/// Generates the instance list for a validated config. Deterministic:
/// exhaustive masks in order, or one seeded stream of random draws.
pub fn instances(cfg: &ScanConfig) -> Vec<Graph> {
    let mut out = Vec::new();
    match cfg.mode {
        ScanMode::Exhaustive => {
            for n in cfg.n_lo..=cfg.n_hi {
                out.extend(exhaustive_graphs(n));
            }
        }
        ScanMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for n in cfg.n_lo..=cfg.n_hi {
                for _ in 0..cfg.samples {
                    out.push(random_graph(n, cfg.edge_probability, &mut rng));
                }
            }
        }
    }
    out
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport, ScanError> {
    cfg.validate()?;
    let instances = instances(cfg);
    let rows = process_rows(&instances, cfg);
    Ok(render(cfg, &rows))
}

fn render(cfg: &ScanConfig, rows: &[ScanRow]) -> ScanReport {
    let mut text = match cfg.mode {
        ScanMode::Exhaustive => format!(
            "scan n={}..{} mode=exhaustive cap={}\n",
            cfg.n_lo, cfg.n_hi, cfg.hole_cap
        ),
        ScanMode::Random => format!(
            "scan n={}..{} mode=random cap={} samples={} p={} seed={}\n",
            cfg.n_lo, cfg.n_hi, cfg.hole_cap, cfg.samples, cfg.edge_probability, cfg.seed
        ),
    };

    let mut violations = 0usize;
    let mut fallbacks = 0usize;
    let mut budget_exhausted = 0usize;
    let mut dist: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();

    for row in rows {
        let holes_text = if row.capped {
            format!(">{}", row.holes - 1)
        } else {
            row.holes.to_string()
        };
        let (cert_text, fallback_text) = match (&row.cert, row.cert_out_of_budget) {
            (Some(c), _) => (c.k.to_string(), u8::from(c.fallback).to_string()),
            (None, _) => ("-".to_owned(), "-".to_owned()),
        };
        let exact_text = match row.exact {
            ExactCell::Value(k) => k.to_string(),
            ExactCell::OutOfBudget => "-".to_owned(),
        };
        text.push_str(&format!(
            "idx={} n={} m={} holes={} cert_k={} fallback={} exact_k={}\n",
            row.idx, row.n, row.m, holes_text, cert_text, fallback_text, exact_text
        ));

        if let ExactCell::Value(k) = row.exact {
            if !row.capped {
                dist.entry((row.holes, k)).and_modify(|c| *c += 1).or_insert(1);
            }
        }

        let in_scope = !row.capped && row.holes <= 2;
        match &row.exact {
            ExactCell::Value(k) => {
                if in_scope && *k > row.holes + 1 {
                    violations += 1;
                }
                if let Some(c) = &row.cert {
                    if *k > c.k {
                        violations += 1;
                    }
                }
            }
            ExactCell::OutOfBudget => budget_exhausted += 1,
        }
        if let Some(c) = &row.cert {
            if !c.accepted || (!c.fallback && c.k > row.holes + 1) {
                violations += 1;
            }
            if c.fallback {
                fallbacks += 1;
            }
        }
        if row.cert_out_of_budget {
            budget_exhausted += 1;
        }
    }

    for ((holes, k), count) in &dist {
        text.push_str(&format!("dist holes={holes} exact_k={k} count={count}\n"));
    }
    text.push_str(&format!("violations={violations}\n"));
    text.push_str(&format!("fallbacks={fallbacks}\n"));
    text.push_str(&format!("budget_exhausted={budget_exhausted}\n"));

    ScanReport { text, violations, fallbacks, budget_exhausted }
}
