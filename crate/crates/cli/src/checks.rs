//! Exhaustive sweeps behind `check-bound` and `discover-forbidden`.

use std::collections::BTreeSet;

use anyhow::{bail, Result};
use clap::ValueEnum;
use ddom::bound::{certify_bound_with, BoundOptions};
use ddom::catalog::{claw_free_exceptions, discover_violators, forbidden_set, has_forbidden_component, is_forbidden};
use ddom::enumeration::{enumerate, GenSpec, EXHAUSTIVE_MAX_ORDER};
use ddom::graph::to_graph6;
use ddom::{gamma_d2_value, Graph};
use rayon::prelude::*;

use crate::report::{Counterexample, OrderRow, RunReport};

/// The statements `check-bound` can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statement {
    /// Connected, order at least 5: γ²ᵈ <= (n-1)/2.
    #[value(name = "t1.1")]
    HalfBound,
    /// Connected claw-free: γ²ᵈ <= 2n/5 except K1, P2, P4, C4, H3.
    #[value(name = "t1.2")]
    ClawFree,
    /// Minimum degree 2, order at least 3, no forbidden component:
    /// γ²ᵈ <= ⌊n/3⌋, checked exactly and by the bound engine.
    #[value(name = "t2.6")]
    ThirdBound,
    /// Connected, minimum degree 2: the graphs above n/3 are exactly the
    /// forbidden family.
    #[value(name = "lemma2.2")]
    ForbiddenFamily,
    /// Cycles: γ²ᵈ(C_n) is 2 for n = 4 and ⌈n/4⌉ otherwise.
    #[value(name = "prop2.1")]
    Cycles,
}

impl Statement {
    pub fn default_n_max(self) -> usize {
        match self {
            Statement::Cycles => 24,
            Statement::ForbiddenFamily => 8,
            _ => 9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statement::HalfBound => "t1.1",
            Statement::ClawFree => "t1.2",
            Statement::ThirdBound => "t2.6",
            Statement::ForbiddenFamily => "lemma2.2",
            Statement::Cycles => "prop2.1",
        }
    }

    fn min_order(self) -> usize {
        match self {
            Statement::HalfBound => 5,
            Statement::ClawFree => 1,
            _ => 3,
        }
    }

    fn spec(self, n: usize) -> GenSpec {
        let base = GenSpec::exhaustive(n);
        match self {
            Statement::HalfBound => base.connected(),
            Statement::ClawFree => base.connected().claw_free(),
            Statement::ThirdBound => base.min_degree(2),
            Statement::ForbiddenFamily | Statement::Cycles => base.connected().min_degree(2),
        }
    }

    /// Hypotheses beyond what the generator enforces.
    fn admits(self, g: &Graph) -> bool {
        match self {
            Statement::ThirdBound => has_forbidden_component(g).is_none(),
            Statement::Cycles => g.max_degree() == 2,
            _ => true,
        }
    }
}

pub struct SweepConfig {
    pub n_max: usize,
    pub bound: BoundOptions,
    /// Graphs read from an external stream instead of the generator.
    pub source: Option<Vec<Graph>>,
}

enum Outcome {
    Fine(usize),
    Allowed(usize, String),
    Violation(Option<usize>, String),
}

fn cycle_formula(n: usize) -> usize {
    if n == 4 {
        2
    } else {
        n.div_ceil(4)
    }
}

fn bound_of(which: Statement, n: usize) -> usize {
    match which {
        Statement::HalfBound => (n - 1) / 2,
        Statement::ClawFree => 2 * n / 5,
        Statement::Cycles => cycle_formula(n),
        _ => n / 3,
    }
}

fn evaluate(which: Statement, g: &Graph, opts: BoundOptions) -> Outcome {
    let n = g.order();
    let gamma = gamma_d2_value(g).expect("graphs here are non-empty");
    match which {
        Statement::HalfBound if 2 * gamma > n - 1 => Outcome::Violation(Some(gamma), String::new()),
        Statement::ClawFree if 5 * gamma > 2 * n => {
            match claw_free_exceptions().into_iter().find(|e| e.matches(g)) {
                Some(e) => Outcome::Allowed(gamma, e.name),
                None => Outcome::Violation(Some(gamma), String::new()),
            }
        }
        Statement::ForbiddenFamily if 3 * gamma > n => match is_forbidden(g) {
            Some(name) => Outcome::Allowed(gamma, name.to_string()),
            None => Outcome::Violation(Some(gamma), "not in the catalog".into()),
        },
        Statement::Cycles if gamma != cycle_formula(n) => Outcome::Violation(Some(gamma), "formula mismatch".into()),
        Statement::ThirdBound if 3 * gamma > n => Outcome::Violation(Some(gamma), "exact optimum".into()),
        Statement::ThirdBound => match certify_bound_with(g, opts) {
            Ok(cert) if cert.size <= n / 3 => Outcome::Fine(gamma),
            Ok(cert) => Outcome::Violation(Some(cert.size), "certificate over budget".into()),
            Err(e) => Outcome::Violation(Some(gamma), format!("bound engine: {e}")),
        },
        _ => Outcome::Fine(gamma),
    }
}

/// Runs one statement over every order from its minimum up to `n_max`.
pub fn check_bound(which: Statement, cfg: &SweepConfig) -> Result<RunReport> {
    let exhaustive = which != Statement::Cycles && cfg.source.is_none();
    if exhaustive && cfg.n_max > EXHAUSTIVE_MAX_ORDER {
        bail!("--n-max {} exceeds the enumeration cap of {EXHAUSTIVE_MAX_ORDER}", cfg.n_max);
    }
    let mut report = RunReport::new(format!("check-bound {}", which.name()));
    report.input("n-max", cfg.n_max);
    report.input("source", if cfg.source.is_some() { "external" } else { "internal" });
    if which == Statement::ThirdBound {
        report.input("kernel-cap", cfg.bound.kernel_cap);
        report.input("rules", if cfg.bound.extended { "extended" } else { "core" });
    }
    for n in which.min_order()..=cfg.n_max {
        let graphs: Vec<Graph> = match (&cfg.source, which) {
            (Some(list), _) => list.iter().filter(|g| g.order() == n).cloned().collect(),
            (None, Statement::Cycles) => vec![Graph::cycle(n)],
            (None, _) => enumerate(&which.spec(n))?,
        };
        let spec = which.spec(n);
        let eligible: Vec<&Graph> = graphs.iter().filter(|g| spec.accepts(g) && which.admits(g)).collect();
        let outcomes: Vec<(String, Outcome)> =
            eligible.par_iter().map(|g| (to_graph6(g), evaluate(which, g, cfg.bound))).collect();
        let mut row = OrderRow { n, graphs: graphs.len(), checked: eligible.len(), ..OrderRow::default() };
        let (mut allowed, mut bad) = (Vec::new(), Vec::new());
        for (graph6, outcome) in outcomes {
            let bound = bound_of(which, n);
            match outcome {
                Outcome::Fine(v) => row.max_value = row.max_value.max(v),
                Outcome::Allowed(v, note) => {
                    row.max_value = row.max_value.max(v);
                    allowed.push(Counterexample { graph6, value: Some(v), bound, note });
                }
                Outcome::Violation(v, note) => {
                    row.max_value = row.max_value.max(v.unwrap_or(0));
                    row.violations += 1;
                    bad.push(Counterexample { graph6, value: v, bound, note });
                }
            }
        }
        allowed.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        bad.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        report.expected.extend(allowed);
        report.counterexamples.extend(bad);
        report.rows.push(row);
    }
    if which == Statement::ForbiddenFamily && cfg.source.is_none() {
        let found: BTreeSet<&str> = report.expected.iter().map(|c| c.note.as_str()).collect();
        let missing = forbidden_set().iter().filter(|e| e.order() <= cfg.n_max && !found.contains(e.name.as_str()));
        let missing: Vec<Counterexample> = missing
            .map(|e| Counterexample {
                graph6: to_graph6(&e.graph),
                value: None,
                bound: e.order() / 3,
                note: format!("catalog entry {} was not rediscovered", e.name),
            })
            .collect();
        report.counterexamples.extend(missing);
    }
    Ok(report)
}

/// Rediscovers the violators by enumeration and matches them against the
/// active catalog. Returns the report and the discovered graphs.
pub fn discover_forbidden(n_max: usize) -> Result<(RunReport, Vec<Graph>)> {
    let mut report = RunReport::new("discover-forbidden");
    report.input("n-max", n_max);
    let found = discover_violators(n_max)?;
    let mut seen = BTreeSet::new();
    for g in &found {
        let value = gamma_d2_value(g).ok();
        let c = Counterexample { graph6: to_graph6(g), value, bound: g.order() / 3, note: String::new() };
        match is_forbidden(g) {
            Some(name) => {
                seen.insert(name);
                report.expected.push(Counterexample { note: name.to_string(), ..c });
            }
            None => report.counterexamples.push(Counterexample { note: "not in the catalog".into(), ..c }),
        }
    }
    for e in forbidden_set().iter().filter(|e| e.order() <= n_max && !seen.contains(e.name.as_str())) {
        report.counterexamples.push(Counterexample {
            graph6: to_graph6(&e.graph),
            value: None,
            bound: e.order() / 3,
            note: format!("catalog entry {} was not rediscovered", e.name),
        });
    }
    Ok((report, found))
}
