use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// Tab-separated lines.
    Records,
}

/// Aggregate over the graphs of one order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderRow {
    pub n: usize,
    pub graphs: usize,
    /// Graphs satisfying the hypotheses and therefore checked.
    pub checked: usize,
    /// Largest γ²ᵈ (or certificate size) seen.
    pub max_value: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph6: String,
    pub value: Option<usize>,
    pub bound: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub rows: Vec<OrderRow>,
    /// Violations the statement allows, such as the claw-free exceptions.
    pub expected: Vec<Counterexample>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> RunReport {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            rows: Vec::new(),
            expected: Vec::new(),
            counterexamples: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        let value = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        match format {
            Format::Text => {
                let _ = writeln!(s, "command: {}", self.command);
                for (k, v) in &self.inputs {
                    let _ = writeln!(s, "  {k} = {v}");
                }
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "n={:<3} graphs={:<9} checked={:<9} max={:<3} violations={}",
                        r.n, r.graphs, r.checked, r.max_value, r.violations
                    );
                }
                for c in &self.expected {
                    let _ = writeln!(s, "expected {} value={} bound={} {}", c.graph6, value(c.value), c.bound, c.note);
                }
                for c in &self.counterexamples {
                    let _ = writeln!(s, "COUNTEREXAMPLE {} value={} bound={} {}", c.graph6, value(c.value), c.bound, c.note);
                }
                let _ = writeln!(s, "counterexamples: {}", self.counterexamples.len());
                let _ = writeln!(s, "wall time: {:.3}s", self.elapsed.as_secs_f64());
                let _ = writeln!(s, "status: {}", if self.ok() { "ok" } else { "FAILED" });
            }
            Format::Records => {
                let _ = writeln!(s, "command\t{}", self.command);
                for (k, v) in &self.inputs {
                    let _ = writeln!(s, "input\t{k}\t{v}");
                }
                for r in &self.rows {
                    let _ = writeln!(s, "order\t{}\t{}\t{}\t{}\t{}", r.n, r.graphs, r.checked, r.max_value, r.violations);
                }
                for (tag, list) in [("exception", &self.expected), ("counterexample", &self.counterexamples)] {
                    for c in list {
                        let _ = writeln!(s, "{tag}\t{}\t{}\t{}\t{}", c.graph6, value(c.value), c.bound, c.note);
                    }
                }
                let _ = writeln!(
                    s,
                    "summary\t{}\t{:.3}\t{}",
                    self.counterexamples.len(),
                    self.elapsed.as_secs_f64(),
                    if self.ok() { "ok" } else { "failed" }
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_tab_separated() {
        let mut r = RunReport::new("check-bound t1.1");
        r.input("n-max", 6);
        r.rows.push(OrderRow { n: 5, graphs: 21, checked: 21, max_value: 2, violations: 0 });
        let text = r.render(Format::Records);
        assert!(text.contains("input\tn-max\t6\n"));
        assert!(text.contains("order\t5\t21\t21\t2\t0\n"));
        assert!(text.ends_with("ok\n"));
        r.counterexamples.push(Counterexample { graph6: "Cl".into(), value: Some(2), bound: 1, note: String::new() });
        assert!(!r.ok());
        assert!(r.render(Format::Text).contains("COUNTEREXAMPLE Cl value=2 bound=1"));
    }
}
