//! Axiom reports: one entry per law, each listing the first few violating
//! index tuples (in lexicographic order) with their residual vectors.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::scalar::Scalar;
use crate::tensor::for_each_index;

/// Default cap on violations recorded per law.
pub const DEFAULT_VIOLATION_CAP: usize = 16;

static VIOLATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_VIOLATION_CAP);

/// Sets the per-law violation cap for every subsequent check.
pub fn set_violation_cap(cap: usize) {
    VIOLATION_CAP.store(cap, Ordering::Relaxed);
}

pub fn violation_cap() -> usize {
    VIOLATION_CAP.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// Labelled index tuple, e.g. `alpha=0 beta=1 u=e1 v=e0`.
    pub at: String,
    pub indices: Vec<usize>,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawOutcome {
    pub law: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    /// Powers of `t` with a nonzero residual coefficient somewhere. Always
    /// `{0}` or empty for rational structures.
    pub failing_orders: BTreeSet<usize>,
    pub violations: Vec<Violation>,
}

impl LawOutcome {
    pub fn fails_at_order(&self, order: usize) -> bool {
        self.failing_orders.contains(&order)
    }

    /// A law decided outside the tuple harness (e.g. a membership solve).
    pub fn verdict(law: impl Into<String>, passed: bool) -> Self {
        LawOutcome {
            law: law.into(),
            passed,
            checked: 1,
            failures: usize::from(!passed),
            failing_orders: if passed { BTreeSet::new() } else { BTreeSet::from([0]) },
            violations: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subject: String,
    pub passed: bool,
    pub laws: Vec<LawOutcome>,
    /// Reported alongside the laws but never part of the verdict.
    pub flags: Vec<LawOutcome>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            passed: true,
            laws: Vec::new(),
            flags: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, law: LawOutcome) {
        self.passed &= law.passed;
        self.laws.push(law);
    }

    pub fn extend_laws(&mut self, laws: impl IntoIterator<Item = LawOutcome>) {
        for law in laws {
            self.push(law);
        }
    }

    pub fn flag(&mut self, law: LawOutcome) {
        self.flags.push(law);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends every law of `other`, prefixing its names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut law in other.laws {
            law.law = format!("{prefix}: {}", law.law);
            self.push(law);
        }
        for mut law in other.flags {
            law.law = format!("{prefix}: {}", law.law);
            self.flags.push(law);
        }
        self.notes.extend(other.notes);
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn failing_laws(&self) -> Vec<&str> {
        self.laws.iter().filter(|l| !l.passed).map(|l| l.law.as_str()).collect()
    }

    /// True when no law has a nonzero residual coefficient at any order
    /// strictly below `order`.
    pub fn passes_below_order(&self, order: usize) -> bool {
        self.laws.iter().all(|l| l.failing_orders.iter().all(|&o| o >= order))
    }

    pub fn fails_at_order(&self, order: usize) -> bool {
        self.laws.iter().any(|l| l.fails_at_order(order))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.passed { "PASS" } else { "FAIL" })?;
        for law in &self.laws {
            writeln!(
                f,
                "  [{}] {} ({} checked, {} failing)",
                if law.passed { "pass" } else { "FAIL" },
                law.law,
                law.checked,
                law.failures
            )?;
            for v in &law.violations {
                writeln!(f, "      at {}: residual ({})", v.at, v.residual.join(", "))?;
            }
        }
        for law in &self.flags {
            writeln!(
                f,
                "  [info:{}] {} ({} checked, {} nonzero)",
                if law.passed { "zero" } else { "nonzero" },
                law.law,
                law.checked,
                law.failures
            )?;
            for v in &law.violations {
                writeln!(f, "      at {}: residual ({})", v.at, v.residual.join(", "))?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// One axis of a law's quantifier: a label and an extent. Basis axes
/// print as `e{i}`, semigroup axes as plain indices.
#[derive(Clone, Copy, Debug)]
pub struct Axis {
    pub label: &'static str,
    pub extent: usize,
    pub basis: bool,
}

impl Axis {
    pub fn basis(label: &'static str, extent: usize) -> Self {
        Axis {
            label,
            extent,
            basis: true,
        }
    }

    pub fn omega(label: &'static str, extent: usize) -> Self {
        Axis {
            label,
            extent,
            basis: false,
        }
    }
}

/// Evaluates `residual` on every index tuple over `axes` (lexicographic
/// order) and records where it is nonzero.
pub fn check_law<S: Scalar>(
    law: impl Into<String>,
    axes: &[Axis],
    mut residual: impl FnMut(&[usize]) -> Vec<S>,
) -> LawOutcome {
    let cap = violation_cap();
    let extents: Vec<usize> = axes.iter().map(|a| a.extent).collect();
    let mut out = LawOutcome {
        law: law.into(),
        passed: true,
        checked: 0,
        failures: 0,
        failing_orders: BTreeSet::new(),
        violations: Vec::new(),
    };
    for_each_index(&extents, |idx| {
        out.checked += 1;
        let r = residual(idx);
        if r.iter().all(S::is_zero) {
            return;
        }
        out.passed = false;
        out.failures += 1;
        for x in &r {
            for (o, c) in x.coefficients().iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    out.failing_orders.insert(o);
                }
            }
        }
        if out.violations.len() < cap {
            out.violations.push(Violation {
                at: label_tuple(axes, idx),
                indices: idx.to_vec(),
                residual: r.iter().map(ToString::to_string).collect(),
            });
        }
    });
    out
}

fn label_tuple(axes: &[Axis], idx: &[usize]) -> String {
    axes.iter()
        .zip(idx)
        .map(|(a, &i)| {
            if a.basis {
                format!("{}=e{}", a.label, i)
            } else {
                format!("{}={}", a.label, i)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Residual `lhs - rhs` of two vectors.
pub fn residual<S: Scalar>(lhs: Vec<S>, rhs: Vec<S>) -> Vec<S> {
    lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect()
}
