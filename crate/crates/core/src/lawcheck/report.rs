use std::fmt;

use crate::matcat::Matrix;

/// What a check is supposed to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// The law should hold.
    Holds,
    /// The law should fail; a pass is a bug in the harness or the model.
    Fails,
    /// Reported only.
    Info,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawEntry {
    pub name: String,
    /// The equation being checked, in words.
    pub anchor: String,
    pub expectation: Expectation,
    /// True iff the largest observed deviation is within tolerance.
    pub pass: bool,
    pub max_deviation: f64,
    /// The first instance that failed, if any.
    pub witness: Option<String>,
}

impl LawEntry {
    pub fn as_expected(&self) -> bool {
        match self.expectation {
            Expectation::Holds => self.pass,
            Expectation::Fails => !self.pass,
            Expectation::Info => true,
        }
    }

    fn status(&self) -> &'static str {
        match (self.expectation, self.pass) {
            (Expectation::Holds, true) => "PASS",
            (Expectation::Holds, false) => "FAIL",
            (Expectation::Fails, false) => "XFAIL",
            (Expectation::Fails, true) => "XPASS",
            (Expectation::Info, true) => "INFO",
            (Expectation::Info, false) => "INFO*",
        }
    }
}

/// Results of a batch of law checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
    pub seed: Option<u64>,
    pub tolerance: f64,
}

impl LawReport {
    pub fn new(tolerance: f64) -> Self {
        LawReport {
            entries: Vec::new(),
            seed: None,
            tolerance,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, entry: LawEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.entries.extend(other.entries);
    }

    /// Merges entries of the same name: the worst deviation wins and the
    /// first witness is kept. New names are appended in order.
    pub fn merge(&mut self, other: LawReport) {
        for e in other.entries {
            match self.entries.iter_mut().find(|x| x.name == e.name) {
                Some(x) => {
                    x.pass &= e.pass;
                    if e.max_deviation > x.max_deviation || e.max_deviation.is_nan() {
                        x.max_deviation = e.max_deviation;
                    }
                    if x.witness.is_none() {
                        x.witness = e.witness;
                    }
                }
                None => self.entries.push(e),
            }
        }
        if self.seed.is_none() {
            self.seed = other.seed;
        }
        self.tolerance = self.tolerance.max(other.tolerance);
    }

    /// Prepends `prefix.` to every entry name.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for e in &mut self.entries {
            e.name = format!("{prefix}.{}", e.name);
        }
        self
    }

    pub fn entry(&self, name: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn all_as_expected(&self) -> bool {
        self.entries.iter().all(LawEntry::as_expected)
    }

    /// True iff every entry expected to hold does.
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.expectation == Expectation::Holds)
            .all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| !e.as_expected())
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
        for e in &self.entries {
            write!(
                f,
                "{:<6} {:<width$}  dev={:<10.3e}  {}",
                e.status(),
                e.name,
                e.max_deviation,
                e.anchor,
                width = width
            )?;
            if let Some(w) = &e.witness {
                if !e.as_expected() || e.expectation != Expectation::Holds {
                    write!(f, "  [{w}]")?;
                }
            }
            writeln!(f)?;
        }
        let bad = self.failures().count();
        write!(
            f,
            "{} checks, {} unexpected, tolerance {:e}",
            self.entries.len(),
            bad,
            self.tolerance
        )?;
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        writeln!(f)
    }
}

/// Accumulates the worst deviation of one law over many instances.
#[derive(Debug, Clone)]
pub struct Tally {
    name: String,
    anchor: String,
    expectation: Expectation,
    tolerance: f64,
    max_deviation: f64,
    witness: Option<String>,
}

impl Tally {
    pub fn new(name: &str, anchor: &str, expectation: Expectation, tolerance: f64) -> Self {
        Tally {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expectation,
            tolerance,
            max_deviation: 0.0,
            witness: None,
        }
    }

    /// Records one instance with the given deviation.
    pub fn record(&mut self, deviation: f64, instance: impl FnOnce() -> String) {
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        if deviation > self.tolerance && self.witness.is_none() {
            self.witness = Some(instance());
        }
        if deviation > self.max_deviation {
            self.max_deviation = deviation;
        }
    }

    /// Records `lhs == rhs` for one instance.
    pub fn compare(&mut self, lhs: &Matrix, rhs: &Matrix, instance: impl FnOnce() -> String) {
        self.record(lhs.max_deviation(rhs), instance);
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn finish(self) -> LawEntry {
        LawEntry {
            pass: self.max_deviation <= self.tolerance,
            name: self.name,
            anchor: self.anchor,
            expectation: self.expectation,
            max_deviation: self.max_deviation,
            witness: self.witness,
        }
    }
}
