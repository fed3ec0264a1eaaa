use std::fmt;

use serde::Serialize;

const MAX_COUNTEREXAMPLES: usize = 32;

/// Outcome of a check: a verdict plus the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<String>,
    /// Counterexamples dropped after the first few were recorded.
    pub omitted: usize,
    pub notes: Vec<String>,
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            omitted: 0,
            notes: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.passed = false;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(counterexample.into());
        } else {
            self.omitted += 1;
        }
    }

    pub fn witness(&mut self, witness: impl Into<String>) {
        self.witnesses.push(witness.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Report {
        self.check = check.into();
        self
    }

    pub fn push_child(&mut self, child: Report) {
        self.passed &= child.passed;
        self.children.push(child);
    }

    pub fn with_child(mut self, child: Report) -> Self {
        self.push_child(child);
        self
    }

    /// Number of counterexamples found, including omitted ones, over the whole tree.
    pub fn failure_count(&self) -> usize {
        self.counterexamples.len()
            + self.omitted
            + self.children.iter().map(Report::failure_count).sum::<usize>()
    }

    /// First counterexample in depth-first order.
    pub fn first_counterexample(&self) -> Option<&str> {
        self.counterexamples
            .first()
            .map(String::as_str)
            .or_else(|| self.children.iter().find_map(Report::first_counterexample))
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let verdict = if self.passed { "pass" } else { "FAIL" };
        writeln!(f, "{pad}{}: {verdict}", self.check)?;
        for w in &self.witnesses {
            writeln!(f, "{pad}  witness: {w}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "{pad}  counterexample: {c}")?;
        }
        if self.omitted > 0 {
            writeln!(f, "{pad}  ({} more counterexamples omitted)", self.omitted)?;
        }
        for n in &self.notes {
            writeln!(f, "{pad}  note: {n}")?;
        }
        for c in &self.children {
            c.render(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}
