use super::csv::{format_sig, CsvTable};

/// One verified quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a `verify` run: the configuration used and every check made.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportDocument {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.into(), value.to_string()));
    }

    /// Records `value ≤ tolerance`.
    pub fn bound(&mut self, name: impl Into<String>, value: f64, tolerance: f64, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            detail: detail.into(),
        });
    }

    /// Records a pass/fail outcome without a numeric margin.
    pub fn flag(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            value: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut t = CsvTable::new(&["record", "name", "value", "tolerance", "status", "detail"]);
        let e = String::new;
        t.row(&["command".into(), self.command.clone(), e(), e(), e(), e()]);
        for (k, v) in &self.config {
            t.row(&["config".into(), k.clone(), v.clone(), e(), e(), e()]);
        }
        for c in &self.checks {
            t.row(&[
                "check".into(),
                c.name.clone(),
                format_sig(c.value),
                format_sig(c.tolerance),
                status(c.passed).into(),
                c.detail.clone(),
            ]);
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        t.row(&[
            "summary".into(),
            format!("{passed}/{}", self.checks.len()),
            e(),
            e(),
            status(self.passed()).into(),
            e(),
        ]);
        t.finish()
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
