//! Report structure shared by every subcommand: an ordered list of named
//! checks, each with a verdict, an optional residual, and free-form details.
//! Exit status 0 means every check passed; 1 means a mathematical check
//! failed; 2 (raised before a report exists) means bad input.

use serde::Serialize;

#[derive(Serialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub details: String,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub results: Vec<CheckResult>,
    pub status: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(command: impl Into<String>, instance: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            instance: instance.into(),
            results: Vec::new(),
            status: 0,
        }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        residual: Option<f64>,
        details: impl Into<String>,
    ) {
        self.results.push(CheckResult {
            check: name.into(),
            pass,
            residual,
            details: details.into(),
        });
        if !pass {
            self.status = 1;
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!("command:  {}\n", self.command));
                out.push_str(&format!("instance: {}\n", self.instance));
                for r in &self.results {
                    let verdict = if r.pass { "PASS" } else { "FAIL" };
                    let residual = match r.residual {
                        Some(v) => format!("  residual={v:.2e}"),
                        None => String::new(),
                    };
                    let details = if r.details.is_empty() {
                        String::new()
                    } else {
                        format!("  ({})", r.details)
                    };
                    out.push_str(&format!("  [{verdict}] {}{residual}{details}\n", r.check));
                }
                out.push_str(&format!("status:   {}\n", self.status));
                out
            }
        }
    }
}
