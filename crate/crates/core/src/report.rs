//! Line-oriented verification reports: `STATUS <check> <location> <details>`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Suspicious but not refuting; fatal under `--strict`.
    Warn,
    /// Data lines such as solutions and candidate lists.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub status: Status,
    pub check: String,
    pub location: String,
    pub details: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.status, self.check, self.location)?;
        if !self.details.is_empty() {
            write!(f, " {}", self.details)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        status: Status,
        check: &str,
        location: &str,
        details: impl Into<String>,
    ) {
        let location = if location.is_empty() {
            "-".to_string()
        } else {
            location.replace(' ', "_")
        };
        self.lines.push(ReportLine {
            status,
            check: check.to_string(),
            location,
            details: details.into(),
        });
    }

    pub fn pass(&mut self, check: &str, location: &str, details: impl Into<String>) {
        self.push(Status::Pass, check, location, details);
    }

    pub fn fail(&mut self, check: &str, location: &str, details: impl Into<String>) {
        self.push(Status::Fail, check, location, details);
    }

    pub fn warn(&mut self, check: &str, location: &str, details: impl Into<String>) {
        self.push(Status::Warn, check, location, details);
    }

    pub fn info(&mut self, check: &str, location: &str, details: impl Into<String>) {
        self.push(Status::Info, check, location, details);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn failures(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn warnings(&self) -> usize {
        self.count(Status::Warn)
    }

    pub fn count(&self, s: Status) -> usize {
        self.lines.iter().filter(|l| l.status == s).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
