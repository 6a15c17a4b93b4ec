//! Verification reports shared by every suite.

use crate::coeff::RatFunc;
use crate::vertex::{AlgebraHandle, FieldExpr, OpeResult};
use crate::Result;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoleRow {
    pub order: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pole_tables: Vec<PoleRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub context: String,
    pub checks: Vec<Check>,
    pub wall_time_ms: u128,
    pub version: &'static str,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(suite: &str, context: impl Into<String>) -> Self {
        Report {
            suite: suite.to_string(),
            context: context.into(),
            checks: Vec::new(),
            wall_time_ms: 0,
            version: env!("CARGO_PKG_VERSION"),
            started: Some(Instant::now()),
        }
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_ms = t.elapsed().as_millis();
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn push_bool(&mut self, id: impl Into<String>, ok: bool, detail: Option<String>) {
        self.push(Check { id: id.into(), status: if ok { Status::Pass } else { Status::Fail }, pole_tables: vec![], detail });
    }

    pub fn skip(&mut self, id: impl Into<String>, why: &str) {
        self.push(Check { id: id.into(), status: Status::Skipped, pole_tables: vec![], detail: Some(why.to_string()) });
    }

    /// Records an error as a failed check instead of aborting the suite.
    pub fn push_result(&mut self, id: impl Into<String>, r: Result<()>) {
        match r {
            Ok(()) => self.push_bool(id, true, None),
            Err(e) => self.push_bool(id, false, Some(e.to_string())),
        }
    }

    pub fn push_eq(&mut self, id: impl Into<String>, lhs: &FieldExpr, rhs: &FieldExpr) {
        let ok = lhs.try_sub(rhs).map(|d| d.is_zero()).unwrap_or(false);
        let detail = (!ok).then(|| format!("lhs = {lhs}\nrhs = {rhs}"));
        self.push_bool(id, ok, detail);
    }

    pub fn push_scalar(&mut self, id: impl Into<String>, lhs: &RatFunc, rhs: &RatFunc) {
        let ok = lhs == rhs;
        self.push_bool(id, ok, (!ok).then(|| format!("lhs = {lhs}\nrhs = {rhs}")));
    }

    /// Compares a computed OPE with an expected pole table (pole order, field); absent poles must vanish.
    pub fn push_ope(&mut self, id: impl Into<String>, got: &OpeResult, expected: &[(u32, FieldExpr)]) {
        self.push(ope_check(id.into(), got, expected));
    }

    /// Computes `a(z)b(w)` and compares it with `expected`.
    pub fn check_ope(&mut self, id: impl Into<String>, alg: &AlgebraHandle, a: &FieldExpr, b: &FieldExpr, expected: &[(u32, FieldExpr)]) {
        let id = id.into();
        match alg.ope(a, b) {
            Ok(got) => self.push_ope(id, &got, expected),
            Err(e) => self.push_bool(id, false, Some(e.to_string())),
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

pub fn ope_check(id: String, got: &OpeResult, expected: &[(u32, FieldExpr)]) -> Check {
    let orders: BTreeSet<u32> = got.poles.keys().copied().chain(expected.iter().map(|e| e.0)).collect();
    let mut ok = true;
    let mut rows = Vec::new();
    for &o in orders.iter().rev() {
        let want: Vec<&FieldExpr> = expected.iter().filter(|e| e.0 == o).map(|e| &e.1).collect();
        let lhs = got.pole(o);
        let same = match (lhs, want.as_slice()) {
            (None, []) => true,
            (None, [w]) => w.is_zero(),
            (Some(l), []) => l.is_zero(),
            (Some(l), [w]) => l.try_sub(w).map(|d| d.is_zero()).unwrap_or(false),
            _ => false,
        };
        ok &= same;
        rows.push(PoleRow {
            order: o,
            lhs: lhs.map_or("0".into(), |l| l.to_string()),
            rhs: want.first().map_or("0".into(), |w| w.to_string()),
        });
    }
    Check { id, status: if ok { Status::Pass } else { Status::Fail }, pole_tables: if ok { vec![] } else { rows }, detail: None }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} [{}]", self.suite, self.context)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            writeln!(f, "  {tag}  {}", c.id)?;
            for r in &c.pole_tables {
                writeln!(f, "        pole {}: got {} | want {}", r.order, r.lhs, r.rhs)?;
            }
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    writeln!(f, "        {line}")?;
                }
            }
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        write!(f, "{pass}/{} passed in {} ms", self.checks.len(), self.wall_time_ms)
    }
}
