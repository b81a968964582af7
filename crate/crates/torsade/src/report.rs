//! Claim reports and deterministic output records.
//!
//! Verification operations return a `TwistReport`: a claim identifier plus
//! one outcome per checked instance. A report passes iff every instance
//! carries an isomorphism witness. The CLI renders reports as
//! `CLAIM <id> PASS|FAIL instances=<n>` lines, with `WITNESS` lines naming
//! the offending instance and (γ, point) pair on failure.

use std::fmt::Write as _;

/// Outcome of one checked instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceOutcome {
    Pass {
        instance: String,
        /// A point map witnessing the claimed isomorphism (may be empty for
        /// purely boolean checks).
        witness: Vec<usize>,
    },
    Fail {
        instance: String,
        gamma: usize,
        point: usize,
    },
}

/// A claim with its per-instance outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub claim: String,
    pub outcomes: Vec<InstanceOutcome>,
}

impl TwistReport {
    pub fn new(claim: &str) -> Self {
        TwistReport { claim: claim.to_string(), outcomes: Vec::new() }
    }

    pub fn pass(&mut self, instance: String, witness: Vec<usize>) {
        self.outcomes.push(InstanceOutcome::Pass { instance, witness });
    }

    pub fn fail(&mut self, instance: String, gamma: usize, point: usize) {
        self.outcomes.push(InstanceOutcome::Fail { instance, gamma, point });
    }

    pub fn instances(&self) -> usize {
        self.outcomes.len()
    }

    pub fn passing(&self) -> bool {
        self.outcomes.iter().all(|o| matches!(o, InstanceOutcome::Pass { .. }))
    }

    /// Merge another report's outcomes into this one.
    pub fn absorb(&mut self, other: TwistReport) {
        self.outcomes.extend(other.outcomes);
    }

    /// Render as claim lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let status = if self.passing() { "PASS" } else { "FAIL" };
        writeln!(out, "CLAIM {} {} instances={}", self.claim, status, self.instances()).unwrap();
        for o in &self.outcomes {
            if let InstanceOutcome::Fail { instance, gamma, point } = o {
                writeln!(out, "WITNESS {instance} gamma={gamma} point={point}").unwrap();
            }
        }
        out
    }
}

/// Line-oriented report writer with a `#`-prefixed metadata header.
pub struct ReportWriter {
    buf: String,
}

impl ReportWriter {
    pub fn new(command: &str) -> Self {
        let mut buf = String::new();
        writeln!(buf, "# torsade {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(buf, "# command {command}").unwrap();
        ReportWriter { buf }
    }

    pub fn meta(&mut self, key: &str, value: &str) {
        writeln!(self.buf, "# {key} {value}").unwrap();
    }

    pub fn input_digest(&mut self, role: &str, path: &str, bytes: &[u8]) {
        writeln!(self.buf, "# input {role}={path} sha256={}", sha256_hex(bytes)).unwrap();
    }

    pub fn record(&mut self, line: &str) {
        writeln!(self.buf, "{line}").unwrap();
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

/// Join identifiers for machine-readable fields: `0:3:1`.
pub fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(":")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes_only_with_all_witnesses() {
        let mut r = TwistReport::new("demo");
        r.pass("a".into(), vec![0, 1]);
        assert!(r.passing());
        r.fail("b".into(), 1, 3);
        assert!(!r.passing());
        let rendered = r.render();
        assert!(rendered.contains("CLAIM demo FAIL instances=2"));
        assert!(rendered.contains("WITNESS b gamma=1 point=3"));
    }

    #[test]
    fn digests_are_stable() {
        assert_eq!(
            sha256_hex(b"torsade"),
            sha256_hex(b"torsade"),
        );
        assert_ne!(sha256_hex(b"a"), sha256_hex(b"b"));
    }
}
