//! Exhaustive comparison of a netlist against a reference function.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::{EvalError, Program};
use super::Netlist;
use crate::catalog::{Signal, SignalKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub inputs: Vec<(String, Signal)>,
    pub expected: Vec<Signal>,
    pub got: Vec<Signal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub design: String,
    pub vectors: u64,
    pub passed: u64,
    /// Every failing vector, in enumeration order.
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn is_pass(&self) -> bool {
        self.mismatches.is_empty() && self.passed == self.vectors
    }

    pub fn summary(&self) -> String {
        let verdict = if self.is_pass() { "pass" } else { "FAIL" };
        format!("{verdict} {}/{}", self.passed, self.vectors)
    }
}

const CHUNK: u64 = 4096;

/// Decodes vector `index` in mixed radix, first input least significant.
fn vector(index: u64, kinds: &[SignalKind], raw: &mut [u8]) {
    let mut rest = index;
    for (slot, k) in raw.iter_mut().zip(kinds) {
        let d = k.domain_size() as u64;
        *slot = (rest % d) as u8;
        rest /= d;
    }
}

/// Evaluates every input vector and compares the outputs with `oracle`.
/// Vectors are split into chunks evaluated in parallel; results are merged
/// in enumeration order.
pub fn exhaustive_verify<F>(n: &Netlist, oracle: F) -> Result<VerifyReport, EvalError>
where
    F: Fn(&[Signal]) -> Vec<Signal> + Sync,
{
    let program = Program::compile(n)?;
    let kinds: Vec<SignalKind> = program.input_kinds().collect();
    let out_kinds: Vec<SignalKind> = program.output_kinds().collect();
    let names: Vec<String> = program.input_names().map(str::to_string).collect();
    let total: u64 = kinds.iter().map(|k| k.domain_size() as u64).product();
    let chunks = total.div_ceil(CHUNK);

    let results: Vec<(u64, Vec<Mismatch>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut nets = program.scratch();
            let mut raw = vec![0u8; kinds.len()];
            let mut out = vec![0u8; out_kinds.len()];
            let mut passed = 0u64;
            let mut bad = Vec::new();
            for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
                vector(index, &kinds, &mut raw);
                program.run_raw(&raw, &mut nets, &mut out);
                let signals: Vec<Signal> = raw
                    .iter()
                    .zip(&kinds)
                    .map(|(v, k)| Signal::from_raw(*k, *v).expect("enumerated in range"))
                    .collect();
                let expected = oracle(&signals);
                let ok = expected.len() == out.len()
                    && expected.iter().zip(&out).all(|(e, g)| e.raw() == *g);
                if ok {
                    passed += 1;
                } else {
                    let got = out
                        .iter()
                        .zip(&out_kinds)
                        .map(|(v, k)| {
                            Signal::from_raw(*k, *v).expect("blocks emit in-range levels")
                        })
                        .collect();
                    bad.push(Mismatch {
                        inputs: names.iter().cloned().zip(signals).collect(),
                        expected,
                        got,
                    });
                }
            }
            (passed, bad)
        })
        .collect();

    let mut report = VerifyReport {
        design: n.name().to_string(),
        vectors: total,
        passed: 0,
        mismatches: Vec::new(),
    };
    for (passed, bad) in results {
        report.passed += passed;
        report.mismatches.extend(bad);
    }
    Ok(report)
}
