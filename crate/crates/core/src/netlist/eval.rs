//! Topological evaluation over raw level buffers.

use thiserror::Error;

use super::{check_well_formed, schedule, Diagnostic, Netlist};
use crate::catalog::{Behavior, Signal, SignalKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("netlist is not well formed: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    NotWellFormed(Vec<Diagnostic>),
    #[error("no value assigned to input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not an input of this netlist")]
    UnknownInput(String),
    #[error("{got} values given for {expected} inputs")]
    TooManyInputs { expected: usize, got: usize },
    #[error("input `{name}` is {expected} but was given a {got} value")]
    InputKind {
        name: String,
        expected: SignalKind,
        got: SignalKind,
    },
}

struct Step {
    behavior: Behavior,
    ins: Vec<u32>,
    outs: Vec<u32>,
}

/// A netlist flattened into a fixed evaluation schedule.
pub struct Program {
    steps: Vec<Step>,
    net_count: usize,
    inputs: Vec<(u32, SignalKind, String)>,
    outputs: Vec<(u32, SignalKind, String)>,
}

const MAX_PORTS: usize = 16;

impl Program {
    pub fn compile(n: &Netlist) -> Result<Program, EvalError> {
        check_well_formed(n).map_err(EvalError::NotWellFormed)?;
        let order = schedule(n).expect("well-formed netlists are acyclic");
        let steps = order
            .into_iter()
            .map(|i| {
                let inst = &n.instances[i];
                assert!(inst.inputs.len() <= MAX_PORTS && inst.outputs.len() <= MAX_PORTS);
                Step {
                    behavior: inst.block.behavior,
                    ins: inst.inputs.iter().map(|id| id.0).collect(),
                    outs: inst.outputs.iter().map(|id| id.0).collect(),
                }
            })
            .collect();
        let ports = |v: &[(super::NetId, SignalKind)]| {
            v.iter()
                .map(|(id, k)| (id.0, *k, n.net(*id).name.clone()))
                .collect()
        };
        Ok(Program {
            steps,
            net_count: n.nets.len(),
            inputs: ports(&n.inputs),
            outputs: ports(&n.outputs),
        })
    }

    pub fn input_kinds(&self) -> impl Iterator<Item = SignalKind> + '_ {
        self.inputs.iter().map(|(_, k, _)| *k)
    }

    pub fn input_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.inputs.iter().map(|(_, _, n)| n.as_str())
    }

    pub fn output_kinds(&self) -> impl Iterator<Item = SignalKind> + '_ {
        self.outputs.iter().map(|(_, k, _)| *k)
    }

    pub fn output_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.outputs.iter().map(|(_, _, n)| n.as_str())
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    /// Scratch buffer sized for [`Program::run_raw`].
    pub fn scratch(&self) -> Vec<u8> {
        vec![0; self.net_count]
    }

    /// Evaluates raw input levels into `out`. Inputs must already be in range.
    pub fn run_raw(&self, inputs: &[u8], nets: &mut [u8], out: &mut [u8]) {
        for ((id, _, _), v) in self.inputs.iter().zip(inputs) {
            nets[*id as usize] = *v;
        }
        let mut a = [0u8; MAX_PORTS];
        let mut b = [0u8; MAX_PORTS];
        for step in &self.steps {
            for (slot, id) in a.iter_mut().zip(&step.ins) {
                *slot = nets[*id as usize];
            }
            let outs = &mut b[..step.outs.len()];
            (step.behavior)(&a[..step.ins.len()], outs);
            for (v, id) in outs.iter().zip(&step.outs) {
                nets[*id as usize] = *v;
            }
        }
        for ((id, _, _), o) in self.outputs.iter().zip(out.iter_mut()) {
            *o = nets[*id as usize];
        }
    }

    /// Evaluates positional input signals.
    pub fn run(&self, inputs: &[Signal]) -> Result<Vec<Signal>, EvalError> {
        if inputs.len() > self.inputs.len() {
            return Err(EvalError::TooManyInputs {
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        if let Some((_, _, name)) = self.inputs.get(inputs.len()) {
            return Err(EvalError::MissingInput(name.clone()));
        }
        for ((_, kind, name), s) in self.inputs.iter().zip(inputs) {
            if s.kind() != *kind {
                return Err(EvalError::InputKind {
                    name: name.clone(),
                    expected: *kind,
                    got: s.kind(),
                });
            }
        }
        let raw: Vec<u8> = inputs.iter().map(|s| s.raw()).collect();
        let mut nets = self.scratch();
        let mut out = vec![0; self.outputs.len()];
        self.run_raw(&raw, &mut nets, &mut out);
        Ok(self
            .outputs
            .iter()
            .zip(out)
            .map(|((_, k, _), v)| Signal::from_raw(*k, v).expect("blocks emit in-range levels"))
            .collect())
    }

    /// Evaluates inputs given by name, returning outputs paired with their names.
    pub fn run_named(
        &self,
        assignment: &[(&str, Signal)],
    ) -> Result<Vec<(String, Signal)>, EvalError> {
        for (name, _) in assignment {
            if !self.inputs.iter().any(|(_, _, n)| n == name) {
                return Err(EvalError::UnknownInput(name.to_string()));
            }
        }
        let positional = self
            .inputs
            .iter()
            .map(|(_, _, name)| {
                assignment
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, s)| *s)
                    .ok_or_else(|| EvalError::MissingInput(name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let out = self.run(&positional)?;
        Ok(self
            .outputs
            .iter()
            .map(|(_, _, n)| n.clone())
            .zip(out)
            .collect())
    }
}

pub fn evaluate(n: &Netlist, inputs: &[Signal]) -> Result<Vec<Signal>, EvalError> {
    Program::compile(n)?.run(inputs)
}

pub fn evaluate_named(
    n: &Netlist,
    assignment: &[(&str, Signal)],
) -> Result<Vec<(String, Signal)>, EvalError> {
    Program::compile(n)?.run_named(assignment)
}
