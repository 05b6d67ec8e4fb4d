//! Netlists of catalog blocks: construction, well-formedness checking and
//! transistor-count roll-up. Evaluation lives in [`eval`], exhaustive
//! checking in [`verify`] and the `.qnl` text format in [`text`].

pub mod eval;
pub mod text;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{lookup, BlockSpec, SignalKind, SupplyMode};

pub use eval::{evaluate, evaluate_named, EvalError, Program};
pub use text::{emit_netlist, parse_netlist, ParseError};
pub use verify::{exhaustive_verify, Mismatch, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetId(pub u32);

impl NetId {
    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub name: String,
    /// Kind fixed by the first declaration or port that mentions the net.
    pub kind: SignalKind,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub block: &'static BlockSpec,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
}

/// A combinational circuit of block instances over named nets.
#[derive(Debug, Clone)]
pub struct Netlist {
    name: String,
    supply: SupplyMode,
    nets: Vec<Net>,
    net_index: HashMap<String, NetId>,
    instances: Vec<Instance>,
    inputs: Vec<(NetId, SignalKind)>,
    outputs: Vec<(NetId, SignalKind)>,
}

impl Netlist {
    pub fn new(name: impl Into<String>, supply: SupplyMode) -> Self {
        Netlist {
            name: name.into(),
            supply,
            nets: Vec::new(),
            net_index: HashMap::new(),
            instances: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn supply(&self) -> SupplyMode {
        self.supply
    }

    pub fn nets(&self) -> &[Net] {
        &self.nets
    }

    pub fn net(&self, id: NetId) -> &Net {
        &self.nets[id.index()]
    }

    pub fn net_id(&self, name: &str) -> Option<NetId> {
        self.net_index.get(name).copied()
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn inputs(&self) -> impl Iterator<Item = (&Net, SignalKind)> + '_ {
        self.inputs.iter().map(|(id, k)| (self.net(*id), *k))
    }

    pub fn outputs(&self) -> impl Iterator<Item = (&Net, SignalKind)> + '_ {
        self.outputs.iter().map(|(id, k)| (self.net(*id), *k))
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    /// Returns the net with this name, creating it with `kind` if new.
    pub fn ensure_net(&mut self, name: &str, kind: SignalKind) -> NetId {
        if let Some(id) = self.net_index.get(name) {
            return *id;
        }
        let id = NetId(self.nets.len() as u32);
        self.nets.push(Net {
            name: name.to_string(),
            kind,
        });
        self.net_index.insert(name.to_string(), id);
        id
    }

    pub fn add_input(&mut self, name: &str, kind: SignalKind) -> Result<NetId, BuildError> {
        let id = self.ensure_net(name, kind);
        if self.inputs.iter().any(|(i, _)| *i == id) {
            return Err(BuildError::DuplicateName(name.to_string()));
        }
        self.inputs.push((id, kind));
        Ok(id)
    }

    pub fn add_output(&mut self, name: &str, kind: SignalKind) -> Result<NetId, BuildError> {
        let id = self.ensure_net(name, kind);
        if self.outputs.iter().any(|(i, _)| *i == id) {
            return Err(BuildError::DuplicateName(name.to_string()));
        }
        self.outputs.push((id, kind));
        Ok(id)
    }

    /// Adds an instance. Port arity is not enforced here so that malformed
    /// netlists can be represented and diagnosed by [`check_well_formed`].
    pub fn add_instance(
        &mut self,
        name: &str,
        block: &str,
        inputs: &[&str],
        outputs: &[&str],
    ) -> Result<(), BuildError> {
        let spec = lookup(block).ok_or_else(|| BuildError::UnknownBlock(block.to_string()))?;
        self.add_instance_of(name, spec, inputs, outputs)
    }

    pub fn add_instance_of(
        &mut self,
        name: &str,
        block: &'static BlockSpec,
        inputs: &[&str],
        outputs: &[&str],
    ) -> Result<(), BuildError> {
        if self.instances.iter().any(|i| i.name == name) {
            return Err(BuildError::DuplicateName(name.to_string()));
        }
        let kind_of = |ports: &[crate::catalog::Port], i: usize| {
            ports.get(i).map(|p| p.kind).unwrap_or(SignalKind::Bit)
        };
        let ins = inputs
            .iter()
            .enumerate()
            .map(|(i, n)| self.ensure_net(n, kind_of(block.inputs, i)))
            .collect();
        let outs = outputs
            .iter()
            .enumerate()
            .map(|(i, n)| self.ensure_net(n, kind_of(block.outputs, i)))
            .collect();
        self.instances.push(Instance {
            name: name.to_string(),
            block,
            inputs: ins,
            outputs: outs,
        });
        Ok(())
    }

    /// Swaps the block of an existing instance, keeping its connections.
    pub fn replace_block(&mut self, instance: usize, block: &'static BlockSpec) {
        self.instances[instance].block = block;
    }

    /// Reorders instances; `order` must be a permutation of instance indices.
    pub fn permute_instances(&mut self, order: &[usize]) {
        assert_eq!(order.len(), self.instances.len());
        let old = std::mem::take(&mut self.instances);
        let mut slots: Vec<Option<Instance>> = old.into_iter().map(Some).collect();
        self.instances = order
            .iter()
            .map(|&i| slots[i].take().expect("order must be a permutation"))
            .collect();
    }

    /// Instance names in evaluation order, or the well-formedness diagnostics.
    pub fn topological_order(&self) -> Result<Vec<usize>, Vec<Diagnostic>> {
        check_well_formed(self)?;
        Ok(schedule(self).expect("well-formed netlists are acyclic"))
    }
}

/// Structural equality: same names, kinds, blocks and connections in the
/// same declaration order.
impl PartialEq for Netlist {
    fn eq(&self, other: &Self) -> bool {
        let ports = |n: &Netlist, v: &[(NetId, SignalKind)]| -> Vec<(String, SignalKind)> {
            v.iter()
                .map(|(id, k)| (n.net(*id).name.clone(), *k))
                .collect()
        };
        let insts = |n: &Netlist| -> Vec<(String, &'static str, Vec<String>, Vec<String>)> {
            n.instances
                .iter()
                .map(|i| {
                    let names =
                        |ids: &[NetId]| ids.iter().map(|id| n.net(*id).name.clone()).collect();
                    (
                        i.name.clone(),
                        i.block.name,
                        names(&i.inputs),
                        names(&i.outputs),
                    )
                })
                .collect()
        };
        let kinds = |n: &Netlist| -> BTreeMap<String, SignalKind> {
            n.nets
                .iter()
                .map(|net| (net.name.clone(), net.kind))
                .collect()
        };
        self.name == other.name
            && self.supply == other.supply
            && ports(self, &self.inputs) == ports(other, &other.inputs)
            && ports(self, &self.outputs) == ports(other, &other.outputs)
            && insts(self) == insts(other)
            && kinds(self) == kinds(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    Cycle {
        instances: Vec<String>,
    },
    DanglingNet {
        net: String,
    },
    MultipleDrivers {
        net: String,
        drivers: Vec<String>,
    },
    KindMismatch {
        net: String,
        at: String,
        expected: SignalKind,
        got: SignalKind,
    },
    ArityMismatch {
        instance: String,
        block: String,
        expected_inputs: usize,
        got_inputs: usize,
        expected_outputs: usize,
        got_outputs: usize,
    },
    SupplyModeViolation {
        instance: String,
        block: String,
        mode: SupplyMode,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Cycle { instances } => {
                write!(f, "combinational cycle through {}", instances.join(", "))
            }
            Diagnostic::DanglingNet { net } => write!(f, "net `{net}` is never driven"),
            Diagnostic::MultipleDrivers { net, drivers } => {
                write!(f, "net `{net}` has several drivers: {}", drivers.join(", "))
            }
            Diagnostic::KindMismatch { net, at, expected, got } => {
                write!(f, "net `{net}` is {expected} but {at} uses it as {got}")
            }
            Diagnostic::ArityMismatch {
                instance,
                block,
                expected_inputs,
                got_inputs,
                expected_outputs,
                got_outputs,
            } => write!(
                f,
                "instance `{instance}` of {block} has {got_inputs} inputs and {got_outputs} outputs, \
                 expected {expected_inputs} and {expected_outputs}"
            ),
            Diagnostic::SupplyModeViolation { instance, block, mode } => {
                write!(f, "instance `{instance}`: block {block} cannot be built with a {mode} supply")
            }
        }
    }
}

/// Kahn scheduling with ties broken by declaration order. Returns the
/// unscheduled instances on a cycle.
fn schedule(n: &Netlist) -> Result<Vec<usize>, Vec<usize>> {
    let mut driver: Vec<Option<usize>> = vec![None; n.nets.len()];
    for (idx, inst) in n.instances.iter().enumerate() {
        for out in &inst.outputs {
            driver[out.index()].get_or_insert(idx);
        }
    }
    let mut indegree = vec![0usize; n.instances.len()];
    let mut fanout: Vec<Vec<usize>> = vec![Vec::new(); n.instances.len()];
    for (idx, inst) in n.instances.iter().enumerate() {
        for input in &inst.inputs {
            if let Some(d) = driver[input.index()] {
                indegree[idx] += 1;
                fanout[d].push(idx);
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n.instances.len())
        .filter(|i| indegree[*i] == 0)
        .collect();
    let mut order = Vec::with_capacity(n.instances.len());
    while let Some(idx) = ready.pop_first() {
        order.push(idx);
        for &succ in &fanout[idx] {
            indegree[succ] -= 1;
            if indegree[succ] == 0 {
                ready.insert(succ);
            }
        }
    }
    if order.len() == n.instances.len() {
        Ok(order)
    } else {
        Err((0..n.instances.len())
            .filter(|i| indegree[*i] > 0)
            .collect())
    }
}

/// Verifies every netlist invariant and reports all violations found, in a
/// deterministic order.
pub fn check_well_formed(n: &Netlist) -> Result<(), Vec<Diagnostic>> {
    let mut diags = Vec::new();

    for inst in &n.instances {
        let b = inst.block;
        if inst.inputs.len() != b.inputs.len() || inst.outputs.len() != b.outputs.len() {
            diags.push(Diagnostic::ArityMismatch {
                instance: inst.name.clone(),
                block: b.name.to_string(),
                expected_inputs: b.inputs.len(),
                got_inputs: inst.inputs.len(),
                expected_outputs: b.outputs.len(),
                got_outputs: inst.outputs.len(),
            });
        }
        if !b.supports(n.supply) {
            diags.push(Diagnostic::SupplyModeViolation {
                instance: inst.name.clone(),
                block: b.name.to_string(),
                mode: n.supply,
            });
        }
    }

    let mut kind_check = |net: NetId, at: String, got: SignalKind| {
        let expected = n.net(net).kind;
        if expected != got {
            diags.push(Diagnostic::KindMismatch {
                net: n.net(net).name.clone(),
                at,
                expected,
                got,
            });
        }
    };
    for (id, k) in &n.inputs {
        kind_check(*id, "input declaration".to_string(), *k);
    }
    for (id, k) in &n.outputs {
        kind_check(*id, "output declaration".to_string(), *k);
    }
    for inst in &n.instances {
        for (net, port) in inst.inputs.iter().zip(inst.block.inputs) {
            kind_check(*net, format!("{}.{}", inst.name, port.name), port.kind);
        }
        for (net, port) in inst.outputs.iter().zip(inst.block.outputs) {
            kind_check(*net, format!("{}.{}", inst.name, port.name), port.kind);
        }
    }

    let mut drivers: Vec<Vec<String>> = vec![Vec::new(); n.nets.len()];
    for (id, _) in &n.inputs {
        drivers[id.index()].push("input".to_string());
    }
    for inst in &n.instances {
        for out in &inst.outputs {
            drivers[out.index()].push(inst.name.clone());
        }
    }
    let mut read = vec![false; n.nets.len()];
    for inst in &n.instances {
        for input in &inst.inputs {
            read[input.index()] = true;
        }
    }
    for (id, _) in &n.outputs {
        read[id.index()] = true;
    }
    for (idx, net) in n.nets.iter().enumerate() {
        match drivers[idx].len() {
            0 if read[idx] => diags.push(Diagnostic::DanglingNet {
                net: net.name.clone(),
            }),
            0 | 1 => {}
            _ => diags.push(Diagnostic::MultipleDrivers {
                net: net.name.clone(),
                drivers: drivers[idx].clone(),
            }),
        }
    }

    if let Err(stuck) = schedule(n) {
        diags.push(Diagnostic::Cycle {
            instances: stuck
                .into_iter()
                .map(|i| n.instances[i].name.clone())
                .collect(),
        });
    }

    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostItem {
    pub label: String,
    pub block: String,
    pub cost: u32,
}

/// Additive transistor-count roll-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub items: Vec<CostItem>,
    pub by_block: BTreeMap<String, u32>,
    pub total: u32,
}

impl CostBreakdown {
    pub fn from_items(items: Vec<CostItem>) -> Self {
        let mut by_block = BTreeMap::new();
        for item in &items {
            *by_block.entry(item.block.clone()).or_insert(0) += item.cost;
        }
        let total = items.iter().map(|i| i.cost).sum();
        CostBreakdown {
            items,
            by_block,
            total,
        }
    }

    pub fn subtotal(&self, block: &str) -> u32 {
        self.by_block.get(block).copied().unwrap_or(0)
    }
}

/// Sums the transistor count of every instance in the netlist's supply mode.
pub fn total_cost(n: &Netlist) -> Result<CostBreakdown, Diagnostic> {
    let items = n
        .instances
        .iter()
        .map(|inst| {
            let cost =
                inst.block
                    .cost(n.supply)
                    .ok_or_else(|| Diagnostic::SupplyModeViolation {
                        instance: inst.name.clone(),
                        block: inst.block.name.to_string(),
                        mode: n.supply,
                    })?;
            Ok(CostItem {
                label: inst.name.clone(),
                block: inst.block.name.to_string(),
                cost,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CostBreakdown::from_items(items))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Netlist {
        let mut n = Netlist::new("pair", SupplyMode::Triple);
        n.add_input("A", SignalKind::Quat).unwrap();
        n.add_output("x1", SignalKind::Bit).unwrap();
        n.add_output("x0", SignalKind::Bit).unwrap();
        n.add_instance("dec", "DEC_Q2B_X9", &["A"], &["x1", "x0"])
            .unwrap();
        n
    }

    #[test]
    fn well_formed_small_netlist() {
        let n = small();
        assert_eq!(check_well_formed(&n), Ok(()));
        assert_eq!(total_cost(&n).unwrap().total, 21);
    }

    #[test]
    fn empty_netlist_costs_nothing() {
        let n = Netlist::new("empty", SupplyMode::Single);
        assert_eq!(check_well_formed(&n), Ok(()));
        let c = total_cost(&n).unwrap();
        assert_eq!(c.total, 0);
        assert!(c.items.is_empty());
    }

    #[test]
    fn cycle_is_reported() {
        let mut n = Netlist::new("loop", SupplyMode::Single);
        n.add_input("a", SignalKind::Bit).unwrap();
        n.add_output("y", SignalKind::Bit).unwrap();
        n.add_instance("g", "NAND2", &["a", "y"], &["y"]).unwrap();
        let diags = check_well_formed(&n).unwrap_err();
        assert_eq!(
            diags,
            vec![Diagnostic::Cycle {
                instances: vec!["g".into()]
            }]
        );
    }

    #[test]
    fn triple_supply_encoder_in_single_netlist() {
        let mut n = Netlist::new("enc", SupplyMode::Single);
        n.add_input("x1", SignalKind::Bit).unwrap();
        n.add_input("x0", SignalKind::Bit).unwrap();
        n.add_output("q", SignalKind::Quat).unwrap();
        n.add_instance("enc", "ENC_B2Q", &["x1", "x0"], &["q"])
            .unwrap();
        let diags = check_well_formed(&n).unwrap_err();
        assert_eq!(
            diags,
            vec![Diagnostic::SupplyModeViolation {
                instance: "enc".into(),
                block: "ENC_B2Q".into(),
                mode: SupplyMode::Single,
            }]
        );
        assert!(total_cost(&n).is_err());
    }

    #[test]
    fn dangling_multiple_drivers_kind_and_arity() {
        let mut n = Netlist::new("bad", SupplyMode::Single);
        n.add_input("a", SignalKind::Bit).unwrap();
        n.add_output("y", SignalKind::Bit).unwrap();
        n.add_instance("g1", "INV", &["floating"], &["y"]).unwrap();
        n.add_instance("g2", "INV", &["a"], &["y"]).unwrap();
        n.add_instance("g3", "NQI", &["a"], &["z"]).unwrap();
        n.add_instance("g4", "NAND2", &["a"], &["w"]).unwrap();
        let diags = check_well_formed(&n).unwrap_err();
        assert!(diags.contains(&Diagnostic::DanglingNet {
            net: "floating".into()
        }));
        assert!(diags.contains(&Diagnostic::MultipleDrivers {
            net: "y".into(),
            drivers: vec!["g1".into(), "g2".into()],
        }));
        assert!(diags.iter().any(
            |d| matches!(d, Diagnostic::KindMismatch { net, at, .. } if net == "a" && at == "g3.q")
        ));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::ArityMismatch { instance, got_inputs: 1, .. } if instance == "g4")));
    }

    #[test]
    fn duplicate_and_unknown_names() {
        let mut n = small();
        assert_eq!(
            n.add_instance("dec", "INV", &["x1"], &["z"]),
            Err(BuildError::DuplicateName("dec".into()))
        );
        assert_eq!(
            n.add_instance("x", "BOGUS", &["a"], &["b"]),
            Err(BuildError::UnknownBlock("BOGUS".into()))
        );
        assert_eq!(
            n.add_input("A", SignalKind::Quat),
            Err(BuildError::DuplicateName("A".into()))
        );
    }

    #[test]
    fn topological_order_breaks_ties_by_declaration() {
        let mut n = Netlist::new("chain", SupplyMode::Single);
        n.add_input("a", SignalKind::Bit).unwrap();
        n.add_output("y", SignalKind::Bit).unwrap();
        n.add_instance("last", "INV", &["m2"], &["y"]).unwrap();
        n.add_instance("second", "INV", &["m1"], &["m2"]).unwrap();
        n.add_instance("first", "INV", &["a"], &["m1"]).unwrap();
        n.add_instance("side", "INV", &["a"], &["unused"]).unwrap();
        assert_eq!(n.topological_order().unwrap(), vec![2, 1, 0, 3]);
    }
}
