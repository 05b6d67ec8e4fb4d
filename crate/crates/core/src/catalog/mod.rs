//! The closed catalog of behavioral blocks.
//!
//! Every block carries a port signature, a total behavior, its transistor
//! count per supply mode (absent when the block cannot be built in that mode)
//! and a provenance string stating where the count comes from.
//!
//! Behaviors operate on raw signal codes: a bit is `0`/`1`, a quaternary
//! value is `0..=3`. Inputs are always in range when called through
//! [`apply`] or the netlist evaluator.

pub mod encoder;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mvq::{
    self, bits_to_q, decode_full, iqi, level_from_ge, level_from_thresholds, nqi, pqi, q_to_bits,
    quat_g_p, successor_k, weighted_level, BitPair, BitValue, QuatValue, Shift,
};
pub use encoder::{
    control_signals_v1, control_signals_v2, switch_encode_single, ControlVector, EncoderVariant,
    PathConflict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupplyMode {
    /// Levels 0 and 3 from one rail; 1 and 2 from resistive dividers.
    Single,
    /// Dedicated rails at Vdd/3, 2Vdd/3 and Vdd.
    Triple,
}

impl SupplyMode {
    pub const ALL: [SupplyMode; 2] = [SupplyMode::Single, SupplyMode::Triple];

    pub fn rails(self) -> u8 {
        match self {
            SupplyMode::Single => 1,
            SupplyMode::Triple => 3,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            SupplyMode::Single => "single",
            SupplyMode::Triple => "triple",
        }
    }
}

impl fmt::Display for SupplyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalKind {
    Bit,
    Quat,
}

impl SignalKind {
    pub fn domain_size(self) -> u8 {
        match self {
            SignalKind::Bit => 2,
            SignalKind::Quat => 4,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            SignalKind::Bit => "bit",
            SignalKind::Quat => "quat",
        }
    }
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A typed signal value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signal {
    Bit(BitValue),
    Quat(QuatValue),
}

impl Signal {
    pub fn kind(self) -> SignalKind {
        match self {
            Signal::Bit(_) => SignalKind::Bit,
            Signal::Quat(_) => SignalKind::Quat,
        }
    }

    pub fn raw(self) -> u8 {
        match self {
            Signal::Bit(b) => b.value(),
            Signal::Quat(q) => q.value(),
        }
    }

    pub fn from_raw(kind: SignalKind, raw: u8) -> Result<Signal, mvq::ValueError> {
        Ok(match kind {
            SignalKind::Bit => Signal::Bit(BitValue::new(raw)?),
            SignalKind::Quat => Signal::Quat(QuatValue::new(raw)?),
        })
    }
}

impl From<BitValue> for Signal {
    fn from(b: BitValue) -> Self {
        Signal::Bit(b)
    }
}

impl From<QuatValue> for Signal {
    fn from(q: QuatValue) -> Self {
        Signal::Quat(q)
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Port {
    pub name: &'static str,
    pub kind: SignalKind,
}

pub type Behavior = fn(&[u8], &mut [u8]);

pub struct BlockSpec {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub inputs: &'static [Port],
    pub outputs: &'static [Port],
    pub behavior: Behavior,
    pub cost_single: Option<u32>,
    pub cost_triple: Option<u32>,
    pub provenance: &'static str,
}

impl BlockSpec {
    pub fn cost(&self, mode: SupplyMode) -> Option<u32> {
        match mode {
            SupplyMode::Single => self.cost_single,
            SupplyMode::Triple => self.cost_triple,
        }
    }

    pub fn supports(&self, mode: SupplyMode) -> bool {
        self.cost(mode).is_some()
    }

    pub fn modes(&self) -> Vec<SupplyMode> {
        SupplyMode::ALL
            .into_iter()
            .filter(|m| self.supports(*m))
            .collect()
    }

    /// Size of the full input domain.
    pub fn domain_size(&self) -> usize {
        self.inputs
            .iter()
            .map(|p| p.kind.domain_size() as usize)
            .product()
    }
}

impl fmt::Debug for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockSpec")
            .field("name", &self.name)
            .field("inputs", &self.inputs.len())
            .field("outputs", &self.outputs.len())
            .field("cost_single", &self.cost_single)
            .field("cost_triple", &self.cost_triple)
            .finish()
    }
}

impl PartialEq for BlockSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for BlockSpec {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("block {block} expects {expected} inputs, got {got}")]
    ArityMismatch {
        block: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("block {block} input {port} expects {expected}, got {got}")]
    KindMismatch {
        block: &'static str,
        port: &'static str,
        expected: SignalKind,
        got: SignalKind,
    },
}

/// Evaluates a block on typed inputs.
pub fn apply(block: &BlockSpec, inputs: &[Signal]) -> Result<Vec<Signal>, ApplyError> {
    if inputs.len() != block.inputs.len() {
        return Err(ApplyError::ArityMismatch {
            block: block.name,
            expected: block.inputs.len(),
            got: inputs.len(),
        });
    }
    for (port, sig) in block.inputs.iter().zip(inputs) {
        if port.kind != sig.kind() {
            return Err(ApplyError::KindMismatch {
                block: block.name,
                port: port.name,
                expected: port.kind,
                got: sig.kind(),
            });
        }
    }
    let raw: Vec<u8> = inputs.iter().map(|s| s.raw()).collect();
    let mut out = vec![0u8; block.outputs.len()];
    (block.behavior)(&raw, &mut out);
    Ok(block
        .outputs
        .iter()
        .zip(out)
        .map(|(p, v)| {
            Signal::from_raw(p.kind, v).expect("block behavior produced an out-of-range value")
        })
        .collect())
}

pub fn catalog() -> &'static [BlockSpec] {
    CATALOG
}

/// Finds a block by canonical name or alias.
pub fn lookup(name: &str) -> Option<&'static BlockSpec> {
    CATALOG
        .iter()
        .find(|b| b.name == name || b.aliases.contains(&name))
}

// ---------------------------------------------------------------------------
// behaviors

fn q(x: u8) -> QuatValue {
    QuatValue::wrapping(x as u32)
}

fn hi(x: u8) -> bool {
    x != 0
}

fn b(x: bool) -> u8 {
    x as u8
}

fn pair(x1: u8, x0: u8) -> BitPair {
    BitPair::new(hi(x1).into(), hi(x0).into())
}

fn inv(i: &[u8], o: &mut [u8]) {
    o[0] = b(!hi(i[0]));
}

fn nand2(i: &[u8], o: &mut [u8]) {
    o[0] = b(!(hi(i[0]) && hi(i[1])));
}

fn nor2(i: &[u8], o: &mut [u8]) {
    o[0] = b(!(hi(i[0]) || hi(i[1])));
}

fn nand3(i: &[u8], o: &mut [u8]) {
    o[0] = b(!i[..3].iter().all(|x| hi(*x)));
}

fn and4(i: &[u8], o: &mut [u8]) {
    o[0] = b(i[..4].iter().all(|x| hi(*x)));
}

fn xor2(i: &[u8], o: &mut [u8]) {
    o[0] = b(hi(i[0]) != hi(i[1]));
}

fn mux2(i: &[u8], o: &mut [u8]) {
    o[0] = if hi(i[0]) { i[2] } else { i[1] };
}

fn nqi_block(i: &[u8], o: &mut [u8]) {
    o[0] = nqi(q(i[0])).value();
}

fn iqi_block(i: &[u8], o: &mut [u8]) {
    o[0] = iqi(q(i[0])).value();
}

fn pqi_block(i: &[u8], o: &mut [u8]) {
    o[0] = pqi(q(i[0])).value();
}

fn const0(_: &[u8], o: &mut [u8]) {
    o[0] = 0;
}

fn const1(_: &[u8], o: &mut [u8]) {
    o[0] = 1;
}

fn const2(_: &[u8], o: &mut [u8]) {
    o[0] = 2;
}

fn const3(_: &[u8], o: &mut [u8]) {
    o[0] = 3;
}

fn dec_q2b(i: &[u8], o: &mut [u8]) {
    let p = q_to_bits(q(i[0]));
    o[0] = p.x1.value();
    o[1] = p.x0.value();
}

fn enc_b2q(i: &[u8], o: &mut [u8]) {
    o[0] = bits_to_q(pair(i[0], i[1])).value();
}

fn enc_switch(i: &[u8], o: &mut [u8], variant: EncoderVariant) {
    let level = switch_encode_single(pair(i[0], i[1]), variant)
        .unwrap_or_else(|e| panic!("encoder path model is inconsistent: {e}"));
    o[0] = level.value();
}

fn enc_v1(i: &[u8], o: &mut [u8]) {
    enc_switch(i, o, EncoderVariant::V1)
}

fn enc_v2(i: &[u8], o: &mut [u8]) {
    enc_switch(i, o, EncoderVariant::V2)
}

fn full_adder(i: &[u8], o: &mut [u8]) {
    let s = i[0] + i[1] + i[2];
    o[0] = s & 1;
    o[1] = s >> 1;
}

fn qdec_full(i: &[u8], o: &mut [u8]) {
    let d = decode_full(q(i[0]));
    let outs = [d.i0, d.i1, d.i1_bar, d.ii, d.i2_bar, d.i2, d.i3];
    for (slot, v) in o.iter_mut().zip(outs) {
        *slot = v.value();
    }
}

/// One-hot view `[x=0, x=1, x=2, x=3]` of four decoder indicators `(i0, i1, i2, i3)`.
fn one_hot(ind: &[u8]) -> [bool; 4] {
    [hi(ind[0]), hi(ind[1]), hi(ind[2]), !hi(ind[3])]
}

/// Sum-of-products over pairs `(a = j, b = k)` with `j + k` in `sums`.
fn pair_terms(a: [bool; 4], bb: [bool; 4], sums: &[usize]) -> bool {
    (0..4).any(|j| (0..4).any(|k| sums.contains(&(j + k)) && a[j] && bb[k]))
}

fn ebr_hsum(i: &[u8], o: &mut [u8]) {
    let (a, bb) = (one_hot(&i[0..4]), one_hot(&i[4..8]));
    let f3 = pair_terms(a, bb, &[3]);
    let f2 = pair_terms(a, bb, &[2, 6]);
    let f1 = pair_terms(a, bb, &[1, 5]);
    o[0] = weighted_level(f3, f2, f1).value();
}

fn ebr_hcarry(i: &[u8], o: &mut [u8]) {
    let (a, bb) = (one_hot(&i[0..4]), one_hot(&i[4..8]));
    o[0] = b(pair_terms(a, bb, &[4, 5, 6]));
}

fn qdec_h(i: &[u8], o: &mut [u8]) {
    let d = decode_full(q(i[0]));
    o[0] = d.i0.value();
    o[1] = d.i1.value();
    o[2] = d.i2.value();
    o[3] = d.i3.value();
}

fn ebr_msum(i: &[u8], o: &mut [u8]) {
    let h = one_hot(&i[0..4]);
    let (c0, c1) = (hi(i[4]), hi(i[5]));
    let f3 = (h[2] && c1) || (h[3] && c0);
    let f2 = (h[1] && c1) || (h[2] && c0);
    let f1 = (h[0] && c1) || (h[1] && c0);
    o[0] = weighted_level(f3, f2, f1).value();
}

fn ebr_cout(i: &[u8], o: &mut [u8]) {
    let (h0, h1, h2, h3) = (hi(i[0]), hi(i[1]), hi(i[2]), hi(i[3]));
    let (a0, ai, a3, cin_n) = (hi(i[4]), hi(i[5]), hi(i[6]), hi(i[7]));
    let no_carry = (h0 && a0) || (h1 && ai) || (h2 && a3) || (cin_n && !h3);
    o[0] = b(!no_carry);
}

fn qdec(i: &[u8], o: &mut [u8]) {
    let v = q(i[0]);
    o[0] = nqi(v).value();
    o[1] = iqi(v).value();
    o[2] = pqi(v).value();
}

fn qtg(i: &[u8], o: &mut [u8]) {
    let sel = level_from_thresholds(hi(i[0]), hi(i[1]), hi(i[2]));
    o[0] = i[3 + sel.value() as usize];
}

fn moa_carry(i: &[u8], o: &mut [u8]) {
    let a = level_from_thresholds(hi(i[0]), hi(i[1]), hi(i[2]));
    let bb = level_from_thresholds(hi(i[3]), hi(i[4]), hi(i[5]));
    o[0] = b(quat_g_p(a, bb).0.is_high());
    o[1] = b(!hi(i[3]));
    o[2] = b(!hi(i[4]));
    o[3] = b(!hi(i[5]));
}

fn tg_mux(i: &[u8], o: &mut [u8]) {
    o[0] = if hi(i[0]) { i[3] } else { i[2] };
}

fn rinv(i: &[u8], o: &mut [u8]) {
    let v = q(i[0]).value();
    o[0] = b(v >= 1);
    o[1] = b(v >= 2);
    o[2] = b(v >= 3);
}

fn qmux4(i: &[u8], o: &mut [u8]) {
    let sel = level_from_ge(hi(i[0]), hi(i[1]), hi(i[2]));
    o[0] = i[3 + sel.value() as usize];
}

fn succ1(i: &[u8], o: &mut [u8]) {
    o[0] = successor_k(q(i[0]), Shift::Successor).value();
}

fn succ2(i: &[u8], o: &mut [u8]) {
    o[0] = successor_k(q(i[0]), Shift::SecondSuccessor).value();
}

fn pred(i: &[u8], o: &mut [u8]) {
    o[0] = successor_k(q(i[0]), Shift::Predecessor).value();
}

fn rcha(i: &[u8], o: &mut [u8]) {
    let sel = level_from_ge(hi(i[0]), hi(i[1]), hi(i[2]));
    o[0] = b(sel.value() + q(i[3]).value() >= 4);
}

fn rsfa(i: &[u8], o: &mut [u8]) {
    o[0] = if hi(i[0]) {
        let sel = level_from_ge(hi(i[2]), hi(i[3]), hi(i[4]));
        i[5 + sel.value() as usize]
    } else {
        i[1]
    };
}

fn rcfa(i: &[u8], o: &mut [u8]) {
    o[0] = if hi(i[0]) {
        let sel = level_from_ge(hi(i[2]), hi(i[3]), hi(i[4]));
        b(sel.value() + q(i[5]).value() >= 3)
    } else {
        i[1]
    };
}

fn bgen(i: &[u8], o: &mut [u8]) {
    o[0] = b(hi(i[0]) && hi(i[1]));
}

fn qgen(i: &[u8], o: &mut [u8]) {
    o[0] = quat_g_p(q(i[0]), q(i[1])).0.value();
}

fn qprop(i: &[u8], o: &mut [u8]) {
    o[0] = quat_g_p(q(i[0]), q(i[1])).1.value();
}

/// Lookahead carry `C_k` from `g_0..g_{k-1}`, `p_0..p_{k-1}` and `c_0`.
fn lookahead(i: &[u8], k: usize) -> bool {
    let (g, p, c0) = (&i[..k], &i[k..2 * k], hi(i[2 * k]));
    g.iter()
        .zip(p)
        .fold(c0, |c, (g, p)| hi(*g) || (hi(*p) && c))
}

fn cla_c1(i: &[u8], o: &mut [u8]) {
    o[0] = b(lookahead(i, 1));
}

fn cla_c2(i: &[u8], o: &mut [u8]) {
    o[0] = b(lookahead(i, 2));
}

fn cla_c3(i: &[u8], o: &mut [u8]) {
    o[0] = b(lookahead(i, 3));
}

fn cla_c4(i: &[u8], o: &mut [u8]) {
    o[0] = b(lookahead(i, 4));
}

// ---------------------------------------------------------------------------
// port lists

const fn bit(name: &'static str) -> Port {
    Port {
        name,
        kind: SignalKind::Bit,
    }
}

const fn quat(name: &'static str) -> Port {
    Port {
        name,
        kind: SignalKind::Quat,
    }
}

const P_B: &[Port] = &[bit("a")];
const P_BB: &[Port] = &[bit("a"), bit("b")];
const P_BBB: &[Port] = &[bit("a"), bit("b"), bit("c")];
const P_B4: &[Port] = &[bit("a"), bit("b"), bit("c"), bit("d")];
const P_Q: &[Port] = &[quat("q")];
const P_QQ: &[Port] = &[quat("a"), quat("b")];
const P_NONE: &[Port] = &[];
const O_B: &[Port] = &[bit("y")];
const O_Q: &[Port] = &[quat("y")];
const O_X1X0: &[Port] = &[bit("x1"), bit("x0")];
const I_X1X0: &[Port] = &[bit("x1"), bit("x0")];
const I_FA: &[Port] = &[bit("a"), bit("b"), bit("cin")];
const O_FA: &[Port] = &[bit("s"), bit("cout")];
const I_MUX2: &[Port] = &[bit("sel"), bit("d0"), bit("d1")];
const O_QDEC_FULL: &[Port] = &[
    bit("i0"),
    bit("i1"),
    bit("i1_bar"),
    bit("ii"),
    bit("i2_bar"),
    bit("i2"),
    bit("i3"),
];
const I_EBR_HALF: &[Port] = &[
    bit("a_i0"),
    bit("a_i1"),
    bit("a_i2"),
    bit("a_i3"),
    bit("b_i0"),
    bit("b_i1"),
    bit("b_i2"),
    bit("b_i3"),
];
const O_QDEC_H: &[Port] = &[bit("h0"), bit("h1"), bit("h2"), bit("h3")];
const I_EBR_MSUM: &[Port] = &[
    bit("h0"),
    bit("h1"),
    bit("h2"),
    bit("h3"),
    bit("c0"),
    bit("c1"),
];
const I_EBR_COUT: &[Port] = &[
    bit("h0"),
    bit("h1"),
    bit("h2"),
    bit("h3"),
    bit("a0"),
    bit("ai"),
    bit("a3"),
    bit("cin_n"),
];
const O_QDEC: &[Port] = &[bit("nqi"), bit("iqi"), bit("pqi")];
const I_QTG: &[Port] = &[
    bit("nqi"),
    bit("iqi"),
    bit("pqi"),
    quat("d0"),
    quat("d1"),
    quat("d2"),
    quat("d3"),
];
const I_QTGB: &[Port] = &[
    bit("nqi"),
    bit("iqi"),
    bit("pqi"),
    bit("d0"),
    bit("d1"),
    bit("d2"),
    bit("d3"),
];
const I_MOA_CARRY: &[Port] = &[
    bit("a_nqi"),
    bit("a_iqi"),
    bit("a_pqi"),
    bit("b_nqi"),
    bit("b_iqi"),
    bit("b_pqi"),
];
const O_MOA_CARRY: &[Port] = &[bit("c"), bit("b_ge1"), bit("b_ge2"), bit("b_ge3")];
const I_TG_Q: &[Port] = &[bit("sel"), bit("sel_n"), quat("d0"), quat("d1")];
const I_TG_B: &[Port] = &[bit("sel"), bit("sel_n"), bit("d0"), bit("d1")];
const O_GE: &[Port] = &[bit("ge1"), bit("ge2"), bit("ge3")];
const I_QMUX4: &[Port] = &[
    bit("ge1"),
    bit("ge2"),
    bit("ge3"),
    quat("d0"),
    quat("d1"),
    quat("d2"),
    quat("d3"),
];
const I_QMUX2: &[Port] = &[bit("sel"), quat("d0"), quat("d1")];
const I_RCHA: &[Port] = &[bit("ge1"), bit("ge2"), bit("ge3"), quat("a")];
const I_RSFA: &[Port] = &[
    bit("cin"),
    quat("s0"),
    bit("ge1"),
    bit("ge2"),
    bit("ge3"),
    quat("d0"),
    quat("d1"),
    quat("d2"),
    quat("d3"),
];
const I_RCFA: &[Port] = &[
    bit("cin"),
    bit("c0"),
    bit("ge1"),
    bit("ge2"),
    bit("ge3"),
    quat("a"),
];
const I_C1: &[Port] = &[bit("g0"), bit("p0"), bit("c0")];
const I_C2: &[Port] = &[bit("g0"), bit("g1"), bit("p0"), bit("p1"), bit("c0")];
const I_C3: &[Port] = &[
    bit("g0"),
    bit("g1"),
    bit("g2"),
    bit("p0"),
    bit("p1"),
    bit("p2"),
    bit("c0"),
];
const I_C4: &[Port] = &[
    bit("g0"),
    bit("g1"),
    bit("g2"),
    bit("g3"),
    bit("p0"),
    bit("p1"),
    bit("p2"),
    bit("p3"),
    bit("c0"),
];

// ---------------------------------------------------------------------------
// the catalog

const fn both(cost: u32) -> (Option<u32>, Option<u32>) {
    (Some(cost), Some(cost))
}

const fn single_only(cost: u32) -> (Option<u32>, Option<u32>) {
    (Some(cost), None)
}

const fn triple_only(cost: u32) -> (Option<u32>, Option<u32>) {
    (None, Some(cost))
}

macro_rules! block {
    ($name:literal $(| $alias:literal)*, $ins:expr => $outs:expr, $beh:expr, $cost:expr, $prov:literal) => {
        BlockSpec {
            name: $name,
            aliases: &[$($alias),*],
            inputs: $ins,
            outputs: $outs,
            behavior: $beh,
            cost_single: $cost.0,
            cost_triple: $cost.1,
            provenance: $prov,
        }
    };
}

static CATALOG: &[BlockSpec] = &[
    // binary primitives
    block!("INV", P_B => O_B, inv, both(2),
        "static CMOS inverter, 2 T (8 T for four NOTs in the encoder control logic)"),
    block!("NAND2", P_BB => O_B, nand2, both(4),
        "2-input NAND, 4 T (16 T for four 2-input gates in the encoder control logic)"),
    block!("NOR2", P_BB => O_B, nor2, both(4),
        "2-input NOR, 4 T (16 T for four 2-input gates in the encoder control logic)"),
    block!("NAND3", P_BBB => O_B, nand3, both(6), "3-input NAND, 6 T"),
    block!("AND4", P_B4 => O_B, and4, both(10),
        "carry-skip group propagate: 4-input NAND plus inverter, 10 T"),
    block!("XOR16", P_BB => O_B, xor2, both(16), "XOR from four NAND gates, 16 T"),
    block!("XOR9", P_BB => O_B, xor2, both(9), "conventional full-swing CMOS XOR, 9 T"),
    block!("XOR3", P_BB => O_B, xor2, both(3), "CNTFET pass-transistor XOR, 3 T"),
    block!("MUX2", I_MUX2 => O_B, mux2, both(14), "carry-skip bypass multiplexer, 14 T"),
    block!("TIE0", P_NONE => O_B, const0, both(0), "ground connection"),
    block!("TIE1", P_NONE => O_B, const1, both(0), "Vdd connection"),
    // supply rails
    block!("RAIL0", P_NONE => O_Q, const0, both(0), "level 0 (ground)"),
    block!("RAIL1", P_NONE => O_Q, const1, triple_only(0), "level 1 rail, Vdd/3; needs three supplies"),
    block!("RAIL2", P_NONE => O_Q, const2, triple_only(0), "level 2 rail, 2Vdd/3; needs three supplies"),
    block!("RAIL3", P_NONE => O_Q, const3, both(0), "level 3 (Vdd)"),
    // threshold inverters
    block!("NQI", P_Q => O_B, nqi_block, both(2),
        "negative threshold inverter, 2 T (NQI plus binary inverter = 4 T)"),
    block!("IQI", P_Q => O_B, iqi_block, both(2), "intermediate threshold inverter, 2 T"),
    block!("PQI", P_Q => O_B, pqi_block, both(2), "positive threshold inverter, 2 T"),
    // binary interface
    block!("DEC_Q2B_X16", P_Q => O_X1X0, dec_q2b, both(28),
        "4-to-2 decoder with 16 T XOR: 28 T, most conservative implementation"),
    block!("DEC_Q2B_X9", P_Q => O_X1X0, dec_q2b, both(21),
        "4-to-2 decoder with 9 T XOR: 21 T, the acceptable value"),
    block!("DEC_Q2B_X3", P_Q => O_X1X0, dec_q2b, both(15),
        "4-to-2 decoder with 3 T XOR: 15 T"),
    block!("ENC_B2Q", I_X1X0 => O_Q, enc_b2q, triple_only(16),
        "2-to-4 encoder with transmission gates on three supplies: 16 T"),
    block!("ENC_B2Q_V1", I_X1X0 => O_Q, enc_v1, single_only(34),
        "single-supply encoder, two divider branches: 8 (NOT) + 16 (NAND and NOR) + 10 = 34 T"),
    block!("ENC_B2Q_V2", I_X1X0 => O_Q, enc_v2, single_only(34),
        "single-supply encoder, bypassed divider: 8 (NOT) + 16 (NAND and NOR) + 10 = 34 T"),
    block!("FA36" | "FA_NAND", I_FA => O_FA, full_adder, both(36),
        "binary full adder from NAND gates, 36 T"),
    block!("FA18" | "FA_XOR", I_FA => O_FA, full_adder, both(18),
        "binary full adder from XOR and NAND gates, 18 T"),
    block!("FA8" | "FA_8T", I_FA => O_FA, full_adder, both(8),
        "CNTFET 8 T full adder (no level restoration)"),
    // direct sum-of-products adder
    block!("QDEC_FULL" | "Q-Dec", P_Q => O_QDEC_FULL, qdec_full, single_only(18),
        "complete quaternary decoder, 18 T"),
    block!("EBR_HSUM", I_EBR_HALF => O_Q, ebr_hsum, single_only(16),
        "half-adder sum circuit 3.f3 + 2.f2 + 1.f1: 52 T sum part minus two 18 T decoders"),
    block!("EBR_HCARRY", I_EBR_HALF => O_B, ebr_hcarry, single_only(35),
        "half-adder carry circuit: 87 T half adder minus 52 T sum part"),
    block!("QDEC_H", P_Q => O_QDEC_H, qdec_h, single_only(8),
        "Q-Dec (H) of the modified sum circuit, 8 T as counted"),
    block!("EBR_MSUM", I_EBR_MSUM => O_Q, ebr_msum, single_only(28),
        "modified sum circuit (H + C) mod 4, 28 T"),
    block!("EBR_COUT", I_EBR_COUT => O_B, ebr_cout, single_only(19),
        "carry generator !Cout = H0.A0 + H1.Ai + H2.A3 + !Cin.!H3, 19 T"),
    // decoder and transmission-gate multiplexer adders
    block!("QDEC", P_Q => O_QDEC, qdec, triple_only(16), "quaternary decoder (NQI/IQI/PQI), 16 T"),
    block!("QTG", I_QTG => O_Q, qtg, triple_only(16),
        "quaternary transmission-gate selector, 16 T"),
    block!("QTGB", I_QTGB => O_B, qtg, triple_only(16),
        "quaternary transmission-gate selector on binary levels, 16 T"),
    block!("MOA_CARRY", I_MOA_CARRY => O_MOA_CARRY, moa_carry, triple_only(32),
        "half-adder carry: 6 inverters, 6 transistors and 1 QTG, counted as 32 T"),
    block!("TGMUX_Q", I_TG_Q => O_Q, tg_mux, both(4),
        "two transmission gates selecting a quaternary level, 4 T"),
    block!("TGMUX_B", I_TG_B => O_B, tg_mux, both(4),
        "two transmission gates selecting a binary level, 4 T"),
    // multiplexer adders with custom successor circuits
    block!("RINV", P_Q => O_GE, rinv, both(6),
        "complemented NQI/IQI/PQI inverters of one operand: 3 inverters, 6 T"),
    block!("QMUX4", I_QMUX4 => O_Q, qmux4, both(12), "QMUX 4:1, 12 T"),
    block!("QMUX2", I_QMUX2 => O_Q, mux2, both(6), "QMUX 2:1, 6 T"),
    block!("SUCC1" | "QTG-successor", P_Q => O_Q, succ1, (Some(13), Some(6)),
        "successor (q+1) mod 4: 6 T on three supplies, 13 T on one"),
    block!("SUCC2", P_Q => O_Q, succ2, (Some(12), Some(6)),
        "second successor (q+2) mod 4: 6 T on three supplies, 12 T on one"),
    block!("PRED", P_Q => O_Q, pred, (Some(17), Some(6)),
        "predecessor (q-1) mod 4: 6 T on three supplies, 17 T on one"),
    block!("RCHA", I_RCHA => O_B, rcha, both(14), "half-adder carry C-HA, 14 T"),
    block!("RSFA", I_RSFA => O_Q, rsfa, (Some(36), Some(12)),
        "full-adder sum stage SFA: 12 T on three supplies, 36 T on one"),
    block!("RCFA", I_RCFA => O_B, rcfa, both(20), "full-adder carry stage CFA, 20 T"),
    // lookahead and skip
    block!("BGEN", P_BB => O_B, bgen, both(6), "binary generate a.b: NAND plus inverter, 6 T"),
    block!("BPROP", P_BB => O_B, xor2, both(6),
        "binary propagate a xor b, counted like NOR plus inverter at 6 T"),
    block!("QGEN", P_QQ => O_B, qgen, both(12),
        "quaternary generate (a+b >= 4) from available decoder outputs, 12 T"),
    block!("QPROP", P_QQ => O_B, qprop, both(16),
        "quaternary propagate (a+b = 3) from available decoder outputs, 16 T"),
    block!("CLA_C1", I_C1 => O_B, cla_c1, both(8), "C1 = G0 + P0.C0: complex gate plus inverter, 8 T"),
    block!("CLA_C2", I_C2 => O_B, cla_c2, both(12), "C2 lookahead carry: complex gate plus inverter, 12 T"),
    block!("CLA_C3", I_C3 => O_B, cla_c3, both(16), "C3 lookahead carry: complex gate plus inverter, 16 T"),
    block!("CLA_C4", I_C4 => O_B, cla_c4, both(20), "C4 lookahead carry: complex gate plus inverter, 20 T"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvq::{decode_full, quat_add_oracle, BitValue};

    fn qs(v: u8) -> Signal {
        Signal::Quat(QuatValue::new(v).unwrap())
    }

    fn bs(v: u8) -> Signal {
        Signal::Bit(BitValue::new(v).unwrap())
    }

    fn cost(name: &str, mode: SupplyMode) -> Option<u32> {
        lookup(name).and_then(|b| b.cost(mode))
    }

    /// Every input tuple of a block, in little-endian mixed radix order.
    fn domain(block: &BlockSpec) -> Vec<Vec<Signal>> {
        (0..block.domain_size())
            .map(|mut idx| {
                block
                    .inputs
                    .iter()
                    .map(|p| {
                        let r = p.kind.domain_size() as usize;
                        let v = (idx % r) as u8;
                        idx /= r;
                        Signal::from_raw(p.kind, v).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = CATALOG
            .iter()
            .flat_map(|b| std::iter::once(b.name).chain(b.aliases.iter().copied()))
            .collect();
        let total = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), total);
    }

    #[test]
    fn every_block_has_a_cost_and_is_total() {
        for block in catalog() {
            assert!(!block.modes().is_empty(), "{}", block.name);
            assert!(!block.provenance.is_empty());
            for input in domain(block) {
                // apply validates output ranges
                let out = apply(block, &input).unwrap();
                assert_eq!(out.len(), block.outputs.len());
            }
        }
    }

    #[test]
    fn cited_costs() {
        assert_eq!(cost("ENC_B2Q", SupplyMode::Triple), Some(16));
        assert_eq!(cost("ENC_B2Q", SupplyMode::Single), None);
        assert_eq!(cost("ENC_B2Q_V1", SupplyMode::Single), Some(34));
        assert_eq!(cost("ENC_B2Q_V2", SupplyMode::Single), Some(34));
        for mode in SupplyMode::ALL {
            assert_eq!(cost("FA_NAND", mode), Some(36));
            assert_eq!(cost("FA_XOR", mode), Some(18));
            assert_eq!(cost("FA_8T", mode), Some(8));
        }
        let decoders: Vec<_> = ["DEC_Q2B_X16", "DEC_Q2B_X9", "DEC_Q2B_X3"]
            .iter()
            .map(|n| cost(n, SupplyMode::Single).unwrap())
            .collect();
        assert_eq!(decoders, [28, 21, 15]);
        let family = |mode| {
            ["SUCC1", "SUCC2", "PRED"]
                .iter()
                .map(|n| cost(n, mode).unwrap())
                .sum::<u32>()
        };
        assert_eq!(family(SupplyMode::Triple), 18);
        assert_eq!(family(SupplyMode::Single), 42);
        assert!(lookup("BOGUS").is_none());
    }

    #[test]
    fn encoder_cost_decomposes_into_control_gates_and_core() {
        let inv = cost("INV", SupplyMode::Single).unwrap();
        let nand = cost("NAND2", SupplyMode::Single).unwrap();
        let nor = cost("NOR2", SupplyMode::Single).unwrap();
        let core = encoder::ENCODER_CORE_TRANSISTORS;
        // first variant: 4 NOT, 3 NAND, 1 NOR; second: 4 NOT, 2 NAND, 2 NOR
        assert_eq!(4 * inv + 3 * nand + nor + core, 34);
        assert_eq!(4 * inv + 2 * nand + 2 * nor + core, 34);
    }

    #[test]
    fn decoder_cost_is_twelve_plus_xor() {
        // three threshold inverters, one inverter for X1, one NOR2 for X0, plus the XOR
        let base = 3 * cost("NQI", SupplyMode::Single).unwrap()
            + cost("INV", SupplyMode::Single).unwrap()
            + cost("NOR2", SupplyMode::Single).unwrap();
        assert_eq!(base, 12);
        for (xor, dec) in [
            ("XOR16", "DEC_Q2B_X16"),
            ("XOR9", "DEC_Q2B_X9"),
            ("XOR3", "DEC_Q2B_X3"),
        ] {
            assert_eq!(
                base + cost(xor, SupplyMode::Single).unwrap(),
                cost(dec, SupplyMode::Single).unwrap()
            );
        }
    }

    #[test]
    fn sum_circuit_split_reaches_full_adder_total() {
        let s = |n| cost(n, SupplyMode::Single).unwrap();
        let sum_part = 2 * s("QDEC_FULL") + s("EBR_HSUM");
        let modified = s("QDEC_H") + 2 * s("INV") + s("EBR_MSUM");
        assert_eq!((sum_part, modified, s("EBR_COUT")), (52, 40, 19));
        assert_eq!(sum_part + modified + s("EBR_COUT"), 111);
        assert_eq!(2 * s("QDEC_FULL") + s("EBR_HSUM") + s("EBR_HCARRY"), 87);
    }

    #[test]
    fn apply_examples() {
        let succ = lookup("QTG-successor").unwrap();
        assert_eq!(apply(succ, &[qs(2)]).unwrap(), vec![qs(3)]);
        let dec = lookup("QDEC").unwrap();
        assert_eq!(apply(dec, &[qs(1)]).unwrap(), vec![bs(0), bs(1), bs(1)]);
        let mux = lookup("QMUX4").unwrap();
        // selector 3 as its complemented thresholds (>=1, >=2, >=3)
        let out = apply(mux, &[bs(1), bs(1), bs(1), qs(0), qs(1), qs(2), qs(3)]).unwrap();
        assert_eq!(out, vec![qs(3)]);
    }

    #[test]
    fn apply_rejects_bad_inputs() {
        let fa = lookup("FA18").unwrap();
        assert_eq!(
            apply(fa, &[bs(1), bs(0)]),
            Err(ApplyError::ArityMismatch {
                block: "FA18",
                expected: 3,
                got: 2
            })
        );
        assert!(matches!(
            apply(fa, &[bs(1), qs(0), bs(0)]),
            Err(ApplyError::KindMismatch { port: "b", .. })
        ));
    }

    type QuatCase = (&'static str, fn(QuatValue) -> Vec<Signal>);

    /// Exhaustive agreement of each block with the pure reference function
    /// that defines it.
    #[test]
    fn behaviors_agree_with_reference_functions() {
        let quat_blocks: [QuatCase; 10] = [
            ("NQI", |v| vec![nqi(v).into()]),
            ("IQI", |v| vec![iqi(v).into()]),
            ("PQI", |v| vec![pqi(v).into()]),
            ("DEC_Q2B_X9", |v| {
                let p = q_to_bits(v);
                vec![p.x1.into(), p.x0.into()]
            }),
            ("QDEC", |v| {
                vec![nqi(v).into(), iqi(v).into(), pqi(v).into()]
            }),
            ("QDEC_FULL", |v| {
                let d = decode_full(v);
                [d.i0, d.i1, d.i1_bar, d.ii, d.i2_bar, d.i2, d.i3]
                    .map(Signal::from)
                    .to_vec()
            }),
            ("SUCC1", |v| vec![successor_k(v, Shift::Successor).into()]),
            ("SUCC2", |v| {
                vec![successor_k(v, Shift::SecondSuccessor).into()]
            }),
            ("PRED", |v| vec![successor_k(v, Shift::Predecessor).into()]),
            ("RINV", |v| {
                vec![(!nqi(v)).into(), (!iqi(v)).into(), (!pqi(v)).into()]
            }),
        ];
        for (name, reference) in quat_blocks {
            let block = lookup(name).unwrap();
            for v in QuatValue::ALL {
                assert_eq!(
                    apply(block, &[v.into()]).unwrap(),
                    reference(v),
                    "{name}({v})"
                );
            }
        }
        for name in ["ENC_B2Q", "ENC_B2Q_V1", "ENC_B2Q_V2"] {
            let block = lookup(name).unwrap();
            for p in BitPair::all() {
                let out = apply(block, &[p.x1.into(), p.x0.into()]).unwrap();
                assert_eq!(out, vec![Signal::Quat(bits_to_q(p))]);
            }
        }
        for (name, reference) in [("QGEN", 0usize), ("QPROP", 1)] {
            let block = lookup(name).unwrap();
            for a in QuatValue::ALL {
                for bb in QuatValue::ALL {
                    let (g, p) = quat_g_p(a, bb);
                    let want = [g, p][reference];
                    assert_eq!(
                        apply(block, &[a.into(), bb.into()]).unwrap(),
                        vec![want.into()]
                    );
                }
            }
        }
    }

    #[test]
    fn decoded_operand_blocks_compute_the_half_adder() {
        let hsum = lookup("EBR_HSUM").unwrap();
        let hcarry = lookup("EBR_HCARRY").unwrap();
        let ind = |v: QuatValue| {
            let d = decode_full(v);
            [d.i0, d.i1, d.i2, d.i3].map(Signal::from)
        };
        for a in QuatValue::ALL {
            for bb in QuatValue::ALL {
                let mut input = ind(a).to_vec();
                input.extend(ind(bb));
                let (s, c) = quat_add_oracle(a, bb, BitValue::LOW);
                assert_eq!(apply(hsum, &input).unwrap(), vec![s.into()]);
                assert_eq!(apply(hcarry, &input).unwrap(), vec![c.into()]);
            }
        }
    }

    #[test]
    fn modified_sum_and_carry_generator() {
        let msum = lookup("EBR_MSUM").unwrap();
        let cout = lookup("EBR_COUT").unwrap();
        let qdec_h = lookup("QDEC_H").unwrap();
        for a in QuatValue::ALL {
            for bb in QuatValue::ALL {
                for c in BitValue::ALL {
                    let h = mvq::h_mod(a, bb);
                    let hd = apply(qdec_h, &[h.into()]).unwrap();
                    let mut ins = hd.clone();
                    ins.extend([Signal::from(!c), Signal::from(c)]);
                    let (s, co) = quat_add_oracle(a, bb, c);
                    assert_eq!(apply(msum, &ins).unwrap(), vec![s.into()]);
                    let da = decode_full(a);
                    let mut ins = hd;
                    ins.extend([da.i0, da.ii, da.i3, !c].map(Signal::from));
                    assert_eq!(apply(cout, &ins).unwrap(), vec![co.into()]);
                    assert_eq!(mvq::cout_from_h(h, a, c), co);
                }
            }
        }
    }

    #[test]
    fn lookahead_blocks_match_ripple() {
        for (k, name) in [(1, "CLA_C1"), (2, "CLA_C2"), (3, "CLA_C3"), (4, "CLA_C4")] {
            let block = lookup(name).unwrap();
            for input in domain(block) {
                let raw: Vec<bool> = input.iter().map(|s| s.raw() == 1).collect();
                let mut c = raw[2 * k];
                for j in 0..k {
                    c = raw[j] || (raw[k + j] && c);
                }
                assert_eq!(apply(block, &input).unwrap(), vec![bs(c as u8)]);
            }
        }
    }

    #[test]
    fn supply_mode_restrictions() {
        assert!(!lookup("RAIL1").unwrap().supports(SupplyMode::Single));
        assert!(lookup("RAIL3").unwrap().supports(SupplyMode::Single));
        assert_eq!(lookup("QTG").unwrap().modes(), vec![SupplyMode::Triple]);
        assert_eq!(
            lookup("EBR_COUT").unwrap().modes(),
            vec![SupplyMode::Single]
        );
    }
}
