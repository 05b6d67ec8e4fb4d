//! Internal inconsistencies in the published adder material, each re-derived
//! by machine: oracle comparison, column addition, netlist roll-up or
//! switch-level evaluation.

use serde::{Deserialize, Serialize};

use crate::catalog::{control_signals_v1, lookup, ControlVector, EncoderVariant, SupplyMode};
use crate::designs::{build_moaiyeri_fa, build_qb_digit, CostMode, DesignId, FaImpl, XorImpl};
use crate::mvq::{
    p_formula_one_hot, p_formula_threshold, quat_add_oracle, quat_g_p, BitPair, BitValue, QuatValue,
};
use crate::tables::printed;

pub mod ids {
    pub const TRUTH_TABLE_ROW_330: &str = "truth-table-row-3-3-0";
    pub const TRUTH_TABLE_CIN_MISPRINT: &str = "truth-table-cin-misprint";
    pub const MOAIYERI_CARRY_SUM: &str = "moaiyeri-carry-sum";
    pub const QCCLA_C3: &str = "qccla-c3-cell";
    pub const T7_QB_CLA_OVERHEAD: &str = "t7-qb-cla-overhead";
    pub const T8_QB_CSA_MID: &str = "t8-qb-csa-mid";
    pub const P_FORMULA: &str = "p-formula";
    pub const QB_DECODER_COUNT: &str = "qb-decoder-count";
    pub const MOAIYERI_FA_QSUM1: &str = "moaiyeri-fa-qsum1";
    pub const ENCODER_V1_ROW_10: &str = "encoder-v1-row-1-0";
    pub const ENCODER_IT5_FORM: &str = "encoder-it5-form";
    pub const ENCODER_IT3_REFERENCE: &str = "encoder-it3-reference";
    pub const EBRAHIMI_HA_CARRY: &str = "ebrahimi-ha-carry";
    pub const CLA_C2_FACTORED: &str = "cla-c2-factored";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    OracleRederivation,
    ColumnAddition,
    NetlistRollup,
    EquationCheck,
    SwitchLevel,
}

impl Method {
    pub fn keyword(self) -> &'static str {
        match self {
            Method::OracleRederivation => "oracle re-derivation",
            Method::ColumnAddition => "column addition",
            Method::NetlistRollup => "netlist roll-up",
            Method::EquationCheck => "exhaustive equation check",
            Method::SwitchLevel => "switch-level path evaluation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrataEntry {
    pub id: String,
    pub source: String,
    pub printed: String,
    pub computed: String,
    pub method: Method,
    /// Counterexamples or the arithmetic that exposes the inconsistency.
    pub evidence: Vec<String>,
    /// The machine check reproduced the inconsistency.
    pub confirmed: bool,
}

/// Quaternary-adder truth table as printed: left half (`Ci = 0`) then right
/// half, each row `(A, B, Ci, QS, QC)`.
pub const PRINTED_TRUTH_TABLE: [[u8; 5]; 32] = [
    [0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 2, 0, 2, 0],
    [0, 3, 0, 3, 0],
    [1, 0, 0, 1, 0],
    [1, 1, 0, 2, 0],
    [1, 2, 0, 3, 0],
    [1, 3, 0, 0, 1],
    [2, 0, 0, 2, 0],
    [2, 1, 0, 3, 0],
    [2, 2, 0, 0, 1],
    [2, 3, 0, 1, 1],
    [3, 0, 0, 3, 0],
    [3, 1, 0, 0, 1],
    [3, 2, 0, 1, 1],
    [3, 3, 0, 3, 1],
    [0, 0, 1, 1, 0],
    [0, 1, 1, 2, 0],
    [0, 2, 1, 3, 0],
    [0, 3, 1, 0, 1],
    [1, 0, 1, 2, 0],
    [1, 1, 1, 3, 0],
    [1, 2, 1, 0, 1],
    [1, 3, 1, 1, 1],
    [2, 0, 1, 3, 0],
    [2, 1, 1, 0, 1],
    [2, 2, 1, 1, 1],
    [2, 3, 0, 2, 1],
    [3, 0, 1, 0, 1],
    [3, 1, 1, 1, 1],
    [3, 2, 1, 2, 1],
    [3, 3, 1, 3, 1],
];

/// First encoder's control table as printed: `(X1, X0) -> IT0 IT3 IT4 IT7 IT8 IT9`.
pub const PRINTED_V1_CONTROLS: [([u8; 2], [u8; 6]); 4] = [
    ([0, 0], [1, 0, 1, 0, 1, 1]),
    ([0, 1], [0, 1, 1, 0, 1, 0]),
    ([1, 0], [0, 1, 1, 1, 1, 0]),
    ([1, 1], [1, 0, 1, 0, 0, 0]),
];

/// Second encoder's control table as printed: `(X1, X0) -> IT0 IT5 IT6 IT7 IT8 IT9`.
pub const PRINTED_V2_CONTROLS: [([u8; 2], [u8; 6]); 4] = [
    ([0, 0], [1, 0, 1, 0, 1, 1]),
    ([0, 1], [0, 0, 1, 1, 1, 0]),
    ([1, 0], [1, 1, 0, 0, 1, 0]),
    ([1, 1], [1, 0, 1, 0, 0, 0]),
];

fn q(x: u8) -> QuatValue {
    QuatValue::new(x).expect("in range")
}

fn bv(x: u8) -> BitValue {
    BitValue::new(x).expect("in range")
}

fn oracle_row(a: u8, b: u8, c: u8) -> (u8, u8) {
    let (s, co) = quat_add_oracle(q(a), q(b), bv(c));
    (s.value(), co.value())
}

fn cost(block: &str) -> u32 {
    lookup(block)
        .and_then(|b| b.cost(SupplyMode::Triple).or(b.cost(SupplyMode::Single)))
        .expect("catalog block")
}

fn truth_table_row_330() -> ErrataEntry {
    let wrong: Vec<String> = PRINTED_TRUTH_TABLE
        .iter()
        .filter(|r| r[..3] == [3, 3, 0])
        .filter(|r| (r[3], r[4]) != oracle_row(3, 3, 0))
        .map(|r| format!("printed (A,B,Ci)=(3,3,0) -> QS={} QC={}", r[3], r[4]))
        .collect();
    let (s, c) = oracle_row(3, 3, 0);
    ErrataEntry {
        id: ids::TRUTH_TABLE_ROW_330.into(),
        source: "quaternary adder truth table, row A=3 B=3 Ci=0".into(),
        printed: "QS=3".into(),
        computed: format!("QS={s} QC={c}"),
        method: Method::OracleRederivation,
        confirmed: !wrong.is_empty(),
        evidence: wrong,
    }
}

fn truth_table_cin_misprint() -> ErrataEntry {
    let keys: Vec<[u8; 3]> = PRINTED_TRUTH_TABLE
        .iter()
        .map(|r| [r[0], r[1], r[2]])
        .collect();
    let duplicates: Vec<[u8; 3]> = keys
        .iter()
        .enumerate()
        .filter(|(i, k)| keys[..*i].contains(k))
        .map(|(_, k)| *k)
        .collect();
    let missing: Vec<[u8; 3]> = (0..32u8)
        .map(|i| [i / 8, (i / 2) % 4, i % 2])
        .filter(|k| !keys.contains(k))
        .collect();
    let mut evidence = Vec::new();
    let mut confirmed = false;
    for (idx, row) in PRINTED_TRUTH_TABLE.iter().enumerate().skip(16) {
        let key = [row[0], row[1], row[2]];
        if duplicates.contains(&key) && (row[3], row[4]) == oracle_row(row[0], row[1], 1) {
            evidence.push(format!(
                "right-half row {} reads ({},{},{}) -> ({},{}), which is the oracle value for Ci=1",
                idx - 15,
                row[0],
                row[1],
                row[2],
                row[3],
                row[4]
            ));
            confirmed = missing.contains(&[row[0], row[1], 1]);
        }
    }
    evidence.extend(
        missing
            .iter()
            .map(|k| format!("no row for ({},{},{})", k[0], k[1], k[2])),
    );
    ErrataEntry {
        id: ids::TRUTH_TABLE_CIN_MISPRINT.into(),
        source: "quaternary adder truth table, right-half row 2&3&0".into(),
        printed: "Ci=0".into(),
        computed: "Ci=1".into(),
        method: Method::OracleRederivation,
        evidence,
        confirmed,
    }
}

fn moaiyeri_carry_sum() -> ErrataEntry {
    let terms = [6 * cost("INV"), 6, cost("QTG")];
    let sum: u32 = terms.iter().sum();
    ErrataEntry {
        id: ids::MOAIYERI_CARRY_SUM.into(),
        source: "Moaiyeri half-adder carry: 6 inverters, 6 transistors and 1 QTG".into(),
        printed: "12 + 6 + 16 = 32 T".into(),
        computed: format!("{} + {} + {} = {sum} T", terms[0], terms[1], terms[2]),
        method: Method::ColumnAddition,
        evidence: vec![format!(
            "the half adder total of 128 T keeps the printed 32 T; with {sum} T it would be {}",
            96 + sum
        )],
        confirmed: sum != 32,
    }
}

fn qccla_c3() -> ErrataEntry {
    let cells = printed::QCCLA_CELLS;
    let sum: u32 = cells.iter().map(|(_, v)| v).sum();
    let c3 = cost("CLA_C3");
    let computed_total = 4 * cost("QGEN")
        + 4 * cost("QPROP")
        + (1..=4).map(|k| cost(&format!("CLA_C{k}"))).sum::<u32>();
    ErrataEntry {
        id: ids::QCCLA_C3.into(),
        source: "4-digit CLA carry computation table, C3 cell and total".into(),
        printed: format!("C3 = 26, total {}", printed::QCCLA_TOTAL),
        computed: format!("cells sum to {sum}; C3 = {c3} gives total {computed_total}"),
        method: Method::ColumnAddition,
        evidence: vec![format!(
            "{} = {sum}",
            cells
                .iter()
                .map(|(_, v)| v.to_string())
                .collect::<Vec<_>>()
                .join(" + ")
        )],
        confirmed: sum != printed::QCCLA_TOTAL && computed_total == printed::QCCLA_TOTAL,
    }
}

fn t7_qb_cla_overhead() -> ErrataEntry {
    let diffs = |cla: [u32; 3], cpa: [u32; 3]| -> Vec<u32> {
        cla.iter().zip(cpa).map(|(a, b)| a - b).collect()
    };
    let t7 = diffs(printed::T7_QB[1], printed::T7_QB[0]);
    let t8 = diffs(printed::T8_QB[1], printed::T8_QB[0]);
    let binary = diffs(printed::BINARY_8BIT[1], printed::BINARY_8BIT[0]);
    let block = 4 * cost("BGEN")
        + 4 * cost("BPROP")
        + (1..=4).map(|k| cost(&format!("CLA_C{k}"))).sum::<u32>();
    let computed = 2 * block;
    ErrataEntry {
        id: ids::T7_QB_CLA_OVERHEAD.into(),
        source: "4-digit single-supply table, QB CLA row minus QB CPA row".into(),
        printed: format!("{:?}", t7),
        computed: computed.to_string(),
        method: Method::ColumnAddition,
        evidence: vec![
            format!("three-supply QB CLA - CPA = {:?}", t8),
            format!("8-bit binary CLA - CPA = {:?}", binary),
            format!(
                "8-bit carry computation table total = {}",
                printed::BCCLA_8BIT
            ),
        ],
        confirmed: t7.iter().all(|d| *d != computed)
            && t8.iter().chain(&binary).all(|d| *d == computed)
            && printed::BCCLA_8BIT == computed,
    }
}

fn t8_qb_csa_mid() -> ErrataEntry {
    let cpa = printed::T8_QB[0][1];
    let skip = printed::CCSA_B[4];
    let neighbours: Vec<u32> = [0, 2]
        .iter()
        .map(|&i| printed::T8_QB[2][i] - printed::T8_QB[0][i])
        .collect();
    ErrataEntry {
        id: ids::T8_QB_CSA_MID.into(),
        source: "4-digit three-supply table, QB CSA middle value".into(),
        printed: printed::T8_QB[2][1].to_string(),
        computed: format!("{cpa} + {skip} = {}", cpa + skip),
        method: Method::ColumnAddition,
        evidence: vec![format!(
            "the other two QB CSA values exceed their CPA values by {:?}",
            neighbours
        )],
        confirmed: cpa + skip != printed::T8_QB[2][1] && neighbours.iter().all(|d| *d == skip),
    }
}

fn p_formula() -> ErrataEntry {
    let mut evidence = Vec::new();
    for (reading, f) in [
        (
            "A1/A2/A3 as one-hot (a = k)",
            p_formula_one_hot as fn(QuatValue, QuatValue) -> BitValue,
        ),
        ("A3 as the PQI output (a <= 2)", p_formula_threshold),
    ] {
        let bad: Vec<String> = QuatValue::ALL
            .into_iter()
            .flat_map(|a| QuatValue::ALL.into_iter().map(move |b| (a, b)))
            .filter(|(a, b)| f(*a, *b) != quat_g_p(*a, *b).1)
            .map(|(a, b)| format!("({},{})", a.value(), b.value()))
            .collect();
        evidence.push(format!("{reading}: differs at {}", bad.join(" ")));
    }
    let confirmed = evidence.iter().all(|e| !e.ends_with("at "));
    ErrataEntry {
        id: ids::P_FORMULA.into(),
        source: "quaternary propagate P = A3.B1 + A2.B2 + A1.B3".into(),
        printed: "P = A3.B1 + A2.B2 + A1.B3".into(),
        computed: "P = (a + b = 3)".into(),
        method: Method::EquationCheck,
        evidence,
        confirmed,
    }
}

fn qb_decoder_count() -> ErrataEntry {
    let id = DesignId::qb(SupplyMode::Triple, XorImpl::X16, FaImpl::Fa36);
    let d = build_qb_digit(id).expect("QB id");
    let decoders = d
        .netlist()
        .instances()
        .iter()
        .filter(|i| i.block.name.starts_with("DEC_Q2B"))
        .count();
    let (published, built) = (d.total(CostMode::Published), d.total(CostMode::AsBuilt));
    let passes = d.verify().is_pass();
    ErrataEntry {
        id: ids::QB_DECODER_COUNT.into(),
        source: "1-digit QB adder count: two binary adders, one encoder and one decoder".into(),
        printed: format!("72 + 44 = {published} T"),
        computed: format!("{built} T with {decoders} decoders"),
        method: Method::NetlistRollup,
        evidence: vec![format!(
            "the functional netlist decodes each operand separately and {} exhaustive verification",
            if passes { "passes" } else { "fails" }
        )],
        confirmed: decoders == 2 && built > published && passes,
    }
}

fn moaiyeri_fa_qsum1() -> ErrataEntry {
    let d = build_moaiyeri_fa();
    let (published, built) = (d.total(CostMode::Published), d.total(CostMode::AsBuilt));
    let missing: Vec<String> = d
        .discrepancies()
        .iter()
        .map(|x| {
            format!(
                "{} ({}, {} T) is not in the printed sum",
                x.item, x.block, x.asbuilt
            )
        })
        .collect();
    ErrataEntry {
        id: ids::MOAIYERI_FA_QSUM1.into(),
        source: "Moaiyeri full adder total 96 + 32 + 6 + 16 + 4".into(),
        printed: format!("{published} T"),
        computed: format!("{built} T"),
        method: Method::NetlistRollup,
        confirmed: built > published && d.verify().is_pass(),
        evidence: missing,
    }
}

fn printed_vector(variant: EncoderVariant, v: [u8; 6]) -> ControlVector {
    ControlVector {
        variant,
        values: v.map(bv),
    }
}

fn encoder_v1_row_10() -> ErrataEntry {
    let (bits, row) = PRINTED_V1_CONTROLS[2];
    let pair = BitPair::new(bv(bits[0]), bv(bits[1]));
    let eq = control_signals_v1(pair);
    let printed_levels = printed_vector(EncoderVariant::V1, row).conducting_levels();
    let fmt = |v: &[BitValue]| {
        v.iter()
            .map(|b| b.value().to_string())
            .collect::<Vec<_>>()
            .join("")
    };
    let others_agree = PRINTED_V1_CONTROLS
        .iter()
        .filter(|(b, _)| *b != bits)
        .all(|(b, r)| control_signals_v1(BitPair::new(bv(b[0]), bv(b[1]))).values == r.map(bv));
    ErrataEntry {
        id: ids::ENCODER_V1_ROW_10.into(),
        source: "first single-supply encoder control table, row X1=1 X0=0".into(),
        printed: fmt(&row.map(bv)),
        computed: fmt(&eq.values),
        method: Method::SwitchLevel,
        evidence: vec![
            format!(
                "the printed row drives level(s) {:?}; the input encodes level 2",
                printed_levels.iter().map(|l| l.value()).collect::<Vec<_>>()
            ),
            format!(
                "the other three rows {} the equations",
                if others_agree {
                    "match"
                } else {
                    "do not match"
                }
            ),
        ],
        confirmed: eq.values != row.map(bv) && printed_levels != vec![q(2)] && others_agree,
    }
}

fn encoder_it5_form() -> ErrataEntry {
    let mut bad = Vec::new();
    for ([x1, x0], row) in PRINTED_V2_CONTROLS {
        let (x1, x0) = (x1 == 1, x0 == 1);
        let overline = !(x1 && !x0);
        let nor = !(!x1 || x0);
        if overline != nor {
            bad.push(format!(
                "X1={} X0={}: overline form {}, NOR form {}, printed table {}",
                x1 as u8, x0 as u8, overline as u8, nor as u8, row[1]
            ));
        }
    }
    let table_matches_nor = PRINTED_V2_CONTROLS
        .iter()
        .all(|([x1, x0], row)| row[1] == (!(*x1 == 0 || *x0 == 1)) as u8);
    ErrataEntry {
        id: ids::ENCODER_IT5_FORM.into(),
        source: "second encoder control equation for IT5".into(),
        printed: "IT5 = NOT(X1.NOT X0) = NOR(NOT X1, X0)".into(),
        computed: "NOR(NOT X1, X0), as the printed table uses".into(),
        method: Method::EquationCheck,
        confirmed: !bad.is_empty() && table_matches_nor,
        evidence: bad,
    }
}

fn encoder_it3_reference() -> ErrataEntry {
    let complement = PRINTED_V1_CONTROLS.iter().all(|(_, r)| r[1] == 1 - r[0]);
    ErrataEntry {
        id: ids::ENCODER_IT3_REFERENCE.into(),
        source: "first encoder control equation for IT3".into(),
        printed: "IT3 = NOT(IT1)".into(),
        computed: "IT3 = NOT(IT0)".into(),
        method: Method::EquationCheck,
        evidence: vec![
            "no transistor T1 is controlled".into(),
            format!(
                "printed IT3 column {} the complement of IT0",
                if complement { "is" } else { "is not" }
            ),
        ],
        confirmed: complement,
    }
}

fn ebrahimi_ha_carry() -> ErrataEntry {
    let one_hot = |x: u8| -> [bool; 4] { [x == 0, x == 1, x == 2, x == 3] };
    let printed_carry = |a: u8, b: u8| {
        let (a, b) = (one_hot(a), one_hot(b));
        (a[1] && b[3])
            || (a[2] && b[2])
            || (a[2] && b[3])
            || (a[3] && b[1] && a[3] && b[2])
            || (a[3] && b[3])
    };
    let bad: Vec<String> = (0..4u8)
        .flat_map(|a| (0..4u8).map(move |b| (a, b)))
        .filter(|&(a, b)| printed_carry(a, b) != (a + b >= 4))
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    ErrataEntry {
        id: ids::EBRAHIMI_HA_CARRY.into(),
        source: "Ebrahimi half-adder carry equation".into(),
        printed: "A1.B3 + A2.B2 + A2.B3 + A3.B1.A3.B2 + A3.B3".into(),
        computed: "A1.B3 + A2.B2 + A2.B3 + A3.B1 + A3.B2 + A3.B3".into(),
        method: Method::EquationCheck,
        confirmed: !bad.is_empty(),
        evidence: vec![format!(
            "printed form misses the carry at {}",
            bad.join(" ")
        )],
    }
}

fn cla_c2_factored() -> ErrataEntry {
    let mut first = None;
    for v in 0u8..64 {
        let bit = |i: u8| v >> i & 1 == 1;
        let (g0, g1, g2, p0, p1, c0) = (bit(0), bit(1), bit(2), bit(3), bit(4), bit(5));
        let expanded = g1 || (g0 && p1) || (p0 && p1 && c0);
        let factored = g2 || (p1 && (g0 || (p0 && c0)));
        let corrected = g1 || (p1 && (g0 || (p0 && c0)));
        assert_eq!(expanded, corrected);
        if expanded != factored && first.is_none() {
            first = Some(format!(
                "G0={} G1={} G2={} P0={} P1={} C0={}",
                g0 as u8, g1 as u8, g2 as u8, p0 as u8, p1 as u8, c0 as u8
            ));
        }
    }
    ErrataEntry {
        id: ids::CLA_C2_FACTORED.into(),
        source: "factored form of the C2 lookahead equation".into(),
        printed: "C2 = G2 + P1(G0 + P0C0)".into(),
        computed: "C2 = G1 + P1(G0 + P0C0)".into(),
        method: Method::EquationCheck,
        confirmed: first.is_some(),
        evidence: first
            .into_iter()
            .map(|f| format!("expanded and factored forms differ at {f}"))
            .collect(),
    }
}

/// Every known inconsistency, in a fixed order.
pub fn errata() -> Vec<ErrataEntry> {
    vec![
        truth_table_row_330(),
        truth_table_cin_misprint(),
        moaiyeri_carry_sum(),
        qccla_c3(),
        t7_qb_cla_overhead(),
        t8_qb_csa_mid(),
        p_formula(),
        qb_decoder_count(),
        moaiyeri_fa_qsum1(),
        encoder_v1_row_10(),
        encoder_it5_form(),
        encoder_it3_reference(),
        ebrahimi_ha_carry(),
        cla_c2_factored(),
    ]
}
