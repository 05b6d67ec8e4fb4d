//! Single-digit adders. Each `add_*` function places one digit's instances
//! under a name prefix so compositions can reuse it.

use super::{compose, Builder, Design, DesignId, InverterSharing, Shape, Variant};
use crate::catalog::{EncoderVariant, SignalKind, SupplyMode};
use crate::errata::ids;

pub(crate) struct DigitPorts<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub cin: &'a str,
    pub qs: &'a str,
    pub qc: &'a str,
}

fn single_digit_io(b: &mut Builder, half: bool) {
    b.input("A", SignalKind::Quat);
    b.input("B", SignalKind::Quat);
    if !half {
        b.input("Cin", SignalKind::Bit);
    }
    b.output("QS", SignalKind::Quat);
    b.output("QC", SignalKind::Bit);
}

const PORTS: DigitPorts<'static> = DigitPorts {
    a: "A",
    b: "B",
    cin: "Cin",
    qs: "QS",
    qc: "QC",
};

pub(crate) fn encoder_block(id: DesignId) -> &'static str {
    match (id.supply(), id.variant()) {
        (SupplyMode::Triple, _) => "ENC_B2Q",
        (
            SupplyMode::Single,
            Variant::Qb {
                encoder: EncoderVariant::V2,
                ..
            },
        ) => "ENC_B2Q_V2",
        (SupplyMode::Single, _) => "ENC_B2Q_V1",
    }
}

/// Quaternary digit wrapped around two chained binary full adders.
pub(crate) fn qb(id: DesignId) -> Design {
    let mut b = Builder::new(id.to_string(), id.supply());
    single_digit_io(&mut b, false);
    compose::qb_adder(
        &mut b,
        id,
        1,
        super::Organization::Cpa,
        &["A"],
        &["B"],
        "Cin",
        &["QS"],
        "QC",
    );
    Design::from_builder(id, Shape::Digit, b)
}

fn ebrahimi_decode(b: &mut Builder, p: &str, operand: &str, tag: &str) -> [String; 7] {
    let outs = ["i0", "i1", "i1n", "ii", "i2n", "i2", "i3"].map(|s| format!("{p}{tag}_{s}"));
    let refs: Vec<&str> = outs.iter().map(String::as_str).collect();
    b.put(&format!("{p}dec_{tag}"), "QDEC_FULL", &[operand], &refs);
    outs
}

/// Indicator nets `(i0, i1, i2, i3)` consumed by the sum-of-products blocks.
fn one_hot_inputs(d: &[String; 7]) -> [&str; 4] {
    [&d[0], &d[1], &d[5], &d[6]]
}

pub(crate) fn add_ebrahimi(b: &mut Builder, p: &str, io: &DigitPorts) {
    let da = ebrahimi_decode(b, p, io.a, "a");
    let db = ebrahimi_decode(b, p, io.b, "b");
    let h = format!("{p}h");
    let mut half_in = one_hot_inputs(&da).to_vec();
    half_in.extend(one_hot_inputs(&db));
    b.put(&format!("{p}hsum"), "EBR_HSUM", &half_in, &[&h]);

    let hd = ["h0", "h1", "h2", "h3"].map(|s| format!("{p}{s}"));
    b.put(
        &format!("{p}dec_h"),
        "QDEC_H",
        &[&h],
        &[&hd[0], &hd[1], &hd[2], &hd[3]],
    );
    let (c0, c1) = (format!("{p}cin_n"), format!("{p}cin_p"));
    b.put(&format!("{p}inv_c0"), "INV", &[io.cin], &[&c0]);
    b.put(&format!("{p}inv_c1"), "INV", &[&c0], &[&c1]);
    b.put(
        &format!("{p}msum"),
        "EBR_MSUM",
        &[&hd[0], &hd[1], &hd[2], &hd[3], &c0, &c1],
        &[io.qs],
    );
    b.put(
        &format!("{p}cout"),
        "EBR_COUT",
        &[&hd[0], &hd[1], &hd[2], &hd[3], &da[0], &da[3], &da[6], &c0],
        &[io.qc],
    );
}

pub(crate) fn ebrahimi_fa() -> Design {
    let id = DesignId::ebrahimi();
    let mut b = Builder::new("ebrahimi-fa".into(), id.supply());
    single_digit_io(&mut b, false);
    add_ebrahimi(&mut b, "", &PORTS);
    Design::from_builder(id, Shape::Digit, b)
}

pub(crate) fn ebrahimi_ha() -> Design {
    let id = DesignId::ebrahimi();
    let mut b = Builder::new("ebrahimi-ha".into(), id.supply());
    single_digit_io(&mut b, true);
    let da = ebrahimi_decode(&mut b, "", "A", "a");
    let db = ebrahimi_decode(&mut b, "", "B", "b");
    let mut half_in = one_hot_inputs(&da).to_vec();
    half_in.extend(one_hot_inputs(&db));
    b.put("hsum", "EBR_HSUM", &half_in, &["QS"]);
    b.put("hcarry", "EBR_HCARRY", &half_in, &["QC"]);
    Design::from_builder(id, Shape::HalfAdder, b)
}

struct MoaiyeriHalf {
    a: [String; 3],
    succ: [String; 3],
    qs0: String,
    c0: String,
    ge: [String; 3],
}

fn add_moaiyeri_half(
    b: &mut Builder,
    p: &str,
    a: &str,
    bq: &str,
    qs0: &str,
    c0: &str,
) -> MoaiyeriHalf {
    let rails = ["l0", "l1", "l2", "l3"].map(|s| format!("{p}{s}"));
    for (k, r) in rails.iter().enumerate() {
        b.put(&format!("{p}rail{k}"), &format!("RAIL{k}"), &[], &[r]);
    }
    let ad = ["a_n", "a_i", "a_p"].map(|s| format!("{p}{s}"));
    let bd = ["b_n", "b_i", "b_p"].map(|s| format!("{p}{s}"));
    b.put(
        &format!("{p}qdec_a"),
        "QDEC",
        &[a],
        &[&ad[0], &ad[1], &ad[2]],
    );
    b.put(
        &format!("{p}qdec_b"),
        "QDEC",
        &[bq],
        &[&bd[0], &bd[1], &bd[2]],
    );

    // (B + k) mod 4 selected from the rails by B
    let succ = ["s1", "s2", "s3"].map(|s| format!("{p}{s}"));
    for (k, s) in succ.iter().enumerate() {
        let k = k + 1;
        let d: Vec<&str> = (0..4).map(|j| rails[(j + k) % 4].as_str()).collect();
        b.put(
            &format!("{p}qtg_s{k}"),
            "QTG",
            &[&bd[0], &bd[1], &bd[2], d[0], d[1], d[2], d[3]],
            &[s],
        );
    }
    b.put(
        &format!("{p}qtg_qs0"),
        "QTG",
        &[&ad[0], &ad[1], &ad[2], bq, &succ[0], &succ[1], &succ[2]],
        &[qs0],
    );
    let ge = ["b_ge1", "b_ge2", "b_ge3"].map(|s| format!("{p}{s}"));
    b.put(
        &format!("{p}carry"),
        "MOA_CARRY",
        &[&ad[0], &ad[1], &ad[2], &bd[0], &bd[1], &bd[2]],
        &[c0, &ge[0], &ge[1], &ge[2]],
    );
    MoaiyeriHalf {
        a: ad,
        succ,
        qs0: qs0.to_string(),
        c0: c0.to_string(),
        ge,
    }
}

pub(crate) fn add_moaiyeri(b: &mut Builder, p: &str, io: &DigitPorts) {
    let h = add_moaiyeri_half(b, p, io.a, io.b, &format!("{p}qs0"), &format!("{p}c0"));
    let [an, ai, ap] = &h.a;
    let qs1 = format!("{p}qs1");
    let qtg_qs1 = format!("{p}qtg_qs1");
    b.put(
        &qtg_qs1,
        "QTG",
        &[an, ai, ap, &h.succ[0], &h.succ[1], &h.succ[2], io.b],
        &[&qs1],
    );
    b.omit(&qtg_qs1, ids::MOAIYERI_FA_QSUM1);

    let cin_n = format!("{p}cin_n");
    b.put(&format!("{p}inv_cin"), "INV", &[io.cin], &[&cin_n]);
    b.put(
        &format!("{p}sel_qs"),
        "TGMUX_Q",
        &[io.cin, &cin_n, &h.qs0, &qs1],
        &[io.qs],
    );

    // carry with Cin = 1: A + B >= 3, i.e. B >= 3 - A
    let (one, c1) = (format!("{p}one"), format!("{p}c1"));
    b.put(&format!("{p}tie1"), "TIE1", &[], &[&one]);
    b.put(
        &format!("{p}qtg_c1"),
        "QTGB",
        &[an, ai, ap, &h.ge[2], &h.ge[1], &h.ge[0], &one],
        &[&c1],
    );
    b.put(
        &format!("{p}sel_qc"),
        "TGMUX_B",
        &[io.cin, &cin_n, &h.c0, &c1],
        &[io.qc],
    );
}

pub(crate) fn moaiyeri_fa() -> Design {
    let id = DesignId::moaiyeri();
    let mut b = Builder::new("moaiyeri-fa".into(), id.supply());
    single_digit_io(&mut b, false);
    add_moaiyeri(&mut b, "", &PORTS);
    Design::from_builder(id, Shape::Digit, b)
}

pub(crate) fn moaiyeri_ha() -> Design {
    let id = DesignId::moaiyeri();
    let mut b = Builder::new("moaiyeri-ha".into(), id.supply());
    single_digit_io(&mut b, true);
    add_moaiyeri_half(&mut b, "", "A", "B", "QS", "QC");
    Design::from_builder(id, Shape::HalfAdder, b)
}

pub(crate) fn add_roosta(b: &mut Builder, p: &str, sharing: InverterSharing, io: &DigitPorts) {
    let banks: &[&str] = match sharing {
        InverterSharing::Shared => &["ge"],
        InverterSharing::PerSubblock => &["mux", "ha", "sfa", "cfa"],
    };
    let ge: Vec<[String; 3]> = banks
        .iter()
        .map(|bank| {
            let nets = ["1", "2", "3"].map(|k| format!("{p}{bank}_ge{k}"));
            b.put(
                &format!("{p}rinv_{bank}"),
                "RINV",
                &[io.b],
                &[&nets[0], &nets[1], &nets[2]],
            );
            nets
        })
        .collect();
    let bank = |i: usize| &ge[i.min(ge.len() - 1)];

    let shifted = ["a1", "a2", "a3"].map(|s| format!("{p}{s}"));
    b.put(&format!("{p}succ1"), "SUCC1", &[io.a], &[&shifted[0]]);
    b.put(&format!("{p}succ2"), "SUCC2", &[io.a], &[&shifted[1]]);
    b.put(&format!("{p}pred"), "PRED", &[io.a], &[&shifted[2]]);

    let (qs0, c0) = (format!("{p}qs0"), format!("{p}c0"));
    let g = bank(0);
    b.put(
        &format!("{p}qmux"),
        "QMUX4",
        &[
            &g[0],
            &g[1],
            &g[2],
            io.a,
            &shifted[0],
            &shifted[1],
            &shifted[2],
        ],
        &[&qs0],
    );
    let g = bank(1);
    b.put(
        &format!("{p}cha"),
        "RCHA",
        &[&g[0], &g[1], &g[2], io.a],
        &[&c0],
    );
    let g = bank(2);
    b.put(
        &format!("{p}sfa"),
        "RSFA",
        &[
            io.cin,
            &qs0,
            &g[0],
            &g[1],
            &g[2],
            &shifted[0],
            &shifted[1],
            &shifted[2],
            io.a,
        ],
        &[io.qs],
    );
    let g = bank(3);
    b.put(
        &format!("{p}cfa"),
        "RCFA",
        &[io.cin, &c0, &g[0], &g[1], &g[2], io.a],
        &[io.qc],
    );
}

pub(crate) fn roosta_fa(supply: SupplyMode, sharing: InverterSharing) -> Design {
    let id = DesignId::roosta(supply, sharing);
    let mut b = Builder::new(id.to_string(), supply);
    single_digit_io(&mut b, false);
    add_roosta(&mut b, "", sharing, &PORTS);
    Design::from_builder(id, Shape::Digit, b)
}

/// Places one digit of a quaternary family.
pub(crate) fn add_digit(b: &mut Builder, id: DesignId, p: &str, io: &DigitPorts) {
    match id.variant() {
        Variant::Roosta { sharing } => add_roosta(b, p, sharing, io),
        Variant::Fixed if id.family() == super::Family::Ebrahimi => add_ebrahimi(b, p, io),
        Variant::Fixed => add_moaiyeri(b, p, io),
        Variant::Qb { .. } | Variant::Binary { .. } => {
            unreachable!("bit-level families are composed separately")
        }
    }
}
