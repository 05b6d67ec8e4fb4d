//! Ripple, lookahead and skip organizations over binary bits or quaternary
//! digits.

use super::digit::{add_digit, encoder_block, DigitPorts};
use super::{
    Builder, CompositionKind, Design, DesignId, FaImpl, Family, Organization, Shape, Variant,
};
use crate::catalog::SignalKind;
use crate::errata::ids;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Lookahead unit `C1..C4` over one group of four positions.
fn lookahead_group(
    b: &mut Builder,
    tag: &str,
    g: &[&str],
    p: &[&str],
    cin: &str,
    carries: &[&str],
) {
    for k in 1..=g.len() {
        let mut ins: Vec<&str> = g[..k].to_vec();
        ins.extend_from_slice(&p[..k]);
        ins.push(cin);
        b.put(
            &format!("{tag}_c{k}"),
            &format!("CLA_C{k}"),
            &ins,
            &[carries[k - 1]],
        );
    }
}

/// Skip unit: carry out of the group is `cin` when every position propagates.
fn skip_group(b: &mut Builder, tag: &str, p: &[&str], ripple: &str, cin: &str, cout: &str) {
    let all = format!("{tag}_allp");
    b.put(&format!("{tag}_and"), "AND4", p, &[&all]);
    b.put(&format!("{tag}_mux"), "MUX2", &[&all, ripple, cin], &[cout]);
}

/// Binary adder over little-endian bit nets.
#[allow(clippy::too_many_arguments)]
fn binary_core(
    b: &mut Builder,
    fa: FaImpl,
    org: Organization,
    a: &[&str],
    bb: &[&str],
    cin: &str,
    s: &[&str],
    cout: &str,
) {
    let w = a.len();
    match org {
        Organization::Cpa => {
            let mut carry = cin.to_string();
            for j in 0..w {
                let next = if j + 1 == w {
                    cout.to_string()
                } else {
                    format!("c{}", j + 1)
                };
                b.put(
                    &format!("fa{j}"),
                    fa.block(),
                    &[a[j], bb[j], &carry],
                    &[s[j], &next],
                );
                carry = next;
            }
        }
        Organization::Cla => {
            let g = names("g", w);
            let p = names("p", w);
            for j in 0..w {
                b.put(&format!("gen{j}"), "BGEN", &[a[j], bb[j]], &[&g[j]]);
                b.put(&format!("prop{j}"), "BPROP", &[a[j], bb[j]], &[&p[j]]);
            }
            let mut carries: Vec<String> = vec![cin.to_string()];
            carries.extend((1..w).map(|j| format!("c{j}")));
            carries.push(cout.to_string());
            for k in 0..w / 4 {
                let r = 4 * k..4 * k + 4;
                let outs = refs(&carries[4 * k + 1..4 * k + 5]);
                lookahead_group(
                    b,
                    &format!("cla{k}"),
                    &refs(&g[r.clone()]),
                    &refs(&p[r]),
                    &carries[4 * k],
                    &outs,
                );
            }
            for j in 0..w {
                b.put(
                    &format!("fa{j}"),
                    fa.block(),
                    &[a[j], bb[j], &carries[j]],
                    &[s[j], &format!("fa{j}_co")],
                );
            }
        }
        Organization::Csa => {
            let p = names("p", w);
            let mut block_cin = cin.to_string();
            for k in 0..w / 4 {
                let mut carry = block_cin.clone();
                for j in 4 * k..4 * k + 4 {
                    let next = if j % 4 == 3 {
                        format!("rc{k}")
                    } else {
                        format!("c{}", j + 1)
                    };
                    b.put(
                        &format!("fa{j}"),
                        fa.block(),
                        &[a[j], bb[j], &carry],
                        &[s[j], &next],
                    );
                    b.put(&format!("prop{j}"), "BPROP", &[a[j], bb[j]], &[&p[j]]);
                    carry = next;
                }
                let block_out = if 4 * k + 4 == w {
                    cout.to_string()
                } else {
                    format!("c{}", 4 * k + 4)
                };
                skip_group(
                    b,
                    &format!("skip{k}"),
                    &refs(&p[4 * k..4 * k + 4]),
                    &carry,
                    &block_cin,
                    &block_out,
                );
                block_cin = block_out;
            }
        }
    }
}

/// QB adder: per-digit decoders into a binary core, per-digit encoders out.
#[allow(clippy::too_many_arguments)]
pub(crate) fn qb_adder(
    b: &mut Builder,
    id: DesignId,
    digits: usize,
    org: Organization,
    a: &[&str],
    bq: &[&str],
    cin: &str,
    qs: &[&str],
    qc: &str,
) {
    let Variant::Qb { xor, fa, .. } = id.variant() else {
        unreachable!("QB adders carry a QB variant")
    };
    let (abits, bbits, sbits) = (
        names("a", 2 * digits),
        names("b", 2 * digits),
        names("s", 2 * digits),
    );
    for i in 0..digits {
        b.put(
            &format!("dec_a{i}"),
            xor.decoder_block(),
            &[a[i]],
            &[&abits[2 * i + 1], &abits[2 * i]],
        );
        let dec_b = format!("dec_b{i}");
        b.put(
            &dec_b,
            xor.decoder_block(),
            &[bq[i]],
            &[&bbits[2 * i + 1], &bbits[2 * i]],
        );
        b.omit(&dec_b, ids::QB_DECODER_COUNT);
    }
    binary_core(
        b,
        fa,
        org,
        &refs(&abits),
        &refs(&bbits),
        cin,
        &refs(&sbits),
        qc,
    );
    for i in 0..digits {
        b.put(
            &format!("enc{i}"),
            encoder_block(id),
            &[&sbits[2 * i + 1], &sbits[2 * i]],
            &[qs[i]],
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn quaternary_adder(
    b: &mut Builder,
    id: DesignId,
    org: Organization,
    a: &[&str],
    bq: &[&str],
    cin: &str,
    qs: &[&str],
    qc: &str,
) {
    let n = a.len();
    match org {
        Organization::Cpa => {
            let mut carry = cin.to_string();
            for i in 0..n {
                let next = if i + 1 == n {
                    qc.to_string()
                } else {
                    format!("c{}", i + 1)
                };
                let io = DigitPorts {
                    a: a[i],
                    b: bq[i],
                    cin: &carry,
                    qs: qs[i],
                    qc: &next,
                };
                add_digit(b, id, &format!("d{i}."), &io);
                carry = next;
            }
        }
        Organization::Cla => {
            let g = names("g", n);
            let p = names("p", n);
            for i in 0..n {
                b.put(&format!("gen{i}"), "QGEN", &[a[i], bq[i]], &[&g[i]]);
                b.put(&format!("prop{i}"), "QPROP", &[a[i], bq[i]], &[&p[i]]);
            }
            let mut carries: Vec<String> = vec![cin.to_string()];
            carries.extend((1..n).map(|i| format!("c{i}")));
            carries.push(qc.to_string());
            lookahead_group(b, "cla", &refs(&g), &refs(&p), cin, &refs(&carries[1..]));
            for i in 0..n {
                let co = format!("d{i}_co");
                let io = DigitPorts {
                    a: a[i],
                    b: bq[i],
                    cin: &carries[i],
                    qs: qs[i],
                    qc: &co,
                };
                add_digit(b, id, &format!("d{i}."), &io);
            }
        }
        Organization::Csa => {
            let p = names("p", n);
            let mut carry = cin.to_string();
            for i in 0..n {
                let next = if i + 1 == n {
                    "rc".to_string()
                } else {
                    format!("c{}", i + 1)
                };
                let io = DigitPorts {
                    a: a[i],
                    b: bq[i],
                    cin: &carry,
                    qs: qs[i],
                    qc: &next,
                };
                add_digit(b, id, &format!("d{i}."), &io);
                b.put(&format!("prop{i}"), "QPROP", &[a[i], bq[i]], &[&p[i]]);
                carry = next;
            }
            skip_group(b, "skip", &refs(&p), &carry, cin, qc);
        }
    }
}

pub(crate) fn build(id: DesignId, c: CompositionKind) -> Design {
    let w = c.width as usize;
    let name = format!("{id}-{}{}", c.kind.keyword(), c.width);
    let mut b = Builder::new(name, id.supply());
    if id.family() == Family::Binary {
        let Variant::Binary { fa } = id.variant() else {
            unreachable!("binary adders carry a binary variant")
        };
        let (a, bb, s) = (names("a", w), names("b", w), names("s", w));
        for n in a.iter().chain(&bb) {
            b.input(n, SignalKind::Bit);
        }
        b.input("cin", SignalKind::Bit);
        for n in &s {
            b.output(n, SignalKind::Bit);
        }
        b.output("cout", SignalKind::Bit);
        binary_core(
            &mut b,
            fa,
            c.kind,
            &refs(&a),
            &refs(&bb),
            "cin",
            &refs(&s),
            "cout",
        );
    } else {
        let (a, bq, qs) = (names("A", w), names("B", w), names("QS", w));
        for n in a.iter().chain(&bq) {
            b.input(n, SignalKind::Quat);
        }
        b.input("Cin", SignalKind::Bit);
        for n in &qs {
            b.output(n, SignalKind::Quat);
        }
        b.output("QC", SignalKind::Bit);
        if id.family() == Family::Qb {
            qb_adder(
                &mut b,
                id,
                w,
                c.kind,
                &refs(&a),
                &refs(&bq),
                "Cin",
                &refs(&qs),
                "QC",
            );
        } else {
            quaternary_adder(
                &mut b,
                id,
                c.kind,
                &refs(&a),
                &refs(&bq),
                "Cin",
                &refs(&qs),
                "QC",
            );
        }
    }
    Design::from_builder(id, Shape::Composition(c), b)
}
