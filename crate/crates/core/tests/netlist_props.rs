use proptest::prelude::*;

use qadd_core::catalog::{catalog, BlockSpec, Signal, SignalKind, SupplyMode};
use qadd_core::designs::{
    build_composition, build_digit, build_ebrahimi_ha, build_moaiyeri_ha, CompositionKind, Design,
    DesignId, Organization,
};
use qadd_core::netlist::{
    emit_netlist, evaluate, exhaustive_verify, parse_netlist, total_cost, Netlist, Program,
};

fn all_designs() -> Vec<Design> {
    let mut out: Vec<Design> = DesignId::all().into_iter().map(build_digit).collect();
    out.push(build_ebrahimi_ha());
    out.push(build_moaiyeri_ha());
    for id in DesignId::all() {
        let width = if id.family().is_quaternary() { 4 } else { 8 };
        for kind in Organization::ALL {
            out.push(build_composition(id, CompositionKind { kind, width }).unwrap());
        }
    }
    out
}

#[test]
fn builder_netlists_round_trip() {
    for d in all_designs() {
        let text = emit_netlist(d.netlist());
        let parsed = parse_netlist(&text).unwrap();
        assert_eq!(&parsed, d.netlist(), "{}", d.netlist().name());
        assert_eq!(emit_netlist(&parsed), text);
        assert!(!text.contains('\r') && !text.contains("  "));
    }
}

/// Full truth table of a netlist as raw output levels.
fn truth_table(n: &Netlist) -> Vec<Vec<u8>> {
    let p = Program::compile(n).unwrap();
    let kinds: Vec<SignalKind> = p.input_kinds().collect();
    let total: usize = kinds.iter().map(|k| k.domain_size() as usize).product();
    let mut nets = p.scratch();
    (0..total)
        .map(|mut idx| {
            let raw: Vec<u8> = kinds
                .iter()
                .map(|k| {
                    let d = k.domain_size() as usize;
                    let v = (idx % d) as u8;
                    idx /= d;
                    v
                })
                .collect();
            let mut out = vec![0; p.output_count()];
            p.run_raw(&raw, &mut nets, &mut out);
            out
        })
        .collect()
}

fn same_signature(a: &BlockSpec, b: &BlockSpec) -> bool {
    let kinds =
        |ports: &[qadd_core::catalog::Port]| ports.iter().map(|p| p.kind).collect::<Vec<_>>();
    kinds(a.inputs) == kinds(b.inputs) && kinds(a.outputs) == kinds(b.outputs)
}

fn block_table(block: &'static BlockSpec) -> Vec<Vec<u8>> {
    let mut n = Netlist::new("probe", block.modes()[0]);
    let ins: Vec<String> = (0..block.inputs.len()).map(|i| format!("i{i}")).collect();
    let outs: Vec<String> = (0..block.outputs.len()).map(|i| format!("o{i}")).collect();
    for (name, port) in ins.iter().zip(block.inputs) {
        n.add_input(name, port.kind).unwrap();
    }
    for (name, port) in outs.iter().zip(block.outputs) {
        n.add_output(name, port.kind).unwrap();
    }
    let ins: Vec<&str> = ins.iter().map(String::as_str).collect();
    let outs: Vec<&str> = outs.iter().map(String::as_str).collect();
    n.add_instance_of("u", block, &ins, &outs).unwrap();
    truth_table(&n)
}

#[test]
fn single_block_substitutions_are_caught() {
    let mut caught = 0;
    let mut masked = Vec::new();
    let mut singles: Vec<Design> = DesignId::all().into_iter().map(build_digit).collect();
    singles.push(build_ebrahimi_ha());
    singles.push(build_moaiyeri_ha());
    for d in singles {
        let n = d.netlist();
        let reference = truth_table(n);
        let oracle = d.oracle();
        for (idx, inst) in n.instances().iter().enumerate() {
            for alt in catalog() {
                if !alt.supports(n.supply())
                    || !same_signature(alt, inst.block)
                    || block_table(alt) == block_table(inst.block)
                {
                    continue;
                }
                let mut m = n.clone();
                m.replace_block(idx, alt);
                let differing = truth_table(&m)
                    .iter()
                    .zip(&reference)
                    .filter(|(a, b)| a != b)
                    .count() as u64;
                let report = exhaustive_verify(&m, &oracle).unwrap();
                assert_eq!(
                    report.mismatches.len() as u64,
                    differing,
                    "{} {} -> {}",
                    n.name(),
                    inst.name,
                    alt.name
                );
                if differing > 0 {
                    assert!(!report.is_pass());
                    caught += 1;
                } else {
                    masked.push(format!("{} {} -> {}", n.name(), inst.name, alt.name));
                }
            }
        }
    }
    assert!(masked.is_empty(), "{masked:#?}");
    assert!(caught >= 50, "{caught}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cost_and_behavior_invariant_under_reordering(design in 0usize..40, seed in any::<u64>()) {
        let designs = all_designs();
        let d = &designs[design % designs.len()];
        let n = d.netlist();
        let mut order: Vec<usize> = (0..n.instances().len()).collect();
        // Fisher-Yates driven by a small LCG so the permutation is reproducible from `seed`
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut shuffled = n.clone();
        shuffled.permute_instances(&order);
        prop_assert_eq!(total_cost(&shuffled).unwrap().total, total_cost(n).unwrap().total);
        prop_assert_eq!(total_cost(&shuffled).unwrap().by_block, total_cost(n).unwrap().by_block);
        if n.input_count() <= 5 {
            prop_assert_eq!(truth_table(&shuffled), truth_table(n));
        }
    }

    #[test]
    fn evaluation_is_repeatable(a in 0u8..4, b in 0u8..4, c in 0u8..2, design in 0usize..36) {
        let ids = DesignId::all();
        let id = ids[design % ids.len()];
        prop_assume!(id.family().is_quaternary());
        let n = build_digit(id).into_netlist();
        let ins = [
            Signal::from_raw(SignalKind::Quat, a).unwrap(),
            Signal::from_raw(SignalKind::Quat, b).unwrap(),
            Signal::from_raw(SignalKind::Bit, c).unwrap(),
        ];
        prop_assert_eq!(evaluate(&n, &ins).unwrap(), evaluate(&n, &ins).unwrap());
    }

    #[test]
    fn random_gate_chains_round_trip(gates in prop::collection::vec((0usize..4, 0usize..8, 0usize..8), 1..30)) {
        let mut n = Netlist::new("random", SupplyMode::Single);
        n.add_input("x0", SignalKind::Bit).unwrap();
        n.add_input("x1", SignalKind::Bit).unwrap();
        let mut nets = vec!["x0".to_string(), "x1".to_string()];
        for (i, (g, l, r)) in gates.iter().enumerate() {
            let out = format!("n{i}");
            let (l, r) = (&nets[l % nets.len()].clone(), &nets[r % nets.len()].clone());
            match g {
                0 => n.add_instance(&format!("g{i}"), "INV", &[l], &[&out]).unwrap(),
                1 => n.add_instance(&format!("g{i}"), "NAND2", &[l, r], &[&out]).unwrap(),
                2 => n.add_instance(&format!("g{i}"), "NOR2", &[l, r], &[&out]).unwrap(),
                _ => n.add_instance(&format!("g{i}"), "XOR3", &[l, r], &[&out]).unwrap(),
            }
            nets.push(out);
        }
        n.add_output(nets.last().unwrap(), SignalKind::Bit).unwrap();
        let text = emit_netlist(&n);
        let parsed = parse_netlist(&text).unwrap();
        prop_assert_eq!(&parsed, &n);
        prop_assert_eq!(emit_netlist(&parsed), text);
        prop_assert_eq!(truth_table(&parsed), truth_table(&n));
    }
}
