//! `qadd`: verify adder designs, print transistor counts and cost tables,
//! and move netlists in and out of the `.qnl` text format.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qadd_core::catalog::{EncoderVariant, Signal, SupplyMode};
use qadd_core::designs::{
    binary_oracle, build_composition, build_digit, build_ebrahimi_ha, build_moaiyeri_ha,
    digit_oracle, half_adder_oracle, quaternary_oracle, CompositionKind, CostMode, Design,
    DesignId, FaImpl, Family, InverterSharing, Organization, QbPreset, Variant, XorImpl,
};
use qadd_core::errata::errata;
use qadd_core::netlist::{
    check_well_formed, emit_netlist, exhaustive_verify, parse_netlist, total_cost, EvalError,
    Netlist, Program, VerifyReport,
};
use qadd_core::tables::{cost_table, TableId};

mod render;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qadd",
    version,
    about = "Quaternary adder netlists, verification and transistor counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a design or netlist against integer addition on every input vector.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Verify every 1-digit design and every 4-digit (8-bit) organization.
        #[arg(long, conflicts_with_all = ["design", "netlist"])]
        all: bool,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
        /// Counterexamples printed per design.
        #[arg(long, default_value_t = 10)]
        max_counterexamples: usize,
    },
    /// Print the transistor-count breakdown of a design or netlist.
    Cost {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_mode, default_value = "published")]
        mode: CostMode,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Print a reproduced cost table next to its printed values.
    Table {
        /// T6, T7, T8, BCCLA, QCCLA or CCSA.
        #[arg(long, value_parser = parse_table)]
        id: TableId,
        #[arg(long, value_parser = parse_mode, default_value = "published")]
        mode: CostMode,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Print every detected inconsistency with its printed and recomputed values.
    Errata {
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Write the netlist of a design as `.qnl` text.
    Netlist {
        #[command(flatten)]
        design: DesignArgs,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Evaluate a `.qnl` netlist on one input vector.
    Eval {
        #[arg(long)]
        netlist: PathBuf,
        /// Comma-separated assignments, e.g. `A=2,B=3,Cin=1`.
        #[arg(long)]
        inputs: String,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[command(flatten)]
    design: DesignArgs,
    /// Read a `.qnl` file instead of building a design.
    #[arg(long, conflicts_with = "design")]
    netlist: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct DesignArgs {
    /// qb, ebrahimi, moaiyeri, roosta or binary.
    #[arg(long, value_parser = parse_family)]
    design: Option<Family>,
    /// Number of supply rails: 1 or 3 (also `single`, `triple`).
    #[arg(long, value_parser = parse_supply)]
    supply: Option<SupplyMode>,
    /// QB decoder/full-adder pairing.
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// QB decoder XOR: xor16, xor9 or xor3.
    #[arg(long, value_enum)]
    xor: Option<XorArg>,
    /// Full-adder cell of QB and binary designs: fa36, fa18 or fa8.
    #[arg(long, value_enum)]
    fa: Option<FaArg>,
    /// Single-supply QB encoder: v1 or v2.
    #[arg(long, value_enum)]
    encoder: Option<EncoderArg>,
    /// Roosta threshold-inverter banks.
    #[arg(long, value_enum)]
    sharing: Option<SharingArg>,
    /// Multi-digit organization: cpa, cla or csa.
    #[arg(long, value_enum)]
    organization: Option<OrgArg>,
    /// Digits (quaternary) or bits (binary) of a multi-digit adder.
    #[arg(long)]
    width: Option<u32>,
    /// The half adder of the Ebrahimi or Moaiyeri family.
    #[arg(long)]
    half: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetArg {
    Conservative,
    Conventional,
    Aggressive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum XorArg {
    Xor16,
    Xor9,
    Xor3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaArg {
    Fa36,
    Fa18,
    Fa8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncoderArg {
    V1,
    V2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SharingArg {
    Shared,
    PerSubblock,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrgArg {
    Cpa,
    Cla,
    Csa,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_keyword(s).ok_or_else(|| {
        format!("unknown design family `{s}` (qb, ebrahimi, moaiyeri, roosta, binary)")
    })
}

fn parse_supply(s: &str) -> Result<SupplyMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "1" | "single" => Ok(SupplyMode::Single),
        "3" | "triple" => Ok(SupplyMode::Triple),
        _ => Err(format!("unknown supply `{s}` (1, 3, single, triple)")),
    }
}

fn parse_mode(s: &str) -> Result<CostMode, String> {
    CostMode::from_keyword(&s.to_ascii_lowercase())
        .ok_or_else(|| format!("unknown cost mode `{s}` (published, asbuilt)"))
}

fn parse_table(s: &str) -> Result<TableId, String> {
    TableId::from_keyword(s)
        .ok_or_else(|| format!("unknown table `{s}` (T6, T7, T8, BCCLA, QCCLA, CCSA)"))
}

/// A command failure and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut text = String::new();
    let code = match command {
        Command::Verify {
            target,
            all,
            format,
            max_counterexamples,
        } => {
            let checked: Vec<(VerifyReport, Vec<String>)> = if all {
                every_design()
                    .iter()
                    .map(|d| (d.verify(), output_names(d.netlist())))
                    .collect()
            } else {
                vec![verify_target(&target)?]
            };
            let reports: Vec<VerifyReport> = checked.iter().map(|(r, _)| r.clone()).collect();
            text = match format {
                VerifyFormat::Text => checked
                    .iter()
                    .map(|(r, outs)| render::verify_text(r, outs, max_counterexamples))
                    .collect(),
                VerifyFormat::Json if all => render::json(&reports),
                VerifyFormat::Json => render::json(&reports[0]),
            };
            if reports.iter().all(VerifyReport::is_pass) {
                0
            } else {
                EXIT_MISMATCH
            }
        }
        Command::Cost {
            target,
            mode,
            format,
        } => {
            let (title, breakdown, discrepancies) = match &target.netlist {
                Some(path) => {
                    let n = load_netlist(path)?;
                    let b = total_cost(&n)
                        .map_err(|d| Failure::parse(format!("{}: {d}", path.display())))?;
                    (n.name().to_string(), b, Vec::new())
                }
                None => {
                    let d = resolve_design(&target.design)?;
                    (
                        d.netlist().name().to_string(),
                        d.cost(mode),
                        d.discrepancies(),
                    )
                }
            };
            text.push_str(&match format {
                Format::Markdown => render::cost_markdown(&title, mode, &breakdown, &discrepancies),
                Format::Csv => render::cost_csv(&breakdown),
                Format::Json => render::json(&breakdown),
            });
            0
        }
        Command::Table { id, mode, format } => {
            let t = cost_table(id, mode);
            text = match format {
                Format::Markdown => render::table_markdown(&t),
                Format::Csv => render::table_csv(&t),
                Format::Json => render::json(&t),
            };
            0
        }
        Command::Errata { format } => {
            let list = errata();
            text = match format {
                Format::Markdown => render::errata_markdown(&list),
                Format::Csv => render::errata_csv(&list),
                Format::Json => render::json(&list),
            };
            0
        }
        Command::Netlist { design, out: path } => {
            let d = resolve_design(&design)?;
            let qnl = emit_netlist(d.netlist());
            match path {
                Some(p) => {
                    fs::write(&p, qnl).map_err(|e| {
                        Failure::usage(format!("cannot write {}: {e}", p.display()))
                    })?;
                    text = format!("wrote {}\n", p.display());
                }
                None => text = qnl,
            }
            0
        }
        Command::Eval { netlist, inputs } => {
            let n = load_netlist(&netlist)?;
            let program = compile(&n, &netlist)?;
            let assignments = parse_assignments(&inputs, &program)?;
            let named: Vec<(&str, Signal)> =
                assignments.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let result = program
                .run_named(&named)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let line: Vec<String> = result.iter().map(|(k, v)| format!("{k}={v}")).collect();
            text = format!("{}\n", line.join(" "));
            0
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))?;
    Ok(code)
}

fn every_design() -> Vec<Design> {
    let mut out: Vec<Design> = DesignId::all().into_iter().map(build_digit).collect();
    out.push(build_ebrahimi_ha());
    out.push(build_moaiyeri_ha());
    for id in DesignId::all() {
        let width = if id.family().is_quaternary() { 4 } else { 8 };
        for kind in Organization::ALL {
            out.push(
                build_composition(id, CompositionKind { kind, width })
                    .expect("standard widths build"),
            );
        }
    }
    out
}

fn load_netlist(path: &Path) -> Result<Netlist, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_netlist(&src).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn compile(n: &Netlist, path: &Path) -> Result<Program, Failure> {
    if let Err(diags) = check_well_formed(n) {
        let lines: Vec<String> = diags
            .iter()
            .map(|d| format!("{}: {d}", path.display()))
            .collect();
        return Err(Failure::parse(lines.join("\n")));
    }
    Program::compile(n).map_err(|e| Failure::parse(e.to_string()))
}

fn parse_assignments(s: &str, program: &Program) -> Result<Vec<(String, Signal)>, Failure> {
    let kinds: Vec<_> = program.input_names().zip(program.input_kinds()).collect();
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("`{part}` is not of the form NAME=VALUE")))?;
        let (name, value) = (name.trim(), value.trim());
        let kind = kinds
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, k)| *k)
            .ok_or_else(|| Failure::usage(EvalError::UnknownInput(name.to_string()).to_string()))?;
        let raw: u8 = value
            .parse()
            .map_err(|_| Failure::usage(format!("`{value}` is not a level for `{name}`")))?;
        let signal =
            Signal::from_raw(kind, raw).map_err(|e| Failure::usage(format!("{name}: {e}")))?;
        out.push((name.to_string(), signal));
    }
    Ok(out)
}

fn output_names(n: &Netlist) -> Vec<String> {
    n.outputs().map(|(net, _)| net.name.clone()).collect()
}

fn verify_target(target: &Target) -> Result<(VerifyReport, Vec<String>), Failure> {
    let Some(path) = &target.netlist else {
        let d = resolve_design(&target.design)?;
        return Ok((d.verify(), output_names(d.netlist())));
    };
    let n = load_netlist(path)?;
    let program = compile(&n, path)?;
    let ins: Vec<&str> = program.input_names().collect();
    let outs: Vec<&str> = program.output_names().collect();
    let report = match reference_for(&ins, &outs) {
        Some(Reference::Digit) => exhaustive_verify(&n, digit_oracle),
        Some(Reference::Half) => exhaustive_verify(&n, half_adder_oracle),
        Some(Reference::Quaternary(k)) => exhaustive_verify(&n, quaternary_oracle(k)),
        Some(Reference::Binary(k)) => exhaustive_verify(&n, binary_oracle(k)),
        None => {
            return Err(Failure::usage(format!(
                "{}: ports ({}) -> ({}) match no known adder interface",
                path.display(),
                ins.join(", "),
                outs.join(", ")
            )))
        }
    };
    let report = report.map_err(|e| Failure::parse(e.to_string()))?;
    Ok((report, output_names(&n)))
}

enum Reference {
    Digit,
    Half,
    Quaternary(usize),
    Binary(usize),
}

/// Recognizes the adder interfaces produced by the design builders.
fn reference_for(ins: &[&str], outs: &[&str]) -> Option<Reference> {
    fn seq(prefix: &str, k: usize) -> impl Iterator<Item = String> + '_ {
        (0..k).map(move |i| format!("{prefix}{i}"))
    }
    match (ins, outs) {
        (["A", "B", "Cin"], ["QS", "QC"]) => return Some(Reference::Digit),
        (["A", "B"], ["QS", "QC"]) => return Some(Reference::Half),
        _ => {}
    }
    let k = outs.len().checked_sub(1)?;
    if k == 0 || ins.len() != 2 * k + 1 {
        return None;
    }
    let matches = |a: &str, b: &str, c: &str, s: &str, co: &str| {
        seq(a, k)
            .chain(seq(b, k))
            .chain([c.to_string()])
            .eq(ins.iter().map(|x| x.to_string()))
            && seq(s, k)
                .chain([co.to_string()])
                .eq(outs.iter().map(|x| x.to_string()))
    };
    if matches("A", "B", "Cin", "QS", "QC") {
        Some(Reference::Quaternary(k))
    } else if matches("a", "b", "cin", "s", "cout") {
        Some(Reference::Binary(k))
    } else {
        None
    }
}

fn default_supply(f: Family) -> SupplyMode {
    match f {
        Family::Ebrahimi | Family::Binary => SupplyMode::Single,
        Family::Qb | Family::Moaiyeri | Family::Roosta => SupplyMode::Triple,
    }
}

/// Validates the option combination and builds the design it names.
fn resolve_design(a: &DesignArgs) -> Result<Design, Failure> {
    let family = a
        .design
        .ok_or_else(|| Failure::usage("--design or --netlist is required"))?;
    let supply = a.supply.unwrap_or(default_supply(family));
    let only = |given: bool, flag: &str, families: &str| {
        if given {
            Err(Failure::usage(format!(
                "--{flag} applies only to {families} designs, not {family}"
            )))
        } else {
            Ok(())
        }
    };
    if family != Family::Qb {
        only(a.preset.is_some(), "preset", "qb")?;
        only(a.xor.is_some(), "xor", "qb")?;
        only(a.encoder.is_some(), "encoder", "qb")?;
    }
    if !matches!(family, Family::Qb | Family::Binary) {
        only(a.fa.is_some(), "fa", "qb and binary")?;
    }
    if family != Family::Roosta {
        only(a.sharing.is_some(), "sharing", "roosta")?;
    }
    if !matches!(family, Family::Ebrahimi | Family::Moaiyeri) {
        only(a.half, "half", "ebrahimi and moaiyeri")?;
    }
    if a.half && (a.organization.is_some() || a.width.is_some()) {
        return Err(Failure::usage(
            "--half cannot be combined with --organization or --width",
        ));
    }
    if family == Family::Binary && a.supply == Some(SupplyMode::Triple) {
        return Err(Failure::usage("binary designs use a single supply"));
    }

    let variant = match family {
        Family::Qb => {
            let preset = match a.preset {
                Some(PresetArg::Conservative) => QbPreset::Conservative,
                Some(PresetArg::Aggressive) => QbPreset::Aggressive,
                Some(PresetArg::Conventional) | None => QbPreset::Conventional,
            };
            let (xor, fa) = preset.parts();
            let encoder = match a.encoder {
                Some(_) if supply == SupplyMode::Triple => {
                    return Err(Failure::usage(
                        "--encoder selects a single-supply encoder; use --supply 1",
                    ))
                }
                Some(EncoderArg::V2) => EncoderVariant::V2,
                _ => EncoderVariant::V1,
            };
            Variant::Qb {
                xor: a.xor.map_or(xor, xor_impl),
                fa: a.fa.map_or(fa, fa_impl),
                encoder,
            }
        }
        Family::Roosta => Variant::Roosta {
            sharing: match a.sharing {
                Some(SharingArg::PerSubblock) => InverterSharing::PerSubblock,
                _ => InverterSharing::Shared,
            },
        },
        Family::Binary => Variant::Binary {
            fa: a.fa.map_or(FaImpl::Fa18, fa_impl),
        },
        Family::Ebrahimi | Family::Moaiyeri => Variant::Fixed,
    };
    let id = DesignId::new(family, supply, variant).map_err(|e| Failure::usage(e.to_string()))?;

    if a.half {
        return Ok(if family == Family::Ebrahimi {
            build_ebrahimi_ha()
        } else {
            build_moaiyeri_ha()
        });
    }
    if a.organization.is_none() && a.width.is_none() {
        return Ok(build_digit(id));
    }
    let kind = match a.organization {
        Some(OrgArg::Cla) => Organization::Cla,
        Some(OrgArg::Csa) => Organization::Csa,
        Some(OrgArg::Cpa) | None => Organization::Cpa,
    };
    let width = a
        .width
        .unwrap_or(if family.is_quaternary() { 4 } else { 8 });
    build_composition(id, CompositionKind { kind, width })
        .map_err(|e| Failure::usage(e.to_string()))
}

fn xor_impl(x: XorArg) -> XorImpl {
    match x {
        XorArg::Xor16 => XorImpl::X16,
        XorArg::Xor9 => XorImpl::X9,
        XorArg::Xor3 => XorImpl::X3,
    }
}

fn fa_impl(x: FaArg) -> FaImpl {
    match x {
        FaArg::Fa36 => FaImpl::Fa36,
        FaArg::Fa18 => FaImpl::Fa18,
        FaArg::Fa8 => FaImpl::Fa8,
    }
}
